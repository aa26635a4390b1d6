//! The Cartan involution `θ` restricted to the maximal torus.
//!
//! `θ = σ∘σ_c` acts on `X∨` as an involution preserving the coroot set. The
//! real structure `σ` itself acts on `X∨` as `−θ`, so `θ` alone determines the
//! real form as far as component groups are concerned.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intlattice::{format_qvector, IntMatrix, Lattice, QVector, RatMatrix};
use crate::rootdata::{e7_adjoint, e7_invariant_form, RootDatum};

/// A validated involution of `X∨`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    theta: IntMatrix,
    name: String,
}

impl Involution {
    pub fn theta(&self) -> &IntMatrix {
        &self.theta
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn rank(&self) -> usize {
        self.theta.rows()
    }

    pub fn apply(&self, v: &[BigRational]) -> Result<QVector> {
        self.theta.apply_rational(v)
    }

    /// `θ₁ ⊕ θ₂`, matching [`crate::rootdata::product`].
    pub fn direct_sum(&self, other: &Involution) -> Involution {
        Involution { theta: self.theta.block_diag(&other.theta), name: format!("{} ⊕ {}", self.name, other.name) }
    }

    /// `θ + 1`; its kernel is the split part.
    pub fn plus_identity(&self) -> IntMatrix {
        self.theta.add(&IntMatrix::identity(self.rank())).expect("square")
    }

    /// `θ − 1`; its kernel is the compact part.
    pub fn minus_identity(&self) -> IntMatrix {
        self.theta.sub(&IntMatrix::identity(self.rank())).expect("square")
    }

    /// `ν ↦ ½(ν − θν)`.
    pub fn split_projection(&self) -> RatMatrix {
        half(&self.minus_identity().neg())
    }

    /// `ν ↦ ½(ν + θν)`.
    pub fn compact_projection(&self) -> RatMatrix {
        half(&self.plus_identity())
    }

    /// Conjugates by a unimodular change of basis `g` (columns = new basis in
    /// old coordinates): `g⁻¹ θ g`.
    pub fn conjugated(&self, g: &IntMatrix, g_inv: &IntMatrix) -> Result<Involution> {
        let theta = g_inv.checked_mul(&self.theta)?.checked_mul(g)?;
        Ok(Involution { theta, name: self.name.clone() })
    }
}

fn half(m: &IntMatrix) -> RatMatrix {
    let mut r = RatMatrix::from_int(m);
    let two = BigRational::from_integer(BigInt::from(2));
    for i in 0..r.rows() {
        for j in 0..r.cols() {
            let v = r.get(i, j) / &two;
            r.set(i, j, v);
        }
    }
    r
}

/// Validates `m` as the involution of `rd` induced by a Cartan involution.
pub fn involution_from_matrix(rd: &RootDatum, m: &IntMatrix) -> Result<Involution> {
    involution_with_checks(rd, m, true)
}

/// Like [`involution_from_matrix`], but only requires `θ(Q∨) = Q∨`. For
/// coroot generators that are not closed under the root system symmetries.
pub fn involution_from_matrix_lattice_only(rd: &RootDatum, m: &IntMatrix) -> Result<Involution> {
    involution_with_checks(rd, m, false)
}

fn involution_with_checks(rd: &RootDatum, m: &IntMatrix, check_set: bool) -> Result<Involution> {
    let n = rd.rank();
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: if m.rows() != n { m.rows() } else { m.cols() } });
    }
    if !m.checked_mul(m)?.is_identity() {
        return Err(Error::NotAnInvolution);
    }
    // θ² = 1, so θ(Q∨) ⊆ Q∨ already gives equality
    for g in rd.coroots().generators() {
        if !rd.coroots().contains(&m.apply_rational(&g)?)? {
            return Err(Error::CorootLatticeNotPreserved);
        }
    }
    if check_set {
        let set = rd.coroot_generators();
        for g in set {
            let img = m.apply_rational(g)?;
            let neg: QVector = img.iter().map(|x| -x).collect();
            if !set.contains(&img) && !set.contains(&neg) {
                return Err(Error::CorootSetNotNormalized(format_qvector(g)));
            }
        }
    }
    Ok(Involution { theta: m.clone(), name: String::from("theta") })
}

/// Builds `θ` from its `−1` (split) and `+1` (compact) eigenspaces.
///
/// Spans may be rational. `θ = P_cmp − P_spl` for the projections along the
/// decomposition; it must come out integral.
pub fn involution_from_eigenspaces(
    rd: &RootDatum,
    split_span: &[QVector],
    compact_span: &[QVector],
) -> Result<Involution> {
    eigenspace_involution(rd, split_span, compact_span, true)
}

/// [`involution_from_eigenspaces`] with the coroot set check made optional.
pub fn eigenspace_involution(
    rd: &RootDatum,
    split_span: &[QVector],
    compact_span: &[QVector],
    check_set: bool,
) -> Result<Involution> {
    let n = rd.rank();
    for v in split_span.iter().chain(compact_span) {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
    }
    let s_rank = span_rank(n, split_span)?;
    let c_rank = span_rank(n, compact_span)?;
    if s_rank != split_span.len() || c_rank != compact_span.len() {
        // dependent spanning vectors: reduce to a basis first
        let sb = span_basis(n, split_span)?;
        let cb = span_basis(n, compact_span)?;
        return eigenspace_involution(rd, &sb, &cb, check_set);
    }
    if s_rank + c_rank != n {
        return Err(Error::SpansNotComplementary(format!("dimensions {s_rank} + {c_rank} ≠ {n}")));
    }
    let all: Vec<QVector> = split_span.iter().chain(compact_span).cloned().collect();
    if span_rank(n, &all)? != n {
        return Err(Error::SpansNotComplementary("spans intersect nontrivially".into()));
    }
    // columns of P are the eigenvectors: θ = P·D·P⁻¹
    let p = RatMatrix::from_rows(n, &all)?.transpose();
    let p_inv = p.inverse().ok_or_else(|| Error::SpansNotComplementary("singular eigenbasis".into()))?;
    let mut d = RatMatrix::zeros(n, n);
    for i in 0..n {
        let s = if i < s_rank { -BigRational::one() } else { BigRational::one() };
        d.set(i, i, s);
    }
    let theta = p.mul(&d)?.mul(&p_inv)?;
    let theta = theta.to_int().ok_or(Error::ThetaNotIntegral)?;
    let inv = involution_with_checks(rd, &theta, check_set)?;
    for v in split_span {
        let neg: QVector = v.iter().map(|x| -x).collect();
        if inv.apply(v)? != neg {
            return Err(Error::Internal(format!("split vector {} not negated", format_qvector(v))));
        }
    }
    for v in compact_span {
        if &inv.apply(v)? != v {
            return Err(Error::Internal(format!("compact vector {} not fixed", format_qvector(v))));
        }
    }
    Ok(inv)
}

fn span_rank(n: usize, vs: &[QVector]) -> Result<usize> {
    if vs.is_empty() {
        return Ok(0);
    }
    Ok(Lattice::from_rational_rows(n, vs)?.rank())
}

fn span_basis(n: usize, vs: &[QVector]) -> Result<Vec<QVector>> {
    if vs.is_empty() {
        return Ok(vec![]);
    }
    Ok(Lattice::from_rational_rows(n, vs)?.generators())
}

/// The three noncompact real forms of adjoint `E₇`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum E7Form {
    /// Split.
    EV,
    /// Quaternionic, real rank 4.
    EVI,
    /// Hermitian, real rank 3.
    EVII,
}

impl std::str::FromStr for E7Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "EV" => Ok(E7Form::EV),
            "EVI" => Ok(E7Form::EVI),
            "EVII" => Ok(E7Form::EVII),
            other => Err(Error::InvalidParams(format!("unknown E7 real form {other:?}"))),
        }
    }
}

impl std::fmt::Display for E7Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Adjoint `E₇` with the involution of the requested real form.
///
/// * EV: `θ = −1`.
/// * EVI: `𝔱_spl` spanned by `ϖ∨₂, ϖ∨₄, ϖ∨₅, ϖ∨₆`, `𝔱_cmp` its orthogonal
///   complement under the invariant form.
/// * EVII: `𝔱_spl` spanned by `ϖ∨₁, ϖ∨₂, ϖ∨₆`, `𝔱_cmp` by `α∨₃, α∨₄, α∨₅, α∨₇`.
pub fn e7_preset(form: E7Form) -> Result<(RootDatum, Involution)> {
    let rd = e7_adjoint()?;
    let get = |name: &str| -> Result<QVector> {
        rd.named(name).cloned().ok_or_else(|| Error::Internal(format!("missing named vector {name}")))
    };
    let inv = match form {
        E7Form::EV => involution_from_matrix(&rd, &IntMatrix::identity(7).neg())?,
        E7Form::EVII => {
            let split = ["ϖ∨1", "ϖ∨2", "ϖ∨6"].map(get).into_iter().collect::<Result<Vec<_>>>()?;
            let compact = ["α∨3", "α∨4", "α∨5", "α∨7"].map(get).into_iter().collect::<Result<Vec<_>>>()?;
            involution_from_eigenspaces(&rd, &split, &compact)?
        }
        E7Form::EVI => {
            let split = ["ϖ∨2", "ϖ∨4", "ϖ∨5", "ϖ∨6"].map(get).into_iter().collect::<Result<Vec<_>>>()?;
            let compact = orthogonal_complement(&split, &e7_invariant_form())?;
            involution_from_eigenspaces(&rd, &split, &compact)?
        }
    };
    Ok((rd.with_name(format!("E7 adj {form}")), inv.renamed(form.to_string())))
}

/// Basis of `{x : (s, x) = 0 for all s}` under the form with Gram matrix `g`.
pub fn orthogonal_complement(span: &[QVector], g: &RatMatrix) -> Result<Vec<QVector>> {
    let n = g.rows();
    if span.is_empty() {
        return Ok((0..n)
            .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect());
    }
    // equations: rows s·G; solutions x with (s·G)·x = 0
    let eqs: Vec<QVector> = span.iter().map(|s| g.transpose().apply(s)).collect::<Result<_>>()?;
    let (int_eqs, _) = RatMatrix::from_rows(n, &eqs)?.to_scaled_int();
    Ok(Lattice::standard(n).kernel(&int_eqs)?.generators())
}

/// Whether `v` is fixed (`+1`) or negated (`−1`) by `θ`; `None` otherwise.
pub fn eigen_sign(inv: &Involution, v: &[BigRational]) -> Result<Option<i8>> {
    let img = inv.apply(v)?;
    if img.iter().zip(v).all(|(a, b)| a == b) {
        return Ok(Some(1));
    }
    if img.iter().zip(v).all(|(a, b)| *a == -b) {
        return Ok(Some(-1));
    }
    Ok(None)
}
