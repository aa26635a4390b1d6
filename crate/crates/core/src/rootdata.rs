//! Torus data of connected reductive groups and the standard presets.
//!
//! Internally the cocharacter lattice `X∨` is always ℤⁿ. Presets are written
//! down in the familiar coordinates (the `e∨ᵢ` dual to the weights `εᵢ` of the
//! tautological representation) and then rewritten in a basis of `X∨`, so for
//! instance the internal coordinates of `PSO₂ₗ` are `e∨₁, …, e∨ₗ₋₁, ϖ∨ₗ` and those
//! of adjoint `E₇` are the fundamental coweights.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intlattice::{format_qvector, q_to_int, qvec, qvec_frac, IntMatrix, Lattice, QVector, RatMatrix};
use crate::realform::{involution_from_matrix, Involution};

/// Whether a datum is a torus, semisimple, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DatumKind {
    Torus,
    Semisimple,
    Reductive,
}

/// A character used to print torus elements, with its pairing vector in
/// internal (dual) coordinates: `⟨λ, ν⟩ = Σ λᵢ νᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplayWeight {
    pub label: String,
    pub weight: QVector,
}

/// A vector of `X∨ ⊗ ℚ` with a human-readable name such as `e∨1` or `ϖ∨4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedVector {
    pub name: String,
    pub vector: QVector,
}

/// Cocharacter and coroot data of a connected reductive group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    name: String,
    kind: DatumKind,
    rank: usize,
    cochar: Lattice,
    coroots: Lattice,
    coroot_generators: Vec<QVector>,
    display_weights: Vec<DisplayWeight>,
    named_vectors: Vec<NamedVector>,
    lift_note: Option<String>,
}

impl RootDatum {
    /// A datum with `X∨ = ℤⁿ` and `Q∨` generated by `coroot_generators`.
    ///
    /// The generators are kept as given (they are the coroot set used for
    /// automorphism checks); no validation happens here, see [`validate`].
    pub fn new(name: impl Into<String>, kind: DatumKind, rank: usize, coroot_generators: Vec<QVector>) -> Result<Self> {
        for g in &coroot_generators {
            if g.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: g.len() });
            }
        }
        let coroots = if coroot_generators.is_empty() {
            Lattice::zero(rank)
        } else {
            Lattice::from_rational_rows(rank, &coroot_generators)?
        };
        Ok(RootDatum {
            name: name.into(),
            kind,
            rank,
            cochar: Lattice::standard(rank),
            coroots,
            coroot_generators,
            display_weights: Vec::new(),
            named_vectors: Vec::new(),
            lift_note: None,
        })
    }

    /// A torus of rank `n` with standard display weights `ε₁..εₙ`.
    pub fn torus(name: impl Into<String>, n: usize) -> Self {
        let mut rd = RootDatum::new(name, DatumKind::Torus, n, vec![]).expect("no generators");
        rd.display_weights = standard_weights(n, "ε");
        rd.named_vectors = standard_named(n, "e∨");
        rd
    }

    pub fn with_display_weights(mut self, w: Vec<DisplayWeight>) -> Result<Self> {
        for x in &w {
            if x.weight.len() != self.rank {
                return Err(Error::DimensionMismatch { expected: self.rank, found: x.weight.len() });
            }
        }
        self.display_weights = w;
        Ok(self)
    }

    pub fn with_named_vectors(mut self, v: Vec<NamedVector>) -> Result<Self> {
        for x in &v {
            if x.vector.len() != self.rank {
                return Err(Error::DimensionMismatch { expected: self.rank, found: x.vector.len() });
            }
        }
        self.named_vectors = v;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_lift_note(mut self, note: impl Into<String>) -> Self {
        self.lift_note = Some(note.into());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> DatumKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `X∨`, always the standard lattice.
    pub fn cochar(&self) -> &Lattice {
        &self.cochar
    }

    /// `Q∨`.
    pub fn coroots(&self) -> &Lattice {
        &self.coroots
    }

    pub fn coroot_generators(&self) -> &[QVector] {
        &self.coroot_generators
    }

    pub fn display_weights(&self) -> &[DisplayWeight] {
        &self.display_weights
    }

    pub fn named_vectors(&self) -> &[NamedVector] {
        &self.named_vectors
    }

    pub fn named(&self, name: &str) -> Option<&QVector> {
        self.named_vectors.iter().find(|v| v.name == name).map(|v| &v.vector)
    }

    pub fn lift_note(&self) -> Option<&str> {
        self.lift_note.as_deref()
    }

    pub fn is_simply_connected(&self) -> bool {
        self.coroots == self.cochar
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {}, Q∨ rank {})", self.name, self.rank, self.coroots.rank())
    }
}

fn standard_weights(n: usize, prefix: &str) -> Vec<DisplayWeight> {
    (0..n)
        .map(|i| {
            let mut w = vec![BigRational::zero(); n];
            w[i] = BigRational::one();
            DisplayWeight { label: format!("{prefix}{}", i + 1), weight: w }
        })
        .collect()
}

fn standard_named(n: usize, prefix: &str) -> Vec<NamedVector> {
    (0..n)
        .map(|i| {
            let mut v = vec![BigRational::zero(); n];
            v[i] = BigRational::one();
            NamedVector { name: format!("{prefix}{}", i + 1), vector: v }
        })
        .collect()
}

/// Checks every `RootDatum` invariant and returns the violations found.
pub fn validate(rd: &RootDatum) -> Vec<String> {
    let mut out = Vec::new();
    for g in &rd.coroot_generators {
        match rd.cochar.contains(g) {
            Ok(true) => {}
            Ok(false) => out.push(format!("coroot not in cocharacter lattice: {}", format_qvector(g))),
            Err(e) => out.push(format!("coroot {}: {e}", format_qvector(g))),
        }
        if !rd.coroots.contains(g).unwrap_or(false) {
            out.push(format!("coroot generator not in coroot lattice: {}", format_qvector(g)));
        }
    }
    match rd.coroots.is_sublattice_of(&rd.cochar) {
        Ok(true) => {}
        _ => out.push("coroot lattice not contained in cocharacter lattice".into()),
    }
    match rd.kind {
        DatumKind::Torus if !rd.coroots.is_zero() || !rd.coroot_generators.is_empty() => {
            out.push("torus datum has nonzero coroots".into())
        }
        DatumKind::Semisimple if rd.coroots.rank() != rd.rank => out.push(format!(
            "semisimple datum has coroot lattice of rank {} < {}",
            rd.coroots.rank(),
            rd.rank
        )),
        _ => {}
    }
    out
}

/// Block-diagonal product of two data.
pub fn product(a: &RootDatum, b: &RootDatum) -> RootDatum {
    if b.rank == 0 {
        return a.clone();
    }
    if a.rank == 0 {
        return b.clone();
    }
    let pad = |v: &QVector, left: bool| -> QVector {
        let zeros = |k: usize| std::iter::repeat(BigRational::zero()).take(k);
        if left {
            v.iter().cloned().chain(zeros(b.rank)).collect()
        } else {
            zeros(a.rank).chain(v.iter().cloned()).collect()
        }
    };
    let kind = match (a.kind, b.kind) {
        (DatumKind::Torus, DatumKind::Torus) => DatumKind::Torus,
        (DatumKind::Semisimple, DatumKind::Semisimple) => DatumKind::Semisimple,
        _ => DatumKind::Reductive,
    };
    let gens = a.coroot_generators.iter().map(|v| pad(v, true)).chain(b.coroot_generators.iter().map(|v| pad(v, false)));
    let mut rd = RootDatum {
        name: format!("{} × {}", a.name, b.name),
        kind,
        rank: a.rank + b.rank,
        cochar: Lattice::standard(a.rank + b.rank),
        coroots: a.coroots.direct_sum(&b.coroots),
        coroot_generators: gens.collect(),
        display_weights: Vec::new(),
        named_vectors: Vec::new(),
        lift_note: a.lift_note.clone().or_else(|| b.lift_note.clone()),
    };
    rd.display_weights = a
        .display_weights
        .iter()
        .map(|w| DisplayWeight { label: w.label.clone(), weight: pad(&w.weight, true) })
        .chain(b.display_weights.iter().map(|w| DisplayWeight { label: w.label.clone(), weight: pad(&w.weight, false) }))
        .collect();
    rd.named_vectors = a
        .named_vectors
        .iter()
        .map(|v| NamedVector { name: v.name.clone(), vector: pad(&v.vector, true) })
        .chain(b.named_vectors.iter().map(|v| NamedVector { name: v.name.clone(), vector: pad(&v.vector, false) }))
        .collect();
    rd
}

/// Cartan–Killing type of a simple group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl std::str::FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "E" => Ok(CartanType::E),
            "F" => Ok(CartanType::F),
            "G" => Ok(CartanType::G),
            other => Err(Error::InvalidParams(format!("unknown Cartan type {other:?}"))),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
}

impl std::str::FromStr for Isogeny {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sc" | "simply-connected" | "simply_connected" => Ok(Isogeny::SimplyConnected),
            "adj" | "adjoint" => Ok(Isogeny::Adjoint),
            other => Err(Error::InvalidParams(format!("unknown isogeny type {other:?}"))),
        }
    }
}

/// The two real forms offered for arbitrary simple types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimpleReal {
    Split,
    Compact,
}

impl std::str::FromStr for SimpleReal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "split" => Ok(SimpleReal::Split),
            "compact" => Ok(SimpleReal::Compact),
            other => Err(Error::InvalidParams(format!("unknown real form {other:?}"))),
        }
    }
}

/// Preset family and parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PresetSpec {
    Gl { n: usize },
    So { p: usize, q: usize },
    Pso { p: usize, q: usize },
    TorusSplit { n: usize },
    TorusCompact { n: usize },
    TorusWeil,
    Simple { cartan: CartanType, rank: usize, isogeny: Isogeny, real: Option<SimpleReal> },
}

/// Builds a preset datum together with its standard involution, if any.
pub fn build_preset(spec: &PresetSpec) -> Result<(RootDatum, Option<Involution>)> {
    match *spec {
        PresetSpec::Gl { n } => {
            let rd = gl(n)?;
            let theta = IntMatrix::identity(n).neg();
            let inv = involution_from_matrix(&rd, &theta)?.renamed(format!("split GL{n}"));
            Ok((rd, Some(inv)))
        }
        PresetSpec::So { p, q } => {
            let (p, q) = if p > q { (q, p) } else { (p, q) };
            let rd = so(p, q)?;
            let inv = involution_from_matrix(&rd, &split_first(p, rd.rank))?.renamed(format!("SO({p},{q})"));
            Ok((rd, Some(inv)))
        }
        PresetSpec::Pso { p, q } => {
            let (p, q) = if p > q { (q, p) } else { (p, q) };
            let (rd, basis) = pso(p, q)?;
            let theta = convert_theta(&split_first(p, rd.rank), &basis)?;
            let inv = involution_from_matrix(&rd, &theta)?.renamed(format!("PSO({p},{q})"));
            Ok((rd, Some(inv)))
        }
        PresetSpec::TorusSplit { n } => {
            let rd = RootDatum::torus(format!("split torus of rank {n}"), n);
            let inv = involution_from_matrix(&rd, &IntMatrix::identity(n).neg())?.renamed("split");
            Ok((rd, Some(inv)))
        }
        PresetSpec::TorusCompact { n } => {
            let rd = RootDatum::torus(format!("compact torus of rank {n}"), n);
            let inv = involution_from_matrix(&rd, &IntMatrix::identity(n))?.renamed("compact");
            Ok((rd, Some(inv)))
        }
        PresetSpec::TorusWeil => {
            let rd = RootDatum::torus("Weil restriction of G_m from C to R", 2);
            let theta = IntMatrix::from_rows(2, &[[0, -1], [-1, 0]])?;
            let inv = involution_from_matrix(&rd, &theta)?.renamed("Weil");
            Ok((rd, Some(inv)))
        }
        PresetSpec::Simple { cartan, rank, isogeny, real } => {
            let rd = simple(cartan, rank, isogeny)?;
            let inv = match real {
                None => None,
                Some(SimpleReal::Split) => {
                    Some(involution_from_matrix(&rd, &IntMatrix::identity(rank).neg())?.renamed("split"))
                }
                Some(SimpleReal::Compact) => {
                    Some(involution_from_matrix(&rd, &IntMatrix::identity(rank))?.renamed("compact"))
                }
            };
            Ok((rd, inv))
        }
    }
}

/// θ = −1 on the first `p` coordinates, +1 on the rest.
fn split_first(p: usize, n: usize) -> IntMatrix {
    let d: Vec<i64> = (0..n).map(|i| if i < p { -1 } else { 1 }).collect();
    IntMatrix::diagonal(&d)
}

fn unit(n: usize, i: usize) -> QVector {
    let mut v = vec![BigRational::zero(); n];
    v[i] = BigRational::one();
    v
}

fn gl(n: usize) -> Result<RootDatum> {
    if n == 0 {
        return Err(Error::InvalidParams("GL needs n ≥ 1".into()));
    }
    let mut coroots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut v = unit(n, i);
                v[j] = -BigRational::one();
                coroots.push(v);
            }
        }
    }
    let kind = if n == 1 { DatumKind::Torus } else { DatumKind::Reductive };
    RootDatum::new(format!("GL{n}"), kind, n, coroots)?
        .with_display_weights(standard_weights(n, "ε"))?
        .with_named_vectors(standard_named(n, "e∨"))
}

/// Coroots `±e∨ᵢ ± e∨ⱼ`, and `±2e∨ᵢ` when `odd`, in ℤˡ.
fn orthogonal_coroots(l: usize, odd: bool) -> Vec<QVector> {
    let mut out = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![BigRational::zero(); l];
                v[i] = BigRational::from_integer(BigInt::from(si));
                v[j] = BigRational::from_integer(BigInt::from(sj));
                out.push(v);
            }
        }
        if odd {
            for s in [2, -2] {
                let mut v = vec![BigRational::zero(); l];
                v[i] = BigRational::from_integer(BigInt::from(s));
                out.push(v);
            }
        }
    }
    out
}

/// Weights of the tautological representation of `SOₙ` in matrix order:
/// `ε₁, …, εₗ, (0), −εₗ, …, −ε₁`.
fn orthogonal_weights(l: usize, odd: bool) -> Vec<DisplayWeight> {
    let mut w = standard_weights(l, "ε");
    if odd {
        w.push(DisplayWeight { label: "0".into(), weight: vec![BigRational::zero(); l] });
    }
    for i in (0..l).rev() {
        let mut v = vec![BigRational::zero(); l];
        v[i] = -BigRational::one();
        w.push(DisplayWeight { label: format!("-ε{}", i + 1), weight: v });
    }
    w
}

fn so(p: usize, q: usize) -> Result<RootDatum> {
    let n = p + q;
    if n < 2 {
        return Err(Error::InvalidParams(format!("SO({p},{q}) needs p+q ≥ 2")));
    }
    let l = n / 2;
    let odd = n % 2 == 1;
    // SO₂ is a torus
    let kind = if n == 2 { DatumKind::Torus } else { DatumKind::Semisimple };
    RootDatum::new(format!("SO({p},{q})"), kind, l, orthogonal_coroots(l, odd))?
        .with_display_weights(orthogonal_weights(l, odd))?
        .with_named_vectors(standard_named(l, "e∨"))
}

/// PSO(p,q) in internal coordinates together with the basis of `X∨` (rows, in
/// `e∨` coordinates) used for them.
fn pso(p: usize, q: usize) -> Result<(RootDatum, RatMatrix)> {
    let n = p + q;
    if n % 2 == 1 {
        return Err(Error::InvalidParams(format!("PSO({p},{q}) needs p+q even")));
    }
    if n < 2 {
        return Err(Error::InvalidParams(format!("PSO({p},{q}) needs p+q ≥ 2")));
    }
    let l = n / 2;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let varpi: QVector = vec![half; l];
    let mut basis_rows: Vec<QVector> = (0..l - 1).map(|i| unit(l, i)).collect();
    basis_rows.push(varpi.clone());
    let basis = RatMatrix::from_rows(l, &basis_rows)?;

    let mut named = standard_named(l, "e∨");
    named.push(NamedVector { name: format!("ϖ∨{l}"), vector: varpi });
    let amb = AmbientData {
        coroots: orthogonal_coroots(l, false),
        weights: orthogonal_weights(l, false),
        named,
    };
    let conv = amb.convert(&basis)?;
    let kind = if n == 2 { DatumKind::Torus } else { DatumKind::Semisimple };
    let rd = RootDatum::new(format!("PSO({p},{q})"), kind, l, conv.coroots)?
        .with_display_weights(conv.weights)?
        .with_named_vectors(conv.named)?
        .with_lift_note("lift, defined up to simultaneous sign");
    Ok((rd, basis))
}

/// Preset data written in some ambient coordinates, before rewriting in a
/// basis of `X∨`.
pub(crate) struct AmbientData {
    pub coroots: Vec<QVector>,
    pub weights: Vec<DisplayWeight>,
    pub named: Vec<NamedVector>,
}

impl AmbientData {
    /// Rewrites everything in the basis given by the rows of `basis`:
    /// vectors `w ↦ w·B⁻¹`, weights `λ ↦ B·λ`.
    pub(crate) fn convert(self, basis: &RatMatrix) -> Result<AmbientData> {
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::InvalidParams("cocharacter basis is singular".into()))?;
        let inv_t = inv.transpose();
        let to_coords = |w: &QVector| inv_t.apply(w);
        let coroots = self.coroots.iter().map(to_coords).collect::<Result<Vec<_>>>()?;
        let named = self
            .named
            .iter()
            .map(|v| Ok(NamedVector { name: v.name.clone(), vector: to_coords(&v.vector)? }))
            .collect::<Result<Vec<_>>>()?;
        let weights = self
            .weights
            .iter()
            .map(|w| Ok(DisplayWeight { label: w.label.clone(), weight: basis.apply(&w.weight)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(AmbientData { coroots, weights, named })
    }
}

/// Rewrites θ (acting on ambient column vectors) in the basis whose rows are
/// `basis`: `θ' = (Bᵀ)⁻¹ θ Bᵀ`. Fails if the result is not integral.
pub(crate) fn convert_theta(theta: &IntMatrix, basis: &RatMatrix) -> Result<IntMatrix> {
    let bt = basis.transpose();
    let bt_inv = bt.inverse().ok_or_else(|| Error::InvalidParams("cocharacter basis is singular".into()))?;
    let t = bt_inv.mul(&RatMatrix::from_int(theta))?.mul(&bt)?;
    t.to_int().ok_or(Error::ThetaNotIntegral)
}

/// Cartan matrix with `a[i][j] = ⟨α∨ᵢ, αⱼ⟩`, Bourbaki numbering.
pub fn cartan_matrix(t: CartanType, rank: usize) -> Result<IntMatrix> {
    let bad = || Error::InvalidParams(format!("no simple type {t}{rank}"));
    let valid = match t {
        CartanType::A => rank >= 1,
        CartanType::B => rank >= 2,
        CartanType::C => rank >= 2,
        CartanType::D => rank >= 3,
        CartanType::E => (6..=8).contains(&rank),
        CartanType::F => rank == 4,
        CartanType::G => rank == 2,
    };
    if !valid {
        return Err(bad());
    }
    let mut a = IntMatrix::identity(rank).scaled(&BigInt::from(2));
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[(i, j)] = BigInt::from(aij);
        a[(j, i)] = BigInt::from(aji);
    };
    match t {
        CartanType::A => (0..rank - 1).for_each(|i| link(i, i + 1, -1, -1)),
        CartanType::B => {
            (0..rank - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(rank - 2, rank - 1, -1, -2);
        }
        CartanType::C => {
            (0..rank - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(rank - 2, rank - 1, -2, -1);
        }
        CartanType::D => {
            (0..rank - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(rank - 3, rank - 1, -1, -1);
        }
        CartanType::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (2..rank - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        CartanType::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        CartanType::G => link(0, 1, -3, -1),
    }
    Ok(a)
}

/// All coroots in fundamental-coweight coordinates, as the Weyl orbit of the
/// simple coroots (the rows of the Cartan matrix).
pub fn coroot_system(cartan: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = cartan.rows();
    let simple: Vec<Vec<BigInt>> = (0..n).map(|i| cartan.row_vec(i)).collect();
    let mut seen: HashSet<Vec<BigInt>> = simple.iter().cloned().collect();
    let mut order: Vec<Vec<BigInt>> = simple.clone();
    let mut queue: VecDeque<Vec<BigInt>> = simple.iter().cloned().collect();
    while let Some(b) = queue.pop_front() {
        for (j, alpha) in simple.iter().enumerate() {
            // s_j(β∨) = β∨ − ⟨αⱼ, β∨⟩ α∨ⱼ, and ⟨αⱼ, β∨⟩ is the ϖ∨ⱼ-coordinate
            let c = &b[j];
            if c.is_zero() {
                continue;
            }
            let r: Vec<BigInt> = b.iter().zip(alpha).map(|(x, a)| x - c * a).collect();
            if seen.insert(r.clone()) {
                order.push(r.clone());
                queue.push_back(r);
            }
        }
    }
    order
}

fn simple(t: CartanType, rank: usize, isogeny: Isogeny) -> Result<RootDatum> {
    let a = cartan_matrix(t, rank)?;
    let system = coroot_system(&a);
    let tag = match isogeny {
        Isogeny::SimplyConnected => "sc",
        Isogeny::Adjoint => "adj",
    };
    let name = format!("{t}{rank} {tag}");
    let int_q = |v: &[BigInt]| -> QVector { v.iter().map(|x| BigRational::from_integer(x.clone())).collect() };
    match isogeny {
        Isogeny::Adjoint => {
            let coroots: Vec<QVector> = system.iter().map(|v| int_q(v)).collect();
            let mut named = standard_named(rank, "ϖ∨");
            named.extend((0..rank).map(|i| NamedVector { name: format!("α∨{}", i + 1), vector: int_q(a.row(i)) }));
            RootDatum::new(name, DatumKind::Semisimple, rank, coroots)?.with_named_vectors(named)
        }
        Isogeny::SimplyConnected => {
            // internal basis: simple coroots; ϖ-coordinates c become c·A⁻¹
            let basis = RatMatrix::from_int(&a);
            let mut named: Vec<NamedVector> = (0..rank)
                .map(|i| NamedVector { name: format!("α∨{}", i + 1), vector: int_q(a.row(i)) })
                .collect();
            named.extend(standard_named(rank, "ϖ∨"));
            let amb = AmbientData {
                coroots: system.iter().map(|v| int_q(v)).collect(),
                weights: vec![],
                named,
            };
            let conv = amb.convert(&basis)?;
            RootDatum::new(name, DatumKind::Semisimple, rank, conv.coroots)?.with_named_vectors(conv.named)
        }
    }
}

/// Adjoint `E₇` in the coordinates of the fundamental coweights `ϖ∨₁..ϖ∨₇`,
/// with the numbering where `α∨ᵢ = e∨ᵢ − e∨ᵢ₊₁` (i ≤ 6) and
/// `α∨₇ = e∨₅ + e∨₆ + e∨₇ + e∨₈`, the `e∨ᵢ` being the coweights of an `SL₈`
/// sharing the maximal torus (so `e∨₁ + … + e∨₈ = 0`).
pub fn e7_adjoint() -> Result<RootDatum> {
    let basis = e7_basis_in_e();
    let mut coroots = Vec::new();
    for i in 0..8 {
        for j in 0..8 {
            if i != j {
                let mut k = [0i64; 8];
                k[i] = 1;
                k[j] = -1;
                coroots.push(e8_to_ambient(&qvec(&k)));
            }
        }
    }
    for i in 0..8 {
        for j in i + 1..8 {
            for k in j + 1..8 {
                for l in k + 1..8 {
                    let mut c = [0i64; 8];
                    for x in [i, j, k, l] {
                        c[x] = 1;
                    }
                    coroots.push(e8_to_ambient(&qvec(&c)));
                }
            }
        }
    }
    let mut named = Vec::new();
    for i in 1..=7 {
        named.push(NamedVector { name: format!("ϖ∨{i}"), vector: e8_to_ambient(&e7_fundamental_coweight_e8(i)) });
    }
    for i in 1..=7 {
        named.push(NamedVector { name: format!("α∨{i}"), vector: e8_to_ambient(&e7_simple_coroot_e8(i)) });
    }
    let conv = AmbientData { coroots, weights: vec![], named }.convert(&basis)?;
    RootDatum::new("E7 adj", DatumKind::Semisimple, 7, conv.coroots)?.with_named_vectors(conv.named)
}

/// `ϖ∨ᵢ = e∨₁ + … + e∨ᵢ + min(i, 8−i)·e∨₈` for i ≤ 6 and `ϖ∨₇ = 2e∨₈`, as
/// coefficients on `e∨₁..e∨₈`.
pub fn e7_fundamental_coweight_e8(i: usize) -> QVector {
    assert!((1..=7).contains(&i));
    let mut k = [0i64; 8];
    if i == 7 {
        k[7] = 2;
    } else {
        for x in k.iter_mut().take(i) {
            *x = 1;
        }
        k[7] = i.min(8 - i) as i64;
    }
    qvec(&k)
}

pub fn e7_simple_coroot_e8(i: usize) -> QVector {
    assert!((1..=7).contains(&i));
    let mut k = [0i64; 8];
    if i == 7 {
        for x in &mut k[4..8] {
            *x = 1;
        }
    } else {
        k[i - 1] = 1;
        k[i] = -1;
    }
    qvec(&k)
}

/// Coefficients on `e∨₁..e∨₈` to the 7-dimensional ambient coordinates with
/// `e∨₈ = −(e∨₁ + … + e∨₇)` eliminated.
pub fn e8_to_ambient(k: &[BigRational]) -> QVector {
    assert_eq!(k.len(), 8);
    (0..7).map(|i| &k[i] - &k[7]).collect()
}

/// Rows: `ϖ∨₁..ϖ∨₇` in ambient coordinates.
pub(crate) fn e7_basis_in_e() -> RatMatrix {
    let rows: Vec<QVector> = (1..=7).map(|i| e8_to_ambient(&e7_fundamental_coweight_e8(i))).collect();
    RatMatrix::from_rows(7, &rows).expect("7 columns")
}

/// Converts coefficients on `e∨₁..e∨₈` to internal (ϖ∨) coordinates of
/// [`e7_adjoint`].
pub fn e7_internal_from_e8(k: &[BigRational]) -> QVector {
    let inv = e7_basis_in_e().inverse().expect("ϖ∨ basis is invertible");
    inv.transpose().apply(&e8_to_ambient(k)).expect("dimension 7")
}

/// The Weyl-invariant form on internal coordinates of [`e7_adjoint`]: the
/// standard form on ℚ⁸ restricted to the trace-zero hyperplane.
pub fn e7_invariant_form() -> RatMatrix {
    let reps: Vec<QVector> = (1..=7)
        .map(|i| {
            let k = e7_fundamental_coweight_e8(i);
            let mean = k.iter().fold(BigRational::zero(), |a, x| a + x) / BigRational::from_integer(BigInt::from(8));
            k.iter().map(|x| x - &mean).collect()
        })
        .collect();
    let mut g = RatMatrix::zeros(7, 7);
    for i in 0..7 {
        for j in 0..7 {
            let v = reps[i].iter().zip(&reps[j]).fold(BigRational::zero(), |a, (x, y)| a + x * y);
            g.set(i, j, v);
        }
    }
    g
}

/// Half-integer helper used by tests and fixtures.
pub fn half_vector(v: &[i64]) -> QVector {
    qvec_frac(&v.iter().map(|&x| (x, 2)).collect::<Vec<_>>())
}

/// Integer vector of a named vector, if it lies in `X∨`.
pub fn named_integral(rd: &RootDatum, name: &str) -> Option<Vec<BigInt>> {
    rd.named(name).and_then(|v| q_to_int(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlattice::quotient_structure;

    fn order(sub: &Lattice, sup: &Lattice) -> BigInt {
        quotient_structure(sub, sup).unwrap().order().unwrap()
    }

    #[test]
    fn gl8_preset() {
        let (rd, inv) = build_preset(&PresetSpec::Gl { n: 8 }).unwrap();
        assert_eq!(rd.rank(), 8);
        assert_eq!(rd.coroots().rank(), 7);
        assert_eq!(inv.unwrap().theta(), &IntMatrix::identity(8).neg());
        assert!(validate(&rd).is_empty());
        // trace-zero sublattice
        assert!(rd.coroots().contains(&qvec(&[1, 1, -2, 0, 0, 0, 0, 0])).unwrap());
        assert!(!rd.coroots().contains(&qvec(&[1, 0, 0, 0, 0, 0, 0, 0])).unwrap());
    }

    #[test]
    fn e7_sc_has_x_equal_q() {
        let spec = PresetSpec::Simple { cartan: CartanType::E, rank: 7, isogeny: Isogeny::SimplyConnected, real: Some(SimpleReal::Split) };
        let (rd, _) = build_preset(&spec).unwrap();
        assert!(rd.is_simply_connected());
        assert!(validate(&rd).is_empty());
    }

    #[test]
    fn weil_torus() {
        let (rd, inv) = build_preset(&PresetSpec::TorusWeil).unwrap();
        assert_eq!(rd.rank(), 2);
        assert!(rd.coroots().is_zero());
        assert_eq!(inv.unwrap().theta(), &IntMatrix::from_rows(2, &[[0, -1], [-1, 0]]).unwrap());
    }

    #[test]
    fn invalid_params() {
        assert!(matches!(build_preset(&PresetSpec::Pso { p: 1, q: 2 }), Err(Error::InvalidParams(_))));
        assert!(matches!(build_preset(&PresetSpec::Gl { n: 0 }), Err(Error::InvalidParams(_))));
        assert!(matches!(build_preset(&PresetSpec::So { p: 0, q: 1 }), Err(Error::InvalidParams(_))));
        assert!("X".parse::<CartanType>().is_err());
        let e9 = PresetSpec::Simple { cartan: CartanType::E, rank: 9, isogeny: Isogeny::Adjoint, real: None };
        assert!(build_preset(&e9).is_err());
    }

    #[test]
    fn rank_one_orthogonal_tori() {
        let (rd, _) = build_preset(&PresetSpec::So { p: 1, q: 1 }).unwrap();
        assert_eq!(rd.kind(), DatumKind::Torus);
        assert_eq!(rd.display_weights().len(), 2);
        let (rd, _) = build_preset(&PresetSpec::Pso { p: 1, q: 1 }).unwrap();
        assert_eq!(rd.rank(), 1);
        assert!(rd.named("ϖ∨1").is_some());
    }

    #[test]
    fn so_swaps_p_and_q() {
        let (a, ia) = build_preset(&PresetSpec::So { p: 4, q: 1 }).unwrap();
        let (b, ib) = build_preset(&PresetSpec::So { p: 1, q: 4 }).unwrap();
        assert_eq!(a, b);
        assert_eq!(ia.unwrap().theta(), ib.unwrap().theta());
    }

    #[test]
    fn validate_flags_bad_coroots() {
        let rd = RootDatum::new("bad", DatumKind::Reductive, 2, vec![qvec_frac(&[(1, 2), (0, 1)])]).unwrap();
        let diags = validate(&rd);
        assert!(diags.iter().any(|d| d.contains("coroot not in cocharacter lattice")), "{diags:?}");
        let torus = RootDatum::new("t", DatumKind::Torus, 2, vec![qvec(&[1, -1])]).unwrap();
        assert!(!validate(&torus).is_empty());
    }

    #[test]
    fn products() {
        let (g1, _) = build_preset(&PresetSpec::Gl { n: 1 }).unwrap();
        let p = product(&g1, &g1);
        assert_eq!(p.rank(), 2);
        assert!(p.coroots().is_zero());
        let (so12, _) = build_preset(&PresetSpec::So { p: 1, q: 2 }).unwrap();
        let (c1, _) = build_preset(&PresetSpec::TorusCompact { n: 1 }).unwrap();
        let p = product(&so12, &c1);
        assert_eq!((p.rank(), p.coroots().rank()), (2, 1));
        let unit = RootDatum::torus("trivial", 0);
        assert_eq!(product(&so12, &unit), so12);
        assert_eq!(product(&unit, &so12), so12);
    }

    #[test]
    fn root_system_sizes() {
        let cases = [
            (CartanType::A, 1, 2),
            (CartanType::A, 4, 20),
            (CartanType::B, 3, 18),
            (CartanType::C, 3, 18),
            (CartanType::D, 4, 24),
            (CartanType::D, 5, 40),
            (CartanType::E, 6, 72),
            (CartanType::E, 7, 126),
            (CartanType::E, 8, 240),
            (CartanType::F, 4, 48),
            (CartanType::G, 2, 12),
        ];
        for (t, r, count) in cases {
            assert_eq!(coroot_system(&cartan_matrix(t, r).unwrap()).len(), count, "{t}{r}");
        }
    }

    #[test]
    fn simple_adjoint_index_is_fundamental_group_order() {
        let cases = [
            (CartanType::A, 1, 2),
            (CartanType::A, 3, 4),
            (CartanType::A, 5, 6),
            (CartanType::B, 3, 2),
            (CartanType::C, 4, 2),
            (CartanType::D, 4, 4),
            (CartanType::D, 5, 4),
            (CartanType::E, 6, 3),
            (CartanType::E, 7, 2),
            (CartanType::E, 8, 1),
            (CartanType::F, 4, 1),
            (CartanType::G, 2, 1),
        ];
        for (t, r, idx) in cases {
            for iso in [Isogeny::Adjoint, Isogeny::SimplyConnected] {
                let spec = PresetSpec::Simple { cartan: t, rank: r, isogeny: iso, real: None };
                let (rd, inv) = build_preset(&spec).unwrap();
                assert!(inv.is_none());
                assert!(validate(&rd).is_empty(), "{t}{r}");
                let expected = if iso == Isogeny::Adjoint { idx } else { 1 };
                assert_eq!(order(rd.coroots(), rd.cochar()), BigInt::from(expected), "{t}{r} {iso:?}");
            }
        }
    }

    #[test]
    fn so_and_pso_coroot_index() {
        for (p, q) in [(1, 2), (2, 3), (3, 3), (0, 5), (4, 5)] {
            let (rd, _) = build_preset(&PresetSpec::So { p, q }).unwrap();
            assert_eq!(order(rd.coroots(), rd.cochar()), BigInt::from(2), "SO({p},{q})");
        }
        // PSO₂ₗ: X∨/Q∨ is the centre of Spin₂ₗ, order 4
        for (p, q) in [(2, 2), (1, 3), (3, 3), (2, 4)] {
            let (rd, _) = build_preset(&PresetSpec::Pso { p, q }).unwrap();
            assert!(validate(&rd).is_empty());
            assert_eq!(order(rd.coroots(), rd.cochar()), BigInt::from(4), "PSO({p},{q})");
        }
    }

    #[test]
    fn e7_adjoint_coweights() {
        let rd = e7_adjoint().unwrap();
        assert!(validate(&rd).is_empty());
        assert_eq!(rd.coroot_generators().len(), 126);
        assert_eq!(order(rd.coroots(), rd.cochar()), BigInt::from(2));
        for i in 1..=7 {
            let w = rd.named(&format!("ϖ∨{i}")).unwrap();
            assert_eq!(w, &unit(7, i - 1));
            let in_q = rd.coroots().contains(w).unwrap();
            assert_eq!(in_q, [2, 4, 5, 6].contains(&i), "ϖ∨{i}");
        }
        // simple coroots are coroots and span Q∨
        let simple: Vec<QVector> = (1..=7).map(|i| rd.named(&format!("α∨{i}")).unwrap().clone()).collect();
        assert_eq!(&Lattice::from_rational_rows(7, &simple).unwrap(), rd.coroots());
    }

    #[test]
    fn e7_pairing_is_dual() {
        // (ϖ∨ᵢ, α∨ⱼ) = δᵢⱼ under the invariant form
        let rd = e7_adjoint().unwrap();
        let g = e7_invariant_form();
        for i in 1..=7 {
            for j in 1..=7 {
                let a = rd.named(&format!("α∨{j}")).unwrap();
                let ga = g.apply(a).unwrap();
                let v = ga[i - 1].clone();
                let expected = if i == j { BigRational::one() } else { BigRational::zero() };
                assert_eq!(v, expected, "ϖ∨{i}, α∨{j}");
            }
        }
    }
}
