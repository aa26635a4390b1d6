//! Component groups and the auxiliary first cohomology group.
//!
//! With `X∨_spl = X∨ ∩ ker(θ+1)`, `X̃∨_spl = ½(1−θ)X∨`, `Q∨_spl = Q∨ ∩ ker(θ+1)`
//! and `Q∨_cmp = Q∨ ∩ ker(θ−1)`:
//!
//! ```text
//! π₀G(ℝ)          ≅ X∨_spl / (2X̃∨_spl + Q∨_spl)
//! H¹(ℝ, iX∨/iQ∨)  ≅ X∨ ∩ (X̃∨_spl + ½Q∨_cmp) / (2X̃∨_spl + Q∨)
//! ```
//!
//! The coset of `ν ∈ X∨_spl` corresponds to the component containing
//! `t = exp(πiν)`, an element of order ≤ 2 of the split torus. Sending that
//! coset to the class of `ν` in the second quotient is injective; this is the
//! connecting map of the exact sequence `1 → π₀G(ℝ) → H¹(ℝ, iX∨/iQ∨)`, whose
//! further term (non-abelian `H¹` of the simply connected cover) is never
//! computed here.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intlattice::{
    brute_force_quotient, format_qvector, int_to_q, q_to_int, quotient_structure, IntMatrix, Lattice, QVector,
};
use crate::realform::Involution;
use crate::rootdata::{NamedVector, RootDatum};

/// The lattices attached to `(X∨, Q∨, θ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitLattices {
    /// `X∨ ∩ ker(θ+1)`.
    pub xspl: Lattice,
    /// Image of `X∨` under `ν ↦ ½(ν − θν)`.
    pub xtilde_spl: Lattice,
    /// `Q∨ ∩ ker(θ+1)`.
    pub qspl: Lattice,
    /// `Q∨ ∩ ker(θ−1)`.
    pub qcmp: Lattice,
}

pub fn split_lattices(rd: &RootDatum, inv: &Involution) -> Result<SplitLattices> {
    check_inputs(rd, inv)?;
    Ok(SplitLattices {
        xspl: rd.cochar().kernel(&inv.plus_identity())?,
        xtilde_spl: rd.cochar().image(&inv.split_projection())?,
        qspl: rd.coroots().kernel(&inv.plus_identity())?,
        qcmp: rd.coroots().kernel(&inv.minus_identity())?,
    })
}

fn check_inputs(rd: &RootDatum, inv: &Involution) -> Result<()> {
    if inv.rank() != rd.rank() {
        return Err(Error::DimensionMismatch { expected: rd.rank(), found: inv.rank() });
    }
    Ok(())
}

/// An elementary abelian 2-group `sup / sub` with a chosen basis of cosets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elementary2Group {
    generators: Vec<Vec<BigInt>>,
    generator_names: Vec<Option<String>>,
    sub: Lattice,
    sup: Lattice,
}

impl Elementary2Group {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn order(&self) -> BigInt {
        BigInt::one() << self.rank()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Coset representatives `ν` of a basis.
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Name of each generator when it coincides with a named vector.
    pub fn generator_names(&self) -> &[Option<String>] {
        &self.generator_names
    }

    /// Display label: the vector's name, or its coordinates.
    pub fn generator_label(&self, i: usize) -> String {
        match &self.generator_names[i] {
            Some(n) => n.clone(),
            None => format_int_vector(&self.generators[i]),
        }
    }

    /// `(sub, sup)` with the group equal to `sup / sub`.
    pub fn quotient_pair(&self) -> (&Lattice, &Lattice) {
        (&self.sub, &self.sup)
    }

    /// Whether `a` and `b` represent the same element.
    pub fn same_class(&self, a: &[BigInt], b: &[BigInt]) -> Result<bool> {
        let d: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.sub.contains_int(&d)
    }

    /// All elements as subset sums of the generators, in binary-counter order
    /// (bit `i` of the index selects generator `i`), starting with `0`.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let n = self.sub.dim();
        let k = self.rank();
        assert!(k < usize::BITS as usize, "group too large to enumerate");
        (0..1usize << k)
            .map(|mask| {
                let mut v = vec![BigInt::zero(); n];
                for (i, g) in self.generators.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        for (x, y) in v.iter_mut().zip(g) {
                            *x += y;
                        }
                    }
                }
                v
            })
            .collect()
    }

    /// Label of the subset sum with the given mask, e.g. `e∨1 + ϖ∨4`.
    pub fn element_label(&self, mask: usize) -> String {
        let parts: Vec<String> = (0..self.rank()).filter(|i| mask >> i & 1 == 1).map(|i| self.generator_label(i)).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for Elementary2Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(ℤ/2)^{} of order {}", self.rank(), self.order())?;
        if !self.is_trivial() {
            let labels: Vec<String> = (0..self.rank()).map(|i| self.generator_label(i)).collect();
            write!(f, ", generated by {}", labels.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn format_int_vector(v: &[BigInt]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

/// Turns `sup / sub` into an [`Elementary2Group`], failing if some invariant
/// factor differs from 2. Generators are canonical coset representatives,
/// replaced by named vectors wherever those represent independent classes.
fn elementary_quotient(sub: &Lattice, sup: &Lattice, named: &[NamedVector], what: &str) -> Result<Elementary2Group> {
    let q = quotient_structure(sub, sup)?;
    if !q.is_elementary_2() {
        let factors: Vec<String> = q.invariant_factors.iter().map(|d| d.to_string()).collect();
        return Err(Error::Internal(format!(
            "{what} is not an elementary abelian 2-group: invariant factors [{}], free rank {}",
            factors.join(", "),
            q.free_rank
        )));
    }
    let k = q.invariant_factors.len();
    let mut span = sub.clone();
    let mut generators = Vec::with_capacity(k);
    let mut names = Vec::with_capacity(k);
    let mut take = |v: Vec<BigInt>, name: Option<String>, span: &mut Lattice| -> Result<()> {
        let line = Lattice::new(&IntMatrix::from_bigint_rows(v.len(), vec![v.clone()])?, BigInt::one())?;
        *span = span.sum(&line)?;
        generators.push(v);
        names.push(name);
        Ok(())
    };
    for nv in named {
        let Some(v) = q_to_int(&nv.vector) else { continue };
        if sup.contains_int(&v)? && !span.contains_int(&v)? {
            take(v, Some(nv.name.clone()), &mut span)?;
        }
    }
    for g in &q.generators {
        let v = q_to_int(g).ok_or_else(|| Error::Internal(format!("{what}: non-integral generator {}", format_qvector(g))))?;
        if !span.contains_int(&v)? {
            take(v, None, &mut span)?;
        }
    }
    if generators.len() != k || span != *sup {
        return Err(Error::Internal(format!("{what}: generator normalization produced {} of {k}", generators.len())));
    }
    Ok(Elementary2Group { generators, generator_names: names, sub: sub.clone(), sup: sup.clone() })
}

/// Outcome of comparing a quotient against brute-force coset enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Agree,
    /// The index exceeds the enumeration bound.
    Skipped,
}

impl OracleVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            OracleVerdict::Agree => "agree",
            OracleVerdict::Skipped => "skipped",
        }
    }
}

/// Recomputes `group` by enumerating cosets when its order is at most
/// `bound`. Disagreement is reported as [`Error::OracleDisagreement`].
pub fn oracle_check(group: &Elementary2Group, bound: usize) -> Result<OracleVerdict> {
    if group.order() > BigInt::from(bound) {
        return Ok(OracleVerdict::Skipped);
    }
    let (sub, sup) = group.quotient_pair();
    let brute = brute_force_quotient(sub, sup, bound)?;
    let expected = vec![BigInt::from(2); group.rank()];
    if brute.invariant_factors != expected || brute.free_rank != 0 {
        let got: Vec<String> = brute.invariant_factors.iter().map(|d| d.to_string()).collect();
        return Err(Error::OracleDisagreement(format!(
            "coset enumeration gives invariant factors [{}], expected (ℤ/2)^{}",
            got.join(", "),
            group.rank()
        )));
    }
    Ok(OracleVerdict::Agree)
}

/// `π₀G(ℝ) ≅ X∨_spl / (2X̃∨_spl + Q∨_spl)`.
pub fn pi0(rd: &RootDatum, inv: &Involution) -> Result<Elementary2Group> {
    let s = split_lattices(rd, inv)?;
    let sub = s.xtilde_spl.scaled_int(2).sum(&s.qspl)?;
    elementary_quotient(&sub, &s.xspl, rd.named_vectors(), "π₀")
}

/// The pair `(numerator, denominator)` whose quotient is `H¹(ℝ, iX∨/iQ∨)`.
pub fn h1_lattices(rd: &RootDatum, inv: &Involution) -> Result<(Lattice, Lattice)> {
    let s = split_lattices(rd, inv)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let numerator = rd.cochar().intersect(&s.xtilde_spl.sum(&s.qcmp.scaled(&half))?)?;
    let denominator = s.xtilde_spl.scaled_int(2).sum(rd.coroots())?;
    Ok((numerator, denominator))
}

/// `H¹(ℝ, iX∨/iQ∨) ≅ X∨ ∩ (X̃∨_spl + ½Q∨_cmp) / (2X̃∨_spl + Q∨)`.
pub fn h1_pi1(rd: &RootDatum, inv: &Involution) -> Result<Elementary2Group> {
    let (numerator, denominator) = h1_lattices(rd, inv)?;
    elementary_quotient(&denominator, &numerator, rd.named_vectors(), "H¹")
}

fn require_in_cochar(rd: &RootDatum, nu: &[BigInt]) -> Result<()> {
    if nu.len() != rd.rank() {
        return Err(Error::DimensionMismatch { expected: rd.rank(), found: nu.len() });
    }
    Ok(())
}

/// Whether `iν + iQ∨` is a 1-cocycle: `ν_cmp = ½(ν + θν) ∈ ½Q∨_cmp`.
pub fn cocycle_check(rd: &RootDatum, inv: &Involution, nu: &[BigInt]) -> Result<bool> {
    require_in_cochar(rd, nu)?;
    check_inputs(rd, inv)?;
    let s = split_lattices(rd, inv)?;
    let nu_cmp = inv.compact_projection().apply(&int_to_q(nu))?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    s.qcmp.scaled(&half).contains(&nu_cmp)
}

/// Whether `iν + iQ∨` is a coboundary: `ν ∈ 2X̃∨_spl + Q∨`.
pub fn coboundary_check(rd: &RootDatum, inv: &Involution, nu: &[BigInt]) -> Result<bool> {
    require_in_cochar(rd, nu)?;
    let (_, denominator) = h1_lattices(rd, inv)?;
    denominator.contains_int(nu)
}

/// Verifies that `π₀G(ℝ) → H¹(ℝ, iX∨/iQ∨)`, `ν ↦ ν`, is a well-defined
/// injective homomorphism: every generator lands in the numerator and the
/// images of all subset sums of generators are pairwise distinct classes.
pub fn kernel_embedding_check(rd: &RootDatum, inv: &Involution) -> Result<bool> {
    let p = pi0(rd, inv)?;
    let (numerator, denominator) = h1_lattices(rd, inv)?;
    for g in p.generators() {
        if !numerator.contains_int(g)? {
            return Ok(false);
        }
    }
    let (pi0_sub, _) = p.quotient_pair();
    if !pi0_sub.is_sublattice_of(&denominator)? {
        return Ok(false);
    }
    if p.rank() > 16 {
        // too many subset sums; compare indices instead
        let mut span = denominator.clone();
        for g in p.generators() {
            let line = Lattice::new(&IntMatrix::from_bigint_rows(g.len(), vec![g.clone()])?, BigInt::one())?;
            span = span.sum(&line)?;
        }
        let idx = denominator.index_in(&span)?;
        return Ok(idx == Some(p.order()));
    }
    let mut seen = HashSet::new();
    for e in p.elements() {
        let key = denominator.reduce(&int_to_q(&e))?;
        if !seen.insert(key) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `π₀T(ℝ) ≅ X∨_spl / 2X̃∨_spl` for a torus of the given rank.
pub fn torus_pi0(rank: usize, inv: &Involution) -> Result<Elementary2Group> {
    let rd = RootDatum::torus("torus", rank);
    pi0(&rd, inv)
}

/// An exact fourth root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FourthRoot {
    One,
    I,
    MinusOne,
    MinusI,
}

impl FourthRoot {
    /// `exp(πi·k/2)`.
    pub fn from_quarter_turns(k: &BigInt) -> FourthRoot {
        match k.mod_floor(&BigInt::from(4)).to_u8().expect("residue mod 4") {
            0 => FourthRoot::One,
            1 => FourthRoot::I,
            2 => FourthRoot::MinusOne,
            _ => FourthRoot::MinusI,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            FourthRoot::One => "1",
            FourthRoot::I => "i",
            FourthRoot::MinusOne => "-1",
            FourthRoot::MinusI => "-i",
        }
    }

    pub fn parse(s: &str) -> Option<FourthRoot> {
        match s {
            "1" => Some(FourthRoot::One),
            "i" => Some(FourthRoot::I),
            "-1" => Some(FourthRoot::MinusOne),
            "-i" => Some(FourthRoot::MinusI),
            _ => None,
        }
    }

    fn quarter_turns(self) -> u8 {
        match self {
            FourthRoot::One => 0,
            FourthRoot::I => 1,
            FourthRoot::MinusOne => 2,
            FourthRoot::MinusI => 3,
        }
    }

    pub fn mul(self, other: FourthRoot) -> FourthRoot {
        FourthRoot::from_quarter_turns(&BigInt::from(self.quarter_turns() + other.quarter_turns()))
    }
}

impl fmt::Display for FourthRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The torus element `t = exp(πiν)` for `ν ∈ X∨_spl`, with its values
/// `λ(t) = exp(πi⟨λ, ν⟩)` on the display weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representative {
    pub nu: Vec<BigInt>,
    pub evaluations: Vec<(String, FourthRoot)>,
    pub note: Option<String>,
}

impl Representative {
    /// `diag(…)` of the evaluations, prefixed with `±` for lifts.
    pub fn matrix_string(&self) -> String {
        if self.evaluations.is_empty() {
            return format!("exp(πi·{})", format_int_vector(&self.nu));
        }
        let cells: Vec<&str> = self.evaluations.iter().map(|(_, v)| v.as_str()).collect();
        let sign = if self.note.is_some() { "±" } else { "" };
        format!("{sign}diag({})", cells.join(","))
    }

    pub fn values(&self) -> Vec<FourthRoot> {
        self.evaluations.iter().map(|(_, v)| *v).collect()
    }
}

pub fn representative(rd: &RootDatum, inv: &Involution, nu: &[BigInt]) -> Result<Representative> {
    require_in_cochar(rd, nu)?;
    let s = split_lattices(rd, inv)?;
    if !s.xspl.contains_int(nu)? {
        return Err(Error::NotInLattice { vector: format_int_vector(nu), lattice: "X∨_spl".into() });
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let mut evaluations = Vec::with_capacity(rd.display_weights().len());
    for w in rd.display_weights() {
        let pairing = w
            .weight
            .iter()
            .zip(nu)
            .fold(BigRational::zero(), |acc, (l, x)| acc + l * BigRational::from_integer(x.clone()));
        let doubled = pairing * &two;
        if !doubled.is_integer() {
            return Err(Error::PairingNotHalfIntegral { label: w.label.clone(), vector: format_int_vector(nu) });
        }
        evaluations.push((w.label.clone(), FourthRoot::from_quarter_turns(&doubled.to_integer())));
    }
    Ok(Representative { nu: nu.to_vec(), evaluations, note: rd.lift_note().map(str::to_owned) })
}

/// One representative per element of `group`, as subset sums of the
/// generators, including the identity first.
pub fn all_representatives(rd: &RootDatum, inv: &Involution, group: &Elementary2Group) -> Result<Vec<Representative>> {
    group.elements().iter().map(|nu| representative(rd, inv, nu)).collect()
}

/// `ν ↦ ½(ν − θν)` on rational vectors.
pub fn split_part(inv: &Involution, nu: &[BigRational]) -> Result<QVector> {
    inv.split_projection().apply(nu)
}
