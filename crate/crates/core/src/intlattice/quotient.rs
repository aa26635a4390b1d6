use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::lattice::Lattice;
use super::matrix::{QVector, RatMatrix};
use super::normal_form::snf;
use crate::error::{Error, Result};

/// Structure of `sup / sub` for lattices `sub ⊆ sup`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure {
    /// Torsion invariant factors `d₁ | d₂ | … | dₖ`, each ≥ 2.
    pub invariant_factors: Vec<BigInt>,
    /// Rank of the free part.
    pub free_rank: usize,
    /// One coset representative per invariant factor, reduced modulo `sub`.
    pub generators: Vec<QVector>,
    /// Representatives generating the free part.
    pub free_generators: Vec<QVector>,
}

impl QuotientStructure {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.is_finite() && self.invariant_factors.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.invariant_factors.iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    /// True when every invariant factor is 2 and there is no free part.
    pub fn is_elementary_2(&self) -> bool {
        let two = BigInt::from(2);
        self.is_finite() && self.invariant_factors.iter().all(|d| *d == two)
    }
}

/// Invariant factors and canonical coset generators of `sup / sub`.
pub fn quotient_structure(sub: &Lattice, sup: &Lattice) -> Result<QuotientStructure> {
    if sub.dim() != sup.dim() {
        return Err(Error::DimensionMismatch { expected: sup.dim(), found: sub.dim() });
    }
    let r = sup.rank();
    // rows: coordinates of sub's basis in sup's basis
    let coords = sub.coordinate_matrix_in(sup)?;
    let sub_rank = sub.rank();
    if r == 0 {
        return Ok(QuotientStructure {
            invariant_factors: vec![],
            free_rank: 0,
            generators: vec![],
            free_generators: vec![],
        });
    }
    // U·C·V = D  ⇒  rowspan(C) = rowspan(D·V⁻¹), so the rows fⱼ of V⁻¹ form a
    // basis of ℤʳ adapted to the sublattice: sub = ⊕ dⱼ fⱼ.
    let dec = snf(&coords);
    let v_inv = RatMatrix::from_int(&dec.v)
        .inverse()
        .and_then(|m| m.to_int())
        .ok_or_else(|| Error::Internal("Smith column transform is not unimodular".into()))?;
    let sup_gens = sup.generators();
    let to_ambient = |coeffs: &[BigInt]| -> QVector {
        let mut out = vec![BigRational::zero(); sup.dim()];
        for (c, g) in coeffs.iter().zip(&sup_gens) {
            if c.is_zero() {
                continue;
            }
            let cq = BigRational::from_integer(c.clone());
            for (o, x) in out.iter_mut().zip(g) {
                *o += &cq * x;
            }
        }
        out
    };

    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    let mut free_generators = Vec::new();
    for j in 0..r {
        let d = if j < dec.diag.len() && j < sub_rank { dec.diag[j].clone() } else { BigInt::zero() };
        if d.is_one() {
            continue;
        }
        let v = to_ambient(v_inv.row(j));
        let v = sub.reduce(&v)?;
        if d.is_zero() {
            free_generators.push(v);
        } else {
            invariant_factors.push(d);
            generators.push(v);
        }
    }
    Ok(QuotientStructure { free_rank: free_generators.len(), invariant_factors, generators, free_generators })
}

/// Exhaustive coset enumeration of `sup / sub`, independent of Smith form.
///
/// Cosets are discovered breadth-first by adding basis vectors of `sup` and
/// identified by their Hermite-reduced representative (two elements share a
/// coset exactly when their difference lies in `sub`). The group structure is
/// then read off element orders: repeatedly pick an element of maximal order
/// in the quotient by the span found so far and lift it to one of the same
/// order.
pub fn brute_force_quotient(sub: &Lattice, sup: &Lattice, bound: usize) -> Result<QuotientStructure> {
    if sub.dim() != sup.dim() {
        return Err(Error::DimensionMismatch { expected: sup.dim(), found: sub.dim() });
    }
    let coords = sub.coordinate_matrix_in(sup)?;
    let r = sup.rank();
    if sub.rank() < r {
        return Err(Error::InfiniteIndex { free_rank: r - sub.rank() });
    }
    let sub_in_coords = Lattice::new(&coords, BigInt::one())?;
    let group = CosetTable::enumerate(&sub_in_coords, r, bound)?;

    let (orders, basis) = group.invariant_basis();
    let sup_gens = sup.generators();
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    // basis comes out with orders descending; invariant factors are ascending
    for (ord, idx) in orders.into_iter().zip(basis).rev() {
        invariant_factors.push(BigInt::from(ord));
        let c = &group.elements[idx];
        let mut v = vec![BigRational::zero(); sup.dim()];
        for (ci, g) in c.iter().zip(&sup_gens) {
            let cq = BigRational::from_integer(BigInt::from(*ci));
            for (o, x) in v.iter_mut().zip(g) {
                *o += &cq * x;
            }
        }
        generators.push(sub.reduce(&v)?);
    }
    Ok(QuotientStructure { invariant_factors, free_rank: 0, generators, free_generators: vec![] })
}

/// Number of cosets found by exhaustive enumeration.
pub fn brute_force_index(sub: &Lattice, sup: &Lattice, bound: usize) -> Result<usize> {
    let coords = sub.coordinate_matrix_in(sup)?;
    let r = sup.rank();
    if sub.rank() < r {
        return Err(Error::InfiniteIndex { free_rank: r - sub.rank() });
    }
    let sub_in_coords = Lattice::new(&coords, BigInt::one())?;
    Ok(CosetTable::enumerate(&sub_in_coords, r, bound)?.elements.len())
}

/// Cosets of a full-rank `sub ⊆ ℤʳ`, keyed by their reduction modulo the
/// (upper triangular) Hermite basis of `sub`.
struct CosetTable {
    hnf: Vec<Vec<i128>>,
    elements: Vec<Vec<i128>>,
    index_of: HashMap<Vec<i128>, usize>,
}

impl CosetTable {
    fn enumerate(sub: &Lattice, r: usize, bound: usize) -> Result<Self> {
        // a pivot above the bound already forces more cosets than allowed,
        // and below it every entry is small enough for i128 arithmetic
        let limit = BigInt::from(bound);
        let basis = sub.basis();
        let mut hnf = Vec::with_capacity(r);
        for i in 0..r {
            if basis[(i, i)] > limit {
                return Err(Error::BoundExceeded { bound });
            }
            hnf.push(basis.row(i).iter().map(|x| x.to_i128().expect("entry below a pivot")).collect());
        }
        let mut table = CosetTable { hnf, elements: Vec::new(), index_of: HashMap::new() };
        table.insert(vec![0; r]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for j in 0..r {
                let mut next = table.elements[i].clone();
                next[j] += 1;
                table.reduce(&mut next);
                if !table.index_of.contains_key(&next) {
                    if table.elements.len() >= bound {
                        return Err(Error::BoundExceeded { bound });
                    }
                    let k = table.insert(next);
                    queue.push_back(k);
                }
            }
        }
        Ok(table)
    }

    fn insert(&mut self, key: Vec<i128>) -> usize {
        let k = self.elements.len();
        self.index_of.insert(key.clone(), k);
        self.elements.push(key);
        k
    }

    fn reduce(&self, v: &mut [i128]) {
        for (i, row) in self.hnf.iter().enumerate() {
            let q = v[i].div_euclid(row[i]);
            if q != 0 {
                for (x, h) in v[i..].iter_mut().zip(&row[i..]) {
                    *x -= q * h;
                }
            }
        }
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let mut s: Vec<i128> = self.elements[a].iter().zip(&self.elements[b]).map(|(x, y)| x + y).collect();
        self.reduce(&mut s);
        self.index_of[&s]
    }

    /// Smallest `m ≥ 1` with `m·x ∈ h`.
    fn order_modulo(&self, x: usize, h: &HashSet<usize>) -> usize {
        let mut acc = x;
        let mut m = 1;
        while !h.contains(&acc) {
            acc = self.add(acc, x);
            m += 1;
        }
        m
    }

    /// Greedy invariant-factor basis; returns (orders, element indices) with
    /// orders non-increasing.
    fn invariant_basis(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.elements.len();
        // span: element index -> coefficients on chosen basis
        let mut span: HashMap<usize, Vec<usize>> = HashMap::from([(0, vec![])]);
        let mut basis: Vec<usize> = Vec::new();
        let mut orders: Vec<usize> = Vec::new();
        while span.len() < n {
            let h: HashSet<usize> = span.keys().copied().collect();
            let (y, m) = (0..n)
                .filter(|i| !h.contains(i))
                .map(|i| (i, self.order_modulo(i, &h)))
                .fold(None, |best: Option<(usize, usize)>, (i, m)| match best {
                    Some((_, bm)) if bm >= m => best,
                    _ => Some((i, m)),
                })
                .expect("some element lies outside the span");
            // m·y = Σ cᵢ xᵢ with m | cᵢ; x = y − Σ (cᵢ/m) xᵢ has order m
            let my = self.multiple(y, m);
            let coeffs = span[&my].clone();
            let mut x = y;
            for (c, (&b, &ob)) in coeffs.iter().zip(basis.iter().zip(&orders)) {
                let k = c / m;
                if k != 0 {
                    let neg = self.multiple(b, ob - k % ob);
                    x = self.add(x, neg);
                }
            }
            basis.push(x);
            orders.push(m);
            // rebuild the span over all coefficient tuples
            let mut new_span: HashMap<usize, Vec<usize>> = HashMap::new();
            for (e, c) in &span {
                let mut acc = *e;
                for k in 0..m {
                    let mut cc = c.clone();
                    cc.push(k);
                    new_span.insert(acc, cc);
                    acc = self.add(acc, x);
                }
            }
            span = new_span;
        }
        (orders, basis)
    }

    fn multiple(&self, x: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.add(acc, x);
        }
        acc
    }
}

/// Index of `sub` in `sup` as a machine integer, or `None` if infinite or huge.
pub fn small_index(sub: &Lattice, sup: &Lattice) -> Result<Option<u64>> {
    Ok(sub.index_in(sup)?.and_then(|i| i.to_u64()))
}
