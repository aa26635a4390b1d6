use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{common_denominator, IntMatrix, QVector, RatMatrix};
use super::normal_form::{hnf, left_kernel};
use crate::error::{Error, Result};

/// A lattice `(1/denom) · rowspan_ℤ(basis)` inside ℚⁿ.
///
/// Values are always canonical: the basis is in Hermite normal form and the
/// denominator shares no common factor with all basis entries. Equality of
/// point sets is therefore plain structural equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: IntMatrix,
    denom: BigInt,
}

impl Lattice {
    /// Lattice generated by the rows of `generators`, scaled by `1/denom`.
    /// Generators need not be independent.
    pub fn new(generators: &IntMatrix, denom: BigInt) -> Result<Self> {
        if !denom.is_positive() {
            return Err(Error::InvalidParams(format!("lattice denominator must be positive, got {denom}")));
        }
        Ok(Self::canonical(generators.cols(), hnf(generators), denom))
    }

    fn canonical(dim: usize, basis: IntMatrix, denom: BigInt) -> Self {
        let g = basis.row_iter().flatten().fold(denom.clone(), |acc, x| acc.gcd(x));
        if g.is_one() {
            return Lattice { dim, basis, denom };
        }
        let rows = basis.row_iter().map(|r| r.iter().map(|x| x / &g).collect()).collect();
        let basis = IntMatrix::from_bigint_rows(dim, rows).expect("same width");
        // dividing every entry by a positive constant keeps the Hermite shape
        Lattice { dim, basis, denom: denom / g }
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(dim: usize, rows: &[R]) -> Result<Self> {
        Self::new(&IntMatrix::from_rows(dim, rows)?, BigInt::one())
    }

    /// Lattice generated by rational vectors.
    pub fn from_rational_rows(dim: usize, rows: &[QVector]) -> Result<Self> {
        let m = RatMatrix::from_rows(dim, rows)?;
        let (int, denom) = m.to_scaled_int();
        Self::new(&int, denom)
    }

    /// The standard lattice ℤⁿ.
    pub fn standard(n: usize) -> Self {
        Lattice { dim: n, basis: IntMatrix::identity(n), denom: BigInt::one() }
    }

    pub fn zero(n: usize) -> Self {
        Lattice { dim: n, basis: IntMatrix::zeros(0, n), denom: BigInt::one() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Canonical (Hermite) basis numerators.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    /// Basis vectors as rational points.
    pub fn generators(&self) -> Vec<QVector> {
        self.basis
            .row_iter()
            .map(|r| r.iter().map(|x| BigRational::new(x.clone(), self.denom.clone())).collect())
            .collect()
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim != n {
            return Err(Error::DimensionMismatch { expected: self.dim, found: n });
        }
        Ok(())
    }

    /// `k · L` for a rational scalar `k ≠ 0`.
    pub fn scaled(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Lattice::zero(self.dim);
        }
        let basis = self.basis.scaled(k.numer());
        let denom = &self.denom * k.denom();
        Self::new(&basis, denom.abs()).expect("positive denominator")
    }

    pub fn scaled_int(&self, k: i64) -> Self {
        self.scaled(&BigRational::from_integer(BigInt::from(k)))
    }

    /// Basis numerators rewritten over the common denominator `d`, which must
    /// be a multiple of `self.denom`.
    fn basis_over(&self, d: &BigInt) -> IntMatrix {
        self.basis.scaled(&(d / &self.denom))
    }

    /// Smallest lattice containing both.
    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_dim(other.dim)?;
        let d = self.denom.lcm(&other.denom);
        let stacked = self.basis_over(&d).stack(&other.basis_over(&d))?;
        Lattice::new(&stacked, d)
    }

    /// Set-theoretic intersection.
    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        self.check_dim(other.dim)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Lattice::zero(self.dim));
        }
        let d = self.denom.lcm(&other.denom);
        let a = self.basis_over(&d);
        let b = other.basis_over(&d);
        // x·A = y·B  ⇔  (x, -y) lies in the left kernel of [A; B]
        let kernel = left_kernel(&a.stack(&b)?);
        let ra = a.rows();
        let mut rows = Vec::with_capacity(kernel.rows());
        for k in kernel.row_iter() {
            let coeffs = &k[..ra];
            let v: Vec<BigInt> = (0..self.dim)
                .map(|j| coeffs.iter().enumerate().map(|(i, c)| c * &a[(i, j)]).sum())
                .collect();
            rows.push(v);
        }
        Lattice::new(&IntMatrix::from_bigint_rows(self.dim, rows)?, d)
    }

    /// `{v ∈ L : a v = 0}`, with `a` acting on column vectors.
    pub fn kernel(&self, a: &IntMatrix) -> Result<Lattice> {
        self.check_dim(a.cols())?;
        if self.is_zero() {
            return Ok(self.clone());
        }
        // v = x·B/d, a·vᵀ = 0  ⇔  x·(B·aᵀ) = 0
        let image = self.basis.checked_mul(&a.transpose())?;
        let k = left_kernel(&image);
        let gens = k.checked_mul(&self.basis)?;
        Lattice::new(&gens, self.denom.clone())
    }

    /// `a(L)` for a rational square matrix acting on column vectors.
    pub fn image(&self, a: &RatMatrix) -> Result<Lattice> {
        self.check_dim(a.cols())?;
        if a.rows() != a.cols() {
            return Err(Error::DimensionMismatch { expected: a.cols(), found: a.rows() });
        }
        let (num, e) = a.to_scaled_int();
        let gens = self.basis.checked_mul(&num.transpose())?;
        Lattice::new(&gens, &self.denom * e)
    }

    pub fn image_int(&self, a: &IntMatrix) -> Result<Lattice> {
        self.image(&RatMatrix::from_int(a))
    }

    /// Integer coordinates of `v` with respect to the canonical basis, or `None`
    /// when `v ∉ L`.
    pub fn coordinates(&self, v: &[BigRational]) -> Result<Option<Vec<BigInt>>> {
        self.check_dim(v.len())?;
        let pivots = self.pivots();
        let d = BigRational::from_integer(self.denom.clone());
        // target numerators w = d·v; solve x·B = w by forward substitution on pivots
        let w: QVector = v.iter().map(|x| x * &d).collect();
        let mut coords = Vec::with_capacity(self.rank());
        let mut residual = w;
        for (i, &p) in pivots.iter().enumerate() {
            let piv = BigRational::from_integer(self.basis[(i, p)].clone());
            let x = &residual[p] / piv;
            if !x.is_integer() {
                return Ok(None);
            }
            let xi = x.to_integer();
            if !xi.is_zero() {
                for (j, r) in residual.iter_mut().enumerate() {
                    *r -= BigRational::from_integer(&xi * &self.basis[(i, j)]);
                }
            }
            coords.push(xi);
        }
        if residual.iter().all(Zero::is_zero) {
            Ok(Some(coords))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, v: &[BigRational]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_int(&self, v: &[BigInt]) -> Result<bool> {
        let q: QVector = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        self.contains(&q)
    }

    /// True when every generator of `self` lies in `other`.
    pub fn is_sublattice_of(&self, other: &Lattice) -> Result<bool> {
        self.check_dim(other.dim)?;
        for g in self.generators() {
            if !other.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .row_iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero"))
            .collect()
    }

    /// Canonical representative of `v + L`: the unique element of the coset
    /// whose pivot coordinates (over a common denominator) lie in `[0, pivot)`.
    pub fn reduce(&self, v: &[BigRational]) -> Result<QVector> {
        self.check_dim(v.len())?;
        let vd = common_denominator(v);
        let d = self.denom.lcm(&vd);
        let rows = self.basis_over(&d);
        let dq = BigRational::from_integer(d.clone());
        let mut w: Vec<BigInt> = v.iter().map(|x| (x * &dq).to_integer()).collect();
        for (i, p) in self.pivots().into_iter().enumerate() {
            let q = w[p].div_floor(&rows[(i, p)]);
            if !q.is_zero() {
                for (j, wj) in w.iter_mut().enumerate() {
                    *wj -= &q * &rows[(i, j)];
                }
            }
        }
        Ok(w.into_iter().map(|x| BigRational::new(x, d.clone())).collect())
    }

    /// Saturation of `L` inside `ambient`: all points of `ambient` lying in the
    /// rational span of `L`.
    pub fn saturate_in(&self, ambient: &Lattice) -> Result<Lattice> {
        self.check_dim(ambient.dim)?;
        if self.is_zero() {
            return Ok(self.clone());
        }
        // span(L) = kernel of the orthogonal-complement equations
        let eqs = left_kernel(&self.basis.transpose());
        ambient.kernel(&eqs)
    }

    /// The index `[sup : self]`, or `None` when the ranks differ.
    pub fn index_in(&self, sup: &Lattice) -> Result<Option<BigInt>> {
        self.check_dim(sup.dim)?;
        if !self.is_sublattice_of(sup)? {
            return Err(Error::NotSublattice(format!("{self} ⊄ {sup}")));
        }
        if self.rank() != sup.rank() {
            return Ok(None);
        }
        let coords = self.coordinate_matrix_in(sup)?;
        Ok(Some(coords.determinant()?.abs()))
    }

    /// Integer matrix whose rows are the coordinates of this lattice's basis in
    /// `sup`'s canonical basis. Requires `self ⊆ sup`.
    pub(crate) fn coordinate_matrix_in(&self, sup: &Lattice) -> Result<IntMatrix> {
        let mut rows = Vec::with_capacity(self.rank());
        for g in self.generators() {
            match sup.coordinates(&g)? {
                Some(c) => rows.push(c),
                None => return Err(Error::NotSublattice(format!("{self} ⊄ {sup}"))),
            }
        }
        IntMatrix::from_bigint_rows(sup.rank(), rows)
    }

    /// Direct sum in block coordinates.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let d = self.denom.lcm(&other.denom);
        let a = self.basis_over(&d);
        let b = other.basis_over(&d);
        let mut rows = Vec::new();
        for r in a.row_iter() {
            let mut v = r.to_vec();
            v.extend(std::iter::repeat(BigInt::zero()).take(other.dim));
            rows.push(v);
        }
        for r in b.row_iter() {
            let mut v = vec![BigInt::zero(); self.dim];
            v.extend(r.iter().cloned());
            rows.push(v);
        }
        let m = IntMatrix::from_bigint_rows(self.dim + other.dim, rows).expect("block widths");
        Lattice::new(&m, d).expect("positive denominator")
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (dim {})", self.dim);
        }
        let rows: Vec<String> = self
            .basis
            .row_iter()
            .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        if self.denom.is_one() {
            write!(f, "ℤ<{}>", rows.join(" "))
        } else {
            write!(f, "1/{}·ℤ<{}>", self.denom, rows.join(" "))
        }
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlattice::matrix::{qvec, qvec_frac};

    fn lat(rows: &[&[i64]]) -> Lattice {
        Lattice::from_int_rows(rows[0].len(), rows).unwrap()
    }

    fn half_diag() -> Lattice {
        Lattice::from_rational_rows(2, &[qvec_frac(&[(1, 2), (1, 2)])]).unwrap()
    }

    #[test]
    fn sum_is_idempotent() {
        let l = lat(&[&[1, 2], &[0, 3]]);
        assert_eq!(l.sum(&l).unwrap(), l);
    }

    #[test]
    fn sum_of_2z_and_3z_is_z() {
        let a = Lattice::standard(2).scaled_int(2);
        let b = Lattice::standard(2).scaled_int(3);
        assert_eq!(a.sum(&b).unwrap(), Lattice::standard(2));
    }

    #[test]
    fn sum_with_half_lattice() {
        let a = lat(&[&[1, 1]]);
        assert_eq!(a.sum(&half_diag()).unwrap(), half_diag());
        assert_eq!(half_diag().denom(), &BigInt::from(2));
    }

    #[test]
    fn intersections() {
        let a = Lattice::standard(2).scaled_int(2);
        let b = Lattice::standard(2).scaled_int(3);
        assert_eq!(a.intersect(&b).unwrap(), Lattice::standard(2).scaled_int(6));
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(Lattice::standard(2).intersect(&half_diag()).unwrap(), lat(&[&[1, 1]]));
    }

    #[test]
    fn kernels() {
        let z2 = Lattice::standard(2);
        let theta_plus_i = IntMatrix::from_rows(2, &[[0, 0], [0, 2]]).unwrap();
        assert_eq!(z2.kernel(&theta_plus_i).unwrap(), lat(&[&[1, 0]]));
        let swap_plus_i = IntMatrix::from_rows(2, &[[1, -1], [-1, 1]]).unwrap();
        assert_eq!(z2.kernel(&swap_plus_i).unwrap(), lat(&[&[1, 1]]));
        assert_eq!(z2.kernel(&IntMatrix::zeros(2, 2)).unwrap(), z2);
    }

    #[test]
    fn images() {
        let z2 = Lattice::standard(2);
        let id = RatMatrix::from_int(&IntMatrix::identity(2));
        assert_eq!(z2.image(&id).unwrap(), z2);
        // ½(I − θ) with θ(x,y) = (−y,−x)
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut p = RatMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                p.set(i, j, half.clone());
            }
        }
        assert_eq!(z2.image(&p).unwrap(), half_diag());
    }

    #[test]
    fn membership() {
        assert!(lat(&[&[3, 5]]).contains(&qvec(&[0, 0])).unwrap());
        assert!(half_diag().contains(&qvec(&[1, 1])).unwrap());
        assert!(!lat(&[&[1, 1]]).contains(&qvec(&[1, 0])).unwrap());
        assert!(matches!(
            lat(&[&[1, 1]]).contains(&qvec(&[1, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn same_point_set_compares_equal() {
        let a = lat(&[&[2, 0], &[0, 2]]);
        let b = Lattice::new(&IntMatrix::from_rows(2, &[[4, 2], [2, 0], [6, 6]]).unwrap(), BigInt::one()).unwrap();
        assert_eq!(a, b);
        let c = Lattice::new(&IntMatrix::from_rows(2, &[[2, 2]]).unwrap(), BigInt::from(4)).unwrap();
        assert_eq!(c, half_diag());
    }

    #[test]
    fn reduce_is_constant_on_cosets() {
        let sub = lat(&[&[2, 0], &[1, 3]]);
        let a = sub.reduce(&qvec(&[5, 7])).unwrap();
        let b = sub.reduce(&qvec(&[5 + 2 + 1, 7 + 3])).unwrap();
        assert_eq!(a, b);
        assert!(sub.contains(&a.iter().zip(qvec(&[5, 7])).map(|(x, y)| y - x).collect::<Vec<_>>()).unwrap());
    }

    #[test]
    fn saturation() {
        let l = lat(&[&[2, 2]]);
        assert_eq!(l.saturate_in(&Lattice::standard(2)).unwrap(), lat(&[&[1, 1]]));
    }

    #[test]
    fn index() {
        let sub = lat(&[&[2, 0], &[1, 3]]);
        assert_eq!(sub.index_in(&Lattice::standard(2)).unwrap(), Some(BigInt::from(6)));
        assert_eq!(lat(&[&[1, 0]]).index_in(&Lattice::standard(2)).unwrap(), None);
    }
}
