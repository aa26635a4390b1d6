//! Hermite and Smith normal forms over ℤ.
//!
//! Both use plain Euclidean row/column elimination on `BigInt` entries. The
//! inputs here are tiny (rank ≤ 8 or so) so coefficient growth is not a concern,
//! but entries can still leave the machine-word range, hence the bignums.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Row-style Hermite form together with the unimodular transform.
#[derive(Clone, Debug)]
pub struct HermiteDecomposition {
    /// Same shape as the input; the first `rank` rows are the HNF, the rest are zero.
    pub h: IntMatrix,
    /// Unimodular with `u * m = h`.
    pub u: IntMatrix,
    pub rank: usize,
    /// Pivot column of each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

/// Canonical row-style Hermite normal form with zero rows removed.
///
/// Pivots are positive and entries above each pivot lie in `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let mut d = hermite_decomposition(m);
    d.h.truncate_rows(d.rank);
    d.h
}

pub fn hermite_decomposition(m: &IntMatrix) -> HermiteDecomposition {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below row r
            let best = (r..h.rows())
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            let mut done = true;
            for i in r + 1..h.rows() {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                let nq = -q;
                h.add_row_multiple(i, r, &nq);
                u.add_row_multiple(i, r, &nq);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                let nq = -q;
                h.add_row_multiple(i, r, &nq);
                u.add_row_multiple(i, r, &nq);
            }
        }
        pivots.push(c);
        r += 1;
    }
    HermiteDecomposition { h, u, rank: r, pivots }
}

/// Basis (as rows) of the integer left kernel `{x ∈ ℤ^rows : x m = 0}`.
///
/// The result is saturated in ℤ^rows.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let d = hermite_decomposition(m);
    let rows: Vec<Vec<BigInt>> = (d.rank..m.rows()).map(|i| d.u.row_vec(i)).collect();
    IntMatrix::from_bigint_rows(m.rows(), rows).expect("kernel rows have the right width")
}

/// Smith decomposition `u * m * v = diag(d)`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    /// `min(rows, cols)` entries forming a divisibility chain; zeros trail.
    pub diag: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: pull any offending row into row t and go again
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    let diag = (0..n).map(|i| a[(i, i)].clone()).collect();
    SmithDecomposition { diag, u, v }
}

/// Invariant factors of the cokernel ℤ^cols / rowspan(m): entries of the
/// Smith diagonal that are not 1, zeros standing for free summands.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    snf(m).diag.into_iter().filter(|d| d != &BigInt::from(1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(cols, rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_identity() {
        assert_eq!(hnf(&IntMatrix::identity(2)), IntMatrix::identity(2));
    }

    #[test]
    fn hnf_reduces_small_example() {
        assert_eq!(hnf(&m(2, &[&[4, 6], &[6, 10]])), m(2, &[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn hnf_single_row_keeps_content() {
        assert_eq!(hnf(&m(2, &[&[4, 6]])), m(2, &[&[4, 6]]));
        assert_eq!(hnf(&m(2, &[&[-4, -6]])), m(2, &[&[4, 6]]));
    }

    #[test]
    fn hnf_drops_zero_rows_and_transform_is_consistent() {
        let a = m(3, &[&[1, 2, 3], &[2, 4, 6], &[0, 0, 5]]);
        let d = hermite_decomposition(&a);
        assert_eq!(d.rank, 2);
        assert_eq!(&d.u * &a, d.h);
        assert!(d.u.is_unimodular());
        assert_eq!(hnf(&a).rows(), 2);
    }

    #[test]
    fn left_kernel_of_swap_plus_identity() {
        // rows of θ+I for θ(x,y) = (-y,-x): both rows (1,-1), (-1,1)
        let k = left_kernel(&m(2, &[&[1, -1], &[-1, 1]]));
        assert_eq!(k.rows(), 1);
        assert_eq!(&k * &m(2, &[&[1, -1], &[-1, 1]]), IntMatrix::zeros(1, 2));
    }

    #[test]
    fn snf_diag_3_5_is_chain_1_15() {
        let d = snf(&m(2, &[&[3, 0], &[0, 5]]));
        assert_eq!(d.diag, ints(&[1, 15]));
    }

    #[test]
    fn snf_2_4_6_8() {
        let a = m(2, &[&[2, 4], &[6, 8]]);
        let d = snf(&a);
        assert_eq!(d.diag, ints(&[2, 4]));
        let prod = &(&d.u * &a) * &d.v;
        assert_eq!(prod, IntMatrix::diagonal(&d.diag));
    }

    #[test]
    fn snf_zero_matrix() {
        let d = snf(&IntMatrix::zeros(2, 2));
        assert_eq!(d.diag, ints(&[0, 0]));
        assert_eq!(d.rank(), 0);
    }

    #[test]
    fn snf_rectangular() {
        let a = m(3, &[&[2, 0, 0], &[0, 3, 0]]);
        let d = snf(&a);
        assert_eq!(d.diag, ints(&[1, 6]));
        let prod = &(&d.u * &a) * &d.v;
        assert_eq!(prod[(1, 1)], BigInt::from(6));
        assert!(prod[(0, 2)].is_zero() && prod[(1, 2)].is_zero());
    }
}
