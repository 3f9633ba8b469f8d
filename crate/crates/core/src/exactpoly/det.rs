use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{LaurentPolynomial, PolyError, Ring};

/// Commutative ring operations needed by the division-free determinant.
pub trait DetRing: Clone {
    fn is_zero_elem(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// `self += sign * a * b`
    fn add_signed_product(&mut self, negative: bool, a: &Self, b: &Self);
}

impl DetRing for BigInt {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn add_signed_product(&mut self, negative: bool, a: &Self, b: &Self) {
        let p = a * b;
        if negative {
            *self -= p;
        } else {
            *self += p;
        }
    }
}

impl DetRing for LaurentPolynomial {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        LaurentPolynomial::zero(self.ring())
    }
    fn one_like(&self) -> Self {
        LaurentPolynomial::one(self.ring())
    }
    fn add_signed_product(&mut self, negative: bool, a: &Self, b: &Self) {
        if negative {
            self.add_product(&-a, b).expect("matrix entries share one ring");
        } else {
            self.add_product(a, b).expect("matrix entries share one ring");
        }
    }
}

/// Determinant by dynamic programming over column subsets.
///
/// Row `r` is expanded against every set of `r` columns already used by
/// rows `0..r`; `dp[S]` holds the signed sum of all partial permutation
/// products with image `S`. Division-free, `O(2^n · n)` ring multiplications.
/// Returns `None` for the empty matrix (whose determinant is the ring's one).
pub fn determinant<T: DetRing>(m: &[Vec<T>]) -> Option<T> {
    let n = m.len();
    if n == 0 {
        return None;
    }
    assert!(n < usize::BITS as usize, "matrix too large for subset DP");
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let zero = m[0][0].zero_like();
    let mut dp: Vec<Option<T>> = vec![None; 1 << n];
    dp[0] = Some(m[0][0].one_like());
    for (r, row) in m.iter().enumerate() {
        let mut next: Vec<Option<T>> = vec![None; 1 << n];
        for (set, acc) in dp.iter().enumerate() {
            let Some(acc) = acc else { continue };
            if set.count_ones() as usize != r || acc.is_zero_elem() {
                continue;
            }
            for (c, entry) in row.iter().enumerate() {
                if set & (1 << c) != 0 || entry.is_zero_elem() {
                    continue;
                }
                // inversions gained: earlier rows already sitting in columns right of c
                let negative = (set >> (c + 1)).count_ones() % 2 == 1;
                let target = next[set | (1 << c)].get_or_insert_with(|| zero.clone());
                target.add_signed_product(negative, acc, entry);
            }
        }
        dp = next;
    }
    Some(dp[(1 << n) - 1].take().unwrap_or(zero))
}

pub fn determinant_int(m: &[Vec<BigInt>]) -> BigInt {
    determinant(m).unwrap_or_else(BigInt::one)
}

/// Square matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    entries: Vec<Vec<LaurentPolynomial>>,
}

impl PolyMatrix {
    pub fn new(ring: &Ring, entries: Vec<Vec<LaurentPolynomial>>) -> Result<Self, PolyError> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n || row.iter().any(|e| e.ring() != ring) {
                return Err(PolyError::BadMatrix);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            entries,
        })
    }

    pub fn from_fn(ring: &Ring, n: usize, f: impl Fn(usize, usize) -> LaurentPolynomial) -> Result<Self, PolyError> {
        let entries = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Self::new(ring, entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPolynomial {
        &self.entries[i][j]
    }

    /// Principal submatrix on the given (sorted) index set.
    pub fn principal_minor(&self, idx: &[usize]) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            entries: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }

    pub fn determinant(&self) -> LaurentPolynomial {
        determinant(&self.entries).unwrap_or_else(|| LaurentPolynomial::one(&self.ring))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0;
        for c in 0..n {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            total += sign * m[0][c] * cofactor_det(&minor);
        }
        total
    }

    #[test]
    fn constant_examples() {
        assert_eq!(determinant_int(&int_matrix(&[&[2, 1], &[4, 6]])), BigInt::from(8));
        assert_eq!(
            determinant_int(&int_matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
            BigInt::from(1)
        );
        assert_eq!(determinant_int(&[]), BigInt::from(1));
        assert_eq!(determinant_int(&int_matrix(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
    }

    #[test]
    fn empty_poly_matrix_is_one() {
        let ring = Ring::qrst();
        let m = PolyMatrix::new(&ring, vec![]).unwrap();
        assert_eq!(m.determinant(), LaurentPolynomial::one(&ring));
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = LaurentPolynomial::one(&Ring::qrst());
        let b = LaurentPolynomial::one(&Ring::new(["Q"]));
        assert_eq!(
            PolyMatrix::new(&Ring::qrst(), vec![vec![a.clone(), b], vec![a.clone(), a]]),
            Err(PolyError::BadMatrix)
        );
    }

    #[test]
    fn polynomial_two_by_two() {
        let ring = Ring::qrst();
        let q = LaurentPolynomial::var(&ring, 0);
        let r = LaurentPolynomial::var(&ring, 1);
        let one = LaurentPolynomial::one(&ring);
        let m = PolyMatrix::new(&ring, vec![vec![q.clone(), r.clone()], vec![one, q.clone()]]).unwrap();
        assert_eq!(m.determinant(), &q.pow(2) - &r);
    }

    proptest! {
        #[test]
        fn agrees_with_cofactor_expansion(n in 1usize..=4, seed in proptest::collection::vec(-5i64..=5, 16)) {
            let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[i * 4 + j]).collect()).collect();
            let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            prop_assert_eq!(determinant_int(&big), BigInt::from(cofactor_det(&m)));
        }
    }
}
