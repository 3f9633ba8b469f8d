//! Determinant and product formulas.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{binomial, determinant_int, LaurentPolynomial, PolyMatrix, Ring};
use crate::paths::single_path_genfunc_closed;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("parameters out of range: {0}")]
    Parameters(String),
    #[error("value {0} is not an integer")]
    NotIntegral(String),
}

/// `(i, j)` entry of the binomial matrix, Kronecker delta included.
pub fn det_entry(i: usize, j: usize, l: usize) -> LaurentPolynomial {
    let closed = single_path_genfunc_closed(i, j, l);
    if i == j {
        &closed + &LaurentPolynomial::one(closed.ring())
    } else {
        closed
    }
}

pub fn det_matrix(n: usize, l: usize) -> PolyMatrix {
    PolyMatrix::from_fn(&Ring::qrst(), n, |i, j| det_entry(i, j, l)).expect("entries share the QRST ring")
}

pub fn det_formula_genfunc(n: usize, l: usize) -> Result<LaurentPolynomial, FormulaError> {
    if n == 0 || l == 0 {
        return Err(FormulaError::Parameters(format!("n={n}, l={l}; both must be >= 1")));
    }
    Ok(det_matrix(n, l).determinant())
}

/// `det(binom(i+j+l-1, i) + δ_ij)` over `0 <= i, j < n`.
pub fn andrews_count(n: usize, l: usize) -> BigInt {
    let m: Vec<Vec<BigInt>> = (0..n as i64)
        .map(|i| {
            (0..n as i64)
                .map(|j| binomial(i + j + l as i64 - 1, i) + BigInt::from(u8::from(i == j)))
                .collect()
        })
        .collect();
    determinant_int(&m)
}

fn integral(r: BigRational) -> Result<BigInt, FormulaError> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(FormulaError::NotIntegral(r.to_string()))
    }
}

fn pow2(e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(2));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// The binomial entry at `Q = 2, R = S = T = 1` without the delta.
pub fn f_entry(l: usize, i: usize, j: usize) -> Result<BigInt, FormulaError> {
    let (l, i, j) = (l as i64, i as i64, j as i64);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut acc = BigRational::zero();
    for k in 0..=i {
        for m in 0..=j {
            let inner = BigRational::from_integer(binomial(k + l - 3, k - m))
                + &half * BigRational::from_integer(binomial(k + l - 3, k - m - 1));
            acc += pow2(k - m) * BigRational::from_integer(binomial(j, m)) * inner;
        }
    }
    integral(acc)
}

pub fn g_entry(a: usize, i: usize, j: usize) -> BigInt {
    let (a, i, j) = (a as i64, i as i64, j as i64);
    (0..=i).map(|m| binomial(m + j + a, m) * binomial(i + a, m + a)).sum()
}

/// `D_n(a) = det(g(a; i, j) + δ_ij)`.
pub fn andrews_determinant(n: usize, a: usize) -> BigInt {
    let m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| g_entry(a, i, j) + BigInt::from(u8::from(i == j))).collect())
        .collect();
    determinant_int(&m)
}

fn ratio_product(n: usize, a: usize) -> BigRational {
    let (n, a) = (n as i64, a as i64);
    (1..=n)
        .map(|k| BigRational::new(BigInt::from(2 * (n + k) + a - 1), BigInt::from(n + k)))
        .fold(BigRational::one(), |acc, x| acc * x)
}

/// Checks `D_{2n}/D_{2n-1}` and `D_{2n+1}/D_{2n}` against their products.
pub fn andrews_ratio_check(n: usize, a: usize) -> (bool, bool) {
    let d = |m: usize| BigRational::from_integer(andrews_determinant(m, a));
    let prod = ratio_product(n, a);
    let (d_odd, d_even, d_next) = (d(2 * n - 1), d(2 * n), d(2 * n + 1));
    let even_ok = d_even == d_odd * pow2(n as i64) * &prod;
    let odd_ok = d_next == d_even * pow2(n as i64 + 1) * &prod;
    (even_ok, odd_ok)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// `2n + 1` rows
    Odd,
    /// `2n + 2` rows
    Even,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductFormulaResult {
    pub n_rows: usize,
    pub l: usize,
    #[serde(serialize_with = "as_decimal")]
    pub value: BigInt,
    pub parity: Parity,
}

fn as_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `∏_{1 <= i <= j <= n} (2(i+j) + l - 3) / (2i - 1)`
fn triangle_product(n: i64, l: i64) -> (BigInt, BigInt) {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=n {
        for j in i..=n {
            num *= 2 * (i + j) + l - 3;
            den *= 2 * i - 1;
        }
    }
    (num, den)
}

/// Product formula for the 2-enumeration of `(n_rows, l)`-trapezoids.
pub fn two_enum_product(n_rows: usize, l: usize) -> Result<ProductFormulaResult, FormulaError> {
    if n_rows == 0 || l < 2 {
        return Err(FormulaError::Parameters(format!(
            "n_rows={n_rows}, l={l}; need n_rows >= 1 and l >= 2"
        )));
    }
    let (parity, n) = if n_rows % 2 == 1 {
        (Parity::Odd, (n_rows as i64 - 1) / 2)
    } else {
        (Parity::Even, (n_rows as i64 - 2) / 2)
    };
    let l = l as i64;
    let (a_num, a_den) = triangle_product(n, l);
    let (b_num, b_den) = match parity {
        Parity::Odd => (a_num.clone(), a_den.clone()),
        Parity::Even => triangle_product(n + 1, l),
    };
    let two = BigInt::from(2).pow((n + 1) as u32);
    let value = integral(BigRational::new(two * a_num * b_num, a_den * b_den))?;
    Ok(ProductFormulaResult {
        n_rows,
        l: l as usize,
        value,
        parity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse_text(&Ring::qrst(), s).unwrap()
    }

    #[test]
    fn entries() {
        for l in 1..=5 {
            assert_eq!(det_entry(0, 0, l), poly("1 + R"));
            assert_eq!(det_entry(0, 1, l), poly("R"));
            assert_eq!(det_formula_genfunc(1, l).unwrap(), poly("1 + R"));
        }
        assert!(det_formula_genfunc(0, 2).is_err());
    }

    #[test]
    fn known_polynomials() {
        assert_eq!(det_formula_genfunc(2, 4).unwrap(), poly("1 + 2*Q*R + 2*R + R^2 + R*S + R*T"));
        let z31 = poly(
            "1 - Q*R - Q*R^2 - Q*R^2*S - Q*R*T + 3*R + 3*R^2 + R^3 + 3*R*S + R*S*T + 3*R^2*S \
             + R^2*S*T + R^2*S^2 + 3*R*T + R*T^2 + 3*R^2*T",
        );
        assert_eq!(det_formula_genfunc(3, 1).unwrap(), z31);
        let at_ones = det_formula_genfunc(2, 4).unwrap().evaluate_integer(&[1, 1, 1, 1]).unwrap();
        assert_eq!(at_ones, BigInt::from(8));
    }

    #[test]
    fn andrews() {
        assert_eq!(andrews_count(2, 3), BigInt::from(7));
        assert_eq!(andrews_count(2, 4), BigInt::from(8));
        assert_eq!(andrews_count(0, 4), BigInt::from(1));
        for a in 0..=4 {
            assert_eq!(andrews_determinant(1, a), BigInt::from(2));
            assert_eq!(andrews_determinant(2, a), BigInt::from(2 * a + 6));
        }
        assert_eq!(andrews_ratio_check(1, 0), (true, true));
        assert_eq!(andrews_ratio_check(1, 2), (true, true));
        assert_eq!(andrews_ratio_check(2, 1), (true, true));
    }

    #[test]
    fn f_and_g() {
        for l in 2..=5 {
            assert_eq!(f_entry(l, 0, 0).unwrap(), BigInt::one());
        }
        for a in 0..4 {
            assert_eq!(g_entry(a, 0, 0), BigInt::one());
        }
        for l in 2..=6 {
            for i in 0..=5 {
                for j in 0..=5 {
                    assert_eq!(f_entry(l, i, j).unwrap(), g_entry(l - 2, i, j));
                }
            }
        }
    }

    #[test]
    fn products() {
        for l in 2..=6 {
            assert_eq!(two_enum_product(1, l).unwrap().value, BigInt::from(2));
        }
        let r = two_enum_product(2, 4).unwrap();
        assert_eq!((r.value, r.parity), (BigInt::from(10), Parity::Even));
        assert!(two_enum_product(3, 1).is_err());
        for n_rows in 1..=5 {
            for l in 2..=5 {
                let at_two = det_formula_genfunc(n_rows, l).unwrap().evaluate_integer(&[2, 1, 1, 1]).unwrap();
                assert_eq!(two_enum_product(n_rows, l).unwrap().value, at_two, "{n_rows} {l}");
            }
        }
    }
}
