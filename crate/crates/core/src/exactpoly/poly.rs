use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::PolyError;

/// Ordered list of variable names. Two rings are equal iff their names are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Arc<[String]>,
}

impl Ring {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ring {
            vars: names.into_iter().map(Into::into).collect(),
        }
    }

    /// The ring of every generating function in this crate: Q, R, S, T.
    pub fn qrst() -> Self {
        Ring::new(["Q", "R", "S", "T"])
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn names(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn describe(&self) -> String {
        self.vars.join(",")
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring[{}]", self.describe())
    }
}

/// Signed exponent vector; ordering is lexicographic in ring variable order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[i32; 6]>);

impl Monomial {
    pub fn new(exps: &[i32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn unit(arity: usize) -> Self {
        Monomial(SmallVec::from_elem(0, arity))
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Sparse Laurent polynomial in the variables of a [`Ring`], with
/// arbitrary-precision integer coefficients. No zero coefficient is ever
/// stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(ring: &Ring) -> Self {
        LaurentPolynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, BigInt::one())
    }

    pub fn constant(ring: &Ring, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(Monomial::unit(ring.arity()), c.into());
        p
    }

    /// The single variable at position `idx` of the ring.
    pub fn var(ring: &Ring, idx: usize) -> Self {
        let mut exps = vec![0; ring.arity()];
        exps[idx] = 1;
        Self::monomial(ring, &exps, 1).expect("index within arity")
    }

    pub fn monomial(ring: &Ring, exps: &[i32], coef: impl Into<BigInt>) -> Result<Self, PolyError> {
        if exps.len() != ring.arity() {
            return Err(PolyError::Arity {
                expected: ring.arity(),
                got: exps.len(),
            });
        }
        let mut p = Self::zero(ring);
        p.add_term(Monomial::new(exps), coef.into());
        Ok(p)
    }

    pub fn from_terms<I>(ring: &Ring, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<i32>, BigInt)>,
    {
        let mut p = Self::zero(ring);
        for (exps, c) in terms {
            if exps.len() != ring.arity() {
                return Err(PolyError::Arity {
                    expected: ring.arity(),
                    got: exps.len(),
                });
            }
            p.add_term(Monomial::new(&exps), c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (lexicographic ascending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i32]) -> BigInt {
        self.terms
            .get(&Monomial::new(exps))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch {
                left: self.ring.describe(),
                right: other.ring.describe(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// In-place `self += a * b`, avoiding an intermediate polynomial.
    pub fn add_product(&mut self, a: &Self, b: &Self) -> Result<(), PolyError> {
        self.check_ring(a)?;
        self.check_ring(b)?;
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(&self.ring);
        }
        LaurentPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by a single monomial (exponent shift).
    pub fn shift(&self, exps: &[i32]) -> Result<Self, PolyError> {
        if exps.len() != self.ring.arity() {
            return Err(PolyError::Arity {
                expected: self.ring.arity(),
                got: exps.len(),
            });
        }
        let s = Monomial::new(exps);
        Ok(LaurentPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.mul(&s), c.clone())).collect(),
        })
    }

    /// Smallest exponent of variable `idx` over all terms (0 for the zero polynomial).
    pub fn min_exponent(&self, idx: usize) -> i32 {
        self.terms.keys().map(|m| m.0[idx]).min().unwrap_or(0)
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|m| m.0.iter().any(|&e| e < 0))
    }

    pub fn coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| c.sign() != num_bigint::Sign::Minus)
    }

    /// Rewrites every monomial with `map`; coefficients are carried over.
    pub fn map_monomials(&self, map: &MonomialMap) -> Result<Self, PolyError> {
        if map.arity() != self.ring.arity() {
            return Err(PolyError::InvalidMap(format!(
                "map arity {} for ring of arity {}",
                map.arity(),
                self.ring.arity()
            )));
        }
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(map.apply(m), c.clone());
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in another ring, moving variable `i` of
    /// `self` to position `placement[i]` of `target`, or dropping it if
    /// `None` (only allowed when its exponent is zero everywhere).
    pub fn embed(&self, target: &Ring, placement: &[Option<usize>]) -> Result<Self, PolyError> {
        if placement.len() != self.ring.arity() {
            return Err(PolyError::InvalidMap("placement length".into()));
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.arity()];
            for (i, p) in placement.iter().enumerate() {
                match p {
                    Some(j) => e[*j] += m.0[i],
                    None if m.0[i] != 0 => {
                        return Err(PolyError::InvalidMap(format!(
                            "variable {} has nonzero exponent",
                            self.ring.vars[i]
                        )))
                    }
                    None => {}
                }
            }
            out.add_term(Monomial::new(&e), c.clone());
        }
        Ok(out)
    }

    /// Exact value at a rational point (one value per ring variable).
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, PolyError> {
        if point.len() != self.ring.arity() {
            return Err(PolyError::Arity {
                expected: self.ring.arity(),
                got: point.len(),
            });
        }
        for (i, v) in point.iter().enumerate() {
            if v.is_zero() && self.min_exponent(i) < 0 {
                return Err(PolyError::Domain {
                    var: self.ring.vars[i].clone(),
                });
            }
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (v, &e) in point.iter().zip(m.0.iter()) {
                if e != 0 {
                    term *= v.pow(e);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Evaluation at integer values, asserting the result is an integer.
    pub fn evaluate_integer(&self, point: &[i64]) -> Result<BigInt, PolyError> {
        let pt: Vec<BigRational> = point
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        let v = self.evaluate(&pt)?;
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(PolyError::Domain {
                var: format!("non-integral value {v}"),
            })
        }
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $f(self, rhs: Self) -> LaurentPolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

/// Monomial substitution: target exponent `v` becomes
/// `shift[v] + scale[v] * source[perm[v]]`, with `scale[v] = ±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    perm: Vec<usize>,
    scale: Vec<i32>,
    shift: Vec<i32>,
}

impl MonomialMap {
    pub fn identity(arity: usize) -> Self {
        MonomialMap {
            perm: (0..arity).collect(),
            scale: vec![1; arity],
            shift: vec![0; arity],
        }
    }

    pub fn new(perm: Vec<usize>, scale: Vec<i32>, shift: Vec<i32>) -> Result<Self, PolyError> {
        let n = perm.len();
        if scale.len() != n || shift.len() != n {
            return Err(PolyError::InvalidMap("length mismatch".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(PolyError::InvalidMap("not a permutation".into()));
            }
            seen[p] = true;
        }
        if scale.iter().any(|&s| s != 1 && s != -1) {
            return Err(PolyError::InvalidMap("scale must be 1 or -1".into()));
        }
        Ok(MonomialMap { perm, scale, shift })
    }

    /// Permutation-only map: target variable `v` takes the exponent of source `perm[v]`.
    pub fn permutation(perm: Vec<usize>) -> Result<Self, PolyError> {
        let n = perm.len();
        Self::new(perm, vec![1; n], vec![0; n])
    }

    /// Exchange the exponents of two variables.
    pub fn swap(mut self, a: usize, b: usize) -> Self {
        self.perm.swap(a, b);
        self.scale.swap(a, b);
        self.shift.swap(a, b);
        self
    }

    /// Replace exponent `e` of variable `v` (as produced so far) by `shift - e`.
    pub fn reflect(mut self, v: usize, shift: i32) -> Self {
        self.scale[v] = -self.scale[v];
        self.shift[v] = shift - self.shift[v];
        self
    }

    pub fn arity(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, m: &Monomial) -> Monomial {
        Monomial(
            (0..self.arity())
                .map(|v| self.shift[v] + self.scale[v] * m.0[self.perm[v]])
                .collect(),
        )
    }

    pub fn inverse(&self) -> Self {
        let n = self.arity();
        let mut perm = vec![0; n];
        let mut scale = vec![1; n];
        let mut shift = vec![0; n];
        // new[v] = sh[v] + sc[v]*old[p[v]]  =>  old[p[v]] = sc[v]*new[v] - sc[v]*sh[v]
        for v in 0..n {
            let src = self.perm[v];
            perm[src] = v;
            scale[src] = self.scale[v];
            shift[src] = -self.scale[v] * self.shift[v];
        }
        MonomialMap { perm, scale, shift }
    }

    /// The reflection symmetry of trapezoid generating functions:
    /// `R^n · p(Q, R^{-1}, T, S)` on the Q,R,S,T ring.
    pub fn qrst_mirror(n: i32) -> Self {
        MonomialMap::identity(4).swap(2, 3).reflect(1, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Ring {
        Ring::qrst()
    }
    fn v(i: usize) -> LaurentPolynomial {
        LaurentPolynomial::var(&q(), i)
    }
    fn c(k: i64) -> LaurentPolynomial {
        LaurentPolynomial::constant(&q(), k)
    }

    #[test]
    fn ring_arithmetic_examples() {
        let (qq, r) = (v(0), v(1));
        assert_eq!(&(&qq + &r) + &(-&qq), r);
        assert_eq!(&(&c(1) + &qq) * &(&c(1) - &qq), &c(1) - &qq.pow(2));
        let qinv = LaurentPolynomial::monomial(&q(), &[-1, 0, 0, 0], 1).unwrap();
        assert_eq!(&qinv * &qq, c(1));
        assert!((&qq - &qq).is_zero());
        assert_eq!(qq.scale(&BigInt::from(0)).num_terms(), 0);
    }

    #[test]
    fn ring_mismatch_rejected() {
        let other = LaurentPolynomial::var(&Ring::new(["Q"]), 0);
        let err = v(0).checked_add(&other).unwrap_err();
        assert!(matches!(err, PolyError::RingMismatch { .. }));
        assert!(v(0).checked_mul(&other).is_err());
    }

    #[test]
    fn monomial_map_examples() {
        let rs = &v(1) * &v(2);
        assert_eq!(rs.map_monomials(&MonomialMap::qrst_mirror(1)).unwrap(), v(3));
        assert_eq!(c(1).map_monomials(&MonomialMap::identity(4)).unwrap(), c(1));
        let m = MonomialMap::qrst_mirror(3);
        let p = &(&v(1).pow(2) * &v(2)) + &c(5);
        assert_eq!(p.map_monomials(&m).unwrap().map_monomials(&m.inverse()).unwrap(), p);
    }

    #[test]
    fn invalid_maps() {
        assert!(MonomialMap::new(vec![0, 0], vec![1, 1], vec![0, 0]).is_err());
        assert!(MonomialMap::new(vec![0, 1], vec![2, 1], vec![0, 0]).is_err());
    }

    #[test]
    fn evaluation() {
        let one = BigRational::one();
        let p = &c(7) + &LaurentPolynomial::zero(&q());
        assert_eq!(p.evaluate(&vec![one.clone(); 4]).unwrap(), BigRational::from_integer(7.into()));
        let qinv = LaurentPolynomial::monomial(&q(), &[-1, 0, 0, 0], 3).unwrap();
        let zero_q = [BigRational::zero(), one.clone(), one.clone(), one.clone()];
        assert!(matches!(qinv.evaluate(&zero_q), Err(PolyError::Domain { .. })));
        let half = [BigRational::from_integer(2.into()), one.clone(), one.clone(), one];
        assert_eq!(
            qinv.evaluate(&half).unwrap(),
            BigRational::new(3.into(), 2.into())
        );
    }

    #[test]
    fn embed_moves_variables() {
        let ring_y = Ring::new(["Y1", "Q"]);
        let p = LaurentPolynomial::from_terms(&ring_y, vec![(vec![0, 2], BigInt::from(3))]).unwrap();
        let target = Ring::new(["Q"]);
        let e = p.embed(&target, &[None, Some(0)]).unwrap();
        assert_eq!(e.coefficient(&[2]), BigInt::from(3));
        let bad = LaurentPolynomial::var(&ring_y, 0);
        assert!(bad.embed(&target, &[None, Some(0)]).is_err());
    }
}
