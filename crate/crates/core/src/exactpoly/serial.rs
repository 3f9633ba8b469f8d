//! Canonical text and JSON forms of [`LaurentPolynomial`].
//!
//! Text: `1 + 2*Q^1*R^1 - 1*Q^-1*S^2`, terms in canonical order, every
//! factor written as `Name^exp`. JSON:
//! `{"vars":[..],"terms":[{"exp":[..],"coef":"<decimal>"},..]}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{LaurentPolynomial, PolyError, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i32>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl From<&LaurentPolynomial> for PolyJson {
    fn from(p: &LaurentPolynomial) -> Self {
        PolyJson {
            vars: p.ring().names().to_vec(),
            terms: p
                .terms()
                .map(|(m, c)| TermJson {
                    exp: m.exponents().to_vec(),
                    coef: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for LaurentPolynomial {
    type Error = PolyError;

    fn try_from(j: PolyJson) -> Result<Self, PolyError> {
        let ring = Ring::new(j.vars);
        let terms = j
            .terms
            .into_iter()
            .map(|t| {
                BigInt::from_str(&t.coef)
                    .map(|c| (t.exp, c))
                    .map_err(|e| PolyError::Parse(format!("coefficient {:?}: {e}", t.coef)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        LaurentPolynomial::from_terms(&ring, terms)
    }
}

impl LaurentPolynomial {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, PolyError> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| PolyError::Parse(e.to_string()))?;
        j.try_into()
    }

    /// Parses the text form produced by `Display`.
    pub fn parse_text(ring: &Ring, s: &str) -> Result<Self, PolyError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        let mut out = LaurentPolynomial::zero(ring);
        for (negative, body) in split_terms(&compact)? {
            let (exps, mut coef) = parse_term(ring, body)?;
            if negative {
                coef = -coef;
            }
            out.add_term(super::Monomial::new(&exps), coef);
        }
        Ok(out)
    }
}

/// Split at top-level `+`/`-` signs; a sign right after `^` belongs to the exponent.
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>, PolyError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    let mut negative = false;
    let mut i = 0;
    if matches!(bytes.first(), Some(b'+') | Some(b'-')) {
        negative = bytes[0] == b'-';
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        let b = bytes[i];
        if (b == b'+' || b == b'-') && i > start && bytes[i - 1] != b'^' {
            out.push((negative, &s[start..i]));
            negative = b == b'-';
            start = i + 1;
        }
        i += 1;
    }
    if start >= s.len() {
        return Err(PolyError::Parse("dangling sign".into()));
    }
    out.push((negative, &s[start..]));
    Ok(out)
}

fn parse_term(ring: &Ring, body: &str) -> Result<(Vec<i32>, BigInt), PolyError> {
    let mut exps = vec![0; ring.arity()];
    let mut coef = BigInt::one();
    for (idx, factor) in body.split('*').enumerate() {
        if factor.is_empty() {
            return Err(PolyError::Parse(format!("empty factor in {body:?}")));
        }
        if idx == 0 && factor.chars().all(|c| c.is_ascii_digit()) {
            coef = BigInt::from_str(factor).map_err(|e| PolyError::Parse(e.to_string()))?;
            continue;
        }
        let (name, e) = match factor.split_once('^') {
            Some((n, e)) => (
                n,
                e.parse::<i32>()
                    .map_err(|_| PolyError::Parse(format!("bad exponent in {factor:?}")))?,
            ),
            None => (factor, 1),
        };
        let v = ring
            .index_of(name)
            .ok_or_else(|| PolyError::Parse(format!("unknown variable {name:?}")))?;
        exps[v] += e;
    }
    Ok((exps, coef))
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let abs = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-{abs}")?,
                (0, false) => write!(f, "{abs}")?,
                (_, true) => write!(f, " - {abs}")?,
                (_, false) => write!(f, " + {abs}")?,
            }
            for (name, &e) in self.ring().names().iter().zip(m.exponents()) {
                if !e.is_zero() {
                    write!(f, "*{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
