//! Monotone triangles, truncated trees and their correspondence with
//! alternating sign trapezoids.
//!
//! Rows are 1-based from the top: row `r` has `r` entries `a_{r,1..r}` and
//! row `n` is the bottom row. The `i`-th ↗-diagonal is `a_{i..n, i}` (bottom
//! `a_{n,i}`); the `i`-th ↘-diagonal is `a_{n-k, i-k}` for `k = 0..i`.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ast::{AlternatingSignTrapezoid, AstError};
use crate::exactpoly::{LaurentPolynomial, MonomialMap, PolyError, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("row {row} must have {expected} entries, got {got}")]
    Shape { row: usize, expected: usize, got: usize },
    #[error("row {row} is not strictly increasing")]
    RowOrder { row: usize },
    #[error("entry ({row},{col}) breaks the interlacing with the row below")]
    Interlacing { row: usize, col: usize },
    #[error("invalid truncation vectors: {0}")]
    Truncation(String),
    #[error("bottom row {got:?} does not match the diagonals, expected {expected:?}")]
    Bottom { expected: Vec<i64>, got: Vec<i64> },
    #[error("bottom row must be strictly increasing")]
    NotIncreasing,
    #[error("the operator formula is limited to n <= 3 with nonnegative bottom entries")]
    OperatorDomain,
    #[error("tree does not come from an (n,{l})-trapezoid: {reason}")]
    Inconsistent { l: usize, reason: String },
    #[error(transparent)]
    Ast(#[from] AstError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A monotone triangle, rows listed top (length 1) to bottom (length `n`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct MonotoneTriangle(Vec<Vec<i64>>);

impl TryFrom<Vec<Vec<i64>>> for MonotoneTriangle {
    type Error = TreeError;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, TreeError> {
        MonotoneTriangle::new(rows)
    }
}

impl From<MonotoneTriangle> for Vec<Vec<i64>> {
    fn from(m: MonotoneTriangle) -> Self {
        m.0
    }
}

impl MonotoneTriangle {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, TreeError> {
        for (r, row) in rows.iter().enumerate() {
            if row.len() != r + 1 {
                return Err(TreeError::Shape {
                    row: r + 1,
                    expected: r + 1,
                    got: row.len(),
                });
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(TreeError::RowOrder { row: r + 1 });
            }
            if r > 0 {
                let below = row;
                for (j, &v) in rows[r - 1].iter().enumerate() {
                    if !(below[j] <= v && v <= below[j + 1]) {
                        return Err(TreeError::Interlacing { row: r, col: j + 1 });
                    }
                }
            }
        }
        Ok(MonotoneTriangle(rows))
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    /// Entries strictly between their two lower neighbours.
    pub fn special_count(&self) -> usize {
        (1..self.0.len())
            .map(|r| {
                self.0[r - 1]
                    .iter()
                    .enumerate()
                    .filter(|&(j, &v)| self.0[r][j] < v && v < self.0[r][j + 1])
                    .count()
            })
            .sum()
    }
}

fn q_ring() -> Ring {
    Ring::new(["Q"])
}

/// All strictly increasing rows `u` with `row[j] <= u[j] <= row[j+1]`,
/// paired with the number of strict interior choices.
fn upper_rows(row: &[i64]) -> Vec<(Vec<i64>, u32)> {
    fn rec(row: &[i64], j: usize, cur: &mut Vec<i64>, special: u32, out: &mut Vec<(Vec<i64>, u32)>) {
        if j + 1 == row.len() {
            out.push((cur.clone(), special));
            return;
        }
        let lo = cur.last().map_or(row[j], |&p| row[j].max(p + 1));
        for v in lo..=row[j + 1] {
            cur.push(v);
            let sp = special + u32::from(row[j] < v && v < row[j + 1]);
            rec(row, j + 1, cur, sp, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(row, 0, &mut Vec::new(), 0, &mut out);
    out
}

/// `Σ Q^{special entries}` over monotone triangles with the given bottom row.
pub fn mt_genfunc_enum(bottom: &[i64]) -> Result<LaurentPolynomial, TreeError> {
    if bottom.windows(2).any(|w| w[0] >= w[1]) {
        return Err(TreeError::NotIncreasing);
    }
    let ring = q_ring();
    let mut memo = HashMap::new();
    fn go(row: &[i64], ring: &Ring, memo: &mut HashMap<Vec<i64>, LaurentPolynomial>) -> LaurentPolynomial {
        if row.len() <= 1 {
            return LaurentPolynomial::one(ring);
        }
        if let Some(p) = memo.get(row) {
            return p.clone();
        }
        let mut acc = LaurentPolynomial::zero(ring);
        for (up, special) in upper_rows(row) {
            let below = go(&up, ring, memo);
            acc = &acc + &below.shift(&[special as i32]).expect("arity 1");
        }
        memo.insert(row.to_vec(), acc.clone());
        acc
    }
    Ok(go(bottom, &ring, &mut memo))
}

fn divide_by_difference(p: &LaurentPolynomial, hi: usize, lo: usize) -> Result<LaurentPolynomial, TreeError> {
    let ring = p.ring().clone();
    let mut rest = p.clone();
    let mut quotient = LaurentPolynomial::zero(&ring);
    loop {
        let lead = rest
            .terms()
            .filter(|(m, _)| m.exponents()[hi] > 0)
            .max_by_key(|(m, _)| m.exponents()[hi])
            .map(|(m, c)| (m.clone(), c.clone()));
        let Some((m, c)) = lead else { break };
        let mut e = m.exponents().to_vec();
        e[hi] -= 1;
        let qt = LaurentPolynomial::monomial(&ring, &e, c)?;
        quotient = &quotient + &qt;
        let divisor = &LaurentPolynomial::var(&ring, hi) - &LaurentPolynomial::var(&ring, lo);
        rest = &rest - &(&qt * &divisor);
    }
    if !rest.is_zero() {
        return Err(TreeError::Poly(PolyError::InvalidMap(
            "antisymmetrised numerator is not divisible by the Vandermonde product".into(),
        )));
    }
    Ok(quotient)
}

/// Constant-term formula for the same generating function (`n <= 3`).
pub fn mt_genfunc_operator(bottom: &[i64]) -> Result<LaurentPolynomial, TreeError> {
    let n = bottom.len();
    if n == 0 || n > 3 || bottom.iter().any(|&x| x < 0) {
        return Err(TreeError::OperatorDomain);
    }
    if bottom.windows(2).any(|w| w[0] >= w[1]) {
        return Err(TreeError::NotIncreasing);
    }
    let names: Vec<String> = (1..=n).map(|i| format!("Y{i}")).chain(["Q".to_string()]).collect();
    let ring = Ring::new(names);
    let y = |i: usize| LaurentPolynomial::var(&ring, i);
    let q = LaurentPolynomial::var(&ring, n);
    let one = LaurentPolynomial::one(&ring);
    let mut f = one.clone();
    for (i, &x) in bottom.iter().enumerate() {
        f = &f * &(&one + &y(i)).pow(x as u32);
    }
    for i in 0..n {
        for j in i + 1..n {
            // Q - (1 - Q) Y_i + Y_j + Y_i Y_j
            let factor = &(&(&q - &(&(&one - &q) * &y(i))) + &y(j)) + &(&y(i) * &y(j));
            f = &f * &factor;
        }
    }
    let mut asym = LaurentPolynomial::zero(&ring);
    for perm in permutations(n) {
        let mut full = perm.clone();
        full.push(n);
        let map = MonomialMap::permutation(full)?;
        let term = f.map_monomials(&map)?;
        asym = if inversions(&perm) % 2 == 0 { &asym + &term } else { &asym - &term };
    }
    for i in 0..n {
        for j in i + 1..n {
            asym = divide_by_difference(&asym, j, i)?;
        }
    }
    let target = q_ring();
    let mut out = LaurentPolynomial::zero(&target);
    for (m, c) in asym.terms() {
        let e = m.exponents();
        if e[..n].iter().all(|&v| v == 0) {
            out = &out + &LaurentPolynomial::monomial(&target, &[e[n]], c.clone())?;
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
        .sum()
}

/// A monotone triangle with truncated diagonals.
///
/// `s` holds one entry per ↗-diagonal `1..=p` and `t` one per ↘-diagonal
/// `p+1..=n`, so `s.len() + t.len() == n` and zero truncations are kept.
/// `rows` lists the surviving entries of every row, top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TruncatedTree {
    n: usize,
    s: Vec<u32>,
    t: Vec<u32>,
    rows: Vec<Vec<i64>>,
    bottom: Vec<i64>,
}

#[derive(Deserialize)]
struct TreeJson {
    n: usize,
    s: Vec<u32>,
    t: Vec<u32>,
    rows: Vec<Vec<i64>>,
    bottom: Vec<i64>,
}

impl<'de> Deserialize<'de> for TruncatedTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = TreeJson::deserialize(d)?;
        TruncatedTree::new(j.n, j.s, j.t, j.rows, j.bottom).map_err(serde::de::Error::custom)
    }
}

/// Deletion mask for `(s, t)`; `mask[r-1][j-1]` is true for deleted `a_{r,j}`.
fn deletion_mask(n: usize, s: &[u32], t: &[u32]) -> Vec<Vec<bool>> {
    let p = s.len();
    (1..=n)
        .map(|r| {
            (1..=r)
                .map(|j| {
                    let left = j <= p && r + s[j - 1] as usize > n;
                    let i = j + n - r;
                    let right = i > p && i <= n && n - r < t[i - p - 1] as usize;
                    left || right
                })
                .collect()
        })
        .collect()
}

impl TruncatedTree {
    pub fn new(n: usize, s: Vec<u32>, t: Vec<u32>, rows: Vec<Vec<i64>>, bottom: Vec<i64>) -> Result<Self, TreeError> {
        let tree = Self::build(n, s, t, rows)?;
        if tree.bottom != bottom {
            return Err(TreeError::Bottom {
                expected: tree.bottom,
                got: bottom,
            });
        }
        Ok(tree)
    }

    /// Checks the truncation data and order constraints, computing the bottom row.
    fn build(n: usize, s: Vec<u32>, t: Vec<u32>, rows: Vec<Vec<i64>>) -> Result<Self, TreeError> {
        let p = s.len();
        if p + t.len() != n {
            return Err(TreeError::Truncation(format!(
                "{} + {} entries for n = {n}",
                s.len(),
                t.len()
            )));
        }
        if s.windows(2).any(|w| w[0] < w[1]) || t.windows(2).any(|w| w[0] > w[1]) {
            return Err(TreeError::Truncation("s must weakly decrease and t weakly increase".into()));
        }
        for (j, &sj) in s.iter().enumerate() {
            if sj as usize > n - j - 1 {
                return Err(TreeError::Truncation(format!("s_{} = {sj} empties its diagonal", j + 1)));
            }
        }
        for (k, &ti) in t.iter().enumerate() {
            if ti as usize > p + k {
                return Err(TreeError::Truncation(format!("t_{} = {ti} empties its diagonal", p + k + 1)));
            }
        }
        if rows.len() != n {
            return Err(TreeError::Shape {
                row: rows.len().min(n) + 1,
                expected: n,
                got: rows.len(),
            });
        }
        let mask = deletion_mask(n, &s, &t);
        let mut grid: Vec<Vec<Option<i64>>> = Vec::with_capacity(n);
        for (r, row) in rows.iter().enumerate() {
            let alive = mask[r].iter().filter(|d| !**d).count();
            if row.len() != alive {
                return Err(TreeError::Shape {
                    row: r + 1,
                    expected: alive,
                    got: row.len(),
                });
            }
            let mut it = row.iter();
            grid.push(mask[r].iter().map(|&dead| if dead { None } else { it.next().copied() }).collect());
        }
        for r in 0..n {
            for j in 0..r {
                if let (Some(a), Some(b)) = (grid[r][j], grid[r][j + 1]) {
                    // the ↗/↘ boundary of the bottom row may tie (central 10-column for l = 1)
                    let tie_ok = r + 1 == n && j + 1 == p && a == b;
                    if a >= b && !tie_ok {
                        return Err(TreeError::RowOrder { row: r + 1 });
                    }
                }
            }
            if r + 1 < n {
                for j in 0..=r {
                    let Some(v) = grid[r][j] else { continue };
                    let lo_ok = grid[r + 1][j].map_or(true, |u| u <= v);
                    let hi_ok = grid[r + 1][j + 1].map_or(true, |u| v <= u);
                    if !lo_ok || !hi_ok {
                        return Err(TreeError::Interlacing { row: r + 1, col: j + 1 });
                    }
                }
            }
        }
        let bottom = (1..=n)
            .map(|i| {
                if i <= p {
                    grid[n - 1 - s[i - 1] as usize][i - 1]
                } else {
                    let k = t[i - p - 1] as usize;
                    grid[n - 1 - k][i - 1 - k]
                }
                .expect("bottom of a nonempty diagonal survives")
            })
            .collect();
        Ok(TruncatedTree { n, s, t, rows, bottom })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    pub fn t(&self) -> &[u32] {
        &self.t
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn bottom(&self) -> &[i64] {
        &self.bottom
    }

    /// `(s, t)` with zero truncations dropped, as trees are usually named.
    pub fn label(&self) -> (Vec<u32>, Vec<u32>) {
        (
            self.s.iter().copied().filter(|&v| v > 0).collect(),
            self.t.iter().copied().filter(|&v| v > 0).collect(),
        )
    }

    /// Rows with `None` at deleted slots.
    pub fn grid(&self) -> Vec<Vec<Option<i64>>> {
        let mask = deletion_mask(self.n, &self.s, &self.t);
        mask.iter()
            .zip(&self.rows)
            .map(|(m, row)| {
                let mut it = row.iter();
                m.iter().map(|&dead| if dead { None } else { it.next().copied() }).collect()
            })
            .collect()
    }

    /// Surviving entries strictly between their two surviving lower neighbours.
    pub fn special_count(&self) -> usize {
        let g = self.grid();
        (0..self.n.saturating_sub(1))
            .map(|r| {
                (0..=r)
                    .filter(|&j| match (g[r][j], g[r + 1][j], g[r + 1][j + 1]) {
                        (Some(v), Some(a), Some(b)) => a < v && v < b,
                        _ => false,
                    })
                    .count()
            })
            .sum()
    }

    /// Per diagonal (↗ for `i <= p`, ↘ otherwise): do its two lowest
    /// surviving entries coincide?
    pub fn repeated_bottoms(&self) -> Vec<bool> {
        let g = self.grid();
        let n = self.n;
        let p = self.s.len();
        (1..=n)
            .map(|i| {
                let (r, j, up) = if i <= p {
                    let r = n - self.s[i - 1] as usize;
                    (r, i, (r.checked_sub(1), Some(i)))
                } else {
                    let k = self.t[i - p - 1] as usize;
                    let r = n - k;
                    (r, i - k, (r.checked_sub(1), (i - k).checked_sub(1)))
                };
                let (Some(ur), Some(uj)) = up else { return false };
                if ur == 0 || uj == 0 || uj > ur {
                    return false;
                }
                g[r - 1][j - 1].is_some() && g[r - 1][j - 1] == g[ur - 1][uj - 1]
            })
            .collect()
    }
}

/// Signed 1-column positions, split into the left and right part. For
/// `l = 1` the centre column is listed on the left when it sums to 1 and on
/// the right when its bottom entry is 0 (so a central 10-column appears on
/// both sides).
fn split_one_columns(a: &AlternatingSignTrapezoid) -> (Vec<i32>, Vec<i32>) {
    let (n, l) = (a.n(), a.l());
    let profile = a.column_profile();
    if l >= 2 {
        let c = a.one_column_vector().expect("l >= 2");
        let (left, right): (Vec<i32>, Vec<i32>) = c.into_iter().partition(|&v| v < 0);
        return (left, right);
    }
    let mut left: Vec<i32> = (0..n - 1)
        .filter(|&g| profile[g].is_one_column)
        .map(|g| g as i32 - n as i32)
        .collect();
    let centre = &profile[n - 1];
    if centre.is_one_column {
        left.push(-1);
    }
    let mut right = Vec::new();
    if centre.bottom == 0 {
        right.push(1);
    }
    right.extend((n..2 * n - 1).filter(|&g| profile[g].is_one_column).map(|g| g as i32 - n as i32 + 2));
    (left, right)
}

pub fn ast_to_tree(a: &AlternatingSignTrapezoid) -> Result<TruncatedTree, TreeError> {
    let (n, l) = (a.n(), a.l());
    let width = a.num_columns();
    let mut cum = vec![0i8; width];
    let mut full: Vec<Vec<i64>> = Vec::with_capacity(n);
    for (r, row) in a.rows().iter().enumerate() {
        for (o, &v) in row.iter().enumerate() {
            cum[r + o] += v;
        }
        let mut vals: Vec<i64> = (0..width).filter(|&g| cum[g] == 1).map(|g| g as i64 - n as i64).collect();
        if l == 1 && r + 1 == n && row[0] == 0 {
            vals.push(-1);
            vals.sort();
        }
        full.push(vals);
    }
    let (left, right) = split_one_columns(a);
    let s: Vec<u32> = left.iter().map(|&c| (-c - 1) as u32).collect();
    let t: Vec<u32> = right.iter().map(|&c| (c - 1) as u32).collect();
    let mask = deletion_mask(n, &s, &t);
    let mut rows = Vec::with_capacity(n);
    for (r, vals) in full.iter().enumerate() {
        if vals.len() != r + 1 {
            return Err(TreeError::Inconsistent {
                l,
                reason: format!("row {} has {} ones", r + 1, vals.len()),
            });
        }
        rows.push(vals.iter().zip(&mask[r]).filter(|(_, &dead)| !dead).map(|(&v, _)| v).collect());
    }
    TruncatedTree::build(n, s, t, rows)
}

pub fn tree_to_ast(tree: &TruncatedTree, l: usize) -> Result<AlternatingSignTrapezoid, TreeError> {
    let n = tree.n;
    if l == 0 {
        return Err(AstError::Parameters { n, l }.into());
    }
    let bad = |reason: String| TreeError::Inconsistent { l, reason };
    let p = tree.s.len();
    let width = 2 * n + l - 2;
    let grid = tree.grid();
    let mut cum_prev = vec![0i8; width];
    let mut rows = Vec::with_capacity(n);
    for r in 1..=n {
        let mut vals: Vec<i64> = (1..=r)
            .map(|j| {
                grid[r - 1][j - 1].unwrap_or_else(|| {
                    // deleted entries repeat the bottom entry of their diagonal
                    if j <= p && r + tree.s[j - 1] as usize > n {
                        tree.bottom[j - 1]
                    } else {
                        tree.bottom[j + n - r - 1]
                    }
                })
            })
            .collect();
        if l == 1 && r == n && tree.t.first() == Some(&0) {
            let centre = vals.iter().position(|&v| v == -1).ok_or_else(|| bad("missing central entry".into()))?;
            vals.remove(centre);
        }
        let mut cum = vec![0i8; width];
        for v in vals {
            let g = v + n as i64;
            if g < 0 || g >= width as i64 {
                return Err(bad(format!("entry {v} outside -{n}..={}", width as i64 - n as i64 - 1)));
            }
            if cum[g as usize] == 1 {
                return Err(bad(format!("entry {v} repeated in row {r}")));
            }
            cum[g as usize] = 1;
        }
        let (lo, hi) = (r - 1, width - r);
        for g in (0..lo).chain(hi + 1..width) {
            if cum[g] != cum_prev[g] {
                return Err(bad(format!("row {r} changes outside the trapezoid")));
            }
        }
        rows.push((lo..=hi).map(|g| cum[g] - cum_prev[g]).collect());
        cum_prev = cum;
    }
    let a = AlternatingSignTrapezoid::new(n, l, rows)?;
    if &ast_to_tree(&a)? != tree {
        return Err(bad("truncation data disagrees with the recovered 1-columns".into()));
    }
    Ok(a)
}

pub fn tree_special_count(tree: &TruncatedTree) -> usize {
    tree.special_count()
}

/// Number of monotone triangles with the given bottom row.
pub fn mt_count(bottom: &[i64]) -> Result<BigInt, TreeError> {
    Ok(mt_genfunc_enum(bottom)?.evaluate_integer(&[1])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{self, tests::sample_trapezoid};

    fn qpoly(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse_text(&q_ring(), s).unwrap()
    }

    fn quasi_sample() -> AlternatingSignTrapezoid {
        AlternatingSignTrapezoid::new(
            5,
            1,
            vec![
                vec![0, 0, 0, 0, 0, 0, 0, 1, 0],
                vec![0, 0, 1, 0, 0, 0, 0],
                vec![1, -1, 1, 0, 0],
                vec![0, 0, 1],
                vec![0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn sample_tree() {
        let tree = ast_to_tree(&sample_trapezoid()).unwrap();
        assert_eq!(tree.label(), (vec![2], vec![1]));
        assert_eq!(tree.s(), &[2, 0]);
        assert_eq!(tree.t(), &[0, 1]);
        assert_eq!(tree.bottom(), &[-3, -1, 2, 3]);
        assert_eq!(tree.rows(), &[vec![1], vec![-3, 3], vec![2, 3], vec![-1, 2]]);
        assert_eq!(tree.special_count(), 1);
        assert_eq!(tree_to_ast(&tree, 4).unwrap(), sample_trapezoid());
        assert_eq!(tree.repeated_bottoms(), vec![false, false, true, true]);
    }

    #[test]
    fn quasi_sample_tree() {
        let tree = ast_to_tree(&quasi_sample()).unwrap();
        assert_eq!(tree.label(), (vec![2], vec![1, 3]));
        assert_eq!(tree.bottom(), &[-3, -1, -1, 0, 2]);
        assert_eq!(
            tree.rows(),
            &[vec![2], vec![-2, 2], vec![-3, -1], vec![-1, 0], vec![-1, -1]]
        );
        assert_eq!(tree.special_count(), 1);
        assert_eq!(tree_to_ast(&tree, 1).unwrap(), quasi_sample());
    }

    #[test]
    fn single_row() {
        let left = AlternatingSignTrapezoid::new(1, 4, vec![vec![1, 0, 0, 0]]).unwrap();
        let tree = ast_to_tree(&left).unwrap();
        assert_eq!(tree.bottom(), &[-1]);
        assert_eq!(tree.rows(), &[vec![-1]]);
        assert_eq!(tree.special_count(), 0);
    }

    #[test]
    fn round_trips() {
        for (n, l) in [(3, 2), (2, 5), (3, 3), (3, 1), (4, 1), (2, 2)] {
            for a in ast::enumerate(n, l).unwrap() {
                let tree = ast_to_tree(&a).unwrap();
                assert_eq!(tree_to_ast(&tree, l).unwrap(), a, "{n} {l}");
                assert_eq!(tree.special_count() as u32, a.statistics().q);
                let json = serde_json::to_string(&tree).unwrap();
                let back: TruncatedTree = serde_json::from_str(&json).unwrap();
                assert_eq!(back, tree);
            }
        }
    }

    #[test]
    fn ten_columns_repeat_bottoms() {
        for l in 2..=4 {
            for a in ast::enumerate(3, l).unwrap() {
                let tree = ast_to_tree(&a).unwrap();
                let tens: Vec<bool> = a
                    .column_profile()
                    .into_iter()
                    .filter(|c| c.is_one_column)
                    .map(|c| c.is_ten_column)
                    .collect();
                assert_eq!(tree.repeated_bottoms(), tens);
            }
        }
    }

    #[test]
    fn bad_trees() {
        let tree = ast_to_tree(&sample_trapezoid()).unwrap();
        assert!(tree_to_ast(&tree, 3).is_err());
        assert!(matches!(
            TruncatedTree::new(4, vec![2, 0], vec![0, 1], tree.rows().to_vec(), vec![0, 0, 0, 0]),
            Err(TreeError::Bottom { .. })
        ));
        assert!(TruncatedTree::new(4, vec![0, 2], vec![0, 1], tree.rows().to_vec(), vec![]).is_err());
        assert!(TruncatedTree::new(2, vec![], vec![0, 0], vec![vec![1], vec![2, 1]], vec![2, 1]).is_err());
    }

    #[test]
    fn monotone_triangles() {
        assert_eq!(mt_genfunc_enum(&[5]).unwrap(), qpoly("1"));
        assert_eq!(mt_genfunc_enum(&[0, 1]).unwrap(), qpoly("2"));
        assert_eq!(mt_genfunc_enum(&[0, 2]).unwrap(), qpoly("2 + Q"));
        assert!(mt_genfunc_enum(&[1, 1]).is_err());
        // seven monotone triangles with bottom row (1,2,3)
        assert_eq!(mt_count(&[1, 2, 3]).unwrap(), BigInt::from(7));
        let m = MonotoneTriangle::new(vec![vec![2], vec![1, 3], vec![1, 2, 3]]).unwrap();
        assert_eq!(m.special_count(), 1);
        assert!(MonotoneTriangle::new(vec![vec![4], vec![1, 3]]).is_err());
    }

    #[test]
    fn operator_formula() {
        assert_eq!(mt_genfunc_operator(&[3]).unwrap(), qpoly("1"));
        assert_eq!(mt_genfunc_operator(&[0, 1]).unwrap(), qpoly("2"));
        assert_eq!(mt_genfunc_operator(&[0, 1, 2]).unwrap(), mt_genfunc_enum(&[0, 1, 2]).unwrap());
        assert_eq!(mt_genfunc_operator(&[0, 2]).unwrap(), qpoly("2 + Q"));
        assert!(mt_genfunc_operator(&[0, 1, 2, 3]).is_err());
        assert!(mt_genfunc_operator(&[-1, 2]).is_err());
    }
}
