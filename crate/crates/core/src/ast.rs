//! Alternating sign trapezoids: validation, exhaustive enumeration, the
//! four statistics and their generating function.
//!
//! Rows and columns are 1-based. An `(n, l)`-trapezoid has `2n + l - 2`
//! columns; row `i` covers columns `i ..= 2n + l - 1 - i`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{LaurentPolynomial, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AstError {
    #[error("parameters must satisfy n >= 1 and l >= 1 (got n={n}, l={l})")]
    Parameters { n: usize, l: usize },
    #[error("expected {expected} rows, got {got}")]
    RowCount { expected: usize, got: usize },
    #[error("row {row} must have {expected} entries, got {got}")]
    Shape { row: usize, expected: usize, got: usize },
    #[error("entry {value} at row {row}, column {col} is not -1, 0 or 1")]
    Entry { row: usize, col: usize, value: i8 },
    #[error("bottom entry of an (n,1) trapezoid must be 0 or 1, got {value}")]
    BottomEntry { value: i8 },
    #[error("nonzero entries of row {row} do not alternate in sign")]
    RowAlternation { row: usize },
    #[error("topmost nonzero entry of column {col} is -1")]
    ColumnTop { col: usize },
    #[error("nonzero entries of column {col} do not alternate in sign")]
    ColumnAlternation { col: usize },
    #[error("row {row} sums to {sum}, expected 1")]
    RowSum { row: usize, sum: i32 },
    #[error("central column {col} sums to {sum}, expected 0")]
    CentralColumnSum { col: usize, sum: i32 },
    #[error("{0}")]
    Unsupported(&'static str),
}

fn check_params(n: usize, l: usize) -> Result<(), AstError> {
    if n == 0 || l == 0 {
        Err(AstError::Parameters { n, l })
    } else {
        Ok(())
    }
}

/// Number of columns of an `(n, l)`-trapezoid.
pub fn num_columns(n: usize, l: usize) -> usize {
    2 * n + l - 2
}

/// Length of (1-based) row `row`.
pub fn row_len(n: usize, l: usize, row: usize) -> usize {
    2 * n + l - 2 * row
}

/// Last (1-based) row in which column `col` has a cell.
pub fn column_last_row(n: usize, l: usize, col: usize) -> usize {
    col.min(2 * n + l - 1 - col).min(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AlternatingSignTrapezoid {
    n: usize,
    l: usize,
    rows: Vec<Vec<i8>>,
}

#[derive(Deserialize)]
struct AstJson {
    n: usize,
    l: usize,
    rows: Vec<Vec<i8>>,
}

impl<'de> Deserialize<'de> for AlternatingSignTrapezoid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = AstJson::deserialize(d)?;
        AlternatingSignTrapezoid::new(j.n, j.l, j.rows).map_err(serde::de::Error::custom)
    }
}

/// Per-column data of a trapezoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnInfo {
    pub column: usize,
    pub sum: i8,
    pub bottom: i8,
    pub is_one_column: bool,
    pub is_ten_column: bool,
    /// For `l >= 2`: `-n..=-1` on the `n` leftmost columns, `1..=n` on the
    /// `n` rightmost, `None` in the centre. Always `None` for `l = 1`.
    pub signed_label: Option<i32>,
}

/// `q, r, s, t` of a trapezoid. For `l = 1`, `s` and `t` are the variants
/// that skip the central column, which is reported by `central_ten_flag`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AstStatRecord {
    pub q: u32,
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub central_ten_flag: bool,
}

impl AlternatingSignTrapezoid {
    /// Checks every defining condition; the error names the first one violated.
    pub fn new(n: usize, l: usize, rows: Vec<Vec<i8>>) -> Result<Self, AstError> {
        check_params(n, l)?;
        if rows.len() != n {
            return Err(AstError::RowCount {
                expected: n,
                got: rows.len(),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            let expected = row_len(n, l, i + 1);
            if row.len() != expected {
                return Err(AstError::Shape {
                    row: i + 1,
                    expected,
                    got: row.len(),
                });
            }
            if let Some(p) = row.iter().position(|v| !(-1..=1).contains(v)) {
                return Err(AstError::Entry {
                    row: i + 1,
                    col: i + 1 + p,
                    value: row[p],
                });
            }
        }
        if l == 1 && rows[n - 1][0] == -1 {
            return Err(AstError::BottomEntry { value: -1 });
        }
        let a = AlternatingSignTrapezoid { n, l, rows };
        for r in 1..=n {
            if !alternates(a.rows[r - 1].iter().copied()) {
                return Err(AstError::RowAlternation { row: r });
            }
        }
        for c in 1..=a.num_columns() {
            let col = a.column(c);
            if col.iter().find(|&&v| v != 0) == Some(&-1) {
                return Err(AstError::ColumnTop { col: c });
            }
            if !alternates(col.into_iter()) {
                return Err(AstError::ColumnAlternation { col: c });
            }
        }
        let sum_rows = if l == 1 { n - 1 } else { n };
        for r in 1..=sum_rows {
            let sum: i32 = a.rows[r - 1].iter().map(|&v| v as i32).sum();
            if sum != 1 {
                return Err(AstError::RowSum { row: r, sum });
            }
        }
        if l >= 3 {
            for c in n + 1..=n + l - 2 {
                let sum: i32 = a.column(c).iter().map(|&v| v as i32).sum();
                if sum != 0 {
                    return Err(AstError::CentralColumnSum { col: c, sum });
                }
            }
        }
        Ok(a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    pub fn num_columns(&self) -> usize {
        num_columns(self.n, self.l)
    }

    /// Entry at 1-based `(row, col)`, `None` outside the trapezoid.
    pub fn entry(&self, row: usize, col: usize) -> Option<i8> {
        if row == 0 || row > self.n || col < row {
            return None;
        }
        self.rows[row - 1].get(col - row).copied()
    }

    /// Entries of column `col`, top to bottom.
    pub fn column(&self, col: usize) -> Vec<i8> {
        (1..=column_last_row(self.n, self.l, col))
            .map(|r| self.entry(r, col).expect("cell inside trapezoid"))
            .collect()
    }

    pub fn column_profile(&self) -> Vec<ColumnInfo> {
        let (n, l) = (self.n as i32, self.l);
        (1..=self.num_columns())
            .map(|c| {
                let entries = self.column(c);
                let sum: i8 = entries.iter().sum();
                let bottom = *entries.last().expect("columns are nonempty");
                let signed_label = if l == 1 {
                    None
                } else if c <= self.n {
                    Some(c as i32 - n - 1)
                } else if c >= self.n + l - 1 {
                    Some(c as i32 - (n + l as i32 - 2))
                } else {
                    None
                };
                ColumnInfo {
                    column: c,
                    sum,
                    bottom,
                    is_one_column: sum == 1,
                    is_ten_column: sum == 1 && bottom == 0,
                    signed_label,
                }
            })
            .collect()
    }

    pub fn statistics(&self) -> AstStatRecord {
        let n = self.n;
        let profile = self.column_profile();
        let q = self.rows.iter().flatten().filter(|&&v| v == -1).count() as u32;
        let count = |range: std::ops::RangeInclusive<usize>, f: fn(&ColumnInfo) -> bool| {
            profile
                .iter()
                .filter(|ci| range.contains(&ci.column) && f(ci))
                .count() as u32
        };
        let r = count(1..=n, |c| c.is_one_column);
        if self.l == 1 {
            AstStatRecord {
                q,
                r,
                s: count(1..=n - 1, |c| c.is_ten_column),
                t: count(n + 1..=2 * n - 1, |c| c.is_ten_column),
                central_ten_flag: profile[n - 1].is_ten_column,
            }
        } else {
            AstStatRecord {
                q,
                r,
                s: count(1..=n, |c| c.is_ten_column),
                t: count(n + self.l - 1..=self.num_columns(), |c| c.is_ten_column),
                central_ten_flag: false,
            }
        }
    }

    pub fn weight(&self) -> LaurentPolynomial {
        let st = self.statistics();
        qrst_weight(st.q, st.r, st.s, st.t, st.central_ten_flag)
    }

    /// Signed positions of the `n` one-columns (only defined for `l >= 2`).
    pub fn one_column_vector(&self) -> Result<Vec<i32>, AstError> {
        if self.l < 2 {
            return Err(AstError::Unsupported(
                "the 1-column vector is defined for l >= 2 only",
            ));
        }
        Ok(self
            .column_profile()
            .into_iter()
            .filter(|c| c.is_one_column)
            .map(|c| c.signed_label.expect("central columns sum to zero"))
            .collect())
    }
}

fn alternates(it: impl Iterator<Item = i8>) -> bool {
    let mut last = 0;
    for v in it.filter(|&v| v != 0) {
        if v == last {
            return false;
        }
        last = v;
    }
    true
}

/// `Q^q R^r S^s T^t (S + T - Q)^flag`.
pub(crate) fn qrst_weight(q: u32, r: u32, s: u32, t: u32, flag: bool) -> LaurentPolynomial {
    let ring = Ring::qrst();
    let exps = [q as i32, r as i32, s as i32, t as i32];
    let mono = LaurentPolynomial::monomial(&ring, &exps, 1).expect("arity 4");
    if flag {
        &mono * &stt_minus_q()
    } else {
        mono
    }
}

fn stt_minus_q() -> LaurentPolynomial {
    let ring = Ring::qrst();
    let v = |i| LaurentPolynomial::var(&ring, i);
    &(&v(2) + &v(3)) - &v(0)
}

/// Sums weights of a tally `(q, r, s, t, flag) -> multiplicity`.
pub(crate) fn tally_to_poly(tally: &BTreeMap<(u32, u32, u32, u32, bool), u64>) -> LaurentPolynomial {
    let ring = Ring::qrst();
    let mut plain = LaurentPolynomial::zero(&ring);
    let mut flagged = LaurentPolynomial::zero(&ring);
    for (&(q, r, s, t, flag), &mult) in tally {
        let m = LaurentPolynomial::monomial(&ring, &[q as i32, r as i32, s as i32, t as i32], mult)
            .expect("arity 4");
        if flag {
            flagged = &flagged + &m;
        } else {
            plain = &plain + &m;
        }
    }
    &plain + &(&flagged * &stt_minus_q())
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    row: usize,
    col: usize,
    last_in_row: bool,
    last_in_col: bool,
    central: bool,
    /// the single bottom cell of an `(n, 1)` trapezoid
    free_bottom: bool,
}

/// Depth-first enumeration of all `(n, l)`-trapezoids.
///
/// Cells are filled row by row, left to right, trying `-1 < 0 < 1`, so the
/// stream is in lexicographic order of the row-major entry sequence. Partial
/// row and column sums are kept in `{0, 1}`, which encodes both alternation
/// and the `+1` column tops.
pub struct AstEnumerator {
    n: usize,
    l: usize,
    cells: Vec<Cell>,
    values: Vec<i8>,
    row_partial: Vec<i8>,
    col_partial: Vec<i8>,
    next_start: i8,
    done: bool,
}

impl AstEnumerator {
    fn new(n: usize, l: usize) -> Self {
        let mut cells = Vec::new();
        for row in 1..=n {
            let first = row;
            let last = 2 * n + l - 1 - row;
            for col in first..=last {
                cells.push(Cell {
                    row,
                    col,
                    last_in_row: col == last,
                    last_in_col: column_last_row(n, l, col) == row,
                    central: l >= 3 && col > n && col < n + l - 1,
                    free_bottom: l == 1 && row == n,
                });
            }
        }
        AstEnumerator {
            n,
            l,
            values: Vec::with_capacity(cells.len()),
            cells,
            row_partial: vec![0; n + 1],
            col_partial: vec![0; num_columns(n, l) + 1],
            next_start: -1,
            done: false,
        }
    }

    fn feasible(&self, cell: &Cell, v: i8) -> bool {
        if cell.free_bottom && v == -1 {
            return false;
        }
        let rs = self.row_partial[cell.row] + v;
        let cs = self.col_partial[cell.col] + v;
        if !(0..=1).contains(&rs) || !(0..=1).contains(&cs) {
            return false;
        }
        if cell.last_in_row && !cell.free_bottom && rs != 1 {
            return false;
        }
        if cell.last_in_col && cell.central && cs != 0 {
            return false;
        }
        true
    }

    fn place(&mut self, v: i8) {
        let cell = self.cells[self.values.len()];
        self.row_partial[cell.row] += v;
        self.col_partial[cell.col] += v;
        self.values.push(v);
    }

    /// Removes the last placed value; returns false when nothing is left.
    fn backtrack(&mut self) -> bool {
        match self.values.pop() {
            None => false,
            Some(v) => {
                let cell = self.cells[self.values.len()];
                self.row_partial[cell.row] -= v;
                self.col_partial[cell.col] -= v;
                self.next_start = v + 1;
                true
            }
        }
    }

    fn build(&self) -> AlternatingSignTrapezoid {
        let mut rows = Vec::with_capacity(self.n);
        let mut it = self.values.iter().copied();
        for r in 1..=self.n {
            rows.push(it.by_ref().take(row_len(self.n, self.l, r)).collect());
        }
        AlternatingSignTrapezoid {
            n: self.n,
            l: self.l,
            rows,
        }
    }
}

impl Iterator for AstEnumerator {
    type Item = AlternatingSignTrapezoid;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            let pos = self.values.len();
            if pos == self.cells.len() {
                let out = self.build();
                debug_assert!(AlternatingSignTrapezoid::new(self.n, self.l, out.rows.clone()).is_ok());
                self.backtrack();
                return Some(out);
            }
            let cell = self.cells[pos];
            match (self.next_start..=1).find(|&v| self.feasible(&cell, v)) {
                Some(v) => {
                    self.place(v);
                    self.next_start = -1;
                }
                None => {
                    if !self.backtrack() {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

/// Every `(n, l)`-trapezoid exactly once, in deterministic order.
pub fn enumerate(n: usize, l: usize) -> Result<AstEnumerator, AstError> {
    check_params(n, l)?;
    Ok(AstEnumerator::new(n, l))
}

fn tally(n: usize, l: usize) -> Result<BTreeMap<(u32, u32, u32, u32, bool), u64>, AstError> {
    let mut tally = BTreeMap::new();
    for a in enumerate(n, l)? {
        let s = a.statistics();
        *tally.entry((s.q, s.r, s.s, s.t, s.central_ten_flag)).or_insert(0) += 1;
    }
    Ok(tally)
}

/// Generating function of `(n, l)`-trapezoids by brute-force enumeration.
pub fn genfunc(n: usize, l: usize) -> Result<LaurentPolynomial, AstError> {
    Ok(tally_to_poly(&tally(n, l)?))
}

/// Number of `(n, l)`-trapezoids.
pub fn count(n: usize, l: usize) -> Result<u64, AstError> {
    Ok(enumerate(n, l)?.count() as u64)
}

/// `sum over A of x^q(A)`, by direct enumeration (the `l = 1` central-column
/// weight is deliberately not applied here).
pub fn x_enumeration(n: usize, l: usize, x: &BigRational) -> Result<BigRational, AstError> {
    let mut by_q: BTreeMap<u32, u64> = BTreeMap::new();
    for a in enumerate(n, l)? {
        *by_q.entry(a.statistics().q).or_insert(0) += 1;
    }
    if x.is_zero() {
        return Ok(BigRational::from_integer(BigInt::from(*by_q.get(&0).unwrap_or(&0))));
    }
    let mut total = BigRational::zero();
    for (q, mult) in by_q {
        total += x.pow(q as i32) * BigRational::from_integer(mult.into());
    }
    Ok(total)
}
