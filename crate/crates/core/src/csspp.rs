//! Column strict shifted plane partitions of class `k`.
//!
//! Cells follow matrix addressing: row `i` (1-based) occupies columns
//! `j = i ..= i + λ_i - 1`, so the offset `j - i` runs over `0 ..= λ_i - 1`.
//! Rows are stored as plain vectors indexed by that offset.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ast::{qrst_weight, tally_to_poly};
use crate::exactpoly::LaurentPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CssppError {
    #[error("shape {0:?} is not a strictly decreasing sequence of positive integers")]
    Shape(Vec<usize>),
    #[error("row {row} has {got} parts, shape requires {expected}")]
    RowLength { row: usize, expected: usize, got: usize },
    #[error("first part of row {row} is {got}, class {class} requires {expected}")]
    Class { row: usize, class: usize, expected: u32, got: u32 },
    #[error("row {row} increases at offset {offset}")]
    RowIncrease { row: usize, offset: usize },
    #[error("column {col} does not strictly decrease between rows {row} and {}", row + 1)]
    ColumnNotStrict { row: usize, col: usize },
    #[error("parts must be positive (row {row})")]
    NonPositive { row: usize },
    #[error("statistic parameter d={d} outside 0..={class}")]
    DOutOfRange { d: usize, class: usize },
    #[error("n must be at least 1")]
    Parameters,
}

/// `λ_1 > λ_2 > ... > λ_m > 0`; the empty partition is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct StrictPartition(Vec<usize>);

impl StrictPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self, CssppError> {
        let strict = parts.windows(2).all(|w| w[0] > w[1]);
        if !strict || parts.last() == Some(&0) {
            return Err(CssppError::Shape(parts));
        }
        Ok(StrictPartition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All strict partitions with largest part at most `n`, in lexicographic order.
    pub fn all_bounded(n: usize) -> Vec<StrictPartition> {
        let mut out: Vec<StrictPartition> = (0u32..1 << n)
            .map(|mask| {
                StrictPartition((1..=n).rev().filter(|p| mask & (1 << (p - 1)) != 0).collect())
            })
            .collect();
        out.sort();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ColumnStrictShiftedPlanePartition {
    class: usize,
    shape: StrictPartition,
    rows: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct CssppJson {
    class: usize,
    shape: Vec<usize>,
    rows: Vec<Vec<u32>>,
}

impl<'de> Deserialize<'de> for ColumnStrictShiftedPlanePartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = CssppJson::deserialize(d)?;
        let shape = StrictPartition::new(j.shape).map_err(serde::de::Error::custom)?;
        ColumnStrictShiftedPlanePartition::new(shape, j.class, j.rows).map_err(serde::de::Error::custom)
    }
}

/// `q, r, s, t` of a partition for a given `d`; `second_position_one_flag`
/// is only ever set for `d = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CssppStatRecord {
    pub q: u32,
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub second_position_one_flag: bool,
}

impl CssppStatRecord {
    pub fn combine(self, other: CssppStatRecord) -> CssppStatRecord {
        CssppStatRecord {
            q: self.q + other.q,
            r: self.r + other.r,
            s: self.s + other.s,
            t: self.t + other.t,
            second_position_one_flag: self.second_position_one_flag || other.second_position_one_flag,
        }
    }

    pub fn weight(&self) -> LaurentPolynomial {
        qrst_weight(self.q, self.r, self.s, self.t, self.second_position_one_flag)
    }
}

impl ColumnStrictShiftedPlanePartition {
    pub fn new(shape: StrictPartition, class: usize, rows: Vec<Vec<u32>>) -> Result<Self, CssppError> {
        if rows.len() != shape.len() {
            return Err(CssppError::RowLength {
                row: rows.len().min(shape.len()) + 1,
                expected: shape.parts().get(rows.len()).copied().unwrap_or(0),
                got: rows.get(shape.len()).map_or(0, Vec::len),
            });
        }
        for (i, (row, &len)) in rows.iter().zip(shape.parts()).enumerate() {
            if row.len() != len {
                return Err(CssppError::RowLength {
                    row: i + 1,
                    expected: len,
                    got: row.len(),
                });
            }
            if row.contains(&0) {
                return Err(CssppError::NonPositive { row: i + 1 });
            }
            let expected = (class + len) as u32;
            if row[0] != expected {
                return Err(CssppError::Class {
                    row: i + 1,
                    class,
                    expected,
                    got: row[0],
                });
            }
            if let Some(o) = row.windows(2).position(|w| w[0] < w[1]) {
                return Err(CssppError::RowIncrease {
                    row: i + 1,
                    offset: o + 1,
                });
            }
        }
        // cell (i+1, j) sits below (i, j): offset o in row i+1 <-> offset o+1 in row i
        for i in 1..rows.len() {
            for (o, &below) in rows[i].iter().enumerate() {
                if rows[i - 1][o + 1] <= below {
                    return Err(CssppError::ColumnNotStrict {
                        row: i,
                        col: i + o + 1,
                    });
                }
            }
        }
        Ok(ColumnStrictShiftedPlanePartition { class, shape, rows })
    }

    pub fn empty(class: usize) -> Self {
        ColumnStrictShiftedPlanePartition {
            class,
            shape: StrictPartition(Vec::new()),
            rows: Vec::new(),
        }
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn shape(&self) -> &StrictPartition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn statistics(&self, d: usize) -> Result<CssppStatRecord, CssppError> {
        let k = self.class;
        if d > k {
            return Err(CssppError::DOutOfRange { d, class: k });
        }
        let mut st = CssppStatRecord {
            r: self.rows.len() as u32,
            ..Default::default()
        };
        for row in &self.rows {
            for (o, &p) in row.iter().enumerate() {
                let special = p >= 2 && p as usize <= o + k;
                if d >= 1 {
                    if p as usize == o + d {
                        st.s += 1;
                    } else if special {
                        st.q += 1;
                    }
                    if p == 1 {
                        st.t += 1;
                    }
                } else {
                    if p as usize == o && o > 1 {
                        st.s += 1;
                    } else if special && p as usize != o {
                        st.q += 1;
                    }
                    if p == 1 && o > 1 {
                        st.t += 1;
                    }
                    if p == 1 && o == 1 {
                        st.second_position_one_flag = true;
                    }
                }
            }
        }
        Ok(st)
    }

    pub fn weight(&self, d: usize) -> Result<LaurentPolynomial, CssppError> {
        Ok(self.statistics(d)?.weight())
    }
}

/// Fills one shape in row-major order, largest admissible value first.
fn fill_shape(shape: &StrictPartition, class: usize, out: &mut Vec<ColumnStrictShiftedPlanePartition>) {
    let lens = shape.parts();
    let m = lens.len();
    let mut cells = Vec::new();
    for (i, &len) in lens.iter().enumerate() {
        for o in 0..len {
            // rows below i that reach the same column j = i + o
            let below = (i + 1..m).take_while(|&r| o >= r - i && o - (r - i) < lens[r]).count();
            cells.push((i, o, below as u32 + 1));
        }
    }
    let mut rows: Vec<Vec<u32>> = lens.iter().map(|&len| vec![0; len]).collect();
    fn rec(
        idx: usize,
        cells: &[(usize, usize, u32)],
        rows: &mut Vec<Vec<u32>>,
        shape: &StrictPartition,
        class: usize,
        out: &mut Vec<ColumnStrictShiftedPlanePartition>,
    ) {
        let Some(&(i, o, lower)) = cells.get(idx) else {
            out.push(ColumnStrictShiftedPlanePartition {
                class,
                shape: shape.clone(),
                rows: rows.clone(),
            });
            return;
        };
        let mut upper = if o == 0 { u32::MAX } else { rows[i][o - 1] };
        if i > 0 {
            upper = upper.min(rows[i - 1][o + 1] - 1);
        }
        let candidates: Box<dyn Iterator<Item = u32>> = if o == 0 {
            let pinned = (class + shape.parts()[i]) as u32;
            Box::new(std::iter::once(pinned).filter(move |&p| p <= upper && p >= lower))
        } else {
            Box::new((lower..=upper).rev())
        };
        for v in candidates {
            rows[i][o] = v;
            rec(idx + 1, cells, rows, shape, class, out);
        }
    }
    rec(0, &cells, &mut rows, shape, class, out);
}

/// All class-`k` partitions with at most `n` parts in the first row:
/// shapes in lexicographic order, fillings in descending row-major order.
pub fn enumerate(n: usize, k: usize) -> Result<impl Iterator<Item = ColumnStrictShiftedPlanePartition>, CssppError> {
    if n == 0 {
        return Err(CssppError::Parameters);
    }
    Ok(StrictPartition::all_bounded(n).into_iter().flat_map(move |shape| {
        let mut out = Vec::new();
        fill_shape(&shape, k, &mut out);
        out
    }))
}

pub fn genfunc(n: usize, k: usize, d: usize) -> Result<LaurentPolynomial, CssppError> {
    if d > k {
        return Err(CssppError::DOutOfRange { d, class: k });
    }
    let mut tally = BTreeMap::new();
    for p in enumerate(n, k)? {
        let s = p.statistics(d)?;
        *tally.entry((s.q, s.r, s.s, s.t, s.second_position_one_flag)).or_insert(0u64) += 1;
    }
    Ok(tally_to_poly(&tally))
}

pub fn count(n: usize, k: usize) -> Result<BigInt, CssppError> {
    Ok(BigInt::from(enumerate(n, k)?.count()))
}
