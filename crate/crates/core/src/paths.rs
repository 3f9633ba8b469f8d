//! Nonintersecting lattice paths for CSSPPs of class `l - 1`.
//!
//! A row of length `λ` becomes a path from `(λ - 1, 0)` to `(0, λ + l - 2)`
//! with steps `H = (-1, 0)` and `V = (0, 1)`. The horizontal step leaving
//! `x = o` sits at height `p_o - 1` for the part at offset `o >= 1`; the part
//! at offset `0` is the end height plus one and carries no step.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ast::tally_to_poly;
use crate::csspp::{ColumnStrictShiftedPlanePartition, CssppError, CssppStatRecord, StrictPartition};
use crate::exactpoly::{binomial, LaurentPolynomial, PolyMatrix, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("partition has class {class}, expected l - 1 = {expected}")]
    ClassMismatch { class: usize, expected: usize },
    #[error("paths share the lattice point ({0}, {1})")]
    Intersecting(i64, i64),
    #[error("two paths start at ({0}, 0)")]
    DuplicateStart(usize),
    #[error("path from ({start}, 0) has {h} horizontal and {v} vertical steps, expected {start} and {expected_v}")]
    StepCount { start: usize, h: usize, v: usize, expected_v: usize },
    #[error("unknown step {0:?} (use H or V)")]
    BadStep(char),
    #[error("d={d} outside 0..={max}")]
    DOutOfRange { d: usize, max: usize },
    #[error("l must be at least 1")]
    Parameters,
    #[error(transparent)]
    Csspp(#[from] CssppError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    H,
    V,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePath {
    start: usize,
    steps: Vec<Step>,
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    start: [i64; 2],
    steps: String,
}

impl Serialize for LatticePath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PathJson {
            start: [self.start as i64, 0],
            steps: self.step_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePath {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = PathJson::deserialize(d)?;
        if j.start[0] < 0 || j.start[1] != 0 {
            return Err(D::Error::custom("paths start on the nonnegative x-axis"));
        }
        LatticePath::parse(j.start[0] as usize, &j.steps).map_err(D::Error::custom)
    }
}

impl LatticePath {
    /// Checks that the steps lead from `(start, 0)` to the y-axis.
    pub fn new(start: usize, steps: Vec<Step>) -> Result<Self, PathError> {
        let h = steps.iter().filter(|s| **s == Step::H).count();
        if h != start {
            let v = steps.len() - h;
            return Err(PathError::StepCount {
                start,
                h,
                v,
                expected_v: v,
            });
        }
        Ok(LatticePath { start, steps })
    }

    pub fn parse(start: usize, steps: &str) -> Result<Self, PathError> {
        let steps = steps
            .chars()
            .map(|c| match c {
                'H' => Ok(Step::H),
                'V' => Ok(Step::V),
                other => Err(PathError::BadStep(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(start, steps)
    }

    pub fn start(&self) -> (i64, i64) {
        (self.start as i64, 0)
    }

    pub fn end(&self) -> (i64, i64) {
        (0, self.vertical_steps() as i64)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn vertical_steps(&self) -> usize {
        self.steps.len() - self.start
    }

    pub fn step_string(&self) -> String {
        self.steps
            .iter()
            .map(|s| match s {
                Step::H => 'H',
                Step::V => 'V',
            })
            .collect()
    }

    /// Every lattice point visited, start and end included.
    pub fn points(&self) -> Vec<(i64, i64)> {
        let (mut x, mut y) = self.start();
        let mut out = vec![(x, y)];
        for s in &self.steps {
            match s {
                Step::H => x -= 1,
                Step::V => y += 1,
            }
            out.push((x, y));
        }
        out
    }

    /// `(x, h)` of the right endpoint of every horizontal step.
    pub fn horizontal_steps(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let (mut x, mut y) = self.start();
        self.steps.iter().filter_map(move |s| match s {
            Step::H => {
                let from = (x, y);
                x -= 1;
                Some(from)
            }
            Step::V => {
                y += 1;
                None
            }
        })
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},0):{}", self.start, self.step_string())
    }
}

/// Paths `S_i -> E_i` for a common index set, listed by decreasing start.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathFamily {
    l: usize,
    paths: Vec<LatticePath>,
}

#[derive(Deserialize)]
struct FamilyJson {
    l: usize,
    paths: Vec<LatticePath>,
}

impl<'de> Deserialize<'de> for PathFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = FamilyJson::deserialize(d)?;
        PathFamily::new(j.l, j.paths).map_err(serde::de::Error::custom)
    }
}

impl PathFamily {
    pub fn new(l: usize, mut paths: Vec<LatticePath>) -> Result<Self, PathError> {
        if l == 0 {
            return Err(PathError::Parameters);
        }
        paths.sort_by(|a, b| b.start.cmp(&a.start));
        for w in paths.windows(2) {
            if w[0].start == w[1].start {
                return Err(PathError::DuplicateStart(w[0].start));
            }
        }
        let mut seen = HashSet::new();
        for p in &paths {
            let expected_v = p.start + l - 1;
            if p.vertical_steps() != expected_v {
                return Err(PathError::StepCount {
                    start: p.start,
                    h: p.start,
                    v: p.vertical_steps(),
                    expected_v,
                });
            }
            for pt in p.points() {
                if !seen.insert(pt) {
                    return Err(PathError::Intersecting(pt.0, pt.1));
                }
            }
        }
        Ok(PathFamily { l, paths })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn paths(&self) -> &[LatticePath] {
        &self.paths
    }

    pub fn statistics(&self, d: usize) -> Result<CssppStatRecord, PathError> {
        self.paths.iter().try_fold(CssppStatRecord::default(), |acc, p| {
            Ok(acc.combine(path_statistics(p, self.l, d)?))
        })
    }
}

pub fn csspp_to_paths(p: &ColumnStrictShiftedPlanePartition, l: usize) -> Result<PathFamily, PathError> {
    if l == 0 {
        return Err(PathError::Parameters);
    }
    if p.class() + 1 != l {
        return Err(PathError::ClassMismatch {
            class: p.class(),
            expected: l - 1,
        });
    }
    let paths = p
        .rows()
        .iter()
        .map(|row| {
            let start = row.len() - 1;
            let mut steps = Vec::new();
            let mut h = 0;
            for o in (1..row.len()).rev() {
                let target = row[o] as usize - 1;
                steps.extend(std::iter::repeat(Step::V).take(target - h));
                steps.push(Step::H);
                h = target;
            }
            let top = row[0] as usize - 1;
            steps.extend(std::iter::repeat(Step::V).take(top - h));
            LatticePath { start, steps }
        })
        .collect();
    PathFamily::new(l, paths)
}

pub fn paths_to_csspp(f: &PathFamily) -> Result<ColumnStrictShiftedPlanePartition, PathError> {
    let class = f.l - 1;
    let mut rows = Vec::new();
    for p in &f.paths {
        let mut row = vec![0u32; p.start + 1];
        row[0] = p.vertical_steps() as u32 + 1;
        for (x, h) in p.horizontal_steps() {
            row[x as usize] = h as u32 + 1;
        }
        rows.push(row);
    }
    let shape = StrictPartition::new(rows.iter().map(Vec::len).collect())?;
    Ok(ColumnStrictShiftedPlanePartition::new(shape, class, rows)?)
}

/// Number of paths with steps `(-1, 0)`, `(0, 1)` between two points.
pub fn path_count(from: (i64, i64), to: (i64, i64)) -> BigInt {
    let dx = from.0 - to.0;
    let dy = to.1 - from.1;
    if dx < 0 || dy < 0 {
        return BigInt::from(0);
    }
    binomial(dx + dy, dx)
}

fn check_d(l: usize, d: usize) -> Result<(), PathError> {
    if l == 0 {
        return Err(PathError::Parameters);
    }
    if d + 1 > l {
        return Err(PathError::DOutOfRange { d, max: l - 1 });
    }
    Ok(())
}

/// The statistics of one path for parameter `d` (with `r = 1`).
pub fn path_statistics(p: &LatticePath, l: usize, d: usize) -> Result<CssppStatRecord, PathError> {
    check_d(l, d)?;
    let mut st = CssppStatRecord {
        r: 1,
        ..Default::default()
    };
    let (l, d) = (l as i64, d as i64);
    for (x, h) in p.horizontal_steps() {
        if h == 0 {
            if d == 0 && x == 1 {
                st.second_position_one_flag = true;
            } else {
                st.t += 1;
            }
        } else if h == x - 1 + d {
            st.s += 1;
        } else if h <= x + l - 2 {
            st.q += 1;
        }
    }
    Ok(st)
}

/// Generating function of a single path `(i, 0) -> (0, j + l - 1)` from the
/// binomial closed form.
pub fn single_path_genfunc_closed(i: usize, j: usize, l: usize) -> LaurentPolynomial {
    let ring = Ring::qrst();
    let mut out = LaurentPolynomial::zero(&ring);
    let (i, j, l) = (i as i64, j as i64, l as i64);
    for k in 0..=i {
        for m in 0..=j {
            let c = binomial(j, m);
            let plain = &c * binomial(k + l - 3, k - m);
            let with_s = &c * binomial(k + l - 3, k - m - 1);
            let (t, q) = ((i - k) as i32, (k - m) as i32);
            out.add_term(crate::exactpoly::Monomial::new(&[q, 1, 0, t]), plain);
            out.add_term(crate::exactpoly::Monomial::new(&[q - 1, 1, 1, t]), with_s);
        }
    }
    out
}

/// Same generating function by listing every path.
pub fn single_path_genfunc_enum(i: usize, j: usize, l: usize, d: usize) -> Result<LaurentPolynomial, PathError> {
    check_d(l, d)?;
    let v = j + l - 1;
    let mut tally = BTreeMap::new();
    let mut steps = Vec::with_capacity(i + v);
    fn rec(
        h_left: usize,
        v_left: usize,
        steps: &mut Vec<Step>,
        start: usize,
        l: usize,
        d: usize,
        tally: &mut BTreeMap<(u32, u32, u32, u32, bool), u64>,
    ) {
        if h_left == 0 && v_left == 0 {
            let p = LatticePath {
                start,
                steps: steps.clone(),
            };
            let s = path_statistics(&p, l, d).expect("d checked");
            *tally.entry((s.q, s.r, s.s, s.t, s.second_position_one_flag)).or_insert(0) += 1;
            return;
        }
        for (step, ok) in [(Step::H, h_left > 0), (Step::V, v_left > 0)] {
            if ok {
                steps.push(step);
                let (h, v) = if step == Step::H { (h_left - 1, v_left) } else { (h_left, v_left - 1) };
                rec(h, v, steps, start, l, d, tally);
                steps.pop();
            }
        }
    }
    rec(i, v, &mut steps, i, l, d, &mut tally);
    Ok(tally_to_poly(&tally))
}

/// Sum over index subsets of the path-matrix minors.
pub fn lgv_genfunc(n: usize, l: usize, d: usize) -> Result<LaurentPolynomial, PathError> {
    check_d(l, d)?;
    let ring = Ring::qrst();
    let m = PolyMatrix::from_fn(&ring, n, |a, b| single_path_genfunc_closed(a, b, l)).expect("square");
    Ok(subset_minor_sum(&m))
}

/// [`lgv_genfunc`] with entries obtained by path enumeration for this `d`.
pub fn lgv_genfunc_enumerated(n: usize, l: usize, d: usize) -> Result<LaurentPolynomial, PathError> {
    check_d(l, d)?;
    let ring = Ring::qrst();
    let mut entries = Vec::with_capacity(n);
    for a in 0..n {
        let row = (0..n)
            .map(|b| single_path_genfunc_enum(a, b, l, d))
            .collect::<Result<Vec<_>, _>>()?;
        entries.push(row);
    }
    let m = PolyMatrix::new(&ring, entries).expect("square");
    Ok(subset_minor_sum(&m))
}

fn subset_minor_sum(m: &PolyMatrix) -> LaurentPolynomial {
    let n = m.dim();
    let mut total = LaurentPolynomial::zero(&Ring::qrst());
    for mask in 0u32..1 << n {
        let idx: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).collect();
        total = &total + &m.principal_minor(&idx).determinant();
    }
    total
}
