//! Cross-verification harness: every route and bijection as named checks.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::exactpoly::{LaurentPolynomial, MonomialMap, Ring};
use crate::{ast, csspp, formulas, paths, trees};

/// Weighted counts of quasi trapezoids `(n, 1)` for `x = 2` and `x = 3`.
pub const QUASI_TWO: [u64; 7] = [2, 5, 22, 188, 3152, 104704, 6905856];
pub const QUASI_THREE: [u64; 7] = [2, 5, 24, 252, 5832, 301077, 34720812];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyBounds {
    pub max_n: usize,
    pub max_l: usize,
    /// worker threads; `0` lets the pool decide
    pub jobs: usize,
}

impl Default for VerifyBounds {
    fn default() -> Self {
        VerifyBounds {
            max_n: 3,
            max_l: 4,
            jobs: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub params: Vec<(String, i64)>,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
    pub elapsed_ms: f64,
}

impl CheckRow {
    pub fn params_text(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub rows: Vec<CheckRow>,
}

#[derive(Serialize)]
struct RowJson<'a> {
    name: &'a str,
    params: serde_json::Map<String, serde_json::Value>,
    status: &'static str,
    expected: &'a str,
    actual: &'a str,
    elapsed_ms: f64,
}

fn status(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

impl VerifyReport {
    pub fn from_rows(mut rows: Vec<CheckRow>) -> Self {
        rows.sort_by(|a, b| {
            let key = |r: &CheckRow| r.params.iter().map(|p| p.1).collect::<Vec<_>>();
            a.name.cmp(&b.name).then_with(|| key(a).cmp(&key(b)))
        });
        VerifyReport {
            passed: rows.iter().all(|r| r.passed),
            rows,
        }
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<RowJson> = self
            .rows
            .iter()
            .map(|r| RowJson {
                name: &r.name,
                params: r.params.iter().map(|(k, v)| (k.clone(), (*v).into())).collect(),
                status: status(r.passed),
                expected: &r.expected,
                actual: &r.actual,
                elapsed_ms: r.elapsed_ms,
            })
            .collect();
        serde_json::json!({ "status": status(self.passed), "rows": rows }).to_string()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .quote_style(csv::QuoteStyle::NonNumeric)
            .from_writer(Vec::new());
        w.write_record(["name", "params", "status", "expected", "actual", "elapsed_ms"])
            .expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.name.as_str(),
                &r.params_text(),
                status(r.passed),
                &r.expected,
                &r.actual,
                &format!("{:.3}", r.elapsed_ms),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let _ = write!(out, "{} {} [{}]", status(r.passed).to_uppercase(), r.name, r.params_text());
            if !r.passed {
                let _ = write!(out, " expected {} got {}", r.expected, r.actual);
            }
            let _ = writeln!(out, " ({:.1} ms)", r.elapsed_ms);
        }
        let failed = self.rows.iter().filter(|r| !r.passed).count();
        let _ = writeln!(
            out,
            "{}: {} checks, {} failed",
            status(self.passed).to_uppercase(),
            self.rows.len(),
            failed
        );
        out
    }
}

type Task = Box<dyn Fn() -> Vec<CheckRow> + Send + Sync>;

fn row(name: &str, params: &[(&str, usize)], expected: String, actual: String) -> CheckRow {
    CheckRow {
        name: name.to_string(),
        params: params.iter().map(|(k, v)| (k.to_string(), *v as i64)).collect(),
        passed: expected == actual,
        expected,
        actual,
        elapsed_ms: 0.0,
    }
}

fn timed(f: impl Fn() -> Vec<CheckRow> + Send + Sync + 'static) -> Task {
    Box::new(move || {
        let start = Instant::now();
        let mut rows = f();
        let ms = start.elapsed().as_secs_f64() * 1e3 / rows.len().max(1) as f64;
        for r in &mut rows {
            r.elapsed_ms = ms;
        }
        rows
    })
}

fn text<T: ToString, E: ToString>(r: Result<T, E>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {}", e.to_string()),
    }
}

fn poly(s: &str) -> LaurentPolynomial {
    LaurentPolynomial::parse_text(&Ring::qrst(), s).expect("literal polynomial")
}

pub const Z_AST_2_4: &str = "1 + 2*Q*R + 2*R + R^2 + R*S + R*T";
pub const Z_AST_3_1: &str = "1 - Q*R - Q*R^2 - Q*R^2*S - Q*R*T + 3*R + 3*R^2 + R^3 + 3*R*S + R*S*T \
     + 3*R^2*S + R^2*S*T + R^2*S^2 + 3*R*T + R*T^2 + 3*R^2*T";

fn tasks(b: VerifyBounds) -> Vec<Task> {
    let mut out: Vec<Task> = Vec::new();
    for n in 1..=b.max_n {
        for l in 1..=b.max_l {
            out.push(timed(move || {
                let mut rows = Vec::new();
                let z = match ast::genfunc(n, l) {
                    Ok(z) => z,
                    Err(e) => return vec![row("ast_genfunc", &[("n", n), ("l", l)], "ok".into(), e.to_string())],
                };
                let zs = z.to_string();
                for d in 0..l {
                    rows.push(row(
                        "ast_equals_csspp",
                        &[("n", n), ("l", l), ("d", d)],
                        zs.clone(),
                        text(csspp::genfunc(n, l - 1, d)),
                    ));
                }
                let det = formulas::det_formula_genfunc(n, l);
                rows.push(row("det_route", &[("n", n), ("l", l)], zs.clone(), text(det.clone())));
                for d in 0..l {
                    rows.push(row(
                        "lgv_route",
                        &[("n", n), ("l", l), ("d", d)],
                        zs.clone(),
                        text(paths::lgv_genfunc(n, l, d)),
                    ));
                }
                let mirrored = z.map_monomials(&MonomialMap::qrst_mirror(n as i32));
                rows.push(row("mirror", &[("n", n), ("l", l)], zs.clone(), text(mirrored)));
                let andrews = formulas::andrews_count(n, l).to_string();
                rows.push(row(
                    "counting",
                    &[("n", n), ("l", l)],
                    andrews.clone(),
                    text(z.evaluate_integer(&[1, 1, 1, 1])),
                ));
                rows.push(row(
                    "enumeration_count",
                    &[("n", n), ("l", l)],
                    andrews,
                    text(ast::count(n, l)),
                ));
                if l >= 2 {
                    if let Ok(det) = det {
                        rows.push(row(
                            "two_enum",
                            &[("n", n), ("l", l)],
                            text(formulas::two_enum_product(n, l).map(|r| r.value)),
                            text(det.evaluate_integer(&[2, 1, 1, 1])),
                        ));
                    }
                    if n <= 4 {
                        let two = BigRational::from_integer(BigInt::from(2));
                        rows.push(row(
                            "two_enum_brute",
                            &[("n", n), ("l", l)],
                            text(formulas::two_enum_product(n, l).map(|r| r.value)),
                            text(ast::x_enumeration(n, l, &two)),
                        ));
                    }
                }
                rows
            }));
        }
    }
    for (name, x, seq) in [("quasi_two_enum", 2, QUASI_TWO), ("quasi_three_enum", 3, QUASI_THREE)] {
        let upto = b.max_n.min(4);
        out.push(timed(move || {
            let xr = BigRational::from_integer(BigInt::from(x));
            let expected: Vec<String> = seq[..upto].iter().map(u64::to_string).collect();
            let actual: Vec<String> = (1..=upto).map(|n| text(ast::x_enumeration(n, 1, &xr))).collect();
            vec![row(name, &[("max_n", upto)], expected.join(","), actual.join(","))]
        }));
    }
    for n in 1..=b.max_n.min(3) {
        for l in 2..=b.max_l.max(2) {
            out.push(timed(move || {
                let mut round = 0usize;
                let mut transport = 0usize;
                let mut total = 0usize;
                for a in ast::enumerate(n, l).expect("valid parameters") {
                    total += 1;
                    if let Ok(t) = trees::ast_to_tree(&a) {
                        if trees::tree_to_ast(&t, l).as_ref() == Ok(&a) {
                            round += 1;
                        }
                        if t.special_count() as u32 == a.statistics().q {
                            transport += 1;
                        }
                    }
                }
                vec![
                    row("tree_round_trip", &[("n", n), ("l", l)], total.to_string(), round.to_string()),
                    row("tree_q_transport", &[("n", n), ("l", l)], total.to_string(), transport.to_string()),
                ]
            }));
        }
    }
    for n in 1..=b.max_n {
        for k in 0..b.max_l {
            out.push(timed(move || {
                let mut round = 0usize;
                let mut transport = 0usize;
                let mut total = 0usize;
                for p in csspp::enumerate(n, k).expect("valid parameters") {
                    total += 1;
                    if let Ok(f) = paths::csspp_to_paths(&p, k + 1) {
                        if paths::paths_to_csspp(&f).as_ref() == Ok(&p) {
                            round += 1;
                        }
                        if (0..=k).all(|d| f.statistics(d).ok() == p.statistics(d).ok()) {
                            transport += 1;
                        }
                    }
                }
                vec![
                    row("path_round_trip", &[("n", n), ("k", k)], total.to_string(), round.to_string()),
                    row("path_stat_transport", &[("n", n), ("k", k)], total.to_string(), transport.to_string()),
                ]
            }));
        }
    }
    for l in 1..=b.max_l {
        out.push(timed(move || {
            let mut rows = Vec::new();
            for d in 0..l {
                let mismatches = (0..=5usize)
                    .flat_map(|i| (0..=5usize).map(move |j| (i, j)))
                    .filter(|&(i, j)| {
                        paths::single_path_genfunc_enum(i, j, l, d).ok()
                            != Some(paths::single_path_genfunc_closed(i, j, l))
                    })
                    .count();
                rows.push(row("path_oracle", &[("l", l), ("d", d)], "0".into(), mismatches.to_string()));
            }
            rows
        }));
    }
    for l in 2..=8usize {
        out.push(timed(move || {
            let mismatches = (0..=8usize)
                .flat_map(|i| (0..=8usize).map(move |j| (i, j)))
                .filter(|&(i, j)| formulas::f_entry(l, i, j).ok() != Some(formulas::g_entry(l - 2, i, j)))
                .count();
            vec![row("fg_identity", &[("l", l)], "0".into(), mismatches.to_string())]
        }));
    }
    for n in 1..=3usize {
        for a in 0..=4usize {
            out.push(timed(move || {
                let (even, odd) = formulas::andrews_ratio_check(n, a);
                vec![row(
                    "andrews_ratio",
                    &[("n", n), ("a", a)],
                    "true,true".into(),
                    format!("{even},{odd}"),
                )]
            }));
        }
    }
    out.push(timed(|| {
        vec![row(
            "andrews_d1",
            &[],
            "2,2,2,2,2".into(),
            (0..=4).map(|a| formulas::andrews_determinant(1, a).to_string()).collect::<Vec<_>>().join(","),
        )]
    }));
    for n in 1..=3usize {
        out.push(timed(move || {
            let mut total = 0usize;
            let mut agree = 0usize;
            for mask in 0u32..32 {
                if mask.count_ones() as usize != n {
                    continue;
                }
                let bottom: Vec<i64> = (0..5).filter(|b| mask & (1 << b) != 0).collect();
                total += 1;
                if trees::mt_genfunc_operator(&bottom).ok() == trees::mt_genfunc_enum(&bottom).ok() {
                    agree += 1;
                }
            }
            vec![row("operator_oracle", &[("n", n)], total.to_string(), agree.to_string())]
        }));
    }
    out.push(timed(|| {
        let z24 = poly(Z_AST_2_4).to_string();
        let z31 = poly(Z_AST_3_1).to_string();
        let mut rows = vec![
            row("reference_ast_2_4", &[], z24.clone(), text(ast::genfunc(2, 4))),
            row("reference_ast_3_1", &[], z31.clone(), text(ast::genfunc(3, 1))),
        ];
        for d in 0..=3 {
            rows.push(row("reference_csspp_2_3", &[("d", d)], z24.clone(), text(csspp::genfunc(2, 3, d))));
        }
        let tree_weights: LaurentPolynomial = csspp::enumerate(3, 0)
            .expect("valid parameters")
            .map(|p| p.weight(0).expect("d = 0 is legal"))
            .fold(LaurentPolynomial::zero(&Ring::qrst()), |a, w| &a + &w);
        rows.push(row("reference_tree_weights", &[], z31, tree_weights.to_string()));
        rows
    }));
    out
}

/// Runs every check within the bounds; row order does not depend on `jobs`.
pub fn run_verify(bounds: VerifyBounds) -> VerifyReport {
    let tasks = tasks(bounds);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(bounds.jobs)
        .build()
        .expect("thread pool");
    let rows: Vec<CheckRow> = pool.install(|| tasks.par_iter().flat_map_iter(|t| t()).collect());
    VerifyReport::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip(mut r: VerifyReport) -> VerifyReport {
        for row in &mut r.rows {
            row.elapsed_ms = 0.0;
        }
        r
    }

    #[test]
    fn small_bounds_pass() {
        let b = VerifyBounds {
            max_n: 2,
            max_l: 3,
            jobs: 2,
        };
        let r = run_verify(b);
        assert!(r.passed, "{}", r.to_text());
        let again = run_verify(VerifyBounds { jobs: 1, ..b });
        assert_eq!(strip(r), strip(again));
    }

    #[test]
    fn empty_report_csv_is_header() {
        let r = VerifyReport::from_rows(vec![]);
        assert_eq!(r.to_csv(), "\"name\",\"params\",\"status\",\"expected\",\"actual\",\"elapsed_ms\"\n");
        assert!(r.passed);
    }
}
