//! Acceptance suite: one PASS/FAIL line per criterion, exact equality throughout.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use trapezoid_core::verify::{QUASI_THREE, QUASI_TWO, Z_AST_2_4, Z_AST_3_1};
use trapezoid_core::{ast, csspp, formulas, paths, trees, LaurentPolynomial, Ring};

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(s: &str) -> LaurentPolynomial {
    LaurentPolynomial::parse_text(&Ring::qrst(), s).unwrap()
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

struct Fixture {
    ast: BTreeMap<(usize, usize), LaurentPolynomial>,
}

fn desk_grid() -> Vec<(usize, usize)> {
    (1..=4).flat_map(|n| (1..=5).map(move |l| (n, l))).collect()
}

fn c1_ast_equals_csspp(fx: &Fixture) -> Outcome {
    desk_grid().into_par_iter().try_for_each(|(n, l)| -> Outcome {
        (0..l).try_for_each(|d| -> Outcome {
            let z = csspp::genfunc(n, l - 1, d).map_err(|e| e.to_string())?;
            ensure(z == fx.ast[&(n, l)], || format!("n={n} l={l} d={d}: {z} != {}", fx.ast[&(n, l)]))
        })
    })
}

fn c2_reference_polynomials(fx: &Fixture) -> Outcome {
    let z24 = poly(Z_AST_2_4);
    let z31 = poly(Z_AST_3_1);
    ensure(z31.num_terms() == 16, || "Z(3,1) literal should have 16 terms".into())?;
    ensure(fx.ast[&(2, 4)] == z24, || format!("Z_AST(2,4) = {}", fx.ast[&(2, 4)]))?;
    ensure(fx.ast[&(3, 1)] == z31, || format!("Z_AST(3,1) = {}", fx.ast[&(3, 1)]))?;
    for d in 0..=3 {
        let z = csspp::genfunc(2, 3, d).map_err(|e| e.to_string())?;
        ensure(z == z24, || format!("Z_CSSPP(2,3,{d}) = {z}"))?;
    }
    let objects: Vec<_> = csspp::enumerate(3, 0).map_err(|e| e.to_string())?.collect();
    ensure(objects.len() == 20, || format!("{} class-0 objects", objects.len()))?;
    let sum = objects
        .iter()
        .map(|p| p.weight(0).unwrap())
        .fold(LaurentPolynomial::zero(&Ring::qrst()), |a, w| &a + &w);
    ensure(sum == z31, || format!("tree weights sum to {sum}"))
}

fn c3_determinant_route(fx: &Fixture) -> Outcome {
    desk_grid().into_par_iter().try_for_each(|(n, l)| -> Outcome {
        let det = formulas::det_formula_genfunc(n, l).map_err(|e| e.to_string())?;
        ensure(det == fx.ast[&(n, l)], || format!("det n={n} l={l}: {det}"))?;
        ensure(!det.has_negative_exponents(), || format!("negative exponents at n={n} l={l}"))?;
        (0..l).try_for_each(|d| -> Outcome {
            let lgv = paths::lgv_genfunc(n, l, d).map_err(|e| e.to_string())?;
            ensure(lgv == det, || format!("lgv n={n} l={l} d={d}: {lgv}"))?;
            let lgv_enum = paths::lgv_genfunc_enumerated(n, l, d).map_err(|e| e.to_string())?;
            ensure(lgv_enum == det, || format!("enumerated lgv n={n} l={l} d={d}: {lgv_enum}"))
        })
    })
}

fn c4_counting() -> Outcome {
    let grid: Vec<(usize, usize)> = (1..=6).flat_map(|n| (1..=5).map(move |l| (n, l))).collect();
    grid.into_par_iter().try_for_each(|(n, l)| -> Outcome {
        let det = formulas::det_formula_genfunc(n, l).map_err(|e| e.to_string())?;
        let ones = det.evaluate_integer(&[1, 1, 1, 1]).map_err(|e| e.to_string())?;
        let andrews = formulas::andrews_count(n, l);
        ensure(ones == andrews, || format!("n={n} l={l}: {ones} != {andrews}"))?;
        if n <= 4 {
            let count = BigInt::from(ast::count(n, l).map_err(|e| e.to_string())?);
            ensure(count == andrews, || format!("enumeration n={n} l={l}: {count}"))?;
            let cs = csspp::count(n, l - 1).map_err(|e| e.to_string())?;
            ensure(cs == andrews, || format!("CSSPP count n={n} k={}: {cs}", l - 1))?;
        }
        Ok(())
    })?;
    let eight = formulas::andrews_count(2, 4);
    ensure(eight == BigInt::from(8), || format!("(2,4) count {eight}"))
}

fn c5_two_enumeration() -> Outcome {
    let grid: Vec<(usize, usize)> = (1..=6).flat_map(|n| (2..=5).map(move |l| (n, l))).collect();
    grid.into_par_iter().try_for_each(|(n, l)| -> Outcome {
        let product = formulas::two_enum_product(n, l).map_err(|e| e.to_string())?.value;
        let det = formulas::det_formula_genfunc(n, l).map_err(|e| e.to_string())?;
        let at_two = det.evaluate_integer(&[2, 1, 1, 1]).map_err(|e| e.to_string())?;
        ensure(product == at_two, || format!("n={n} l={l}: product {product}, det {at_two}"))?;
        if n <= 4 {
            let brute = ast::x_enumeration(n, l, &rat(2)).map_err(|e| e.to_string())?;
            ensure(brute == BigRational::from_integer(product.clone()), || {
                format!("n={n} l={l}: product {product}, brute force {brute}")
            })?;
        }
        Ok(())
    })
}

fn c6_quasi_sequences() -> Outcome {
    let jobs: Vec<(usize, i64, u64)> = (1..=5)
        .flat_map(|n| [(n, 2, QUASI_TWO[n - 1]), (n, 3, QUASI_THREE[n - 1])])
        .collect();
    jobs.into_par_iter().try_for_each(|(n, x, expected)| -> Outcome {
        let v = ast::x_enumeration(n, 1, &rat(x)).map_err(|e| e.to_string())?;
        ensure(v == rat(expected as i64), || format!("n={n} x={x}: {v} != {expected}"))
    })
}

fn c7_bijections() -> Outcome {
    let tree_grid: Vec<(usize, usize)> = (1..=3).flat_map(|n| (2..=5).map(move |l| (n, l))).collect();
    tree_grid.into_par_iter().try_for_each(|(n, l)| -> Outcome {
        for a in ast::enumerate(n, l).map_err(|e| e.to_string())? {
            let t = trees::ast_to_tree(&a).map_err(|e| format!("{a:?}: {e}"))?;
            let back = trees::tree_to_ast(&t, l).map_err(|e| format!("{t:?}: {e}"))?;
            ensure(back == a, || format!("tree round trip fails for {a:?}"))?;
            ensure(t.special_count() as u32 == a.statistics().q, || format!("q transport fails for {a:?}"))?;
        }
        Ok(())
    })?;
    let path_grid: Vec<(usize, usize)> = (1..=4).flat_map(|n| (0..=4).map(move |k| (n, k))).collect();
    path_grid.into_par_iter().try_for_each(|(n, k)| -> Outcome {
        for p in csspp::enumerate(n, k).map_err(|e| e.to_string())? {
            let f = paths::csspp_to_paths(&p, k + 1).map_err(|e| e.to_string())?;
            let back = paths::paths_to_csspp(&f).map_err(|e| e.to_string())?;
            ensure(back == p, || format!("path round trip fails for {p:?}"))?;
            ensure(f.paths().len() == p.rows().len(), || "path count differs from row count".into())?;
            for d in 0..=k {
                let a = f.statistics(d).map_err(|e| e.to_string())?;
                let b = p.statistics(d).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("statistics differ for {p:?}, d={d}: {a:?} vs {b:?}"))?;
            }
        }
        Ok(())
    })
}

fn c8_path_oracle() -> Outcome {
    let grid: Vec<(usize, usize, usize)> = (0..=5)
        .flat_map(|i| (0..=5).flat_map(move |j| (1..=5).map(move |l| (i, j, l))))
        .collect();
    grid.into_par_iter().try_for_each(|(i, j, l)| -> Outcome {
        let closed = paths::single_path_genfunc_closed(i, j, l);
        (0..l).try_for_each(|d| -> Outcome {
            let e = paths::single_path_genfunc_enum(i, j, l, d).map_err(|e| e.to_string())?;
            ensure(e == closed, || format!("i={i} j={j} l={l} d={d}: {e} != {closed}"))
        })
    })
}

fn c9_fg_andrews() -> Outcome {
    for l in 2..=8 {
        for i in 0..=8 {
            for j in 0..=8 {
                let f = formulas::f_entry(l, i, j).map_err(|e| e.to_string())?;
                let g = formulas::g_entry(l - 2, i, j);
                ensure(f == g, || format!("f({l};{i},{j}) = {f}, g = {g}"))?;
            }
        }
    }
    for a in 0..=4 {
        let d1 = formulas::andrews_determinant(1, a);
        ensure(d1 == BigInt::from(2), || format!("D_1({a}) = {d1}"))?;
        for n in 1..=3 {
            let r = formulas::andrews_ratio_check(n, a);
            ensure(r == (true, true), || format!("ratios n={n} a={a}: {r:?}"))?;
        }
    }
    Ok(())
}

fn c10_operator_oracle() -> Outcome {
    let rows: Vec<Vec<i64>> = (1u32..32)
        .filter(|m| m.count_ones() <= 3)
        .map(|m| (0..5).filter(|b| m & (1 << b) != 0).collect())
        .collect();
    ensure(rows.len() == 25, || format!("{} bottom rows", rows.len()))?;
    rows.into_par_iter().try_for_each(|k| -> Outcome {
        let op = trees::mt_genfunc_operator(&k).map_err(|e| e.to_string())?;
        let en = trees::mt_genfunc_enum(&k).map_err(|e| e.to_string())?;
        ensure(op == en, || format!("{k:?}: operator {op}, enumeration {en}"))
    })
}

fn main() -> ExitCode {
    let start = Instant::now();
    let ast: BTreeMap<_, _> = desk_grid()
        .into_par_iter()
        .map(|(n, l)| ((n, l), ast::genfunc(n, l).expect("valid parameters")))
        .collect();
    println!("enumerated Z_AST(n,l) for n<=4, l<=5 in {:.1}s", start.elapsed().as_secs_f64());
    let fx = Fixture { ast };
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 Z_AST(n,l) = Z_CSSPP(n,l-1,d)", Box::new(|| c1_ast_equals_csspp(&fx))),
        ("2 reference polynomials", Box::new(|| c2_reference_polynomials(&fx))),
        ("3 determinant and LGV routes", Box::new(|| c3_determinant_route(&fx))),
        ("4 counting route (n<=6)", Box::new(c4_counting)),
        ("5 2-enumeration product formula", Box::new(c5_two_enumeration)),
        ("6 quasi trapezoid 2- and 3-enumeration (n<=5)", Box::new(c6_quasi_sequences)),
        ("7 tree and path bijections", Box::new(c7_bijections)),
        ("8 single path closed form", Box::new(c8_path_oracle)),
        ("9 f/g identity and D_n(a) ratios", Box::new(c9_fg_andrews)),
        ("10 constant-term operator oracle", Box::new(c10_operator_oracle)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({secs:.2}s)"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.2}s): {msg}");
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
