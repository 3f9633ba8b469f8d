//! Browser bindings. Each export returns a JSON string; the `*_json`
//! functions behind them are plain Rust so they can be tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use trapezoid_core::{ast, csspp, formulas, paths};

/// Largest `n` and `l` the page accepts, to keep the tab responsive.
pub const MAX_PARAM: usize = 6;

fn check(name: &str, v: usize, lo: usize) -> Result<(), String> {
    if v < lo || v > MAX_PARAM {
        Err(format!("{name} must be between {lo} and {MAX_PARAM}"))
    } else {
        Ok(())
    }
}

pub fn generating_function_json(n: usize, l: usize) -> Result<String, String> {
    check("n", n, 1)?;
    check("l", l, 1)?;
    let det = formulas::det_formula_genfunc(n, l).map_err(|e| e.to_string())?;
    let enumerated = if n <= 4 {
        Some(ast::genfunc(n, l).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let agree = enumerated.as_ref().map(|z| *z == det);
    Ok(json!({
        "n": n,
        "l": l,
        "polynomial": det.to_string(),
        "terms": det.num_terms(),
        "count": formulas::andrews_count(n, l).to_string(),
        "enumeration_agrees": agree,
    })
    .to_string())
}

pub fn trapezoids_json(n: usize, l: usize, limit: usize) -> Result<String, String> {
    check("n", n, 1)?;
    check("l", l, 1)?;
    let items: Vec<Value> = ast::enumerate(n, l)
        .map_err(|e| e.to_string())?
        .take(limit)
        .map(|a| {
            let st = a.statistics();
            json!({
                "rows": a.rows(),
                "q": st.q, "r": st.r, "s": st.s, "t": st.t,
                "central_ten_flag": st.central_ten_flag,
                "weight": a.weight().to_string(),
            })
        })
        .collect();
    Ok(json!({
        "total": formulas::andrews_count(n, l).to_string(),
        "shown": items.len(),
        "trapezoids": items,
    })
    .to_string())
}

pub fn csspp_paths_json(n: usize, k: usize, index: usize) -> Result<String, String> {
    check("n", n, 1)?;
    check("k", k, 0)?;
    let all: Vec<_> = csspp::enumerate(n, k).map_err(|e| e.to_string())?.collect();
    let p = all
        .get(index)
        .ok_or_else(|| format!("index {index} out of range, there are {} partitions", all.len()))?;
    let family = paths::csspp_to_paths(p, k + 1).map_err(|e| e.to_string())?;
    let list: Vec<Value> = family
        .paths()
        .iter()
        .map(|path| json!({"start": path.start(), "steps": path.step_string(), "points": path.points()}))
        .collect();
    Ok(json!({
        "total": all.len(),
        "index": index,
        "rows": p.rows(),
        "paths": list,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn generating_function(n: usize, l: usize) -> Result<String, JsError> {
    generating_function_json(n, l).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn trapezoids(n: usize, l: usize, limit: usize) -> Result<String, JsError> {
    trapezoids_json(n, l, limit).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn csspp_paths(n: usize, k: usize, index: usize) -> Result<String, JsError> {
    csspp_paths_json(n, k, index).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn genfunc_small() {
        let v = parse(&generating_function_json(2, 4).unwrap());
        assert_eq!(v["terms"], 6);
        assert_eq!(v["enumeration_agrees"], true);
        assert!(generating_function_json(0, 2).is_err());
        assert!(generating_function_json(2, 7).is_err());
    }

    #[test]
    fn trapezoid_listing() {
        let v = parse(&trapezoids_json(2, 2, 3).unwrap());
        assert_eq!(v["shown"], 3);
        assert_eq!(v["total"], "6");
    }

    #[test]
    fn path_family() {
        let v = parse(&csspp_paths_json(2, 2, 6).unwrap());
        assert_eq!(v["total"], 7);
        for p in v["paths"].as_array().unwrap() {
            let pts = p["points"].as_array().unwrap();
            assert_eq!(pts.len(), p["steps"].as_str().unwrap().len() + 1);
        }
        assert!(csspp_paths_json(2, 2, 7).is_err());
    }
}
