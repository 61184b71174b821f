//! wasm-bindgen surface for the static demo page: exact boundary-term
//! reports, case listings and oracle arbitration, all returned as JSON
//! strings for the page to render.

use num::bigint::BigInt;
use num::rational::BigRational;
use std::str::FromStr;
use wasm_bindgen::prelude::*;
use wres_core::engine;
use wres_core::oracle;
use wres_core::report::{report_json, spec_json};

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".into());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|e| e.to_string())?;
        let d = BigInt::from_str(den.trim()).map_err(|e| e.to_string())?;
        if d == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(n, d))
    } else {
        Ok(BigRational::from(
            BigInt::from_str(s).map_err(|e| e.to_string())?,
        ))
    }
}

fn err_json(msg: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": msg.to_string() }).to_string()
}

/// Full report for a configuration; `a`/`b` are optional exact rationals
/// ("3/2", "-1", "") substituted for phi'(0), psi'(0).
#[wasm_bindgen]
pub fn compute_report(n: u32, p1: u32, p2: u32, a: &str, b: &str) -> String {
    let values = match (a.trim().is_empty(), b.trim().is_empty()) {
        (true, true) => None,
        (false, false) => match (parse_rational(a), parse_rational(b)) {
            (Ok(x), Ok(y)) => Some((x, y)),
            (Err(e), _) | (_, Err(e)) => return err_json(e),
        },
        _ => return err_json("give both phi'(0) and psi'(0), or neither"),
    };
    match engine::phi_total(n, p1, p2) {
        Ok(r) => serde_json::to_string(&report_json(&r, values.as_ref())).unwrap(),
        Err(e) => err_json(e),
    }
}

/// The case patterns and prefactors of a configuration.
#[wasm_bindgen]
pub fn list_cases(n: u32, p1: u32, p2: u32) -> String {
    match engine::enumerate_cases(n, p1, p2) {
        Ok(specs) => {
            let rows: Vec<_> = specs
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "label": s.label.name(),
                        "spec": spec_json(s),
                    })
                })
                .collect();
            serde_json::to_string(&rows).unwrap()
        }
        Err(e) => err_json(e),
    }
}

/// Quadrature-oracle arbitration of every case at one (a, b) point.
#[wasm_bindgen]
pub fn oracle_check(n: u32, p1: u32, p2: u32, a: f64, b: f64) -> String {
    match oracle::arbitrate_config(n, p1, p2, &[(a, b)], 1e-9) {
        Ok(rows) => {
            let json: Vec<_> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "case": r.label,
                        "symbolic": r.symbolic_expr,
                        "worst_deviation": r.worst,
                        "pass": r.pass,
                    })
                })
                .collect();
            serde_json::to_string(&json).unwrap()
        }
        Err(e) => err_json(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_has_cases() {
        let s = compute_report(4, 1, 1, "", "");
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["cases"].as_array().unwrap().len(), 5);
        assert_eq!(v["phi_total_expr"], "0");
    }

    #[test]
    fn bad_config_reports_error() {
        let s = compute_report(5, 1, 1, "", "");
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert!(v["error"].as_str().unwrap().contains("unsupported"));
    }

    #[test]
    fn rational_substitution() {
        let s = compute_report(4, 1, 1, "1/2", "1/2");
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["config"]["n"], 4);
    }
}
