//! Serializable report forms: the JSON schema of `compute` and `cases`, and
//! plain-text rendering. Expressions are canonical strings of the shared
//! grammar; the JSON body is deterministic (no timestamps, stable ordering).

use crate::engine::{CaseSpec, TheoremReport};
use crate::expr::Expr;
use num::rational::BigRational;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ConfigJson {
    pub n: u32,
    pub p1: u32,
    pub p2: u32,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CaseSpecJson {
    pub r: i32,
    pub l: i32,
    pub j: u32,
    pub k: u32,
    pub alpha: u32,
    pub prefactor: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CaseJson {
    pub label: String,
    pub spec: CaseSpecJson,
    pub value_expr: String,
    pub paper_value_expr: String,
    pub agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub registry_id: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct RatioJson {
    pub name: String,
    pub ratio_expr: String,
    pub paper_ratio_expr: String,
    pub agrees: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct GravitationalJson {
    #[serde(rename = "K_expr")]
    pub k_expr: String,
    #[serde(rename = "I_Gr_b_expr")]
    pub i_gr_b_expr: String,
    pub ratios: Vec<RatioJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ReportJson {
    pub config: ConfigJson,
    pub cases: Vec<CaseJson>,
    pub phi_total_expr: String,
    pub paper_phi_total_expr: String,
    pub phi_agrees: bool,
    pub interior_constant_expr: String,
    pub gravitational: GravitationalJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub special_c_expr: Option<String>,
    pub notes: Vec<String>,
}

pub fn spec_json(spec: &CaseSpec) -> CaseSpecJson {
    CaseSpecJson {
        r: spec.r,
        l: spec.l,
        j: spec.j,
        k: spec.k,
        alpha: spec.alpha,
        prefactor: spec.prefactor().to_string(),
    }
}

/// Substitute exact rational values for (a, b) in a report expression,
/// used when the CLI is given --phi-prime / --psi-prime.
fn substitute_params(e: &Expr, values: Option<&(BigRational, BigRational)>) -> String {
    match values {
        None => e.render(),
        Some((a, b)) => {
            use crate::expr::Atom;
            use crate::rat::GaussianRational;
            let mut out = Expr::zero();
            for (m, c) in e.iter() {
                let mut coeff = c.clone();
                let mut rest = Expr::constant(GaussianRational::one());
                for (atom, &k) in m {
                    match atom {
                        Atom::A => {
                            for _ in 0..k {
                                coeff = &coeff * &GaussianRational::from_rational(a.clone());
                            }
                        }
                        Atom::B => {
                            for _ in 0..k {
                                coeff = &coeff * &GaussianRational::from_rational(b.clone());
                            }
                        }
                        other => rest = rest.mul(&Expr::atom_pow(*other, k)),
                    }
                }
                out = out.add(&rest.scale(&coeff));
            }
            out.render()
        }
    }
}

pub fn report_json(
    r: &TheoremReport,
    values: Option<&(BigRational, BigRational)>,
) -> ReportJson {
    ReportJson {
        config: ConfigJson { n: r.n, p1: r.p1, p2: r.p2 },
        cases: r
            .cases
            .iter()
            .map(|c| CaseJson {
                label: c.contribution.spec.label.name().to_string(),
                spec: spec_json(&c.contribution.spec),
                value_expr: substitute_params(&c.contribution.value.to_expr(), values),
                paper_value_expr: substitute_params(&c.paper_value, values),
                agrees: c.agrees,
                registry_id: c.registry_id.map(str::to_string),
            })
            .collect(),
        phi_total_expr: substitute_params(&r.phi_total.to_expr(), values),
        paper_phi_total_expr: substitute_params(&r.paper_phi_total, values),
        phi_agrees: r.phi_agrees,
        interior_constant_expr: r.interior_constant.render(),
        gravitational: GravitationalJson {
            k_expr: r.gravitational.k_expr.render(),
            i_gr_b_expr: r.gravitational.i_gr_b_expr.render(),
            ratios: r
                .gravitational
                .ratios
                .iter()
                .map(|x| RatioJson {
                    name: x.name.to_string(),
                    ratio_expr: x.ratio.render(),
                    paper_ratio_expr: x.paper_ratio.render(),
                    agrees: x.agrees,
                })
                .collect(),
        },
        special_c_expr: r.special_c.as_ref().map(|s| s.expr.render()),
        notes: {
            let mut notes = r.notes.clone();
            if let Some(s) = &r.special_c {
                if s.derived_degenerate {
                    notes.push(
                        "special c solved from the cited boundary density; the derived \
                         boundary term is 0, for which the proportionality is degenerate"
                            .to_string(),
                    );
                }
            }
            notes
        },
    }
}

pub fn render_text(r: &ReportJson) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "boundary term report: n = {}, (p1, p2) = ({}, {})\n",
        r.config.n, r.config.p1, r.config.p2
    ));
    out.push_str(&format!(
        "{:<8} {:>14} {:<34} {:<34} {}\n",
        "case", "prefactor", "value", "printed value", "agrees"
    ));
    for c in &r.cases {
        out.push_str(&format!(
            "{:<8} {:>14} {:<34} {:<34} {}{}\n",
            c.label,
            c.spec.prefactor,
            c.value_expr,
            c.paper_value_expr,
            if c.agrees { "yes" } else { "NO" },
            c.registry_id
                .as_deref()
                .map(|id| format!("  [registered: {id}]"))
                .unwrap_or_default(),
        ));
    }
    out.push_str(&format!(
        "Phi total: {}   (printed: {}, agrees: {})\n",
        r.phi_total_expr,
        r.paper_phi_total_expr,
        if r.phi_agrees { "yes" } else { "NO" }
    ));
    out.push_str(&format!("interior constant (cited): {}\n", r.interior_constant_expr));
    out.push_str(&format!(
        "K = {},  I_Gr_b = {}\n",
        r.gravitational.k_expr, r.gravitational.i_gr_b_expr
    ));
    for ratio in &r.gravitational.ratios {
        out.push_str(&format!(
            "  {}: ratio to I_Gr_b = {}   (printed: {}, agrees: {})\n",
            ratio.name,
            ratio.ratio_expr,
            ratio.paper_ratio_expr,
            if ratio.agrees { "yes" } else { "NO" }
        ));
    }
    if let Some(c) = &r.special_c_expr {
        out.push_str(&format!("special proportionality constant c = {c}\n"));
    }
    for n in &r.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out
}
