//! The acceptance table: every criterion of the build contract, runnable as
//! one suite with one pass/fail line per check. Deviations from printed
//! values trip the quadrature-oracle arbitration path; an oracle-confirmed
//! deviation against a registered in-derivation formula is reported as a
//! note, one against a theorem-level statement fails the suite.

use crate::clifford::{dxn_of_u, dxn_of_v, CliffordElement, SpinorDim};
use crate::engine::{
    self, enumerate_cases, paper_phi_expr, paper_ratio_expr, phi_total,
    res_form, solve_special_c, tables_for, CaseLabel, ResName, SUPPORTED_CONFIGS,
};
use crate::expr::{parse, Expr};
use crate::halfline::pi_plus;
use crate::oracle::{compare, numeric_case, OracleConfig};
use crate::params::ParamPoly;
use crate::rat::{brat, GaussianRational};
use crate::rational::{BoundaryRational, XiPoly};
use crate::registry::{self, DiscrepancyClass};
use crate::symbols::{compose_tables, dirac_table, inverse_table};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckStatus {
    Pass,
    /// Deviation from a printed in-derivation formula, oracle-confirmed and
    /// registered; the suite continues.
    Note,
    Fail,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "PASS"),
            CheckStatus::Note => write!(f, "NOTE"),
            CheckStatus::Fail => write!(f, "FAIL"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub lines: Vec<CheckLine>,
    pub elapsed_ms: u128,
}

impl CriterionResult {
    pub fn status(&self) -> CheckStatus {
        self.lines
            .iter()
            .map(|l| l.status)
            .max()
            .unwrap_or(CheckStatus::Pass)
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "criterion {}: {} ... {} ({} ms)\n",
            self.id,
            self.title,
            self.status(),
            self.elapsed_ms
        );
        for l in &self.lines {
            out.push_str(&format!("  [{}] {}", l.status, l.name));
            if !l.detail.is_empty() {
                out.push_str(&format!(": {}", l.detail));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 1789, trials: 20, tol: 1e-9 }
    }
}

fn line(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> CheckLine {
    CheckLine {
        name: name.into(),
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: detail.into(),
    }
}

fn timed(
    id: u32,
    title: &'static str,
    f: impl FnOnce(&mut Vec<CheckLine>),
) -> CriterionResult {
    let start = Instant::now();
    let mut lines = Vec::new();
    f(&mut lines);
    CriterionResult { id, title, lines, elapsed_ms: start.elapsed().as_millis() }
}

fn param_rat(x: &BoundaryRational) -> String {
    x.to_string()
}

// ---------------------------------------------------------------- criterion 1

/// The complete generator trace tables for n = 4, 6 and the n = 3 triple.
pub fn criterion1_trace_tables() -> CriterionResult {
    timed(1, "Clifford generator trace tables", |lines| {
        for n in [4u32, 6] {
            let d = SpinorDim::new(n).unwrap();
            let dim = d.dim_s as i64;
            let u = CliffordElement::u();
            let v = CliffordElement::v();
            let du = dxn_of_u();
            let dv = dxn_of_v();
            let half = |c: i64| GaussianRational::ratio(c, 2);
            let checks: Vec<(&str, CliffordElement, BoundaryRational)> = vec![
                ("tr[u v] = 0", u.mul(&v).unwrap(), BoundaryRational::zero()),
                (
                    "tr[v^2] = -dim",
                    v.mul(&v).unwrap(),
                    BoundaryRational::ratio(-dim, 1),
                ),
                (
                    "tr[u^2] = -dim",
                    u.mul(&u).unwrap(),
                    BoundaryRational::ratio(-dim, 1),
                ),
                ("tr[du v] = 0", du.mul(&v).unwrap(), BoundaryRational::zero()),
                (
                    "tr[du u] = -(dim/2) a",
                    du.mul(&u).unwrap(),
                    BoundaryRational::from_param(
                        ParamPoly::var_a().scale(&half(-dim)),
                    ),
                ),
                ("tr[dv u] = 0", dv.mul(&u).unwrap(), BoundaryRational::zero()),
                (
                    "tr[dv v] = (dim/2) b",
                    dv.mul(&v).unwrap(),
                    BoundaryRational::from_param(ParamPoly::var_b().scale(&half(dim))),
                ),
            ];
            for (name, w, expect) in checks {
                let got = w.trace(d);
                lines.push(line(
                    format!("n={n}: {name}"),
                    got == expect,
                    if got == expect {
                        String::new()
                    } else {
                        format!("got {}", param_rat(&got))
                    },
                ));
            }
        }
        let d3 = SpinorDim::new(3).unwrap();
        let u = CliffordElement::u();
        let v = CliffordElement::v();
        for (name, w, expect) in [
            ("tr[id] = 2", CliffordElement::one(), BoundaryRational::ratio(2, 1)),
            ("tr[u v] = 0", u.mul(&v).unwrap(), BoundaryRational::zero()),
            ("tr[v^2] = -2", v.mul(&v).unwrap(), BoundaryRational::ratio(-2, 1)),
            ("tr[u^2] = -2", u.mul(&u).unwrap(), BoundaryRational::ratio(-2, 1)),
        ] {
            let got = w.trace(d3);
            lines.push(line(format!("n=3: {name}"), got == expect, ""));
        }
    })
}

// ---------------------------------------------------------------- criterion 2

fn up(p: u32) -> BoundaryRational {
    BoundaryRational::inverse_poles(p, 0)
}

/// The printed half-line projection fixtures, as Clifford-rational identities.
pub fn criterion2_projection_fixtures() -> CriterionResult {
    timed(2, "half-line projection fixtures", |lines| {
        let i = GaussianRational::i();
        let c_xi = CliffordElement::c_xi();

        // pi+ [c(xi)/|xi|^4] = ((-2 - i xi)/(4(xi-i)^2)) u - (i/(4(xi-i)^2)) v
        let got = pi_plus(&c_xi.scale_rat(&BoundaryRational::inv_xi2_pow(2))).unwrap();
        let expect_u = up(2).mul(&BoundaryRational::new(
            XiPoly::from_coeffs(vec![
                ParamPoly::ratio(-1, 2),
                ParamPoly::constant(GaussianRational::ratio_i(-1, 4)),
            ]),
            0,
            0,
        ));
        let expect_v = up(2).scale_gaussian(&GaussianRational::ratio_i(-1, 4));
        lines.push(line(
            "pi+ of c(xi)/|xi|^4",
            got.cu == expect_u && got.cv == expect_v && got.c1.is_zero() && got.cuv.is_zero(),
            "",
        ));

        // pi+ [i du /|xi|^2] = du/(2 (xi - i))
        let x = dxn_of_u()
            .scale_rat(&BoundaryRational::inv_xi2_pow(1))
            .scale_gaussian(&i);
        let got = pi_plus(&x).unwrap();
        let expect = dxn_of_u().scale_rat(&up(1).scale_gaussian(&GaussianRational::ratio(1, 2)));
        lines.push(line("pi+ of i*du/|xi|^2", got == expect, ""));

        // pi+ [i xi dv /|xi|^2] = i dv/(2 (xi - i))
        let x = dxn_of_v()
            .scale_rat(&BoundaryRational::xi().mul(&BoundaryRational::inv_xi2_pow(1)))
            .scale_gaussian(&i);
        let got = pi_plus(&x).unwrap();
        let expect =
            dxn_of_v().scale_rat(&up(1).scale_gaussian(&GaussianRational::ratio_i(1, 2)));
        lines.push(line("pi+ of i*xi*dv/|xi|^2", got == expect, ""));

        // pi+ [xi^2 c(xi)/|xi|^4] = (-i xi u + (2 xi - i) v)/(4 (xi - i)^2)
        let x = c_xi.scale_rat(
            &BoundaryRational::xi_pow(2).mul(&BoundaryRational::inv_xi2_pow(2)),
        );
        let got = pi_plus(&x).unwrap();
        let expect_u = up(2).mul(
            &BoundaryRational::xi().scale_gaussian(&GaussianRational::ratio_i(-1, 4)),
        );
        let expect_v = up(2).mul(&BoundaryRational::new(
            XiPoly::from_coeffs(vec![
                ParamPoly::constant(GaussianRational::ratio_i(-1, 4)),
                ParamPoly::ratio(1, 2),
            ]),
            0,
            0,
        ));
        lines.push(line(
            "pi+ of xi^2 c(xi)/|xi|^4",
            got.cu == expect_u && got.cv == expect_v,
            "",
        ));

        // pi+ sigma_{-1}(D^{-1}) = (u + i v)/(2 (xi - i))
        let t = inverse_table(1, 4).unwrap();
        let got = pi_plus(&t.get(-1).unwrap().value).unwrap();
        let half_up = up(1).scale_gaussian(&GaussianRational::ratio(1, 2));
        let expect = CliffordElement::from_basis(
            BoundaryRational::zero(),
            half_up.clone(),
            half_up.scale_gaussian(&i),
            BoundaryRational::zero(),
        );
        lines.push(line("pi+ of sigma_-1(D^-1)", got == expect, ""));
    })
}

// ---------------------------------------------------------------- criterion 3

/// Oracle arbitration at a few pseudorandom parameter points: does the
/// numeric path reproduce the engine's symbolic value?
fn oracle_confirms(
    n: u32,
    p1: u32,
    p2: u32,
    label: CaseLabel,
    tol: f64,
) -> Result<bool, String> {
    let specs = enumerate_cases(n, p1, p2).map_err(|e| e.to_string())?;
    let tables = tables_for(n, p1, p2).map_err(|e| e.to_string())?;
    let spec = specs.iter().find(|s| s.label == label).unwrap();
    let value = engine::case_value(spec, n, p1, p2, &tables)
        .map_err(|e| e.to_string())?
        .value;
    let cfg = OracleConfig::default();
    for (a, b) in [(0.7, -1.3), (1.9, 0.4)] {
        let sym = value.eval_f64(a, b);
        let num = numeric_case(spec, n, &tables, a, b, &cfg).map_err(|e| e.to_string())?;
        if !compare(sym, num, tol).pass {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-case values against the printed tables, exact; deviations are
/// arbitrated by the oracle and classified through the registry.
pub fn criterion3_case_values(opts: &SuiteOptions) -> CriterionResult {
    timed(3, "per-case boundary values vs printed tables", |lines| {
        for (n, p1, p2) in SUPPORTED_CONFIGS {
            let report = match phi_total(n, p1, p2) {
                Ok(r) => r,
                Err(e) => {
                    lines.push(line(format!("({n},{p1},{p2})"), false, e.to_string()));
                    continue;
                }
            };
            for case in &report.cases {
                let label = case.contribution.spec.label;
                let name = format!("({n},{p1},{p2}) case {label}");
                if case.agrees {
                    lines.push(line(name, true, case.contribution.value.to_string()));
                    continue;
                }
                // arbitration path
                let confirmed = oracle_confirms(n, p1, p2, label, opts.tol);
                let detail_base = format!(
                    "derived {} vs printed {}",
                    case.contribution.value.to_expr().render(),
                    case.paper_value.render()
                );
                match (confirmed, case.registry_id) {
                    (Ok(true), Some(id)) => {
                        let d = registry::lookup(id).unwrap();
                        let status = match d.class {
                            DiscrepancyClass::Intermediate => CheckStatus::Note,
                            DiscrepancyClass::FinalConflict => CheckStatus::Fail,
                        };
                        lines.push(CheckLine {
                            name,
                            status,
                            detail: format!(
                                "{detail_base}; oracle confirms the derivation; registered '{id}'"
                            ),
                        });
                    }
                    (Ok(true), None) => lines.push(CheckLine {
                        name,
                        status: CheckStatus::Fail,
                        detail: format!("{detail_base}; oracle confirms but unregistered"),
                    }),
                    (Ok(false), _) => lines.push(CheckLine {
                        name,
                        status: CheckStatus::Fail,
                        detail: format!("{detail_base}; oracle CONTRADICTS the engine"),
                    }),
                    (Err(e), _) => lines.push(CheckLine {
                        name,
                        status: CheckStatus::Fail,
                        detail: format!("{detail_base}; oracle error: {e}"),
                    }),
                }
            }
        }
    })
}

// ---------------------------------------------------------------- criterion 4

/// The boundary-term totals. The (6,1,3) total is asserted against the
/// printed value, which the derivation contradicts (registered final
/// conflict): that check fails honestly.
pub fn criterion4_totals() -> CriterionResult {
    timed(4, "boundary-term totals", |lines| {
        let zero = Expr::zero();
        for (n, p1, p2) in [(4u32, 1u32, 1u32), (6, 2, 2)] {
            let total = phi_total(n, p1, p2).unwrap().phi_total.to_expr();
            lines.push(line(
                format!("Phi({n},{p1},{p2}) = 0"),
                total == zero,
                total.render(),
            ));
        }
        // n = 3: magnitude (pi/2) S(1); the printed value carries an extra i
        // from the omitted prefactor (registered convention divergence)
        let t3 = phi_total(3, 1, 1).unwrap().phi_total;
        let expect = parse("(1/2)*pi*S(1)").unwrap();
        let printed = paper_phi_expr(3, 1, 1);
        let magnitude_ok = t3.to_expr() == expect
            && printed == parse("(1/2)*i*pi*S(1)").unwrap();
        lines.push(line(
            "Phi(3,1,1) magnitude (1/2)*pi*S(1), printed form i/2 (convention note)",
            magnitude_ok,
            t3.to_expr().render(),
        ));

        // the (6,1,3) total as printed -- the derivation gives 0; this is the
        // registered final conflict and the assertion is kept as stated
        let t613 = phi_total(6, 1, 3).unwrap();
        let printed = paper_phi_expr(6, 1, 3);
        let ok = t613.phi_total.to_expr() == printed;
        let d = registry::lookup("cubic-boundary-total").unwrap();
        lines.push(line(
            "Phi(6,1,3) = (-1/16)*(40*a - 11*b)*pi*S(4) as printed",
            ok,
            format!(
                "derived {}; registered final conflict '{}': {}",
                t613.phi_total.to_expr().render(),
                d.id,
                d.note
            ),
        ));
    })
}

// ---------------------------------------------------------------- criterion 5

/// Gravitational identifications at b = a. res23 is asserted against the
/// printed theorem ratio, which the derivation contradicts (registered final
/// conflict): that check fails honestly.
pub fn criterion5_gravitational() -> CriterionResult {
    timed(5, "gravitational-action identifications (b = a)", |lines| {
        for name in [ResName::Res11, ResName::Res21, ResName::Res22, ResName::Res23] {
            let rf = res_form(name, true).unwrap();
            let ratio = rf.ratio.unwrap();
            let expect = paper_ratio_expr(name);
            let ok = ratio == expect;
            let detail = if ok {
                ratio.render()
            } else {
                let d = registry::lookup("res23-ratio").unwrap();
                format!(
                    "derived {} vs printed {}; registered final conflict '{}': {}",
                    ratio.render(),
                    expect.render(),
                    d.id,
                    d.note
                )
            };
            lines.push(line(
                format!("{} ratio to I_Gr_b", name.name()),
                ok,
                detail,
            ));
        }
    })
}

// ---------------------------------------------------------------- criterion 6

pub fn criterion6_special_constant() -> CriterionResult {
    timed(6, "special proportionality constant", |lines| {
        match solve_special_c() {
            Ok(sc) => {
                let expect = parse("40/11 + (6400/33)*Omega_5/Omega_4").unwrap();
                lines.push(line(
                    "c = 40/11 + 6400 Omega_5/(33 Omega_4) from the cited density",
                    sc.expr == expect,
                    sc.expr.render(),
                ));
                lines.push(line(
                    "derived boundary term flagged degenerate for this solve",
                    sc.derived_degenerate,
                    "",
                ));
            }
            Err(e) => lines.push(line("solve_special_c", false, e.to_string())),
        }
    })
}

// ---------------------------------------------------------------- criterion 7

/// The printed d/dxi_n sigma_{-4}(D^{-3}) of the source, reduced to the
/// basis (c(xi')c(dx_n)c(xi') = v and the substitution rule applied).
fn printed_dxi_sigma_m4() -> CliffordElement {
    let den5 = BoundaryRational::inv_xi2_pow(5)
        .scale_gaussian(&GaussianRational::ratio(1, 2));
    let den4 = BoundaryRational::inv_xi2_pow(4);
    let poly = |coeffs: Vec<(i64, i64)>| -> BoundaryRational {
        // coefficient list by xi-power: (a-coeff, b-coeff)
        BoundaryRational::new(
            XiPoly::from_coeffs(
                coeffs
                    .into_iter()
                    .map(|(ca, cb)| {
                        ParamPoly::linear(
                            GaussianRational::from_int(ca),
                            GaussianRational::from_int(cb),
                        )
                    })
                    .collect(),
            ),
            0,
            0,
        )
    };
    let scalar_poly = |coeffs: Vec<i64>| -> BoundaryRational {
        BoundaryRational::new(
            XiPoly::from_coeffs(
                coeffs
                    .into_iter()
                    .map(|c| ParamPoly::constant(GaussianRational::from_int(c)))
                    .collect(),
            ),
            0,
            0,
        )
    };
    // c(xi')c(dx_n)c(xi') = v; uv*du = (a/2) v; uv*dv = (b/2) u
    let mut acc = CliffordElement::v()
        .scale_rat(&den5.mul(&poly(vec![(0, 0), (59, 8), (0, 0), (27, -24)])));
    acc = acc.add(
        &CliffordElement::u()
            .scale_rat(&den5.mul(&poly(vec![(33, 0), (0, 0), (-180, -48), (0, 0), (-85, 80)]))),
    );
    acc = acc.add(
        &CliffordElement::v().scale_rat(
            &den5.mul(&poly(vec![(0, 0), (49, 0), (0, 0), (-97, -48), (0, 0), (-50, 48)])),
        ),
    );
    // -6 xi/(1+xi^2)^4 * uv*du
    acc = acc.add(
        &CliffordElement::v()
            .scale(&ParamPoly::var_a().scale(&GaussianRational::ratio(1, 2)))
            .scale_rat(&den4.mul(&scalar_poly(vec![0, -6]))),
    );
    // (-3 + 15 xi^2)/(1+xi^2)^4 * du
    acc = acc.add(&dxn_of_u().scale_rat(&den4.mul(&scalar_poly(vec![-3, 0, 15]))));
    // (1 - 5 xi^2)/(1+xi^2)^4 * uv*dv
    acc = acc.add(
        &CliffordElement::u()
            .scale(&ParamPoly::var_b().scale(&GaussianRational::ratio(1, 2)))
            .scale_rat(&den4.mul(&scalar_poly(vec![1, 0, -5]))),
    );
    // (-6 xi + 12 xi^3)/(1+xi^2)^4 * dv
    acc.add(&dxn_of_v().scale_rat(&den4.mul(&scalar_poly(vec![0, -6, 0, 12]))))
}

pub fn criterion7_composition(opts: &SuiteOptions) -> CriterionResult {
    timed(7, "composition self-consistency", |lines| {
        for n in [3u32, 4, 6] {
            let c = compose_tables(&dirac_table(n).unwrap(), &inverse_table(1, n).unwrap())
                .unwrap();
            let ok = c.get(0).unwrap().value == CliffordElement::one()
                && c.get(-1).unwrap().value.is_zero();
            lines.push(line(format!("sigma(D o D^-1) = 1 + 0, n={n}"), ok, ""));
        }
        for n in [4u32, 6] {
            let d1 = inverse_table(1, n).unwrap();
            let composed = compose_tables(&d1, &d1).unwrap();
            let direct = inverse_table(2, n).unwrap();
            let ok = composed.get(-2).unwrap().value == direct.get(-2).unwrap().value
                && composed.get(-3).unwrap().value == direct.get(-3).unwrap().value;
            lines.push(line(
                format!("composed sigma(D^-1 o D^-1) matches the direct D^-2 table, n={n}"),
                ok,
                "both orders, contracted tangential term included",
            ));
        }
        // composed d/dxi sigma_{-4}(D^{-3}) against the printed form
        let d3 = inverse_table(3, 6).unwrap();
        let composed = d3.get(-4).unwrap().value.xi_diff(1);
        let printed = printed_dxi_sigma_m4();
        if composed == printed {
            lines.push(line("composed d/dxi sigma_-4(D^-3) matches the printed form", true, ""));
        } else {
            // the explicitly allowed branch: oracle-arbitrated and registered
            let confirmed = oracle_confirms(6, 1, 3, CaseLabel::C, opts.tol);
            let d = registry::lookup("cubic-subleading-symbol-chain").unwrap();
            let ok = matches!(confirmed, Ok(true));
            lines.push(CheckLine {
                name: "composed d/dxi sigma_-4(D^-3) vs printed form".into(),
                status: if ok { CheckStatus::Note } else { CheckStatus::Fail },
                detail: format!(
                    "differs from the printed form; oracle {} the composed chain; registered '{}'",
                    if ok { "confirms" } else { "CONTRADICTS" },
                    d.id
                ),
            });
        }
    })
}

// ---------------------------------------------------------------- criterion 8

/// Full oracle arbitration: every case of every configuration at seeded
/// random (a, b) pairs.
pub fn criterion8_oracle(opts: &SuiteOptions) -> CriterionResult {
    timed(8, "quadrature-oracle arbitration", |lines| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for (n, p1, p2) in SUPPORTED_CONFIGS {
            let specs = enumerate_cases(n, p1, p2).unwrap();
            let tables = tables_for(n, p1, p2).unwrap();
            for spec in &specs {
                let value = engine::case_value(spec, n, p1, p2, &tables).unwrap().value;
                let mut worst = 0.0_f64;
                let mut ok = true;
                for _ in 0..opts.trials {
                    let a = rng.gen_range(-2.0..2.0);
                    let b = rng.gen_range(-2.0..2.0);
                    let sym = value.eval_f64(a, b);
                    match numeric_case(spec, n, &tables, a, b, &OracleConfig::default()) {
                        Ok(num) => {
                            let v = compare(sym, num, opts.tol);
                            worst = worst.max(v.measured);
                            ok &= v.pass;
                        }
                        Err(e) => {
                            ok = false;
                            lines.push(line(
                                format!("({n},{p1},{p2}) case {} oracle", spec.label),
                                false,
                                e.to_string(),
                            ));
                            break;
                        }
                    }
                }
                lines.push(line(
                    format!(
                        "({n},{p1},{p2}) case {}: {} trials",
                        spec.label, opts.trials
                    ),
                    ok,
                    format!("worst deviation {worst:.2e}"),
                ));
            }
        }
    })
}

// ---------------------------------------------------------------- criterion 9

fn random_param(rng: &mut ChaCha8Rng) -> ParamPoly {
    let mut c = |max: i64| GaussianRational::new(
        brat(rng.gen_range(-max..=max), rng.gen_range(1..=4)),
        brat(rng.gen_range(-max..=max), rng.gen_range(1..=4)),
    );
    ParamPoly::constant(c(3))
        .add(&ParamPoly::var_a().scale(&c(3)))
        .add(&ParamPoly::var_b().scale(&c(3)))
}

fn random_rational(rng: &mut ChaCha8Rng) -> BoundaryRational {
    let pu = rng.gen_range(0..=3u32);
    let pd = rng.gen_range(0..=3u32);
    let deg_cap = (pu + pd) as i64 - 1;
    let deg = if deg_cap < 0 { 0 } else { rng.gen_range(0..=deg_cap) as usize };
    let coeffs: Vec<ParamPoly> = (0..=deg).map(|_| random_param(rng)).collect();
    BoundaryRational::new(XiPoly::from_coeffs(coeffs), pu, pd)
}

fn random_decaying(rng: &mut ChaCha8Rng) -> BoundaryRational {
    loop {
        let x = random_rational(rng);
        if x.decays() && !x.is_zero() {
            return x;
        }
    }
}

fn random_element(rng: &mut ChaCha8Rng) -> CliffordElement {
    CliffordElement::from_basis(
        random_decaying(rng),
        random_decaying(rng),
        random_decaying(rng),
        random_decaying(rng),
    )
}

fn random_param_const(rng: &mut ChaCha8Rng) -> ParamPoly {
    ParamPoly::constant(GaussianRational::new(
        brat(rng.gen_range(-3..=3), rng.gen_range(1..=4)),
        brat(rng.gen_range(-3..=3), rng.gen_range(1..=4)),
    ))
}

/// Parameter-free element: products against these stay inside the (a, b)
/// degree window, matching how products arise in the calculus.
fn random_element_const(rng: &mut ChaCha8Rng) -> CliffordElement {
    let mut coeff = |rng: &mut ChaCha8Rng| {
        let pu = rng.gen_range(0..=2u32);
        let pd = rng.gen_range(0..=2u32);
        let cap = (pu + pd) as i64 - 1;
        let deg = if cap < 0 { 0 } else { rng.gen_range(0..=cap) as usize };
        let coeffs: Vec<ParamPoly> = (0..=deg).map(|_| random_param_const(rng)).collect();
        BoundaryRational::new(XiPoly::from_coeffs(coeffs), pu, pd)
    };
    CliffordElement::from_basis(coeff(rng), coeff(rng), coeff(rng), coeff(rng))
}

pub fn criterion9_properties(opts: &SuiteOptions) -> CriterionResult {
    timed(9, "randomized property suites", |lines| {
        let trials = 100usize;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9e3779b97f4a7c15);

        let mut ok = true;
        for _ in 0..trials {
            let x = random_element(&mut rng);
            let plus = x.pi_plus().unwrap();
            let minus = x.pi_minus().unwrap();
            ok &= plus.add(&minus) == x;
            ok &= plus.pi_plus().unwrap() == plus;
        }
        lines.push(line(
            format!("partial-fraction reconstruction + idempotence ({trials} trials)"),
            ok,
            "",
        ));

        let mut ok = true;
        for _ in 0..trials {
            let x = random_decaying(&mut rng);
            let y = random_decaying(&mut rng);
            let lin = x
                .add(&y)
                .principal_part_upper()
                .unwrap()
                .sub(&x.principal_part_upper().unwrap())
                .sub(&y.principal_part_upper().unwrap());
            ok &= lin.is_zero();
        }
        lines.push(line(format!("pi^+ linearity ({trials} trials)"), ok, ""));

        let mut ok = true;
        let d = SpinorDim::new(4).unwrap();
        for _ in 0..trials {
            let x = random_element(&mut rng);
            let y = random_element_const(&mut rng);
            let xy = x.mul(&y).unwrap().trace(d);
            let yx = y.mul(&x).unwrap().trace(d);
            ok &= xy == yx;
        }
        lines.push(line(format!("trace cyclicity ({trials} trials)"), ok, ""));

        // case-value (a,b)-linearity and lambda-scaling at random rationals
        let mut ok = true;
        let samples = trials / 10;
        'outer: for _ in 0..samples {
            for (n, p1, p2) in [(4, 1, 1), (6, 1, 3)] {
                let specs = enumerate_cases(n, p1, p2).unwrap();
                let tables = tables_for(n, p1, p2).unwrap();
                for spec in &specs {
                    if spec.label == CaseLabel::AI {
                        continue;
                    }
                    let v = engine::case_value(spec, n, p1, p2, &tables).unwrap().value;
                    let av = brat(rng.gen_range(-8..8), rng.gen_range(1..=5));
                    let bv = brat(rng.gen_range(-8..8), rng.gen_range(1..=5));
                    let lam = brat(rng.gen_range(1..8), rng.gen_range(1..=5));
                    let base = v.coeff.eval(&av, &bv);
                    let scaled = v.coeff.eval(&(&av * &lam), &(&bv * &lam));
                    let zero = v.coeff.eval(&brat(0, 1), &brat(0, 1));
                    if !zero.is_zero() && spec.label != CaseLabel::Direct {
                        ok = false;
                        break 'outer;
                    }
                    if spec.label != CaseLabel::Direct
                        && scaled != &base * &GaussianRational::from_rational(lam.clone())
                    {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        lines.push(line(
            format!("case-value (a,b)-linearity and scaling ({samples} sampled rounds)"),
            ok,
            "",
        ));

        let mut ok = true;
        for _ in 0..trials {
            let e = Expr::from_boundary_rational(&random_rational(&mut rng));
            match parse(&e.render()) {
                Ok(back) => ok &= back == e,
                Err(_) => ok = false,
            }
            match parse(&e.render_plain()) {
                Ok(back) => ok &= back == e,
                Err(_) => ok = false,
            }
        }
        lines.push(line(
            format!("serialization round-trip ({trials} trials)"),
            ok,
            "",
        ));
    })
}

// ---------------------------------------------------------------- suites

pub fn run_paper_suite(opts: &SuiteOptions) -> Vec<CriterionResult> {
    vec![
        criterion1_trace_tables(),
        criterion2_projection_fixtures(),
        criterion3_case_values(opts),
        criterion4_totals(),
        criterion5_gravitational(),
        criterion6_special_constant(),
        criterion7_composition(opts),
        criterion8_oracle(opts),
        criterion9_properties(opts),
    ]
}

/// Internal consistency checks beyond the printed tables.
pub fn run_internal_suite(opts: &SuiteOptions) -> Vec<CriterionResult> {
    let assoc = timed(10, "associativity and factor-order invariance", |lines| {
        let d1 = inverse_table(1, 6).unwrap();
        let d2 = inverse_table(2, 6).unwrap();
        let left = compose_tables(&compose_tables(&d1, &d1).unwrap(), &d1).unwrap();
        let right = compose_tables(&d1, &compose_tables(&d1, &d1).unwrap()).unwrap();
        let swap = compose_tables(&d2, &d1).unwrap();
        let direct = inverse_table(3, 6).unwrap();
        for m in [-3, -4] {
            lines.push(line(
                format!("associativity at order {m}"),
                left.get(m).unwrap().value == right.get(m).unwrap().value,
                "",
            ));
            lines.push(line(
                format!("factor-order invariance at order {m}"),
                swap.get(m).unwrap().value == direct.get(m).unwrap().value,
                "",
            ));
        }
    });
    let commute = timed(11, "pi^+ commutes with xi_n-derivative", |lines| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5bd1e995);
        let mut ok = true;
        for _ in 0..100 {
            let x = random_decaying(&mut rng);
            let a = x.diff(1).principal_part_upper().unwrap();
            let b = x.principal_part_upper().unwrap().diff(1);
            ok &= a == b;
        }
        lines.push(line("d/dxi pi^+ = pi^+ d/dxi (100 trials)", ok, ""));
    });
    let shadow = timed(12, "numeric shadow of exact evaluation", |lines| {
        // unnormalized vs normalized floating evaluation agrees to 1e-12
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x2545f491);
        let mut ok = true;
        for _ in 0..100 {
            let x = random_rational(&mut rng);
            let y = random_rational(&mut rng);
            let sum = x.add(&y); // normalized result
            for k in 0..10 {
                let xi = num_complex::Complex64::new(-2.0 + 0.43 * k as f64, 0.0);
                let (a, b) = (0.37, -1.21);
                let direct = x.eval_complex(xi, a, b) + y.eval_complex(xi, a, b);
                let normal = sum.eval_complex(xi, a, b);
                let scale = direct.norm().max(1.0);
                ok &= (direct - normal).norm() / scale < 1e-12;
            }
        }
        lines.push(line(
            "normalized arithmetic matches unnormalized floating evaluation",
            ok,
            "",
        ));
    });
    vec![assoc, commute, shadow]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_1_2_pass() {
        assert_eq!(criterion1_trace_tables().status(), CheckStatus::Pass);
        assert_eq!(criterion2_projection_fixtures().status(), CheckStatus::Pass);
    }

    #[test]
    fn criterion6_passes() {
        assert_eq!(criterion6_special_constant().status(), CheckStatus::Pass);
    }

    #[test]
    fn internal_suite_passes() {
        for c in run_internal_suite(&SuiteOptions::default()) {
            assert_eq!(c.status(), CheckStatus::Pass, "{}", c.render());
        }
    }
}
