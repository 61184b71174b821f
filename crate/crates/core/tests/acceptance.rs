//! Acceptance suite: one test per criterion of the build contract, at the
//! stated tolerances, printing one line per check.
//!
//! Two checks assert printed theorem-level values that the first-principles
//! derivation contradicts (registered final conflicts, triple-arbitrated:
//! exact fiber engine, independent matrix-operator computation, quadrature
//! oracle). Those two tests fail by design and their messages carry the
//! evidence; see the registry for the full analysis.

use wres_core::engine::{paper_phi_expr, paper_ratio_expr, phi_total, res_form, ResName};
use wres_core::expr::parse;
use wres_core::oracle::{arbitrate_config, seeded_points};
use wres_core::registry;
use wres_core::verify::{
    criterion1_trace_tables, criterion2_projection_fixtures, criterion3_case_values,
    criterion4_totals, criterion5_gravitational, criterion6_special_constant,
    criterion7_composition, criterion8_oracle, criterion9_properties, CheckStatus, SuiteOptions,
};

fn opts() -> SuiteOptions {
    SuiteOptions::default()
}

#[test]
fn criterion1_trace_tables_exact() {
    let r = criterion1_trace_tables();
    print!("{}", r.render());
    assert_eq!(r.status(), CheckStatus::Pass);
    assert!(r.elapsed_ms < 1000, "runtime bound: < 1 s");
}

#[test]
fn criterion2_projection_fixtures_exact() {
    let r = criterion2_projection_fixtures();
    print!("{}", r.render());
    assert_eq!(r.status(), CheckStatus::Pass);
}

#[test]
fn criterion3_case_values_with_arbitration() {
    // deviations must trip the oracle arbitration path and be listed; an
    // oracle-confirmed deviation against a non-final printed case equation is
    // a registered note, not a failure
    let r = criterion3_case_values(&opts());
    print!("{}", r.render());
    assert_ne!(r.status(), CheckStatus::Fail, "{}", r.render());
    assert!(r.elapsed_ms < 10_000, "runtime bound: < 10 s total");
    let notes: Vec<_> = r
        .lines
        .iter()
        .filter(|l| l.status == CheckStatus::Note)
        .map(|l| l.name.clone())
        .collect();
    assert_eq!(
        notes,
        vec![
            "(3,1,1) case direct".to_string(),
            "(6,2,2) case b".to_string(),
            "(6,2,2) case c".to_string(),
            "(6,1,3) case c".to_string(),
        ],
        "exactly the registered case deviations"
    );
}

#[test]
fn criterion4_totals_symmetric_and_n3() {
    assert!(
        phi_total(4, 1, 1).unwrap().phi_total.is_zero(),
        "Phi(4,1,1) = 0"
    );
    assert!(
        phi_total(6, 2, 2).unwrap().phi_total.is_zero(),
        "Phi(6,2,2) = 0"
    );
    let t3 = phi_total(3, 1, 1).unwrap().phi_total.to_expr();
    assert_eq!(
        t3,
        parse("(1/2)*pi*S(1)").unwrap(),
        "Phi(3,1,1) magnitude (pi/2) S(1) under the uniform prefactor convention"
    );
    println!("criterion 4 (symmetric totals and n=3 magnitude): PASS");
}

#[test]
fn criterion4_total_6_1_3_as_printed() {
    // asserted exactly as stated in the acceptance table; the derivation
    // gives 0 (registered final conflict 'cubic-boundary-total'), so this
    // fails and the message carries the arbitration evidence
    let total = phi_total(6, 1, 3).unwrap().phi_total;
    let printed = paper_phi_expr(6, 1, 3);
    if total.to_expr() != printed {
        let points = seeded_points(7, 3);
        let rows = arbitrate_config(6, 1, 3, &points, 1e-9).unwrap();
        let oracle_ok = rows.iter().all(|r| r.pass);
        let d = registry::lookup("cubic-boundary-total").unwrap();
        panic!(
            "Phi(6,1,3): derived {} but the printed total is {}.\n\
             quadrature oracle {} the derived per-case values (worst deviation {:.1e}).\n\
             registered final conflict '{}': {}",
            total.to_expr().render(),
            printed.render(),
            if oracle_ok { "CONFIRMS" } else { "contradicts" },
            rows.iter().fold(0.0_f64, |m, r| m.max(r.worst)),
            d.id,
            d.note,
        );
    }
}

#[test]
fn criterion5_gravitational_identifications() {
    for (name, expect) in [
        (ResName::Res11, "(1/6)*pi*S(2)"),
        (ResName::Res21, "(-1/3)*pi*S(2)"),
        (ResName::Res22, "(3/20)*pi*S(4)"),
    ] {
        let got = res_form(name, true).unwrap().ratio.unwrap();
        assert_eq!(got, parse(expect).unwrap(), "{} ratio", name.name());
        println!("criterion 5 {}: PASS ({})", name.name(), expect);
    }
}

#[test]
fn criterion5_res23_as_printed() {
    // asserted exactly as stated; the derivation gives (7/20) pi S(4)
    // (registered final conflict 'res23-ratio'), so this fails with the
    // evidence in the message
    let got = res_form(ResName::Res23, true).unwrap().ratio.unwrap();
    let printed = paper_ratio_expr(ResName::Res23);
    if got != printed {
        let d = registry::lookup("res23-ratio").unwrap();
        panic!(
            "res23 ratio to I_Gr_b: derived {} but the printed theorem says {}.\n\
             registered final conflict '{}': {}",
            got.render(),
            printed.render(),
            d.id,
            d.note,
        );
    }
}

#[test]
fn criterion6_special_constant_exact() {
    let r = criterion6_special_constant();
    print!("{}", r.render());
    assert_eq!(r.status(), CheckStatus::Pass);
}

#[test]
fn criterion7_composition_self_consistency() {
    // the printed-vs-composed subleading cubic symbol deviation is
    // explicitly allowed to resolve by oracle arbitration + registration
    let r = criterion7_composition(&opts());
    print!("{}", r.render());
    assert_ne!(r.status(), CheckStatus::Fail, "{}", r.render());
}

#[test]
fn criterion8_oracle_arbitration() {
    let r = criterion8_oracle(&opts());
    print!("{}", r.render());
    assert_eq!(r.status(), CheckStatus::Pass, "{}", r.render());
    assert!(r.elapsed_ms < 60_000, "runtime bound: < 60 s");
}

#[test]
fn criterion9_property_suites() {
    let r = criterion9_properties(&opts());
    print!("{}", r.render());
    assert_eq!(r.status(), CheckStatus::Pass, "{}", r.render());
}
