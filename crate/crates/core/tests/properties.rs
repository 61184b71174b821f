//! Property tests over randomized exact data.

use proptest::prelude::*;
use wres_core::clifford::{CliffordElement, SpinorDim};
use wres_core::expr::{parse, Expr};
use wres_core::params::ParamPoly;
use wres_core::rat::{brat, GaussianRational};
use wres_core::rational::{BoundaryRational, XiPoly};

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3)
        .prop_map(|(a, b, c, d)| GaussianRational::new(brat(a, b), brat(c, d)))
}

fn param() -> impl Strategy<Value = ParamPoly> {
    (gaussian(), gaussian(), gaussian()).prop_map(|(c, ca, cb)| {
        ParamPoly::constant(c)
            .add(&ParamPoly::var_a().scale(&ca))
            .add(&ParamPoly::var_b().scale(&cb))
    })
}

fn param_const() -> impl Strategy<Value = ParamPoly> {
    gaussian().prop_map(ParamPoly::constant)
}

/// Rational functions with poles at +-i; numerator degree kept under the
/// pole order so everything decays.
fn decaying_rational() -> impl Strategy<Value = BoundaryRational> {
    (1u32..=2, 1u32..=2, proptest::collection::vec(param(), 1..=3)).prop_map(
        |(pu, pd, mut coeffs)| {
            coeffs.truncate((pu + pd) as usize);
            BoundaryRational::new(XiPoly::from_coeffs(coeffs), pu, pd)
        },
    )
}

/// Parameter-free variant; products of several of these stay inside the
/// degree window of the calculus (at most one factor may carry a, b).
fn decaying_rational_const() -> impl Strategy<Value = BoundaryRational> {
    (1u32..=2, 1u32..=2, proptest::collection::vec(param_const(), 1..=3)).prop_map(
        |(pu, pd, mut coeffs)| {
            coeffs.truncate((pu + pd) as usize);
            BoundaryRational::new(XiPoly::from_coeffs(coeffs), pu, pd)
        },
    )
}

/// Poles on one side only, with decay margin >= 2 so the line integral of
/// the part itself converges.
fn one_sided_integrable(upper: bool) -> impl Strategy<Value = BoundaryRational> {
    (2u32..=3, proptest::collection::vec(param(), 1..=2)).prop_map(move |(p, mut coeffs)| {
        coeffs.truncate((p - 1) as usize);
        let (pu, pd) = if upper { (p, 0) } else { (0, p) };
        BoundaryRational::new(XiPoly::from_coeffs(coeffs), pu, pd)
    })
}

fn element() -> impl Strategy<Value = CliffordElement> {
    (
        decaying_rational(),
        decaying_rational(),
        decaying_rational(),
        decaying_rational(),
    )
        .prop_map(|(c1, cu, cv, cuv)| CliffordElement::from_basis(c1, cu, cv, cuv))
}

fn element_const() -> impl Strategy<Value = CliffordElement> {
    (
        decaying_rational_const(),
        decaying_rational_const(),
        decaying_rational_const(),
        decaying_rational_const(),
    )
        .prop_map(|(c1, cu, cv, cuv)| CliffordElement::from_basis(c1, cu, cv, cuv))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_fraction_reconstruction(x in decaying_rational()) {
        let up = x.principal_part_upper().unwrap();
        let down = x.principal_part_lower().unwrap();
        prop_assert_eq!(up.add(&down), x);
        prop_assert_eq!(up.pole_down(), 0);
    }

    #[test]
    fn projection_idempotent_and_linear(x in decaying_rational(), y in decaying_rational()) {
        let px = x.principal_part_upper().unwrap();
        prop_assert_eq!(px.principal_part_upper().unwrap(), px.clone());
        let sum = x.add(&y).principal_part_upper().unwrap();
        prop_assert_eq!(sum, px.add(&y.principal_part_upper().unwrap()));
    }

    #[test]
    fn integral_sees_only_the_upper_part(
        u in one_sided_integrable(true),
        l in one_sided_integrable(false),
    ) {
        let x = u.add(&l);
        let whole = x.line_integral().unwrap();
        prop_assert_eq!(whole, u.line_integral().unwrap());
        // the lower part integrates to zero by closing the contour below
        prop_assert!(l.line_integral().unwrap().is_zero());
    }

    #[test]
    fn derivative_composition(x in decaying_rational()) {
        prop_assert_eq!(x.diff(1).diff(1), x.diff(2));
    }

    // at most one factor of a product carries the metric parameters, which is
    // exactly how products arise in the calculus
    #[test]
    fn clifford_mul_associative(x in element(), y in element_const(), z in element_const()) {
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn clifford_mul_bilinear(x in element(), y in element(), z in element_const()) {
        let distributed = x.add(&y).mul(&z).unwrap();
        let expanded = x.mul(&z).unwrap().add(&y.mul(&z).unwrap());
        prop_assert_eq!(distributed, expanded);
    }

    #[test]
    fn trace_cyclic(x in element(), y in element_const()) {
        let d = SpinorDim::new(6).unwrap();
        prop_assert_eq!(
            x.mul(&y).unwrap().trace(d),
            y.mul(&x).unwrap().trace(d)
        );
    }

    #[test]
    fn projection_lifts_componentwise(x in element()) {
        let split = x.pi_plus().unwrap().add(&x.pi_minus().unwrap());
        prop_assert_eq!(split, x);
    }

    #[test]
    fn expression_round_trip(x in decaying_rational()) {
        let e = Expr::from_boundary_rational(&x);
        prop_assert_eq!(parse(&e.render()).unwrap(), e.clone());
        prop_assert_eq!(parse(&e.render_plain()).unwrap(), e);
    }

    #[test]
    fn numeric_shadow_of_normal_form(x in decaying_rational(), y in decaying_rational_const()) {
        // exact arithmetic, then floating evaluation, matches floating
        // evaluation of the unnormalized combination
        let sum = x.add(&y);
        let prod = x.mul(&y);
        for k in 0..10 {
            let xi = num_complex::Complex64::new(-2.1 + 0.45 * (k as f64), 0.0);
            let (a, b) = (0.73, -1.37);
            let direct_sum = x.eval_complex(xi, a, b) + y.eval_complex(xi, a, b);
            let direct_prod = x.eval_complex(xi, a, b) * y.eval_complex(xi, a, b);
            let rel = |u: num_complex::Complex64, v: num_complex::Complex64| {
                (u - v).norm() / u.norm().max(1.0)
            };
            prop_assert!(rel(direct_sum, sum.eval_complex(xi, a, b)) < 1e-12);
            prop_assert!(rel(direct_prod, prod.eval_complex(xi, a, b)) < 1e-12);
        }
    }
}
