//! Boundary-point 1-jet symbol tables for D, D^{-1}, D^{-2}, D^{-3} at x_0
//! with |xi'| = 1, and pseudodifferential composition on them.
//!
//! A table carries exactly the leading and subleading orders; each order is a
//! jet (value, normal derivative). Normal derivatives that would require
//! second-order metric jets are stored as `Unavailable` and consuming one is
//! an error, not a silent zero.

use crate::clifford::{dxn_of_u, dxn_of_v, CliffordElement, CliffordError};
use crate::geometry::{christoffel_contract, sigma0_from_connection, MetricJet};
use crate::params::ParamPoly;
use crate::rat::GaussianRational;
use crate::rational::BoundaryRational;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolError {
    #[error("unsupported manifold dimension {0} (supported: 3, 4, 6)")]
    UnsupportedDimension(u32),
    #[error("composition at order {order} needs symbol orders that are not in the table")]
    InsufficientOrders { order: i32 },
    #[error("normal-derivative jet of order {order} of {op} is unavailable: {reason}")]
    MissingNormalJet { op: String, order: i32, reason: &'static str },
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

/// Normal derivative slot of a jet.
#[derive(Clone, PartialEq, Eq)]
pub enum JetDeriv {
    Known(CliffordElement),
    /// Would require metric jets beyond first order (phi'', psi'').
    Unavailable(&'static str),
}

impl JetDeriv {
    pub fn known(&self) -> Option<&CliffordElement> {
        match self {
            JetDeriv::Known(e) => Some(e),
            JetDeriv::Unavailable(_) => None,
        }
    }
}

/// (value at x_0, d/dx_n at x_0) of one symbol order; all tangential
/// derivatives vanish identically at x_0 in the adapted coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffordJet {
    pub value: CliffordElement,
    pub dxn: JetDeriv,
}

impl CliffordJet {
    pub fn new(value: CliffordElement, dxn: CliffordElement) -> Self {
        CliffordJet { value, dxn: JetDeriv::Known(dxn) }
    }

    pub fn value_only(value: CliffordElement, reason: &'static str) -> Self {
        CliffordJet { value, dxn: JetDeriv::Unavailable(reason) }
    }

    pub fn zero() -> Self {
        CliffordJet::new(CliffordElement::zero(), CliffordElement::zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let dxn = match (&self.dxn, &rhs.dxn) {
            (JetDeriv::Known(a), JetDeriv::Known(b)) => JetDeriv::Known(a.add(b)),
            (JetDeriv::Unavailable(r), _) | (_, JetDeriv::Unavailable(r)) => {
                JetDeriv::Unavailable(r)
            }
        };
        CliffordJet { value: self.value.add(&rhs.value), dxn }
    }

    /// Leibniz product: (fg)' = f'g + fg'.
    pub fn mul(&self, rhs: &Self) -> Result<Self, CliffordError> {
        let value = self.value.mul(&rhs.value)?;
        let dxn = match (&self.dxn, &rhs.dxn) {
            (JetDeriv::Known(da), JetDeriv::Known(db)) => {
                JetDeriv::Known(da.mul(&rhs.value)?.add(&self.value.mul(db)?))
            }
            (JetDeriv::Unavailable(r), _) | (_, JetDeriv::Unavailable(r)) => {
                JetDeriv::Unavailable(r)
            }
        };
        Ok(CliffordJet { value, dxn })
    }

    /// Componentwise k-th xi_n-derivative of value and normal jet.
    pub fn xi_diff(&self, k: u32) -> Self {
        let dxn = match &self.dxn {
            JetDeriv::Known(e) => JetDeriv::Known(e.xi_diff(k)),
            JetDeriv::Unavailable(r) => JetDeriv::Unavailable(r),
        };
        CliffordJet { value: self.value.xi_diff(k), dxn }
    }
}

impl fmt::Debug for CliffordJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "value: {}", self.value)?;
        match &self.dxn {
            JetDeriv::Known(e) => write!(f, "; dxn: {}", e),
            JetDeriv::Unavailable(r) => write!(f, "; dxn: <unavailable: {r}>"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SymbolTable {
    pub op: String,
    pub orders: BTreeMap<i32, CliffordJet>,
}

impl SymbolTable {
    pub fn leading_order(&self) -> i32 {
        *self.orders.keys().max().expect("empty symbol table")
    }

    pub fn get(&self, order: i32) -> Option<&CliffordJet> {
        self.orders.get(&order)
    }

    pub fn require(&self, order: i32) -> Result<&CliffordJet, SymbolError> {
        self.orders
            .get(&order)
            .ok_or(SymbolError::InsufficientOrders { order })
    }

    pub fn require_dxn(&self, order: i32) -> Result<&CliffordElement, SymbolError> {
        match &self.require(order)?.dxn {
            JetDeriv::Known(e) => Ok(e),
            JetDeriv::Unavailable(reason) => Err(SymbolError::MissingNormalJet {
                op: self.op.clone(),
                order,
                reason,
            }),
        }
    }
}

fn check_dim(n: u32) -> Result<MetricJet, SymbolError> {
    match n {
        3 | 4 | 6 => Ok(MetricJet::new(n)),
        other => Err(SymbolError::UnsupportedDimension(other)),
    }
}

/// d/dx_n [c(xi)](x_0) = d/dx_n[c(xi')] + xi_n d/dx_n[c(dx_n)].
fn dxn_of_c_xi() -> CliffordElement {
    dxn_of_u().add(&dxn_of_v().scale_rat(&BoundaryRational::xi()))
}

/// d/dx_n (|xi|^2)(x_0) = a - b xi_n^2 at |xi'| = 1, as a scalar multiplier.
fn dxi2() -> BoundaryRational {
    BoundaryRational::from_param(ParamPoly::var_a())
        .sub(&BoundaryRational::xi_pow(2).scale(&ParamPoly::var_b()))
}

/// sigma(D): order 1 is i c(xi); order 0 is the connection contraction
/// -((n-1)/4) a c(dx_n), whose normal jet would need second metric jets.
pub fn dirac_table(n: u32) -> Result<SymbolTable, SymbolError> {
    let m = check_dim(n)?;
    let i = GaussianRational::i();
    let sigma1 = CliffordJet::new(
        CliffordElement::c_xi().scale_gaussian(&i),
        dxn_of_c_xi().scale_gaussian(&i),
    );
    let sigma0 = CliffordJet::value_only(
        sigma0_from_connection(m),
        "d/dx_n sigma_0(D) requires phi'', psi''; no enumerated case consumes it",
    );
    Ok(SymbolTable {
        op: "D".into(),
        orders: BTreeMap::from([(1, sigma1), (0, sigma0)]),
    })
}

/// sigma(D^{-1}) at x_0, |xi'| = 1: the two leading orders.
fn dirac_inverse_table(n: u32) -> Result<SymbolTable, SymbolError> {
    let m = check_dim(n)?;
    let i = GaussianRational::i();
    let inv_xi2 = BoundaryRational::inv_xi2_pow(1);
    let inv_xi4 = BoundaryRational::inv_xi2_pow(2);
    let inv_xi6 = BoundaryRational::inv_xi2_pow(3);
    let c_xi = CliffordElement::c_xi();

    // sigma_{-1} = i c(xi)/|xi|^2; its normal jet from the quotient rule.
    let s1_value = c_xi.scale_rat(&inv_xi2).scale_gaussian(&i);
    let s1_dxn = dxn_of_c_xi()
        .scale_rat(&inv_xi2)
        .scale_gaussian(&i)
        .add(&c_xi.scale_rat(&inv_xi4.mul(&dxi2())).scale_gaussian(&(-&i)));
    let sigma_m1 = CliffordJet::new(s1_value, s1_dxn);

    // sigma_{-2} = c sigma_0(D) c/|xi|^4 + c v d/dxn[c(xi)]/|xi|^4
    //              - c v c (a - b xi^2)/|xi|^6
    let sigma0 = sigma0_from_connection(m);
    let v = CliffordElement::v();
    let t1 = c_xi
        .mul(&sigma0)
        .and_then(|x| x.mul(&c_xi))
        .map(|x| x.scale_rat(&inv_xi4))?;
    let t2 = c_xi
        .mul(&v)
        .and_then(|x| x.mul(&dxn_of_c_xi()))
        .map(|x| x.scale_rat(&inv_xi4))?;
    let t3 = c_xi
        .mul(&v)
        .and_then(|x| x.mul(&c_xi))
        .map(|x| x.scale_rat(&inv_xi6.mul(&dxi2())).neg())?;
    let sigma_m2 = CliffordJet::value_only(
        t1.add(&t2).add(&t3),
        "d/dx_n sigma_{-2}(D^{-1}) requires phi'', psi''",
    );

    Ok(SymbolTable {
        op: "D^-1".into(),
        orders: BTreeMap::from([(-1, sigma_m1), (-2, sigma_m2)]),
    })
}

/// sigma(D^{-2}) at x_0, |xi'| = 1, from the inverse-Laplacian closed forms
/// with the contracted Christoffel/spin-connection data. The contracted
/// tangential word sum_k xi_k delta^k is c(xi')c(dx_n) = uv exactly.
fn laplacian_inverse_table(n: u32) -> Result<SymbolTable, SymbolError> {
    let m = check_dim(n)?;
    let i = GaussianRational::i();
    let chr = christoffel_contract(m);
    let inv_xi2 = BoundaryRational::inv_xi2_pow(1);
    let inv_xi4 = BoundaryRational::inv_xi2_pow(2);
    let inv_xi6 = BoundaryRational::inv_xi2_pow(3);

    // sigma_{-2} = 1/|xi|^2
    let s2 = CliffordJet::new(
        CliffordElement::scalar(inv_xi2),
        CliffordElement::scalar(inv_xi4.mul(&dxi2()).neg()),
    );

    // sigma_{-3} = -i xi_n Gamma^n/|xi|^4 + 2i (sum_k xi_k delta^k)/|xi|^4
    //              - 2 i xi_n (a - b xi^2)/|xi|^6
    let t_gamma = CliffordElement::scalar(
        BoundaryRational::xi().mul(&inv_xi4).scale(&chr.gamma_n),
    )
    .scale_gaussian(&(-&i));
    let t_delta = chr
        .delta_contracted
        .scale_rat(&inv_xi4)
        .scale_gaussian(&(&i * &GaussianRational::from_int(2)));
    let t_dg = CliffordElement::scalar(
        BoundaryRational::xi()
            .mul(&inv_xi6)
            .mul(&dxi2())
            .scale_gaussian(&(&GaussianRational::from_int(-2) * &i)),
    );
    let s3 = CliffordJet::value_only(
        t_gamma.add(&t_delta).add(&t_dg),
        "d/dx_n sigma_{-3}(D^{-2}) requires phi'', psi''",
    );

    Ok(SymbolTable {
        op: "D^-2".into(),
        orders: BTreeMap::from([(-2, s2), (-3, s3)]),
    })
}

/// sigma(D^{-p}) for p in {1, 2, 3}. D^{-3} is composed as D^{-1} o D^{-2},
/// never transcribed.
pub fn inverse_table(p: u32, n: u32) -> Result<SymbolTable, SymbolError> {
    match p {
        1 => dirac_inverse_table(n),
        2 => laplacian_inverse_table(n),
        3 => {
            let mut t = compose_tables(&dirac_inverse_table(n)?, &laplacian_inverse_table(n)?)?;
            t.op = "D^-3".into();
            Ok(t)
        }
        _ => Err(SymbolError::InsufficientOrders { order: -(p as i32) }),
    }
}

/// Symbol composition at x_0, truncated to the two leading output orders:
///   sigma_m(AB) = sum_{r+l=m} sigma_r(A) sigma_l(B)
///               + sum_{r+l=m+1} d_{xi_n} sigma_r(A) * (-i) d_{x_n} sigma_l(B),
/// the tangential derivative terms vanishing identically at x_0. Jets are
/// propagated by Leibniz; a cross term makes the output normal jet
/// unavailable (it would need a second normal derivative of B).
pub fn compose_tables(a: &SymbolTable, b: &SymbolTable) -> Result<SymbolTable, SymbolError> {
    let lead = a.leading_order() + b.leading_order();
    let minus_i = -&GaussianRational::i();
    let mut orders = BTreeMap::new();
    for m in [lead, lead - 1] {
        let mut acc = CliffordJet::zero();
        let mut cross_present = false;
        for (&r, jet_a) in &a.orders {
            for (&l, jet_b) in &b.orders {
                if r + l == m {
                    acc = acc.add(&jet_a.mul(jet_b)?);
                }
                if r + l == m + 1 {
                    let da = jet_a.value.xi_diff(1);
                    let db = match &jet_b.dxn {
                        JetDeriv::Known(e) => e,
                        JetDeriv::Unavailable(reason) => {
                            return Err(SymbolError::MissingNormalJet {
                                op: b.op.clone(),
                                order: l,
                                reason,
                            })
                        }
                    };
                    let term = da.mul(&db.scale_gaussian(&minus_i))?;
                    acc = acc.add(&CliffordJet::value_only(
                        term,
                        "cross term of the composition: second normal jet not carried",
                    ));
                    cross_present = true;
                }
            }
        }
        let _ = cross_present;
        orders.insert(m, acc);
    }
    Ok(SymbolTable {
        op: format!("{} o {}", a.op, b.op),
        orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::CliffordElement;
    use crate::params::ParamPoly;
    use crate::rational::XiPoly;

    fn pp(ca: i64, cb: i64, den: i64) -> ParamPoly {
        ParamPoly::linear(
            GaussianRational::ratio(ca, den),
            GaussianRational::ratio(cb, den),
        )
    }

    #[test]
    fn sigma0_of_dirac_per_dimension() {
        for (n, num) in [(3u32, -1i64), (4, -3), (6, -5)] {
            let t = dirac_table(n).unwrap();
            let expect = CliffordElement::v().scale(&ParamPoly::var_a().scale(
                &GaussianRational::ratio(num, if n == 3 { 2 } else { 4 }),
            ));
            assert_eq!(t.get(0).unwrap().value, expect, "n = {n}");
        }
    }

    #[test]
    fn leading_inverse_symbol() {
        let t = inverse_table(1, 4).unwrap();
        let expect = CliffordElement::c_xi()
            .scale_rat(&BoundaryRational::inv_xi2_pow(1))
            .scale_gaussian(&GaussianRational::i());
        assert_eq!(t.get(-1).unwrap().value, expect);
    }

    #[test]
    fn cubic_inverse_leading_symbol() {
        // sigma_{-3}(D^{-3}) = i c(xi)/|xi|^4
        let t = inverse_table(3, 6).unwrap();
        let expect = CliffordElement::c_xi()
            .scale_rat(&BoundaryRational::inv_xi2_pow(2))
            .scale_gaussian(&GaussianRational::i());
        assert_eq!(t.get(-3).unwrap().value, expect);
    }

    #[test]
    fn inversion_identity() {
        // sigma(D o D^{-1}) = 1 at order 0 and 0 at order -1, exactly
        for n in [3u32, 4, 6] {
            let c = compose_tables(&dirac_table(n).unwrap(), &inverse_table(1, n).unwrap())
                .unwrap();
            assert_eq!(c.get(0).unwrap().value, CliffordElement::one(), "n = {n}");
            assert!(c.get(-1).unwrap().value.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn laplacian_inversion_identity() {
        // sigma(D^2) composed from D twice, then against the direct D^{-2} table
        for n in [4u32, 6] {
            let d = dirac_table(n).unwrap();
            let d2 = compose_tables(&d, &d).unwrap();
            let c = compose_tables(&d2, &inverse_table(2, n).unwrap()).unwrap();
            assert_eq!(c.get(0).unwrap().value, CliffordElement::one(), "n = {n}");
            assert!(c.get(-1).unwrap().value.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn composed_laplacian_inverse_matches_direct() {
        // sigma(D^{-1} o D^{-1}) reproduces the direct D^{-2} table at both
        // orders, including the contracted tangential uv term
        for n in [4u32, 6] {
            let d1 = inverse_table(1, n).unwrap();
            let composed = compose_tables(&d1, &d1).unwrap();
            let direct = inverse_table(2, n).unwrap();
            assert_eq!(
                composed.get(-2).unwrap().value,
                direct.get(-2).unwrap().value,
                "order -2, n = {n}"
            );
            assert_eq!(
                composed.get(-3).unwrap().value,
                direct.get(-3).unwrap().value,
                "order -3, n = {n}"
            );
        }
    }

    #[test]
    fn squared_leading_symbols_multiply() {
        let d1 = inverse_table(1, 6).unwrap();
        let c = compose_tables(&d1, &d1).unwrap();
        assert_eq!(
            c.get(-2).unwrap().value,
            CliffordElement::scalar(BoundaryRational::inv_xi2_pow(1))
        );
    }

    #[test]
    fn associativity_of_triple_inverse() {
        let d1 = inverse_table(1, 6).unwrap();
        let left = compose_tables(&compose_tables(&d1, &d1).unwrap(), &d1).unwrap();
        let right = compose_tables(&d1, &compose_tables(&d1, &d1).unwrap()).unwrap();
        for m in [-3, -4] {
            assert_eq!(left.get(m).unwrap().value, right.get(m).unwrap().value, "order {m}");
        }
        // and both agree with the shipped D^{-3} table
        let d3 = inverse_table(3, 6).unwrap();
        for m in [-3, -4] {
            assert_eq!(left.get(m).unwrap().value, d3.get(m).unwrap().value, "order {m}");
        }
    }

    #[test]
    fn cubic_inversion_identity() {
        // sigma(D^3 o D^{-3}) = 1 + 0 with D^3 composed from D
        let d = dirac_table(6).unwrap();
        let d2 = compose_tables(&d, &d).unwrap();
        let d3 = compose_tables(&d2, &d).unwrap();
        let c = compose_tables(&d3, &inverse_table(3, 6).unwrap()).unwrap();
        assert_eq!(c.get(0).unwrap().value, CliffordElement::one());
        assert!(c.get(-1).unwrap().value.is_zero());
    }

    #[test]
    fn normal_jet_of_leading_inverse() {
        // d/dxn sigma_{-1}(D^{-1})(x_0) =
        //   i du/|xi|^2 + i xi dv/|xi|^2 - i(a - b xi^2) c(xi)/|xi|^4
        let t = inverse_table(1, 4).unwrap();
        let got = t.require_dxn(-1).unwrap().clone();
        let i = GaussianRational::i();
        let expect = dxn_of_u()
            .add(&dxn_of_v().scale_rat(&BoundaryRational::xi()))
            .scale_rat(&BoundaryRational::inv_xi2_pow(1))
            .scale_gaussian(&i)
            .add(
                &CliffordElement::c_xi()
                    .scale_rat(&BoundaryRational::inv_xi2_pow(2).mul(&dxi2()))
                    .scale_gaussian(&(-&i)),
            );
        assert_eq!(got, expect);
    }

    #[test]
    fn second_xi_derivative_of_leading_inverse() {
        // d^2/dxi^2 sigma_{-1}(D^{-1}) =
        //   ((6i xi^2 - 2i) u + (2i xi^3 - 6i xi) v)/(1 + xi^2)^3
        let t = inverse_table(1, 4).unwrap();
        let got = t.get(-1).unwrap().value.xi_diff(2);
        let inv6 = BoundaryRational::inv_xi2_pow(3);
        let cu = inv6.mul(&BoundaryRational::new(
            XiPoly::from_coeffs(vec![
                ParamPoly::constant(GaussianRational::ratio_i(-2, 1)),
                ParamPoly::zero(),
                ParamPoly::constant(GaussianRational::ratio_i(6, 1)),
            ]),
            0,
            0,
        ));
        let cv = inv6.mul(&BoundaryRational::new(
            XiPoly::from_coeffs(vec![
                ParamPoly::zero(),
                ParamPoly::constant(GaussianRational::ratio_i(-6, 1)),
                ParamPoly::zero(),
                ParamPoly::constant(GaussianRational::ratio_i(2, 1)),
            ]),
            0,
            0,
        ));
        assert_eq!(got.cu, cu);
        assert_eq!(got.cv, cv);
    }

    #[test]
    fn first_xi_derivative_of_cubic_inverse() {
        // d/dxi sigma_{-3}(D^{-3}) = (-4i xi u + (i - 3i xi^2) v)/(1+xi^2)^3
        let t = inverse_table(3, 6).unwrap();
        let got = t.get(-3).unwrap().value.xi_diff(1);
        let inv6 = BoundaryRational::inv_xi2_pow(3);
        let cu = inv6
            .mul(&BoundaryRational::xi())
            .scale_gaussian(&GaussianRational::ratio_i(-4, 1));
        let cv = inv6.mul(&BoundaryRational::new(
            XiPoly::from_coeffs(vec![
                ParamPoly::constant(GaussianRational::i()),
                ParamPoly::zero(),
                ParamPoly::constant(GaussianRational::ratio_i(-3, 1)),
            ]),
            0,
            0,
        ));
        assert_eq!(got.cu, cu);
        assert_eq!(got.cv, cv);
    }

    #[test]
    fn derivative_of_constant_generator_vanishes() {
        let jet = CliffordJet::new(CliffordElement::u(), CliffordElement::zero());
        assert!(jet.xi_diff(1).value.is_zero());
    }

    #[test]
    fn consuming_unavailable_jet_is_an_error() {
        let t = dirac_table(4).unwrap();
        assert!(matches!(
            t.require_dxn(0),
            Err(SymbolError::MissingNormalJet { .. })
        ));
    }

    #[test]
    fn unsupported_dimension_rejected() {
        assert!(matches!(
            dirac_table(5),
            Err(SymbolError::UnsupportedDimension(5))
        ));
    }

    #[test]
    fn composed_sigma_m4_closed_form() {
        // sigma_{-4}(D^{-3})(x_0):
        //   u: xi ((4a - 5b) xi^2 + 10a + b) / (1+xi^2)^4
        //   v: (3/4) ((5a - 4b) xi^4 + (10a + 4b) xi^2 - 3a) / (1+xi^2)^4
        // (derived by composition; cross-checked against an independent
        //  matrix-differential-operator computation)
        let t = inverse_table(3, 6).unwrap();
        let got = &t.get(-4).unwrap().value;
        let inv8 = BoundaryRational::inv_xi2_pow(4);
        let cu = inv8.mul(&BoundaryRational::new(
            XiPoly::from_coeffs(vec![
                ParamPoly::zero(),
                pp(10, 1, 1),
                ParamPoly::zero(),
                pp(4, -5, 1),
            ]),
            0,
            0,
        ));
        let cv = inv8.mul(&BoundaryRational::new(
            XiPoly::from_coeffs(vec![
                pp(-9, 0, 4),
                ParamPoly::zero(),
                pp(30, 12, 4),
                ParamPoly::zero(),
                pp(15, -12, 4),
            ]),
            0,
            0,
        ));
        assert_eq!(got.cu, cu);
        assert_eq!(got.cv, cv);
        assert!(got.c1.is_zero() && got.cuv.is_zero() && !got.has_odd());
    }
}
