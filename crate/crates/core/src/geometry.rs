//! Boundary-geometry quantities from the metric 1-jet: connection
//! coefficients in the adapted orthonormal frame, contracted Christoffels,
//! second fundamental form and the boundary piece of the Einstein-Hilbert
//! action.
//!
//! The near-boundary metric is g = phi(x_n)^{-1} g_dM + psi(x_n) dx_n^2 with
//! phi(0) = psi(0) = 1; only a = phi'(0) and b = psi'(0) enter.

use crate::clifford::CliffordElement;
use crate::params::ParamPoly;
use crate::rat::GaussianRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricJet {
    pub n: u32,
}

impl MetricJet {
    pub fn new(n: u32) -> Self {
        MetricJet { n }
    }
}

/// One nonzero connection entry omega_{s,t}(e_i)(x_0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionEntry {
    pub s: u32,
    pub t: u32,
    pub frame_index: u32,
    pub value: ParamPoly,
}

/// The sparse table omega_{s,t}(e_i)(x_0): for i < n only
/// omega_{n,i}(e_i) = a/2 and omega_{i,n}(e_i) = -a/2 are nonzero.
pub fn connection_coeffs(m: MetricJet) -> Vec<ConnectionEntry> {
    let half_a = ParamPoly::var_a().scale(&GaussianRational::ratio(1, 2));
    let mut out = Vec::new();
    for i in 1..m.n {
        out.push(ConnectionEntry { s: m.n, t: i, frame_index: i, value: half_a.clone() });
        out.push(ConnectionEntry { s: i, t: m.n, frame_index: i, value: half_a.neg() });
    }
    out
}

/// Look up omega_{s,t}(e_i)(x_0); entries not in the sparse table are zero.
pub fn connection_coeff(m: MetricJet, s: u32, t: u32, i: u32) -> ParamPoly {
    connection_coeffs(m)
        .into_iter()
        .find(|e| e.s == s && e.t == t && e.frame_index == i)
        .map(|e| e.value)
        .unwrap_or_else(ParamPoly::zero)
}

/// sigma_0(D)(x_0) = -(1/4) sum_{i,s,t} omega_{s,t}(e_i) c(e_i)c(e_s)c(e_t),
/// contracted through the index reductions c(e_i)c(e_n)c(e_i) = c(e_n) and
/// c(e_i)^2 = -1 (i < n). Evaluates to -((n-1)/4) a v.
pub fn sigma0_from_connection(m: MetricJet) -> CliffordElement {
    let mut acc = CliffordElement::zero();
    for e in connection_coeffs(m) {
        // only (s,t) mixing a tangential index with n occur; both reduce to
        // multiples of c(e_n) = v
        let word_v_coeff = if e.s == m.n && e.t == e.frame_index {
            // c(e_i) c(e_n) c(e_i) = c(e_n)
            GaussianRational::one()
        } else if e.t == m.n && e.s == e.frame_index {
            // c(e_i) c(e_i) c(e_n) = -c(e_n)
            GaussianRational::from_int(-1)
        } else {
            GaussianRational::zero()
        };
        let contrib = CliffordElement::v()
            .scale(&e.value)
            .scale_gaussian(&(&word_v_coeff * &GaussianRational::ratio(-1, 4)));
        acc = acc.add(&contrib);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondFundamental {
    /// K(x_0) = -((n-1)/2) a (trace of the second fundamental form).
    pub k_scalar: ParamPoly,
    /// I_{Gr,b} = 2 * integral of K = -(n-1) a * Vol_dM (coefficient of the
    /// boundary volume).
    pub i_gr_b: ParamPoly,
}

/// K_{ii}(x_0) = -a/2 for i < n, else 0.
pub fn second_fundamental(m: MetricJet) -> SecondFundamental {
    let nm1 = (m.n - 1) as i64;
    let k_scalar = ParamPoly::var_a().scale(&GaussianRational::ratio(-nm1, 2));
    let i_gr_b = ParamPoly::var_a().scale(&GaussianRational::from_int(-nm1));
    SecondFundamental { k_scalar, i_gr_b }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Christoffels {
    /// Gamma^n(x_0) = ((n-1)/2) a + b/2; Gamma^k(x_0) = 0 for k < n.
    pub gamma_n: ParamPoly,
    /// The contracted tangential spin-connection term
    /// sum_{k<n} xi_k delta^k(x_0) with delta^k = (a/4) c(e_k)c(e_n): at
    /// |xi'| = 1 the sum is (a/4) c(xi')c(dx_n), i.e. (a/4) uv exactly.
    /// (Kept in the uv coefficient; discarding it under the sphere integral
    /// is valid only where a trace kills it first.)
    pub delta_contracted: CliffordElement,
}

pub fn christoffel_contract(m: MetricJet) -> Christoffels {
    let nm1 = (m.n - 1) as i64;
    let gamma_n = ParamPoly::var_a()
        .scale(&GaussianRational::ratio(nm1, 2))
        .add(&ParamPoly::var_b().scale(&GaussianRational::ratio(1, 2)));
    let delta_contracted =
        CliffordElement::uv().scale(&ParamPoly::var_a().scale(&GaussianRational::ratio(1, 4)));
    Christoffels { gamma_n, delta_contracted }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connection_table_n4() {
        let m = MetricJet::new(4);
        let half_a = ParamPoly::var_a().scale(&GaussianRational::ratio(1, 2));
        assert_eq!(connection_coeff(m, 4, 1, 1), half_a);
        assert_eq!(connection_coeff(m, 1, 4, 1), half_a.neg());
        assert!(connection_coeff(m, 1, 2, 3).is_zero());
    }

    #[test]
    fn sigma0_closed_forms() {
        for (n, num) in [(3u32, -2i64), (4, -3), (6, -5)] {
            let got = sigma0_from_connection(MetricJet::new(n));
            let expect = CliffordElement::v()
                .scale(&ParamPoly::var_a().scale(&GaussianRational::ratio(num, 4)));
            assert_eq!(got, expect, "n = {n}");
        }
    }

    #[test]
    fn second_fundamental_values() {
        let sf4 = second_fundamental(MetricJet::new(4));
        assert_eq!(
            sf4.k_scalar,
            ParamPoly::var_a().scale(&GaussianRational::ratio(-3, 2))
        );
        assert_eq!(
            sf4.i_gr_b,
            ParamPoly::var_a().scale(&GaussianRational::from_int(-3))
        );
        let sf6 = second_fundamental(MetricJet::new(6));
        assert_eq!(
            sf6.k_scalar,
            ParamPoly::var_a().scale(&GaussianRational::ratio(-5, 2))
        );
        assert_eq!(
            sf6.i_gr_b,
            ParamPoly::var_a().scale(&GaussianRational::from_int(-5))
        );
    }

    #[test]
    fn gamma_n_values() {
        let g6 = christoffel_contract(MetricJet::new(6)).gamma_n;
        assert_eq!(
            g6,
            ParamPoly::linear(
                GaussianRational::ratio(5, 2),
                GaussianRational::ratio(1, 2)
            )
        );
        let g4 = christoffel_contract(MetricJet::new(4)).gamma_n;
        assert_eq!(
            g4,
            ParamPoly::linear(
                GaussianRational::ratio(3, 2),
                GaussianRational::ratio(1, 2)
            )
        );
    }

    #[test]
    fn product_metric_is_flat() {
        // a = b = 0 wipes out everything first-order
        let sf = second_fundamental(MetricJet::new(6));
        assert!(sf.k_scalar.eval(&num::BigRational::from_integer(0.into()),
                                 &num::BigRational::from_integer(0.into())).is_zero());
    }
}
