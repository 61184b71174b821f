//! Rational functions of the conormal variable xi_n whose poles are confined
//! to xi_n = +i and xi_n = -i, with `ParamPoly` coefficients.
//!
//! At |xi'| = 1 every denominator of the boundary calculus is a power of
//! |xi|^2 = 1 + xi_n^2 = (xi_n - i)(xi_n + i), so this class is closed under
//! sums, products and d/d xi_n, and both the half-line projection pi^+ and the
//! real-line integral have exact closed forms (principal parts / residues at
//! the upper pole). An operation that would produce any other pole cannot be
//! expressed and is therefore an error by construction, never a silent
//! extension.

use crate::params::ParamPoly;
use crate::rat::GaussianRational;
use num::rational::BigRational;
use num_complex::Complex64;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalcError {
    /// pi^+ of an expression that does not vanish at xi_n -> infinity.
    #[error("pi^+ undefined: numerator degree {num_degree} with pole order {pole_order} does not decay")]
    NonDecaying { num_degree: usize, pole_order: u32 },
    /// Real-line integral of an expression without an integrable tail.
    #[error("not absolutely integrable: numerator degree {num_degree}, pole order {pole_order}")]
    NotIntegrable { num_degree: usize, pole_order: u32 },
}

/// Polynomial in xi_n with `ParamPoly` coefficients (index = power of xi_n).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct XiPoly {
    coeffs: Vec<ParamPoly>,
}

impl XiPoly {
    pub fn zero() -> Self {
        XiPoly::default()
    }

    pub fn constant(p: ParamPoly) -> Self {
        let mut out = XiPoly { coeffs: vec![p] };
        out.trim();
        out
    }

    pub fn from_coeffs(coeffs: Vec<ParamPoly>) -> Self {
        let mut out = XiPoly { coeffs };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> ParamPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(ParamPoly::zero)
    }

    pub fn coeffs(&self) -> &[ParamPoly] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).add(&rhs.coeff(k)));
        }
        XiPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        XiPoly::from_coeffs(self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return XiPoly::zero();
        }
        let mut out = vec![ParamPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, ci) in self.coeffs.iter().enumerate() {
            for (j, cj) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&ci.mul(cj));
            }
        }
        XiPoly::from_coeffs(out)
    }

    pub fn scale(&self, p: &ParamPoly) -> Self {
        XiPoly::from_coeffs(self.coeffs.iter().map(|c| c.mul(p)).collect())
    }

    pub fn diff(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return XiPoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.scale(&GaussianRational::from_int(k as i64)));
        }
        XiPoly::from_coeffs(out)
    }

    /// Evaluate at a Gaussian-rational point.
    pub fn eval(&self, x: &GaussianRational) -> ParamPoly {
        let mut acc = ParamPoly::zero();
        // Horner
        for c in self.coeffs.iter().rev() {
            acc = acc.scale_gaussian(x).add(c);
        }
        acc
    }

    /// Divide by (xi_n - root); returns (quotient, remainder).
    pub fn div_linear(&self, root: &GaussianRational) -> (XiPoly, ParamPoly) {
        if self.is_zero() {
            return (XiPoly::zero(), ParamPoly::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![ParamPoly::zero(); n.saturating_sub(1)];
        let mut carry = ParamPoly::zero();
        for k in (0..n).rev() {
            let cur = self.coeffs[k].add(&carry);
            if k == 0 {
                return (XiPoly::from_coeffs(q), cur);
            }
            q[k - 1] = cur.clone();
            carry = cur.scale_gaussian(root);
        }
        unreachable!()
    }
}

trait ScaleGaussian {
    fn scale_gaussian(&self, c: &GaussianRational) -> Self;
}

impl ScaleGaussian for ParamPoly {
    fn scale_gaussian(&self, c: &GaussianRational) -> ParamPoly {
        self.scale(c)
    }
}

/// numerator / ((xi_n - i)^pole_up (xi_n + i)^pole_down), in normal form:
/// the numerator shares no root with the denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct BoundaryRational {
    num: XiPoly,
    pole_up: u32,
    pole_down: u32,
}

impl BoundaryRational {
    pub fn new(num: XiPoly, pole_up: u32, pole_down: u32) -> Self {
        let mut out = BoundaryRational { num, pole_up, pole_down };
        out.normalize();
        out
    }

    pub fn zero() -> Self {
        BoundaryRational { num: XiPoly::zero(), pole_up: 0, pole_down: 0 }
    }

    pub fn one() -> Self {
        Self::from_param(ParamPoly::one())
    }

    pub fn from_param(p: ParamPoly) -> Self {
        BoundaryRational { num: XiPoly::constant(p), pole_up: 0, pole_down: 0 }
    }

    pub fn from_gaussian(c: GaussianRational) -> Self {
        Self::from_param(ParamPoly::constant(c))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_gaussian(GaussianRational::ratio(num, den))
    }

    /// The monomial xi_n^k.
    pub fn xi_pow(k: usize) -> Self {
        let mut coeffs = vec![ParamPoly::zero(); k + 1];
        coeffs[k] = ParamPoly::one();
        BoundaryRational { num: XiPoly::from_coeffs(coeffs), pole_up: 0, pole_down: 0 }
    }

    pub fn xi() -> Self {
        Self::xi_pow(1)
    }

    /// 1 / ((xi_n - i)^p (xi_n + i)^q).
    pub fn inverse_poles(p: u32, q: u32) -> Self {
        BoundaryRational { num: XiPoly::constant(ParamPoly::one()), pole_up: p, pole_down: q }
    }

    /// 1 / (1 + xi_n^2)^k.
    pub fn inv_xi2_pow(k: u32) -> Self {
        Self::inverse_poles(k, k)
    }

    pub fn num(&self) -> &XiPoly {
        &self.num
    }

    pub fn pole_up(&self) -> u32 {
        self.pole_up
    }

    pub fn pole_down(&self) -> u32 {
        self.pole_down
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.pole_up = 0;
            self.pole_down = 0;
            return;
        }
        let i = GaussianRational::i();
        let minus_i = -&i;
        while self.pole_up > 0 {
            let (q, r) = self.num.div_linear(&i);
            if r.is_zero() {
                self.num = q;
                self.pole_up -= 1;
            } else {
                break;
            }
        }
        while self.pole_down > 0 {
            let (q, r) = self.num.div_linear(&minus_i);
            if r.is_zero() {
                self.num = q;
                self.pole_down -= 1;
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let pu = self.pole_up.max(rhs.pole_up);
        let pd = self.pole_down.max(rhs.pole_down);
        let lhs_num = raise(&self.num, pu - self.pole_up, pd - self.pole_down);
        let rhs_num = raise(&rhs.num, pu - rhs.pole_up, pd - rhs.pole_down);
        BoundaryRational::new(lhs_num.add(&rhs_num), pu, pd)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        BoundaryRational { num: self.num.neg(), pole_up: self.pole_up, pole_down: self.pole_down }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        BoundaryRational::new(
            self.num.mul(&rhs.num),
            self.pole_up + rhs.pole_up,
            self.pole_down + rhs.pole_down,
        )
    }

    pub fn scale(&self, p: &ParamPoly) -> Self {
        BoundaryRational::new(self.num.scale(p), self.pole_up, self.pole_down)
    }

    pub fn scale_gaussian(&self, c: &GaussianRational) -> Self {
        self.scale(&ParamPoly::constant(c.clone()))
    }

    /// k-th derivative in xi_n (quotient rule against the two pole factors).
    pub fn diff(&self, k: u32) -> Self {
        let mut cur = self.clone();
        for _ in 0..k {
            cur = cur.diff_once();
        }
        cur
    }

    fn diff_once(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        // d/dx [N / ((x-i)^p (x+i)^q)]
        //   = [N' (x-i)(x+i) - N (p (x+i) + q (x-i))] / ((x-i)^{p+1} (x+i)^{q+1})
        let p = self.pole_up as i64;
        let q = self.pole_down as i64;
        let x = XiPoly::from_coeffs(vec![ParamPoly::zero(), ParamPoly::one()]);
        let i_pp = ParamPoly::constant(GaussianRational::i());
        let x_minus_i = x.add(&XiPoly::constant(i_pp.neg()));
        let x_plus_i = x.add(&XiPoly::constant(i_pp));
        let term1 = self.num.diff().mul(&x_minus_i).mul(&x_plus_i);
        let mix = x_plus_i
            .scale(&ParamPoly::constant(GaussianRational::from_int(p)))
            .add(&x_minus_i.scale(&ParamPoly::constant(GaussianRational::from_int(q))));
        let term2 = self.num.mul(&mix).neg();
        BoundaryRational::new(term1.add(&term2), self.pole_up + 1, self.pole_down + 1)
    }

    /// Exact value at a Gaussian-rational point away from the poles.
    pub fn eval(&self, x: &GaussianRational) -> ParamPoly {
        let i = GaussianRational::i();
        let up = x - &i;
        let down = x + &i;
        assert!(
            !(self.pole_up > 0 && up.is_zero()) && !(self.pole_down > 0 && down.is_zero()),
            "evaluation at a pole"
        );
        let den = &up.pow(self.pole_up) * &down.pow(self.pole_down);
        self.num.eval(x).scale(&den.inv())
    }

    /// Floating evaluation (used by the numeric oracle's integrand assembly).
    pub fn eval_complex(&self, x: Complex64, a: f64, b: f64) -> Complex64 {
        let mut num = Complex64::new(0.0, 0.0);
        for c in self.num.coeffs().iter().rev() {
            num = num * x + c.eval_f64(a, b);
        }
        let i = Complex64::new(0.0, 1.0);
        let den = (x - i).powu(self.pole_up) * (x + i).powu(self.pole_down);
        num / den
    }

    fn total_pole(&self) -> u32 {
        self.pole_up + self.pole_down
    }

    /// Vanishes at infinity: numerator degree strictly below the pole order.
    pub fn decays(&self) -> bool {
        match self.num.degree() {
            None => true,
            Some(d) => (d as i64) <= self.total_pole() as i64 - 1,
        }
    }

    fn decays_with_margin(&self, margin: u32) -> bool {
        match self.num.degree() {
            None => true,
            Some(d) => (d as i64) <= self.total_pole() as i64 - margin as i64,
        }
    }

    /// Laurent coefficients c_1..c_m of the principal part at xi_n = +i,
    /// where the expansion is sum_k c_k/(xi_n - i)^k.
    fn upper_laurent(&self) -> Vec<ParamPoly> {
        let m = self.pole_up;
        if m == 0 || self.num.is_zero() {
            return Vec::new();
        }
        // g = num / (x+i)^q is analytic at +i; c_{m-j} = g^{(j)}(i)/j!.
        let g = BoundaryRational {
            num: self.num.clone(),
            pole_up: 0,
            pole_down: self.pole_down,
        };
        let i = GaussianRational::i();
        let mut out = vec![ParamPoly::zero(); m as usize];
        let mut deriv = g;
        let mut factorial = GaussianRational::one();
        for j in 0..m {
            if j > 0 {
                deriv = deriv.diff_once();
                factorial = &factorial * &GaussianRational::from_int(j as i64);
            }
            out[(m - 1 - j) as usize] = deriv.eval(&i).scale(&factorial.inv());
        }
        out
    }

    /// The pi^+ projection: the sum of principal-part terms at xi_n = +i.
    /// The complement `self - result` has poles only at -i.
    pub fn principal_part_upper(&self) -> Result<Self, CalcError> {
        if !self.decays() {
            return Err(CalcError::NonDecaying {
                num_degree: self.num.degree().unwrap_or(0),
                pole_order: self.total_pole(),
            });
        }
        let coeffs = self.upper_laurent();
        let mut acc = Self::zero();
        for (idx, c) in coeffs.iter().enumerate() {
            let k = (idx + 1) as u32;
            acc = acc.add(&Self::inverse_poles(k, 0).scale(c));
        }
        Ok(acc)
    }

    /// The complementary projection (poles only at -i after extraction).
    pub fn principal_part_lower(&self) -> Result<Self, CalcError> {
        Ok(self.sub(&self.principal_part_upper()?))
    }

    /// integral over R of self d(xi_n) = 2 pi i * residue at +i.
    /// Returns the coefficient of the symbolic factor pi.
    pub fn line_integral(&self) -> Result<ParamPoly, CalcError> {
        if !self.decays_with_margin(2) {
            return Err(CalcError::NotIntegrable {
                num_degree: self.num.degree().unwrap_or(0),
                pole_order: self.total_pole(),
            });
        }
        let coeffs = self.upper_laurent();
        let residue = coeffs.first().cloned().unwrap_or_else(ParamPoly::zero);
        // 2 pi i * residue; the pi stays symbolic.
        Ok(residue.scale(&GaussianRational::ratio_i(2, 1)))
    }
}

fn raise(num: &XiPoly, d_up: u32, d_down: u32) -> XiPoly {
    let x = XiPoly::from_coeffs(vec![ParamPoly::zero(), ParamPoly::one()]);
    let i_pp = ParamPoly::constant(GaussianRational::i());
    let x_minus_i = x.add(&XiPoly::constant(i_pp.neg()));
    let x_plus_i = x.add(&XiPoly::constant(i_pp));
    let mut out = num.clone();
    for _ in 0..d_up {
        out = out.mul(&x_minus_i);
    }
    for _ in 0..d_down {
        out = out.mul(&x_plus_i);
    }
    out
}

impl fmt::Display for BoundaryRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_zero() {
            return write!(f, "0");
        }
        let mut num_str = String::new();
        let mut first = true;
        for (k, c) in self.num.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let needs_parens = cs.contains(" + ") || cs.contains(" - ");
            let cs_wrapped = if needs_parens { format!("({cs})") } else { cs };
            let piece = match k {
                0 => cs_wrapped,
                1 if cs_wrapped == "1" => "xi_n".to_string(),
                1 => format!("{cs_wrapped}*xi_n"),
                _ if cs_wrapped == "1" => format!("xi_n^{k}"),
                _ => format!("{cs_wrapped}*xi_n^{k}"),
            };
            if first {
                num_str.push_str(&piece);
                first = false;
            } else if let Some(rest) = piece.strip_prefix('-') {
                num_str.push_str(&format!(" - {rest}"));
            } else {
                num_str.push_str(&format!(" + {piece}"));
            }
        }
        if self.pole_up == 0 && self.pole_down == 0 {
            return write!(f, "{num_str}");
        }
        let mut den = String::new();
        if self.pole_up > 0 {
            den.push_str(&if self.pole_up == 1 {
                "(xi_n - i)".to_string()
            } else {
                format!("(xi_n - i)^{}", self.pole_up)
            });
        }
        if self.pole_down > 0 {
            if !den.is_empty() {
                den.push('*');
            }
            den.push_str(&if self.pole_down == 1 {
                "(xi_n + i)".to_string()
            } else {
                format!("(xi_n + i)^{}", self.pole_down)
            });
        }
        write!(f, "({num_str})/({den})")
    }
}

impl fmt::Debug for BoundaryRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Exact rational substitution values for (a, b), used by report rendering.
pub type ParamValues = (BigRational, BigRational);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ParamPoly;
    use crate::rat::GaussianRational;

    fn one_over_xi2() -> BoundaryRational {
        BoundaryRational::inv_xi2_pow(1)
    }

    #[test]
    fn additive_identity() {
        let x = one_over_xi2();
        assert_eq!(x.add(&BoundaryRational::zero()), x);
    }

    #[test]
    fn pole_factors_multiply_to_xi2() {
        let up = BoundaryRational::inverse_poles(1, 0);
        let down = BoundaryRational::inverse_poles(0, 1);
        assert_eq!(up.mul(&down), one_over_xi2());
    }

    #[test]
    fn forced_cancellation() {
        // ((a+b)/(xi_n - i)) * (xi_n - i) = a + b
        let ab = ParamPoly::linear(GaussianRational::one(), GaussianRational::one());
        let lhs = BoundaryRational::inverse_poles(1, 0).scale(&ab);
        let x_minus_i = BoundaryRational::xi()
            .sub(&BoundaryRational::from_gaussian(GaussianRational::i()));
        assert_eq!(lhs.mul(&x_minus_i), BoundaryRational::from_param(ab));
    }

    #[test]
    fn second_derivative_of_inverse_xi2() {
        // d^2/dxi^2 [1/(1+xi^2)] = (6 xi^2 - 2)/(1+xi^2)^3
        let expect = BoundaryRational::inv_xi2_pow(3).mul(
            &BoundaryRational::xi_pow(2)
                .scale_gaussian(&GaussianRational::from_int(6))
                .sub(&BoundaryRational::ratio(2, 1)),
        );
        assert_eq!(one_over_xi2().diff(2), expect);
    }

    #[test]
    fn first_derivative_of_inverse_xi2() {
        // d/dxi [1/(1+xi^2)] = -2 xi/(1+xi^2)^2
        let expect = BoundaryRational::inv_xi2_pow(2)
            .mul(&BoundaryRational::xi().scale_gaussian(&GaussianRational::from_int(-2)));
        assert_eq!(one_over_xi2().diff(1), expect);
    }

    #[test]
    fn derivative_of_constant_parameter() {
        let a = BoundaryRational::from_param(ParamPoly::var_a());
        assert!(a.diff(1).is_zero());
    }

    #[test]
    fn pi_plus_lower_pole_only() {
        let down = BoundaryRational::inverse_poles(0, 1);
        assert!(down.principal_part_upper().unwrap().is_zero());
    }

    #[test]
    fn pi_plus_of_inverse_xi2() {
        // pi^+ [1/((xi-i)(xi+i))] = (-i/2) / (xi - i)
        let got = one_over_xi2().principal_part_upper().unwrap();
        let expect =
            BoundaryRational::inverse_poles(1, 0).scale_gaussian(&GaussianRational::ratio_i(-1, 2));
        assert_eq!(got, expect);
    }

    #[test]
    fn pi_plus_of_normal_derivative_symbol() {
        // pi^+ [(b xi^2 - a)/((xi-i)^2(xi+i)^2)] = (2a + i(a-b) xi)/(4 (xi-i)^2)
        let num = XiPoly::from_coeffs(vec![
            ParamPoly::var_a().neg(),
            ParamPoly::zero(),
            ParamPoly::var_b(),
        ]);
        let x = BoundaryRational::new(num, 2, 2);
        let got = x.principal_part_upper().unwrap();

        let coeff1 = ParamPoly::var_a().scale(&GaussianRational::ratio(1, 2)); // 2a/4
        let coeff_xi = ParamPoly::linear(
            GaussianRational::ratio_i(1, 4),
            GaussianRational::ratio_i(-1, 4),
        ); // i(a-b)/4
        let expect = BoundaryRational::new(
            XiPoly::from_coeffs(vec![coeff1, coeff_xi]),
            2,
            0,
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn pi_plus_rejects_non_decaying() {
        let x = BoundaryRational::xi_pow(2).mul(&BoundaryRational::inverse_poles(1, 1));
        assert!(matches!(
            x.principal_part_upper(),
            Err(CalcError::NonDecaying { .. })
        ));
    }

    #[test]
    fn arctangent_integral() {
        // integral of 1/(1+xi^2) = pi
        let got = one_over_xi2().line_integral().unwrap();
        assert_eq!(got, ParamPoly::one());
    }

    #[test]
    fn odd_integrand_vanishes() {
        // integral of xi/(1+xi^2)^2 = 0
        let x = BoundaryRational::xi().mul(&BoundaryRational::inv_xi2_pow(2));
        assert!(x.line_integral().unwrap().is_zero());
    }

    #[test]
    fn weighted_contour_integral() {
        // integral of (i a + b xi)/((xi-i)^2 (xi+i)^3) = (1/8)(3a + b) pi
        let num = XiPoly::from_coeffs(vec![
            ParamPoly::var_a().scale(&GaussianRational::i()),
            ParamPoly::var_b(),
        ]);
        let x = BoundaryRational::new(num, 2, 3);
        let got = x.line_integral().unwrap();
        let expect = ParamPoly::linear(
            GaussianRational::ratio(3, 8),
            GaussianRational::ratio(1, 8),
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn integral_rejects_marginal_decay() {
        // xi/(1+xi^2) decays like 1/xi only
        let x = BoundaryRational::xi().mul(&one_over_xi2());
        assert!(matches!(x.line_integral(), Err(CalcError::NotIntegrable { .. })));
    }

    #[test]
    fn reconstruction_and_idempotence() {
        let num = XiPoly::from_coeffs(vec![
            ParamPoly::linear(GaussianRational::from_int(2), GaussianRational::from_int(-1)),
            ParamPoly::one(),
            ParamPoly::var_b(),
        ]);
        let x = BoundaryRational::new(num, 2, 2);
        let up = x.principal_part_upper().unwrap();
        let down = x.principal_part_lower().unwrap();
        assert_eq!(up.add(&down), x);
        assert_eq!(up.principal_part_upper().unwrap(), up);
        assert_eq!(up.pole_down(), 0);
        assert_eq!(down.pole_up(), 0);
    }
}
