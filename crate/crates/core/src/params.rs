//! Polynomials in the two metric 1-jet parameters a = phi'(0), b = psi'(0)
//! with Gaussian-rational coefficients.
//!
//! Everything the boundary cases produce is affine-linear in (a, b); the
//! representation allows degree <= 1 in each variable and treats anything
//! beyond that as a hard invariant violation, so a coefficient blow-up in a
//! derivation registers as a loud diagnostic instead of a silently wrong
//! expression.

use crate::rat::GaussianRational;
use num::rational::BigRational;
use num::ToPrimitive;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// Key: (degree in a, degree in b), each <= 1.
pub type Monomial = (u8, u8);

#[derive(Clone, PartialEq, Eq, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = ParamPoly::default();
        p.set((0, 0), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussianRational::ratio(num, den))
    }

    /// a = phi'(0)
    pub fn var_a() -> Self {
        let mut p = ParamPoly::default();
        p.set((1, 0), GaussianRational::one());
        p
    }

    /// b = psi'(0)
    pub fn var_b() -> Self {
        let mut p = ParamPoly::default();
        p.set((0, 1), GaussianRational::one());
        p
    }

    /// c_a * a + c_b * b
    pub fn linear(c_a: GaussianRational, c_b: GaussianRational) -> Self {
        let mut p = ParamPoly::default();
        p.set((1, 0), c_a);
        p.set((0, 1), c_b);
        p
    }

    fn set(&mut self, m: Monomial, c: GaussianRational) {
        assert!(m.0 <= 1 && m.1 <= 1, "ParamPoly degree exceeds 1 in a or b: {:?}", m);
        if c.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, c);
        }
    }

    pub fn coeff(&self, m: Monomial) -> GaussianRational {
        self.terms.get(&m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&m| m == (0, 0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            let cur = out.coeff(*m);
            out.set(*m, &cur + c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = ParamPoly::default();
        for (m, c) in &self.terms {
            out.set(*m, -c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = ParamPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = (m1.0 + m2.0, m1.1 + m2.1);
                assert!(
                    m.0 <= 1 && m.1 <= 1,
                    "ParamPoly product leaves the a,b-degree-1 window (monomial a^{} b^{}); \
                     no expression of this calculus does that",
                    m.0,
                    m.1
                );
                let cur = out.coeff(m);
                out.set(m, &cur + &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = ParamPoly::default();
        for (m, v) in &self.terms {
            out.set(*m, c * v);
        }
        out
    }

    /// Exact substitution a -> av, b -> bv.
    pub fn eval(&self, av: &BigRational, bv: &BigRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (&(da, db), c) in &self.terms {
            let mut t = c.clone();
            if da == 1 {
                t = &t * &GaussianRational::from_rational(av.clone());
            }
            if db == 1 {
                t = &t * &GaussianRational::from_rational(bv.clone());
            }
            acc += &t;
        }
        acc
    }

    pub fn eval_f64(&self, av: f64, bv: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(da, db), c) in &self.terms {
            let mut t = Complex64::new(
                c.re.to_f64().unwrap_or(f64::NAN),
                c.im.to_f64().unwrap_or(f64::NAN),
            );
            if da == 1 {
                t *= av;
            }
            if db == 1 {
                t *= bv;
            }
            acc += t;
        }
        acc
    }

    /// Substitute b := a (the psi'(0) = phi'(0) specialisation of the
    /// gravitational-action theorems).
    pub fn substitute_b_equals_a(&self) -> Self {
        let mut out = ParamPoly::default();
        for (&(da, db), c) in &self.terms {
            let m = (da + db, 0);
            assert!(m.0 <= 1, "b:=a substitution leaves the degree window");
            let cur = out.coeff(m);
            out.set(m, &cur + c);
        }
        out
    }
}

fn monomial_str(m: Monomial) -> &'static str {
    match m {
        (0, 0) => "",
        (1, 0) => "a",
        (0, 1) => "b",
        (1, 1) => "a*b",
        _ => unreachable!(),
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // render in the order a, b, ab, constant (leading parameter first)
        let order: [Monomial; 4] = [(1, 0), (0, 1), (1, 1), (0, 0)];
        let mut first = true;
        for m in order {
            let Some(c) = self.terms.get(&m) else { continue };
            let cs = c.to_string();
            let ms = monomial_str(m);
            let piece = if ms.is_empty() {
                cs
            } else if cs == "1" {
                ms.to_string()
            } else if cs == "-1" {
                format!("-{ms}")
            } else {
                format!("{cs}*{ms}")
            };
            if first {
                write!(f, "{piece}")?;
                first = false;
            } else if let Some(rest) = piece.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {piece}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::brat;

    #[test]
    fn linear_combination_display() {
        // the (3a + b) shape that appears in the first boundary case
        let p = ParamPoly::linear(GaussianRational::from_int(3), GaussianRational::one());
        assert_eq!(p.to_string(), "3*a + b");
        let q = ParamPoly::linear(GaussianRational::from_int(9), GaussianRational::from_int(-1));
        assert_eq!(q.to_string(), "9*a - b");
    }

    #[test]
    fn eval_matches_structure() {
        let p = ParamPoly::linear(GaussianRational::from_int(3), GaussianRational::one());
        let v = p.eval(&brat(1, 2), &brat(-1, 3));
        assert_eq!(v, GaussianRational::ratio(7, 6)); // 3/2 - 1/3
    }

    #[test]
    #[should_panic(expected = "degree-1 window")]
    fn quadratic_products_are_rejected() {
        let a = ParamPoly::var_a();
        let _ = a.mul(&a);
    }
}
