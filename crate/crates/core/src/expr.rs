//! The shared expression language of the reports: sums of Gaussian-rational
//! multiples of monomials in the symbols a, b, pi, S(d), Omega_k, xi_n, the
//! pole factors (xi_n -+ i), the interior-curvature integral symbol IntS and
//! the boundary volume Vol_dM.
//!
//! `Expr` is a normal form (sorted monomial map); rendering is canonical and
//! `parse` inverts it, which is what the serialization round-trip tests
//! exercise. Division and powers of parenthesised sums are admitted exactly
//! for the pole factors, so Clifford-coefficient rational functions have a
//! grammar form too.

use crate::params::ParamPoly;
use crate::rat::GaussianRational;
use crate::rational::BoundaryRational;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Atom {
    /// phi'(0)
    A,
    /// psi'(0)
    B,
    Pi,
    /// vol(S^d) symbol
    Sphere(u32),
    /// the paper's Omega_k = 2 pi^{k/2}/Gamma(k/2) symbol
    Omega(u32),
    /// integral of scalar curvature over the interior
    IntS,
    /// boundary volume
    VolBoundary,
    XiN,
    /// xi_n - i
    PoleUp,
    /// xi_n + i
    PoleDown,
}

impl Atom {
    fn render(&self) -> String {
        match self {
            Atom::A => "a".into(),
            Atom::B => "b".into(),
            Atom::Pi => "pi".into(),
            Atom::Sphere(d) => format!("S({d})"),
            Atom::Omega(k) => format!("Omega_{k}"),
            Atom::IntS => "IntS".into(),
            Atom::VolBoundary => "Vol_dM".into(),
            Atom::XiN => "xi_n".into(),
            Atom::PoleUp => "(xi_n - i)".into(),
            Atom::PoleDown => "(xi_n + i)".into(),
        }
    }
}

pub type Monomial = BTreeMap<Atom, i32>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Expr {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut e = Expr::default();
        e.insert(Monomial::new(), c);
        e
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn atom(a: Atom) -> Self {
        let mut e = Expr::default();
        e.insert(Monomial::from([(a, 1)]), GaussianRational::one());
        e
    }

    pub fn atom_pow(a: Atom, k: i32) -> Self {
        if k == 0 {
            return Self::one();
        }
        let mut e = Expr::default();
        e.insert(Monomial::from([(a, k)]), GaussianRational::one());
        e
    }

    fn insert(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(GaussianRational::zero);
        *entry += &c;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Expr::default();
        for (m, c) in &self.terms {
            out.insert(m.clone(), -c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Expr::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mut m = m1.clone();
                for (a, k) in m2 {
                    let e = m.entry(*a).or_insert(0);
                    *e += k;
                    if *e == 0 {
                        m.remove(a);
                    }
                }
                out.insert(m, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Expr::default();
        for (m, v) in &self.terms {
            out.insert(m.clone(), c * v);
        }
        out
    }

    pub fn pow(&self, k: i32) -> Result<Self, ExprError> {
        if k >= 0 {
            let mut acc = Expr::one();
            for _ in 0..k {
                acc = acc.mul(self);
            }
            Ok(acc)
        } else {
            Ok(self.invert()?.pow(-k)?)
        }
    }

    /// Inversion: only single-monomial expressions (and the recognized pole
    /// sums) are invertible in this language.
    pub fn invert(&self) -> Result<Self, ExprError> {
        if let Some(a) = self.as_pole_sum() {
            return Ok(Expr::atom_pow(a, -1));
        }
        if self.terms.len() != 1 {
            return Err(ExprError::NotInvertible(self.to_string()));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let mut inv_m = Monomial::new();
        for (a, k) in m {
            inv_m.insert(*a, -k);
        }
        let mut out = Expr::default();
        out.insert(inv_m, c.inv());
        Ok(out)
    }

    /// Recognize xi_n - i / xi_n + i as pole atoms.
    fn as_pole_sum(&self) -> Option<Atom> {
        if *self == Expr::atom(Atom::XiN).sub(&Expr::constant(GaussianRational::i())) {
            Some(Atom::PoleUp)
        } else if *self == Expr::atom(Atom::XiN).add(&Expr::constant(GaussianRational::i())) {
            Some(Atom::PoleDown)
        } else {
            None
        }
    }

    pub fn from_param(p: &ParamPoly) -> Self {
        let mut out = Expr::default();
        for (&(da, db), c) in p.iter() {
            let mut m = Monomial::new();
            if da == 1 {
                m.insert(Atom::A, 1);
            }
            if db == 1 {
                m.insert(Atom::B, 1);
            }
            out.insert(m, c.clone());
        }
        out
    }

    pub fn from_boundary_rational(x: &BoundaryRational) -> Self {
        let mut out = Expr::default();
        for (k, c) in x.num().coeffs().iter().enumerate() {
            let mut term = Expr::from_param(c);
            if k > 0 {
                term = term.mul(&Expr::atom_pow(Atom::XiN, k as i32));
            }
            out = out.add(&term);
        }
        out = out.mul(&Expr::atom_pow(Atom::PoleUp, -(x.pole_up() as i32)));
        out.mul(&Expr::atom_pow(Atom::PoleDown, -(x.pole_down() as i32)))
    }

    /// The terms iterator (sorted; canonical order of the normal form).
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }
}

fn render_monomial(m: &Monomial) -> (String, String) {
    // split into numerator and denominator factor strings
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (a, &k) in m {
        let base = a.render();
        let (target, kk) = if k >= 0 { (&mut num, k) } else { (&mut den, -k) };
        if kk == 1 {
            target.push(base);
        } else {
            target.push(format!("{base}^{kk}"));
        }
    }
    (num.join("*"), den.join("*"))
}

fn rational_gcd(x: &BigRational, y: &BigRational) -> BigRational {
    // gcd(p1/q1, p2/q2) = gcd(p1, p2)/lcm(q1, q2)
    BigRational::new(
        x.numer().gcd(y.numer()),
        x.denom().lcm(y.denom()),
    )
}

impl Expr {
    /// Factored rendering: pull the rational content out of the sum when all
    /// coefficients are real, so `(-3/8)a pi S + (-1/8)b pi S` renders as
    /// `(-1/8)*(3*a + b)*pi*S(2)`, and render the common monomial once.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        // common monomial part across all terms
        let mut common: Option<Monomial> = None;
        for m in self.terms.keys() {
            common = Some(match common {
                None => m.clone(),
                Some(c) => {
                    let mut out = Monomial::new();
                    for (a, &k) in &c {
                        if let Some(&k2) = m.get(a) {
                            let kk = if k > 0 { k.min(k2.max(0)) } else { k.max(k2.min(0)) };
                            if kk != 0 {
                                out.insert(*a, kk);
                            }
                        }
                    }
                    out
                }
            });
        }
        let common = common.unwrap();
        let all_real = self.terms.values().all(|c| c.is_real());
        let same_denominator = {
            let mut dens = self.terms.values().map(|c| c.re.denom());
            let first = dens.next();
            dens.all(|d| Some(d) == first)
        };
        let content: Option<BigRational> = if all_real && same_denominator && self.terms.len() > 1
        {
            let mut g: Option<BigRational> = None;
            for c in self.terms.values() {
                g = Some(match g {
                    None => c.re.clone(),
                    Some(acc) => rational_gcd(&acc, &c.re),
                });
            }
            let mut g = g.unwrap().abs();
            // carry the sign of the leading (first) term into the content
            if self.terms.values().next().unwrap().re.is_negative() {
                g = -g;
            }
            if g.is_one() {
                None
            } else {
                Some(g)
            }
        } else {
            None
        };

        let mut residual = Expr::default();
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            for (a, k) in &common {
                let e = mm.entry(*a).or_insert(0);
                *e -= k;
                if *e == 0 {
                    mm.remove(a);
                }
            }
            let cc = match &content {
                Some(g) => {
                    let q = &c.re / g;
                    GaussianRational::from_rational(q)
                }
                None => c.clone(),
            };
            residual.insert(mm, cc);
        }

        let inner = residual.render_plain();
        let mut pieces: Vec<String> = Vec::new();
        if let Some(g) = &content {
            let gr = GaussianRational::from_rational(g.clone());
            pieces.push(format!("({gr})"));
        }
        let inner_needs_parens =
            residual.terms.len() > 1 && (content.is_some() || !common.is_empty());
        if inner != "1" || (pieces.is_empty() && common.is_empty()) {
            pieces.push(if inner_needs_parens {
                format!("({inner})")
            } else {
                inner
            });
        }
        let (cnum, cden) = render_monomial(&common);
        if !cnum.is_empty() {
            pieces.push(cnum);
        }
        if pieces.is_empty() {
            pieces.push("1".into());
        }
        let mut out = pieces.join("*");
        if !cden.is_empty() {
            out = format!("{out}/({cden})");
        }
        out
    }

    /// Expanded canonical rendering (one term per monomial, sorted).
    pub fn render_plain(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for (m, c) in &self.terms {
            let (num, den) = render_monomial(m);
            let c_str = c.to_string();
            let mut piece = if num.is_empty() {
                c_str.clone()
            } else if c_str == "1" {
                num.clone()
            } else if c_str == "-1" {
                format!("-{num}")
            } else {
                format!("{c_str}*{num}")
            };
            if !den.is_empty() {
                piece = format!("{piece}/({den})");
            }
            if first {
                out.push_str(&piece);
                first = false;
            } else if let Some(rest) = piece.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&piece);
            }
        }
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_plain())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("parse error at byte {0}: {1}")]
    Parse(usize, String),
    #[error("expression is not invertible in the report grammar: {0}")]
    NotInvertible(String),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { src: s.as_bytes(), pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> ExprError {
        ExprError::Parse(self.pos, msg.into())
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn parse_uint(&mut self) -> Result<u64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|e| self.err(format!("bad integer: {e}")))
    }

    fn parse_ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn parse_expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = acc.add(&self.parse_term()?);
                }
                Some(b'-') => {
                    self.bump();
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    acc = acc.mul(&self.parse_factor()?);
                }
                Some(b'/') => {
                    self.bump();
                    let d = self.parse_factor()?;
                    acc = acc.mul(&d.invert()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Expr, ExprError> {
        let base = self.parse_base()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let neg = if self.peek() == Some(b'-') {
                self.bump();
                true
            } else {
                false
            };
            let k = self.parse_uint()? as i32;
            let k = if neg { -k } else { k };
            // collapse recognized pole sums before powering
            let base = match base.as_pole_sum() {
                Some(a) => Expr::atom(a),
                None => base,
            };
            return base.pow(k);
        }
        Ok(base)
    }

    fn parse_base(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'-') => {
                self.bump();
                Ok(self.parse_factor()?.neg())
            }
            Some(b'(') => {
                self.bump();
                let e = self.parse_expr()?;
                self.expect(b')')?;
                // a parenthesized pole sum becomes an atom so that powers and
                // division work on it
                Ok(match e.as_pole_sum() {
                    Some(a) => Expr::atom(a),
                    None => e,
                })
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_uint()?;
                let mut r = BigRational::from(BigInt::from(num));
                if self.peek() == Some(b'/') {
                    // lookahead: rational literal p/q only when followed by digits
                    let save = self.pos;
                    self.bump();
                    if self.peek().map_or(false, |c| c.is_ascii_digit()) {
                        let den = self.parse_uint()?;
                        r /= BigRational::from(BigInt::from(den));
                    } else {
                        self.pos = save;
                    }
                }
                Ok(Expr::constant(GaussianRational::from_rational(r)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let id = self.parse_ident();
                match id.as_str() {
                    "a" => Ok(Expr::atom(Atom::A)),
                    "b" => Ok(Expr::atom(Atom::B)),
                    "i" => Ok(Expr::constant(GaussianRational::i())),
                    "pi" => Ok(Expr::atom(Atom::Pi)),
                    "xi_n" => Ok(Expr::atom(Atom::XiN)),
                    "IntS" => Ok(Expr::atom(Atom::IntS)),
                    "Vol_dM" => Ok(Expr::atom(Atom::VolBoundary)),
                    "S" => {
                        self.expect(b'(')?;
                        let d = self.parse_uint()? as u32;
                        self.expect(b')')?;
                        Ok(Expr::atom(Atom::Sphere(d)))
                    }
                    _ if id.starts_with("Omega_") => {
                        let k: u32 = id["Omega_".len()..]
                            .parse()
                            .map_err(|_| self.err(format!("bad Omega index in '{id}'")))?;
                        Ok(Expr::atom(Atom::Omega(k)))
                    }
                    _ => Err(self.err(format!("unknown symbol '{id}'"))),
                }
            }
            other => Err(self.err(format!("unexpected {:?}", other.map(|c| c as char)))),
        }
    }
}

/// Parse a report expression back into normal form.
pub fn parse(s: &str) -> Result<Expr, ExprError> {
    let mut p = Parser::new(s);
    let e = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(ExprError::Parse(p.pos, "trailing input".into()));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::brat;

    #[test]
    fn spec_example_round_trips() {
        let s = "(-1/8)*(3*a + b)*pi*S(2)";
        let e = parse(s).unwrap();
        assert_eq!(e.render(), s);
        assert_eq!(parse(&e.render()).unwrap(), e);
        assert_eq!(parse(&e.render_plain()).unwrap(), e);
    }

    #[test]
    fn expanded_and_factored_agree() {
        let e = parse("(-3/8)*a*pi*S(2) - 1/8*b*pi*S(2)").unwrap();
        let f = parse("(-1/8)*(3*a + b)*pi*S(2)").unwrap();
        assert_eq!(e, f);
    }

    #[test]
    fn pole_factors_parse_and_render() {
        let s = "(2*a + i*(a - b)*xi_n)/((xi_n - i)^2)";
        let e = parse(s).unwrap();
        let back = parse(&e.render()).unwrap();
        assert_eq!(e, back);
    }

    #[test]
    fn omega_ratio_expression() {
        let e = parse("40/11 + (6400/33)*Omega_5/Omega_4").unwrap();
        assert_eq!(parse(&e.render()).unwrap(), e);
        let m: Vec<_> = e.iter().collect();
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn boundary_rational_conversion() {
        let x = BoundaryRational::inv_xi2_pow(1);
        let e = Expr::from_boundary_rational(&x);
        assert_eq!(
            e,
            Expr::atom_pow(Atom::PoleUp, -1).mul(&Expr::atom_pow(Atom::PoleDown, -1))
        );
        assert_eq!(parse(&e.render()).unwrap(), e);
    }

    #[test]
    fn gaussian_coefficient_round_trip() {
        let c = GaussianRational::new(brat(1, 2), brat(-3, 4));
        let e = Expr::constant(c).mul(&Expr::atom(Atom::XiN));
        assert_eq!(parse(&e.render_plain()).unwrap(), e);
    }
}
