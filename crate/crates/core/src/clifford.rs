//! The Clifford fiber at the boundary point: two anticommuting generators
//! u = c(xi'), v = c(dx_n) with u^2 = v^2 = -1, represented on the fixed
//! basis {1, u, v, uv} with `BoundaryRational` coefficients.
//!
//! At |xi'| = 1 the contracted tangential word sum_{k<n} xi_k c(e_k)c(e_n)
//! equals c(xi')c(dx_n) = u*v as an operator, so it lives in the `uv`
//! coefficient and participates in products exactly. The `odd` bucket is
//! reserved for tangential words that are *not* contracted into c(xi') (their
//! sphere average vanishes); no expression of the enumerated boundary cases
//! produces one, but the algebra keeps the slot so such a word is carried,
//! traced to zero and deleted at sphere integration rather than miscomputed.

use crate::params::ParamPoly;
use crate::rat::GaussianRational;
use crate::rational::{BoundaryRational, CalcError};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("product of two odd-sector words ({0} * {1}) is outside the computational closure")]
    OddOddProduct(String, String),
    #[error(transparent)]
    Calc(#[from] CalcError),
}

/// Opaque tag for an uncontracted tangential word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddWord(pub String);

/// Spinor-space data per manifold dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinorDim {
    pub n: u32,
    pub dim_s: u32,
}

impl SpinorDim {
    pub fn new(n: u32) -> Option<Self> {
        let dim_s = match n {
            3 => 2,
            4 => 4,
            6 => 8,
            _ => return None,
        };
        Some(SpinorDim { n, dim_s })
    }

    /// Dimension of the sphere |xi'| = 1.
    pub fn sphere_dim(&self) -> u32 {
        self.n - 2
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct CliffordElement {
    pub c1: BoundaryRational,
    pub cu: BoundaryRational,
    pub cv: BoundaryRational,
    pub cuv: BoundaryRational,
    pub odd: Vec<(BoundaryRational, OddWord)>,
}

impl CliffordElement {
    pub fn zero() -> Self {
        CliffordElement {
            c1: BoundaryRational::zero(),
            cu: BoundaryRational::zero(),
            cv: BoundaryRational::zero(),
            cuv: BoundaryRational::zero(),
            odd: Vec::new(),
        }
    }

    pub fn from_basis(
        c1: BoundaryRational,
        cu: BoundaryRational,
        cv: BoundaryRational,
        cuv: BoundaryRational,
    ) -> Self {
        CliffordElement { c1, cu, cv, cuv, odd: Vec::new() }
    }

    pub fn scalar(c: BoundaryRational) -> Self {
        let mut e = Self::zero();
        e.c1 = c;
        e
    }

    pub fn one() -> Self {
        Self::scalar(BoundaryRational::one())
    }

    pub fn u() -> Self {
        let mut e = Self::zero();
        e.cu = BoundaryRational::one();
        e
    }

    pub fn v() -> Self {
        let mut e = Self::zero();
        e.cv = BoundaryRational::one();
        e
    }

    pub fn uv() -> Self {
        let mut e = Self::zero();
        e.cuv = BoundaryRational::one();
        e
    }

    /// c(xi) = c(xi') + xi_n c(dx_n) = u + xi_n v.
    pub fn c_xi() -> Self {
        let mut e = Self::zero();
        e.cu = BoundaryRational::one();
        e.cv = BoundaryRational::xi();
        e
    }

    /// Attach an uncontracted tangential word.
    pub fn with_odd(mut self, coeff: BoundaryRational, word: OddWord) -> Self {
        self.odd.push((coeff, word));
        self
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero()
            && self.cu.is_zero()
            && self.cv.is_zero()
            && self.cuv.is_zero()
            && self.odd.iter().all(|(c, _)| c.is_zero())
    }

    pub fn has_odd(&self) -> bool {
        self.odd.iter().any(|(c, _)| !c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut odd = self.odd.clone();
        for (c, w) in &rhs.odd {
            if let Some((cur, _)) = odd.iter_mut().find(|(_, w2)| w2 == w) {
                *cur = cur.add(c);
            } else {
                odd.push((c.clone(), w.clone()));
            }
        }
        odd.retain(|(c, _)| !c.is_zero());
        CliffordElement {
            c1: self.c1.add(&rhs.c1),
            cu: self.cu.add(&rhs.cu),
            cv: self.cv.add(&rhs.cv),
            cuv: self.cuv.add(&rhs.cuv),
            odd,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        CliffordElement {
            c1: self.c1.neg(),
            cu: self.cu.neg(),
            cv: self.cv.neg(),
            cuv: self.cuv.neg(),
            odd: self.odd.iter().map(|(c, w)| (c.neg(), w.clone())).collect(),
        }
    }

    pub fn map<F: Fn(&BoundaryRational) -> BoundaryRational>(&self, f: F) -> Self {
        CliffordElement {
            c1: f(&self.c1),
            cu: f(&self.cu),
            cv: f(&self.cv),
            cuv: f(&self.cuv),
            odd: self.odd.iter().map(|(c, w)| (f(c), w.clone())).collect(),
        }
    }

    pub fn try_map<F: Fn(&BoundaryRational) -> Result<BoundaryRational, CalcError>>(
        &self,
        f: F,
    ) -> Result<Self, CalcError> {
        let mut odd = Vec::with_capacity(self.odd.len());
        for (c, w) in &self.odd {
            odd.push((f(c)?, w.clone()));
        }
        Ok(CliffordElement {
            c1: f(&self.c1)?,
            cu: f(&self.cu)?,
            cv: f(&self.cv)?,
            cuv: f(&self.cuv)?,
            odd,
        })
    }

    pub fn scale(&self, p: &ParamPoly) -> Self {
        self.map(|c| c.scale(p))
    }

    pub fn scale_rat(&self, c: &BoundaryRational) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn scale_gaussian(&self, g: &GaussianRational) -> Self {
        self.map(|x| x.scale_gaussian(g))
    }

    fn is_scalar_only(&self) -> bool {
        self.cu.is_zero() && self.cv.is_zero() && self.cuv.is_zero() && !self.has_odd()
    }

    /// Clifford product reduced to the basis via u^2 = v^2 = -1, uv = -vu.
    ///
    /// An odd word survives multiplication by a scalar element (coefficients
    /// multiply; the word tag is preserved). Odd * odd, or an odd word against
    /// a non-scalar element, is outside the computational closure and errors
    /// rather than being guessed at: the contracted tangential sums of this
    /// calculus all live in the uv coefficient, where the product is exact.
    pub fn mul(&self, rhs: &Self) -> Result<Self, CliffordError> {
        if self.has_odd() || rhs.has_odd() {
            if self.has_odd() && rhs.has_odd() {
                return Err(CliffordError::OddOddProduct(
                    self.odd[0].1 .0.clone(),
                    rhs.odd[0].1 .0.clone(),
                ));
            }
            let (odd_side, even_side, tag) = if self.has_odd() {
                (self, rhs, ".scaled")
            } else {
                (rhs, self, "scaled.")
            };
            if !even_side.is_scalar_only() {
                return Err(CliffordError::OddOddProduct(
                    odd_side.odd[0].1 .0.clone(),
                    "non-scalar element".to_string(),
                ));
            }
            let s = &even_side.c1;
            let mut out = odd_side.map(|c| c.mul(s));
            for (_, w) in &mut out.odd {
                w.0 = format!("{}{}", w.0, tag);
            }
            return Ok(out);
        }
        let (p1, pu, pv, puv) = (&self.c1, &self.cu, &self.cv, &self.cuv);
        let (q1, qu, qv, quv) = (&rhs.c1, &rhs.cu, &rhs.cv, &rhs.cuv);
        let c1 = p1.mul(q1).sub(&pu.mul(qu)).sub(&pv.mul(qv)).sub(&puv.mul(quv));
        let cu = p1.mul(qu).add(&pu.mul(q1)).add(&pv.mul(quv)).sub(&puv.mul(qv));
        let cv = p1.mul(qv).add(&pv.mul(q1)).sub(&pu.mul(quv)).add(&puv.mul(qu));
        let cuv = p1.mul(quv).add(&puv.mul(q1)).add(&pu.mul(qv)).sub(&pv.mul(qu));
        Ok(CliffordElement { c1, cu, cv, cuv, odd: Vec::new() })
    }

    /// trace over the spinor space: dim_s * (coefficient of 1).
    /// u, v, uv and odd words are traceless.
    pub fn trace(&self, d: SpinorDim) -> BoundaryRational {
        self.c1.scale_gaussian(&GaussianRational::from_int(d.dim_s as i64))
    }

    /// Componentwise k-th derivative in xi_n.
    pub fn xi_diff(&self, k: u32) -> Self {
        self.map(|c| c.diff(k))
    }

    /// pi^+ applied to every basis coefficient (odd included).
    pub fn pi_plus(&self) -> Result<Self, CalcError> {
        self.try_map(|c| c.principal_part_upper())
    }

    pub fn pi_minus(&self) -> Result<Self, CalcError> {
        self.try_map(|c| c.principal_part_lower())
    }

    /// Delete the odd sector (the sphere-integration step).
    pub fn drop_odd(&self) -> Self {
        let mut e = self.clone();
        e.odd.clear();
        e
    }
}

/// d/dx_n [c(xi')](x_0) = (a/2) u: the coframe c(dx_i) = sqrt(phi) c(unit)
/// scales isotropically, so the normal derivative is proportional to the
/// generator itself.
pub fn dxn_of_u() -> CliffordElement {
    CliffordElement::u().scale(&ParamPoly::var_a().scale(&GaussianRational::ratio(1, 2)))
}

/// d/dx_n [c(dx_n)](x_0) = -(b/2) v from c(dx_n) = psi^{-1/2} c(unit).
pub fn dxn_of_v() -> CliffordElement {
    CliffordElement::v().scale(&ParamPoly::var_b().scale(&GaussianRational::ratio(-1, 2)))
}

/// Which generator's normal derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    U,
    V,
}

/// The substitution rule as one entry point.
pub fn cl_dxn_substitute(which: Generator) -> CliffordElement {
    match which {
        Generator::U => dxn_of_u(),
        Generator::V => dxn_of_v(),
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (c, name) in [
            (&self.c1, "1"),
            (&self.cu, "u"),
            (&self.cv, "v"),
            (&self.cuv, "uv"),
        ] {
            if !c.is_zero() {
                parts.push(format!("({})*{}", c, name));
            }
        }
        for (c, w) in &self.odd {
            if !c.is_zero() {
                parts.push(format!("({})*odd[{}]", c, w.0));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
