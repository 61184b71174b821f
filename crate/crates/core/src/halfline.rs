//! The half-line projection pi^+ and real-line residue integration lifted
//! from scalars to Clifford elements, plus the sphere-volume bookkeeping.

use crate::clifford::{CliffordElement, SpinorDim};
use crate::params::ParamPoly;
use crate::rational::CalcError;
use num::rational::BigRational;
use num::ToPrimitive;
use std::f64::consts::PI;
use std::fmt;

/// An element split into its upper and lower half-plane parts.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjectedElement {
    pub plus: CliffordElement,
    pub minus: CliffordElement,
}

/// pi^+: principal parts at xi_n = +i, coefficientwise.
pub fn pi_plus(x: &CliffordElement) -> Result<CliffordElement, CalcError> {
    x.pi_plus()
}

/// pi^-: the complement; plus + minus reconstructs the input.
pub fn split(x: &CliffordElement) -> Result<ProjectedElement, CalcError> {
    Ok(ProjectedElement { plus: x.pi_plus()?, minus: x.pi_minus()? })
}

/// trace then integrate over the real line; returns the ParamPoly coefficient
/// of the symbolic factor pi.
pub fn integrate_line_cl(x: &CliffordElement, d: SpinorDim) -> Result<ParamPoly, CalcError> {
    x.trace(d).line_integral()
}

/// vol(S^d) = 2 pi^{(d+1)/2} / Gamma((d+1)/2), kept exact as coeff * pi^pow
/// for the even-volume cases used here (d = 1, 2, 4: 2pi, 4pi, 8pi^2/3).
#[derive(Clone, PartialEq, Eq)]
pub struct SphereFactor {
    pub dim: u32,
    pub coeff: BigRational,
    pub pi_pow: u32,
}

/// Sphere-volume symbol S(n-2) for the unit cosphere of the boundary.
/// Odd-sector words are deleted at this step (their sphere average is zero).
pub fn sphere_factor(n: u32) -> SphereFactor {
    let d = n - 2;
    let (num, den, pi_pow): (i64, i64, u32) = match d {
        1 => (2, 1, 1),
        2 => (4, 1, 1),
        4 => (8, 3, 2),
        _ => {
            // general closed form only needed for the dims above; extend on demand
            unreachable!("unsupported sphere dimension {d}")
        }
    };
    SphereFactor {
        dim: d,
        coeff: BigRational::new(num.into(), den.into()),
        pi_pow,
    }
}

impl SphereFactor {
    pub fn numeric(&self) -> f64 {
        self.coeff.to_f64().unwrap() * PI.powi(self.pi_pow as i32)
    }

    /// The paper-style Omega value 2 pi^{n/2} / Gamma(n/2) for comparison in
    /// reports (it differs from vol(S^{n-2}) for n = 6).
    pub fn paper_omega_numeric(index: u32) -> f64 {
        2.0 * PI.powf(index as f64 / 2.0) / gamma_half_int(index)
    }
}

/// Gamma(k/2) for integer k >= 1.
fn gamma_half_int(k: u32) -> f64 {
    // Gamma(1/2) = sqrt(pi); Gamma(1) = 1; Gamma(z+1) = z Gamma(z)
    let mut z = k as f64 / 2.0;
    let mut acc = 1.0;
    while z > 1.0 {
        z -= 1.0;
        acc *= z;
    }
    if (z - 0.5).abs() < 1e-12 {
        acc * PI.sqrt()
    } else {
        acc
    }
}

impl fmt::Display for SphereFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({})", self.dim)
    }
}

impl fmt::Debug for SphereFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({}) [= {}]", self.dim, self.numeric())
    }
}
