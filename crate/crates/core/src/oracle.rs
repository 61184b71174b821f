//! Independent floating-point evaluation of the boundary cases: explicit
//! matrix representation of the Clifford generators plus quadrature for
//! every analytic step.
//!
//! Independence contract: this module never calls the symbolic
//! principal-part/residue machinery. The half-line projection is computed by
//! trapezoid contour quadrature around the upper pole (spectrally accurate
//! for meromorphic integrands), xi_n-derivatives by Cauchy-integral
//! quadrature on small circles, and the conormal line integral by
//! Gauss-Legendre after the tangent substitution. Only the exact symbol
//! *data* (numerator coefficients, pole orders, jet structure) is shared,
//! not the calculus.

use crate::clifford::CliffordElement;
use crate::engine::{CaseLabel, CaseSpec, Tables};
use crate::halfline::sphere_factor;
use crate::rational::BoundaryRational;
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("quadrature did not converge: doubled-node relative change {rel:.3e} exceeds 1e-10")]
    QuadratureUnconverged { rel: f64 },
    #[error("the oracle cannot represent uncontracted tangential words")]
    OddWordPresent,
    #[error("missing normal jet for the requested case")]
    MissingJet,
}

/// Small dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub n: usize,
    pub d: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat { n, d: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn eye(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.d[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.d[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.d[i * self.n + j] = v;
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        let n = self.n;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.at(i, k);
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.d[i * n + j] += aik * rhs.at(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &CMat) -> CMat {
        let mut out = self.clone();
        for (x, y) in out.d.iter_mut().zip(&rhs.d) {
            *x += y;
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> CMat {
        let mut out = self.clone();
        for x in &mut out.d {
            *x *= c;
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.at(i, i)).sum()
    }

    /// Kronecker product.
    pub fn kron(&self, rhs: &CMat) -> CMat {
        let n = self.n * rhs.n;
        let mut out = CMat::zeros(n);
        for i1 in 0..self.n {
            for j1 in 0..self.n {
                for i2 in 0..rhs.n {
                    for j2 in 0..rhs.n {
                        out.set(
                            i1 * rhs.n + i2,
                            j1 * rhs.n + j2,
                            self.at(i1, j1) * rhs.at(i2, j2),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.d.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

fn pauli(k: usize) -> CMat {
    let i = Complex64::new(0.0, 1.0);
    let o = Complex64::new(1.0, 0.0);
    let mut m = CMat::zeros(2);
    match k {
        1 => {
            m.set(0, 1, o);
            m.set(1, 0, o);
        }
        2 => {
            m.set(0, 1, -i);
            m.set(1, 0, i);
        }
        _ => unreachable!(),
    }
    m
}

/// Fixed deterministic anticommuting pair U, V with U^2 = V^2 = -Id,
/// built from tensor products of 2x2 blocks.
pub struct MatrixRep {
    pub dim_s: usize,
    pub u: CMat,
    pub v: CMat,
    pub uv: CMat,
    pub id: CMat,
}

impl MatrixRep {
    pub fn new(dim_s: usize) -> Self {
        let i = Complex64::new(0.0, 1.0);
        let (mut u, mut v) = (pauli(1), pauli(2));
        let mut d = 2;
        while d < dim_s {
            u = u.kron(&CMat::eye(2));
            v = v.kron(&CMat::eye(2));
            d *= 2;
        }
        assert_eq!(d, dim_s, "dim_s must be a power of two in {{2,4,8}}");
        u = u.scale(i);
        v = v.scale(i);
        let uv = u.mul(&v);
        let rep = MatrixRep { dim_s, u, v, uv, id: CMat::eye(dim_s) };
        rep.check();
        rep
    }

    fn check(&self) {
        let tol = 1e-13;
        assert!(self.u.mul(&self.u).add(&self.id).max_abs() < tol, "U^2 = -Id");
        assert!(self.v.mul(&self.v).add(&self.id).max_abs() < tol, "V^2 = -Id");
        let anti = self.u.mul(&self.v).add(&self.v.mul(&self.u));
        assert!(anti.max_abs() < tol, "UV = -VU");
    }

    /// Evaluate an element at complex xi with floating (a, b): the matrix
    /// c1 Id + cu U + cv V + cuv UV.
    pub fn eval(
        &self,
        e: &CliffordElement,
        xi: Complex64,
        a: f64,
        b: f64,
    ) -> Result<CMat, OracleError> {
        if e.has_odd() {
            return Err(OracleError::OddWordPresent);
        }
        let mut out = self.id.scale(e.c1.eval_complex(xi, a, b));
        out = out.add(&self.u.scale(e.cu.eval_complex(xi, a, b)));
        out = out.add(&self.v.scale(e.cv.eval_complex(xi, a, b)));
        out = out.add(&self.uv.scale(e.cuv.eval_complex(xi, a, b)));
        Ok(out)
    }
}

/// Laurent coefficients of the principal part at +-i of one rational
/// coefficient, computed by trapezoid contour quadrature:
/// c_m = (r^m / N) sum_j f(pole + r e^{i th_j}) e^{i m th_j}.
fn contour_coeffs(
    f: &BoundaryRational,
    a: f64,
    b: f64,
    upper: bool,
    order: u32,
    nodes: usize,
) -> Vec<Complex64> {
    let r = 0.5;
    let pole = Complex64::new(0.0, if upper { 1.0 } else { -1.0 });
    let mut samples = Vec::with_capacity(nodes);
    for j in 0..nodes {
        let th = 2.0 * PI * (j as f64) / (nodes as f64);
        let z = pole + Complex64::from_polar(r, th);
        samples.push((th, f.eval_complex(z, a, b)));
    }
    (1..=order)
        .map(|m| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (th, fv) in &samples {
                acc += fv * Complex64::from_polar(1.0, (m as f64) * th);
            }
            acc * r.powi(m as i32) / (nodes as f64)
        })
        .collect()
}

/// A numerically projected element: per basis coefficient, the Laurent
/// coefficients of its principal part at the chosen pole. Evaluation and
/// xi_n-differentiation are then closed-form in (xi - pole)^{-m}.
pub struct NumericProjection {
    coeffs: [Vec<Complex64>; 4],
    upper: bool,
}

impl NumericProjection {
    pub fn project(
        e: &CliffordElement,
        a: f64,
        b: f64,
        upper: bool,
        nodes: usize,
    ) -> Result<Self, OracleError> {
        if e.has_odd() {
            return Err(OracleError::OddWordPresent);
        }
        let get = |f: &BoundaryRational| {
            let order = if upper { f.pole_up() } else { f.pole_down() };
            contour_coeffs(f, a, b, upper, order, nodes)
        };
        Ok(NumericProjection {
            coeffs: [get(&e.c1), get(&e.cu), get(&e.cv), get(&e.cuv)],
            upper,
        })
    }

    /// d^k/dxi^k of the projection at real xi, per basis slot.
    fn eval_coeff(&self, slot: usize, xi: f64, deriv: u32) -> Complex64 {
        let pole = Complex64::new(0.0, if self.upper { 1.0 } else { -1.0 });
        let z = Complex64::new(xi, 0.0) - pole;
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, c) in self.coeffs[slot].iter().enumerate() {
            let m = (idx + 1) as i32;
            // d^k (z^{-m}) = (-m)(-m-1)...(-m-k+1) z^{-m-k}
            let mut fac = 1.0;
            for t in 0..deriv {
                fac *= -(m as f64) - t as f64;
            }
            acc += c * fac * z.powi(-m - deriv as i32);
        }
        acc
    }

    pub fn eval_matrix(&self, rep: &MatrixRep, xi: f64, deriv: u32) -> CMat {
        let mut out = rep.id.scale(self.eval_coeff(0, xi, deriv));
        out = out.add(&rep.u.scale(self.eval_coeff(1, xi, deriv)));
        out = out.add(&rep.v.scale(self.eval_coeff(2, xi, deriv)));
        out.add(&rep.uv.scale(self.eval_coeff(3, xi, deriv)))
    }
}

/// d^k/dxi^k of an element at real xi by Cauchy-integral quadrature on a
/// circle of radius 1/2 (the poles at +-i stay at distance >= 1/2).
pub fn cauchy_derivative_matrix(
    rep: &MatrixRep,
    e: &CliffordElement,
    xi: f64,
    k: u32,
    a: f64,
    b: f64,
    nodes: usize,
) -> Result<CMat, OracleError> {
    let rho = 0.5;
    let mut acc = CMat::zeros(rep.dim_s);
    for j in 0..nodes {
        let th = 2.0 * PI * (j as f64) / (nodes as f64);
        let z = Complex64::new(xi, 0.0) + Complex64::from_polar(rho, th);
        let w = Complex64::from_polar(1.0, -(k as f64) * th);
        acc = acc.add(&rep.eval(e, z, a, b)?.scale(w));
    }
    let fact: f64 = (1..=k as u64).product::<u64>().max(1) as f64;
    Ok(acc.scale(Complex64::new(fact / (nodes as f64 * rho.powi(k as i32)), 0.0)))
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0_f64, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0_f64, x);
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        xs[i] = x;
        ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (xs, ws)
}

pub struct OracleConfig {
    pub contour_nodes: usize,
    pub line_nodes: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { contour_nodes: 256, line_nodes: 400 }
    }
}

fn numeric_case_once(
    spec: &CaseSpec,
    n: u32,
    tables: &Tables,
    a: f64,
    b: f64,
    cfg: &OracleConfig,
) -> Result<Complex64, OracleError> {
    let dim_s = match n {
        3 => 2,
        4 => 4,
        _ => 8,
    };
    let rep = MatrixRep::new(dim_s);
    if spec.label == CaseLabel::AI {
        return Ok(Complex64::new(0.0, 0.0));
    }

    let left_jet = tables.left.get(spec.r).ok_or(OracleError::MissingJet)?;
    let left_elem: &CliffordElement = match (spec.j, spec.k) {
        (1, 0) => left_jet.dxn.known().ok_or(OracleError::MissingJet)?,
        _ => &left_jet.value,
    };
    let x_deriv = spec.k; // d/dxi applied after the projection for k = 1
    let proj = NumericProjection::project(
        &left_elem.drop_odd(),
        a,
        b,
        true,
        cfg.contour_nodes,
    )?;

    let right_jet = tables.right.get(spec.l).ok_or(OracleError::MissingJet)?;
    let right_elem: &CliffordElement = match (spec.j, spec.k) {
        (0, 1) => right_jet.dxn.known().ok_or(OracleError::MissingJet)?,
        _ => &right_jet.value,
    };
    let y_deriv = spec.j + 1;
    let right_elem = right_elem.drop_odd();
    // a decaying rational with poles only at +-i is the sum of its two
    // principal parts, so its derivatives are closed-form in the contour
    // coefficients of the two projections
    let y_plus = NumericProjection::project(&right_elem, a, b, true, cfg.contour_nodes)?;
    let y_minus = NumericProjection::project(&right_elem, a, b, false, cfg.contour_nodes)?;

    // conormal line integral by xi = tan(t) on (-pi/2, pi/2)
    let (xs, ws) = gauss_legendre(cfg.line_nodes);
    let mut integral = Complex64::new(0.0, 0.0);
    for (x01, w) in xs.iter().zip(&ws) {
        let t = x01 * PI / 2.0;
        let xi = t.tan();
        let jac = (PI / 2.0) / t.cos().powi(2);
        let xm = proj.eval_matrix(&rep, xi, x_deriv);
        let ym = y_plus
            .eval_matrix(&rep, xi, y_deriv)
            .add(&y_minus.eval_matrix(&rep, xi, y_deriv));
        integral += xm.mul(&ym).trace() * w * jac;
    }

    let (pre_re, pre_im) = spec.prefactor().to_f64_pair();
    let pref = Complex64::new(pre_re, pre_im);
    Ok(pref * integral * sphere_factor(n).numeric())
}

/// Numeric evaluation of one case at concrete (a, b), with the node-doubling
/// convergence guard.
pub fn numeric_case(
    spec: &CaseSpec,
    n: u32,
    tables: &Tables,
    a: f64,
    b: f64,
    cfg: &OracleConfig,
) -> Result<Complex64, OracleError> {
    let v1 = numeric_case_once(spec, n, tables, a, b, cfg)?;
    let cfg2 = OracleConfig {
        contour_nodes: cfg.contour_nodes * 2,
        line_nodes: cfg.line_nodes * 2,
    };
    let v2 = numeric_case_once(spec, n, tables, a, b, &cfg2)?;
    let scale = v2.norm().max(1.0);
    let rel = (v1 - v2).norm() / scale;
    if rel > 1e-10 {
        return Err(OracleError::QuadratureUnconverged { rel });
    }
    Ok(v2)
}

/// Reproducible pseudorandom (a, b) pairs in [-2, 2]^2.
pub fn seeded_points(seed: u64, count: usize) -> Vec<(f64, f64)> {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
        .collect()
}

/// One case's arbitration summary over a set of (a, b) points.
#[derive(Debug, Clone)]
pub struct CaseArbitration {
    pub label: &'static str,
    pub symbolic_expr: String,
    pub pass: bool,
    pub worst: f64,
    pub points: usize,
}

/// Arbitrate every case of a configuration at the given (a, b) points.
pub fn arbitrate_config(
    n: u32,
    p1: u32,
    p2: u32,
    points: &[(f64, f64)],
    tol: f64,
) -> Result<Vec<CaseArbitration>, crate::engine::EngineError> {
    let specs = crate::engine::enumerate_cases(n, p1, p2)?;
    let tables = crate::engine::tables_for(n, p1, p2)?;
    let cfg = OracleConfig::default();
    let mut out = Vec::new();
    for spec in &specs {
        let value = crate::engine::case_value(spec, n, p1, p2, &tables)?.value;
        let mut worst = 0.0_f64;
        let mut pass = true;
        for &(a, b) in points {
            let sym = value.eval_f64(a, b);
            match numeric_case(spec, n, &tables, a, b, &cfg) {
                Ok(num) => {
                    let v = compare(sym, num, tol);
                    worst = worst.max(v.measured);
                    pass &= v.pass;
                }
                Err(_) => pass = false,
            }
        }
        out.push(CaseArbitration {
            label: spec.label.name(),
            symbolic_expr: value.to_expr().render(),
            pass,
            worst,
            points: points.len(),
        });
    }
    Ok(out)
}

/// Verdict of a symbolic-vs-numeric comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub pass: bool,
    pub symbolic: Complex64,
    pub numeric: Complex64,
    /// relative difference, or absolute when the symbolic value vanishes
    pub measured: f64,
    pub absolute_branch: bool,
}

pub fn compare(symbolic: Complex64, numeric: Complex64, tol: f64) -> Verdict {
    assert!(tol > 0.0, "tolerance must be positive");
    let diff = (symbolic - numeric).norm();
    if symbolic.norm() == 0.0 {
        // absolute comparison against a fixed threshold when the symbolic
        // side is exactly zero
        let thresh = 1e-9_f64.max(tol * 0.0 + 1e-9);
        Verdict {
            pass: diff <= thresh,
            symbolic,
            numeric,
            measured: diff,
            absolute_branch: true,
        }
    } else {
        let rel = diff / symbolic.norm();
        Verdict { pass: rel <= tol, symbolic, numeric, measured: rel, absolute_branch: false }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{CliffordElement, SpinorDim};
    use crate::engine::{enumerate_cases, tables_for};
    use crate::rational::BoundaryRational;

    #[test]
    fn matrix_rep_relations() {
        for d in [2usize, 4, 8] {
            let _ = MatrixRep::new(d); // constructor asserts the relations
        }
    }

    #[test]
    fn matrix_trace_matches_fiber_trace() {
        let rep = MatrixRep::new(8);
        let d = SpinorDim::new(6).unwrap();
        let words = [
            CliffordElement::one(),
            CliffordElement::u(),
            CliffordElement::v(),
            CliffordElement::uv(),
            CliffordElement::u().mul(&CliffordElement::u()).unwrap(),
            CliffordElement::uv().mul(&CliffordElement::v()).unwrap(),
        ];
        for w in &words {
            let m = rep.eval(w, Complex64::new(0.3, 0.0), 0.0, 0.0).unwrap();
            let sym = w
                .trace(d)
                .eval_complex(Complex64::new(0.3, 0.0), 0.0, 0.0);
            assert!((m.trace() - sym).norm() < 1e-12, "word {w}");
        }
    }

    #[test]
    fn gauss_legendre_integrates_arctan_kernel() {
        // integral of 1/(1+x^2) over R = pi, via tan substitution
        let (xs, ws) = gauss_legendre(200);
        let mut acc = 0.0;
        for (x, w) in xs.iter().zip(&ws) {
            let t = x * PI / 2.0;
            let xi: f64 = t.tan();
            acc += w * (PI / 2.0) / t.cos().powi(2) / (1.0 + xi * xi);
        }
        assert!((acc - PI).abs() < 1e-12);
    }

    #[test]
    fn contour_projection_reconstructs() {
        // pi^+ f + pi^- f = f at real points, both sides by quadrature only
        let f = BoundaryRational::inv_xi2_pow(2)
            .mul(&BoundaryRational::xi())
            .add(&BoundaryRational::inv_xi2_pow(1));
        let e = CliffordElement::scalar(f.clone());
        let plus = NumericProjection::project(&e, 0.0, 0.0, true, 256).unwrap();
        let minus = NumericProjection::project(&e, 0.0, 0.0, false, 256).unwrap();
        for k in 0..10 {
            let xi = -2.3 + 0.5 * k as f64;
            let direct = f.eval_complex(Complex64::new(xi, 0.0), 0.0, 0.0);
            let split = plus.eval_coeff(0, xi, 0) + minus.eval_coeff(0, xi, 0);
            assert!((direct - split).norm() < 1e-10, "xi = {xi}");
        }
    }

    #[test]
    fn cauchy_derivative_matches_exact() {
        let rep = MatrixRep::new(2);
        let e = CliffordElement::scalar(BoundaryRational::inv_xi2_pow(1));
        let exact = e.xi_diff(2);
        for xi in [-1.7, 0.0, 0.9] {
            let got = cauchy_derivative_matrix(&rep, &e, xi, 2, 0.0, 0.0, 256).unwrap();
            let want = rep.eval(&exact, Complex64::new(xi, 0.0), 0.0, 0.0).unwrap();
            let mut diff: f64 = 0.0;
            for (x, y) in got.d.iter().zip(&want.d) {
                diff = diff.max((x - y).norm());
            }
            assert!(diff < 1e-11, "xi = {xi}");
        }
    }

    #[test]
    fn oracle_matches_symbolic_on_a_known_case() {
        // (4,1,1) aII at a = b = 1: -(1/8)(3+1) pi * 4pi = -2 pi^2
        let specs = enumerate_cases(4, 1, 1).unwrap();
        let tables = tables_for(4, 1, 1).unwrap();
        let spec = specs.iter().find(|s| s.label == CaseLabel::AII).unwrap();
        let got = numeric_case(spec, 4, &tables, 1.0, 1.0, &OracleConfig::default()).unwrap();
        let expect = -2.0 * PI * PI;
        assert!((got.re - expect).abs() < 1e-9 * expect.abs());
        assert!(got.im.abs() < 1e-9);
    }

    #[test]
    fn compare_branches() {
        let one = Complex64::new(1.0, 0.0);
        assert!(compare(one, one, 1e-9).pass);
        let v = compare(Complex64::new(0.0, 0.0), Complex64::new(1e-12, 0.0), 1e-9);
        assert!(v.pass && v.absolute_branch);
        // a deliberate sign flip must fail
        assert!(!compare(one, -one, 1e-9).pass);
    }
}
