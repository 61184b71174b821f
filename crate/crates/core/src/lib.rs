//! Exact symbolic engine for the boundary term of noncommutative residues
//! of products of Dirac-operator powers over spin manifolds whose metric is
//! a conformal warped product near the boundary, with an independent
//! floating-point quadrature oracle arbitrating every symbolic result.
//!
//! Everything reduces to exact arithmetic over Gaussian rationals: rational
//! functions of the conormal variable with poles at +-i, a four-dimensional
//! Clifford fiber at the boundary point, half-line projection by principal
//! parts, line integration by residues, and symbol composition on
//! boundary-point jets. The supported configurations (n, p1, p2) are
//! (3,1,1), (4,1,1), (6,2,2) and (6,1,3).

pub mod clifford;
pub mod engine;
pub mod expr;
pub mod geometry;
pub mod halfline;
pub mod oracle;
pub mod params;
pub mod rat;
pub mod rational;
pub mod registry;
pub mod report;
pub mod symbols;
pub mod verify;

pub use clifford::{CliffordElement, SpinorDim};
pub use engine::{
    case_value, enumerate_cases, phi_total, res_form, solve_special_c, CaseLabel, CaseSpec,
    CaseValue, EngineError, TheoremReport,
};
pub use expr::Expr;
pub use params::ParamPoly;
pub use rat::GaussianRational;
pub use rational::{BoundaryRational, CalcError};
pub use symbols::{compose_tables, dirac_table, inverse_table, SymbolTable};
