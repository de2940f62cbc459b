//! The supersingular curve `E: y^2 + y = x^3 + x`, its quartic twists
//! `E_{A,B}` and the rank formulas.

mod curve;
mod twist;

pub use curve::{e_count_bruteforce, e_point_count_formula, frobenius, iota, BInvariants, EPoint, WeierstrassCurve};
pub use twist::{
    build_quartic_twist, check_twist_isomorphism, e_extremality, equation_residual, quadratic_twist_eh,
    rank_constant_base, rank_from_degrees, rank_theorem, twist_iota_residual, verify_twist_isomorphism, Hypothesis,
    IsoCheck, QuadraticTwist, RankReport, SymbolicInvariants, TwistCurve, MAX_VERIFIED_ORDER,
};
