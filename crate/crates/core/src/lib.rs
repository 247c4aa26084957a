//! Kakeya sets over finite fields, made executable.
//!
//! The crate builds and verifies Kakeya and (δ,γ)-Kakeya sets in `F_q^n`,
//! finds vanishing polynomials by exact elimination, replays the polynomial
//! method lower-bound arguments as re-checkable [`certify::Certificate`]s, and
//! searches for minimum Kakeya sets at small parameters.

pub mod bounds;
pub mod certify;
pub mod error;
pub mod field;
pub mod kakeya;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod search;
pub mod setfile;
pub mod space;

pub use bounds::{alon_tao_bound, corollary_bound, count_zeros, thm2_bound, BoundReport, Formula};
pub use certify::{
    certify_cascade, certify_cascade_unchecked, certify_refutation_thm2, verify_certificate, Certificate, CertificateKind,
    Pipeline, Step, VerificationReport,
};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use kakeya::{
    check_delta_gamma, cone_closure, construct, direction_profile, is_kakeya, product_set, Construction,
    DirectionProfile, PointSet,
};
pub use linalg::{vanishing_polynomial, Matrix};
pub use poly::{monomials_of_degree, Degree, DegreeMode, Monomial, Polynomial, UnivariatePolynomial};
pub use rational::{parse_rational, Rational};
pub use search::{
    minimal_kakeya_exact, minimal_kakeya_greedy, minimal_kakeya_line_enumeration, minimal_kakeya_subsets, Optimality,
    SearchLimits, SearchResult, SearchSummary,
};
pub use space::{Direction, Space};

/// Serializes through `serde_json::Value`, whose maps are sorted, so every
/// JSON document this crate emits has sorted keys. Ends with a newline.
pub fn to_sorted_json<T: serde::Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}
