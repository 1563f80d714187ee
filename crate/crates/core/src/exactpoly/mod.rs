//! Exact arithmetic: rationals, polynomials, linear algebra and the
//! elimination routines built on them.

pub mod apoly;
pub mod form;
pub mod irreducible;
pub mod matrix;
pub mod modp;
pub mod rat;
pub mod resultant;
pub mod roots;
pub mod solve;
pub mod upoly;

pub use apoly::{AffinePoly, BlowupChart, ChartTag};
pub use form::{parse_form, TernaryForm};
pub use matrix::RatMatrix;
pub use rat::{rat, ratio, Rat};
pub use resultant::{form_gcd, squarefree_and_primitive};
pub use solve::{common_zeros, normalize_point, ProjectivePoint, SolveError};
pub use upoly::UPoly;
