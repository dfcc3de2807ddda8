//! Subtraction-free expressions and their tropicalization.
//!
//! Tropicalization follows the min convention: `+` becomes `min`, `*` becomes
//! `+`, `/` becomes `-`, and every positive constant becomes `0`.

mod expr;
mod pl;

pub use expr::{parse_sf, sf_compose, sf_eval, sf_normalize, SfExpr};
pub use pl::{pl_compose, pl_eval, tropicalize, AffineForm, PlComponent, PlMap};
