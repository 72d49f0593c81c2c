//! Exact polynomial arithmetic in `t` over `F_p` and in `X` over `F_p[t]`.

mod modular;
mod parse;
mod ratfun;
mod tpoly;
mod xpoly;

pub use modular::separable_mod_certificate;
pub use ratfun::RatFun;
pub use tpoly::TPoly;
pub use xpoly::{is_separable_squarefree, xpoly_gcd_over_fraction_field, XPoly};

/// Exponent order used when rendering polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TermOrder {
    #[default]
    Descending,
    Ascending,
}
