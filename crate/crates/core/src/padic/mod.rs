//! Capped-precision arithmetic in `Q_p` and `Q_p(ζ_{p^m})`.

mod element;
mod field;
mod functions;
mod parse;
pub mod resultant;

pub use element::{PadicElement, Valuation};
pub use field::{is_prime, FieldDesc};
pub use functions::{angle, binom_pow, exp, log1p, teichmuller};
pub use parse::parse_element;

#[allow(unused_imports)]
pub(crate) use element::ceil_div;
