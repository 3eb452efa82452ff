//! Laurent polynomials and rational functions in `z`, the three involutions
//! and the two monomial orders.

mod order;
mod poly;
mod provenance;
mod ratfunc;

pub use order::{leading_term, ns_rank, ns_unrank, MonomialOrder};
pub use poly::LaurentPoly;
pub use provenance::{involution_raw, Builder, Involution, Parametric};
pub use ratfunc::{ratfunc_apply_division, RatFunc};
