//! Residue-series pricing for exponential Lévy models driven by tempered
//! stable processes.
//!
//! The crate evaluates densities and digital/European option prices as
//! absolutely convergent multi-index series built from gamma-function
//! ratios and incomplete gamma functions. Independent Fourier pricers
//! (Gil-Pelaez, Lewis, Carr-Madan) live in [`fourier_oracle`] and are used
//! to cross-check every series.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`specfun`] | gamma family, incomplete gammas, Pochhammer, ₂F₁, double-double arithmetic |
//! | [`model`] | parameter records, characteristic functions, compensators |
//! | [`density`] | one- and two-sided density series |
//! | [`mellin_pricing`] | general tempered stable digitals and calls |
//! | [`special_models`] | KoBoL, CGMY, bilateral Gamma, Variance Gamma, one-sided |
//! | [`fourier_oracle`] | reference pricers and density inversion |
//! | [`cli_bench`] | command implementations behind the `tsp` binary |

pub mod cli_bench;
pub mod density;
pub mod error;
pub mod fourier_oracle;
pub mod mellin_pricing;
pub mod model;
pub mod special_models;
pub mod specfun;

pub use error::{Error, Result};
pub use model::{BgParams, CharFn, MarketSpec, OneSidedParams, TsParams};
pub use mellin_pricing::{Branch, PriceQuote};
pub use density::Truncation;
