//! Truncated 2-adic arithmetic: Z4, the maximal order O2, Teichmuller
//! digits, the embedding of Q8, and coaction evaluation.

pub mod coaction;
pub mod o2;
pub mod z4;

pub use coaction::{CoactionSpec, Completion, Convention, Monomial};
pub use o2::{g24_elements, q8_elements, q8_embed, O2Element, TeichDigits};
pub use z4::{hensel_sqrt, Z4Element};

/// Integers mod 2^8, S-adic length 16.
pub const DEFAULT_PRECISION: u32 = 8;
