//! Distributed broadcast encryption over composite-order symmetric pairing
//! groups.
//!
//! The toolkit ships two key-encapsulation schemes: a basic semi-static one
//! and its doubled, adaptively secure variant, together with a public-key
//! directory, security-game harnesses, and a CLI. Group arithmetic runs on
//! either a desk-scale supersingular curve or an exact symbolic
//! (exponent-arithmetic) backend; the two agree on every algebraic identity
//! and the symbolic backend doubles as a test oracle.
//!
//! All parameter sets this crate can realistically generate are **toy
//! parameters**: the composite order is far too small to resist factoring
//! or discrete logs. Use this crate to study the constructions, not to
//! protect data.

pub mod bits;
pub mod dbe_ad;
pub mod dbe_ss;
pub mod directory;
pub mod error;
pub mod games;
pub mod groups;
pub mod hashing;
pub mod rng;
pub mod selftest;
pub mod serial;
pub mod ske;

pub use bits::BitString;
pub use error::{Error, Result};
