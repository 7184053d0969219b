//! Finite products of Łukasiewicz chains, the centripetal order and the
//! σ-game, McNaughton functions, and the matching unital ℓ-groups.

pub mod centripetal;
pub mod cli;
pub mod error;
pub mod format;
pub mod lgroup;
pub mod mcnaughton;
pub mod mv;
pub mod plot;
pub mod rational;
pub mod spectra;
pub mod term;
pub mod verifier;

pub use centripetal::{central_cone, game_fixpoint, game_step, half_set, CentralCone, GameTrace};
pub use error::{Error, Result};
pub use lgroup::{LGroupElement, UnitalLGroup};
pub use mcnaughton::{compose, PLFunction};
pub use mv::{Chain, ChainProduct, MvElement};
pub use rational::Rational;
pub use spectra::{Ideal, SpectrumPoint};
pub use term::{MvOps, Term};
