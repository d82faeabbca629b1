//! Invariants of the squarefree interval ideals `I_{α,β}` generated by
//! `x_{a_i} ⋯ x_{b_i}` for two increasing integer sequences, computed by
//! recursion on the sequences and checked against brute-force oracles.

pub mod dlx;
pub mod error;
pub mod golden;
pub mod hilbert;
pub mod invariants;
pub mod linalg;
pub mod monomial;
pub mod powers;
pub mod resolutions;
pub mod seqpair;
pub mod stanley;
pub mod sweep;

pub use error::{Error, Result};
pub use hilbert::{Poly, RationalSeries};
pub use monomial::{Monomial, MonomialIdeal, VarSet};
pub use resolutions::{BettiTable, Subject};
pub use seqpair::{SequencePair, Shape, ShapeTag};
pub use stanley::Mode;
