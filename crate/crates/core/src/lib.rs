//! Certified residual solvability for one-relator groups.
//!
//! Given a presentation `⟨x₁, …, x_q ; r⟩`, the [`classifier`] applies a fixed
//! list of sufficient criteria (free groups, positive relators, commutators
//! of positive words, the `[a, [a,b]ⁿ]` family, the `[s_k, y]` tower, the
//! Magnus free-by-cyclic test, surface relators) and returns certificates
//! that can be re-checked independently. The [`oracle`] looks for finite
//! solvable quotients separating a word from the identity.

pub mod classifier;
pub mod cli;
pub mod golden;
pub mod hall;
pub mod magnus;
pub mod oracle;
pub mod parser;
pub mod presentation;
pub mod report;
pub mod survey;
pub mod word;

pub use presentation::{Presentation, WordExpr};
pub use word::{Gen, Letter, Word};
