//! Bi-infinite sequences and the functionals `λ_i`, `m`, `ℓ`.

pub mod biseq;
pub mod lemma24;
pub mod maximize;
pub mod values;

pub use biseq::BiSeq;
pub use lemma24::{lemma24_check, Lemma24Record};
pub use maximize::{max_lambda0_on_subshift, MaxLambda};
pub use values::{lagrange_value, lambda_at, markov_value, Attained, ValueReport};
