pub mod discrete;
pub mod estimate;
pub mod holder;
pub mod lambda;
pub mod prune;
pub mod splice;

pub use discrete::{discrete_below_3, DiscreteValue};
pub use estimate::{alphabet_for, check_grid, d_estimate, scan, DEstimate, Hypothesis, SpectrumScan};
pub use prune::{build_pt, ell_for_eps, prune_words, PruneResult, WordStatus};
pub use splice::{lagrange_estimate, splice_theta, window_check, ChainLink, SpliceConfig, SpliceTheta};
pub use holder::{holder_exponent_probe, random_pairs, HolderProbe};
