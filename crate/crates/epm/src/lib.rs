//! Edge partition models (EPMs) for binary undirected networks.
//!
//! Fits three Bayesian Poisson-factorization models to a binary adjacency
//! matrix under the Bernoulli-Poisson link `b = 1(m >= 1)`, `m ~ Po(rate)`:
//!
//! * [`hgp`] — hierarchical gamma process EPM: rate_ij = phi_i' Lambda phi_j,
//!   with a full symmetric community-community rate matrix and gamma process
//!   weights shrinking unused communities. Captures homophily and stochastic
//!   equivalence.
//! * [`gp`] — gamma process EPM: the diagonal special case
//!   rate_ij = sum_k r_k phi_ik phi_jk, plus a nonparametric
//!   community-affiliation (AGM) variant with binary features and a uniform
//!   background rate.
//!
//! Inference is Gibbs sampling over latent edge counts: each observed edge
//! draws a truncated-Poisson count which is multinomial-partitioned across
//! community (pair) categories, so per-sweep cost scales with the number of
//! observed edges rather than all node pairs.
//!
//! Supporting modules: [`randkit`] (seeded variate generation), [`graph`]
//! (sparse graphs and the holdout protocol), [`common`] (edge rates, link
//! probabilities, score accumulation), [`community`] (assignment summaries
//! and matrix reordering), [`eval`] (AUC metrics and the evaluation
//! protocol), [`fit`] (the sweep driver), and [`checkpoint`] (resumable
//! fit snapshots).

pub mod checkpoint;
pub mod common;
pub mod community;
pub mod eval;
pub mod fit;
pub mod gp;
pub mod graph;
pub mod hgp;
pub mod randkit;

pub use fit::{FitConfig, FitOutcome, Model, ModelKind};
pub use graph::{HoldoutMask, SparseGraph};
pub use randkit::RngStream;
