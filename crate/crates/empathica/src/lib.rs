//! Empathy-weighted one-shot prisoner dilemma toolkit.
//!
//! The crate has five pieces:
//!
//! - [`bimatrix`]: exact equilibrium, dominance, and Pareto analysis of
//!   generic 2x2 two-player games, including interior mixed equilibria.
//! - [`empathy`]: the other-regarding payoff transform (each player's payoff
//!   becomes `own + lambda * other`) and the closed-form partition of the
//!   `(lambda12, lambda21)` plane into equilibrium regions, cross-checked
//!   against the generic solver.
//! - [`iri`]: scoring and scale classification for the 28-item Interpersonal
//!   Reactivity Index questionnaire (reverse-coded items, four subscales).
//! - [`stats`]: contingency marginals, Pearson correlation, strict Theil-Sen
//!   median-slope regression, and the answer encodings used by the study.
//! - [`study`]: the embedded study corpus (47 participants) and the
//!   replication pipeline that regenerates the study's result tables next to
//!   the published figures.

pub mod bimatrix;
pub mod empathy;
pub mod iri;
pub mod stats;
pub mod study;
