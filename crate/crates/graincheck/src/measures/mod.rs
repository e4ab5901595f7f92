//! Distribution primitives: finite and parametric one-dimensional laws,
//! posterior ensembles, average posteriors, density ratios, and tail
//! probabilities. All values are immutable after construction and all
//! operations are pure.

mod ensemble;
mod finite;
mod parametric;
mod ratio;
mod tail;

pub use ensemble::{
    average_posterior, cell_average_posterior, AveragePosterior, EnsembleEntry, Posterior,
    PosteriorEnsemble,
};
pub use finite::{state_labels, FiniteDistribution};
pub use parametric::{
    coverage_interval, supported_within, ParametricDistribution, ParametricMixture, Support,
};
pub use ratio::{
    density_ratio_sup, grid_max_ratio, log_quad_pieces, LogQuadPiece, RatioDivergence, RatioSup,
    DIVERGENCE_THRESHOLD,
};
pub use tail::{TailClass, TailOrdering};
