//! Numerical checks of the inequalities, reported as [`InequalityReport`]s.
//!
//! Inequalities with explicit constants are checked directly. Embeddings
//! with unspecified constants are checked for finiteness on corpora and for a
//! bounded log-log slope along scaling families such as Dirichlet kernels.

mod corpus;
mod decay;
mod embedding;
mod nikolskii;
mod report;
mod suite;
mod weyl;

pub use corpus::{make_corpus, Corpus, Profile};
pub use decay::{corollary_decay, Decay, DecayPoint};
pub use embedding::{conjugate, embedding_ratio, embedding_suite, Embedding, EmbeddingValue, Family, SLOPE_LIMIT};
pub use nikolskii::{nikolskii_check, nikolskii_pairs, nikolskii_weyl_check, rho_of, TOL_EXACT, TOL_REFINED};
pub use report::{
    summarize, write_jsonl, InequalityReport, Instance, Relation, SummaryRow, SupportInfo, REPORT_FORMAT,
    REPORT_VERSION,
};
pub use suite::{
    corpora, default_corpus_band, default_decay_grid, default_family, default_weyl_grid, derived_seed, run_corollary,
    run_embeddings, run_hausdorff_young, run_nikolskii, run_sharpness, run_suite, run_weyl, run_wiener_chain,
    wiener_pairs, Suite, SuiteConfig,
};
pub use weyl::{least_squares, weyl_fit, WeylFit};
