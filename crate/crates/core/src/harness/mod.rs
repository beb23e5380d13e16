//! Config-driven pipeline behind the `qtext` binary.

mod commands;
mod config;
mod pipeline;
mod report;

pub use commands::{
    cmd_embed, cmd_experiment, cmd_kernel, cmd_train_eval, load_config, EmbedSummary, KernelSummary,
    EMBEDDINGS_FILE, FEATURES_FILE, GRAM_EXACT_FILE, GRAM_TEST_FILE, GRAM_TRAIN_FILE, KERNEL_SUMMARY_FILE,
    MODEL_FILE,
};
pub use config::{AmpQubits, DatasetKind, EmbeddingSource, ExperimentConfig, MapChoice, Overrides, DEFAULT_SHOTS};
pub use pipeline::{
    bow_seed, embedding_table, featurize, fit_and_score, kernels, load_group_map, map_inputs, run_seed, Corpus,
    Evaluation,
};
pub use report::{format_cell, mean_stddev, CellResult, ExperimentReport, ReportPayload, SeedFailure};
