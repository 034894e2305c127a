//! Experiment drivers: sampling runs with deterministic per-sample streams,
//! chunked checkpoints and CSV or JSON output.

mod commands;
mod config;
mod driver;
pub mod stats;
mod table;

pub use commands::{
    cmd_bell, cmd_catalog, cmd_compare, cmd_concentration, cmd_entanglement, cmd_export_vertices, cmd_facet_audit,
    cmd_facets_export, cmd_facets_import, cmd_hist, cmd_hull, cmd_threshold, projection_words, run_command, state_hash,
};
pub use config::{ExperimentConfig, Generator, OutputFormat, DEFAULT_SAMPLES, DEFAULT_THRESHOLD_SAMPLES};
pub use driver::{chunk_ranges, run_chunked, run_samples, CHECKPOINT_EVERY};
pub use table::{format_sig, Cell, Check, Report, Row, Table};
