//! Instance generators and the experiment runner.

mod experiment;
mod generate;

pub use experiment::{
    derive_seed, read_records, run_experiment, run_one, standard_corpus, summarize, summarize_file, summary_csv, ExperimentConfig, ExperimentRecord,
    ExpansionSummary, RecordStatus, RecordsHeader, SummaryRow, RECORD_FORMAT_VERSION,
};
pub use generate::{generate, Family, GeneratorSpec};
