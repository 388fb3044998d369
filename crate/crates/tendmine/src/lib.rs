//! Decision-tree induction and evaluation for nominal datasets.
//!
//! `tendmine` implements the classic ID3/C4.5 family of decision-tree
//! learners for tables of nominal attributes: entropy-based split selection
//! by information gain or gain ratio, multi-way splits, fractional routing
//! of missing values, and pessimistic subtree-replacement pruning. Trained
//! trees classify with per-class probabilities and can be serialized,
//! rendered as indented text, or exported to DOT.
//!
//! The evaluation suite mirrors the long-standing Weka report layout:
//! per-class TP/FP rates, precision, recall, F-measure and ROC area, Cohen's
//! kappa, mean absolute and root mean squared error over class-indicator
//! vectors, relative errors against an add-one-smoothed prior baseline, the
//! Kononenko-Bratko information score, and SF class complexity. Both
//! training-set evaluation and seeded stratified cross-validation are
//! supported.
//!
//! # Getting started
//!
//! ```
//! use tendmine::{build_tree, corpus, InductionConfig};
//!
//! let data = corpus::bloggers();
//! let tree = build_tree(&data, &InductionConfig::default()).unwrap();
//! let prediction = tree.classify(&data.instances()[0]).unwrap();
//! assert_eq!(prediction.probabilities.len(), 2);
//! ```
//!
//! The `examples/` directory demonstrates each capability end to end:
//!
//! * `load_and_stats` - parsing ARFF, class distributions, crosstabs
//! * `split_scores` - entropy, information gain, split info, gain ratio
//! * `induce_tree` - growing and pruning a tree, text rendering
//! * `evaluate_training` - the full report on training data
//! * `cross_validate` - stratified 10-fold cross-validation
//! * `predict_missing` - classifying instances with missing values
//! * `export_dot` - DOT output for graph tooling
//!
//! A thin command-line front end (`tendmine`) wraps the same operations as
//! `train`, `evaluate`, `cv`, `predict`, `stats`, and `export` subcommands.

pub mod arff;
pub mod cli;
pub mod corpus;
pub mod csv;
pub mod dataset;
mod error;
pub mod evaluation;
pub mod folds;
pub mod induction;
pub mod infotheory;
pub mod tree;

pub use arff::parse_arff;
pub use csv::parse_csv;
pub use dataset::{AttributeSpec, ClassDistribution, Crosstab, Dataset, DatasetSchema, Instance};
pub use error::{Error, Result};
pub use evaluation::{
    cross_validate, evaluate_model, kappa, kb_information, per_class_metrics,
    probabilistic_error_metrics, roc_area, sf_complexity, ClassMetricsRow, ConfusionMatrix,
    ErrorMetrics, EvaluationReport, KbInformation, PriorModel, SfComplexity,
};
pub use folds::stratified_folds;
pub use induction::{build_tree, prune_tree, select_split, InductionConfig, SplitCriterion};
pub use infotheory::{
    entropy, evaluate_split, gain_ratio, information_gain, split_info, SplitEvaluation,
};
pub use tree::{DecisionTree, Prediction, TreeNode, TreeStats};
