//! Bundled example corpus.
//!
//! The crate ships a 100-instance survey of bloggers from Iran's Kohkiloye
//! and Boyer Ahmad province (`data/bloggers.arff`). Each row describes one
//! blogger by education level, political caprice, writing topic, local media
//! turnover (`lmt`), and local political and social space (`lpss`); the class
//! `pb` records whether the author blogs professionally rather than
//! seasonally.

use crate::arff::parse_arff;
use crate::dataset::Dataset;

/// ARFF text of the bundled bloggers corpus.
pub const BLOGGERS_ARFF: &str =
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/bloggers.arff"));

/// Parses the bundled bloggers corpus.
pub fn bloggers() -> Dataset {
    parse_arff(BLOGGERS_ARFF).expect("the bundled corpus is valid ARFF")
}
