//! Bundled example biographies and their shared gazetteer.
//!
//! The same files live in the repository's `corpora/` directory so the CLI
//! can be pointed at them directly.

pub const GAZETTEER_TSV: &str = include_str!("../../../corpora/gazetteer.tsv");
pub const NEWTON_VITA: &str = include_str!("../../../corpora/newton.vita");
pub const SCHIAPARELLI_VITA: &str = include_str!("../../../corpora/schiaparelli.vita");

/// Isaac Newton: VITA text and gazetteer TSV.
pub fn newton_corpus() -> (&'static str, &'static str) {
    (NEWTON_VITA, GAZETTEER_TSV)
}

/// Ernesto Schiaparelli: VITA text and gazetteer TSV.
pub fn schiaparelli_corpus() -> (&'static str, &'static str) {
    (SCHIAPARELLI_VITA, GAZETTEER_TSV)
}
