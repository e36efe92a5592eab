//! The VITA authoring format.
//!
//! A line-oriented text format: `[biography]` and `[event]` block headers,
//! `key = value` pairs inside blocks, `#` comments to end of line.
//!
//! ```text
//! [biography]
//! title = Isaac Newton
//! id = newton
//! gazetteer = gazetteer.tsv
//!
//! [event]
//! id = birth
//! kind = birth
//! start = 1643-01-04
//! place = woolsthorpe-manor
//! ```

mod date_expr;
mod parse;
mod serialize;

pub use date_expr::{parse_date_expr, DateExprError};
pub use parse::{parse_biography, parse_document, ParseDiagnostic, ParsedBiography, SourceMap};
pub use serialize::serialize_biography;
