//! Compile biography timelines into georeferenced artifacts.
//!
//! A biography is authored as VITA text (see [`vita`]): a list of life
//! events, each a date interval bound to a place. Places resolve through an
//! offline [`gazetteer`]; [`geo`] orders events into an itinerary with
//! great-circle distances; [`emit`] writes KML, GeoJSON and itinerary tables.
//!
//! ```
//! use vita::{corpora, emit, gazetteer, vita as format};
//!
//! let (source, tsv) = corpora::schiaparelli_corpus();
//! let bio = format::parse_biography(source).unwrap();
//! let places = gazetteer::load_gazetteer(tsv).unwrap();
//! let kml = emit::emit_kml(&bio, &places, &emit::EmitConfig::default()).unwrap();
//! assert!(kml.contains("<begin>1904-01-01</begin>"));
//! ```

pub mod corpora;
pub mod emit;
pub mod gazetteer;
pub mod geo;
pub mod model;
pub mod vita;
