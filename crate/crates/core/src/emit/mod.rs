//! Deterministic output formats: KML placemarks, GeoJSON and itinerary tables.
//!
//! Every emitter is a pure function of its inputs and produces `\n`-terminated
//! UTF-8 text.

mod geojson;
mod itinerarium;
mod kml;
pub mod xml;

use thiserror::Error;

use crate::gazetteer::Gazetteer;
use crate::geo::{build_itinerary, ItineraryError};
use crate::model::{validate_biography, Biography, Diagnostic, ItineraryLeg, LifeEvent};

pub use geojson::emit_geojson;
pub use itinerarium::{emit_itinerarium, ItinerariumFormat};
pub use kml::emit_kml;

pub const KML_NAMESPACE: &str = "http://www.opengis.net/kml/2.2";

/// Red, orange, yellow, green, blue in KML `aabbggrr` order.
pub const DEFAULT_PALETTE: [&str; 5] = ["ff0000ff", "ff00a5ff", "ff00ffff", "ff00ff00", "ffff0000"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("bucket count must be at least 1")]
    NoBuckets,
    #[error("palette must contain at least one color")]
    EmptyPalette,
    #[error("invalid KML color `{0}` (expected 8 hex digits, aabbggrr)")]
    BadColor(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmitConfig {
    bucket_count: usize,
    palette: Vec<String>,
    include_attachments: bool,
}

impl Default for EmitConfig {
    fn default() -> Self {
        Self {
            bucket_count: 5,
            palette: DEFAULT_PALETTE.iter().map(|c| c.to_string()).collect(),
            include_attachments: true,
        }
    }
}

impl EmitConfig {
    pub fn new(
        bucket_count: usize,
        palette: Vec<String>,
        include_attachments: bool,
    ) -> Result<Self, ConfigError> {
        if bucket_count == 0 {
            return Err(ConfigError::NoBuckets);
        }
        if palette.is_empty() {
            return Err(ConfigError::EmptyPalette);
        }
        if let Some(bad) = palette
            .iter()
            .find(|c| c.len() != 8 || !c.bytes().all(|b| b.is_ascii_hexdigit()))
        {
            return Err(ConfigError::BadColor(bad.clone()));
        }
        Ok(Self {
            bucket_count,
            palette: palette.into_iter().map(|c| c.to_ascii_lowercase()).collect(),
            include_attachments,
        })
    }

    pub fn with_bucket_count(self, bucket_count: usize) -> Result<Self, ConfigError> {
        Self::new(bucket_count, self.palette, self.include_attachments)
    }

    pub fn bucket_count(&self) -> usize {
        self.bucket_count
    }

    pub fn palette(&self) -> &[String] {
        &self.palette
    }

    pub fn include_attachments(&self) -> bool {
        self.include_attachments
    }

    pub fn color(&self, bucket: usize) -> &str {
        &self.palette[bucket % self.palette.len()]
    }
}

/// Era index of `e` among `b`'s events, in `0..n`.
///
/// The span from the earliest to the latest start day is cut into `n` equal
/// slices: `floor(n * (start - t0) / (t1 - t0 + 1))`.
pub fn timeline_bucket(e: &LifeEvent, b: &Biography, n: usize) -> usize {
    let starts = b.events.iter().map(|ev| ev.when.start_day());
    let (Some(t0), Some(t1)) = (starts.clone().min(), starts.max()) else {
        return 0;
    };
    bucket_of(e.when.start_day(), t0, t1, n)
}

/// Buckets for every event, indexed like `b.events`.
pub fn timeline_buckets(b: &Biography, n: usize) -> Vec<usize> {
    let starts: Vec<i64> = b.events.iter().map(|e| e.when.start_day()).collect();
    let (Some(&t0), Some(&t1)) = (starts.iter().min(), starts.iter().max()) else {
        return Vec::new();
    };
    starts.iter().map(|&s| bucket_of(s, t0, t1, n)).collect()
}

fn bucket_of(start: i64, t0: i64, t1: i64, n: usize) -> usize {
    if t1 == t0 || n <= 1 {
        return 0;
    }
    let n = n as i128;
    let bucket = n * i128::from(start - t0) / i128::from(t1 - t0 + 1);
    bucket.clamp(0, n - 1) as usize
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmitError {
    #[error("biography has {} validation error(s)", .0.iter().filter(|d| d.is_error()).count())]
    Invalid(Vec<Diagnostic>),
    #[error(transparent)]
    Unresolved(#[from] ItineraryError),
}

/// Validation plus itinerary, the common front half of every emitter.
fn prepare(b: &Biography, g: &Gazetteer) -> Result<Vec<ItineraryLeg>, EmitError> {
    let diags = validate_biography(b, None);
    if diags.iter().any(Diagnostic::is_error) {
        return Err(EmitError::Invalid(diags));
    }
    Ok(build_itinerary(b, g)?)
}
