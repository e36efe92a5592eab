//! Domain types shared by every stage of the pipeline: dates, points,
//! events, biographies and itinerary legs.

mod date;
mod point;
mod validate;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use date::{days_in_month, is_leap_year, CalendarDate, DateInterval};
pub use point::{normalize_lon, GeoPoint};
pub use validate::{validate_biography, Diagnostic, Severity};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("year out of range: {0}")]
    YearOutOfRange(i32),
    #[error("month out of range: {0}")]
    MonthOutOfRange(u32),
    #[error("day out of range: {year:04}-{month:02}-{day:02}")]
    DayOutOfRange { year: i32, month: u32, day: u32 },
    #[error("latitude out of range: {0}")]
    LatitudeOutOfRange(f64),
    #[error("coordinate is not a finite number")]
    NonFiniteCoordinate,
    #[error("interval end precedes start: {end} < {start}")]
    IntervalReversed {
        start: CalendarDate,
        end: CalendarDate,
    },
}

/// True when `s` matches `[a-z0-9][a-z0-9-]*`.
pub fn is_token(s: &str) -> bool {
    let mut bytes = s.bytes();
    match bytes.next() {
        Some(b) if b.is_ascii_lowercase() || b.is_ascii_digit() => {}
        _ => return false,
    }
    bytes.all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'-')
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum EventKind {
    Birth,
    Death,
    Residence,
    Study,
    Work,
    Visit,
    Excavation,
    #[default]
    Other,
}

impl EventKind {
    pub const ALL: [EventKind; 8] = [
        EventKind::Birth,
        EventKind::Death,
        EventKind::Residence,
        EventKind::Study,
        EventKind::Work,
        EventKind::Visit,
        EventKind::Excavation,
        EventKind::Other,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            EventKind::Birth => "birth",
            EventKind::Death => "death",
            EventKind::Residence => "residence",
            EventKind::Study => "study",
            EventKind::Work => "work",
            EventKind::Visit => "visit",
            EventKind::Excavation => "excavation",
            EventKind::Other => "other",
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown event kind `{0}`")]
pub struct UnknownKind(pub String);

impl FromStr for EventKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EventKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| UnknownKind(s.to_string()))
    }
}

/// One dated, placed moment of a life.
#[derive(Debug, Clone, PartialEq)]
pub struct LifeEvent {
    pub id: String,
    pub kind: EventKind,
    pub when: DateInterval,
    /// Gazetteer key as authored; normalized at lookup time.
    pub place_key: Option<String>,
    /// Inline coordinates; wins over `place_key` when both are present.
    pub point: Option<GeoPoint>,
    pub label: String,
    pub note: String,
    pub attachments: Vec<String>,
}

impl LifeEvent {
    /// Label used when none is authored: the place key, else the event id.
    pub fn default_label(&self) -> &str {
        self.place_key.as_deref().unwrap_or(&self.id)
    }

    pub fn has_place(&self) -> bool {
        self.place_key.is_some() || self.point.is_some()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Biography {
    pub title: String,
    pub id: String,
    /// Events in authoring order.
    pub events: Vec<LifeEvent>,
    pub gazetteer_hint: Option<String>,
}

impl Biography {
    /// Event indices ordered by (start day, end day, authoring index).
    pub fn chronological_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.events.len()).collect();
        order.sort_by_key(|&i| {
            let when = &self.events[i].when;
            (when.start_day(), when.end_day(), i)
        });
        order
    }
}

/// How an event's point was found.
#[derive(Debug, Clone, PartialEq)]
pub enum PlaceRef {
    /// Looked up in the gazetteer under this normalized key.
    Gazetteer { key: String, display_name: String },
    /// Inline coordinates; carries the authored place key, if any.
    Inline { place_key: Option<String> },
}

impl PlaceRef {
    /// Short name for tables: the gazetteer key, the authored key, or `inline`.
    pub fn name(&self) -> &str {
        match self {
            PlaceRef::Gazetteer { key, .. } => key,
            PlaceRef::Inline {
                place_key: Some(key),
            } => key,
            PlaceRef::Inline { place_key: None } => "inline",
        }
    }
}

/// A hop of the itinerary, in chronological order.
#[derive(Debug, Clone, PartialEq)]
pub struct ItineraryLeg {
    pub index: usize,
    pub event_id: String,
    /// Position of the event in authoring order.
    pub event_index: usize,
    pub label: String,
    pub when: DateInterval,
    pub place: PlaceRef,
    pub point: GeoPoint,
    pub leg_km: f64,
    pub cum_km: f64,
}
