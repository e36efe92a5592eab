//! Offline place lookup from a tab-separated gazetteer file.
//!
//! One entry per line: `key<TAB>display_name<TAB>lat<TAB>lon<TAB>region`.
//! Lines starting with `#` are comments; there is no header row.

mod remote;

use std::collections::btree_map::{self, BTreeMap};
use std::fmt::Write;

use thiserror::Error;

use crate::model::{is_token, normalize_lon, GeoPoint, LifeEvent, PlaceRef};
use crate::vita::ParseDiagnostic;

pub use remote::{remote_resolve, GeocodeError};

#[derive(Debug, Clone, PartialEq)]
pub struct GazetteerEntry {
    pub key: String,
    pub display_name: String,
    pub point: GeoPoint,
    pub region: String,
}

impl GazetteerEntry {
    /// The entry as one TSV line, without the trailing newline.
    pub fn to_tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.key,
            self.display_name,
            self.point.lat(),
            self.point.lon(),
            self.region
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("unknown place `{0}`")]
    UnknownPlace(String),
    #[error("name normalizes to empty key: `{0}`")]
    EmptyKey(String),
}

/// Immutable key → entry map.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Gazetteer {
    entries: BTreeMap<String, GazetteerEntry>,
}

impl Gazetteer {
    pub fn get(&self, key: &str) -> Option<&GazetteerEntry> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> btree_map::Values<'_, String, GazetteerEntry> {
        self.entries.values()
    }

    /// Serializes entries in key order.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for entry in self.entries.values() {
            let _ = writeln!(out, "{}", entry.to_tsv_row());
        }
        out
    }
}

impl FromIterator<GazetteerEntry> for Gazetteer {
    fn from_iter<I: IntoIterator<Item = GazetteerEntry>>(iter: I) -> Self {
        Self {
            entries: iter.into_iter().map(|e| (e.key.clone(), e)).collect(),
        }
    }
}

pub fn load_gazetteer(source: &str) -> Result<Gazetteer, Vec<ParseDiagnostic>> {
    let mut entries: BTreeMap<String, (usize, GazetteerEntry)> = BTreeMap::new();
    let mut diags = Vec::new();

    for (index, raw) in source.split('\n').enumerate() {
        let line_no = index + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 5 {
            diags.push(ParseDiagnostic::new(
                line_no,
                1,
                format!("expected 5 tab-separated columns, found {}", cols.len()),
            ));
            continue;
        }
        // 1-based column where field `i` starts
        let col_of = |i: usize| cols[..i].iter().map(|c| c.chars().count() + 1).sum::<usize>() + 1;

        let key = cols[0];
        if !is_token(key) {
            diags.push(ParseDiagnostic::new(line_no, 1, format!("invalid key `{key}`")));
            continue;
        }
        let lat = match cols[2].trim().parse::<f64>() {
            Ok(v) if v.is_finite() => v,
            _ => {
                diags.push(ParseDiagnostic::new(
                    line_no,
                    col_of(2),
                    format!("invalid latitude `{}`", cols[2]),
                ));
                continue;
            }
        };
        let lon = match cols[3].trim().parse::<f64>() {
            Ok(v) if v.is_finite() => v,
            _ => {
                diags.push(ParseDiagnostic::new(
                    line_no,
                    col_of(3),
                    format!("invalid longitude `{}`", cols[3]),
                ));
                continue;
            }
        };
        if !(-90.0..=90.0).contains(&lat) {
            diags.push(ParseDiagnostic::new(line_no, col_of(2), "latitude out of range"));
            continue;
        }
        if !(-180.0..=180.0).contains(&lon) {
            diags.push(ParseDiagnostic::new(line_no, col_of(3), "longitude out of range"));
            continue;
        }
        let point = GeoPoint::new(lat, normalize_lon(lon)).expect("range checked");
        let entry = GazetteerEntry {
            key: key.to_string(),
            display_name: cols[1].to_string(),
            point,
            region: cols[4].to_string(),
        };
        match entries.entry(key.to_string()) {
            btree_map::Entry::Occupied(first) => diags.push(ParseDiagnostic::new(
                line_no,
                1,
                format!(
                    "duplicate key `{key}` (lines {} and {line_no})",
                    first.get().0
                ),
            )),
            btree_map::Entry::Vacant(slot) => {
                slot.insert((line_no, entry));
            }
        }
    }

    if diags.is_empty() {
        Ok(Gazetteer {
            entries: entries.into_iter().map(|(k, (_, e))| (k, e)).collect(),
        })
    } else {
        Err(diags)
    }
}

/// Turns a free-form place name into a gazetteer key.
///
/// Lowercases, collapses runs of whitespace, `_` and `-` into a single `-`,
/// and strips leading/trailing `-`. Non-ASCII letters are kept (lowercased).
pub fn normalize_key(name: &str) -> Result<String, ResolveError> {
    let mut out = String::with_capacity(name.len());
    let mut pending_sep = false;
    for c in name.chars() {
        if c.is_whitespace() || c == '_' || c == '-' {
            pending_sep = true;
            continue;
        }
        if pending_sep && !out.is_empty() {
            out.push('-');
        }
        pending_sep = false;
        out.extend(c.to_lowercase());
    }
    if out.is_empty() {
        return Err(ResolveError::EmptyKey(name.to_string()));
    }
    Ok(out)
}

/// Finds the point and provenance for an event. Inline coordinates win.
pub fn resolve_place(event: &LifeEvent, g: &Gazetteer) -> Result<(GeoPoint, PlaceRef), ResolveError> {
    if let Some(point) = event.point {
        return Ok((
            point,
            PlaceRef::Inline {
                place_key: event.place_key.clone(),
            },
        ));
    }
    let raw = event
        .place_key
        .as_deref()
        .ok_or_else(|| ResolveError::UnknownPlace(String::new()))?;
    let key = normalize_key(raw).map_err(|_| ResolveError::UnknownPlace(raw.to_string()))?;
    let entry = g.get(&key).ok_or(ResolveError::UnknownPlace(key))?;
    Ok((
        entry.point,
        PlaceRef::Gazetteer {
            key: entry.key.clone(),
            display_name: entry.display_name.clone(),
        },
    ))
}

pub fn resolve(event: &LifeEvent, g: &Gazetteer) -> Result<GeoPoint, ResolveError> {
    resolve_place(event, g).map(|(point, _)| point)
}
