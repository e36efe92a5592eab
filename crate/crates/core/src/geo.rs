//! Great-circle distances, itineraries and route summaries.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::gazetteer::{resolve_place, Gazetteer, ResolveError};
use crate::model::{Biography, CalendarDate, GeoPoint, ItineraryLeg, PlaceRef};

/// IUGG mean Earth radius.
pub const EARTH_RADIUS_KM: f64 = 6371.0088;

/// Great-circle distance on a sphere of radius [`EARTH_RADIUS_KM`].
pub fn haversine_km(a: GeoPoint, b: GeoPoint) -> f64 {
    let (lat1, lat2) = (a.lat().to_radians(), b.lat().to_radians());
    // absolute differences keep the result bit-identical under argument swap
    let dlat = (b.lat() - a.lat()).abs().to_radians();
    let dlon = (b.lon() - a.lon()).abs().to_radians();
    let s_lat = (dlat / 2.0).sin();
    let s_lon = (dlon / 2.0).sin();
    let h = s_lat * s_lat + lat1.cos() * lat2.cos() * s_lon * s_lon;
    2.0 * EARTH_RADIUS_KM * h.clamp(0.0, 1.0).sqrt().asin()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("event `{event_id}`: {source}")]
pub struct ItineraryError {
    pub event_id: String,
    #[source]
    pub source: ResolveError,
}

/// Resolves every event and orders them chronologically, with leg and
/// cumulative distances.
pub fn build_itinerary(b: &Biography, g: &Gazetteer) -> Result<Vec<ItineraryLeg>, ItineraryError> {
    let mut legs: Vec<ItineraryLeg> = Vec::with_capacity(b.events.len());
    for (index, event_index) in b.chronological_order().into_iter().enumerate() {
        let event = &b.events[event_index];
        let (point, place) = resolve_place(event, g).map_err(|source| ItineraryError {
            event_id: event.id.clone(),
            source,
        })?;
        let (leg_km, cum_km) = match legs.last() {
            Some(prev) => {
                let leg = haversine_km(prev.point, point);
                (leg, prev.cum_km + leg)
            }
            None => (0.0, 0.0),
        };
        legs.push(ItineraryLeg {
            index,
            event_id: event.id.clone(),
            event_index,
            label: event.label.clone(),
            when: event.when,
            place,
            point,
            leg_km,
            cum_km,
        });
    }
    Ok(legs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub min_lat: f64,
    pub max_lat: f64,
    pub min_lon: f64,
    pub max_lon: f64,
}

impl BoundingBox {
    pub fn contains(&self, p: GeoPoint) -> bool {
        (self.min_lat..=self.max_lat).contains(&p.lat())
            && (self.min_lon..=self.max_lon).contains(&p.lon())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bounding box needs at least one point")]
pub struct EmptyPoints;

/// Componentwise min/max. Does not account for the antimeridian.
pub fn bounding_box<I>(points: I) -> Result<BoundingBox, EmptyPoints>
where
    I: IntoIterator<Item = GeoPoint>,
{
    let mut points = points.into_iter();
    let first = points.next().ok_or(EmptyPoints)?;
    let init = BoundingBox {
        min_lat: first.lat(),
        max_lat: first.lat(),
        min_lon: first.lon(),
        max_lon: first.lon(),
    };
    Ok(points.fold(init, |b, p| BoundingBox {
        min_lat: b.min_lat.min(p.lat()),
        max_lat: b.max_lat.max(p.lat()),
        min_lon: b.min_lon.min(p.lon()),
        max_lon: b.max_lon.max(p.lon()),
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteStats {
    pub event_count: usize,
    pub distinct_place_count: usize,
    pub first_start: CalendarDate,
    pub last_end: CalendarDate,
    pub total_km: f64,
    pub bbox: BoundingBox,
    /// Some hop is shorter going across ±180°; `bbox` is then full width.
    pub crosses_antimeridian: bool,
}

#[derive(Hash, PartialEq, Eq, PartialOrd, Ord)]
enum PlaceIdentity<'a> {
    Key(&'a str),
    Coords(u64, u64),
}

/// Summarizes an itinerary. Returns `None` for an empty one.
pub fn route_stats(legs: &[ItineraryLeg]) -> Option<RouteStats> {
    let first = legs.first()?;
    let last = legs.last()?;
    let places: BTreeSet<PlaceIdentity<'_>> = legs
        .iter()
        .map(|leg| match &leg.place {
            PlaceRef::Gazetteer { key, .. } => PlaceIdentity::Key(key),
            PlaceRef::Inline { .. } => {
                let (lat, lon) = leg.point.bits();
                PlaceIdentity::Coords(lat, lon)
            }
        })
        .collect();
    let crosses_antimeridian = legs
        .windows(2)
        .any(|w| (w[1].point.lon() - w[0].point.lon()).abs() > 180.0);
    let mut bbox = bounding_box(legs.iter().map(|l| l.point)).ok()?;
    if crosses_antimeridian {
        bbox.min_lon = -180.0;
        bbox.max_lon = 180.0;
    }
    Some(RouteStats {
        event_count: legs.len(),
        distinct_place_count: places.len(),
        first_start: legs.iter().map(|l| l.when.start).min().unwrap_or(first.when.start),
        last_end: legs.iter().map(|l| l.when.end).max().unwrap_or(last.when.end),
        total_km: last.cum_km,
        bbox,
        crosses_antimeridian,
    })
}

/// Distinct resolved places in first-visit order, with a symmetric distance
/// matrix over them.
pub fn distance_matrix(legs: &[ItineraryLeg]) -> (Vec<(String, GeoPoint)>, Vec<Vec<f64>>) {
    let mut places: Vec<(String, GeoPoint)> = Vec::new();
    for leg in legs {
        let name = leg.place.name().to_string();
        if !places.iter().any(|(n, p)| *n == name && *p == leg.point) {
            places.push((name, leg.point));
        }
    }
    let n = places.len();
    let mut matrix = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = haversine_km(places[i].1, places[j].1);
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
    }
    (places, matrix)
}
