use std::fmt::Write;
use std::str::FromStr;

use crate::model::{Biography, ItineraryLeg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ItinerariumFormat {
    #[default]
    Text,
    Csv,
}

impl FromStr for ItinerariumFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Self::Text),
            "csv" => Ok(Self::Csv),
            other => Err(format!("unknown itinerarium format `{other}`")),
        }
    }
}

pub const CSV_HEADER: [&str; 9] = [
    "index", "start", "end", "place", "label", "lat", "lon", "leg_km", "cum_km",
];

/// Renders an itinerary as an aligned text table or as CSV.
///
/// Distances carry 3 decimals and coordinates 6; both round half to even on
/// the exact binary value.
pub fn emit_itinerarium(legs: &[ItineraryLeg], b: &Biography, fmt: ItinerariumFormat) -> String {
    match fmt {
        ItinerariumFormat::Text => text(legs, b),
        ItinerariumFormat::Csv => csv(legs),
    }
}

fn row(leg: &ItineraryLeg) -> [String; 9] {
    [
        leg.index.to_string(),
        leg.when.start.to_string(),
        leg.when.end.to_string(),
        leg.place.name().to_string(),
        leg.label.clone(),
        format!("{:.6}", leg.point.lat()),
        format!("{:.6}", leg.point.lon()),
        format!("{:.3}", leg.leg_km),
        format!("{:.3}", leg.cum_km),
    ]
}

fn text(legs: &[ItineraryLeg], b: &Biography) -> String {
    const HEADER: [&str; 8] = ["#", "START", "END", "PLACE", "LAT", "LON", "LEG_KM", "CUM_KM"];
    // source columns of `row` for index, start, end, place, lat, lon, leg, cum
    const PICK: [usize; 8] = [0, 1, 2, 3, 5, 6, 7, 8];
    const RIGHT: [bool; 8] = [false, false, false, false, true, true, true, true];

    let rows: Vec<[String; 8]> = legs
        .iter()
        .map(|leg| {
            let r = row(leg);
            PICK.map(|i| r[i].clone())
        })
        .collect();
    let mut widths = HEADER.map(|h| h.chars().count());
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }

    let render = |cells: [&str; 8]| {
        let mut line = String::new();
        for (c, cell) in cells.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            let pad = " ".repeat(widths[c] - cell.chars().count());
            if RIGHT[c] {
                line.push_str(&pad);
                line.push_str(cell);
            } else {
                line.push_str(cell);
                line.push_str(&pad);
            }
        }
        line.truncate(line.trim_end().len());
        line
    };

    let mut out = String::new();
    let _ = writeln!(out, "Itinerarium: {}", b.title);
    let _ = writeln!(out, "{}", render(HEADER));
    for r in &rows {
        let _ = writeln!(out, "{}", render(r.each_ref().map(String::as_str)));
    }
    out
}

fn csv(legs: &[ItineraryLeg]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for leg in legs {
        w.write_record(row(leg)).expect("in-memory write");
    }
    let bytes = w.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("utf-8 input gives utf-8 output")
}
