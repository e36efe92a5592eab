//! `vita`: compile biography timelines into KML, GeoJSON and itinerary tables.
//!
//! Exit codes: 0 success, 1 validation or resolution failure, 2 usage or I/O
//! error. Payload goes to stdout (or `-o`), diagnostics to stderr.

mod pipeline;

use std::fmt::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vita::emit::{emit_geojson, emit_itinerarium, emit_kml, EmitConfig, ItinerariumFormat};
use vita::gazetteer::{remote_resolve, GeocodeError};
use vita::geo::{build_itinerary, distance_matrix, route_stats};

use pipeline::{load, write_output, Failure};

#[derive(Parser)]
#[command(name = "vita", version, about = "Compile biography timelines into georeferenced maps")]
struct Cli {
    /// Gazetteer TSV; overrides $VITA_GAZETTEER and the biography's `gazetteer` key
    #[arg(long, global = true, value_name = "PATH")]
    gazetteer: Option<PathBuf>,

    /// Treat warnings as errors
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a biography and report diagnostics
    Validate { input: PathBuf },
    /// Write KML (default) or GeoJSON placemarks
    Compile {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MapFormat::Kml)]
        format: MapFormat,
        /// Number of timeline color buckets
        #[arg(long, default_value_t = 5)]
        buckets: usize,
        /// Comma-separated KML colors (aabbggrr) replacing the default palette
        #[arg(long, value_delimiter = ',')]
        palette: Option<Vec<String>>,
        /// Leave attachment links out of placemark descriptions
        #[arg(long)]
        no_attachments: bool,
    },
    /// Print the chronological itinerary with leg and cumulative distances
    Itinerary {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Print leg distances, or a pairwise matrix with --matrix
    Distances {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        matrix: bool,
    },
    /// Print route statistics as `key: value` lines
    Stats {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Ask a geocoder for a place and print a suggested gazetteer row
    Geocode {
        name: String,
        /// Geocoder URL; queried as GET <endpoint>?q=<name>
        #[arg(long)]
        endpoint: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MapFormat {
    Kml,
    Geojson,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("vita: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let gaz = cli.gazetteer.as_deref();
    let strict = cli.strict;
    match cli.command {
        Command::Validate { input } => load(&input, gaz, strict).map(|_| ()),
        Command::Compile {
            input,
            output,
            format,
            buckets,
            palette,
            no_attachments,
        } => {
            let palette = palette.unwrap_or_else(|| EmitConfig::default().palette().to_vec());
            let cfg = EmitConfig::new(buckets, palette, !no_attachments)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let loaded = load(&input, gaz, strict)?;
            let text = match format {
                MapFormat::Kml => emit_kml(&loaded.biography, &loaded.gazetteer, &cfg),
                MapFormat::Geojson => emit_geojson(&loaded.biography, &loaded.gazetteer),
            }
            .map_err(|e| Failure::Domain(e.to_string()))?;
            write_output(output.as_deref(), &text)
        }
        Command::Itinerary {
            input,
            output,
            format,
        } => {
            let loaded = load(&input, gaz, strict)?;
            let legs = itinerary(&loaded)?;
            let fmt = match format {
                TableFormat::Text => ItinerariumFormat::Text,
                TableFormat::Csv => ItinerariumFormat::Csv,
            };
            write_output(output.as_deref(), &emit_itinerarium(&legs, &loaded.biography, fmt))
        }
        Command::Distances {
            input,
            output,
            matrix,
        } => {
            let loaded = load(&input, gaz, strict)?;
            let legs = itinerary(&loaded)?;
            let text = if matrix {
                matrix_csv(&legs)
            } else {
                legs_csv(&legs)
            };
            write_output(output.as_deref(), &text)
        }
        Command::Stats { input, output } => {
            let loaded = load(&input, gaz, strict)?;
            let legs = itinerary(&loaded)?;
            let stats = route_stats(&legs)
                .ok_or_else(|| Failure::Domain("biography has no events".into()))?;
            if stats.crosses_antimeridian {
                eprintln!("warning {}: route crosses the antimeridian; bbox spans all longitudes", input.display());
            }
            let mut text = String::new();
            let _ = writeln!(text, "title: {}", loaded.biography.title);
            let _ = writeln!(text, "events: {}", stats.event_count);
            let _ = writeln!(text, "distinct_places: {}", stats.distinct_place_count);
            let _ = writeln!(text, "span: {}..{}", stats.first_start.year(), stats.last_end.year());
            let _ = writeln!(text, "first_start: {}", stats.first_start);
            let _ = writeln!(text, "last_end: {}", stats.last_end);
            let _ = writeln!(text, "total_km: {:.3}", stats.total_km);
            let b = stats.bbox;
            let _ = writeln!(
                text,
                "bbox: {:.6},{:.6},{:.6},{:.6}",
                b.min_lat, b.min_lon, b.max_lat, b.max_lon
            );
            write_output(output.as_deref(), &text)
        }
        Command::Geocode { name, endpoint } => {
            let endpoint = endpoint
                .ok_or_else(|| Failure::Usage("geocode needs --endpoint <URL>".into()))?;
            match remote_resolve(&name, &endpoint) {
                Ok(entry) => write_output(None, &format!("{}\n", entry.to_tsv_row())),
                Err(e @ (GeocodeError::InvalidEndpoint(_) | GeocodeError::Network(_))) => {
                    Err(Failure::Usage(e.to_string()))
                }
                Err(e) => Err(Failure::Domain(e.to_string())),
            }
        }
    }
}

fn itinerary(loaded: &pipeline::Loaded) -> Result<Vec<vita::model::ItineraryLeg>, Failure> {
    build_itinerary(&loaded.biography, &loaded.gazetteer).map_err(|e| Failure::Domain(e.to_string()))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Sequential legs: same numbers as the itinerary.
fn legs_csv(legs: &[vita::model::ItineraryLeg]) -> String {
    let mut out = String::from("index,from,to,leg_km,cum_km\n");
    for (i, leg) in legs.iter().enumerate() {
        let from = if i == 0 { "" } else { legs[i - 1].place.name() };
        let _ = writeln!(
            out,
            "{},{},{},{:.3},{:.3}",
            leg.index,
            csv_field(from),
            csv_field(leg.place.name()),
            leg.leg_km,
            leg.cum_km
        );
    }
    out
}

fn matrix_csv(legs: &[vita::model::ItineraryLeg]) -> String {
    let (places, m) = distance_matrix(legs);
    let mut out = String::from("place");
    for (name, _) in &places {
        out.push(',');
        out.push_str(&csv_field(name));
    }
    out.push('\n');
    for (i, (name, _)) in places.iter().enumerate() {
        out.push_str(&csv_field(name));
        for d in &m[i] {
            let _ = write!(out, ",{d:.3}");
        }
        out.push('\n');
    }
    out
}

