//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use vita::corpora;
use vita::emit::timeline_buckets;
use vita::gazetteer::{load_gazetteer, resolve, Gazetteer};
use vita::geo::{build_itinerary, haversine_km, EARTH_RADIUS_KM};
use vita::model::{Biography, CalendarDate, DateInterval, EventKind, GeoPoint, LifeEvent};
use vita::vita::{parse_biography, serialize_biography};

const KML_NS: &str = "http://www.opengis.net/kml/2.2";
const FIGURE_BUDGET: Duration = Duration::from_secs(1);
const SEED: u64 = 0x5eed_1904;

fn main() -> ExitCode {
    let criteria: [(&str, fn()); 9] = [
        ("corpus fidelity, Newton map", newton_map),
        ("corpus fidelity, Schiaparelli map", schiaparelli_map),
        ("haversine analytic suite", haversine_suite),
        ("round trip parse/serialize", round_trip),
        ("deterministic output and golden files", determinism),
        ("KML validity", kml_validity),
        ("itinerary arithmetic", itinerary_arithmetic),
        ("timeline bucket boundaries", bucket_boundaries),
        ("CLI exit-code matrix", exit_code_matrix),
    ];
    panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let ok = panic::catch_unwind(check).is_ok();
        let status = if ok { "PASS" } else { "FAIL" };
        println!("[{status}] {name} ({} ms)", start.elapsed().as_millis());
        failed += usize::from(!ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn gazetteer() -> Gazetteer {
    load_gazetteer(corpora::GAZETTEER_TSV).unwrap()
}

/// Compiles a corpus through the binary and returns (KML, wall time).
fn compile_kml(corpus: &str) -> (String, Duration) {
    let start = Instant::now();
    let r = vita(&["compile", corpus]);
    let elapsed = start.elapsed();
    assert_eq!(r.code, 0, "{}", r.stderr);
    (r.stdout, elapsed)
}

/// Place keys of every placemark, in document order.
fn placemark_places(kml: &str) -> Vec<String> {
    let doc = roxmltree::Document::parse(kml).unwrap();
    doc.descendants()
        .filter(|n| n.has_tag_name((KML_NS, "Placemark")))
        .map(|pm| {
            pm.descendants()
                .find(|n| n.has_tag_name((KML_NS, "Data")) && n.attribute("name") == Some("place"))
                .and_then(|d| d.first_element_child())
                .and_then(|v| v.text())
                .unwrap_or_default()
                .to_string()
        })
        .collect()
}

fn newton_map() {
    let (kml, elapsed) = compile_kml("corpora/newton.vita");
    assert!(elapsed < FIGURE_BUDGET, "{elapsed:?}");
    let places = placemark_places(&kml);
    let set: BTreeSet<&str> = places.iter().map(String::as_str).collect();
    // woolsthorpe, the school near it, then the places named on the map
    let expected: BTreeSet<&str> = [
        "woolsthorpe-manor",
        "grantham",
        "cambridge",
        "london",
        "tower-of-london",
        "southampton",
    ]
    .into();
    assert_eq!(set, expected);
    assert_eq!(places.iter().filter(|p| *p == "woolsthorpe-manor").count(), 2);
    let g = gazetteer();
    let b = parse_biography(corpora::NEWTON_VITA).unwrap();
    let woolsthorpe: Vec<GeoPoint> = b
        .events
        .iter()
        .filter(|e| e.place_key.as_deref() == Some("woolsthorpe-manor"))
        .map(|e| resolve(e, &g).unwrap())
        .collect();
    assert_eq!(woolsthorpe.len(), 2);
    assert_eq!(woolsthorpe[0], woolsthorpe[1]);
}

fn schiaparelli_map() {
    let (kml, elapsed) = compile_kml("corpora/schiaparelli.vita");
    assert!(elapsed < FIGURE_BUDGET, "{elapsed:?}");
    let places: BTreeSet<String> = placemark_places(&kml).into_iter().collect();
    for site in [
        "giza",
        "hermopolis",
        "assiut",
        "qau-el-kebir",
        "gebelien",
        "aswan",
        "deir-el-medina",
        "luxor",
    ] {
        assert!(places.contains(site), "missing {site}");
    }
    let doc = roxmltree::Document::parse(&kml).unwrap();
    let spans: Vec<(String, String)> = doc
        .descendants()
        .filter(|n| n.has_tag_name((KML_NS, "TimeSpan")))
        .map(|ts| {
            let text = |tag: &str| {
                ts.children()
                    .find(|c| c.has_tag_name((KML_NS, tag)))
                    .and_then(|c| c.text())
                    .unwrap()
                    .to_string()
            };
            (text("begin"), text("end"))
        })
        .collect();
    assert!(spans.contains(&("1904-01-01".to_string(), "1904-12-31".to_string())));
}

fn haversine_suite() {
    let p = |lat, lon| GeoPoint::new(lat, lon).unwrap();
    let half = std::f64::consts::PI * EARTH_RADIUS_KM;
    assert!((haversine_km(p(0.0, 0.0), p(0.0, 180.0)) - 20015.114).abs() <= 0.01);
    assert!((haversine_km(p(0.0, 0.0), p(0.0, 1.0)) - 111.195).abs() <= 0.001);

    let mut rng = StdRng::seed_from_u64(SEED);
    for _ in 0..10_000 {
        let a = p(rng.gen_range(-90.0..=90.0), rng.gen_range(-180.0..=180.0));
        let b = p(rng.gen_range(-90.0..=90.0), rng.gen_range(-180.0..=180.0));
        assert_eq!(haversine_km(a, a), 0.0);
        let ab = haversine_km(a, b);
        assert_eq!(ab.to_bits(), haversine_km(b, a).to_bits(), "{a:?} {b:?}");
        assert!((0.0..=half).contains(&ab), "{ab}");
    }
}

fn random_text(rng: &mut StdRng, max: usize) -> String {
    const ALPHABET: &[char] = &[
        'a', 'b', 'z', 'A', 'Q', '0', '7', ' ', ' ', '-', '=', '[', ']', '\'', '"', ',', '.', '&',
        '<', '>', 'é', 'ñ', 'Ω', 'ü', '\t', '/',
    ];
    let len = rng.gen_range(1..=max);
    let mut s: String = (0..len).map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())]).collect();
    s = s.trim().to_string();
    if s.is_empty() {
        s.push('x');
    }
    s
}

fn random_token(rng: &mut StdRng) -> String {
    const HEAD: &[u8] = b"abcdefghijklmnopqrstuvwxyz0123456789";
    const TAIL: &[u8] = b"abcdefghijklmnopqrstuvwxyz0123456789-";
    let mut s = String::new();
    s.push(HEAD[rng.gen_range(0..HEAD.len())] as char);
    for _ in 0..rng.gen_range(0..12) {
        s.push(TAIL[rng.gen_range(0..TAIL.len())] as char);
    }
    s
}

fn random_interval(rng: &mut StdRng) -> DateInterval {
    let start = rng.gen_range(0..200_000);
    let mut a = CalendarDate::from_day_number(start).unwrap();
    let mut b = CalendarDate::from_day_number(start + rng.gen_range(0..20_000)).unwrap();
    match rng.gen_range(0..3) {
        0 => {
            a = CalendarDate::new(a.year(), 1, 1).unwrap();
            b = CalendarDate::new(b.year(), 12, 31).unwrap();
        }
        1 => {
            a = CalendarDate::first_of_month(a.year(), a.month()).unwrap();
            b = CalendarDate::last_of_month(b.year(), b.month()).unwrap();
        }
        _ => {}
    }
    DateInterval::new(a, b, rng.gen()).unwrap()
}

fn random_biography(rng: &mut StdRng) -> Biography {
    let events = (0..rng.gen_range(1..8))
        .map(|_| {
            let place_key = rng.gen_bool(0.7).then(|| random_text(rng, 20));
            let point = (place_key.is_none() || rng.gen_bool(0.3)).then(|| {
                GeoPoint::new(rng.gen_range(-90.0..=90.0), rng.gen_range(-720.0..720.0)).unwrap()
            });
            let mut e = LifeEvent {
                id: random_token(rng),
                kind: EventKind::ALL[rng.gen_range(0..EventKind::ALL.len())],
                when: random_interval(rng),
                place_key,
                point,
                label: String::new(),
                note: if rng.gen() { random_text(rng, 60) } else { String::new() },
                attachments: (0..rng.gen_range(0..3)).map(|i| format!("media/f{i}.svg")).collect(),
            };
            e.label = match rng.gen_range(0..3) {
                0 => e.default_label().to_string(),
                1 => String::new(),
                _ => random_text(rng, 30),
            };
            e
        })
        .collect();
    Biography {
        title: random_text(rng, 40),
        id: random_token(rng),
        events,
        gazetteer_hint: rng.gen_bool(0.3).then(|| "places.tsv".to_string()),
    }
}

fn round_trip() {
    let mut rng = StdRng::seed_from_u64(SEED);
    for _ in 0..1000 {
        let b = random_biography(&mut rng);
        let text = serialize_biography(&b);
        let parsed = parse_biography(&text).unwrap_or_else(|d| panic!("{d:?}\n{text}"));
        assert_eq!(parsed, b, "{text}");
        assert_eq!(serialize_biography(&parsed), text);
    }
    for source in [corpora::NEWTON_VITA, corpora::SCHIAPARELLI_VITA] {
        let b = parse_biography(source).unwrap();
        assert_eq!(parse_biography(&serialize_biography(&b)).unwrap(), b);
    }
}

fn determinism() {
    let root = workspace_root();
    for corpus in ["newton", "schiaparelli"] {
        let input = format!("corpora/{corpus}.vita");
        let runs: [(&[&str], &str); 3] = [
            (&["compile", &input], "kml"),
            (&["compile", &input, "--format", "geojson"], "geojson"),
            (&["itinerary", &input, "--format", "csv"], "itinerary.csv"),
        ];
        for (args, ext) in runs {
            let first = vita(args);
            let second = vita(args);
            assert_eq!(first.code, 0, "{}", first.stderr);
            assert_eq!(first.stdout, second.stdout, "{corpus}.{ext}");
            let golden = std::fs::read_to_string(root.join(format!("corpora/golden/{corpus}.{ext}"))).unwrap();
            assert_eq!(first.stdout, golden, "{corpus}.{ext}");
        }
    }
}

fn kml_validity() {
    let (_dir, one) = scratch_vita("one.vita", ONE_EVENT);
    let one = one.to_str().unwrap().to_string();
    let cases: [(&str, &[&str]); 5] = [
        ("corpora/newton.vita", &[]),
        ("corpora/schiaparelli.vita", &[]),
        ("corpora/schiaparelli.vita", &["--buckets", "10"]),
        ("corpora/schiaparelli.vita", &["--buckets", "1", "--no-attachments"]),
        (&one, &[]),
    ];
    for (input, extra) in cases {
        let mut args = vec!["compile", input];
        args.extend_from_slice(extra);
        let r = vita(&args);
        assert_eq!(r.code, 0, "{}", r.stderr);
        let doc = roxmltree::Document::parse(&r.stdout).unwrap();
        let root = doc.root_element();
        assert!(root.has_tag_name((KML_NS, "kml")));
        let styles: BTreeSet<&str> = doc
            .descendants()
            .filter(|n| n.has_tag_name((KML_NS, "Style")))
            .filter_map(|n| n.attribute("id"))
            .collect();
        for url in doc.descendants().filter(|n| n.has_tag_name((KML_NS, "styleUrl"))) {
            let target = url.text().unwrap().strip_prefix('#').unwrap();
            assert!(styles.contains(target), "{target}");
        }
        let source = std::fs::read_to_string(workspace_root().join(input)).unwrap();
        let events = parse_biography(&source).unwrap().events.len();
        let placemarks = doc.descendants().filter(|n| n.has_tag_name((KML_NS, "Placemark"))).count();
        assert_eq!(placemarks, events);
    }
}

/// Great-circle distance from the chord between unit vectors.
fn chord_km(a: GeoPoint, b: GeoPoint) -> f64 {
    let v = |p: GeoPoint| {
        let (lat, lon) = (p.lat().to_radians(), p.lon().to_radians());
        [lat.cos() * lon.cos(), lat.cos() * lon.sin(), lat.sin()]
    };
    let (u, w) = (v(a), v(b));
    let c = ((u[0] - w[0]).powi(2) + (u[1] - w[1]).powi(2) + (u[2] - w[2]).powi(2)).sqrt();
    2.0 * EARTH_RADIUS_KM * (c / 2.0).min(1.0).asin()
}

fn itinerary_arithmetic() {
    let g = gazetteer();
    for (corpus, source) in [("newton", corpora::NEWTON_VITA), ("schiaparelli", corpora::SCHIAPARELLI_VITA)] {
        let b = parse_biography(source).unwrap();
        let legs = build_itinerary(&b, &g).unwrap();
        let mut sum = 0.0;
        let mut exact = Vec::new();
        for (i, leg) in legs.iter().enumerate() {
            if i > 0 {
                sum += chord_km(legs[i - 1].point, leg.point);
            }
            assert!((leg.cum_km - sum).abs() <= 1e-9, "{corpus} leg {i}");
            exact.push(leg.cum_km);
        }

        let r = vita(&["itinerary", &format!("corpora/{corpus}.vita"), "--format", "csv"]);
        let mut reader = csv::Reader::from_reader(r.stdout.as_bytes());
        let rows: Vec<BTreeMap<String, String>> = reader.deserialize().map(Result::unwrap).collect();
        assert_eq!(rows.len(), legs.len());
        let mut resum = 0.0;
        for (row, cum) in rows.iter().zip(&exact) {
            let emitted: f64 = row["cum_km"].parse().unwrap();
            resum += row["leg_km"].parse::<f64>().unwrap();
            assert!((emitted - cum).abs() <= 1e-3, "{corpus}: {emitted} vs {cum}");
            // each printed leg is off by at most half a metre
            assert!((emitted - resum).abs() <= 1e-3 + 5e-4 * rows.len() as f64);
        }
    }
}

fn bucket_boundaries() {
    for source in [corpora::NEWTON_VITA, corpora::SCHIAPARELLI_VITA] {
        let b = parse_biography(source).unwrap();
        let earliest = (0..b.events.len()).min_by_key(|&i| b.events[i].when.start_day()).unwrap();
        let latest = (0..b.events.len()).max_by_key(|&i| b.events[i].when.end_day()).unwrap();
        for n in [1, 2, 5, 10] {
            let buckets = timeline_buckets(&b, n);
            assert_eq!(buckets[earliest], 0, "n={n}");
            assert_eq!(buckets[latest], n - 1, "n={n}");
            assert!(buckets.iter().all(|&k| k < n));
        }
    }
    let one = parse_biography(ONE_EVENT).unwrap();
    for n in [1, 2, 5, 10] {
        assert_eq!(timeline_buckets(&one, n), [0]);
    }
}

fn exit_code_matrix() {
    let (_dir, lost) = scratch_vita("lost.vita", UNKNOWN_PLACE);
    let lost = lost.to_str().unwrap();
    let missing = "corpora/no-such-file.vita";
    let good = "corpora/newton.vita";
    for cmd in ["validate", "compile", "itinerary", "distances", "stats"] {
        assert_eq!(vita(&[cmd, good]).code, 0, "{cmd} success");
        assert_eq!(vita(&[cmd, lost]).code, 1, "{cmd} domain");
        assert_eq!(vita(&[cmd, missing]).code, 2, "{cmd} usage");
    }
    let ok = Stub::start(200, r#"{"key":"assiut","display_name":"Assiut","lat":27.18,"lon":31.18}"#);
    assert_eq!(vita(&["geocode", "Assiut", "--endpoint", &ok.url]).code, 0, "geocode success");
    let not_found = Stub::start(404, "{}");
    assert_eq!(vita(&["geocode", "Atlantis", "--endpoint", &not_found.url]).code, 1, "geocode domain");
    assert_eq!(vita(&["geocode", "Assiut"]).code, 2, "geocode usage");
}
