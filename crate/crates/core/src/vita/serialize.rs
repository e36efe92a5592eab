use std::fmt::Write;

use crate::model::Biography;

use super::date_expr::{end_expr, start_expr};

/// Writes the canonical VITA text for `b`.
///
/// Values are written verbatim, so text fields must not contain `#`, line
/// breaks, or leading/trailing whitespace if the output is to parse back to
/// the same biography.
pub fn serialize_biography(b: &Biography) -> String {
    let mut out = String::new();
    out.push_str("[biography]\n");
    kv(&mut out, "title", &b.title);
    kv(&mut out, "id", &b.id);
    if let Some(g) = &b.gazetteer_hint {
        kv(&mut out, "gazetteer", g);
    }

    for e in &b.events {
        out.push_str("\n[event]\n");
        kv(&mut out, "id", &e.id);
        kv(&mut out, "kind", e.kind.as_str());

        let (start, end) = (e.when.start, e.when.end);
        let start_text = start_expr(start, end);
        let circa = if e.when.circa { "c." } else { "" };
        kv(&mut out, "start", &format!("{circa}{start_text}"));
        let start_covers = super::parse_date_expr(&start_text).is_ok_and(|i| i.end == end);
        if !start_covers {
            kv(&mut out, "end", &end_expr(start, end));
        }

        if let Some(place) = &e.place_key {
            kv(&mut out, "place", place);
        }
        if let Some(p) = &e.point {
            kv(&mut out, "lat", &p.lat().to_string());
            kv(&mut out, "lon", &p.lon().to_string());
        }
        if e.label != e.default_label() {
            kv(&mut out, "label", &e.label);
        }
        if !e.note.is_empty() {
            kv(&mut out, "note", &e.note);
        }
        for path in &e.attachments {
            kv(&mut out, "attach", path);
        }
    }
    out
}

fn kv(out: &mut String, key: &str, value: &str) {
    if value.is_empty() {
        let _ = writeln!(out, "{key} =");
    } else {
        let _ = writeln!(out, "{key} = {value}");
    }
}
