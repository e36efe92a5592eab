use std::collections::BTreeSet;

use super::xml::{cdata, escape_attr, escape_text, XmlWriter};
use super::{prepare, timeline_buckets, EmitConfig, EmitError, KML_NAMESPACE};
use crate::gazetteer::Gazetteer;
use crate::model::{Biography, LifeEvent, PlaceRef};

/// KML 2.2 document with one time-spanned, era-colored placemark per event,
/// in itinerary order.
pub fn emit_kml(b: &Biography, g: &Gazetteer, cfg: &EmitConfig) -> Result<String, EmitError> {
    let legs = prepare(b, g)?;
    let buckets = timeline_buckets(b, cfg.bucket_count());
    let used: BTreeSet<usize> = buckets.iter().copied().collect();

    let mut w = XmlWriter::new();
    w.open("kml", &format!(" xmlns=\"{KML_NAMESPACE}\""));
    w.open("Document", "");
    w.leaf("name", &b.title);
    for &bucket in &used {
        w.open("Style", &format!(" id=\"era-{bucket}\""));
        w.open("IconStyle", "");
        w.leaf("color", cfg.color(bucket));
        w.close("IconStyle");
        w.close("Style");
    }

    for leg in &legs {
        let event = &b.events[leg.event_index];
        w.open("Placemark", "");
        let name = if event.when.circa {
            format!("{} (c.)", event.label)
        } else {
            event.label.clone()
        };
        w.leaf("name", &name);
        if let Some(description) = description(event, cfg.include_attachments()) {
            w.leaf_raw("description", &description);
        }
        w.open("TimeSpan", "");
        w.leaf("begin", &event.when.start.to_string());
        w.leaf("end", &event.when.end.to_string());
        w.close("TimeSpan");
        w.leaf("styleUrl", &format!("#era-{}", buckets[leg.event_index]));

        w.open("ExtendedData", "");
        let place = match &leg.place {
            PlaceRef::Gazetteer { key, .. } => Some(key.as_str()),
            PlaceRef::Inline { place_key } => place_key.as_deref(),
        };
        let mut data = vec![("id", event.id.as_str()), ("kind", event.kind.as_str())];
        if let Some(place) = place {
            data.push(("place", place));
        }
        for (name, value) in data {
            w.leaf_with(
                "Data",
                &format!(" name=\"{name}\""),
                &format!("<value>{}</value>", escape_text(value)),
            );
        }
        w.close("ExtendedData");

        w.open("Point", "");
        w.leaf(
            "coordinates",
            &format!("{:.6},{:.6},0", leg.point.lon(), leg.point.lat()),
        );
        w.close("Point");
        w.close("Placemark");
    }

    w.close("Document");
    w.close("kml");
    Ok(w.finish())
}

/// Escaped note, plus one link per attachment inside CDATA when enabled.
fn description(event: &LifeEvent, include_attachments: bool) -> Option<String> {
    let note = escape_text(&event.note);
    if include_attachments && !event.attachments.is_empty() {
        let mut html = String::new();
        if !note.is_empty() {
            html.push_str(&format!("<p>{note}</p>"));
        }
        for path in &event.attachments {
            html.push_str(&format!(
                "<a href=\"{}\">{}</a><br/>",
                escape_attr(path),
                escape_text(path)
            ));
        }
        Some(cdata(&html))
    } else if note.is_empty() {
        None
    } else {
        Some(note)
    }
}
