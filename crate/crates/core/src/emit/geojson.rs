use std::fmt::Write;

use super::{prepare, EmitError};
use crate::gazetteer::Gazetteer;
use crate::model::Biography;

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// GeoJSON FeatureCollection of Point features in itinerary order.
///
/// Written by hand so key order and the 6-decimal coordinates are fixed.
pub fn emit_geojson(b: &Biography, g: &Gazetteer) -> Result<String, EmitError> {
    let legs = prepare(b, g)?;
    let mut out = String::new();
    out.push_str("{\n  \"type\": \"FeatureCollection\",\n  \"features\": [");
    for (i, leg) in legs.iter().enumerate() {
        let e = &b.events[leg.event_index];
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        let attachments = if e.attachments.is_empty() {
            "[]".to_string()
        } else {
            let items: Vec<String> = e.attachments.iter().map(|a| json_str(a)).collect();
            format!("[{}]", items.join(", "))
        };
        let _ = write!(
            out,
            concat!(
                "    {{\n",
                "      \"type\": \"Feature\",\n",
                "      \"geometry\": {{\n",
                "        \"type\": \"Point\",\n",
                "        \"coordinates\": [{lon:.6}, {lat:.6}]\n",
                "      }},\n",
                "      \"properties\": {{\n",
                "        \"id\": {id},\n",
                "        \"label\": {label},\n",
                "        \"kind\": {kind},\n",
                "        \"start\": \"{start}\",\n",
                "        \"end\": \"{end}\",\n",
                "        \"circa\": {circa},\n",
                "        \"note\": {note},\n",
                "        \"attachments\": {attachments}\n",
                "      }}\n",
                "    }}"
            ),
            lon = leg.point.lon(),
            lat = leg.point.lat(),
            id = json_str(&e.id),
            label = json_str(&e.label),
            kind = json_str(e.kind.as_str()),
            start = e.when.start,
            end = e.when.end,
            circa = e.when.circa,
            note = json_str(&e.note),
            attachments = attachments,
        );
    }
    out.push_str(if legs.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
    Ok(out)
}
