use std::io::Read;
use std::time::Duration;

use serde::Deserialize;
use thiserror::Error;

use super::GazetteerEntry;
use crate::model::{is_token, GeoPoint};

#[derive(Debug, Error)]
pub enum GeocodeError {
    #[error("invalid endpoint `{0}`")]
    InvalidEndpoint(String),
    #[error("network failure: {0}")]
    Network(String),
    #[error("place not found at endpoint")]
    NotFound,
    #[error("geocoder returned HTTP {0}")]
    Status(u16),
    #[error("malformed geocoder response: {0}")]
    Malformed(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Suggestion {
    key: String,
    display_name: String,
    lat: f64,
    lon: f64,
}

const MAX_BODY: u64 = 64 * 1024;

/// Asks a geocoder for `name` with a single `GET endpoint?q=<name>`.
///
/// The response must be one JSON object with exactly `key`, `display_name`,
/// `lat` and `lon`. The result is a suggestion only; nothing is written to
/// any gazetteer.
pub fn remote_resolve(name: &str, endpoint: &str) -> Result<GazetteerEntry, GeocodeError> {
    let url = url::Url::parse(endpoint)
        .map_err(|_| GeocodeError::InvalidEndpoint(endpoint.to_string()))?;
    if !matches!(url.scheme(), "http" | "https") {
        return Err(GeocodeError::InvalidEndpoint(endpoint.to_string()));
    }

    let agent = ureq::AgentBuilder::new()
        .timeout(Duration::from_secs(15))
        .build();
    let response = match agent.request_url("GET", &url).query("q", name).call() {
        Ok(r) => r,
        Err(ureq::Error::Status(404, _)) => return Err(GeocodeError::NotFound),
        Err(ureq::Error::Status(code, _)) => return Err(GeocodeError::Status(code)),
        Err(ureq::Error::Transport(t)) => return Err(GeocodeError::Network(t.to_string())),
    };

    let mut body = String::new();
    response
        .into_reader()
        .take(MAX_BODY)
        .read_to_string(&mut body)
        .map_err(|e| GeocodeError::Network(e.to_string()))?;
    parse_suggestion(&body)
}

pub(crate) fn parse_suggestion(body: &str) -> Result<GazetteerEntry, GeocodeError> {
    let s: Suggestion =
        serde_json::from_str(body).map_err(|e| GeocodeError::Malformed(e.to_string()))?;
    if !is_token(&s.key) {
        return Err(GeocodeError::Malformed(format!("invalid key `{}`", s.key)));
    }
    if s.display_name.contains(['\t', '\n', '\r']) {
        return Err(GeocodeError::Malformed("display_name contains control characters".into()));
    }
    let point = GeoPoint::new(s.lat, s.lon).map_err(|e| GeocodeError::Malformed(e.to_string()))?;
    Ok(GazetteerEntry {
        key: s.key,
        display_name: s.display_name,
        point,
        region: String::new(),
    })
}
