use std::fmt;

use crate::model::{is_token, Biography, DateInterval, EventKind, GeoPoint, LifeEvent};

use super::date_expr::parse_date_expr;

/// A syntax or value error at a 1-based line and column of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseDiagnostic {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

/// Where each block started in the source, for reporting.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SourceMap {
    pub biography_line: usize,
    /// Header line of each event, indexed like `Biography::events`.
    pub event_lines: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedBiography {
    pub biography: Biography,
    pub source_map: SourceMap,
}

/// Parses VITA text into a biography, or returns every diagnostic found,
/// sorted by position.
pub fn parse_biography(source: &str) -> Result<Biography, Vec<ParseDiagnostic>> {
    parse_document(source).map(|parsed| parsed.biography)
}

/// Like [`parse_biography`], also returning the line of every block header.
pub fn parse_document(source: &str) -> Result<ParsedBiography, Vec<ParseDiagnostic>> {
    let mut parser = Parser::default();
    for (index, raw) in source.split('\n').enumerate() {
        parser.line(index + 1, raw.strip_suffix('\r').unwrap_or(raw));
    }
    parser.finish()
}

#[derive(Debug, Clone)]
struct Field {
    value: String,
    line: usize,
    column: usize,
}

#[derive(Default)]
struct BiographyBlock {
    line: usize,
    title: Option<Field>,
    id: Option<Field>,
    gazetteer: Option<Field>,
}

#[derive(Default)]
struct EventBlock {
    line: usize,
    id: Option<Field>,
    kind: Option<Field>,
    start: Option<Field>,
    end: Option<Field>,
    place: Option<Field>,
    lat: Option<Field>,
    lon: Option<Field>,
    label: Option<Field>,
    note: Option<Field>,
    attach: Vec<Field>,
}

enum Block {
    Biography(BiographyBlock),
    Event(EventBlock),
    /// Unknown header; lines are ignored until the next header.
    Skip,
}

#[derive(Default)]
struct Parser {
    diags: Vec<ParseDiagnostic>,
    current: Option<Block>,
    biography: Option<(usize, String, String, Option<String>)>,
    biography_headers: usize,
    events: Vec<LifeEvent>,
    event_lines: Vec<usize>,
}

fn is_ws(c: char) -> bool {
    c.is_ascii_whitespace()
}

/// 1-based character column of byte offset `at` in `line`.
fn column_of(line: &str, at: usize) -> usize {
    line[..at].chars().count() + 1
}

/// Byte offset of the first non-whitespace character at or after `from`.
fn skip_ws(line: &str, from: usize) -> usize {
    line[from..]
        .find(|c: char| !is_ws(c))
        .map_or(line.len(), |i| from + i)
}

impl Parser {
    fn error(&mut self, line: usize, column: usize, message: impl Into<String>) {
        self.diags.push(ParseDiagnostic::new(line, column, message));
    }

    fn line(&mut self, number: usize, raw: &str) {
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = content.trim_matches(is_ws);
        if trimmed.is_empty() {
            return;
        }
        let first = skip_ws(content, 0);
        let first_col = column_of(content, first);

        if trimmed.starts_with('[') {
            self.close_block();
            match trimmed {
                "[biography]" => {
                    self.biography_headers += 1;
                    if self.biography_headers > 1 {
                        self.error(number, first_col, "duplicate [biography] header");
                        self.current = Some(Block::Skip);
                    } else {
                        self.current = Some(Block::Biography(BiographyBlock {
                            line: number,
                            ..Default::default()
                        }));
                    }
                }
                "[event]" => {
                    self.current = Some(Block::Event(EventBlock {
                        line: number,
                        ..Default::default()
                    }));
                }
                other => {
                    self.error(number, first_col, format!("unknown block header `{other}`"));
                    self.current = Some(Block::Skip);
                }
            }
            return;
        }

        let Some(eq) = content.find('=') else {
            self.error(number, first_col, "expected `key = value`");
            return;
        };
        let key = content[..eq].trim_matches(is_ws);
        let value_at = skip_ws(content, eq + 1);
        let value = content[value_at..].trim_matches(is_ws);
        if key.is_empty() {
            self.error(number, first_col, "empty key");
            return;
        }
        let field = Field {
            value: value.to_string(),
            line: number,
            column: column_of(content, value_at),
        };

        let mut block = self.current.take();
        let outcome = match &mut block {
            None => Err("key outside of a block (expected [biography] or [event] first)".to_string()),
            Some(Block::Skip) => Ok(()),
            Some(Block::Biography(b)) => match key {
                "title" => set_once(&mut b.title, key, field),
                "id" => set_once(&mut b.id, key, field),
                "gazetteer" => set_once(&mut b.gazetteer, key, field),
                _ => Err(format!("unknown key `{key}` in [biography]")),
            },
            Some(Block::Event(e)) => match key {
                "id" => set_once(&mut e.id, key, field),
                "kind" => set_once(&mut e.kind, key, field),
                "start" => set_once(&mut e.start, key, field),
                "end" => set_once(&mut e.end, key, field),
                "place" => set_once(&mut e.place, key, field),
                "lat" => set_once(&mut e.lat, key, field),
                "lon" => set_once(&mut e.lon, key, field),
                "label" => set_once(&mut e.label, key, field),
                "note" => set_once(&mut e.note, key, field),
                "attach" => {
                    e.attach.push(field);
                    Ok(())
                }
                _ => Err(format!("unknown key `{key}` in [event]")),
            },
        };
        self.current = block;
        if let Err(message) = outcome {
            self.error(number, first_col, message);
        }
    }

    fn close_block(&mut self) {
        match self.current.take() {
            Some(Block::Biography(b)) => self.close_biography(b),
            Some(Block::Event(e)) => self.close_event(e),
            Some(Block::Skip) | None => {}
        }
    }

    fn close_biography(&mut self, b: BiographyBlock) {
        let title = match b.title {
            Some(f) if f.value.is_empty() => {
                self.error(f.line, f.column, "empty title");
                None
            }
            Some(f) => Some(f.value),
            None => {
                self.error(b.line, 1, "missing required key `title`");
                None
            }
        };
        let id = match b.id {
            Some(f) if !is_token(&f.value) => {
                self.error(f.line, f.column, format!("invalid biography id `{}`", f.value));
                None
            }
            Some(f) => Some(f.value),
            None => {
                self.error(b.line, 1, "missing required key `id`");
                None
            }
        };
        let gazetteer = match b.gazetteer {
            Some(f) if f.value.is_empty() => {
                self.error(f.line, f.column, "empty gazetteer path");
                None
            }
            other => other.map(|f| f.value),
        };
        if let (Some(title), Some(id)) = (title, id) {
            self.biography = Some((b.line, title, id, gazetteer));
        }
    }

    fn close_event(&mut self, e: EventBlock) {
        let errors_before = self.diags.len();

        let id = match &e.id {
            Some(f) if !is_token(&f.value) => {
                self.error(f.line, f.column, format!("invalid event id `{}`", f.value));
                String::new()
            }
            Some(f) => f.value.clone(),
            None => {
                self.error(e.line, 1, "missing required key `id`");
                String::new()
            }
        };

        let kind = match &e.kind {
            Some(f) => match f.value.parse::<EventKind>() {
                Ok(kind) => kind,
                Err(err) => {
                    self.error(f.line, f.column, err.to_string());
                    EventKind::Other
                }
            },
            None => EventKind::Other,
        };

        let start = match &e.start {
            Some(f) => self.date(f),
            None => {
                self.error(e.line, 1, "missing required key `start`");
                None
            }
        };
        let end = match &e.end {
            Some(f) => self.date(f),
            None => start,
        };
        let when = match (start, end) {
            (Some(s), Some(t)) => {
                match DateInterval::new(s.start, t.end, s.circa || t.circa) {
                    Ok(when) => Some(when),
                    Err(_) => {
                        let f = e.end.as_ref().or(e.start.as_ref()).expect("date field");
                        self.error(
                            f.line,
                            f.column,
                            format!("interval end precedes start ({} < {})", t.end, s.start),
                        );
                        None
                    }
                }
            }
            _ => None,
        };

        let place_key = match &e.place {
            Some(f) if f.value.is_empty() => {
                self.error(f.line, f.column, "empty place key");
                None
            }
            other => other.as_ref().map(|f| f.value.clone()),
        };

        let point = match (&e.lat, &e.lon) {
            (Some(lat), Some(lon)) => {
                let lat_v = self.coordinate(lat, "latitude");
                let lon_v = self.coordinate(lon, "longitude");
                match (lat_v, lon_v) {
                    (Some(a), Some(o)) => match GeoPoint::new(a, o) {
                        Ok(p) => Some(p),
                        Err(_) => {
                            self.error(lat.line, lat.column, "latitude out of range");
                            None
                        }
                    },
                    _ => None,
                }
            }
            (Some(f), None) | (None, Some(f)) => {
                self.error(f.line, f.column, "`lat` and `lon` must be given together");
                None
            }
            (None, None) => None,
        };

        if e.place.is_none() && e.lat.is_none() && e.lon.is_none() {
            self.error(e.line, 1, "event needs `place` or `lat`/`lon`");
        }

        let mut attachments = Vec::with_capacity(e.attach.len());
        for f in &e.attach {
            if f.value.is_empty() {
                self.error(f.line, f.column, "empty attachment path");
            } else {
                attachments.push(f.value.clone());
            }
        }

        if self.diags.len() != errors_before {
            return;
        }
        let Some(when) = when else { return };
        let mut event = LifeEvent {
            id,
            kind,
            when,
            place_key,
            point,
            label: String::new(),
            note: e.note.map(|f| f.value).unwrap_or_default(),
            attachments,
        };
        event.label = match e.label {
            Some(f) => f.value,
            None => event.default_label().to_string(),
        };
        self.events.push(event);
        self.event_lines.push(e.line);
    }

    fn date(&mut self, f: &Field) -> Option<DateInterval> {
        match parse_date_expr(&f.value) {
            Ok(i) => Some(i),
            Err(err) => {
                self.error(f.line, f.column, err.to_string());
                None
            }
        }
    }

    fn coordinate(&mut self, f: &Field, what: &str) -> Option<f64> {
        match f.value.parse::<f64>() {
            Ok(v) if v.is_finite() => Some(v),
            _ => {
                self.error(f.line, f.column, format!("invalid {what} `{}`", f.value));
                None
            }
        }
    }

    fn finish(mut self) -> Result<ParsedBiography, Vec<ParseDiagnostic>> {
        self.close_block();
        if self.biography_headers == 0 {
            self.error(1, 1, "missing [biography] header");
        } else if let Some((line, ..)) = &self.biography {
            if self.events.is_empty() && self.diags.is_empty() {
                let line = *line;
                self.error(line, 1, "biography has no events");
            }
        }

        if !self.diags.is_empty() {
            let mut diags = self.diags;
            diags.sort_by_key(|d| (d.line, d.column));
            return Err(diags);
        }
        let (line, title, id, gazetteer_hint) =
            self.biography.expect("biography present when no diagnostics");
        Ok(ParsedBiography {
            biography: Biography {
                title,
                id,
                events: self.events,
                gazetteer_hint,
            },
            source_map: SourceMap {
                biography_line: line,
                event_lines: self.event_lines,
            },
        })
    }
}

fn set_once(slot: &mut Option<Field>, key: &str, field: Field) -> Result<(), String> {
    if slot.is_some() {
        return Err(format!("duplicate key `{key}`"));
    }
    *slot = Some(field);
    Ok(())
}
