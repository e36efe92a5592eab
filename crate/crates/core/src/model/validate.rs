use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use super::{is_token, Biography, EventKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

/// A semantic finding about a parsed biography.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    /// Authoring index of the event, `None` for biography-level findings.
    pub event_index: Option<usize>,
    pub event_id: Option<String>,
    pub message: String,
}

impl Diagnostic {
    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.event_id {
            Some(id) => write!(f, "{} [{}]: {}", self.severity, id, self.message),
            None => write!(f, "{}: {}", self.severity, self.message),
        }
    }
}

/// Checks a biography and returns every finding, in authoring order and then
/// check order. An empty list means the biography is clean.
///
/// Attachment paths are checked against `base_dir` (the directory holding the
/// biography file); pass `None` to skip file-system checks.
pub fn validate_biography(b: &Biography, base_dir: Option<&Path>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let biography_error = |message: String| Diagnostic {
        severity: Severity::Error,
        event_index: None,
        event_id: None,
        message,
    };

    if !is_token(&b.id) {
        out.push(biography_error(format!("invalid biography id `{}`", b.id)));
    }
    if b.events.is_empty() {
        out.push(biography_error("biography has no events".to_string()));
    }

    let mut seen_ids = HashSet::new();
    let mut residences: Vec<usize> = Vec::new();
    let mut latest_start: Option<i64> = None;

    for (index, event) in b.events.iter().enumerate() {
        let mut push = |severity: Severity, message: String| {
            out.push(Diagnostic {
                severity,
                event_index: Some(index),
                event_id: Some(event.id.clone()),
                message,
            })
        };

        if !is_token(&event.id) {
            push(Severity::Error, format!("invalid event id `{}`", event.id));
        }
        if !seen_ids.insert(event.id.as_str()) {
            push(Severity::Error, "duplicate event id".to_string());
        }
        if !event.when.is_ordered() {
            push(
                Severity::Error,
                format!(
                    "interval end precedes start ({} < {})",
                    event.when.end, event.when.start
                ),
            );
        }
        if !event.has_place() {
            push(Severity::Error, "event has no place or coordinates".to_string());
        }

        if event.kind == EventKind::Residence {
            for &other in &residences {
                if b.events[other].when.overlaps(&event.when) {
                    push(
                        Severity::Warning,
                        format!("overlapping residences (with `{}`)", b.events[other].id),
                    );
                }
            }
            residences.push(index);
        }

        let start = event.when.start_day();
        if let Some(latest) = latest_start {
            if start < latest {
                push(
                    Severity::Warning,
                    "event starts before the previous event (not in chronological order)"
                        .to_string(),
                );
            }
        }
        latest_start = Some(latest_start.map_or(start, |l| l.max(start)));

        if let Some(dir) = base_dir {
            for path in &event.attachments {
                if !dir.join(path).is_file() {
                    push(Severity::Warning, format!("missing attachment `{path}`"));
                }
            }
        }
    }
    out
}
