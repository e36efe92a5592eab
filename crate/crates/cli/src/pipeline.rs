use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use vita::gazetteer::{load_gazetteer, resolve, Gazetteer};
use vita::model::{validate_biography, Biography, Severity};
use vita::vita::{parse_document, SourceMap};

pub const GAZETTEER_ENV: &str = "VITA_GAZETTEER";
pub const DEFAULT_GAZETTEER: &str = "gazetteer.tsv";

/// Failure classes, mapped onto exit codes 1 and 2.
#[derive(Debug)]
pub enum Failure {
    /// Validation or resolution failed; diagnostics already printed.
    Domain(String),
    /// Bad invocation or unreadable/unwritable files.
    Usage(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(m) | Failure::Usage(m) => f.write_str(m),
        }
    }
}

pub struct Loaded {
    pub biography: Biography,
    pub gazetteer: Gazetteer,
}

/// Picks the gazetteer path: flag, then `VITA_GAZETTEER`, then the
/// biography's own `gazetteer` hint (relative to the input file), then
/// `./gazetteer.tsv`.
pub fn gazetteer_path(
    flag: Option<&Path>,
    env: Option<PathBuf>,
    hint: Option<&str>,
    input: &Path,
) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(p) = env.filter(|p| !p.as_os_str().is_empty()) {
        return p;
    }
    if let Some(h) = hint {
        return input.parent().unwrap_or(Path::new("")).join(h);
    }
    PathBuf::from(DEFAULT_GAZETTEER)
}

fn print_diag(level: Severity, file: &Path, line: usize, message: &str) {
    eprintln!("{level} {}:{line} {message}", file.display());
}

/// Parse, resolve and validate. Every finding goes to stderr.
pub fn load(input: &Path, gazetteer_flag: Option<&Path>, strict: bool) -> Result<Loaded, Failure> {
    let source = fs::read_to_string(input)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
    let parsed = match parse_document(&source) {
        Ok(p) => p,
        Err(diags) => {
            for d in &diags {
                print_diag(Severity::Error, input, d.line, &format!("{} (column {})", d.message, d.column));
            }
            return Err(Failure::Domain(format!("{} has syntax errors", input.display())));
        }
    };
    let biography = parsed.biography;
    let map: SourceMap = parsed.source_map;

    let needs_gazetteer = biography.events.iter().any(|e| e.point.is_none());
    let gazetteer = if needs_gazetteer {
        let env = std::env::var_os(GAZETTEER_ENV).map(PathBuf::from);
        let path = gazetteer_path(gazetteer_flag, env, biography.gazetteer_hint.as_deref(), input);
        let text = fs::read_to_string(&path)
            .map_err(|e| Failure::Usage(format!("cannot read gazetteer {}: {e}", path.display())))?;
        match load_gazetteer(&text) {
            Ok(g) => g,
            Err(diags) => {
                for d in &diags {
                    print_diag(Severity::Error, &path, d.line, &d.message);
                }
                return Err(Failure::Domain(format!("{} is malformed", path.display())));
            }
        }
    } else {
        Gazetteer::default()
    };

    let base_dir = input.parent().map(|p| if p.as_os_str().is_empty() { Path::new(".") } else { p });
    let mut diags = validate_biography(&biography, base_dir);
    for (index, event) in biography.events.iter().enumerate() {
        if let Err(err) = resolve(event, &gazetteer) {
            diags.push(vita::model::Diagnostic {
                severity: Severity::Error,
                event_index: Some(index),
                event_id: Some(event.id.clone()),
                message: err.to_string(),
            });
        }
    }
    diags.sort_by_key(|d| d.event_index.map_or(0, |i| i + 1));

    let mut errors = 0;
    let mut warnings = 0;
    for d in &diags {
        let line = d.event_index.map_or(map.biography_line, |i| map.event_lines[i]);
        let message = match &d.event_id {
            Some(id) => format!("event `{id}`: {}", d.message),
            None => d.message.clone(),
        };
        print_diag(d.severity, input, line, &message);
        match d.severity {
            Severity::Error => errors += 1,
            Severity::Warning => warnings += 1,
        }
    }
    if errors > 0 {
        return Err(Failure::Domain(format!("{errors} error(s) in {}", input.display())));
    }
    if strict && warnings > 0 {
        return Err(Failure::Domain(format!(
            "{warnings} warning(s) in {} (strict mode)",
            input.display()
        )));
    }
    Ok(Loaded { biography, gazetteer })
}

/// Writes to `path` through a temporary file in the same directory, or to
/// stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<(), Failure> {
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        return out
            .write_all(content.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| Failure::Usage(format!("cannot write to stdout: {e}")));
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| Failure::Usage(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(content.as_bytes()).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}
