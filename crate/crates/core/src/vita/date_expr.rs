use thiserror::Error;

use crate::model::{CalendarDate, DateInterval, ModelError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DateExprError {
    #[error("malformed date `{0}` (expected YYYY, YYYY-MM or YYYY-MM-DD, optionally prefixed `c.`)")]
    Malformed(String),
    #[error("year out of range in `{0}`")]
    YearOutOfRange(String),
    #[error("month out of range in `{0}`")]
    MonthOutOfRange(String),
    #[error("day out of range in `{0}`")]
    DayOutOfRange(String),
}

fn digits(s: &str, len: usize) -> Option<u32> {
    if s.len() == len && s.bytes().all(|b| b.is_ascii_digit()) {
        s.parse().ok()
    } else {
        None
    }
}

/// Expands `YYYY`, `YYYY-MM` or `YYYY-MM-DD` (optionally prefixed `c.`) into
/// the inclusive interval of days it denotes.
pub fn parse_date_expr(expr: &str) -> Result<DateInterval, DateExprError> {
    let expr = expr.trim_matches(|c: char| c.is_ascii_whitespace());
    let (circa, body) = match expr.strip_prefix("c.") {
        Some(rest) => (true, rest.trim_start_matches(|c: char| c.is_ascii_whitespace())),
        None => (false, expr),
    };
    let malformed = || DateExprError::Malformed(expr.to_string());
    let parts: Vec<&str> = body.split('-').collect();
    if parts.is_empty() || parts.len() > 3 {
        return Err(malformed());
    }
    let year = digits(parts[0], 4).ok_or_else(malformed)? as i32;
    let month = match parts.get(1) {
        Some(m) => Some(digits(m, 2).ok_or_else(malformed)?),
        None => None,
    };
    let day = match parts.get(2) {
        Some(d) => Some(digits(d, 2).ok_or_else(malformed)?),
        None => None,
    };

    let map_err = |e: ModelError| match e {
        ModelError::YearOutOfRange(_) => DateExprError::YearOutOfRange(expr.to_string()),
        ModelError::MonthOutOfRange(_) => DateExprError::MonthOutOfRange(expr.to_string()),
        _ => DateExprError::DayOutOfRange(expr.to_string()),
    };
    let (start, end) = match (month, day) {
        (None, _) => (
            CalendarDate::new(year, 1, 1).map_err(map_err)?,
            CalendarDate::new(year, 12, 31).map_err(map_err)?,
        ),
        (Some(m), None) => (
            CalendarDate::first_of_month(year, m).map_err(map_err)?,
            CalendarDate::last_of_month(year, m).map_err(map_err)?,
        ),
        (Some(m), Some(d)) => {
            let date = CalendarDate::new(year, m, d).map_err(map_err)?;
            (date, date)
        }
    };
    Ok(DateInterval { start, end, circa })
}

/// Shortest expression whose first day is `start` without running past `end`.
pub(crate) fn start_expr(start: CalendarDate, end: CalendarDate) -> String {
    let (y, m) = (start.year(), start.month());
    if start.is_first_of_year() && CalendarDate::new(y, 12, 31).is_ok_and(|e| e <= end) {
        format!("{y:04}")
    } else if start.is_first_of_month() && CalendarDate::last_of_month(y, m).is_ok_and(|e| e <= end)
    {
        format!("{y:04}-{m:02}")
    } else {
        start.to_string()
    }
}

/// Shortest expression whose last day is `end` without starting before `start`.
pub(crate) fn end_expr(start: CalendarDate, end: CalendarDate) -> String {
    let (y, m) = (end.year(), end.month());
    if end.is_last_of_year() && CalendarDate::new(y, 1, 1).is_ok_and(|s| s >= start) {
        format!("{y:04}")
    } else if end.is_last_of_month() && CalendarDate::first_of_month(y, m).is_ok_and(|s| s >= start)
    {
        format!("{y:04}-{m:02}")
    } else {
        end.to_string()
    }
}
