use std::fmt;

use super::ModelError;

/// Day number of 1600-01-01 relative to the internal civil-day origin.
const EPOCH_OFFSET: i64 = days_from_civil(1600, 1, 1);

/// Calendar day in the proleptic Gregorian calendar, years 1..=9999.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CalendarDate {
    year: i32,
    month: u32,
    day: u32,
}

pub fn is_leap_year(year: i32) -> bool {
    (year % 4 == 0 && year % 100 != 0) || year % 400 == 0
}

pub fn days_in_month(year: i32, month: u32) -> u32 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if is_leap_year(year) => 29,
        2 => 28,
        _ => 0,
    }
}

// Civil-day arithmetic on a March-based year so the leap day falls last.
const fn days_from_civil(year: i64, month: i64, day: i64) -> i64 {
    let y = if month <= 2 { year - 1 } else { year };
    let era = y.div_euclid(400);
    let yoe = y - era * 400;
    let mp = (month + 9) % 12;
    let doy = (153 * mp + 2) / 5 + day - 1;
    let doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    era * 146_097 + doe
}

fn civil_from_days(days: i64) -> (i64, i64, i64) {
    let era = days.div_euclid(146_097);
    let doe = days - era * 146_097;
    let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let day = doy - (153 * mp + 2) / 5 + 1;
    let month = if mp < 10 { mp + 3 } else { mp - 9 };
    let year = yoe + era * 400 + i64::from(month <= 2);
    (year, month, day)
}

impl CalendarDate {
    pub const MIN_YEAR: i32 = 1;
    pub const MAX_YEAR: i32 = 9999;

    pub fn new(year: i32, month: u32, day: u32) -> Result<Self, ModelError> {
        if !(Self::MIN_YEAR..=Self::MAX_YEAR).contains(&year) {
            return Err(ModelError::YearOutOfRange(year));
        }
        if !(1..=12).contains(&month) {
            return Err(ModelError::MonthOutOfRange(month));
        }
        if day == 0 || day > days_in_month(year, month) {
            return Err(ModelError::DayOutOfRange { year, month, day });
        }
        Ok(Self { year, month, day })
    }

    /// First day of the given month.
    pub fn first_of_month(year: i32, month: u32) -> Result<Self, ModelError> {
        Self::new(year, month, 1)
    }

    /// Last day of the given month.
    pub fn last_of_month(year: i32, month: u32) -> Result<Self, ModelError> {
        Self::new(year, month, days_in_month(year, month).max(1))
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn month(&self) -> u32 {
        self.month
    }

    pub fn day(&self) -> u32 {
        self.day
    }

    /// Days since 1600-01-01 (which is day 0). Earlier dates are negative.
    pub fn to_day_number(&self) -> i64 {
        days_from_civil(
            i64::from(self.year),
            i64::from(self.month),
            i64::from(self.day),
        ) - EPOCH_OFFSET
    }

    /// Inverse of [`CalendarDate::to_day_number`]; `None` outside years 1..=9999.
    pub fn from_day_number(n: i64) -> Option<Self> {
        let (year, month, day) = civil_from_days(n.checked_add(EPOCH_OFFSET)?);
        let year = i32::try_from(year).ok()?;
        Self::new(year, month as u32, day as u32).ok()
    }

    pub fn is_first_of_year(&self) -> bool {
        self.month == 1 && self.day == 1
    }

    pub fn is_last_of_year(&self) -> bool {
        self.month == 12 && self.day == 31
    }

    pub fn is_first_of_month(&self) -> bool {
        self.day == 1
    }

    pub fn is_last_of_month(&self) -> bool {
        self.day == days_in_month(self.year, self.month)
    }
}

impl fmt::Display for CalendarDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}-{:02}", self.year, self.month, self.day)
    }
}

/// Inclusive span of calendar days, optionally marked approximate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DateInterval {
    pub start: CalendarDate,
    pub end: CalendarDate,
    pub circa: bool,
}

impl DateInterval {
    pub fn new(start: CalendarDate, end: CalendarDate, circa: bool) -> Result<Self, ModelError> {
        if end < start {
            return Err(ModelError::IntervalReversed { start, end });
        }
        Ok(Self { start, end, circa })
    }

    pub fn day(date: CalendarDate) -> Self {
        Self {
            start: date,
            end: date,
            circa: false,
        }
    }

    pub fn start_day(&self) -> i64 {
        self.start.to_day_number()
    }

    pub fn end_day(&self) -> i64 {
        self.end.to_day_number()
    }

    pub fn is_ordered(&self) -> bool {
        self.start <= self.end
    }

    /// Inclusive overlap: intervals sharing a single day overlap.
    pub fn overlaps(&self, other: &DateInterval) -> bool {
        self.start <= other.end && other.start <= self.end
    }
}
