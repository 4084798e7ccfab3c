use chrono::{DateTime, Datelike, NaiveDate, NaiveDateTime};

use crate::store::{month_from_abbrev, MonthStamp};

const DAY_FORMATS: &[&str] = &[
    "%Y-%m-%d",
    "%Y/%m/%d",
    "%d %b %y",
    "%d %b %Y",
    "%d %B %Y",
    "%b %d, %Y",
    "%B %d, %Y",
    "%b %d %Y",
];

/// Reads a date as it appears on a page and truncates it to the month.
///
/// Accepts "Jun 07", "June 2007", "2007-06", ISO dates and timestamps, and
/// the usual day-month-year spellings.
pub fn parse_page_date(s: &str) -> Option<MonthStamp> {
    let s = s.trim();
    if let Ok(m) = MonthStamp::parse(s) {
        return Some(m);
    }
    if let Ok(t) = DateTime::parse_from_rfc3339(s) {
        return stamp(t.month(), t.year());
    }
    if let Ok(t) = NaiveDateTime::parse_from_str(s, "%Y-%m-%d %H:%M:%S") {
        return stamp(t.month(), t.year());
    }
    for f in DAY_FORMATS {
        // chrono lets a format space match nothing, so "Jun 2007" reads as
        // day 20 of year 7 under "%b %d %Y"; skip such readings
        if let Ok(d) = NaiveDate::parse_from_str(s, f) {
            if let Some(m) = stamp(d.month(), d.year()) {
                return Some(m);
            }
        }
    }
    month_year(s)
}

fn stamp(month: u32, year: i32) -> Option<MonthStamp> {
    MonthStamp::from_calendar(u8::try_from(month).ok()?, year)
}

/// "June 2007", "Jun 2007", "2007-06".
fn month_year(s: &str) -> Option<MonthStamp> {
    if let Some((y, m)) = s.split_once('-') {
        if y.len() == 4 && m.len() == 2 {
            return stamp(m.parse().ok()?, y.parse().ok()?);
        }
    }
    let (name, year) = s.split_once(' ')?;
    let year: i32 = year.trim().parse().ok()?;
    if !(1000..=9999).contains(&year) {
        return None;
    }
    let month = month_from_abbrev(name.get(..3)?)?;
    stamp(u32::from(month), year)
}
