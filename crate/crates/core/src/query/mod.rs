//! Triple-pattern queries with UNION, DISTINCT and ORDER BY, and the three
//! canned tagging searches built on them.

mod eval;
mod pattern;
mod scenarios;
mod text;

pub use eval::{eval, match_bgp, Bindings, ResultSet};
pub use pattern::{OrderBy, Pattern, Query, QueryError, Slot};
pub use scenarios::{
    objects_by_tag, objects_by_tag_query, objects_of_tagger, objects_of_tagger_query, taggers_of_object,
    taggers_of_object_query, ObjectVote, TagGroup,
};
pub use text::parse_query;

/// Renders rows as left-aligned text columns under a header line.
pub fn format_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

/// Renders rows as CSV with a header record.
pub fn format_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for row in rows {
        w.write_record(row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is UTF-8")
}

impl ResultSet {
    /// Cell text: IRI string or literal lexical form.
    pub fn text_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|t| t.text().to_string()).collect())
            .collect()
    }

    pub fn to_table(&self) -> String {
        let header: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        format_table(&header, &self.text_rows())
    }

    pub fn to_csv(&self) -> String {
        let header: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        format_csv(&header, &self.text_rows())
    }
}
