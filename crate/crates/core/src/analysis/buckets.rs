use std::fmt;

use super::histogram::TagHistogram;
use super::AnalysisError;

/// Upper bounds of the default frequency buckets: 1, 2–10, 11–20, …,
/// 91–100, 101–200, …, 401–500, 501–1,000, 1,001–120,000.
pub const DEFAULT_EDGES: [u64; 17] = [
    1, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 200, 300, 400, 500, 1000, 120_000,
];

/// A value in hundredths, printed with two decimals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Hundredths(pub u64);

impl Hundredths {
    /// `num / den` rounded half-up to two decimals; 0 when `den` is 0.
    pub fn ratio(num: u64, den: u64) -> Self {
        Hundredths::scaled(num, den, 100)
    }

    /// `100 · num / den` rounded half-up to two decimals.
    pub fn percent(num: u64, den: u64) -> Self {
        Hundredths::scaled(num, den, 10_000)
    }

    fn scaled(num: u64, den: u64, scale: u128) -> Self {
        if den == 0 {
            return Hundredths(0);
        }
        let (num, den) = (u128::from(num), u128::from(den));
        Hundredths(((2 * num * scale + den) / (2 * den)) as u64)
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 100.0
    }
}

impl fmt::Display for Hundredths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}", self.0 / 100, self.0 % 100)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BucketRow {
    /// Inclusive frequency range.
    pub lo: u64,
    pub hi: u64,
    pub unique_count: u64,
    /// Share of unique tags with frequency ≤ `hi`, in percent.
    pub cumulative_pct: Hundredths,
}

impl BucketRow {
    /// `"1"`, `"2-10"`, `"1,001-120,000"`.
    pub fn label(&self) -> String {
        if self.lo == self.hi {
            group_digits(self.lo)
        } else {
            format!("{}-{}", group_digits(self.lo), group_digits(self.hi))
        }
    }
}

fn group_digits(n: u64) -> String {
    let s = n.to_string();
    let mut out = String::new();
    for (i, c) in s.chars().enumerate() {
        if i > 0 && (s.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(c);
    }
    out
}

fn check_edges(edges: &[u64]) -> Result<(), AnalysisError> {
    if edges.is_empty() || edges[0] == 0 {
        return Err(AnalysisError::BadEdges("edges must start at 1 or more".into()));
    }
    if let Some(w) = edges.windows(2).find(|w| w[0] >= w[1]) {
        return Err(AnalysisError::BadEdges(format!("{} is not below {}", w[0], w[1])));
    }
    Ok(())
}

/// Rows for precomputed per-bucket unique counts.
pub fn bucket_rows(edges: &[u64], unique_counts: &[u64]) -> Result<Vec<BucketRow>, AnalysisError> {
    check_edges(edges)?;
    if edges.len() != unique_counts.len() {
        return Err(AnalysisError::BadEdges(format!(
            "{} edges but {} bucket counts",
            edges.len(),
            unique_counts.len()
        )));
    }
    let total: u64 = unique_counts.iter().sum();
    let mut running = 0;
    let mut lo = 1;
    Ok(edges
        .iter()
        .zip(unique_counts)
        .map(|(&hi, &n)| {
            running += n;
            let row = BucketRow {
                lo,
                hi,
                unique_count: n,
                cumulative_pct: Hundredths::percent(running, total),
            };
            lo = hi + 1;
            row
        })
        .collect())
}

/// Buckets the histogram's tags by frequency. `edges` are the inclusive
/// upper bounds of consecutive buckets, the first bucket starting at 1.
pub fn frequency_table(h: &TagHistogram, edges: &[u64]) -> Result<Vec<BucketRow>, AnalysisError> {
    check_edges(edges)?;
    let mut per_bucket = vec![0u64; edges.len()];
    for (tag, &n) in h.counts() {
        let i = edges.partition_point(|&e| e < n);
        if i == edges.len() {
            return Err(AnalysisError::AboveLastEdge {
                tag: tag.clone(),
                count: n,
                last_edge: edges[edges.len() - 1],
            });
        }
        per_bucket[i] += 1;
    }
    bucket_rows(edges, &per_bucket)
}
