use super::histogram::TagHistogram;
use super::AnalysisError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    /// Negated slope of ln(frequency) against ln(rank).
    pub exponent: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// `(ln rank, ln frequency)` for every tag, most frequent first.
pub fn rank_frequency_series(h: &TagHistogram) -> Vec<(f64, f64)> {
    let mut counts: Vec<u64> = h.counts().values().copied().collect();
    counts.sort_unstable_by(|a, b| b.cmp(a));
    counts
        .iter()
        .enumerate()
        .map(|(i, &n)| (((i + 1) as f64).ln(), (n as f64).ln()))
        .collect()
}

/// Least-squares line through the log-log rank-frequency points.
///
/// Equal counts everywhere give a flat line: exponent 0, r² 1.
pub fn fit_power_law(h: &TagHistogram) -> Result<PowerLawFit, AnalysisError> {
    let pts = rank_frequency_series(h);
    if pts.len() < 2 {
        return Err(AnalysisError::TooFewTags(pts.len()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in &pts {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let flat = h.counts().values().min() == h.counts().values().max();
    if flat || syy == 0.0 {
        return Ok(PowerLawFit {
            exponent: 0.0,
            r_squared: 1.0,
            points: pts.len(),
        });
    }
    let slope = sxy / sxx;
    let r_squared = ((sxy * sxy) / (sxx * syy)).clamp(0.0, 1.0);
    Ok(PowerLawFit {
        exponent: -slope,
        r_squared,
        points: pts.len(),
    })
}
