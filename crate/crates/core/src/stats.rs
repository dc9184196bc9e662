//! Mergeable summary statistics and log-log exponent fits.

use serde::Serialize;

use crate::error::{Error, Result};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Running count, sum and sum of squares.
///
/// Merging is exact (hence associative and order independent) as long as
/// the partial sums are exactly representable, which holds for the
/// integer-valued observables this crate produces.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Accumulator {
    n: u64,
    sum: f64,
    sum_sq: f64,
    flagged: u64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.n += 1;
        self.sum += x;
        self.sum_sq += x * x;
    }

    /// Pushes a sample, counting it as truncated when `flag` is set.
    pub fn push_flagged(&mut self, x: f64, flag: bool) {
        self.push(x);
        self.flagged += flag as u64;
    }

    pub fn merge(&mut self, other: &Accumulator) {
        self.n += other.n;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self.flagged += other.flagged;
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        if self.n == 0 {
            f64::NAN
        } else {
            self.sum / self.n as f64
        }
    }

    /// Unbiased sample variance; `None` with fewer than two samples.
    pub fn variance(&self) -> Option<f64> {
        if self.n < 2 {
            return None;
        }
        let n = self.n as f64;
        let centered = self.sum_sq - self.sum * self.sum / n;
        Some((centered / (n - 1.0)).max(0.0))
    }

    pub fn sem(&self) -> Option<f64> {
        self.variance().map(|v| (v / self.n as f64).sqrt())
    }

    pub fn record(&self, r: u64) -> EstimateRecord {
        let mean = self.mean();
        let sem = self.sem();
        let s = sem.unwrap_or(0.0);
        EstimateRecord {
            r,
            trials: self.n,
            mean,
            sem: s,
            sem_defined: sem.is_some(),
            ci_low: mean - Z_95 * s,
            ci_high: mean + Z_95 * s,
            truncated_fraction: if self.n == 0 {
                0.0
            } else {
                self.flagged as f64 / self.n as f64
            },
            failed: 0,
            wall_time_secs: 0.0,
        }
    }
}

/// One Monte Carlo estimate at one radius (or time, or distance).
/// Equality ignores the wall time.
#[derive(Clone, Debug, Serialize)]
pub struct EstimateRecord {
    pub r: u64,
    pub trials: u64,
    pub mean: f64,
    pub sem: f64,
    /// False when only one sample was seen; `sem` is then reported as 0.
    pub sem_defined: bool,
    pub ci_low: f64,
    pub ci_high: f64,
    pub truncated_fraction: f64,
    /// Trials dropped after a sampling error.
    pub failed: u64,
    #[serde(skip)]
    pub wall_time_secs: f64,
}

impl PartialEq for EstimateRecord {
    fn eq(&self, o: &Self) -> bool {
        (self.r, self.trials, self.sem_defined, self.failed) == (o.r, o.trials, o.sem_defined, o.failed)
            && [self.mean, self.sem, self.ci_low, self.ci_high, self.truncated_fraction]
                .iter()
                .zip([o.mean, o.sem, o.ci_low, o.ci_high, o.truncated_fraction])
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

impl EstimateRecord {
    /// A record from published summary values, e.g. a row read back from CSV.
    pub fn from_summary(r: u64, trials: u64, mean: f64, sem: f64) -> Self {
        EstimateRecord {
            r,
            trials,
            mean,
            sem,
            sem_defined: sem > 0.0,
            ci_low: mean - Z_95 * sem,
            ci_high: mean + Z_95 * sem,
            truncated_fraction: 0.0,
            failed: 0,
            wall_time_secs: 0.0,
        }
    }
}

/// Summary of a finite sample.
pub fn summarize(samples: impl IntoIterator<Item = f64>) -> EstimateRecord {
    let mut acc = Accumulator::new();
    for x in samples {
        acc.push(x);
    }
    acc.record(0)
}

/// Log-log power-law fit `mean ≈ e^intercept · r^slope`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
    pub r_squared: f64,
    pub points: usize,
}

fn fit_points(records: &[EstimateRecord]) -> Result<Vec<(f64, f64, f64)>> {
    let pts: Vec<&EstimateRecord> = records.iter().filter(|rec| rec.r >= 2).collect();
    if pts.len() < 3 {
        return Err(Error::Fit(format!(
            "need at least 3 records with r >= 2, got {}",
            pts.len()
        )));
    }
    pts.iter()
        .map(|rec| {
            if !(rec.mean > 0.0) {
                return Err(Error::Fit(format!("non-positive mean {} at r = {}", rec.mean, rec.r)));
            }
            Ok(((rec.r as f64).ln(), rec.mean.ln(), rec.sem / rec.mean))
        })
        .collect()
}

fn weighted_line(pts: &[(f64, f64, f64)], weights: &[f64]) -> ExponentFit {
    let wsum: f64 = weights.iter().sum();
    let xbar = pts.iter().zip(weights).map(|(p, w)| w * p.0).sum::<f64>() / wsum;
    let ybar = pts.iter().zip(weights).map(|(p, w)| w * p.1).sum::<f64>() / wsum;
    let sxx: f64 = pts.iter().zip(weights).map(|(p, w)| w * (p.0 - xbar).powi(2)).sum();
    let sxy: f64 = pts
        .iter()
        .zip(weights)
        .map(|(p, w)| w * (p.0 - xbar) * (p.1 - ybar))
        .sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ss_res: f64 = pts
        .iter()
        .zip(weights)
        .map(|(p, w)| w * (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let ss_tot: f64 = pts.iter().zip(weights).map(|(p, w)| w * (p.1 - ybar).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    // delta method: Var(log mean_i) ≈ (sem_i / mean_i)^2
    let slope_var: f64 = pts
        .iter()
        .zip(weights)
        .map(|(p, w)| (w * (p.0 - xbar) / sxx).powi(2) * p.2 * p.2)
        .sum();
    ExponentFit {
        slope,
        intercept,
        slope_se: slope_var.sqrt(),
        r_squared,
        points: pts.len(),
    }
}

/// Ordinary least squares on `(ln r, ln mean)` over records with `r ≥ 2`.
pub fn fit_exponent(records: &[EstimateRecord]) -> Result<ExponentFit> {
    let pts = fit_points(records)?;
    Ok(weighted_line(&pts, &vec![1.0; pts.len()]))
}

/// Inverse-variance weighted variant of [`fit_exponent`].
pub fn fit_exponent_weighted(records: &[EstimateRecord]) -> Result<ExponentFit> {
    let pts = fit_points(records)?;
    if pts.iter().any(|p| !(p.2 > 0.0)) {
        return Err(Error::Fit("weighted fit needs positive standard errors".into()));
    }
    let weights: Vec<f64> = pts.iter().map(|p| 1.0 / (p.2 * p.2)).collect();
    Ok(weighted_line(&pts, &weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rec(r: u64, mean: f64, sem: f64) -> EstimateRecord {
        EstimateRecord {
            r,
            trials: 100,
            mean,
            sem,
            sem_defined: true,
            ci_low: mean - Z_95 * sem,
            ci_high: mean + Z_95 * sem,
            truncated_fraction: 0.0,
            failed: 0,
            wall_time_secs: 0.0,
        }
    }

    #[test]
    fn single_sample() {
        let s = summarize([5.0]);
        assert_eq!(s.mean, 5.0);
        assert_eq!(s.sem, 0.0);
        assert!(!s.sem_defined);
    }

    #[test]
    fn three_samples() {
        let s = summarize([1.0, 2.0, 3.0]);
        assert_eq!(s.mean, 2.0);
        assert!((s.sem - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!(s.ci_low <= s.mean && s.mean <= s.ci_high);
    }

    #[test]
    fn merge_matches_sequential() {
        let mut a = Accumulator::new();
        a.push(1.0);
        a.push(2.0);
        let mut b = Accumulator::new();
        b.push(3.0);
        a.merge(&b);
        assert_eq!(a.record(0), summarize([1.0, 2.0, 3.0]));
    }

    #[test]
    fn exact_power_laws() {
        let f = fit_exponent(&[rec(2, 4.0, 0.0), rec(4, 16.0, 0.0), rec(8, 64.0, 0.0)]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        let f = fit_exponent(&[rec(2, 2.0, 0.0), rec(4, 4.0, 0.0), rec(8, 8.0, 0.0)]).unwrap();
        assert!((f.slope - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jittered_quadratic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let recs: Vec<EstimateRecord> = [2u64, 4, 8, 16, 32]
            .iter()
            .map(|&r| {
                let noise = 1.0 + 0.05 * (2.0 * rng.random::<f64>() - 1.0);
                let m = (r * r) as f64 * noise;
                rec(r, m, 0.05 * m)
            })
            .collect();
        let f = fit_exponent(&recs).unwrap();
        assert!((1.9..=2.1).contains(&f.slope), "slope {}", f.slope);
        assert!(f.slope_se > 0.0 && f.slope_se < 0.1);
        let w = fit_exponent_weighted(&recs).unwrap();
        assert!((1.9..=2.1).contains(&w.slope));
    }

    #[test]
    fn fit_errors() {
        assert!(fit_exponent(&[rec(2, 1.0, 0.0), rec(4, 2.0, 0.0)]).is_err());
        // r = 1 is excluded from the fit
        assert!(fit_exponent(&[rec(1, 1.0, 0.0), rec(2, 2.0, 0.0), rec(4, 4.0, 0.0)]).is_err());
        assert!(fit_exponent(&[rec(2, 1.0, 0.0), rec(4, 0.0, 0.0), rec(8, 2.0, 0.0)]).is_err());
    }
}
