//! Small summary-statistics helpers shared by the estimators and the sweep.

/// Mean and standard error (`sample std / sqrt(len)`, Bessel-corrected).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSe {
    pub mean: f64,
    pub std_error: f64,
    pub count: u64,
}

pub fn mean_se(values: &[f64]) -> MeanSe {
    let count = values.len() as u64;
    if values.is_empty() {
        return MeanSe { mean: f64::NAN, std_error: f64::NAN, count };
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let std_error = if values.len() < 2 {
        0.0
    } else {
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (values.len() - 1) as f64;
        (var / values.len() as f64).sqrt()
    };
    MeanSe { mean, std_error, count }
}

/// Frequency of `hits` out of `trials`, with the same standard error
/// `mean_se` would give on the 0/1 samples.
pub fn proportion(hits: u64, trials: u64) -> MeanSe {
    if trials == 0 {
        return MeanSe { mean: f64::NAN, std_error: f64::NAN, count: 0 };
    }
    let p = hits as f64 / trials as f64;
    let std_error = if trials < 2 {
        0.0
    } else {
        let var = p * (1.0 - p) * trials as f64 / (trials - 1) as f64;
        (var / trials as f64).sqrt()
    };
    MeanSe { mean: p, std_error, count: trials }
}

/// Linear-interpolation quantile of sorted data (`q` in `[0, 1]`).
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    match sorted.len() {
        0 => f64::NAN,
        1 => sorted[0],
        len => {
            let pos = q.clamp(0.0, 1.0) * (len - 1) as f64;
            let lo = pos.floor() as usize;
            let hi = pos.ceil() as usize;
            let frac = pos - lo as f64;
            sorted[lo] + (sorted[hi] - sorted[lo]) * frac
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_se() {
        let m = mean_se(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m.mean, 2.5);
        // sample variance 5/3
        assert!((m.std_error - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn proportion_matches_sample_formula() {
        let samples: Vec<f64> = (0..10).map(|i| if i < 3 { 1.0 } else { 0.0 }).collect();
        let a = mean_se(&samples);
        let b = proportion(3, 10);
        assert!((a.mean - b.mean).abs() < 1e-12);
        assert!((a.std_error - b.std_error).abs() < 1e-12);
    }

    #[test]
    fn quantiles() {
        let d = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(quantile_sorted(&d, 0.5), 3.0);
        assert_eq!(quantile_sorted(&d, 0.0), 1.0);
        assert_eq!(quantile_sorted(&d, 1.0), 5.0);
        assert_eq!(quantile_sorted(&[1.0, 2.0], 0.5), 1.5);
        assert!((quantile_sorted(&d, 0.1) - 1.4).abs() < 1e-12);
    }
}
