//! Least-squares fits used to turn finite-scale counts into growth rates.

/// Slope and intercept of the least-squares line through `(x, y)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Option<(f64, f64)> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let len = x.len() as f64;
    let mx = x.iter().sum::<f64>() / len;
    let my = y.iter().sum::<f64>() / len;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// Least-squares slope of `a_n` against `n^s`: the finite-scale proxy for
/// `lim sup a_n / n^s` once an additive offset in `a_n` is discounted.
pub fn growth_coefficient(ns: &[usize], a: &[f64], s: f64) -> Option<f64> {
    let x: Vec<f64> = ns.iter().map(|&n| (n as f64).powf(s)).collect();
    linear_fit(&x, a).map(|(slope, _)| slope)
}

/// Slope of `log a_n` against `log n`; needs every `a_n > 0`.
pub fn log_log_slope(ns: &[usize], a: &[f64]) -> Option<f64> {
    if a.iter().any(|&v| v <= 0.0) {
        return None;
    }
    let x: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let y: Vec<f64> = a.iter().map(|v| v.ln()).collect();
    linear_fit(&x, &y).map(|(slope, _)| slope)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    pub exponent: f64,
    pub coefficient: f64,
    pub offset: f64,
    pub residual: f64,
}

const MAX_EXPONENT: f64 = 4.0;
const GRID_STEP: f64 = 1e-3;

fn fit_at(ns: &[usize], a: &[f64], s: f64) -> (f64, f64, f64) {
    let x: Vec<f64> = ns.iter().map(|&n| (n as f64).powf(s)).collect();
    let (coef, offset) = match linear_fit(&x, a) {
        Some((c, o)) if c > 0.0 => (c, o),
        _ => (0.0, a.iter().sum::<f64>() / a.len() as f64),
    };
    let rss = x
        .iter()
        .zip(a)
        .map(|(xi, yi)| {
            let e = yi - (offset + coef * xi);
            e * e
        })
        .sum();
    (rss, coef, offset)
}

/// Fits `a_n ≈ c + A n^s` with `A ≥ 0` by profiling the residual over `s`.
///
/// The exponent of the best fit estimates the critical exponent where
/// `a_n / n^s` switches from diverging to vanishing. Saturated data (all
/// `a_n` equal, or no positive coefficient fits) yields exponent 0.
pub fn critical_exponent(ns: &[usize], a: &[f64]) -> Option<ExponentFit> {
    if ns.len() != a.len() || ns.len() < 3 {
        return None;
    }
    let lo = a.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = a.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo <= 1e-12 {
        return Some(ExponentFit {
            exponent: 0.0,
            coefficient: 0.0,
            offset: lo,
            residual: 0.0,
        });
    }
    let steps = (MAX_EXPONENT / GRID_STEP).round() as usize;
    let mut best = (f64::INFINITY, 0usize);
    for i in 1..=steps {
        let (rss, coef, _) = fit_at(ns, a, i as f64 * GRID_STEP);
        if coef > 0.0 && rss < best.0 {
            best = (rss, i);
        }
    }
    if !best.0.is_finite() {
        return Some(ExponentFit {
            exponent: 0.0,
            coefficient: 0.0,
            offset: a.iter().sum::<f64>() / a.len() as f64,
            residual: fit_at(ns, a, 1.0).0,
        });
    }
    // golden-section refinement inside the bracketing grid cells
    let mut left = (best.1 as f64 - 1.0).max(0.0) * GRID_STEP;
    let mut right = ((best.1 + 1) as f64 * GRID_STEP).min(MAX_EXPONENT);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..60 {
        let m1 = right - phi * (right - left);
        let m2 = left + phi * (right - left);
        if fit_at(ns, a, m1).0 <= fit_at(ns, a, m2).0 {
            right = m2;
        } else {
            left = m1;
        }
    }
    let mut exponent = 0.5 * (left + right);
    if fit_at(ns, a, exponent).0 > best.0 {
        exponent = best.1 as f64 * GRID_STEP;
    }
    let (residual, coefficient, offset) = fit_at(ns, a, exponent);
    Some(ExponentFit {
        exponent,
        coefficient,
        offset,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_data_has_exponent_one() {
        let ns: Vec<usize> = (4..=14).collect();
        let a: Vec<f64> = ns.iter().map(|&n| (n as f64 + 2.0) * 2f64.ln()).collect();
        let fit = critical_exponent(&ns, &a).unwrap();
        assert!((fit.exponent - 1.0).abs() < 1e-4, "{fit:?}");
        assert!((growth_coefficient(&ns, &a, 1.0).unwrap() - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn power_law_exponent_recovered() {
        let ns: Vec<usize> = (2..=12).collect();
        let a: Vec<f64> = ns
            .iter()
            .map(|&n| 0.3 + 1.7 * (n as f64).powf(0.5))
            .collect();
        let fit = critical_exponent(&ns, &a).unwrap();
        assert!((fit.exponent - 0.5).abs() < 1e-3, "{fit:?}");
    }

    #[test]
    fn constant_data_is_zero() {
        let ns = [1, 2, 3, 4];
        assert_eq!(critical_exponent(&ns, &[0.0; 4]).unwrap().exponent, 0.0);
        assert_eq!(critical_exponent(&ns, &[1.5; 4]).unwrap().exponent, 0.0);
        assert!(critical_exponent(&ns[..2], &[0.0; 2]).is_none());
    }

    #[test]
    fn log_log_needs_positive_data() {
        assert!(log_log_slope(&[1, 2, 3], &[0.0, 1.0, 2.0]).is_none());
        let s = log_log_slope(&[1, 2, 4], &[3.0, 6.0, 12.0]).unwrap();
        assert!((s - 1.0).abs() < 1e-12);
    }
}
