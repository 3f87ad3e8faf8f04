//! Goodness-of-fit statistics used by the verification harness and tests.

use std::collections::BTreeMap;

/// Asymptotic 1% critical value of `√n · D` for the one-sample
/// Kolmogorov-Smirnov statistic.
pub const KS_CRITICAL_1PCT: f64 = 1.6276;

/// Asymptotic 1% critical value of `√n · V` for Kuiper's statistic.
pub const KUIPER_CRITICAL_1PCT: f64 = 2.001;

/// One-sample Kolmogorov-Smirnov statistic `D = sup |F_n - F|`.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    let (plus, minus) = ecdf_deviations(samples, cdf);
    plus.max(minus)
}

/// Kuiper's statistic `V = D⁺ + D⁻`; invariant under rotations of a circle.
pub fn kuiper_statistic<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    let (plus, minus) = ecdf_deviations(samples, cdf);
    plus + minus
}

fn ecdf_deviations<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> (f64, f64) {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    let mut plus: f64 = 0.0;
    let mut minus: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        plus = plus.max((i + 1) as f64 / n - f);
        minus = minus.max(f - i as f64 / n);
    }
    (plus, minus)
}

/// Plug-in Shannon entropy (bits) of a histogram.
pub fn plugin_entropy_bits(counts: &BTreeMap<u64, u64>) -> f64 {
    let total: u64 = counts.values().sum();
    if total == 0 {
        return 0.0;
    }
    let n = total as f64;
    counts
        .values()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// Nearest-rank percentile of sorted data, `q` in `[0, 1]`.
pub fn percentile_sorted(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let rank = (q * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}
