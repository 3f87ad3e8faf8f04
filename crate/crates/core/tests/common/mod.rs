//! Oracles shared by the integration suites. Nothing here calls into the
//! sampler's closed-form ledger.

#![allow(dead_code)]

use rand::Rng;

/// Greedy rejection sampling law by direct recursion on the full vector
/// `s(a)`: returns `P(output = a)` summed until `S > 1 - residual`, and the
/// residual actually left.
pub fn dense_greedy_law(target: &[f64], proposal: &[f64], residual: f64) -> (Vec<f64>, f64) {
    let mut s = vec![0.0; target.len()];
    let mut total = 0.0;
    for _ in 0..1_000_000 {
        if total > 1.0 - residual {
            break;
        }
        let rem = 1.0 - total;
        for a in 0..target.len() {
            s[a] += (rem * proposal[a]).min(target[a] - s[a]);
        }
        total = s.iter().sum();
    }
    (s, 1.0 - total)
}

/// Random `(target, proposal)` pair with rational masses on up to
/// `max_len` symbols. The proposal covers the target's support.
pub fn random_rational_pair<R: Rng>(rng: &mut R, max_len: usize) -> (Vec<f64>, Vec<f64>) {
    let len = rng.gen_range(2..=max_len);
    loop {
        let t: Vec<u32> = (0..len).map(|_| rng.gen_range(0..12)).collect();
        let p: Vec<u32> = (0..len).map(|_| rng.gen_range(1..12)).collect();
        let ts: u32 = t.iter().sum();
        if ts == 0 {
            continue;
        }
        let ps: u32 = p.iter().sum();
        return (
            t.iter().map(|&w| w as f64 / ts as f64).collect(),
            p.iter().map(|&w| w as f64 / ps as f64).collect(),
        );
    }
}

/// Adaptive Simpson quadrature.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 60)
}

/// `-2 z log₂(z/π)` with its limit at 0.
pub fn conditional_entropy_integrand(z: f64) -> f64 {
    if z == 0.0 {
        0.0
    } else {
        -2.0 * z * (z / std::f64::consts::PI).log2()
    }
}
