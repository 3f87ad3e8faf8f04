//! Gauss-Legendre quadrature on intervals and on the unit sphere.
//!
//! The Kochen-Specker integrands are piecewise smooth with kinks on great
//! circles. [`SphereRule`] integrates in a frame whose pole is perpendicular
//! to every kink plane, so each kink sits at a fixed azimuth and can be made
//! a panel boundary.

use std::f64::consts::PI;

use crate::geometry::{Frame, UnitVec3};

/// Nodes and weights of an `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `(node, weight)` pairs mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let (p, pm1) = if n == 0 { (1.0, 0.0) } else { (p1, p0) };
    let d = n as f64 * (x * p - pm1) / (x * x - 1.0);
    (p, d)
}

/// Integral over `(0, 1]` of a function that is smooth on `(0, 1]` but may
/// have a log-type singularity at 0. Panels are graded geometrically toward
/// the origin so each panel sees a smooth integrand.
pub fn integrate_unit_interval_graded<F: FnMut(f64) -> f64>(mut f: F) -> f64 {
    let rule = GaussLegendre::new(20);
    let mut total = 0.0;
    let mut hi = 1.0_f64;
    // 2^-60 leaves a remainder of order 1e-36 for integrands bounded by z log z.
    for _ in 0..60 {
        let lo = 0.5 * hi;
        total += rule.integrate(lo, hi, &mut f);
        hi = lo;
    }
    total
}

/// Product rule on S²: Gauss-Legendre in the polar angle about a chosen pole
/// and Gauss-Legendre panels in the azimuth, split at caller-supplied cuts.
#[derive(Debug, Clone)]
pub struct SphereRule {
    polar: GaussLegendre,
    azimuthal: GaussLegendre,
}

impl Default for SphereRule {
    fn default() -> Self {
        Self::new(128, 64)
    }
}

impl SphereRule {
    pub fn new(polar_nodes: usize, azimuth_nodes_per_panel: usize) -> Self {
        Self {
            polar: GaussLegendre::new(polar_nodes),
            azimuthal: GaussLegendre::new(azimuth_nodes_per_panel),
        }
    }

    /// `∫ f(x) dΩ` using polar angle about `pole`. `cuts` are azimuths (in the
    /// frame of `pole`) where `f` may be discontinuous or kinked.
    pub fn integrate<F: FnMut(&UnitVec3) -> f64>(&self, pole: &UnitVec3, cuts: &[f64], mut f: F) -> f64 {
        let frame = Frame::with_pole(*pole);
        let mut edges: Vec<f64> = cuts.iter().map(|c| c.rem_euclid(2.0 * PI)).collect();
        edges.push(0.0);
        edges.push(2.0 * PI);
        edges.sort_by(f64::total_cmp);
        edges.dedup_by(|a, b| (*a - *b).abs() < 1e-15);

        let mut total = 0.0;
        for (theta, wt) in self.polar.mapped(0.0, PI) {
            let (st, ct) = theta.sin_cos();
            let mut ring = 0.0;
            for panel in edges.windows(2) {
                for (phi, wp) in self.azimuthal.mapped(panel[0], panel[1]) {
                    let local = UnitVec3::unchecked(st * phi.cos(), st * phi.sin(), ct);
                    ring += wp * f(&frame.to_world(&local));
                }
            }
            total += wt * st * ring;
        }
        total
    }

    /// Integral of an integrand whose kinks lie on the great circles
    /// orthogonal to each of `normals`. All normals must be coplanar for the
    /// kinks to align with the azimuthal panels; two always are.
    pub fn integrate_with_kinks<F: FnMut(&UnitVec3) -> f64>(&self, normals: &[UnitVec3], f: F) -> f64 {
        let pole = common_perpendicular(normals);
        let frame = Frame::with_pole(pole);
        let cuts: Vec<f64> = normals
            .iter()
            .flat_map(|n| {
                let a = frame.azimuth(n);
                [a - 0.5 * PI, a + 0.5 * PI]
            })
            .collect();
        self.integrate(&pole, &cuts, f)
    }
}

/// A unit vector orthogonal to the first two normals (or to the first one).
fn common_perpendicular(normals: &[UnitVec3]) -> UnitVec3 {
    let first = normals.first().copied().unwrap_or(UnitVec3::Z);
    if let Some(second) = normals.get(1) {
        let c = first.cross(second);
        // Nearly parallel normals share (almost) the same kink circle; any
        // perpendicular of the first one will do.
        if c.iter().map(|v| v * v).sum::<f64>() > 1e-20 {
            if let Ok(p) = UnitVec3::normalized(c[0], c[1], c[2]) {
                return p;
            }
        }
    }
    Frame::with_pole(first).to_world(&UnitVec3::X)
}
