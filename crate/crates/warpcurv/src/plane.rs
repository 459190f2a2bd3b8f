//! Sectional curvature of arbitrary 2-planes and the pinching bounds
//! −4 − 2n(n−1)α/u^{2n+2} ≤ K ≤ −1 + nα/u^{2n+2} of the Einstein family.
//!
//! The bounds are verified by seeded Monte-Carlo sampling of orthonormal
//! planes plus the two explicit extremizers (the θ-horizontal plane on
//! top, the θ-u fiber plane on the bottom). Sampling is partitioned into
//! fixed-size blocks with per-block RNG substreams derived from the seed,
//! so the result is independent of how blocks land on threads.

use crate::cone;
use crate::engine::CurvatureTensor;
use crate::error::{Error, Result};
use crate::exec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

const ORTHO_TOL: f64 = 1e-12;
const BLOCK: usize = 4096;

/// An orthonormal pair of frame-coefficient vectors spanning a 2-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPlane {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl TwoPlane {
    /// Validates |a| = |b| = 1 and a·b = 0 to 1e−12.
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() || a.is_empty() {
            return Err(Error::Input("plane vectors must share a dimension".into()));
        }
        let na = dot(&a, &a).sqrt();
        let nb = dot(&b, &b).sqrt();
        let ab = dot(&a, &b);
        if (na - 1.0).abs() > ORTHO_TOL || (nb - 1.0).abs() > ORTHO_TOL || ab.abs() > ORTHO_TOL {
            return Err(Error::Input(format!(
                "plane not orthonormal: |a| = {na}, |b| = {nb}, a.b = {ab}"
            )));
        }
        Ok(TwoPlane { a, b })
    }

    /// The coordinate plane spanned by frame vectors i and j.
    pub fn coordinate(dim: usize, i: usize, j: usize) -> Self {
        let mut a = vec![0.0; dim];
        let mut b = vec![0.0; dim];
        a[i] = 1.0;
        b[j] = 1.0;
        TwoPlane { a, b }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn vectors(&self) -> (&[f64], &[f64]) {
        (&self.a, &self.b)
    }
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(p, q)| p * q).sum()
}

/// K(σ) = Σ a_i b_j a_k b_l R_{ijkl}, contracted through the plane's
/// bivector ω_{ij} = a_i b_j − a_j b_i.
pub fn sectional_curvature(tensor: &CurvatureTensor, plane: &TwoPlane) -> Result<f64> {
    let dim = tensor.dim();
    if plane.dim() != dim {
        return Err(Error::Input(format!(
            "plane dimension {} does not match tensor dimension {dim}",
            plane.dim()
        )));
    }
    let omega = bivector(&plane.a, &plane.b);
    let pairs = index_pairs(dim);
    let mut k = 0.0;
    for (pi, &(i, j)) in pairs.iter().enumerate() {
        if omega[pi] == 0.0 {
            continue;
        }
        for (qi, &(p, q)) in pairs.iter().enumerate() {
            k += omega[pi] * omega[qi] * tensor.get(i, j, p, q);
        }
    }
    Ok(k)
}

fn index_pairs(dim: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(dim * (dim - 1) / 2);
    for i in 0..dim {
        for j in (i + 1)..dim {
            pairs.push((i, j));
        }
    }
    pairs
}

fn bivector(a: &[f64], b: &[f64]) -> Vec<f64> {
    let dim = a.len();
    let mut omega = Vec::with_capacity(dim * (dim - 1) / 2);
    for i in 0..dim {
        for j in (i + 1)..dim {
            omega.push(a[i] * b[j] - a[j] * b[i]);
        }
    }
    omega
}

/// Pinching bounds of the Einstein member λ_α at radius u, valid (and
/// asserted by the sampling suite) for α ∈ (0, α_max).
pub fn curvature_bounds(alpha: f64, n: u32, u: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha < cone::alpha_max(n)) {
        return Err(Error::Parameter(format!(
            "bounds hold for alpha in (0, alpha_max({n} ) = {}); got {alpha}",
            cone::alpha_max(n)
        )));
    }
    let t = alpha / u.powi(2 * n as i32 + 2);
    let nf = n as f64;
    Ok((-4.0 - 2.0 * nf * (nf - 1.0) * t, -1.0 + nf * t))
}

/// Outcome of a sampling run at one (α, n, u) setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsReport {
    pub lower: f64,
    pub upper: f64,
    /// Min/max K over the random sample (NaN when count = 0).
    pub min_observed: f64,
    pub max_observed: f64,
    /// K on the designated extremal planes from the pinching argument.
    pub extremal_lower: f64,
    pub extremal_upper: f64,
    pub samples: usize,
    pub pass: bool,
}

/// Draw `count` seeded random orthonormal planes (Gram–Schmidt on
/// Gaussians) and check every K against the bounds; the two extremal
/// planes are always evaluated. α = 0 is admitted with the limiting
/// complex-hyperbolic bounds (−4, −1).
pub fn verify_bounds_by_sampling(
    alpha: f64,
    n: u32,
    u: f64,
    count: usize,
    seed: u64,
) -> Result<BoundsReport> {
    let (lower, upper) = if alpha == 0.0 {
        (-4.0, -1.0)
    } else {
        curvature_bounds(alpha, n, u)?
    };
    let tensor = crate::closed::riemann_alpha(u, alpha, n)?;
    let dim = tensor.dim();

    // Extremal planes: a₅ = ±1 with horizontal b attains the upper bound,
    // the (θ, u) fiber plane the lower one.
    let extremal_upper = sectional_curvature(&tensor, &TwoPlane::coordinate(dim, dim - 2, 0))?;
    let extremal_lower =
        sectional_curvature(&tensor, &TwoPlane::coordinate(dim, dim - 2, dim - 1))?;

    let (min_observed, max_observed) = sample_curvature_extrema(&tensor, count, seed);

    let slack = 1e-9;
    let sample_ok = count == 0 || (min_observed >= lower - slack && max_observed <= upper + slack);
    let extremal_ok = extremal_lower >= lower - slack
        && extremal_lower <= upper + slack
        && extremal_upper >= lower - slack
        && extremal_upper <= upper + slack;
    Ok(BoundsReport {
        lower,
        upper,
        min_observed: if count == 0 { f64::NAN } else { min_observed },
        max_observed: if count == 0 { f64::NAN } else { max_observed },
        extremal_lower,
        extremal_upper,
        samples: count,
        pass: sample_ok && extremal_ok,
    })
}

/// Min/max K over `count` seeded random orthonormal planes. Work is
/// split into fixed 4096-sample blocks; block i draws from the ChaCha
/// stream (seed, i), so the extrema depend only on (tensor, count, seed),
/// never on thread scheduling.
pub fn sample_curvature_extrema(tensor: &CurvatureTensor, count: usize, seed: u64) -> (f64, f64) {
    let dim = tensor.dim();
    let pairs = index_pairs(dim);
    let m = pairs.len();
    // Dense pair-indexed view of the tensor so each sample is one
    // triangular bilinear form instead of a rank-4 contraction.
    let mut pair_matrix = vec![0.0; m * m];
    for (pi, &(i, j)) in pairs.iter().enumerate() {
        for (qi, &(p, q)) in pairs.iter().enumerate() {
            pair_matrix[pi * m + qi] = tensor.get(i, j, p, q);
        }
    }
    let blocks = count.div_ceil(BLOCK);
    let stats = exec::run(blocks, |bi| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(bi as u64 + 1);
        let in_block = BLOCK.min(count - bi * BLOCK);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut a = vec![0.0; dim];
        let mut b = vec![0.0; dim];
        for _ in 0..in_block {
            sample_plane(&mut rng, &mut a, &mut b);
            let omega = bivector(&a, &b);
            let mut k = 0.0;
            for pi in 0..m {
                let w = omega[pi];
                if w == 0.0 {
                    continue;
                }
                let row = &pair_matrix[pi * m..(pi + 1) * m];
                k += w * omega.iter().zip(row).map(|(o, r)| o * r).sum::<f64>();
            }
            lo = lo.min(k);
            hi = hi.max(k);
        }
        (lo, hi)
    });
    let lo = stats.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let hi = stats.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

fn sample_plane(rng: &mut ChaCha8Rng, a: &mut [f64], b: &mut [f64]) {
    loop {
        for x in a.iter_mut() {
            *x = rng.sample(StandardNormal);
        }
        let na = dot(a, a).sqrt();
        if na < 1e-6 {
            continue;
        }
        a.iter_mut().for_each(|x| *x /= na);
        for x in b.iter_mut() {
            *x = rng.sample(StandardNormal);
        }
        let ab = dot(a, b);
        for (x, &y) in b.iter_mut().zip(a.iter()) {
            *x -= ab * y;
        }
        let nb = dot(b, b).sqrt();
        if nb < 1e-6 {
            continue;
        }
        b.iter_mut().for_each(|x| *x /= nb);
        return;
    }
}

/// One row of the degree-limit table: the pinching bounds at the cone
/// locus for the branched-cover parameter α_d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeRow {
    pub d: u32,
    pub alpha: f64,
    pub u_alpha: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Extreme curvatures against ramification degree: as d grows the lower
/// bound falls to −2(n+1) and the upper bound rises to 0.
pub fn extreme_curvatures_vs_degree(n: u32, degrees: &[u32]) -> Result<Vec<DegreeRow>> {
    degrees
        .iter()
        .map(|&d| {
            if d < 2 {
                return Err(Error::Parameter(format!("degree {d} below 2")));
            }
            let alpha = cone::alpha_for_degree(d, n)?;
            let data = cone::cone_data(alpha, n)?;
            let (lower, upper) = curvature_bounds(alpha, n, data.u_alpha)?;
            Ok(DegreeRow {
                d,
                alpha,
                u_alpha: data.u_alpha,
                lower,
                upper,
            })
        })
        .collect()
}
