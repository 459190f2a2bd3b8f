//! The cutoff-interpolated profile and its Einstein deficit
//! E(g) = Ric(g) + (2n+2)g.
//!
//! V_k(u) = u² − 1 + (α/u^{2n})·χ(ρ(u)/η) glues the Einstein member V_α
//! (near the locus) to the unwarped profile (far away) across the annulus
//! ρ ∈ [η/2, η], ρ = arccosh(u). The deficit is diagonal in the frame and
//! supported in the annulus; its sup norm decays like cosh(η/2)^{−(2n+2)}.
//!
//! Because the deficit is an O(cosh^{−(2n+2)}(η/2)) residue of O(1)
//! curvature terms, evaluating ρ + (2n+2) directly loses it to rounding
//! once η is large. The Ricci map is affine in (V, V′, V″) and the
//! unwarped profile is an exact zero of the deficit, so the deficit of
//! V = (u² − 1) + ε equals the linear part applied to ε alone:
//!   D_H = −2n·ε/u² − ε′/u,   D_F = −(2n+1)·ε′/(2u) − ε″/2.
//! Profiles that can produce ε without cancellation feed this path.

use crate::error::{Error, Result};
use crate::exec;
use crate::jet::Jet2;
use crate::plane;
use crate::profile::{ProfileEval, WarpProfile};
use crate::quad;

/// Smooth two-sided bump quotient: ψ(2−2t)/(ψ(2−2t) + ψ(2t−1)) with
/// ψ(s) = exp(−1/s) for s > 0 and 0 otherwise. Identically 1 for
/// t ≤ 1/2, identically 0 for t ≥ 1.
pub fn chi(t: f64) -> f64 {
    chi_jet(Jet2::constant(t)).value
}

/// The cutoff as a jet transformer, plateau branches taken exactly.
pub fn chi_jet(t: Jet2) -> Jet2 {
    if t.value <= 0.5 {
        return Jet2::constant(1.0);
    }
    if t.value >= 1.0 {
        return Jet2::ZERO;
    }
    let p1 = psi_jet(2.0 * (Jet2::constant(1.0) - t));
    let p2 = psi_jet(2.0 * t - 1.0);
    p1 / (p1 + p2)
}

fn psi_jet(s: Jet2) -> Jet2 {
    // Below ~1e−120 the 1/s² chain factors overflow while exp(−1/s) is an
    // exact zero; short-circuit to keep the slots finite.
    if s.value <= 1e-120 {
        return Jet2::ZERO;
    }
    (Jet2::constant(-1.0) / s).exp()
}

/// The interpolated warp V_k. The cutoff argument is the geodesic
/// distance ρ(u) = arccosh(u) scaled by η, which places the transition in
/// the annulus ρ ∈ [η/2, η]; the literal u/η convention of the display
/// formula is available behind `with_u_convention` for comparison.
#[derive(Debug, Clone, Copy)]
pub struct InterpolatedWarp {
    n: u32,
    alpha: f64,
    eta: f64,
    u_alpha: f64,
    u_convention: bool,
}

impl InterpolatedWarp {
    pub fn new(n: u32, alpha: f64, eta: f64) -> Result<Self> {
        if eta < 2.0 {
            return Err(Error::Parameter(format!(
                "interpolation needs eta >= 2, got {eta}"
            )));
        }
        let cone = crate::cone::cone_data(alpha, n)?;
        Ok(InterpolatedWarp {
            n,
            alpha,
            eta,
            u_alpha: cone.u_alpha,
            u_convention: false,
        })
    }

    /// Cut in u/η instead of ρ(u)/η.
    pub fn with_u_convention(mut self) -> Self {
        self.u_convention = true;
        self
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    fn cutoff_argument(&self, u: Jet2) -> Jet2 {
        if self.u_convention {
            return u / self.eta;
        }
        if u.value <= 1.0 {
            // ρ plateaus at 0 below the locus radius; χ is flat there.
            return Jet2::ZERO;
        }
        u.arccosh().expect("u > 1 checked") / self.eta
    }
}

impl WarpProfile for InterpolatedWarp {
    fn eval(&self, u: f64) -> ProfileEval {
        let j = self.eval_jet(u);
        ProfileEval {
            v: j.value,
            dv: j.d_u,
            d2v: j.d_u_u,
        }
    }

    fn eval_jet(&self, u: f64) -> Jet2 {
        let x = Jet2::var_u(u);
        x * x - 1.0 + self.perturbation(x)
    }

    fn domain_lower(&self) -> f64 {
        self.u_alpha
    }

    fn label(&self) -> String {
        format!(
            "interpolated(n={}, alpha={}, eta={})",
            self.n, self.alpha, self.eta
        )
    }

    fn perturbation_jet(&self, u: f64) -> Option<Jet2> {
        Some(self.perturbation(Jet2::var_u(u)))
    }
}

impl InterpolatedWarp {
    fn perturbation(&self, x: Jet2) -> Jet2 {
        self.alpha * x.powi(-2 * self.n as i32) * chi_jet(self.cutoff_argument(x))
    }
}

/// Diagonal entries (D_H with multiplicity 2n−2, D_F with multiplicity 2)
/// of Ric + (2n+2)·g. Uses the cancellation-free perturbation path when
/// the profile provides it, the generic Ricci route otherwise.
pub fn deficit_diagonal(profile: &dyn WarpProfile, n: u32, u: f64) -> (f64, f64) {
    if let Some(eps) = profile.perturbation_jet(u) {
        return deficit_from_perturbation(&eps, n, u);
    }
    let (rho_h, rho_f) = crate::closed::ricci_diagonal(u, profile, n);
    let c = 2.0 * n as f64 + 2.0;
    (rho_h + c, rho_f + c)
}

fn deficit_from_perturbation(eps: &Jet2, n: u32, u: f64) -> (f64, f64) {
    let nf = n as f64;
    let d_h = -2.0 * nf * eps.value / (u * u) - eps.d_u / u;
    let d_f = -(2.0 * nf + 1.0) * eps.d_u / (2.0 * u) - eps.d_u_u / 2.0;
    (d_h, d_f)
}

/// Sup norms, decay constant, and an L² surrogate for one (α, n, η).
#[derive(Debug, Clone, PartialEq)]
pub struct DeficitReport {
    pub n: u32,
    pub alpha: f64,
    pub eta: f64,
    pub order: usize,
    pub grid: usize,
    /// sup over the annulus of |D| and its Y₆-derivatives, by order 0..=m.
    pub sup_by_order: Vec<f64>,
    /// Order-0 sup (the raw deficit).
    pub sup: f64,
    /// C^m sup: max of `sup_by_order`.
    pub sup_cm: f64,
    /// Fitted decay constant sup_cm · cosh(η/2)^{2n+2}.
    pub a_fit: f64,
    /// 2π ∫ ((2n−2)·D_H² + 2·D_F²) u^{2n−1} du over the annulus, the
    /// deficit's L² mass per unit branching-locus volume.
    pub l2_per_unit_volume: f64,
    /// Max |D| sampled inside ρ ≤ η/2 and outside ρ ≥ η; support check.
    pub support_residual: f64,
}

/// Scan the annulus ρ ∈ [η/2, η] on `grid` points; Y₆-derivatives up to
/// `order` (≤ 2) come from central differences of the closed-form deficit
/// with step 1e−4.
pub fn deficit_report(
    alpha: f64,
    n: u32,
    eta: f64,
    order: usize,
    grid: usize,
) -> Result<DeficitReport> {
    if order > 2 {
        return Err(Error::Parameter(format!(
            "derivative order capped at 2, got {order}"
        )));
    }
    if grid < 2 {
        return Err(Error::Parameter("grid needs at least 2 points".into()));
    }
    let profile = InterpolatedWarp::new(n, alpha, eta)?;

    let mut sup_by_order = vec![0.0f64; order + 1];
    let sups = exec::run(grid, |i| {
        let rho = eta / 2.0 + (eta / 2.0) * i as f64 / (grid - 1) as f64;
        let u = rho.cosh();
        let mut local = vec![0.0f64; order + 1];
        for component in [Component::Horizontal, Component::Fiber] {
            for (m, slot) in local.iter_mut().enumerate() {
                let v = y6_derivative(&profile, n, u, component, m).abs();
                *slot = slot.max(v);
            }
        }
        local
    });
    for local in sups {
        for (acc, v) in sup_by_order.iter_mut().zip(local) {
            *acc = acc.max(v);
        }
    }

    let exponent = 2 * n as i32 + 2;
    let sup = sup_by_order[0];
    let sup_cm = sup_by_order.iter().cloned().fold(0.0, f64::max);

    // L² surrogate, integrated in ρ with du = sinh ρ dρ.
    let nf = n as f64;
    let weight = |rho: f64| {
        let u = rho.cosh();
        let (d_h, d_f) = deficit_diagonal(&profile, n, u);
        ((2.0 * nf - 2.0) * d_h * d_h + 2.0 * d_f * d_f) * u.powi(2 * n as i32 - 1) * rho.sinh()
    };
    let l2 =
        2.0 * std::f64::consts::PI * quad::gauss_legendre_composite(eta / 2.0, eta, 32, weight);

    // Support: the deficit must vanish on both plateaus.
    let mut support_residual: f64 = 0.0;
    for rho in [
        0.1,
        0.25 * eta,
        0.49 * eta,
        1.01 * eta,
        1.2 * eta,
        1.5 * eta,
    ] {
        let (d_h, d_f) = deficit_diagonal(&profile, n, rho.cosh());
        support_residual = support_residual.max(d_h.abs()).max(d_f.abs());
    }
    // Below the locus radius the profile coincides with V_α.
    let (d_h, d_f) = deficit_diagonal(&profile, n, 0.5 * (profile.domain_lower() + 1.0));
    support_residual = support_residual.max(d_h.abs()).max(d_f.abs());

    Ok(DeficitReport {
        n,
        alpha,
        eta,
        order,
        grid,
        sup,
        sup_cm,
        a_fit: sup_cm * (eta / 2.0).cosh().powi(exponent),
        sup_by_order,
        l2_per_unit_volume: l2,
        support_residual,
    })
}

#[derive(Clone, Copy)]
enum Component {
    Horizontal,
    Fiber,
}

fn deficit_component(profile: &InterpolatedWarp, n: u32, u: f64, c: Component) -> f64 {
    let (d_h, d_f) = deficit_diagonal(profile, n, u);
    match c {
        Component::Horizontal => d_h,
        Component::Fiber => d_f,
    }
}

/// m-fold application of Y₆ = W·∂/∂u by nested central differences.
fn y6_derivative(profile: &InterpolatedWarp, n: u32, u: f64, c: Component, m: usize) -> f64 {
    const H: f64 = 1e-4;
    match m {
        0 => deficit_component(profile, n, u, c),
        _ => {
            let w = profile.eval(u).v.max(0.0).sqrt();
            let hi = y6_derivative(profile, n, u + H, c, m - 1);
            let lo = y6_derivative(profile, n, u - H, c, m - 1);
            w * (hi - lo) / (2.0 * H)
        }
    }
}

/// One radius of the interpolated-metric curvature scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub u: f64,
    pub rho: f64,
    pub min_k: f64,
    pub max_k: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub points: Vec<ScanPoint>,
    pub max_k: f64,
    pub min_k: f64,
    /// True when every sampled sectional curvature is negative.
    pub pass: bool,
}

/// Assemble the curvature tensor of the interpolated metric across radii
/// spanning the cone region, the annulus, and the unwarped exterior, and
/// sample random 2-planes at each radius.
pub fn interpolated_curvature_scan(
    alpha: f64,
    n: u32,
    eta: f64,
    u_points: usize,
    planes_per_point: usize,
    seed: u64,
) -> Result<ScanReport> {
    if u_points < 4 {
        return Err(Error::Parameter("scan needs at least 4 radii".into()));
    }
    let profile = InterpolatedWarp::new(n, alpha, eta)?;
    let dim = 2 * n as usize;

    // A few radii inside u < 1 (pure cone region), the rest uniform in ρ
    // up to 1.1η.
    let inner = (u_points / 8).max(2);
    let mut radii = Vec::with_capacity(u_points);
    for i in 0..inner {
        let t = (i + 1) as f64 / (inner + 1) as f64;
        radii.push(profile.domain_lower() + t * (1.0 - profile.domain_lower()));
    }
    for i in 0..(u_points - inner) {
        let rho = 0.05 + (1.1 * eta - 0.05) * i as f64 / (u_points - inner - 1) as f64;
        radii.push(rho.cosh());
    }

    let points = exec::run(radii.len(), |pi| {
        let u = radii[pi];
        let tensor = crate::closed::riemann_closed_form(u, &profile, n);
        let point_seed = seed ^ (pi as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let (mut lo, mut hi) =
            plane::sample_curvature_extrema(&tensor, planes_per_point, point_seed);
        // Coordinate planes pin the familiar extremes even at tiny counts.
        for i in 0..dim {
            for j in (i + 1)..dim {
                let k = tensor.get(i, j, i, j);
                lo = lo.min(k);
                hi = hi.max(k);
            }
        }
        ScanPoint {
            u,
            rho: if u >= 1.0 { u.acosh() } else { 0.0 },
            min_k: lo,
            max_k: hi,
        }
    });

    let max_k = points
        .iter()
        .map(|p| p.max_k)
        .fold(f64::NEG_INFINITY, f64::max);
    let min_k = points.iter().map(|p| p.min_k).fold(f64::INFINITY, f64::min);
    Ok(ScanReport {
        points,
        max_k,
        min_k,
        pass: max_k < 0.0,
    })
}
