//! Cone-angle machinery for the Einstein family V_α(u) = u² − 1 + α/u^{2n}.
//!
//! The degeneration locus sits at the largest root u_α of V_α. Writing
//! f(u) = (1 − u²)u^{2n}, roots of V_α are solutions of f(u) = α; f has a
//! single interior maximum at v = √(n/(n+1)) with f(v) = α_max, so a
//! largest root exists exactly for α ≤ α_max. The transverse disk metric
//! closes up with total angle 2π·c_α, c_α = (u_α/2)·V_α′(u_α).

use crate::error::{Error, Result};
use crate::quad;

/// Critical radius v = √(n/(n+1)).
pub fn critical_u(n: u32) -> f64 {
    (n as f64 / (n as f64 + 1.0)).sqrt()
}

/// Largest admissible α: α_max = v^{2n}/(n+1).
pub fn alpha_max(n: u32) -> f64 {
    let v2 = n as f64 / (n as f64 + 1.0);
    v2.powi(n as i32) / (n as f64 + 1.0)
}

/// V_α and its first two u-derivatives, valid for any u > 0.
pub fn v_alpha(u: f64, alpha: f64, n: u32) -> (f64, f64, f64) {
    let m = 2 * n as i32;
    let p = u.powi(-m);
    (
        u * u - 1.0 + alpha * p,
        2.0 * u - f64::from(m) * alpha * p / u,
        2.0 + f64::from(m) * f64::from(m + 1) * alpha * p / (u * u),
    )
}

/// Root locus constants for one (α, n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeData {
    pub n: u32,
    pub alpha: f64,
    pub v: f64,
    pub alpha_max: f64,
    /// Largest root of V_α.
    pub u_alpha: f64,
    /// c_α = u_α² − nα/u_α^{2n} = (u_α/2)·V_α′(u_α).
    pub c_alpha: f64,
    /// Total transverse angle 2π·c_α.
    pub cone_angle: f64,
}

fn f_locus(u: f64, n: u32) -> f64 {
    (1.0 - u * u) * u.powi(2 * n as i32)
}

/// Bisection for the largest root of V_α. Bracket [v, 1] for α ∈ (0, α_max],
/// expanding bracket above 1 for α < 0, exact 1 for α = 0.
fn largest_root(alpha: f64, n: u32) -> Result<f64> {
    let amax = alpha_max(n);
    if alpha > amax {
        return Err(Error::Parameter(format!(
            "alpha = {alpha} exceeds alpha_max({n}) = {amax}: no largest root"
        )));
    }
    if alpha == 0.0 {
        return Ok(1.0);
    }
    if alpha == amax {
        return Ok(critical_u(n));
    }
    // f(u) = (1−u²)u^{2n} is strictly decreasing for u > v, so on the
    // bracket f(lo) > α > f(hi).
    let (mut lo, mut hi) = if alpha > 0.0 {
        (critical_u(n), 1.0)
    } else {
        let mut hi = 2.0;
        while f_locus(hi, n) > alpha {
            hi *= 2.0;
            if hi > 1e12 {
                return Err(Error::Numerics(format!(
                    "bracket expansion failed for alpha = {alpha}"
                )));
            }
        }
        (1.0, hi)
    };
    for _ in 0..200 {
        if hi - lo <= 0.5e-13 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f_locus(mid, n) > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Compute the cone constants for (α, n). Fails for α > α_max.
pub fn cone_data(alpha: f64, n: u32) -> Result<ConeData> {
    let u = largest_root(alpha, n)?;
    let c = u * u - n as f64 * alpha / u.powi(2 * n as i32);
    Ok(ConeData {
        n,
        alpha,
        v: critical_u(n),
        alpha_max: alpha_max(n),
        u_alpha: u,
        c_alpha: c,
        cone_angle: 2.0 * std::f64::consts::PI * c,
    })
}

/// The α producing cone fraction c = c_α ∈ (0, 1]: closed form
/// u² = (n + c)/(n + 1), α = (1 − u²)·u^{2n}.
pub fn alpha_for_cone_fraction(c: f64, n: u32) -> Result<f64> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::Parameter(format!(
            "cone fraction {c} outside (0, 1]"
        )));
    }
    let u2 = (n as f64 + c) / (n as f64 + 1.0);
    Ok((1.0 - u2) * u2.powi(n as i32))
}

/// The α whose metric has cone angle 2π/d, as needed for a degree-d
/// branched cover.
pub fn alpha_for_degree(d: u32, n: u32) -> Result<f64> {
    if d < 1 {
        return Err(Error::Parameter("degree must be >= 1".into()));
    }
    alpha_for_cone_fraction(1.0 / d as f64, n)
}

/// Estimate the cone fraction from the metric itself: the ratio of the
/// circumference 2π·u·√V(u) to 2π times the geodesic distance
/// s(u) = ∫_{u_α}^u dt/√V(t), evaluated at u = u_α + offset. The
/// substitution t = u_α + τ² removes the inverse-square-root endpoint
/// singularity before the fixed-order rule is applied.
pub fn cone_angle_numeric(alpha: f64, n: u32, offset: f64) -> Result<f64> {
    let amax = alpha_max(n);
    if !(alpha > 0.0 && alpha < amax) {
        return Err(Error::Parameter(format!(
            "cone estimate needs alpha in (0, alpha_max); got {alpha}"
        )));
    }
    if offset <= 0.0 {
        return Err(Error::Parameter("offset must be positive".into()));
    }
    let data = cone_data(alpha, n)?;
    let ua = data.u_alpha;
    let u = ua + offset;
    let t_max = offset.sqrt();
    let s = quad::gauss_legendre(0.0, t_max, |tau| {
        let t = ua + tau * tau;
        let (v, _, _) = v_alpha(t, alpha, n);
        2.0 * tau / v.sqrt()
    });
    let (v_at_u, _, _) = v_alpha(u, alpha, n);
    let estimate = u * v_at_u.sqrt() / s;
    if !estimate.is_finite() {
        return Err(Error::Numerics(format!(
            "cone-angle quadrature produced {estimate} at alpha = {alpha}"
        )));
    }
    Ok(estimate)
}

/// Frame-slot deviation of λ_α from the unwarped metric at radius u,
/// together with the bound 2α/u^{2n}. The deviation is measured in the
/// orthonormal frame of the unwarped metric, restricted to u ≥ 1.5 where
/// both metrics are nondegenerate.
pub fn metric_deviation(alpha: f64, n: u32, u: f64) -> Result<(f64, f64)> {
    if u < 1.5 {
        return Err(Error::Domain {
            func: "metric_deviation",
            value: u,
        });
    }
    let eps = alpha.abs() / u.powi(2 * n as i32);
    let base = u * u - 1.0;
    let (v, _, _) = v_alpha(u, alpha, n);
    let measured = (eps / base).max((base / v - 1.0).abs());
    Ok((measured, 2.0 * eps))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TAU: f64 = 2.0 * std::f64::consts::PI;

    #[test]
    fn smooth_case_alpha_zero() {
        let d = cone_data(0.0, 3).unwrap();
        assert_eq!(d.u_alpha, 1.0);
        assert_eq!(d.c_alpha, 1.0);
        assert!((d.cone_angle - TAU).abs() < 1e-15);
    }

    #[test]
    fn alpha_max_degenerates_to_critical_radius() {
        let d = cone_data(alpha_max(2), 2).unwrap();
        assert!((d.u_alpha - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((d.u_alpha - 0.816_496_580_927_726).abs() < 1e-12);
        assert!(d.c_alpha.abs() < 1e-12);
    }

    #[test]
    fn degree_two_cover_in_dimension_three() {
        // u² = 7/8 and α = (1/8)(7/8)³ = 343/4096.
        let alpha = alpha_for_degree(2, 3).unwrap();
        assert!((alpha - 343.0 / 4096.0).abs() < 1e-15);
        let d = cone_data(alpha, 3).unwrap();
        assert!((d.u_alpha - (7.0f64 / 8.0).sqrt()).abs() < 1e-12);
        assert!((d.u_alpha - 0.935_414_346_693_485_3).abs() < 1e-12);
        assert!((d.c_alpha - 0.5).abs() < 1e-12);
    }

    #[test]
    fn alpha_for_cone_fraction_examples() {
        // n=2, d=3: u² = 7/9, α = (2/9)(7/9)² = 98/729.
        let alpha = alpha_for_degree(3, 2).unwrap();
        assert!((alpha - 98.0 / 729.0).abs() < 1e-15);
        // c = 1 is the smooth metric.
        assert_eq!(alpha_for_cone_fraction(1.0, 5).unwrap(), 0.0);
    }

    #[test]
    fn rejects_alpha_above_max() {
        assert!(matches!(
            cone_data(alpha_max(3) + 1e-6, 3),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn root_is_a_root() {
        for n in 2..=5u32 {
            for alpha in [-0.5, -0.01, 0.3 * alpha_max(n), 0.95 * alpha_max(n)] {
                let d = cone_data(alpha, n).unwrap();
                let (v, _, _) = v_alpha(d.u_alpha, alpha, n);
                assert!(v.abs() < 1e-12, "V(u_alpha) = {v} for n={n}, alpha={alpha}");
                // Identity from the root equation: c = (1+n)u² − n.
                let id = (1.0 + n as f64) * d.u_alpha * d.u_alpha - n as f64;
                assert!((d.c_alpha - id).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn critical_point_identity() {
        // f(v) = α_max and f'(v) = 0.
        for n in 2..=5u32 {
            let v = critical_u(n);
            assert!((f_locus(v, n) - alpha_max(n)).abs() < 1e-12);
            let h = 1e-6;
            let fp = (f_locus(v + h, n) - f_locus(v - h, n)) / (2.0 * h);
            assert!(fp.abs() < 1e-9, "f'(v) = {fp}");
        }
    }

    #[test]
    fn u_alpha_and_c_alpha_decrease_in_alpha() {
        for n in [2u32, 3] {
            let amax = alpha_max(n);
            let mut prev: Option<(f64, f64)> = None;
            for i in 0..100 {
                let alpha = -1.0 + (i as f64 / 99.0) * (amax + 1.0 - 1e-9);
                let d = cone_data(alpha.min(amax), n).unwrap();
                if let Some((pu, pc)) = prev {
                    assert!(d.u_alpha < pu, "u_alpha not decreasing at alpha={alpha}");
                    assert!(d.c_alpha < pc, "c_alpha not decreasing at alpha={alpha}");
                }
                prev = Some((d.u_alpha, d.c_alpha));
            }
        }
    }

    #[test]
    fn fraction_roundtrip() {
        for n in 2..=5u32 {
            for d in 2..=12u32 {
                let alpha = alpha_for_degree(d, n).unwrap();
                let cone = cone_data(alpha, n).unwrap();
                assert!(
                    (cone.c_alpha - 1.0 / d as f64).abs() < 1e-12,
                    "roundtrip failed for n={n}, d={d}"
                );
            }
        }
    }

    #[test]
    fn numeric_estimator_matches_closed_form() {
        let est = cone_angle_numeric(343.0 / 4096.0, 3, 1e-6).unwrap();
        assert!((est - 0.5).abs() < 1e-4, "estimate {est}");
        // n=2, c=1/2: u² = 5/6, α = (1/6)(5/6)² = 25/216.
        let est = cone_angle_numeric(25.0 / 216.0, 2, 1e-6).unwrap();
        assert!((est - 0.5).abs() < 1e-4, "estimate {est}");
    }

    #[test]
    fn numeric_estimator_smooth_limit() {
        let est = cone_angle_numeric(1e-8, 3, 1e-6).unwrap();
        assert!((est - 1.0).abs() < 1e-3, "estimate {est}");
    }

    #[test]
    fn deviation_example() {
        let (measured, bound) = metric_deviation(0.1, 2, 2.0).unwrap();
        // (0.1/16)/3 against |3/(3 + 0.1/16) − 1|.
        assert!((measured - 0.1 / 16.0 / 3.0).abs() < 1e-12);
        assert!((bound - 0.0125).abs() < 1e-15);
        assert!(measured <= bound);

        let (m0, b0) = metric_deviation(0.0, 4, 3.0).unwrap();
        assert_eq!((m0, b0), (0.0, 0.0));

        assert!(matches!(
            metric_deviation(0.1, 2, 1.2),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn deviation_decays_at_rate_two_n() {
        for (n, alpha) in [(2u32, 0.1), (3, 0.08)] {
            let rs: Vec<f64> = (0..40).map(|i| 1.8 + 1.2 * i as f64 / 39.0 * 1.5).collect();
            let mut pts = Vec::new();
            for &r in &rs {
                let u = r.cosh();
                if !(3.0..=20.0).contains(&u) {
                    continue;
                }
                let (m, _) = metric_deviation(alpha, n, u).unwrap();
                pts.push((r, m.ln()));
            }
            let slope = least_squares_slope(&pts);
            assert!(
                slope <= -(2.0 * n as f64) * 0.95,
                "slope {slope} not steep enough for n={n}"
            );
        }
    }

    fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    }
}
