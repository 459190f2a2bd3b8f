//! Warping profiles V(u) and the Einstein family.
//!
//! The metric family is u²·(base) + u²·V·dθ² + V⁻¹·du²; everything the
//! curvature tables need from a profile is (V, V′, V″) at a point, plus
//! the positivity domain. The Einstein members are V_α = u² − 1 + α/u^{2n}.

use crate::cone::{self, ConeData};
use crate::error::{Error, Result};
use crate::jet::Jet2;

/// V and its first two u-derivatives at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileEval {
    pub v: f64,
    pub dv: f64,
    pub d2v: f64,
}

/// A warping function V(u) with derivatives and a validity domain.
pub trait WarpProfile: Send + Sync {
    fn eval(&self, u: f64) -> ProfileEval;

    /// Infimum of the validity domain (V > 0 above it).
    fn domain_lower(&self) -> f64;

    fn label(&self) -> String;

    /// Jet of V as a function of u.
    fn eval_jet(&self, u: f64) -> Jet2 {
        let e = self.eval(u);
        Jet2::of_u(e.v, e.dv, e.d2v)
    }

    /// Jet of the perturbation ε(u) = V(u) − (u² − 1) when the profile can
    /// evaluate it without cancellation; used by the deficit machinery.
    fn perturbation_jet(&self, _u: f64) -> Option<Jet2> {
        None
    }
}

/// The Einstein solution V_α(u) = u² − 1 + α/u^{2n}.
#[derive(Debug, Clone, Copy)]
pub struct EinsteinWarp {
    n: u32,
    alpha: f64,
    cone: ConeData,
}

impl EinsteinWarp {
    /// Build the family member for (n, α). Rejects α > α_max(n), where V_α
    /// has no largest root.
    pub fn new(n: u32, alpha: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!(
                "complex dimension n must be >= 2, got {n}"
            )));
        }
        let cone = cone::cone_data(alpha, n)?;
        Ok(EinsteinWarp { n, alpha, cone })
    }

    /// The unique family member through (u0, V0): α = (V0 − u0² + 1)·u0^{2n}.
    pub fn from_condition(n: u32, u0: f64, v0: f64) -> Result<Self> {
        if u0 <= 0.0 {
            return Err(Error::Parameter(format!("u0 must be positive, got {u0}")));
        }
        let alpha = (v0 - u0 * u0 + 1.0) * u0.powi(2 * n as i32);
        Self::new(n, alpha)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn u_alpha(&self) -> f64 {
        self.cone.u_alpha
    }

    pub fn cone(&self) -> &ConeData {
        &self.cone
    }
}

impl WarpProfile for EinsteinWarp {
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
        x * x - 1.0 + self.alpha * x.powi(-2 * self.n as i32)
    }

    fn domain_lower(&self) -> f64 {
        self.cone.u_alpha
    }

    fn label(&self) -> String {
        format!("einstein(n={}, alpha={})", self.n, self.alpha)
    }

    fn perturbation_jet(&self, u: f64) -> Option<Jet2> {
        Some(self.alpha * Jet2::var_u(u).powi(-2 * self.n as i32))
    }
}

/// The unwarped profile V = u² − 1.
#[derive(Debug, Clone, Copy, Default)]
pub struct PlainHyperbolic;

impl WarpProfile for PlainHyperbolic {
    fn eval(&self, u: f64) -> ProfileEval {
        ProfileEval {
            v: u * u - 1.0,
            dv: 2.0 * u,
            d2v: 2.0,
        }
    }

    fn domain_lower(&self) -> f64 {
        1.0
    }

    fn label(&self) -> String {
        "hyperbolic".into()
    }

    fn perturbation_jet(&self, _u: f64) -> Option<Jet2> {
        Some(Jet2::ZERO)
    }
}

/// User-supplied profile for testing against the machinery.
pub struct FnProfile<F: Fn(f64) -> ProfileEval + Send + Sync> {
    pub f: F,
    pub lower: f64,
    pub name: &'static str,
}

impl<F: Fn(f64) -> ProfileEval + Send + Sync> WarpProfile for FnProfile<F> {
    fn eval(&self, u: f64) -> ProfileEval {
        (self.f)(u)
    }

    fn domain_lower(&self) -> f64 {
        self.lower
    }

    fn label(&self) -> String {
        self.name.into()
    }
}

/// Residual of the first-order Einstein equation
/// V′ + (2n/u)·V − (2n+2)·u + 2n/u; identically zero on the family.
pub fn ode_residual(profile: &dyn WarpProfile, n: u32, u: f64) -> f64 {
    let e = profile.eval(u);
    let nf = n as f64;
    e.dv + (2.0 * nf / u) * e.v - (2.0 * nf + 2.0) * u + 2.0 * nf / u
}

/// Residual of the second-order radial equation
/// f″/f + n·(f′)²/f² + n/f² − (n+1), with u = f(r) and V = (f′)².
pub fn radial_ode_residual(f: f64, f1: f64, f2: f64, n: u32) -> f64 {
    let nf = n as f64;
    f2 / f + nf * f1 * f1 / (f * f) + nf / (f * f) - (nf + 1.0)
}

/// One sample of the radial coordinate change u = f(r).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSample {
    pub r: f64,
    pub f: f64,
    pub f_prime: f64,
    pub f_second: f64,
}

/// Integrate f″ = V′(f)/2 with f(0) = u_α, f′(0) = 0 by classical RK4.
///
/// The second-order form sidesteps the square-root degeneracy of
/// f′ = √V(f) at r = 0; the start is regular because V′(u_α) > 0 away
/// from α_max. At α = α_max the solution is the constant f ≡ v, which is
/// flagged instead of integrated.
pub fn radial_profile(profile: &EinsteinWarp, r_max: f64, step: f64) -> Result<Vec<RadialSample>> {
    if step <= 0.0 || r_max <= 0.0 {
        return Err(Error::Parameter(
            "radial integration needs positive step and r_max".into(),
        ));
    }
    if profile.alpha() >= cone::alpha_max(profile.n()) {
        return Err(Error::Degenerate(format!(
            "alpha = alpha_max({}): V'(u_alpha) = 0 and f stays at v",
            profile.n()
        )));
    }
    let accel = |f: f64| profile.eval(f).dv / 2.0;
    let steps = (r_max / step).round() as usize;
    let mut out = Vec::with_capacity(steps + 1);
    let (mut f, mut p) = (profile.u_alpha(), 0.0);
    let mut r = 0.0;
    out.push(RadialSample {
        r,
        f,
        f_prime: p,
        f_second: accel(f),
    });
    for i in 1..=steps {
        let (k1f, k1p) = (p, accel(f));
        let (k2f, k2p) = (p + 0.5 * step * k1p, accel(f + 0.5 * step * k1f));
        let (k3f, k3p) = (p + 0.5 * step * k2p, accel(f + 0.5 * step * k2f));
        let (k4f, k4p) = (p + step * k3p, accel(f + step * k3f));
        f += step / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
        p += step / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        r = i as f64 * step;
        out.push(RadialSample {
            r,
            f,
            f_prime: p,
            f_second: accel(f),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::alpha_max;

    #[test]
    fn plain_values() {
        let p = EinsteinWarp::new(2, 0.0).unwrap();
        let e = p.eval(2.0);
        assert!((e.v - 3.0).abs() < 1e-15);
        assert!((e.dv - 4.0).abs() < 1e-15);
        assert!((e.d2v - 2.0).abs() < 1e-15);
        assert_eq!(p.u_alpha(), 1.0);
    }

    #[test]
    fn einstein_value_against_direct_arithmetic() {
        let p = EinsteinWarp::new(2, 0.1).unwrap();
        let want = 0.44 + 0.1 / 1.2f64.powi(4);
        assert!((p.eval(1.2).v - want).abs() < 1e-15);
        // Frozen from the arithmetic oracle above.
        assert!((p.eval(1.2).v - 0.488_225_308_641_975_3).abs() < 1e-12);
    }

    #[test]
    fn degree_two_root_vanishes() {
        let p = EinsteinWarp::new(3, 343.0 / 4096.0).unwrap();
        assert!((p.u_alpha() - 0.935_414_346_693_485_3).abs() < 1e-12);
        assert!(p.eval(p.u_alpha()).v.abs() < 1e-12);
    }

    #[test]
    fn consistency_v_prime_is_two_w_w_prime() {
        // V > 0 above the domain floor, and 2·W·W′ = V′ with W = √V.
        for alpha in [-0.3, 0.0, 0.05] {
            let p = EinsteinWarp::new(3, alpha).unwrap();
            for i in 0..50 {
                let u = p.u_alpha() + 0.1 + i as f64 * 0.08;
                let e = p.eval(u);
                assert!(e.v > 0.0, "V({u}) = {} not positive", e.v);
                let w = p.eval_jet(u).sqrt().unwrap();
                assert!((2.0 * w.value * w.d_u - e.dv).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ode_residual_on_and_off_family() {
        // The unwarped profile solves the equation for every n.
        for n in 2..=5u32 {
            let r = ode_residual(&PlainHyperbolic, n, 1.7);
            assert!(r.abs() < 1e-12, "plain residual {r}");
        }
        let p = EinsteinWarp::new(2, 0.1).unwrap();
        assert!(ode_residual(&p, 2, 1.3).abs() < 1e-12);

        // V = u² is not a solution: residual is 2n/u.
        let wrong = FnProfile {
            f: |u| ProfileEval {
                v: u * u,
                dv: 2.0 * u,
                d2v: 2.0,
            },
            lower: 0.0,
            name: "u^2",
        };
        assert!((ode_residual(&wrong, 2, 2.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn residual_sweep_across_family() {
        for n in 2..=5u32 {
            let amax = alpha_max(n);
            for alpha in [-0.5, -0.01, 0.0, 0.05 * amax, 0.9 * amax] {
                let p = EinsteinWarp::new(n, alpha).unwrap();
                let lo = (p.u_alpha() * 1.0001).max(p.u_alpha() + 1e-4);
                for i in 0..50 {
                    let t = i as f64 / 49.0;
                    let u = lo * (10.0 / lo).powf(t);
                    let r = ode_residual(&p, n, u);
                    assert!(
                        r.abs() <= 1e-12,
                        "residual {r} at n={n} alpha={alpha} u={u}"
                    );
                }
            }
        }
    }

    #[test]
    fn from_condition_roundtrip() {
        let p = EinsteinWarp::from_condition(2, 1.0, 0.0).unwrap();
        assert_eq!(p.alpha(), 0.0);

        // α = (3.1 − 3)·16 = 1.6 > 4/27.
        assert!(matches!(
            EinsteinWarp::from_condition(2, 2.0, 3.1),
            Err(Error::Parameter(_))
        ));

        let u0 = 0.935_414_346_693_485_3;
        let p = EinsteinWarp::from_condition(3, u0, 0.0).unwrap();
        assert!((p.alpha() - 343.0 / 4096.0).abs() < 1e-12);
        assert!(p.eval(u0).v.abs() < 1e-13);

        for (n, u0, v0) in [(2u32, 1.4, 0.99), (3, 2.0, 3.001), (4, 0.97, 0.01)] {
            let p = EinsteinWarp::from_condition(n, u0, v0).unwrap();
            assert!((p.eval(u0).v - v0).abs() < 1e-13);
        }
    }

    #[test]
    fn radial_matches_cosh_when_unwarped() {
        let p = EinsteinWarp::new(3, 0.0).unwrap();
        let samples = radial_profile(&p, 5.0, 1e-3).unwrap();
        for s in samples.iter().step_by(250) {
            assert!(
                (s.f - s.r.cosh()).abs() < 1e-8,
                "f({}) = {} vs cosh = {}",
                s.r,
                s.f,
                s.r.cosh()
            );
        }
        let at_one = &samples[1000];
        assert!((at_one.f - 1.543_080_634_815_243_7).abs() < 1e-8);
    }

    #[test]
    fn radial_first_integral_is_conserved() {
        let p = EinsteinWarp::new(3, 343.0 / 4096.0).unwrap();
        let samples = radial_profile(&p, 5.0, 1e-3).unwrap();
        assert_eq!(samples[0].f, p.u_alpha());
        assert_eq!(samples[0].f_prime, 0.0);
        for s in &samples {
            let energy = s.f_prime * s.f_prime - p.eval(s.f).v;
            assert!(energy.abs() < 1e-8, "energy drift {energy} at r={}", s.r);
        }
    }

    #[test]
    fn radial_rejects_degenerate_alpha() {
        let p = EinsteinWarp::new(3, alpha_max(3)).unwrap();
        assert!(matches!(
            radial_profile(&p, 1.0, 1e-3),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn radial_ode_residual_values() {
        // Hyperbolic identity: (f, f′, f″) = (cosh, sinh, cosh) solves it
        // for every n.
        let r = radial_ode_residual(1f64.cosh(), 1f64.sinh(), 1f64.cosh(), 5);
        assert!(r.abs() < 1e-14);
        assert!((radial_ode_residual(1.0, 0.0, 0.0, 2) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn radial_ode_residual_along_trajectory() {
        let p = EinsteinWarp::new(3, 343.0 / 4096.0).unwrap();
        let samples = radial_profile(&p, 5.0, 1e-3).unwrap();
        let max = samples
            .iter()
            .map(|s| radial_ode_residual(s.f, s.f_prime, s.f_second, 3).abs())
            .fold(0.0, f64::max);
        assert!(max <= 1e-6, "max radial residual {max}");
    }
}
