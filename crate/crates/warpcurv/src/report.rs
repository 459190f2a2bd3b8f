//! Machine-readable verification reports: each CLI command maps to one
//! builder here. Artifacts are deterministic for a fixed (config, seed):
//! grids are uniform, all randomness flows through seeded substreams, and
//! serialization is field-ordered with full-precision floats, so repeated
//! runs produce byte-identical files.

use crate::cone;
use crate::deficit;
use crate::engine;
use crate::error::{Error, Result};
use crate::exec;
use crate::frame::FramePoint;
use crate::plane;
use crate::profile::{self, EinsteinWarp, WarpProfile};
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 42;

/// Top-level artifact layout shared by every command.
#[derive(Debug, Clone, Serialize)]
pub struct Artifact<C: Serialize, R: Serialize> {
    pub config: C,
    pub results: Vec<R>,
    pub pass: bool,
    /// Worst raw discrepancy observed across all checks in the run.
    pub max_error: f64,
}

/// CSV rendering for one result row type.
pub trait CsvRow {
    fn csv_header() -> String;
    fn csv_row(&self) -> String;
}

/// Full-precision float formatting (17 significant digits).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl<C: Serialize, R: Serialize + CsvRow> Artifact<C, R> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable artifact");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&R::csv_header());
        out.push('\n');
        for r in &self.results {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out.push_str(&format!(
            "# pass={} max_error={}\n",
            self.pass,
            fmt_f64(self.max_error)
        ));
        out
    }
}

/// Resolve the (α, d) pair: exactly one may be given; `d` routes through
/// the cone-angle closed form.
pub fn resolve_alpha(alpha: Option<f64>, d: Option<u32>, n: u32) -> Result<f64> {
    match (alpha, d) {
        (Some(_), Some(_)) => Err(Error::Parameter(
            "provide exactly one of alpha and d".into(),
        )),
        (Some(a), None) => Ok(a),
        (None, Some(d)) => cone::alpha_for_degree(d, n),
        (None, None) => Err(Error::Parameter("one of alpha or d is required".into())),
    }
}

// ---------------------------------------------------------------------------
// verify-curvature
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct VerifyCurvatureConfig {
    pub n: u32,
    pub alpha: f64,
    pub grid: usize,
    pub seed: u64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub conn_tol: f64,
}

/// Worst engine/closed-form discrepancy for one canonical component over
/// the sample grid. Indices are 1-based frame labels.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentRow {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    /// Closed-form value at the last grid point (diagnostic).
    pub reference: f64,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
}

impl CsvRow for ComponentRow {
    fn csv_header() -> String {
        "i,j,k,l,reference,max_abs_err,max_rel_err".into()
    }
    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.i,
            self.j,
            self.k,
            self.l,
            fmt_f64(self.reference),
            fmt_f64(self.max_abs_err),
            fmt_f64(self.max_rel_err)
        )
    }
}

/// Engine vs closed forms across a σ×u grid (n = 3 only: the engine's
/// frame is six-dimensional).
pub fn verify_curvature(
    cfg: &VerifyCurvatureConfig,
) -> Result<Artifact<VerifyCurvatureConfig, ComponentRow>> {
    if cfg.n != 3 {
        return Err(Error::Parameter(format!(
            "the numerical engine is fixed at n = 3 (got n = {})",
            cfg.n
        )));
    }
    if cfg.grid < 2 {
        return Err(Error::Parameter("grid must be at least 2".into()));
    }
    let profile = EinsteinWarp::new(cfg.n, cfg.alpha)?;
    let dim = 6;
    let (sig_lo, sig_hi) = (0.3, 2.5);
    let u_lo = profile.u_alpha() + 0.05;
    let u_hi = 5.0;

    let per_point = exec::run(cfg.grid * cfg.grid, |idx| {
        let (si, ui) = (idx / cfg.grid, idx % cfg.grid);
        let sigma = sig_lo + (sig_hi - sig_lo) * si as f64 / (cfg.grid - 1) as f64;
        let u = u_lo + (u_hi - u_lo) * ui as f64 / (cfg.grid - 1) as f64;
        let point = FramePoint::new(sigma, u);
        let numeric = engine::riemann_numeric(point, &profile)?;
        let closed = crate::closed::riemann_closed_form(u, &profile, cfg.n);
        let conn_num = engine::koszul_connection(point, &profile)?;
        let conn_closed = crate::closed::connection_closed_form(point, &profile)?;
        Ok((numeric, closed, conn_closed.max_difference(&conn_num)))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    let mut pass = true;
    let mut max_error: f64 = 0.0;
    for i in 0..dim {
        for j in (i + 1)..dim {
            for k in 0..dim {
                for l in (k + 1)..dim {
                    if (k, l) < (i, j) {
                        continue;
                    }
                    let mut row = ComponentRow {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        l: l + 1,
                        reference: 0.0,
                        max_abs_err: 0.0,
                        max_rel_err: 0.0,
                    };
                    for (numeric, closed, _) in &per_point {
                        let want = closed.get(i, j, k, l);
                        let got = numeric.get(i, j, k, l);
                        let abs = (got - want).abs();
                        row.reference = want;
                        if want == 0.0 {
                            row.max_abs_err = row.max_abs_err.max(abs);
                            pass &= abs <= cfg.abs_tol;
                        } else {
                            let rel = abs / want.abs();
                            row.max_abs_err = row.max_abs_err.max(abs);
                            row.max_rel_err = row.max_rel_err.max(rel);
                            pass &= rel <= cfg.rel_tol;
                        }
                    }
                    max_error = max_error.max(row.max_rel_err).max(if row.reference == 0.0 {
                        row.max_abs_err
                    } else {
                        0.0
                    });
                    rows.push(row);
                }
            }
        }
    }
    let conn_worst = per_point.iter().map(|(_, _, c)| *c).fold(0.0f64, f64::max);
    pass &= conn_worst <= cfg.conn_tol;
    max_error = max_error.max(conn_worst);

    Ok(Artifact {
        config: cfg.clone(),
        results: rows,
        pass,
        max_error,
    })
}

// ---------------------------------------------------------------------------
// cone-table
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ConeTableConfig {
    pub n: u32,
    pub d_min: u32,
    pub d_max: u32,
    pub offset: f64,
    pub estimate_tol: f64,
    pub roundtrip_tol: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConeRow {
    pub d: u32,
    pub alpha: f64,
    pub u_alpha: f64,
    pub c_alpha: f64,
    pub cone_angle: f64,
    pub numeric_estimate: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
}

impl CsvRow for ConeRow {
    fn csv_header() -> String {
        "d,alpha,u_alpha,c_alpha,cone_angle,numeric_estimate,lower_bound,upper_bound".into()
    }
    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.d,
            fmt_f64(self.alpha),
            fmt_f64(self.u_alpha),
            fmt_f64(self.c_alpha),
            fmt_f64(self.cone_angle),
            fmt_f64(self.numeric_estimate),
            fmt_f64(self.lower_bound),
            fmt_f64(self.upper_bound)
        )
    }
}

pub fn cone_table(cfg: &ConeTableConfig) -> Result<Artifact<ConeTableConfig, ConeRow>> {
    if cfg.d_min < 2 || cfg.d_max < cfg.d_min {
        return Err(Error::Parameter("need 2 <= d_min <= d_max".into()));
    }
    let mut rows = Vec::new();
    let mut pass = true;
    let mut max_error: f64 = 0.0;
    for d in cfg.d_min..=cfg.d_max {
        let alpha = cone::alpha_for_degree(d, cfg.n)?;
        let data = cone::cone_data(alpha, cfg.n)?;
        let estimate = cone::cone_angle_numeric(alpha, cfg.n, cfg.offset)?;
        let (lower, upper) = plane::curvature_bounds(alpha, cfg.n, data.u_alpha)?;
        let roundtrip = (data.c_alpha - 1.0 / d as f64).abs();
        let est_err = (estimate - data.c_alpha).abs();
        pass &= roundtrip <= cfg.roundtrip_tol && est_err <= cfg.estimate_tol;
        max_error = max_error.max(roundtrip).max(est_err);
        rows.push(ConeRow {
            d,
            alpha,
            u_alpha: data.u_alpha,
            c_alpha: data.c_alpha,
            cone_angle: data.cone_angle,
            numeric_estimate: estimate,
            lower_bound: lower,
            upper_bound: upper,
        });
    }
    Ok(Artifact {
        config: cfg.clone(),
        results: rows,
        pass,
        max_error,
    })
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct BoundsConfig {
    pub n: u32,
    pub alpha: f64,
    pub u: f64,
    pub samples: usize,
    pub seed: u64,
    pub slack: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsRow {
    pub lower: f64,
    pub upper: f64,
    pub min_observed: f64,
    pub max_observed: f64,
    pub extremal_lower: f64,
    pub extremal_upper: f64,
    pub samples: usize,
}

impl CsvRow for BoundsRow {
    fn csv_header() -> String {
        "lower,upper,min_observed,max_observed,extremal_lower,extremal_upper,samples".into()
    }
    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            fmt_f64(self.lower),
            fmt_f64(self.upper),
            fmt_f64(self.min_observed),
            fmt_f64(self.max_observed),
            fmt_f64(self.extremal_lower),
            fmt_f64(self.extremal_upper),
            self.samples
        )
    }
}

pub fn bounds(cfg: &BoundsConfig) -> Result<Artifact<BoundsConfig, BoundsRow>> {
    let report = plane::verify_bounds_by_sampling(cfg.alpha, cfg.n, cfg.u, cfg.samples, cfg.seed)?;
    let attain = (report.extremal_lower - report.lower)
        .abs()
        .max((report.extremal_upper - report.upper).abs());
    let violation = if cfg.samples == 0 {
        0.0
    } else {
        (report.lower - report.min_observed)
            .max(report.max_observed - report.upper)
            .max(0.0)
    };
    Ok(Artifact {
        config: cfg.clone(),
        results: vec![BoundsRow {
            lower: report.lower,
            upper: report.upper,
            min_observed: report.min_observed,
            max_observed: report.max_observed,
            extremal_lower: report.extremal_lower,
            extremal_upper: report.extremal_upper,
            samples: report.samples,
        }],
        pass: report.pass && attain <= 1e-10,
        max_error: violation.max(attain),
    })
}

// ---------------------------------------------------------------------------
// radial
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct RadialConfig {
    pub n: u32,
    pub alpha: f64,
    pub r_max: f64,
    pub step: f64,
    pub ode_tol: f64,
    /// Emit every stride-th integration step.
    pub stride: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RadialRow {
    pub r: f64,
    pub f: f64,
    pub f_prime: f64,
    pub f_second: f64,
    pub radial_ode_residual: f64,
    pub energy_residual: f64,
}

impl CsvRow for RadialRow {
    fn csv_header() -> String {
        "r,f,f_prime,f_second,radial_ode_residual,energy_residual".into()
    }
    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            fmt_f64(self.r),
            fmt_f64(self.f),
            fmt_f64(self.f_prime),
            fmt_f64(self.f_second),
            fmt_f64(self.radial_ode_residual),
            fmt_f64(self.energy_residual)
        )
    }
}

pub fn radial(cfg: &RadialConfig) -> Result<Artifact<RadialConfig, RadialRow>> {
    let profile = EinsteinWarp::new(cfg.n, cfg.alpha)?;
    let samples = profile::radial_profile(&profile, cfg.r_max, cfg.step)?;
    let stride = cfg.stride.max(1);
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for (i, s) in samples.iter().enumerate() {
        let ode2 = profile::radial_ode_residual(s.f, s.f_prime, s.f_second, cfg.n);
        let energy = s.f_prime * s.f_prime - profile.eval(s.f).v;
        worst = worst.max(ode2.abs());
        if i % stride == 0 || i == samples.len() - 1 {
            rows.push(RadialRow {
                r: s.r,
                f: s.f,
                f_prime: s.f_prime,
                f_second: s.f_second,
                radial_ode_residual: ode2,
                energy_residual: energy,
            });
        }
    }
    Ok(Artifact {
        config: cfg.clone(),
        results: rows,
        pass: worst <= cfg.ode_tol,
        max_error: worst,
    })
}

// ---------------------------------------------------------------------------
// deficit
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct DeficitConfig {
    pub n: u32,
    pub alpha: f64,
    pub etas: Vec<f64>,
    pub grid: usize,
    pub order: usize,
    pub support_tol: f64,
    /// Random planes per radius in the curvature scan (0 disables the scan).
    pub scan_planes: usize,
    pub scan_points: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeficitRow {
    pub eta: f64,
    pub sup: f64,
    pub sup_cm: f64,
    pub a_fit: f64,
    pub l2_per_unit_volume: f64,
    pub support_residual: f64,
    pub scan_max_k: Option<f64>,
}

impl CsvRow for DeficitRow {
    fn csv_header() -> String {
        "eta,sup,sup_cm,a_fit,l2_per_unit_volume,support_residual,scan_max_k".into()
    }
    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            fmt_f64(self.eta),
            fmt_f64(self.sup),
            fmt_f64(self.sup_cm),
            fmt_f64(self.a_fit),
            fmt_f64(self.l2_per_unit_volume),
            fmt_f64(self.support_residual),
            self.scan_max_k.map(fmt_f64).unwrap_or_default()
        )
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

pub fn deficit_suite(cfg: &DeficitConfig) -> Result<Artifact<DeficitConfig, DeficitRow>> {
    if cfg.etas.is_empty() {
        return Err(Error::Parameter("at least one eta is required".into()));
    }
    let mut rows = Vec::new();
    let mut pass = true;
    let mut max_error: f64 = 0.0;
    for &eta in &cfg.etas {
        let r = deficit::deficit_report(cfg.alpha, cfg.n, eta, cfg.order, cfg.grid)?;
        pass &= r.support_residual <= cfg.support_tol;
        max_error = max_error.max(r.support_residual);
        let scan_max_k = if cfg.scan_planes > 0 {
            let scan = deficit::interpolated_curvature_scan(
                cfg.alpha,
                cfg.n,
                eta,
                cfg.scan_points,
                cfg.scan_planes,
                cfg.seed,
            )?;
            pass &= scan.pass;
            Some(scan.max_k)
        } else {
            None
        };
        rows.push(DeficitRow {
            eta,
            sup: r.sup,
            sup_cm: r.sup_cm,
            a_fit: r.a_fit,
            l2_per_unit_volume: r.l2_per_unit_volume,
            support_residual: r.support_residual,
            scan_max_k,
        });
    }
    // Decay law: the sup must fall at least at the envelope rate and the
    // L² surrogate must decrease along the η ladder.
    if rows.len() >= 2 {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.eta, r.sup.ln())).collect();
        let slope = least_squares_slope(&pts);
        pass &= slope <= -(cfg.n as f64 + 1.0) * 0.95;
        for w in rows.windows(2) {
            pass &= w[1].l2_per_unit_volume < w[0].l2_per_unit_volume;
        }
    }
    Ok(Artifact {
        config: cfg.clone(),
        results: rows,
        pass,
        max_error,
    })
}
