//! Hand-transcribed closed-form tables: the 36 connection components of
//! the n = 3 frame, the curvature components of the warped metric for
//! general n ≥ 2, their α-specialization on the Einstein family, and the
//! Ricci diagonal. The numerical engine in [`crate::engine`] reproduces
//! all of these independently; tests and the acceptance suite hold the two
//! routes against each other.

use crate::engine::{ConnectionTable, CurvatureTensor};
use crate::error::Result;
use crate::frame::{FramePoint, DIM};
use crate::jet::Jet2;
use crate::profile::WarpProfile;

/// The 36 connection equations, assembled as jets in (σ, u). All unlisted
/// components are zero.
#[allow(clippy::needless_range_loop)]
pub fn connection_closed_form(
    point: FramePoint,
    profile: &dyn WarpProfile,
) -> Result<ConnectionTable> {
    let (a, b, c) = crate::frame::hyperbolic_helpers(point.sigma);
    let u = Jet2::var_u(point.u);
    let w = profile.eval_jet(point.u).sqrt()?;
    let wu = w / u;
    // (W + uW')/u, one derivative extraction.
    let p = (u * w).d_du() / u;
    let q1 = a / (b * c);
    let q2 = b / (a * c);
    let q3 = c / (a * b);
    let half_u = 0.5 / u;

    let mut gamma = [[[Jet2::ZERO; DIM]; DIM]; DIM];
    {
        let g = &mut gamma;
        g[0][0][3] = -(b / (u * a));
        g[0][0][5] = -wu;
        g[0][1][2] = -half_u * (q1 + q2 - q3);
        g[0][1][4] = wu;
        g[0][2][1] = -half_u * (-q1 - q2 + q3);
        g[0][3][0] = b / (u * a);
        g[1][0][2] = -half_u * (q1 + q2 + q3);
        g[1][0][4] = -wu;
        g[1][1][3] = -(a / (u * b));
        g[1][1][5] = -wu;
        g[1][2][0] = -half_u * (-q1 - q2 - q3);
        g[1][3][1] = a / (u * b);
        g[2][0][1] = -half_u * (-q1 + q2 + q3);
        g[2][1][0] = -half_u * (q1 - q2 - q3);
        g[2][2][3] = -(4.0 * a * b / (u * c));
        g[2][2][5] = -wu;
        g[2][3][2] = 4.0 * a * b / (u * c);
        g[2][3][4] = wu;
        g[3][2][4] = -wu;
        g[3][3][5] = -wu;
        // ∇Y₅ across the horizontal block pairs up with the almost-complex
        // rotation: (Y₁,Y₂) and (Y₃,Y₄) swap with signs.
        g[0][4][1] = -wu;
        g[1][4][0] = wu;
        g[2][4][3] = -wu;
        g[3][4][2] = wu;
        for i in 0..4 {
            g[i][5][i] = wu;
        }
        g[4][0][1] = -wu;
        g[4][1][0] = wu;
        g[4][2][3] = -wu;
        g[4][3][2] = wu;
        g[4][4][5] = -p;
        g[4][5][4] = p;
        // ∇_{Y₆} annihilates the whole frame.
    }

    Ok(ConnectionTable::from_parts(gamma, point, w.value))
}

/// The three scalars the curvature tables are built from.
#[derive(Debug, Clone, Copy)]
struct CurvatureScalars {
    /// (1 + W²)/u²
    a: f64,
    /// WW'/u
    b: f64,
    /// R at the fiber pair: −3WW'/u − (WW'' + (W')²)
    fiber: f64,
}

fn assemble(dim: usize, s: CurvatureScalars) -> CurvatureTensor {
    let horiz = dim - 2; // horizontal indices 0..horiz
    let is_pair = |p: usize, q: usize| p % 2 == 0 && q == p + 1 && q < horiz;
    CurvatureTensor::from_fn(dim, |i, j, k, l| {
        if (i, j) == (k, l) {
            return if is_pair(i, j) {
                -4.0 * s.a
            } else if j < horiz {
                -s.a
            } else if i < horiz {
                // plane through one horizontal and one fiber direction
                -s.b
            } else {
                s.fiber
            };
        }
        // Mixed components: exactly two holomorphic pairs among the four
        // slots, in one of three arrangements per pair type.
        if is_pair(i, j) && is_pair(k, l) {
            return -2.0 * s.a;
        }
        if i % 2 == 0 && j % 2 == 0 && k == i + 1 && l == j + 1 && j < horiz {
            return -s.a;
        }
        if i % 2 == 0 && l % 2 == 0 && k == i + 1 && j == l + 1 && j < horiz {
            return s.a;
        }
        if is_pair(i, j) && (k, l) == (dim - 2, dim - 1) {
            return -2.0 * s.b;
        }
        if i % 2 == 0 && i < horiz && (j, k, l) == (dim - 2, i + 1, dim - 1) {
            return -s.b;
        }
        if i % 2 == 0 && i < horiz && (j, k, l) == (dim - 1, i + 1, dim - 2) {
            return s.b;
        }
        0.0
    })
}

/// Full curvature tensor of the warped metric in dimension 2n from the
/// profile's (V, V', V'') at u.
pub fn riemann_closed_form(u: f64, profile: &dyn WarpProfile, n: u32) -> CurvatureTensor {
    let e = profile.eval(u);
    assemble(
        2 * n as usize,
        CurvatureScalars {
            a: (1.0 + e.v) / (u * u),
            b: e.dv / (2.0 * u),
            fiber: -3.0 * e.dv / (2.0 * u) - e.d2v / 2.0,
        },
    )
}

/// Curvature tensor of the Einstein member λ_α, written directly in α.
pub fn riemann_alpha(u: f64, alpha: f64, n: u32) -> Result<CurvatureTensor> {
    let cone = crate::cone::cone_data(alpha, n)?;
    if u < cone.u_alpha - 1e-12 {
        return Err(crate::error::Error::Parameter(format!(
            "u = {u} below the degeneration radius u_alpha = {}",
            cone.u_alpha
        )));
    }
    let t = alpha / u.powi(2 * n as i32 + 2);
    let nf = n as f64;
    Ok(assemble(
        2 * n as usize,
        CurvatureScalars {
            a: 1.0 + t,
            b: 1.0 - nf * t,
            fiber: -4.0 - 2.0 * nf * (nf - 1.0) * t,
        },
    ))
}

/// Ricci diagonal (ρ_H on the 2n−2 horizontal directions, ρ_F on the two
/// fiber directions); all off-diagonal entries vanish.
pub fn ricci_diagonal(u: f64, profile: &dyn WarpProfile, n: u32) -> (f64, f64) {
    let e = profile.eval(u);
    let nf = n as f64;
    let rho_h = -2.0 * nf * (1.0 + e.v) / (u * u) - e.dv / u;
    let rho_f = -(2.0 * nf + 1.0) * e.dv / (2.0 * u) - e.d2v / 2.0;
    (rho_h, rho_f)
}
