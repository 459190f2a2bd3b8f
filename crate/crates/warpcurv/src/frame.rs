//! The n = 3 orthonormal frame (Y₁, …, Y₆) over base coordinates (σ, u)
//! and its Lie-bracket structure functions.
//!
//! Y₁…Y₄ span the horizontal distribution (a scaled ℂH² frame in polar
//! coordinates about a totally real ℍ²), Y₅ is the normalized θ-direction
//! and Y₆ = W·∂/∂u. Every bracket coefficient is a function of (σ, u)
//! alone and is stored as a [`Jet2`] so that one more frame derivative is
//! available downstream. Frame indices are 0-based throughout: index i
//! means Y_{i+1} in the usual 1-based labelling.

use crate::error::Result;
use crate::jet::Jet2;
use crate::profile::WarpProfile;

pub const DIM: usize = 6;

/// A base point (σ, u). Coefficients contain 1/sinh σ, so samplers keep
/// σ in a band away from 0; constructors do not enforce this.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FramePoint {
    pub sigma: f64,
    pub u: f64,
}

impl FramePoint {
    pub fn new(sigma: f64, u: f64) -> Self {
        FramePoint { sigma, u }
    }
}

/// a = cosh σ, b = sinh σ, c = cosh 2σ as jets in σ.
pub fn hyperbolic_helpers(sigma: f64) -> (Jet2, Jet2, Jet2) {
    let s = Jet2::var_sigma(sigma);
    (s.cosh(), s.sinh(), (s * 2.0).cosh())
}

/// Structure functions c^k_{ij} with [Y_i, Y_j] = Σ_k c^k_{ij} Y_k.
///
/// Indexed `coeff[k][i][j]`; antisymmetric in (i, j) by construction.
#[derive(Debug, Clone)]
pub struct BracketTable {
    coeff: [[[Jet2; DIM]; DIM]; DIM],
    /// W(u), kept for frame derivatives along Y₆.
    w: f64,
}

impl BracketTable {
    /// Coefficient of Y_k in [Y_i, Y_j].
    pub fn coeff(&self, k: usize, i: usize, j: usize) -> Jet2 {
        self.coeff[k][i][j]
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    /// Value of Y_d applied to a coefficient function known by its jet:
    /// Y₄ = (1/u)·∂/∂σ and Y₆ = W·∂/∂u act; the group and θ directions
    /// annihilate functions of (σ, u).
    pub fn frame_derivative_of(&self, f: &Jet2, direction: usize, point: FramePoint) -> f64 {
        frame_derivative_with(f, direction, point.u, self.w)
    }

    /// Test hook: zero one structure-function entry (and its antisymmetric
    /// image) to confirm downstream identities notice.
    pub fn zero_entry(&mut self, k: usize, i: usize, j: usize) {
        self.coeff[k][i][j] = Jet2::ZERO;
        self.coeff[k][j][i] = Jet2::ZERO;
    }
}

fn frame_derivative_with(f: &Jet2, direction: usize, u: f64, w: f64) -> f64 {
    match direction {
        3 => f.d_sigma / u,
        5 => w * f.d_u,
        _ => 0.0,
    }
}

/// Directional derivative of a coefficient jet along a frame vector.
pub fn frame_derivative(
    f: &Jet2,
    direction: usize,
    point: FramePoint,
    profile: &dyn WarpProfile,
) -> Result<f64> {
    let w = profile.eval_jet(point.u).sqrt()?;
    Ok(frame_derivative_with(f, direction, point.u, w.value))
}

/// The bracket table at a point for a given warp profile.
pub fn bracket_table(point: FramePoint, profile: &dyn WarpProfile) -> Result<BracketTable> {
    let (a, b, c) = hyperbolic_helpers(point.sigma);
    let u = Jet2::var_u(point.u);
    let w = profile.eval_jet(point.u).sqrt()?;
    let w_over_u = w / u;

    let mut coeff = [[[Jet2::ZERO; DIM]; DIM]; DIM];
    let mut set = |k: usize, i: usize, j: usize, value: Jet2| {
        coeff[k][i][j] = value;
        coeff[k][j][i] = -value;
    };

    // [Y₁,Y₂] = (c/(uab))Y₃ + (2W/u)Y₅      [Y₁,Y₃] = (b/(uac))Y₂
    set(2, 0, 1, c / (u * a * b));
    set(4, 0, 1, 2.0 * w_over_u);
    set(1, 0, 2, b / (u * a * c));
    // [Y₂,Y₃] = (a/(ubc))Y₁
    set(0, 1, 2, a / (u * b * c));
    // [Y₁,Y₄] = (b/(ua))Y₁                  [Y₂,Y₄] = (a/(ub))Y₂
    set(0, 0, 3, b / (u * a));
    set(1, 1, 3, a / (u * b));
    // [Y₃,Y₄] = (4ab/(uc))Y₃ + (2W/u)Y₅
    set(2, 2, 3, 4.0 * a * b / (u * c));
    set(4, 2, 3, 2.0 * w_over_u);
    // [Y_i,Y₆] = (W/u)Y_i for the four horizontal directions
    for i in 0..4 {
        set(i, i, 5, w_over_u);
    }
    // [Y₅,Y₆] = ((W + uW')/u)Y₅ = ((uW)' / u)Y₅
    set(4, 4, 5, (u * w).d_du() / u);
    // [Y_i,Y₅] = 0 for i ≤ 4: nothing to set.

    Ok(BracketTable { coeff, w: w.value })
}

/// Max frame-component norm of the Jacobi cyclic sum over all index
/// triples: zero for a genuine vector-field frame.
pub fn jacobi_residual(point: FramePoint, profile: &dyn WarpProfile) -> Result<f64> {
    let table = bracket_table(point, profile)?;
    Ok(jacobi_residual_of(&table, point))
}

/// Same check against an externally supplied (possibly mutated) table.
pub fn jacobi_residual_of(table: &BracketTable, point: FramePoint) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..DIM {
        for j in (i + 1)..DIM {
            for k in (j + 1)..DIM {
                for l in 0..DIM {
                    let mut sum = 0.0;
                    for (p, q, r) in [(i, j, k), (j, k, i), (k, i, j)] {
                        // [[Y_p,Y_q],Y_r] = Σ_m c^m_{pq}[Y_m,Y_r] − Y_r(c^m_{pq})Y_m
                        for m in 0..DIM {
                            sum += table.coeff(m, p, q).value * table.coeff(l, m, r).value;
                        }
                        let g = table.coeff(l, p, q);
                        sum -= table.frame_derivative_of(&g, r, point);
                    }
                    worst = worst.max(sum.abs());
                }
            }
        }
    }
    worst
}
