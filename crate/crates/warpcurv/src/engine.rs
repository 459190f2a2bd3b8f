//! Numerical curvature engine for the 6-dimensional frame (n = 3): the
//! Levi-Civita connection from the bracket table via the orthonormal-frame
//! Koszul formula, then the full Riemann tensor through the curvature
//! operator. The engine never consults the closed-form tables, so it
//! serves as an independent oracle for them. n = 3 already realizes every
//! mixed-term configuration, which is why the engine dimension is fixed.

use crate::error::Result;
use crate::frame::{bracket_table, BracketTable, FramePoint, DIM};
use crate::jet::Jet2;
use crate::profile::WarpProfile;

/// Connection coefficients Γ_{kij} = λ(∇_{Y_k} Y_i, Y_j), stored as jets
/// in (σ, u). Only the value and first-partial slots of the jets are
/// meaningful: the table is built through one derivative extraction, which
/// truncates the second order.
#[derive(Debug, Clone)]
pub struct ConnectionTable {
    gamma: [[[Jet2; DIM]; DIM]; DIM],
    point: FramePoint,
    w: f64,
}

impl ConnectionTable {
    pub(crate) fn from_parts(gamma: [[[Jet2; DIM]; DIM]; DIM], point: FramePoint, w: f64) -> Self {
        ConnectionTable { gamma, point, w }
    }

    pub fn gamma(&self, k: usize, i: usize, j: usize) -> Jet2 {
        self.gamma[k][i][j]
    }

    /// Worst entry-wise difference over the meaningful jet slots (value
    /// and first partials).
    pub fn max_difference(&self, other: &ConnectionTable) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..DIM {
            for i in 0..DIM {
                for j in 0..DIM {
                    let x = self.gamma[k][i][j];
                    let y = other.gamma[k][i][j];
                    worst = worst
                        .max((x.value - y.value).abs())
                        .max((x.d_sigma - y.d_sigma).abs())
                        .max((x.d_u - y.d_u).abs());
                }
            }
        }
        worst
    }

    pub fn point(&self) -> FramePoint {
        self.point
    }

    /// Max |Γ_{kij} + Γ_{kji}|: zero for a metric connection in an
    /// orthonormal frame.
    pub fn metric_compatibility_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..DIM {
            for i in 0..DIM {
                for j in 0..DIM {
                    worst =
                        worst.max((self.gamma[k][i][j].value + self.gamma[k][j][i].value).abs());
                }
            }
        }
        worst
    }

    /// Max |Γ_{ijk} − Γ_{jik} − c^k_{ij}|: zero when torsion-free.
    pub fn torsion_residual(&self, brackets: &BracketTable) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    let t = self.gamma[i][j][k].value
                        - self.gamma[j][i][k].value
                        - brackets.coeff(k, i, j).value;
                    worst = worst.max(t.abs());
                }
            }
        }
        worst
    }

    fn frame_derivative(&self, f: &Jet2, direction: usize) -> f64 {
        match direction {
            3 => f.d_sigma / self.point.u,
            5 => self.w * f.d_u,
            _ => 0.0,
        }
    }
}

/// Koszul formula in an orthonormal frame:
/// Γ_{kij} = −½ (c^k_{ij} + c^i_{kj} + c^j_{ik}).
#[allow(clippy::needless_range_loop)]
pub fn connection_from_brackets(brackets: &BracketTable, point: FramePoint) -> ConnectionTable {
    let mut gamma = [[[Jet2::ZERO; DIM]; DIM]; DIM];
    for k in 0..DIM {
        for i in 0..DIM {
            for j in 0..DIM {
                let sum =
                    brackets.coeff(k, i, j) + brackets.coeff(i, k, j) + brackets.coeff(j, i, k);
                gamma[k][i][j] = sum * (-0.5);
            }
        }
    }
    ConnectionTable {
        gamma,
        point,
        w: brackets.w(),
    }
}

pub fn koszul_connection(point: FramePoint, profile: &dyn WarpProfile) -> Result<ConnectionTable> {
    Ok(connection_from_brackets(
        &bracket_table(point, profile)?,
        point,
    ))
}

/// One raw curvature component
/// R_{ijkl} = λ(∇_j ∇_i Y_k − ∇_i ∇_j Y_k + ∇_{[Y_i,Y_j]} Y_k, Y_l),
/// evaluated without symmetrization. Sign convention: R_{ijij} is the
/// sectional curvature of the coordinate plane (Y_i, Y_j).
pub fn riemann_component_raw(
    conn: &ConnectionTable,
    brackets: &BracketTable,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> f64 {
    let mut r = conn.frame_derivative(&conn.gamma(i, k, l), j)
        - conn.frame_derivative(&conn.gamma(j, k, l), i);
    for m in 0..DIM {
        r += conn.gamma(i, k, m).value * conn.gamma(j, m, l).value
            - conn.gamma(j, k, m).value * conn.gamma(i, m, l).value
            + brackets.coeff(m, i, j).value * conn.gamma(m, k, l).value;
    }
    r
}

/// The full 6-dimensional Riemann tensor at a point, computed through the
/// connection and stored canonically.
pub fn riemann_numeric(point: FramePoint, profile: &dyn WarpProfile) -> Result<CurvatureTensor> {
    let brackets = bracket_table(point, profile)?;
    let conn = connection_from_brackets(&brackets, point);
    Ok(CurvatureTensor::from_fn(DIM, |i, j, k, l| {
        riemann_component_raw(&conn, &brackets, i, j, k, l)
    }))
}

/// Riemann components R_{ijkl} in an orthonormal frame of dimension 2n,
/// stored so that the four index symmetries
/// R_{ijkl} = −R_{jikl} = −R_{ijlk} = R_{klij} hold by construction:
/// writes go through the canonical representative's full orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTensor {
    dim: usize,
    comp: Vec<f64>,
}

impl CurvatureTensor {
    pub fn zeros(dim: usize) -> Self {
        CurvatureTensor {
            dim,
            comp: vec![0.0; dim * dim * dim * dim],
        }
    }

    /// Evaluate `f` on canonical index quadruples (i < j, k < l,
    /// (i,j) ≤ (k,l)) and fill every symmetry image.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize, usize, usize) -> f64) -> Self {
        let mut t = CurvatureTensor::zeros(dim);
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in 0..dim {
                    for l in (k + 1)..dim {
                        if (k, l) < (i, j) {
                            continue;
                        }
                        t.set_canonical(i, j, k, l, f(i, j, k, l));
                    }
                }
            }
        }
        t
    }

    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.dim + j) * self.dim + k) * self.dim + l
    }

    /// Write a component together with its seven symmetry images.
    pub fn set_canonical(&mut self, i: usize, j: usize, k: usize, l: usize, v: f64) {
        let writes = [
            (i, j, k, l, v),
            (j, i, k, l, -v),
            (i, j, l, k, -v),
            (j, i, l, k, v),
            (k, l, i, j, v),
            (l, k, i, j, -v),
            (k, l, j, i, -v),
            (l, k, j, i, v),
        ];
        for (a, b, c, d, value) in writes {
            let at = self.idx(a, b, c, d);
            self.comp[at] = value;
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.comp[self.idx(i, j, k, l)]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Max |R_{ijkl} + R_{jkil} + R_{kijl}| over all quadruples.
    pub fn first_bianchi_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let s = self.get(i, j, k, l) + self.get(j, k, i, l) + self.get(k, i, j, l);
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// Ricci contraction Ric(Y_a, Y_b) = Σ_k R_{akbk}.
    pub fn ricci(&self, a: usize, b: usize) -> f64 {
        (0..self.dim).map(|k| self.get(a, k, b, k)).sum()
    }

    /// Compare against a reference tensor: absolute error on components the
    /// reference holds exactly zero, relative error elsewhere.
    pub fn compare(&self, reference: &CurvatureTensor) -> TensorComparison {
        assert_eq!(self.dim, reference.dim);
        let d = self.dim;
        let mut cmp = TensorComparison::default();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let got = self.get(i, j, k, l);
                        let want = reference.get(i, j, k, l);
                        let abs = (got - want).abs();
                        cmp.max_abs = cmp.max_abs.max(abs);
                        if want == 0.0 {
                            cmp.max_abs_zero = cmp.max_abs_zero.max(abs);
                        } else {
                            cmp.max_rel_nonzero = cmp.max_rel_nonzero.max(abs / want.abs());
                        }
                    }
                }
            }
        }
        cmp
    }
}

/// Worst-case discrepancies split by the reference's sparsity pattern.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TensorComparison {
    pub max_abs: f64,
    pub max_abs_zero: f64,
    pub max_rel_nonzero: f64,
}
