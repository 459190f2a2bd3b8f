//! Forward-mode second-order jets over the two base coordinates (σ, u).
//!
//! Every coefficient function of the frame model is a function of σ and u
//! only, so a six-slot jet (value, two first partials, three second
//! partials) is enough to carry exact derivatives through the connection
//! and into the curvature operator. Mixed-partial symmetry is structural:
//! there is a single `d_sigma_u` slot.

use crate::error::{Error, Result};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Which coordinate a lifted value varies along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinate {
    Sigma,
    U,
    Constant,
}

/// Value with first and second partial derivatives in (σ, u).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub d_sigma: f64,
    pub d_u: f64,
    pub d_sigma_sigma: f64,
    pub d_sigma_u: f64,
    pub d_u_u: f64,
}

impl Jet2 {
    pub const ZERO: Jet2 = Jet2::constant(0.0);

    /// Constant jet: all derivatives zero.
    pub const fn constant(value: f64) -> Self {
        Jet2 {
            value,
            d_sigma: 0.0,
            d_u: 0.0,
            d_sigma_sigma: 0.0,
            d_sigma_u: 0.0,
            d_u_u: 0.0,
        }
    }

    /// Seed jet for the σ coordinate (unit first derivative in σ).
    pub const fn var_sigma(value: f64) -> Self {
        Jet2 {
            value,
            d_sigma: 1.0,
            d_u: 0.0,
            d_sigma_sigma: 0.0,
            d_sigma_u: 0.0,
            d_u_u: 0.0,
        }
    }

    /// Seed jet for the u coordinate (unit first derivative in u).
    pub const fn var_u(value: f64) -> Self {
        Jet2 {
            value,
            d_sigma: 0.0,
            d_u: 1.0,
            d_sigma_sigma: 0.0,
            d_sigma_u: 0.0,
            d_u_u: 0.0,
        }
    }

    /// Seed a jet along the named coordinate.
    pub fn lift(value: f64, coordinate: Coordinate) -> Self {
        match coordinate {
            Coordinate::Sigma => Jet2::var_sigma(value),
            Coordinate::U => Jet2::var_u(value),
            Coordinate::Constant => Jet2::constant(value),
        }
    }

    /// Build a jet of a function of u alone from its value and first two
    /// derivatives (the shape warp profiles hand out).
    pub const fn of_u(value: f64, du: f64, duu: f64) -> Self {
        Jet2 {
            value,
            d_sigma: 0.0,
            d_u: du,
            d_sigma_sigma: 0.0,
            d_sigma_u: 0.0,
            d_u_u: duu,
        }
    }

    /// Chain rule through a scalar function given f(x), f'(x), f''(x).
    fn compose(self, f: f64, f1: f64, f2: f64) -> Self {
        Jet2 {
            value: f,
            d_sigma: f1 * self.d_sigma,
            d_u: f1 * self.d_u,
            d_sigma_sigma: f2 * self.d_sigma * self.d_sigma + f1 * self.d_sigma_sigma,
            d_sigma_u: f2 * self.d_sigma * self.d_u + f1 * self.d_sigma_u,
            d_u_u: f2 * self.d_u * self.d_u + f1 * self.d_u_u,
        }
    }

    pub fn cosh(self) -> Self {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.compose(c, s, c)
    }

    pub fn sinh(self) -> Self {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.compose(s, c, s)
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        self.compose(e, e, e)
    }

    pub fn sqrt(self) -> Result<Self> {
        if self.value <= 0.0 {
            return Err(Error::Domain {
                func: "sqrt",
                value: self.value,
            });
        }
        let w = self.value.sqrt();
        let f1 = 0.5 / w;
        let f2 = -0.25 / (w * self.value);
        Ok(self.compose(w, f1, f2))
    }

    pub fn arccosh(self) -> Result<Self> {
        if self.value < 1.0 {
            return Err(Error::Domain {
                func: "arccosh",
                value: self.value,
            });
        }
        let t = self.value * self.value - 1.0;
        let root = t.sqrt();
        self_compose_arccosh(self, root, t)
    }

    /// Integer power x^k, valid for x ≠ 0 (and any x when k ≥ 0).
    pub fn powi(self, k: i32) -> Self {
        let x = self.value;
        let f = x.powi(k);
        let f1 = f64::from(k) * x.powi(k - 1);
        let f2 = f64::from(k) * f64::from(k - 1) * x.powi(k - 2);
        self.compose(f, f1, f2)
    }

    /// Jet of ∂f/∂u. Drops one derivative order: the `d_u_u` and
    /// `d_sigma_u` slots of the result are zeroed, so only the value and
    /// first partials of the returned jet are meaningful.
    pub fn d_du(self) -> Self {
        Jet2 {
            value: self.d_u,
            d_sigma: self.d_sigma_u,
            d_u: self.d_u_u,
            d_sigma_sigma: 0.0,
            d_sigma_u: 0.0,
            d_u_u: 0.0,
        }
    }

    pub fn abs_max_slot(self) -> f64 {
        self.value
            .abs()
            .max(self.d_sigma.abs())
            .max(self.d_u.abs())
            .max(self.d_sigma_sigma.abs())
            .max(self.d_sigma_u.abs())
            .max(self.d_u_u.abs())
    }
}

fn self_compose_arccosh(x: Jet2, root: f64, t: f64) -> Result<Jet2> {
    // arccosh'(x) = 1/√(x²−1), arccosh''(x) = −x/(x²−1)^{3/2}
    let f = x.value.acosh();
    let f1 = 1.0 / root;
    let f2 = -x.value / (t * root);
    Ok(x.compose(f, f1, f2))
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2 {
            value: self.value + rhs.value,
            d_sigma: self.d_sigma + rhs.d_sigma,
            d_u: self.d_u + rhs.d_u,
            d_sigma_sigma: self.d_sigma_sigma + rhs.d_sigma_sigma,
            d_sigma_u: self.d_sigma_u + rhs.d_sigma_u,
            d_u_u: self.d_u_u + rhs.d_u_u,
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        self + (-rhs)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 {
            value: -self.value,
            d_sigma: -self.d_sigma,
            d_u: -self.d_u,
            d_sigma_sigma: -self.d_sigma_sigma,
            d_sigma_u: -self.d_sigma_u,
            d_u_u: -self.d_u_u,
        }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        Jet2 {
            value: self.value * rhs.value,
            d_sigma: self.d_sigma * rhs.value + self.value * rhs.d_sigma,
            d_u: self.d_u * rhs.value + self.value * rhs.d_u,
            d_sigma_sigma: self.d_sigma_sigma * rhs.value
                + 2.0 * self.d_sigma * rhs.d_sigma
                + self.value * rhs.d_sigma_sigma,
            d_sigma_u: self.d_sigma_u * rhs.value
                + self.d_sigma * rhs.d_u
                + self.d_u * rhs.d_sigma
                + self.value * rhs.d_sigma_u,
            d_u_u: self.d_u_u * rhs.value + 2.0 * self.d_u * rhs.d_u + self.value * rhs.d_u_u,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, rhs: Jet2) -> Jet2 {
        // Solve f = q·g slot by slot.
        let g = rhs.value;
        let q = self.value / g;
        let q_s = (self.d_sigma - q * rhs.d_sigma) / g;
        let q_u = (self.d_u - q * rhs.d_u) / g;
        let q_ss = (self.d_sigma_sigma - 2.0 * q_s * rhs.d_sigma - q * rhs.d_sigma_sigma) / g;
        let q_su = (self.d_sigma_u - q_s * rhs.d_u - q_u * rhs.d_sigma - q * rhs.d_sigma_u) / g;
        let q_uu = (self.d_u_u - 2.0 * q_u * rhs.d_u - q * rhs.d_u_u) / g;
        Jet2 {
            value: q,
            d_sigma: q_s,
            d_u: q_u,
            d_sigma_sigma: q_ss,
            d_sigma_u: q_su,
            d_u_u: q_uu,
        }
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: f64) -> Jet2 {
        self + Jet2::constant(rhs)
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: f64) -> Jet2 {
        self - Jet2::constant(rhs)
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: f64) -> Jet2 {
        self * Jet2::constant(rhs)
    }
}

impl Mul<Jet2> for f64 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        Jet2::constant(self) * rhs
    }
}

impl Div<f64> for Jet2 {
    type Output = Jet2;
    fn div(self, rhs: f64) -> Jet2 {
        self / Jet2::constant(rhs)
    }
}

impl Div<Jet2> for f64 {
    type Output = Jet2;
    fn div(self, rhs: Jet2) -> Jet2 {
        Jet2::constant(self) / rhs
    }
}
