//! Numerical laboratory for warped-product metrics over complex
//! hyperbolic space: closed-form connection/curvature/Ricci tables for the
//! family λ = u²·𝔠_{n−1} + u²·V·dθ² + V⁻¹·du², the Einstein members
//! V_α = u² − 1 + α/u^{2n}, cone-angle and pinching machinery, the
//! cutoff-interpolated approximate-Einstein profile, and an independent
//! moving-frames curvature engine that cross-checks every closed form.

pub mod closed;
pub mod cone;
pub mod deficit;
pub mod engine;
pub mod error;
pub mod exec;
pub mod frame;
pub mod jet;
pub mod plane;
pub mod profile;
pub mod quad;
pub mod report;

pub use engine::{ConnectionTable, CurvatureTensor};
pub use error::{Error, Result};
pub use frame::{BracketTable, FramePoint};
pub use jet::{Coordinate, Jet2};
pub use profile::{EinsteinWarp, PlainHyperbolic, ProfileEval, WarpProfile};
