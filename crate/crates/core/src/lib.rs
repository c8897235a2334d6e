//! Rényi entropies, entropy powers and Fourier bounds for distributions on ℤ.
//!
//! All entropies are in nats. A [`Pmf`] is a finitely supported mass
//! function on the integers; the checks in [`verify`] return
//! [`IneqReport`]s that serialize to JSON.

pub mod bounds;
pub mod convolve;
pub mod error;
pub mod exact;
pub mod extremal;
pub mod families;
pub mod pmf;
pub mod quadrature;
pub mod renyi;
pub mod report;
pub mod spectral;
pub mod sum;
pub mod verify;
pub mod weights;

pub use convolve::{convolve, convolve_all, convolve_auto, convolve_fft, convolve_power};
pub use error::{Error, Result};
pub use exact::RationalPmf;
pub use extremal::{DensityBound, ExtremePointSpec};
pub use pmf::{HalfInteger, Pmf};
pub use renyi::{delta, renyi_entropy, shannon_entropy, RenyiOrder};
pub use report::{IneqReport, Table};
pub use spectral::{char_lq_norm, char_modulus, CharEval};
pub use weights::{Rational, WeightVector};
