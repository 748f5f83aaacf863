//! Exact computations on central line arrangements in the projective plane:
//! intersection lattice, Orlik-Terao algebra and its graded Betti numbers,
//! sections of divisors on the blowup at the singular points, multinets,
//! the first resonance variety and determinantal syzygies from nets.

pub mod arrangement;
pub mod circuits;
pub mod divisors;
pub mod error;
pub mod exactmath;
pub mod koszul;
pub mod orlik_terao;
pub mod resonance;
pub mod rng;
pub mod scroll;

pub use arrangement::{builtin, parse_arrangement, poincare_polynomial, Arrangement, FlatPoint, PoincarePoly};
pub use error::{Error, Result};
