//! Cycle-length spectra and transient heights of linear finite dynamical
//! systems `g -> f·g` on `R_e[x]/⟨m⟩`, where `R_e = GR(p^e, d)` is a Galois
//! ring.
//!
//! The pipeline works almost entirely over the residue field `F_q`:
//! factor `m mod p`, split off the part where `f` is nilpotent, compute
//! polynomial orders of the remaining primary factors, and then track how
//! those orders grow with the precision using one witness congruence per
//! factor. [`oracle`] enumerates the functional graph directly and is the
//! ground truth the algebraic route is tested against.

pub mod cycles;
pub mod decompose;
pub mod error;
pub mod factor;
pub mod height;
pub mod hensel;
pub mod oracle;
pub mod order;
pub mod par;
pub mod poly;
pub mod report;
pub mod sample;
pub mod ring;

pub use cycles::CycleSet;
pub use error::{Error, Result};
pub use poly::{GrPoly, PolyOp, RegularityClass};
pub use ring::{GrElem, RingSpec};
