//! Invariants of factorization: ℸ*, catenary degrees, scans and the descent step.

mod catenary;
mod daleth;
mod descent;
mod report;
mod scan;

pub use catenary::*;
pub use daleth::*;
pub use descent::*;
pub use report::*;
pub use scan::*;
