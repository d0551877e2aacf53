//! Exact arithmetic for the cones of Hilbert functions of graded modules over
//! `k[x_0, ..., x_n]` that are generated in degree zero.
//!
//! Three cones are modelled:
//!
//! * `P(n, a)`: the cone of non-negative sequences in `V(n, a)`,
//! * `Q(n, a)`: Hilbert functions with bounded `a`-invariant, the preimage of
//!   `P(n, a)` under the linear operator `T`,
//! * `R(n, m)`: Hilbert functions with regularity at most `m`, a simplicial
//!   polyhedral cone generated by cyclic modules with linear resolutions.
//!
//! All arithmetic is exact over the rationals. The [`oracle`] module provides
//! brute-force Hilbert functions of monomial quotients that the closed forms
//! are validated against.

pub mod betti;
pub mod cli;
pub mod cones;
pub mod error;
pub mod oracle;
pub mod ratcalc;
pub mod realize;
pub mod series;

pub use error::{Error, Result};
pub use ratcalc::{Partition, Poly, Rat};
pub use series::GenFun;
