//! Agglomerative info-clustering of random variables.
//!
//! Given an entropy function `h` over variables `Z_1, …, Z_n`, the crate
//! computes the principal sequence of partitions: critical values
//! `γ_1 < … < γ_N` and partitions `{V} = P_0 ≻ P_1 ≻ … ≻ P_N` such that the
//! clusters at any threshold `γ ∈ [γ_ℓ, γ_{ℓ+1})`, the maximal sets of
//! variables sharing more than `γ` bits of multivariate mutual information,
//! are the non-singleton blocks of `P_ℓ`.
//!
//! The hierarchy is built bottom-up: each level is one [`psp::fuse`] call,
//! which runs Wolfe's minimum norm point algorithm ([`min_norm`]) on `k − 1`
//! contracted entropy functions. [`oracle`] holds exhaustive reference
//! implementations used to validate the fast path on small inputs.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use infoclust_core::{entropy::EntropyOracle, psp, Subset};
//!
//! // Z1 = Z2 = (a, d), Z3 = a, Z4 = Z5 = b, Z6 = c for independent uniform bits a, b, c, d
//! let vars = [&[0, 3][..], &[0, 3], &[0], &[1], &[1], &[2]]
//!     .iter()
//!     .map(|bits| bits.iter().copied().collect::<Subset>())
//!     .collect();
//! let h = EntropyOracle::bits(vars).unwrap();
//! let result = psp::agglomerate(&h, psp::DEFAULT_TOL).unwrap();
//! let gammas: Vec<i64> = result.critical_values().iter().map(|g| g.round() as i64).collect();
//! assert_eq!(gammas, [0, 1, 2]);
//! assert_eq!(result.clusters_at(0.5).len(), 2);
//! ```

#![no_std]

extern crate alloc;

pub mod entropy;
mod error;
mod linalg;
pub mod min_norm;
pub mod oracle;
pub mod partition;
pub mod psp;
pub mod set_function;
pub mod subset;

pub use error::{Error, Result};
pub use partition::Partition;
pub use set_function::SetFunction;
pub use subset::{GroundSet, Subset};
