//! Certificates of non-existence for positive rational solutions of
//!
//! ```text
//! xyz = a·b²,   x + y + z = a·b·c
//! ```
//!
//! together with the arithmetic they rest on and exact bounded searches that
//! act as positive and negative controls.
//!
//! - [`arith`]: gcd, 2-adic splitting, Jacobi symbol, cubefree decomposition,
//!   cube roots modulo powers of two, rational square roots.
//! - [`classify`]: membership in the five covered families of `n` and the
//!   condition checkers for `(a, b, c)` and `(a, n)` queries.
//! - [`sylvester`]: the Sylvester transformation and the two reductions to
//!   `X³ + Y³ + n²Z³ = nXYZ`.
//! - [`search`]: exhaustive searchers for the cubic, the system and the
//!   `(x+y+z)³ = n·xyz` problem.
//! - [`prooflab`]: standalone checks for every identity the non-existence
//!   argument uses.
//! - [`cli`]: the `ratcube` command line front end.

pub mod arith;
pub mod classify;
pub mod cli;
pub mod error;
pub mod prooflab;
pub mod search;
pub mod serde_exact;
pub mod sylvester;

pub use arith::{CubefreeDecomp, ExactInt, ExactRat};
pub use classify::{Condition, NForm, Verdict, VerdictStatus};
pub use error::{Error, Result};
pub use search::{SearchOptions, SearchReport};
pub use sylvester::{CubicSolution, SylvesterTriple};
