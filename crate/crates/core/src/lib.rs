//! Exact-integer min-cost flow by a path-following interior point method.
//!
//! The solver works on an uncapacitated auxiliary instance built from the
//! input, maintains a minor of arcs that are neither nearly empty nor nearly
//! tight, recenters with randomized integer cycle updates on a spanning tree
//! and finishes with a nested-cut crossover to an optimal tree basis. Every
//! value is an exact integer; a [`BoundMonitor`] records magnitudes.
//!
//! ```
//! use intflow_core::{solve, ExactInt, NoObserver, RawArc, RawInstance, SolveConfig};
//!
//! let inst = RawInstance::new(
//!     vec![ExactInt::from(-1), ExactInt::from(1)],
//!     vec![RawArc::new(0, 1, 5, 3)],
//! );
//! let sol = solve(&inst, &SolveConfig::default(), &mut NoObserver).unwrap();
//! assert_eq!(sol.objective, Some(ExactInt::from(3)));
//! ```

pub mod arith;
pub mod centering;
pub mod crossover;
pub mod dimacs;
pub mod error;
pub mod graph;
pub mod instance;
pub mod ipm;
pub mod maxflow;
pub mod observe;
pub mod oracle;
pub mod solver;
pub mod tree;

pub use arith::{BoundMonitor, ExactInt, MonitorMode};
pub use dimacs::{parse_dimacs, write_dimacs, DimacsError};
pub use error::SolveError;
pub use graph::{ArcId, MultiGraph, NodeId};
pub use instance::{RawArc, RawInstance, ScalingMode};
pub use observe::{NoObserver, Observer};
pub use oracle::{ssp_solve, verify_certificate, OracleSolution};
pub use solver::{solve, Solution, SolveConfig, SolveStatus};
