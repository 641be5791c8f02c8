//! Symbolic variational calculus on jet bundles over a domain with boundary
//! `{x_n = 0}`.
//!
//! The entry point is [`JetSpace`], which carries the dimensions `(n, m)`
//! and hosts every operation: total derivatives and linearizations on the
//! interior, the pullback to the boundary in normal jet coordinates, the
//! Green decomposition of C-differential operators, and the (relative)
//! Euler operator producing Euler–Lagrange expressions together with the
//! natural boundary conditions on `x_n = 0`.
//!
//! ```
//! use jetbound::JetSpace;
//!
//! let space = JetSpace::new(2, 1).unwrap();
//! let f = space.parse("u1_{1,0}^2/2 + u1_{0,1}^2/2").unwrap();
//! let r = space.relative_euler(&f).unwrap();
//! assert_eq!(r.el[0].to_string(), "-u1_{2,0} - u1_{0,2}");
//! assert_eq!(r.theta[&(1, 0)].to_string(), "ub1_1_{0}");
//! ```

pub mod boundary;
pub mod cdiff;
pub mod checks;
pub mod error;
pub mod expr;
pub mod form;
pub mod jet;
pub mod multi_index;
pub mod random;
pub mod report;
pub mod variational;

pub use boundary::{BoundaryCDiffOp, BoundaryGeneratingSection};
pub use cdiff::{CDiffOp, GreenDecomposition, PeelStrategy};
pub use checks::{run_checks, CheckOptions, CheckOutcome};
pub use error::{JetError, Result};
pub use expr::{parse, Assignment, Atom, Expr, Func, ParseContext, World};
pub use form::HorizontalForm;
pub use jet::{GeneratingSection, JetSpace};
pub use multi_index::MultiIndex;
pub use report::{Command, InputError, Problem, ProblemSpec, Report};
pub use variational::{FirstVariationReport, RelativeEulerResult};
