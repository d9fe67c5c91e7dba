//! A compass-only construction engine.
//!
//! The single geometric primitive is the intersection of two circles, each
//! drawn about a constructed point through another constructed point.
//! Constructions are [`Program`]s: data that can be executed into a
//! [`Trace`], replayed on new seed points, composed, counted and audited.
//!
//! - [`numeric`]: points, tolerances, circle-circle intersection.
//! - [`kernel`]: programs, execution, rebasing, the incremental [`Builder`].
//! - [`constructions`]: midpoint, perpendicular foot, inversion, line-line
//!   and line-circle intersection, all by compass.
//! - [`field`]: sums, products and conjugates of constructible points.
//! - [`oracle`]: closed-form references used by tests and the fuzzer.
//! - [`dsl`]: the `.compass` script language.

pub mod constructions;
pub mod dsl;
pub mod error;
pub mod field;
pub mod kernel;
pub mod numeric;
pub mod oracle;

pub use error::{Error, Result};
pub use kernel::{Builder, NodeId, Program, Selector, Step, Trace};
pub use numeric::{IntersectionOutcome, Point, ResolvedCircle, Tolerance};
