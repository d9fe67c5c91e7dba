//! Compass constructions as replayable programs.
//!
//! A [`Program`] is a topologically ordered list of [`Step`]s over numbered
//! seed slots. [`execute`] resolves it into a [`Trace`]; [`rebase`] inlines
//! one program into another with its seeds rebound, which is how a
//! construction made on `0, 1` is repeated on any other pair of points.

mod builder;
mod program;
mod trace;

pub use builder::Builder;
pub use program::{rebase, NodeId, NodeKind, Program, Selector, Step};
pub use trace::{
    execute, purity_audit, replay_deviation, similarity_transport_check, AuditReport, Resolved,
    Similarity, Trace, TransportCheck,
};
