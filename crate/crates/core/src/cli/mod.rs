//! Session files: parsing, execution and the instance catalogue.

pub mod expr;
pub mod run;
pub mod session;

pub use run::{run, DEFAULT_SEED, DEFAULT_TRIALS};
pub use session::{parse_session, Format, Session, SessionError};

use crate::monoid::builtin_monoids;

/// The text printed by `--list-instances`.
pub fn list_instances() -> String {
    let mut out = String::from("monoids:\n");
    for (n, d) in builtin_monoids() {
        out.push_str(&format!("  {n:<12} {d}\n"));
    }
    out.push_str("  free <k>     refused for k ≥ 2 (not left Ore)\nrings:\n");
    for (n, d) in session::ring_catalogue() {
        out.push_str(&format!("  {n:<12} {d}\n"));
    }
    out
}
