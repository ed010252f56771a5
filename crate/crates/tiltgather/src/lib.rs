//! Gathering particle swarms with global tilt commands.
//!
//! Every particle in a polyomino workspace moves one cell per command
//! (`u`, `d`, `l`, `r`) unless blocked; particles that meet merge. The goal
//! is a short command sequence that leaves a single occupied cell.
//!
//! Two particles can be merged optimally by BFS over pairs of cells, even
//! though the general minimum-gathering problem is NP-hard. The
//! [`oracle`] module leans on that for ground truth; [`generators`] builds
//! the hardness reduction and the lower-bound families.

pub mod bench;
pub mod decomp;
pub mod generators;
pub mod grid;
pub mod instance;
pub mod oracle;
pub mod render;
pub mod sim;
pub mod strategies;

pub use grid::{Cell, Polyomino, Quadrant};
pub use instance::{parse_instance, Instance};
pub use sim::{Command, Configuration};
