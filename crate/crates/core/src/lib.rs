//! Braid-theoretic engine for transverse twist knots: braid words and exact
//! equality, branched covers of the disk with their enumeration, lifted open
//! book invariants, branching-word rewriting and left-veering detection.

pub mod braid;
pub mod cover;
pub mod error;
pub mod perm;
pub mod twist;
pub mod veering;
