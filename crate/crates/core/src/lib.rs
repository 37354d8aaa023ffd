//! Exact invariant theory of genus-2 curves in characteristic 2.

pub mod cache;
pub mod char2inv;
pub mod curves;
pub mod hilbert;
pub mod igusa0;
pub mod linalg;
pub mod polycore;
pub mod verify;
