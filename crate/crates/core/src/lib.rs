pub mod dualnum;
pub mod frenet;
pub mod invariants;
pub mod minkowski;
pub mod parallel;
pub mod shell;
pub mod verify;

