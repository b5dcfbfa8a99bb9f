//! Closed geodesics on hyperbolic surfaces: word codings, intersection numbers,
//! arc-class censuses and volume bounds for canonical lifts.

pub mod words;
pub mod fuchsian;
pub mod modular;
pub mod intersections;
pub mod bounds;
pub mod families;
pub mod report;
