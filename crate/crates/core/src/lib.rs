pub mod codes;
pub mod error;
pub mod galois;
pub mod limits;
pub mod matrix;
pub mod hss;
pub mod protocol;
pub mod analysis;
