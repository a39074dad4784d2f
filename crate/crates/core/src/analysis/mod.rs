//! Parameter formulas, generalized entropy, the labelweight GV bound and comparison tables.

pub mod entropy;
pub mod gv;
pub mod params;
pub mod table;

pub use entropy::{entropy_curve, entropy_gen};
pub use gv::{gv_dimension, gv_monte_carlo, volume_check, GvConfig, GvReport};
pub use params::{
    bw23_amort_lower, fikw_params, goppa_params, goppa_u_star, gv_example_params, hermitian_params,
    FikwBase, GoppaMode, HermitianMode, ParamRow, SchemeKind,
};
pub use table::{emit_table, Table, TableKind, TableRow};
