//! Log-domain special functions, the Wang constant, ball and compact-group volumes and the
//! orbifold volume lower bounds.

mod bounds;
mod logvalue;
mod special;
mod table;
mod wang;

pub use bounds::{
    ball_volume, bound_value, check_limit_consistency, hurwitz_order_bound, limit_consistency, q_bound_first_principles,
    q_bound_first_principles_with_limit, vol_sp_n_times_sp1, BoundMode, BoundReport, BoundSpec, BoundVariant,
    CompactVolume, Component, HurwitzBound, MAX_RANK,
};
pub use logvalue::{Decimal, LogValue};
pub use special::{ln_factorial, ln_sin_power_integral, log_gamma, sin_power_integral};
pub use table::{cell_label, compare_cell, printed_cell, published_table, TableCell, PRINTED_CELLS, TABLE_TOL};
pub use wang::{wang_f, wang_root, WangRoot, PUBLISHED_ROOT, ROOT_AGREEMENT_TOL};
