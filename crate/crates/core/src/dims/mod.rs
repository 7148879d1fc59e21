//! Achievable-dimension sets: the packed set type, the recurrence that
//! builds `Ĉ(0..=n_max)`, and the `Ω` family with its oracles.

mod omega;
mod set;
mod table;

pub use omega::{
    chat_bruteforce, omega2_closed_form, omega_all_bruteforce, omega_bruteforce,
    omega_len_bruteforce, smooth_bounded_sets, GeneralTable, SmoothBounded, OMEGA_MAX_N,
    ORACLE_MAX_N,
};
pub(crate) use omega::check_omega_scale;
pub use set::{bit_length, DimSet, Iter};
pub use table::{build_table, projected_bytes, DimTable, TableBuilder, DEFAULT_MEMORY_LIMIT};
