//! Codes for asymmetric and limited-magnitude channels: distances, channel
//! oracles, group-theoretic and concatenated constructions, cyclic ternary
//! search and bound reporting.

pub mod bounds;
pub mod channel;
pub mod cyclic;
pub mod enumerator;
pub mod error;
pub mod group;
pub mod linear;
pub mod metric;
pub mod pairing;
pub mod ternary;
pub mod word;

pub use bounds::{
    best_d3_dimension, is_perfect, rate_ratio, sphere_bound, table1_report, table2_report,
};
pub use channel::{
    corrects_t_errors, error_ball, make_channel, simulate_channel, ChannelGraph, ChannelKind,
    Counting, Injection, ProductChannel, SimulationConfig, SimulationReport,
};
pub use cyclic::{
    builtin_table_generators, enumerate_orbits, orbits_compatible, search_cyclic, search_extended,
    Orbit, SearchConfig, Strategy,
};
pub use enumerator::{evaluate_enumerator, weight_enumerator, WeightEnumerator};
pub use error::{Error, Result};
pub use group::{
    best_cr_group, canonical_pairing, cr_code, group_elements, vt_code, AbelianGroup, GroupElement,
    PairingMode,
};
pub use linear::{
    codewords_of, concat_code, decode_concat, double_code, hamming_parity_check,
    is_single_rq_correcting, lee_parity_check, min_hamming_distance, ConcatCode, MatrixModZq,
    MatrixRole,
};
pub use metric::{
    asym_distance, d_ell_distance, decode_asymmetric, is_lm_code, is_t_code, min_asym_distance,
    weight_w, DecodeOutcome,
};
pub use pairing::Pairing;
pub use ternary::{
    construct_even, construct_extended, construct_odd_mixed, expand_to_binary, find_pairing,
    fold_to_ternary, is_ternary_code,
};
pub use word::{AlphabetSpec, CodeBook, Word};

/// Default bound on the number of codewords an enumeration may produce.
pub const DEFAULT_ENUM_CAP: usize = 1_000_000;
