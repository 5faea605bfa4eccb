//! Constructions of Sylow 2-subgroups and the drivers that verify them.

pub mod blocks;
pub mod orders;
pub mod tree;
pub mod verify;

pub use blocks::{
    binary_decompose, boxtimes_gens, build_h_subgroup, phi_iso, syl2_an_gens, syl2_sn_gens,
    sylow_blocks, verify_phi, BinaryDecomposition, HSpec, PhiReport,
};
pub use orders::{nu2_factorial, syl2_order_an, syl2_order_sn};
pub use tree::{
    alpha, b_subgroup_gens, full_tree_gens, s_beta, s_beta_portraits, tau, tau_ij, w_subgroup_gens,
    w_subgroup_portraits, Letter, TauPair, Word,
};
pub use verify::{
    all_pass, g_k, g_k_order_formula, verify_frattini_action, verify_minimal,
    verify_order_relations, verify_semidirect, CheckReport, FrattiniReport, MinimalityReport,
    SemidirectReport,
};
