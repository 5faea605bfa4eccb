//! Verification drivers. Each returns a typed report plus a flat list of
//! [`CheckReport`] rows for the JSON front end.

use std::collections::HashSet;
use std::fmt::Display;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, Klass};
use crate::engine::{
    closure, derived_subgroup, frattini_2group, is_normal, quotient_structure, rank,
    squares_subgroup, GroupTable, DEFAULT_CAP,
};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::portrait::Portrait;
use crate::sylow::blocks::{syl2_an_gens, syl2_sn_gens, verify_phi};
use crate::sylow::orders::{nu2, pow2, syl2_order_an, syl2_order_sn};
use crate::sylow::tree::{b_subgroup_gens, s_beta, w_subgroup_gens};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub k_or_n: u64,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl CheckReport {
    pub fn new(check: &str, k_or_n: usize, expected: impl Display, got: impl Display) -> Self {
        let expected = expected.to_string();
        let got = got.to_string();
        CheckReport {
            check: check.to_string(),
            k_or_n: k_or_n as u64,
            pass: expected == got,
            expected,
            got,
        }
    }
}

pub fn all_pass(checks: &[CheckReport]) -> bool {
    checks.iter().all(|c| c.pass)
}

fn require_k(k: usize, lo: usize, hi: usize) -> Result<()> {
    if k < lo || k > hi {
        return Err(Error::InvalidParameter(format!(
            "k = {k} outside the exhaustive range {lo}..={hi}"
        )));
    }
    Ok(())
}

/// `G_k = ⟨α_0, …, α_{k-2}, τ⟩` enumerated.
pub fn g_k(k: usize) -> Result<GroupTable> {
    closure(&s_beta(k)?, DEFAULT_CAP)
}

/// `|G_k| = 2^{2^k - 2}`.
pub fn g_k_order_formula(k: usize) -> BigUint {
    pow2((1u64 << k) - 2)
}

pub fn to_portraits(g: &GroupTable) -> Result<Vec<Portrait>> {
    g.elements()
        .iter()
        .map(Portrait::from_permutation)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectReport {
    pub k: usize,
    pub w_order: BigUint,
    pub b_order: BigUint,
    pub g_order: BigUint,
    pub w_normal: bool,
    pub intersection_trivial: bool,
    pub product_is_g: bool,
}

impl SemidirectReport {
    pub fn holds(&self) -> bool {
        self.w_normal && self.intersection_trivial && self.product_is_g
    }

    pub fn checks(&self) -> Vec<CheckReport> {
        let k = self.k;
        let half = pow2((1u64 << (k - 1)) - 1);
        vec![
            CheckReport::new("semidirect.w_order", k, &half, &self.w_order),
            CheckReport::new("semidirect.b_order", k, &half, &self.b_order),
            CheckReport::new("semidirect.g_order", k, g_k_order_formula(k), &self.g_order),
            CheckReport::new(
                "semidirect.b_times_w",
                k,
                &self.g_order,
                &self.b_order * &self.w_order,
            ),
            CheckReport::new("semidirect.w_normal", k, true, self.w_normal),
            CheckReport::new(
                "semidirect.intersection_trivial",
                k,
                true,
                self.intersection_trivial,
            ),
            CheckReport::new("semidirect.product_is_g", k, true, self.product_is_g),
        ]
    }
}

/// `G_k = B_{k-1} ⋉ W_{k-1}`, checked by enumeration.
pub fn verify_semidirect(k: usize) -> Result<SemidirectReport> {
    require_k(k, 2, 4)?;
    let g = g_k(k)?;
    let w_gens = w_subgroup_gens(k)?;
    let w = closure(&w_gens, DEFAULT_CAP)?;
    let b = closure(&b_subgroup_gens(k)?, DEFAULT_CAP)?;
    let w_normal = is_normal(&w_gens, &g)?;
    let common = b
        .elements()
        .iter()
        .filter(|x| w.contains(x).unwrap_or(false))
        .count();
    let mut products: HashSet<Permutation> = HashSet::with_capacity(g.order());
    for x in b.elements() {
        for y in w.elements() {
            products.insert(x.compose_unchecked(y));
        }
    }
    let product_is_g = products.len() == g.order()
        && products.len() == b.order() * w.order()
        && g.elements().iter().all(|x| products.contains(x));
    Ok(SemidirectReport {
        k,
        w_order: BigUint::from(w.order()),
        b_order: BigUint::from(b.order()),
        g_order: BigUint::from(g.order()),
        w_normal,
        intersection_trivial: common == 1,
        product_is_g,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub k: usize,
    pub order: usize,
    pub rank: usize,
    pub quotient_cosets: usize,
    pub quotient_exponent: u64,
    /// Order of the closure with generator `i` removed.
    pub removal_orders: Vec<usize>,
}

impl MinimalityReport {
    pub fn all_removals_proper(&self) -> bool {
        self.removal_orders.iter().all(|&o| o < self.order)
    }

    pub fn holds(&self) -> bool {
        all_pass(&self.checks())
    }

    pub fn checks(&self) -> Vec<CheckReport> {
        let k = self.k;
        vec![
            CheckReport::new("minimal.order", k, g_k_order_formula(k), self.order),
            CheckReport::new("minimal.rank", k, k, self.rank),
            CheckReport::new(
                "minimal.quotient_cosets",
                k,
                1usize << k,
                self.quotient_cosets,
            ),
            CheckReport::new("minimal.quotient_exponent", k, 2, self.quotient_exponent),
            CheckReport::new(
                "minimal.all_removals_proper",
                k,
                true,
                self.all_removals_proper(),
            ),
        ]
    }
}

/// `S_β(k)` generates `G_k`, `G_k` has Burnside rank `k`, and no generator is redundant.
pub fn verify_minimal(k: usize) -> Result<MinimalityReport> {
    require_k(k, 2, 4)?;
    let gens = s_beta(k)?;
    let g = closure(&gens, DEFAULT_CAP)?;
    let phi = frattini_2group(&g)?;
    let quotient = quotient_structure(&g, &phi)?;
    let removal_orders = (0..gens.len())
        .map(|i| closure(&gens.without(i), DEFAULT_CAP).map(|h| h.order()))
        .collect::<Result<Vec<_>>>()?;
    Ok(MinimalityReport {
        k,
        order: g.order(),
        rank: rank(&g)?,
        quotient_cosets: quotient.cosets,
        quotient_exponent: quotient.exponent,
        removal_orders,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrattiniReport {
    pub k: usize,
    pub g_order: usize,
    pub phi_order: usize,
    pub squares_order: usize,
    pub derived_order: usize,
    pub phi_equals_squares: bool,
    pub derived_in_squares: bool,
    pub all_levels_even: bool,
    pub phi_type_t_count: usize,
    pub g_type_t_count: usize,
}

impl FrattiniReport {
    pub fn holds(&self) -> bool {
        all_pass(&self.checks())
    }

    pub fn checks(&self) -> Vec<CheckReport> {
        let k = self.k;
        vec![
            CheckReport::new("frattini.order", k, self.g_order >> k, self.phi_order),
            CheckReport::new("frattini.equals_squares", k, true, self.phi_equals_squares),
            CheckReport::new(
                "frattini.derived_in_squares",
                k,
                true,
                self.derived_in_squares,
            ),
            CheckReport::new("frattini.all_levels_even", k, true, self.all_levels_even),
            CheckReport::new("frattini.no_type_t", k, 0, self.phi_type_t_count),
            CheckReport::new("frattini.g_has_type_t", k, true, self.g_type_t_count > 0),
        ]
    }
}

/// The Frattini subgroup of `G_k` has even index on every level and meets no type-T element.
pub fn verify_frattini_action(k: usize) -> Result<FrattiniReport> {
    require_k(k, 2, 4)?;
    let g = g_k(k)?;
    let phi = frattini_2group(&g)?;
    let squares = squares_subgroup(&g)?;
    let derived = derived_subgroup(&g)?;
    let mut all_levels_even = true;
    let mut phi_type_t_count = 0;
    for p in to_portraits(&phi)? {
        for l in 0..k {
            all_levels_even &= p.level_index(l)? % 2 == 0;
        }
        if classify(&p)?.klass == Klass::T {
            phi_type_t_count += 1;
        }
    }
    let mut g_type_t_count = 0;
    for p in to_portraits(&g)? {
        if classify(&p)?.klass == Klass::T {
            g_type_t_count += 1;
        }
    }
    Ok(FrattiniReport {
        k,
        g_order: g.order(),
        phi_order: phi.order(),
        squares_order: squares.order(),
        derived_order: derived.order(),
        phi_equals_squares: phi.same_elements(&squares),
        derived_in_squares: derived.is_subgroup_of(&squares),
        all_levels_even,
        phi_type_t_count,
        g_type_t_count,
    })
}

/// Legendre-arithmetic identities between neighbouring Sylow orders, plus
/// group-level checks for `n ≤ 16`.
pub fn verify_order_relations(n: usize) -> Result<Vec<CheckReport>> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "relations need n >= 3, got {n}"
        )));
    }
    let nn = n as u64;
    let mut out = Vec::new();
    if n % 2 == 1 {
        out.push(CheckReport::new(
            "relations.odd_an_collapse",
            n,
            syl2_order_an(nn - 1),
            syl2_order_an(nn),
        ));
        out.push(CheckReport::new(
            "relations.odd_sn_collapse",
            n,
            syl2_order_sn(nn - 1),
            syl2_order_sn(nn),
        ));
    }
    if n % 4 == 3 && n >= 7 {
        out.push(CheckReport::new(
            "relations.ratio_4k3_4k1",
            n,
            syl2_order_an(nn - 2) * 2u32,
            syl2_order_an(nn),
        ));
    }
    if n % 4 == 2 && n >= 6 {
        out.push(CheckReport::new(
            "relations.an_4k2_eq_sn_4k",
            n,
            syl2_order_sn(nn - 2),
            syl2_order_an(nn),
        ));
    }
    if n.is_multiple_of(2) && n >= 4 {
        out.push(CheckReport::new(
            "relations.index_an_over_sn_minus_1",
            n,
            syl2_order_sn(nn - 1) * pow2(nu2(nn) as u64 - 1),
            syl2_order_an(nn),
        ));
    }
    if n <= 16 {
        let an = closure(&syl2_an_gens(n)?, DEFAULT_CAP)?;
        let sn = closure(&syl2_sn_gens(n)?, DEFAULT_CAP)?;
        out.push(CheckReport::new(
            "relations.group_an_order",
            n,
            syl2_order_an(nn),
            an.order(),
        ));
        out.push(CheckReport::new(
            "relations.group_sn_order",
            n,
            syl2_order_sn(nn),
            sn.order(),
        ));
        out.push(CheckReport::new(
            "relations.group_an_even",
            n,
            true,
            an.elements().iter().all(Permutation::is_even),
        ));
        if n % 2 == 1 {
            // Syl₂(A_{n-1}) fixing the last point is already a Sylow subgroup of A_n
            let smaller = syl2_an_gens(n - 1)?;
            let embedded = smaller
                .generators()
                .iter()
                .map(|g| g.extend_to(n))
                .collect::<Result<Vec<_>>>()?;
            let embedded = closure(
                &crate::engine::GeneratingSet::new(n, embedded)?,
                DEFAULT_CAP,
            )?;
            out.push(CheckReport::new(
                "relations.odd_embedding_order",
                n,
                syl2_order_an(nn),
                embedded.order(),
            ));
            out.push(CheckReport::new(
                "relations.odd_embedding_inside",
                n,
                true,
                embedded.is_subgroup_of(&an),
            ));
        }
        if n % 4 == 2 && n >= 6 {
            let phi = verify_phi(n - 2)?;
            out.push(CheckReport::new("relations.phi_iso", n, true, phi.holds()));
        }
    }
    Ok(out)
}
