//! Element classes T, C and CG, and exhaustive checks of how they combine.
//!
//! All three classes are defined by the bottom internal level `k-1`: an
//! element qualifies when it has an odd number of active vertices in each
//! half of that level. T additionally acts trivially on every level above,
//! CG restricts to a single `α_l` on `X^[k-1]`, and C allows any restriction.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::engine::{closure, GeneratingSet, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::portrait::Portrait;
use crate::sylow::tree::alpha;
use crate::sylow::verify::{g_k, to_portraits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Klass {
    T,
    C,
    CG,
    #[serde(rename = "other")]
    Other,
}

impl Klass {
    /// T, C or CG: the odd/odd elements.
    pub fn is_combined_or_t(&self) -> bool {
        !matches!(self, Klass::Other)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementClass {
    pub is_level_stabilizer: bool,
    pub first_half_count: usize,
    pub second_half_count: usize,
    pub klass: Klass,
}

impl ElementClass {
    /// `(first mod 2, second mod 2)`.
    pub fn half_parities(&self) -> (u8, u8) {
        (
            (self.first_half_count % 2) as u8,
            (self.second_half_count % 2) as u8,
        )
    }
}

pub fn classify(a: &Portrait) -> Result<ElementClass> {
    let k = a.depth();
    if k < 2 {
        return Err(Error::InvalidDepth(k));
    }
    let half = 1 << (k - 2);
    let active = a.active_positions(k - 1)?;
    let first_half_count = active.iter().filter(|&&p| p <= half).count();
    let second_half_count = active.len() - first_half_count;
    let mut is_level_stabilizer = true;
    for l in 0..k - 1 {
        if a.level_index(l)? != 0 {
            is_level_stabilizer = false;
            break;
        }
    }
    let both_odd = first_half_count % 2 == 1 && second_half_count % 2 == 1;
    let klass = if !both_odd {
        Klass::Other
    } else if is_level_stabilizer {
        Klass::T
    } else {
        let top = a.restrict(k - 1)?;
        let mut is_alpha = false;
        for l in 0..=k - 2 {
            if alpha(k, l)?.restrict(k - 1)? == top {
                is_alpha = true;
                break;
            }
        }
        if is_alpha {
            Klass::CG
        } else {
            Klass::C
        }
    };
    Ok(ElementClass {
        is_level_stabilizer,
        first_half_count,
        second_half_count,
        klass,
    })
}

fn require_k(k: usize) -> Result<()> {
    if !(2..=4).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "k = {k} outside the exhaustive range 2..=4"
        )));
    }
    Ok(())
}

fn classified_g_k(k: usize) -> Result<Vec<(Portrait, ElementClass)>> {
    to_portraits(&g_k(k)?)?
        .into_iter()
        .map(|p| classify(&p).map(|c| (p, c)))
        .collect()
}

/// No product of two type-T elements of `G_k`, and no square of one, is type T.
pub fn check_t_not_closed(k: usize) -> Result<bool> {
    require_k(k)?;
    let t: Vec<Portrait> = classified_g_k(k)?
        .into_iter()
        .filter(|(_, c)| c.klass == Klass::T)
        .map(|(p, _)| p)
        .collect();
    for x in &t {
        if classify(&x.compose(x)?)?.klass == Klass::T {
            return Ok(false);
        }
        for y in &t {
            if classify(&x.compose(y)?)?.klass == Klass::T {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Closure of the level-`(k-1)` stabilizer elements of `G_k` whose active
/// vertices all sit in one half of level `k-1`.
pub fn within_half_closure(k: usize) -> Result<crate::engine::GroupTable> {
    require_k(k)?;
    let half = 1 << (k - 2);
    let mut gens = Vec::new();
    for (p, c) in classified_g_k(k)? {
        if !c.is_level_stabilizer || p.is_identity() {
            continue;
        }
        let active = p.active_positions(k - 1)?;
        let left = active.iter().all(|&x| x <= half);
        let right = active.iter().all(|&x| x > half);
        if left || right {
            gens.push(p.to_permutation());
        }
    }
    closure(&GeneratingSet::new(1 << k, gens)?, DEFAULT_CAP)
}

/// Short-distance bottom-level elements never generate a type-T element.
pub fn check_distance_barrier(k: usize) -> Result<bool> {
    for x in within_half_closure(k)?.elements() {
        if classify(&Portrait::from_permutation(x)?)?.klass == Klass::T {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddUsageReport {
    pub k: usize,
    /// Half parities compose by XOR on all of `G_k × G_k`.
    pub homomorphism_holds: bool,
    /// Checked only for `k = 3`.
    pub word_scan_holds: Option<bool>,
    pub max_factors: usize,
}

impl OddUsageReport {
    pub fn holds(&self) -> bool {
        self.homomorphism_holds && self.word_scan_holds.unwrap_or(true)
    }
}

pub const ODD_USAGE_MAX_FACTORS: usize = 6;

/// Every word over `G_k` evaluating to a type-T element uses an odd number of
/// T/C/CG factors. Verified through the half-parity homomorphism and, for
/// `k = 3`, by scanning all words of up to six factors.
pub fn check_odd_usage(k: usize) -> Result<OddUsageReport> {
    require_k(k)?;
    let elements = classified_g_k(k)?;
    let perms: Vec<Permutation> = elements.iter().map(|(p, _)| p.to_permutation()).collect();
    let index: std::collections::HashMap<&Permutation, usize> =
        perms.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let mut homomorphism_holds = true;
    'outer: for (i, (_, ci)) in elements.iter().enumerate() {
        for (j, (_, cj)) in elements.iter().enumerate() {
            let prod = perms[i].compose_unchecked(&perms[j]);
            let (_, cp) = &elements[index[&prod]];
            let (a, b) = (ci.half_parities(), cj.half_parities());
            if cp.half_parities() != (a.0 ^ b.0, a.1 ^ b.1) {
                homomorphism_holds = false;
                break 'outer;
            }
        }
    }

    let word_scan_holds = if k == 3 {
        // states: (element index, parity of the number of T/C/CG factors used)
        let mut level: HashSet<(usize, bool)> = HashSet::new();
        let mut ok = true;
        for (i, (_, c)) in elements.iter().enumerate() {
            level.insert((i, c.klass.is_combined_or_t()));
        }
        for _ in 1..=ODD_USAGE_MAX_FACTORS {
            for &(e, odd) in &level {
                if elements[e].1.klass == Klass::T && !odd {
                    ok = false;
                }
            }
            let mut next = HashSet::new();
            for &(e, odd) in &level {
                for (f, (_, c)) in elements.iter().enumerate() {
                    let prod = perms[e].compose_unchecked(&perms[f]);
                    next.insert((index[&prod], odd ^ c.klass.is_combined_or_t()));
                }
            }
            level = next;
        }
        Some(ok)
    } else {
        None
    };

    Ok(OddUsageReport {
        k,
        homomorphism_holds,
        word_scan_holds,
        max_factors: ODD_USAGE_MAX_FACTORS,
    })
}
