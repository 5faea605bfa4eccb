//! Sylow 2-subgroups of `S_n` and `A_n` for arbitrary `n`, built from tree
//! groups on the blocks of the binary expansion of `n`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::engine::{closure, GeneratingSet, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::sylow::tree::full_tree_gens;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryDecomposition {
    pub n: u64,
    /// Strictly decreasing exponents with `Σ 2^e = n`.
    pub parts: Vec<u32>,
}

impl BinaryDecomposition {
    /// `(offset, size)` of every block, largest block first.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut offset = 0;
        self.parts
            .iter()
            .map(|&e| {
                let size = 1usize << e;
                let block = (offset, size);
                offset += size;
                block
            })
            .collect()
    }
}

pub fn binary_decompose(n: u64) -> Result<BinaryDecomposition> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let parts = (0..u64::BITS).rev().filter(|b| (n >> b) & 1 == 1).collect();
    Ok(BinaryDecomposition { n, parts })
}

/// One generating set per block, each embedded in degree `n`.
pub fn sylow_blocks(n: usize) -> Result<Vec<GeneratingSet>> {
    let dec = binary_decompose(n as u64)?;
    dec.parts
        .iter()
        .zip(dec.blocks())
        .map(|(&e, (offset, _))| {
            let gens = full_tree_gens(e as usize)?
                .into_iter()
                .map(|g| g.embed_block(offset, n))
                .collect::<Result<Vec<_>>>()?;
            Ok(GeneratingSet::new(n, gens)?.named(format!("Syl2(S_{})", 1u64 << e)))
        })
        .collect()
}

/// Generators of `Syl₂(S_n)`: the full tree group on every binary block.
pub fn syl2_sn_gens(n: usize) -> Result<GeneratingSet> {
    let gens = sylow_blocks(n)?
        .into_iter()
        .flat_map(|b| b.generators().to_vec())
        .filter(|g| !g.is_identity())
        .collect();
    Ok(GeneratingSet::new(n, gens)?.named(format!("Syl2(S_{n})")))
}

/// Generators of the even part of the direct product of `parts`.
///
/// The parts must act on pairwise disjoint point sets of a common degree.
/// When some generator `t` is odd, the result is the set of Schreier
/// generators of the parity kernel with transversal `{id, t}`.
pub fn boxtimes_gens(parts: &[GeneratingSet]) -> Result<GeneratingSet> {
    let degree = parts
        .first()
        .map(GeneratingSet::degree)
        .ok_or_else(|| Error::InvalidParameter("no parts given".into()))?;
    let mut owner: Vec<Option<usize>> = vec![None; degree];
    let mut gens: Vec<Permutation> = Vec::new();
    for (idx, part) in parts.iter().enumerate() {
        if part.degree() != degree {
            return Err(Error::DegreeMismatch(degree, part.degree()));
        }
        for g in part.generators() {
            for p in g.support() {
                match owner[p - 1] {
                    Some(o) if o != idx => return Err(Error::OverlappingBlocks(p)),
                    _ => owner[p - 1] = Some(idx),
                }
            }
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
    }
    let Some(t) = gens.iter().find(|g| !g.is_even()).cloned() else {
        return Ok(GeneratingSet::new(degree, gens)?.named("Par"));
    };
    let t_inv = t.inverse();
    let id = Permutation::identity(degree);
    let mut schreier: Vec<Permutation> = Vec::new();
    let mut seen: HashSet<Permutation> = HashSet::new();
    for rep in [&id, &t] {
        for s in &gens {
            let x = rep.compose_unchecked(s);
            let y = if x.is_even() {
                x
            } else {
                x.compose_unchecked(&t_inv)
            };
            if !y.is_identity() && seen.insert(y.clone()) {
                schreier.push(y);
            }
        }
    }
    Ok(GeneratingSet::new(degree, schreier)?.named("Par"))
}

/// Generators of `Syl₂(A_n)` as the even part of the block product.
pub fn syl2_an_gens(n: usize) -> Result<GeneratingSet> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "A_n needs n >= 3, got {n}"
        )));
    }
    Ok(boxtimes_gens(&sylow_blocks(n)?)?.named(format!("Syl2(A_{n})")))
}

/// `φ(σ) = σ ∘ (m+1, m+2)^{χ(σ)}` for `σ` of degree `m = 4k`.
pub fn phi_iso(sigma: &Permutation) -> Result<Permutation> {
    let m = sigma.degree();
    if m == 0 || !m.is_multiple_of(4) {
        return Err(Error::InvalidParameter(format!(
            "phi needs degree divisible by 4, got {m}"
        )));
    }
    let ext = sigma.extend_to(m + 2)?;
    if sigma.is_even() {
        Ok(ext)
    } else {
        ext.compose(&Permutation::transposition(m + 2, m + 1, m + 2)?)
    }
}

/// The paired subgroups `{(g, h_g)}` realizing `Syl₂(A_n)` inside a product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HSpec {
    /// `A_{4k+2}`: `Syl₂(S_{4k})` paired with `(4k+1, 4k+2)`.
    FourKPlus2 { k: usize },
    /// `A_{4k+3}`: `Syl₂(S_{4k})` paired with `(4k+1, 4k+2)`, point `4k+3` fixed.
    FourKPlus3 { k: usize },
    /// `A_{2^a + 2^b}` with `a > b ≥ 1`: odd elements of `Syl₂(S_{2^a})` paired
    /// with odd elements of `Syl₂(S_{2^b})`.
    TwoPowers { a: u32, b: u32 },
}

impl HSpec {
    pub fn degree(&self) -> usize {
        match *self {
            HSpec::FourKPlus2 { k } => 4 * k + 2,
            HSpec::FourKPlus3 { k } => 4 * k + 3,
            HSpec::TwoPowers { a, b } => (1 << a) + (1 << b),
        }
    }

    /// Picks the shape matching `n`, preferring the `4k+2`/`4k+3` forms.
    pub fn for_degree(n: usize) -> Result<HSpec> {
        if n >= 6 && n % 4 == 2 {
            return Ok(HSpec::FourKPlus2 { k: n / 4 });
        }
        if n >= 7 && n % 4 == 3 {
            return Ok(HSpec::FourKPlus3 { k: n / 4 });
        }
        let dec = binary_decompose(n as u64)?;
        match dec.parts.as_slice() {
            &[a, b] if b >= 1 => Ok(HSpec::TwoPowers { a, b }),
            _ => Err(Error::InvalidParameter(format!(
                "no paired-subgroup construction for degree {n}"
            ))),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            HSpec::FourKPlus2 { k } | HSpec::FourKPlus3 { k } => k >= 1,
            HSpec::TwoPowers { a, b } => a > b && b >= 1 && a < 16,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("invalid H spec {self:?}")))
        }
    }
}

pub fn build_h_subgroup(spec: HSpec) -> Result<GeneratingSet> {
    spec.validate()?;
    let n = spec.degree();
    let (head, tail) = match spec {
        HSpec::FourKPlus2 { k } | HSpec::FourKPlus3 { k } => {
            let head = syl2_sn_gens(4 * k)?
                .generators()
                .iter()
                .map(|g| g.extend_to(n))
                .collect::<Result<Vec<_>>>()?;
            let t = Permutation::transposition(n, 4 * k + 1, 4 * k + 2)?;
            (head, GeneratingSet::new(n, vec![t])?)
        }
        HSpec::TwoPowers { a, b } => {
            let head_size = 1usize << a;
            let head = full_tree_gens(a as usize)?
                .into_iter()
                .map(|g| g.embed_block(0, n))
                .collect::<Result<Vec<_>>>()?;
            let tail = full_tree_gens(b as usize)?
                .into_iter()
                .map(|g| g.embed_block(head_size, n))
                .collect::<Result<Vec<_>>>()?;
            (head, GeneratingSet::new(n, tail)?)
        }
    };
    let t = tail
        .generators()
        .iter()
        .find(|g| !g.is_even())
        .cloned()
        .ok_or_else(|| Error::InvalidParameter("tail block has no odd element".into()))?;
    let mut gens: Vec<Permutation> = head
        .into_iter()
        .map(|g| {
            if g.is_even() {
                g
            } else {
                g.compose_unchecked(&t)
            }
        })
        .collect();
    // the even part of the tail block pairs with the identity on the head
    for h in boxtimes_gens(&[tail])?.generators() {
        if !h.is_identity() && h.is_even() {
            gens.push(h.clone());
        }
    }
    Ok(GeneratingSet::new(n, gens)?.named(format!("H_{n}")))
}

/// Exhaustive check that φ maps `Syl₂(S_m)` isomorphically onto `Syl₂(A_{m+2})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    pub m: usize,
    pub domain_order: usize,
    pub image_order: usize,
    pub target_order: usize,
    pub homomorphism: bool,
    pub injective: bool,
    pub onto_target: bool,
}

impl PhiReport {
    pub fn holds(&self) -> bool {
        self.homomorphism && self.injective && self.onto_target
    }
}

pub fn verify_phi(m: usize) -> Result<PhiReport> {
    let domain = closure(&syl2_sn_gens(m)?, DEFAULT_CAP)?;
    let target = closure(&syl2_an_gens(m + 2)?, DEFAULT_CAP)?;
    let images: Vec<Permutation> = domain
        .elements()
        .iter()
        .map(phi_iso)
        .collect::<Result<_>>()?;
    let mut homomorphism = true;
    'pairs: for (i, a) in domain.elements().iter().enumerate() {
        for (j, b) in domain.elements().iter().enumerate() {
            let lhs = phi_iso(&a.compose_unchecked(b))?;
            if lhs != images[i].compose_unchecked(&images[j]) {
                homomorphism = false;
                break 'pairs;
            }
        }
    }
    let distinct: HashSet<&Permutation> = images.iter().collect();
    let mut onto_target = distinct.len() == target.order();
    for x in &images {
        onto_target &= target.contains(x)?;
    }
    Ok(PhiReport {
        m,
        domain_order: domain.order(),
        image_order: distinct.len(),
        target_order: target.order(),
        homomorphism,
        injective: distinct.len() == domain.order(),
        onto_target,
    })
}
