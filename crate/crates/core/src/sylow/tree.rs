//! Generator families living on a single binary tree `X^[k]`.

use serde::{Deserialize, Serialize};

use crate::engine::GeneratingSet;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::portrait::{Portrait, VertexAddress};

/// `α_i`: the single active state at the leftmost vertex of level `i`, `0 ≤ i ≤ k-2`.
pub fn alpha(k: usize, i: usize) -> Result<Portrait> {
    if k < 2 || i > k - 2 {
        return Err(Error::InvalidParameter(format!(
            "alpha index {i} outside 0..={} for depth {k}",
            k.saturating_sub(2)
        )));
    }
    Portrait::vertex_swap(k, VertexAddress::new(i, 1)?)
}

/// `τ`: active states at the first and last vertex of level `k-1`.
pub fn tau(k: usize) -> Result<Portrait> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "tau needs depth >= 2, got {k}"
        )));
    }
    let last = 1 << (k - 1);
    Portrait::with_active(
        k,
        &[
            VertexAddress::new(k - 1, 1)?,
            VertexAddress::new(k - 1, last)?,
        ],
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    Alpha(usize),
    Tau,
}

/// A word in `{α_0, …, α_{k-2}, τ}`, read left to right as a composition
/// (the rightmost letter acts first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Word {
    pub depth: usize,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn evaluate(&self) -> Result<Portrait> {
        let mut acc = Portrait::identity(self.depth)?;
        for letter in &self.letters {
            let p = match letter {
                Letter::Alpha(i) => alpha(self.depth, *i)?,
                Letter::Tau => tau(self.depth)?,
            };
            acc = acc.compose(&p)?;
        }
        Ok(acc)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauPair {
    pub portrait: Portrait,
    pub word: Word,
}

/// `τ_{l, 2^{k-1}}` for `l` in the left half: conjugate `τ` by the α's picked
/// out by the binary digits of `l - 1`.
fn left_word(k: usize, l: usize) -> Vec<Letter> {
    let d = l - 1;
    let conj: Vec<Letter> = (1..k - 1)
        .filter(|m| (d >> (k - 2 - m)) & 1 == 1)
        .map(Letter::Alpha)
        .collect();
    let mut word = conj.clone();
    word.push(Letter::Tau);
    word.extend(conj.into_iter().rev());
    word
}

fn pair_word(k: usize, i: usize, j: usize) -> Vec<Letter> {
    let full = 1 << (k - 1);
    let half = full / 2;
    if j == full && i <= half {
        return left_word(k, i);
    }
    if j <= half {
        let mut w = left_word(k, i);
        w.extend(left_word(k, j));
        return w;
    }
    if i > half {
        let mut w = vec![Letter::Alpha(0)];
        w.extend(pair_word(k, i - half, j - half));
        w.push(Letter::Alpha(0));
        return w;
    }
    // i in the left half, j in the right half but not last: τ_{1,i} τ τ_{j,2^{k-1}}
    let mut w = Vec::new();
    if i != 1 {
        w.push(Letter::Tau);
        w.extend(left_word(k, i));
    }
    w.push(Letter::Tau);
    w.push(Letter::Alpha(0));
    w.extend(pair_word(k, j - half, half));
    w.push(Letter::Alpha(0));
    w
}

/// `τ_{i,j}` built as a word in the generators, together with that word.
pub fn tau_ij(k: usize, i: usize, j: usize) -> Result<TauPair> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "tau_ij needs depth >= 2, got {k}"
        )));
    }
    let full = 1 << (k - 1);
    let (i, j) = (i.min(j), i.max(j));
    if i == j || i == 0 || j > full {
        return Err(Error::InvalidParameter(format!(
            "tau_ij positions ({i}, {j}) invalid on a level of {full} vertices"
        )));
    }
    let word = Word {
        depth: k,
        letters: pair_word(k, i, j),
    };
    Ok(TauPair {
        portrait: word.evaluate()?,
        word,
    })
}

pub fn s_beta_portraits(k: usize) -> Result<Vec<Portrait>> {
    let mut out = (0..k.saturating_sub(1))
        .map(|i| alpha(k, i))
        .collect::<Result<Vec<_>>>()?;
    out.push(tau(k)?);
    Ok(out)
}

/// `{α_0, …, α_{k-2}, τ}` as leaf permutations of degree `2^k`.
pub fn s_beta(k: usize) -> Result<GeneratingSet> {
    let gens = s_beta_portraits(k)?
        .iter()
        .map(Portrait::to_permutation)
        .collect();
    Ok(GeneratingSet::new(1 << k, gens)?.named(format!("S_beta({k})")))
}

/// Basis of the even-weight level-`(k-1)` activities: adjacent pairs.
pub fn w_subgroup_portraits(k: usize) -> Result<Vec<Portrait>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "W needs depth >= 2, got {k}"
        )));
    }
    (1..1 << (k - 1))
        .map(|i| {
            Portrait::with_active(
                k,
                &[
                    VertexAddress::new(k - 1, i)?,
                    VertexAddress::new(k - 1, i + 1)?,
                ],
            )
        })
        .collect()
}

pub fn w_subgroup_gens(k: usize) -> Result<GeneratingSet> {
    let gens = w_subgroup_portraits(k)?
        .iter()
        .map(Portrait::to_permutation)
        .collect();
    Ok(GeneratingSet::new(1 << k, gens)?.named(format!("W({})", k - 1)))
}

/// `{α_0, …, α_{k-2}}` as depth-`k` leaf permutations.
pub fn b_subgroup_gens(k: usize) -> Result<GeneratingSet> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "B needs depth >= 2, got {k}"
        )));
    }
    let gens = (0..k - 1)
        .map(|i| alpha(k, i).map(|p| p.to_permutation()))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratingSet::new(1 << k, gens)?.named(format!("B({})", k - 1)))
}

/// Generators of the whole tree group `Aut X^[k]`: one swap at the leftmost
/// vertex of every level. Empty for `k = 0`.
pub fn full_tree_gens(k: usize) -> Result<Vec<Permutation>> {
    (0..k)
        .map(|l| Portrait::vertex_swap(k, VertexAddress::new(l, 1)?).map(|p| p.to_permutation()))
        .collect()
}
