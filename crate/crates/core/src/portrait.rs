//! Automorphisms of the truncated binary rooted tree `X^[k]` stored as portraits.
//!
//! A portrait assigns one activity bit to every internal vertex (levels
//! `0..k`). An active vertex swaps its two subtrees wholesale. Vertices are
//! numbered 1-based left to right within each level, and the leaf reached by
//! the path bits `d_0 … d_{k-1}` is `1 + Σ d_l·2^(k-1-l)`.
//!
//! Bits are packed in heap order: vertex `(l, i)` lives at `2^l - 1 + (i - 1)`,
//! so the children of heap slot `n` are `2n + 1` and `2n + 2`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexAddress {
    pub level: usize,
    /// 1-based, left to right.
    pub position: usize,
}

impl VertexAddress {
    pub fn new(level: usize, position: usize) -> Result<Self> {
        if level >= usize::BITS as usize - 1 || position == 0 || position > 1 << level {
            return Err(Error::InvalidVertex { level, position });
        }
        Ok(VertexAddress { level, position })
    }

    fn heap_index(&self) -> usize {
        (1 << self.level) - 1 + (self.position - 1)
    }

    /// Graph distance between two vertices on the same level.
    pub fn same_level_distance(&self, other: &VertexAddress) -> usize {
        debug_assert_eq!(self.level, other.level);
        let diff = (self.position - 1) ^ (other.position - 1);
        2 * (usize::BITS - diff.leading_zeros()) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Portrait {
    depth: usize,
    bits: Vec<u64>,
}

fn words_for(depth: usize) -> usize {
    ((1usize << depth) - 1).div_ceil(64)
}

impl Portrait {
    pub fn identity(depth: usize) -> Result<Self> {
        if depth == 0 || depth > 30 {
            return Err(Error::InvalidDepth(depth));
        }
        Ok(Portrait {
            depth,
            bits: vec![0; words_for(depth)],
        })
    }

    /// Portrait with a single active vertex.
    pub fn vertex_swap(depth: usize, v: VertexAddress) -> Result<Self> {
        Self::with_active(depth, &[v])
    }

    /// Portrait whose active vertices are exactly `active`.
    pub fn with_active(depth: usize, active: &[VertexAddress]) -> Result<Self> {
        let mut p = Self::identity(depth)?;
        for v in active {
            p.check_vertex(v)?;
            p.flip(v.heap_index());
        }
        Ok(p)
    }

    /// Builds a portrait from per-level bit strings; level `l` must have `2^l` entries.
    pub fn from_levels(levels: &[Vec<bool>]) -> Result<Self> {
        let mut p = Self::identity(levels.len())?;
        for (l, row) in levels.iter().enumerate() {
            if row.len() != 1 << l {
                return Err(Error::Parse(format!(
                    "level {l} has {} labels, expected {}",
                    row.len(),
                    1 << l
                )));
            }
            for (i, &b) in row.iter().enumerate() {
                if b {
                    p.flip((1 << l) - 1 + i);
                }
            }
        }
        Ok(p)
    }

    /// Portrait whose heap-ordered labels are the low `2^depth - 1` bits of `code`.
    pub fn from_code(depth: usize, code: u64) -> Result<Self> {
        if depth > 6 {
            return Err(Error::InvalidDepth(depth));
        }
        let mut p = Self::identity(depth)?;
        let n = (1u64 << depth) - 1;
        p.bits[0] = code & ((1u64 << n) - 1);
        Ok(p)
    }

    /// Every portrait of the given depth (`2^(2^depth - 1)` of them), depth ≤ 4.
    pub fn all(depth: usize) -> Result<impl Iterator<Item = Portrait>> {
        if depth == 0 || depth > 4 {
            return Err(Error::InvalidDepth(depth));
        }
        let n = (1u64 << depth) - 1;
        Ok((0..1u64 << n).map(move |c| Portrait::from_code(depth, c).unwrap()))
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn leaf_count(&self) -> usize {
        1 << self.depth
    }

    fn check_vertex(&self, v: &VertexAddress) -> Result<()> {
        if v.level >= self.depth {
            return Err(Error::LeafHasNoState {
                level: v.level,
                depth: self.depth,
            });
        }
        if v.position == 0 || v.position > 1 << v.level {
            return Err(Error::InvalidVertex {
                level: v.level,
                position: v.position,
            });
        }
        Ok(())
    }

    #[inline]
    fn get(&self, idx: usize) -> bool {
        (self.bits[idx / 64] >> (idx % 64)) & 1 == 1
    }

    #[inline]
    fn flip(&mut self, idx: usize) {
        self.bits[idx / 64] ^= 1 << (idx % 64);
    }

    #[inline]
    fn set(&mut self, idx: usize, value: bool) {
        if self.get(idx) != value {
            self.flip(idx);
        }
    }

    pub fn label(&self, v: VertexAddress) -> Result<bool> {
        self.check_vertex(&v)?;
        Ok(self.get(v.heap_index()))
    }

    pub fn is_identity(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn check_level(&self, level: usize) -> Result<()> {
        if level >= self.depth {
            return Err(Error::LevelOutOfRange {
                level,
                depth: self.depth,
            });
        }
        Ok(())
    }

    /// Labels of one level, left to right.
    pub fn level_labels(&self, level: usize) -> Result<Vec<bool>> {
        self.check_level(level)?;
        let base = (1 << level) - 1;
        Ok((0..1 << level).map(|i| self.get(base + i)).collect())
    }

    /// 1-based positions of the active vertices on `level`.
    pub fn active_positions(&self, level: usize) -> Result<Vec<usize>> {
        Ok(self
            .level_labels(level)?
            .into_iter()
            .enumerate()
            .filter(|(_, b)| *b)
            .map(|(i, _)| i + 1)
            .collect())
    }

    /// Number of active states on `level`.
    pub fn level_index(&self, level: usize) -> Result<usize> {
        Ok(self.active_positions(level)?.len())
    }

    /// `self ∘ other` acting on leaves as `self(other(x))`.
    ///
    /// Label rule: `label(v) = label_other(v) XOR label_self(other(v))`.
    pub fn compose(&self, other: &Portrait) -> Result<Portrait> {
        if self.depth != other.depth {
            return Err(Error::IncompatibleDepths(self.depth, other.depth));
        }
        let mut out = Portrait::identity(self.depth)?;
        let internal = (1usize << (self.depth - 1)) - 1;
        // (vertex, image of vertex under `other`)
        let mut stack = vec![(0usize, 0usize)];
        while let Some((v, w)) = stack.pop() {
            let lb = other.get(v);
            out.set(v, lb ^ self.get(w));
            if v < internal {
                let swap = lb as usize;
                stack.push((2 * v + 1, 2 * w + 1 + swap));
                stack.push((2 * v + 2, 2 * w + 2 - swap));
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Portrait {
        let mut out = Portrait::identity(self.depth).unwrap();
        let internal = (1usize << (self.depth - 1)) - 1;
        // (vertex, its image under self)
        let mut stack = vec![(0usize, 0usize)];
        while let Some((v, w)) = stack.pop() {
            let lb = self.get(v);
            out.set(w, lb);
            if v < internal {
                let swap = lb as usize;
                stack.push((2 * v + 1, 2 * w + 1 + swap));
                stack.push((2 * v + 2, 2 * w + 2 - swap));
            }
        }
        out
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Portrait) -> Result<Portrait> {
        g.compose(self)?.compose(&g.inverse())
    }

    /// Image of a vertex (levels `0..=depth`, so leaves are allowed).
    pub fn vertex_image(&self, v: VertexAddress) -> Result<VertexAddress> {
        if v.level > self.depth || v.position == 0 || v.position > 1 << v.level {
            return Err(Error::InvalidVertex {
                level: v.level,
                position: v.position,
            });
        }
        let path = v.position - 1;
        let mut node = 0usize;
        let mut image = 0usize;
        for j in 0..v.level {
            let bit = (path >> (v.level - 1 - j)) & 1;
            image = (image << 1) | (bit ^ self.get(node) as usize);
            node = 2 * node + 1 + bit;
        }
        Ok(VertexAddress {
            level: v.level,
            position: image + 1,
        })
    }

    /// Action on the `2^depth` leaves.
    pub fn to_permutation(&self) -> Permutation {
        let k = self.depth;
        let images = (0..1usize << k)
            .map(|leaf| {
                let mut node = 0usize;
                let mut image = 0usize;
                for j in 0..k {
                    let bit = (leaf >> (k - 1 - j)) & 1;
                    image = (image << 1) | (bit ^ self.get(node) as usize);
                    node = 2 * node + 1 + bit;
                }
                image as u32
            })
            .collect();
        Permutation::from_zero_based(images)
    }

    /// Recovers the portrait of a leaf permutation of degree `2^depth`.
    pub fn from_permutation(p: &Permutation) -> Result<Portrait> {
        let n = p.degree();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::NotATreeAutomorphism);
        }
        let k = n.trailing_zeros() as usize;
        let mut out = Portrait::identity(k)?;
        for l in 0..k {
            for i in 0..1usize << l {
                // leftmost leaf below vertex (l, i+1); its image's bit l is the label
                let leaf = i << (k - l);
                let image = p.apply0(leaf);
                if (image >> (k - 1 - l)) & 1 == 1 {
                    out.flip((1 << l) - 1 + i);
                }
            }
        }
        if out.to_permutation() != *p {
            return Err(Error::NotATreeAutomorphism);
        }
        Ok(out)
    }

    /// Keeps levels `0..m`.
    pub fn restrict(&self, m: usize) -> Result<Portrait> {
        if m == 0 || m > self.depth {
            return Err(Error::InvalidDepth(m));
        }
        let mut out = Portrait::identity(m)?;
        for idx in 0..(1usize << m) - 1 {
            out.set(idx, self.get(idx));
        }
        Ok(out)
    }

    /// Maximal tree distance between two active vertices of level `depth-1`,
    /// or `None` when fewer than two are active.
    pub fn vp_distance(&self) -> Option<usize> {
        let level = self.depth - 1;
        let active = self.active_positions(level).ok()?;
        if active.len() < 2 {
            return None;
        }
        let mut best = 0;
        for (a, &i) in active.iter().enumerate() {
            for &j in &active[a + 1..] {
                let d = VertexAddress { level, position: i }
                    .same_level_distance(&VertexAddress { level, position: j });
                best = best.max(d);
            }
        }
        Some(best)
    }
}

impl fmt::Display for Portrait {
    /// Depth on the first line, then one line of `0`/`1` per level.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.depth)?;
        for l in 0..self.depth {
            let base = (1 << l) - 1;
            let row: String = (0..1 << l)
                .map(|i| if self.get(base + i) { '1' } else { '0' })
                .collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl FromStr for Portrait {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(|l| l.trim_end_matches('\r'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty portrait".into()))?;
        let depth: usize = header
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("depth {header:?}: {e}")))?;
        if depth == 0 || depth > 30 {
            return Err(Error::InvalidDepth(depth));
        }
        let mut levels = Vec::with_capacity(depth);
        for l in 0..depth {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing level {l}")))?;
            let row = line
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::Parse(format!("bad label {c:?} on level {l}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            levels.push(row);
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing data after portrait".into()));
        }
        Portrait::from_levels(&levels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::{BTreeMap, HashSet};

    fn v(level: usize, position: usize) -> VertexAddress {
        VertexAddress::new(level, position).unwrap()
    }

    fn tau(k: usize) -> Portrait {
        Portrait::with_active(k, &[v(k - 1, 1), v(k - 1, 1 << (k - 1))]).unwrap()
    }

    fn random_portrait(rng: &mut ChaCha8Rng, k: usize) -> Portrait {
        let n = (1u64 << k) - 1;
        Portrait::from_code(k, rng.gen::<u64>() & ((1 << n) - 1)).unwrap()
    }

    /// Independent leaf action: swap whole subtrees top-down on an explicit leaf array.
    fn trace_leaves(p: &Portrait) -> Permutation {
        let k = p.depth();
        // arrangement[slot] = leaf currently sitting in slot
        let mut arrangement: Vec<usize> = (0..1 << k).collect();
        for l in 0..k {
            let block = 1 << (k - l);
            for i in 0..1 << l {
                // the label belongs to the vertex v_{l,i+1} of the original tree;
                // find where its subtree currently sits after higher swaps
                let leftmost = i * block;
                let slot = arrangement.iter().position(|&x| x == leftmost).unwrap();
                let start = slot - slot % block;
                if p.label(v(l, i + 1)).unwrap() {
                    let half = block / 2;
                    for s in 0..half {
                        arrangement.swap(start + s, start + half + s);
                    }
                }
            }
        }
        let mut images = vec![0usize; 1 << k];
        for (slot, &leaf) in arrangement.iter().enumerate() {
            images[leaf] = slot + 1;
        }
        Permutation::from_one_line(&images).unwrap()
    }

    #[test]
    fn identity_is_trivial() {
        let id = Portrait::identity(3).unwrap();
        assert_eq!(id.to_string(), "3\n0\n00\n0000\n");
        assert!(id.to_permutation().is_identity());
        for l in 0..3 {
            assert_eq!(id.level_index(l).unwrap(), 0);
        }
        assert_eq!(Portrait::identity(0), Err(Error::InvalidDepth(0)));
    }

    #[test]
    fn vertex_swap_examples() {
        let a0 = Portrait::vertex_swap(3, v(0, 1)).unwrap();
        assert_eq!(
            a0.to_permutation(),
            Permutation::parse_cycles("(1 5)(2 6)(3 7)(4 8)", 8).unwrap()
        );
        let s = Portrait::vertex_swap(2, v(1, 2)).unwrap();
        assert_eq!(
            s.to_permutation(),
            Permutation::parse_cycles("(3 4)", 4).unwrap()
        );
        assert_eq!(
            Portrait::vertex_swap(3, v(3, 1)),
            Err(Error::LeafHasNoState { level: 3, depth: 3 })
        );
    }

    #[test]
    fn tau_leaf_action() {
        let t = tau(3);
        assert_eq!(t.to_string(), "3\n0\n00\n1001\n");
        assert_eq!(
            t.to_permutation(),
            Permutation::parse_cycles("(1 2)(7 8)", 8).unwrap()
        );
        assert!(t.compose(&t).unwrap().is_identity());
        assert_eq!(t.level_index(2).unwrap(), 2);
        assert_eq!(t.restrict(2).unwrap(), Portrait::identity(2).unwrap());
    }

    #[test]
    fn leaf_action_matches_tracing_oracle() {
        for p in Portrait::all(3).unwrap() {
            assert_eq!(p.to_permutation(), trace_leaves(&p));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let p = random_portrait(&mut rng, 5);
            assert_eq!(p.to_permutation(), trace_leaves(&p));
        }
    }

    #[test]
    fn single_state_cycle_counts() {
        // level l < k-1: 2^(k-l-1) transpositions, even; level k-1: one transposition
        for k in 1..=6 {
            for l in 0..k {
                for pos in 1..=1 << l {
                    let p = Portrait::vertex_swap(k, v(l, pos))
                        .unwrap()
                        .to_permutation();
                    let oracle = trace_leaves(&Portrait::vertex_swap(k, v(l, pos)).unwrap());
                    assert_eq!(p, oracle);
                    let transpositions = 1 << (k - l - 1);
                    let mut expected = vec![2; transpositions];
                    expected.extend(vec![1; (1 << k) - 2 * transpositions]);
                    assert_eq!(p.cycle_type(), expected, "k={k} l={l}");
                    assert_eq!(p.parity(), (l == k - 1) as u8);
                }
            }
        }
    }

    #[test]
    fn homomorphism_exhaustive_depth_three() {
        let all: Vec<_> = Portrait::all(3).unwrap().collect();
        for a in &all {
            for b in &all {
                let ab = a.compose(b).unwrap();
                assert_eq!(
                    ab.to_permutation(),
                    a.to_permutation().compose(&b.to_permutation()).unwrap()
                );
                for l in 0..3 {
                    assert_eq!(
                        ab.level_index(l).unwrap() % 2,
                        (a.level_index(l).unwrap() + b.level_index(l).unwrap()) % 2
                    );
                }
                assert_eq!(
                    ab.restrict(2).unwrap(),
                    a.restrict(2)
                        .unwrap()
                        .compose(&b.restrict(2).unwrap())
                        .unwrap()
                );
            }
        }
    }

    #[test]
    fn homomorphism_and_inverse_random_depth_four() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let id = Portrait::identity(4).unwrap();
        for _ in 0..1000 {
            let a = random_portrait(&mut rng, 4);
            let b = random_portrait(&mut rng, 4);
            let ab = a.compose(&b).unwrap();
            assert_eq!(
                ab.to_permutation(),
                a.to_permutation().compose(&b.to_permutation()).unwrap()
            );
            assert_eq!(a.compose(&a.inverse()).unwrap(), id);
            assert_eq!(
                ab.inverse().to_permutation(),
                b.inverse().compose(&a.inverse()).unwrap().to_permutation()
            );
            assert_eq!(id.compose(&a).unwrap(), a);
            assert_eq!(a.compose(&id).unwrap(), a);
        }
    }

    #[test]
    fn compose_rejects_mixed_depths() {
        let a = Portrait::identity(3).unwrap();
        let b = Portrait::identity(4).unwrap();
        assert_eq!(a.compose(&b), Err(Error::IncompatibleDepths(3, 4)));
    }

    #[test]
    fn faithful_on_leaves() {
        for k in 1..=3 {
            let perms: HashSet<_> = Portrait::all(k)
                .unwrap()
                .map(|p| p.to_permutation())
                .collect();
            assert_eq!(perms.len(), 1 << ((1 << k) - 1));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = BTreeMap::new();
        for _ in 0..2000 {
            let p = random_portrait(&mut rng, 4);
            let prev = seen.insert(p.to_permutation(), p.clone());
            if let Some(q) = prev {
                assert_eq!(q, p);
            }
        }
    }

    #[test]
    fn from_permutation_inverts_leaf_action() {
        for p in Portrait::all(3).unwrap() {
            assert_eq!(Portrait::from_permutation(&p.to_permutation()).unwrap(), p);
        }
        let bad = Permutation::parse_cycles("(1 3)", 8).unwrap();
        assert_eq!(
            Portrait::from_permutation(&bad),
            Err(Error::NotATreeAutomorphism)
        );
        assert!(Portrait::from_permutation(&Permutation::identity(6)).is_err());
    }

    #[test]
    fn parity_of_upper_levels() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for k in 2..=5 {
            for _ in 0..200 {
                let mut p = random_portrait(&mut rng, k);
                for pos in p.active_positions(k - 1).unwrap() {
                    p.flip(v(k - 1, pos).heap_index());
                }
                assert!(p.to_permutation().is_even());
            }
        }
    }

    #[test]
    fn level_index_and_restrict_errors() {
        let t = tau(3);
        assert!(matches!(
            t.level_index(3),
            Err(Error::LevelOutOfRange { .. })
        ));
        assert_eq!(t.restrict(0), Err(Error::InvalidDepth(0)));
        assert_eq!(t.restrict(4), Err(Error::InvalidDepth(4)));
        assert_eq!(t.restrict(3).unwrap(), t);
    }

    #[test]
    fn vp_distance_examples() {
        for k in 2..=6 {
            assert_eq!(tau(k).vp_distance(), Some(2 * (k - 1)));
            assert_eq!(Portrait::identity(k).unwrap().vp_distance(), None);
        }
        let siblings = Portrait::with_active(3, &[v(2, 1), v(2, 2)]).unwrap();
        assert_eq!(siblings.vp_distance(), Some(2));
        let single = Portrait::vertex_swap(3, v(2, 3)).unwrap();
        assert_eq!(single.vp_distance(), None);
    }

    #[test]
    fn conjugation_preserves_level_distances() {
        // every portrait of depth 3 conjugating every level-2-only portrait
        let k = 3;
        let lower: Vec<_> = (0u64..16)
            .map(|bits| {
                let active: Vec<_> = (0..4)
                    .filter(|i| bits >> i & 1 == 1)
                    .map(|i| v(2, i + 1))
                    .collect();
                Portrait::with_active(k, &active).unwrap()
            })
            .collect();
        let distances = |p: &Portrait| {
            let act = p.active_positions(k - 1).unwrap();
            let mut d = Vec::new();
            for (i, &a) in act.iter().enumerate() {
                for &b in &act[i + 1..] {
                    d.push(v(k - 1, a).same_level_distance(&v(k - 1, b)));
                }
            }
            d.sort_unstable();
            d
        };
        for g in Portrait::all(k).unwrap() {
            for a in &lower {
                let c = a.conjugate_by(&g).unwrap();
                for l in 0..k - 1 {
                    assert_eq!(c.level_index(l).unwrap(), 0);
                }
                assert_eq!(c.level_index(k - 1).unwrap(), a.level_index(k - 1).unwrap());
                assert_eq!(distances(&c), distances(a));
                let moved: Vec<_> = a
                    .active_positions(k - 1)
                    .unwrap()
                    .into_iter()
                    .map(|p| g.vertex_image(v(k - 1, p)).unwrap().position)
                    .collect();
                let mut moved = moved;
                moved.sort_unstable();
                assert_eq!(moved, c.active_positions(k - 1).unwrap());
            }
        }
    }

    #[test]
    fn text_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..1000 {
            let k = rng.gen_range(1..=6);
            let p = random_portrait(&mut rng, k);
            let text = p.to_string();
            let back: Portrait = text.parse().unwrap();
            assert_eq!(back, p);
            assert_eq!(back.to_string(), text);
        }
    }

    #[test]
    fn text_parse_errors() {
        assert!("".parse::<Portrait>().is_err());
        assert!("0\n".parse::<Portrait>().is_err());
        assert!("2\n1\n1\n".parse::<Portrait>().is_err());
        assert!("2\n1\n1x\n".parse::<Portrait>().is_err());
        assert!("2\n1\n10\n11\n".parse::<Portrait>().is_err());
        assert!("2\n1\n10".parse::<Portrait>().is_ok());
    }
}
