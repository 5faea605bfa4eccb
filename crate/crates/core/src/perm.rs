//! Permutations of `{1..n}` in one-line form.
//!
//! Points are 1-based at the public boundary and 0-based in storage. The
//! derived ordering on [`Permutation`] is the lexicographic order of the
//! one-line form, which is what group tables sort by.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images, `images[i - 1] = σ(i)`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[img - 1] = true;
            out.push((img - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// Builds a permutation of the given degree from disjoint cycles of 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (idx, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree || touched[p - 1] {
                    return Err(Error::InvalidPermutation(format!("{cycles:?}")));
                }
                touched[p - 1] = true;
                let q = cycle[(idx + 1) % cycle.len()];
                if q == 0 || q > degree {
                    return Err(Error::InvalidPermutation(format!("{cycles:?}")));
                }
                images[p - 1] = (q - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidPermutation(format!("({a} {b})")));
        }
        Self::from_cycles(degree, &[vec![a, b]])
    }

    pub(crate) fn from_zero_based(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images
                .iter()
                .all(|&i| !std::mem::replace(&mut seen[i as usize], true))
        });
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `point`.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn apply0(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// 1-based one-line form.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Result<Permutation> {
        Ok(g.compose(self)?.compose_unchecked(&g.inverse()))
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, other: &Permutation) -> Result<Permutation> {
        let ab = self.compose(other)?;
        Ok(ab
            .compose_unchecked(&self.inverse())
            .compose_unchecked(&other.inverse()))
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            exp >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its smallest
    /// point, ordered by that point (1-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.apply0(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.apply0(p);
            }
            if len > 0 {
                lens.push(len);
            }
        }
        lens
    }

    /// Cycle lengths including fixed points, in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens = self.cycle_lengths();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// 0 for even, 1 for odd: `n - #cycles (mod 2)`.
    pub fn parity(&self) -> u8 {
        ((self.degree() - self.cycle_lengths().len()) % 2) as u8
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 0
    }

    /// Least common multiple of the cycle lengths.
    pub fn element_order(&self) -> BigUint {
        self.cycle_lengths()
            .into_iter()
            .fold(BigUint::from(1u32), |acc, l| acc.lcm(&BigUint::from(l)))
    }

    /// Points moved by the permutation (1-based, ascending).
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&i| self.apply0(i) != i)
            .map(|i| i + 1)
            .collect()
    }

    pub(crate) fn first_moved0(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.apply0(i) != i)
    }

    /// The doubling map `β_σ(2i-1) = 2σ(i)-1`, `β_σ(2i) = 2σ(i)`.
    pub fn double(&self) -> Permutation {
        let mut images = Vec::with_capacity(2 * self.degree());
        for &j in &self.images {
            images.push(2 * j);
            images.push(2 * j + 1);
        }
        Permutation { images }
    }

    /// Acts as `self` on `offset+1 ..= offset+m` and fixes every other point of `1..=degree`.
    pub fn embed_block(&self, offset: usize, degree: usize) -> Result<Permutation> {
        let m = self.degree();
        if offset + m > degree {
            return Err(Error::BlockOverflow {
                size: m,
                offset,
                degree,
            });
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + j;
        }
        Ok(Permutation { images })
    }

    /// Same permutation on a larger point set, fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Result<Permutation> {
        self.embed_block(0, degree)
    }

    /// Comma separated 1-based images.
    pub fn to_one_line_string(&self) -> String {
        self.one_line()
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_one_line(s: &str) -> Result<Permutation> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation::identity(0));
        }
        let images = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_one_line(&images)
    }

    /// Parses cycle notation such as `(1 2)(7 8)`; `()` is the identity.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Permutation> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if cycle.len() == 1 {
                return Err(Error::Parse(format!("1-cycle in {s:?}")));
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body = c
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            write!(f, "({body})")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// One-line form; use [`Permutation::parse_cycles`] for cycle notation.
    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse_one_line(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_one_line(&v).unwrap())
    }

    #[test]
    fn transposition_squares_to_identity() {
        let t = cyc(2, "(1 2)");
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn four_cycle_has_order_four() {
        assert_eq!(cyc(4, "(1 2 3 4)").element_order(), BigUint::from(4u32));
        assert_eq!(
            Permutation::identity(5).element_order(),
            BigUint::from(1u32)
        );
        assert_eq!(cyc(5, "(1 2)(3 4 5)").element_order(), BigUint::from(6u32));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(Permutation::identity(8).parity(), 0);
        assert_eq!(cyc(8, "(1 5)(2 6)(3 7)(4 8)").parity(), 0);
        assert_eq!(cyc(4, "(3 4)").parity(), 1);
        assert_eq!(cyc(4, "(1 2 3 4)").parity(), 1);
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(Permutation::identity(8).cycle_type(), vec![1; 8]);
        assert_eq!(cyc(8, "(1 5)(2 6)(3 7)(4 8)").cycle_type(), vec![2; 4]);
        assert_eq!(cyc(8, "(1 2)(7 8)").cycle_type(), vec![2, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn double_of_transposition() {
        let d = cyc(2, "(1 2)").double();
        assert_eq!(d, cyc(4, "(1 3)(2 4)"));
        assert!(Permutation::identity(3).double().is_identity());
        assert_eq!(Permutation::identity(3).double().degree(), 6);
    }

    #[test]
    fn embed_block_examples() {
        let e = cyc(2, "(1 2)").embed_block(4, 6).unwrap();
        assert_eq!(e, cyc(6, "(5 6)"));
        assert!(Permutation::identity(3)
            .embed_block(2, 9)
            .unwrap()
            .is_identity());
        assert!(matches!(
            cyc(2, "(1 2)").embed_block(5, 6),
            Err(Error::BlockOverflow { .. })
        ));
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert_eq!(a.compose(&b), Err(Error::DegreeMismatch(3, 4)));
    }

    #[test]
    fn parsers_reject_garbage() {
        assert!(Permutation::parse_one_line("1,1,2").is_err());
        assert!(Permutation::parse_one_line("1,x").is_err());
        assert!(Permutation::parse_cycles("(1 2", 3).is_err());
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert!(Permutation::from_one_line(&[0, 1]).is_err());
    }

    #[test]
    fn identity_prints_as_empty_cycle() {
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(cyc(8, "(7 8)(1 2)").to_string(), "(1 2)(7 8)");
        assert!(Permutation::parse_cycles("()", 4).unwrap().is_identity());
    }

    #[test]
    fn doubling_is_a_homomorphism_on_s4() {
        let mut all = Vec::new();
        let mut v = vec![1, 2, 3, 4];
        permute_all(&mut v, 0, &mut all);
        assert_eq!(all.len(), 24);
        for a in &all {
            for b in &all {
                let lhs = a.compose(b).unwrap().double();
                let rhs = a.double().compose(&b.double()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let doubled: std::collections::HashSet<_> = all.iter().map(|p| p.double()).collect();
        assert_eq!(doubled.len(), 24);
    }

    fn permute_all(v: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
        if k == v.len() {
            out.push(Permutation::from_one_line(v).unwrap());
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute_all(v, k + 1, out);
            v.swap(k, i);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn inverse_cancels(p in arb_perm(9)) {
            prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        }

        #[test]
        fn doubled_permutations_are_even(p in arb_perm(7)) {
            prop_assert_eq!(p.double().parity(), 0);
        }

        #[test]
        fn cycle_type_is_conjugation_invariant(p in arb_perm(8), g in arb_perm(8)) {
            prop_assert_eq!(p.conjugate_by(&g).unwrap().cycle_type(), p.cycle_type());
        }

        #[test]
        fn disjoint_blocks_commute(a in arb_perm(3), b in arb_perm(4)) {
            let x = a.embed_block(0, 7).unwrap();
            let y = b.embed_block(3, 7).unwrap();
            prop_assert_eq!(x.compose(&y).unwrap(), y.compose(&x).unwrap());
        }

        #[test]
        fn text_forms_round_trip(p in arb_perm(10)) {
            prop_assert_eq!(Permutation::parse_one_line(&p.to_one_line_string()).unwrap(), p.clone());
            prop_assert_eq!(Permutation::parse_cycles(&p.to_string(), 10).unwrap(), p);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn parity_is_a_homomorphism(a in arb_perm(8), b in arb_perm(8)) {
            prop_assert_eq!(a.compose(&b).unwrap().parity(), a.parity() ^ b.parity());
        }
    }
}
