//! Finite permutation group machinery.
//!
//! Two order engines live here: [`closure`] enumerates every element (fine
//! up to a few hundred thousand elements) and [`StabilizerChain`] runs a
//! deterministic Schreier–Sims so orders like `2^126` never need enumeration.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const DEFAULT_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    degree: usize,
    generators: Vec<Permutation>,
    name: Option<String>,
}

impl GeneratingSet {
    /// An empty generator list is replaced by the identity.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let generators = if generators.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            generators
        };
        Ok(GeneratingSet {
            degree,
            generators,
            name: None,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// The same set with generator `index` removed.
    pub fn without(&self, index: usize) -> GeneratingSet {
        let mut gens = self.generators.clone();
        gens.remove(index);
        GeneratingSet::new(self.degree, gens).unwrap()
    }

    /// The union with further generators of the same degree.
    pub fn with_extra(&self, extra: &[Permutation]) -> Result<GeneratingSet> {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        GeneratingSet::new(self.degree, gens)
    }
}

/// An exhaustively enumerated group.
#[derive(Debug, Clone)]
pub struct GroupTable {
    degree: usize,
    /// Sorted by one-line form.
    elements: Vec<Permutation>,
    lookup: HashSet<Permutation>,
    origin: GeneratingSet,
}

impl GroupTable {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn origin(&self) -> &GeneratingSet {
        &self.origin
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, x.degree()));
        }
        Ok(self.lookup.contains(x))
    }

    pub fn is_subgroup_of(&self, other: &GroupTable) -> bool {
        self.degree == other.degree && self.elements.iter().all(|x| other.lookup.contains(x))
    }

    pub fn same_elements(&self, other: &GroupTable) -> bool {
        self.elements == other.elements
    }

    pub fn is_two_group(&self) -> bool {
        self.order().is_power_of_two()
    }

    /// One sorted one-line permutation per line.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for e in &self.elements {
            out.push_str(&e.to_one_line_string());
            out.push('\n');
        }
        out
    }

    pub fn intersection(&self, other: &GroupTable) -> Result<GroupTable> {
        let common: Vec<_> = self
            .elements
            .iter()
            .filter(|x| other.lookup.contains(x))
            .cloned()
            .collect();
        closure(&GeneratingSet::new(self.degree, common)?, DEFAULT_CAP)
    }
}

/// Breadth-first enumeration of `⟨gens⟩`.
pub fn closure(gens: &GeneratingSet, cap: usize) -> Result<GroupTable> {
    if cap == 0 {
        return Err(Error::CapExceeded { cap, partial: 0 });
    }
    let id = Permutation::identity(gens.degree);
    let useful: Vec<&Permutation> = gens
        .generators
        .iter()
        .filter(|g| !g.is_identity())
        .collect();
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut frontier = VecDeque::from([id]);
    while let Some(x) = frontier.pop_front() {
        for g in &useful {
            let y = g.compose_unchecked(&x);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded {
                        cap,
                        partial: seen.len(),
                    });
                }
                seen.insert(y.clone());
                frontier.push_back(y);
            }
        }
    }
    let mut elements: Vec<_> = seen.iter().cloned().collect();
    elements.sort_unstable();
    Ok(GroupTable {
        degree: gens.degree,
        elements,
        lookup: seen,
        origin: gens.clone(),
    })
}

/// The full group given as an element list already known to be closed.
fn table_from_generators(degree: usize, gens: Vec<Permutation>) -> Result<GroupTable> {
    closure(&GeneratingSet::new(degree, gens)?, DEFAULT_CAP)
}

struct Level {
    base: usize,
    /// Generators fixing all earlier base points.
    gens: Vec<Permutation>,
    /// `transversal[p] = (u, u⁻¹)` with `u(base) = p`.
    transversal: Vec<Option<(Permutation, Permutation)>>,
    orbit: Vec<usize>,
    /// Schreier pairs (orbit index, generator index) already sifted.
    checked: HashSet<(usize, usize)>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = vec![None; degree];
        let id = Permutation::identity(degree);
        transversal[base] = Some((id.clone(), id));
        Level {
            base,
            gens: Vec::new(),
            transversal,
            orbit: vec![base],
            checked: HashSet::new(),
        }
    }

    fn extend_orbit(&mut self) {
        let mut i = 0;
        // every orbit point is re-expanded with every generator; new points are appended
        while i < self.orbit.len() {
            let p = self.orbit[i];
            for g in &self.gens {
                let q = g.apply0(p);
                if self.transversal[q].is_none() {
                    let u = g.compose_unchecked(&self.transversal[p].as_ref().unwrap().0);
                    let inv = u.inverse();
                    self.transversal[q] = Some((u, inv));
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set built by deterministic Schreier–Sims.
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(gens: &GeneratingSet) -> Self {
        let mut chain = StabilizerChain {
            degree: gens.degree,
            levels: Vec::new(),
        };
        for g in &gens.generators {
            let (residue, depth) = chain.sift_from(g.clone(), 0);
            if !residue.is_identity() {
                chain.add_residue(residue, depth);
            }
        }
        chain.complete();
        chain
    }

    /// Adds a non-identity element fixing base points `0..depth` to levels `0..=depth`
    /// (creating a new level when it fixes the whole base).
    fn add_residue(&mut self, h: Permutation, depth: usize) {
        if depth == self.levels.len() {
            let base = h.first_moved0().expect("residue is not the identity");
            self.levels.push(Level::new(self.degree, base));
        }
        for l in 0..=depth {
            self.levels[l].gens.push(h.clone());
            self.levels[l].extend_orbit();
        }
    }

    fn sift_from(&self, mut x: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let p = x.apply0(level.base);
            match &level.transversal[p] {
                Some((_, u_inv)) => x = u_inv.compose_unchecked(&x),
                None => return (x, l),
            }
        }
        (x, self.levels.len())
    }

    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let l = i as usize;
            let mut oi = 0;
            while oi < self.levels[l].orbit.len() {
                let mut gi = 0;
                while gi < self.levels[l].gens.len() {
                    if self.levels[l].checked.insert((oi, gi)) {
                        let level = &self.levels[l];
                        let p = level.orbit[oi];
                        let g = &level.gens[gi];
                        let q = g.apply0(p);
                        let u_p = &level.transversal[p].as_ref().unwrap().0;
                        let u_q_inv = &level.transversal[q].as_ref().unwrap().1;
                        let schreier = u_q_inv.compose_unchecked(&g.compose_unchecked(u_p));
                        let (residue, depth) = self.sift_from(schreier, l + 1);
                        if !residue.is_identity() {
                            self.add_residue(residue, depth);
                            i = depth as isize;
                            continue 'outer;
                        }
                    }
                    gi += 1;
                }
                oi += 1;
            }
            i -= 1;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Base points, 1-based.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base + 1).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels
            .first()
            .map(|l| l.gens.as_slice())
            .unwrap_or(&[])
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, x.degree()));
        }
        Ok(self.sift_from(x.clone(), 0).0.is_identity())
    }
}

/// Exact order of `⟨gens⟩` through a stabilizer chain.
pub fn order_schreier_sims(gens: &GeneratingSet) -> BigUint {
    StabilizerChain::new(gens).order()
}

/// Whether `⟨h_gens⟩` is normal in `g`.
pub fn is_normal(h_gens: &GeneratingSet, g: &GroupTable) -> Result<bool> {
    if h_gens.degree != g.degree {
        return Err(Error::DegreeMismatch(g.degree, h_gens.degree));
    }
    let h = closure(h_gens, DEFAULT_CAP)?;
    if !h.is_subgroup_of(g) {
        return Err(Error::NotASubgroup);
    }
    for x in &g.elements {
        let x_inv = x.inverse();
        for s in &h_gens.generators {
            let c = x.compose_unchecked(s).compose_unchecked(&x_inv);
            if !h.lookup.contains(&c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Smallest normal subgroup of `g` containing `seeds`.
fn normal_closure(g: &GroupTable, seeds: Vec<Permutation>) -> Result<GroupTable> {
    let mut gens = seeds;
    loop {
        let n = table_from_generators(g.degree, gens.clone())?;
        let mut added = false;
        for x in g.origin.generators.iter() {
            let x_inv = x.inverse();
            for s in gens.clone() {
                let c = x.compose_unchecked(&s).compose_unchecked(&x_inv);
                if !n.lookup.contains(&c) && !gens.contains(&c) {
                    gens.push(c);
                    added = true;
                }
            }
        }
        if !added {
            return Ok(n);
        }
    }
}

/// `[G, G]`, the normal closure of the commutators of the generators.
pub fn derived_subgroup(g: &GroupTable) -> Result<GroupTable> {
    let gens = g.origin.generators();
    let mut seeds = Vec::new();
    for a in gens {
        for b in gens {
            let c = a.commutator(b)?;
            if !c.is_identity() && !seeds.contains(&c) {
                seeds.push(c);
            }
        }
    }
    normal_closure(g, seeds)
}

/// `G²`, generated by the squares of all elements.
pub fn squares_subgroup(g: &GroupTable) -> Result<GroupTable> {
    let mut seeds: HashSet<Permutation> = HashSet::new();
    for x in &g.elements {
        let sq = x.compose_unchecked(x);
        if !sq.is_identity() {
            seeds.insert(sq);
        }
    }
    let mut seeds: Vec<_> = seeds.into_iter().collect();
    seeds.sort_unstable();
    table_from_generators(g.degree, seeds)
}

/// `Φ(G) = G²[G, G]` for a 2-group; equal to `G²` there.
pub fn frattini_2group(g: &GroupTable) -> Result<GroupTable> {
    if !g.is_two_group() {
        return Err(Error::NotATwoGroup(g.order()));
    }
    let squares = squares_subgroup(g)?;
    let derived = derived_subgroup(g)?;
    let mut gens = squares.elements.clone();
    gens.extend(derived.elements.iter().cloned());
    let phi = table_from_generators(g.degree, gens)?;
    assert!(
        phi.same_elements(&squares),
        "derived subgroup of a 2-group escaped its squares subgroup"
    );
    Ok(phi)
}

/// Burnside basis rank `log₂ |G / Φ(G)|`.
pub fn rank(g: &GroupTable) -> Result<usize> {
    let phi = frattini_2group(g)?;
    Ok((g.order() / phi.order()).trailing_zeros() as usize)
}

/// Length of the derived series down to the trivial group, `None` if it stalls.
pub fn derived_length(g: &GroupTable) -> Result<Option<usize>> {
    let mut current = g.clone();
    let mut length = 0;
    while !current.is_trivial() {
        let next = derived_subgroup(&current)?;
        if next.order() == current.order() {
            return Ok(None);
        }
        current = next;
        length += 1;
    }
    Ok(Some(length))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientStructure {
    pub cosets: usize,
    /// Least `m` with `x^m ∈ N` for every `x ∈ G`.
    pub exponent: u64,
}

pub fn quotient_structure(g: &GroupTable, n: &GroupTable) -> Result<QuotientStructure> {
    if !n.is_subgroup_of(g) {
        return Err(Error::NotASubgroup);
    }
    if !is_normal(&n.origin, g)? {
        return Err(Error::NotNormal);
    }
    let mut exponent = 1u64;
    for x in &g.elements {
        let mut m = 1u64;
        let mut power = x.clone();
        while !n.lookup.contains(&power) {
            power = power.compose_unchecked(x);
            m += 1;
        }
        exponent = num_integer::lcm(exponent, m);
    }
    Ok(QuotientStructure {
        cosets: g.order() / n.order(),
        exponent,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReport {
    pub name: String,
    pub degree: usize,
    pub order: String,
    pub engine: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn gens(n: usize, list: &[&str]) -> GeneratingSet {
        GeneratingSet::new(n, list.iter().map(|s| cyc(n, s)).collect()).unwrap()
    }

    fn symmetric(n: usize) -> GeneratingSet {
        let cycle: Vec<usize> = (1..=n).collect();
        GeneratingSet::new(
            n,
            vec![
                cyc(n, "(1 2)"),
                Permutation::from_cycles(n, &[cycle]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn closure_of_transposition() {
        let t = closure(&gens(2, &["(1 2)"]), 10).unwrap();
        assert_eq!(t.order(), 2);
        assert!(t.contains(&Permutation::identity(2)).unwrap());
        assert_eq!(t.export(), "1,2\n2,1\n");
    }

    #[test]
    fn closure_reports_cap() {
        let err = closure(&symmetric(5), 50).unwrap_err();
        assert_eq!(
            err,
            Error::CapExceeded {
                cap: 50,
                partial: 50
            }
        );
        assert_eq!(closure(&symmetric(5), 120).unwrap().order(), 120);
    }

    #[test]
    fn empty_generator_list_is_trivial() {
        let g = GeneratingSet::new(4, vec![]).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(closure(&g, 1).unwrap().order(), 1);
        assert_eq!(order_schreier_sims(&g), BigUint::one());
    }

    #[test]
    fn chain_orders_of_known_groups() {
        assert_eq!(
            order_schreier_sims(&gens(2, &["(1 2)"])),
            BigUint::from(2u32)
        );
        for n in 2..=7 {
            let expected: u64 = (1..=n as u64).product();
            assert_eq!(order_schreier_sims(&symmetric(n)), BigUint::from(expected));
            assert_eq!(
                closure(&symmetric(n), DEFAULT_CAP).unwrap().order() as u64,
                expected
            );
        }
        // dihedral group of the square
        let d4 = gens(4, &["(1 2 3 4)", "(1 3)"]);
        assert_eq!(order_schreier_sims(&d4), BigUint::from(8u32));
        let s12 = symmetric(12);
        assert_eq!(order_schreier_sims(&s12), BigUint::from(479_001_600u64));
    }

    #[test]
    fn chain_membership_agrees_with_table() {
        let d4 = gens(4, &["(1 2 3 4)", "(1 3)"]);
        let table = closure(&d4, 100).unwrap();
        let chain = StabilizerChain::new(&d4);
        let s4 = closure(&symmetric(4), 100).unwrap();
        for x in s4.elements() {
            assert_eq!(chain.contains(x).unwrap(), table.contains(x).unwrap());
        }
        assert_eq!(chain.transversal_sizes().iter().product::<usize>(), 8);
        assert!(chain.contains(&Permutation::identity(5)).is_err());
        for s in chain.strong_generators() {
            assert!(chain.contains(s).unwrap());
        }
    }

    #[test]
    fn normality() {
        let s4 = closure(&symmetric(4), 100).unwrap();
        let v4 = gens(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert!(is_normal(&v4, &s4).unwrap());
        assert!(!is_normal(&gens(4, &["(1 2)"]), &s4).unwrap());
        assert!(is_normal(&GeneratingSet::new(4, vec![]).unwrap(), &s4).unwrap());
        let d4 = closure(&gens(4, &["(1 2 3 4)", "(1 3)"]), 100).unwrap();
        assert_eq!(
            is_normal(&gens(4, &["(1 2)"]), &d4),
            Err(Error::NotASubgroup)
        );
    }

    #[test]
    fn derived_and_frattini_of_d4() {
        let d4 = closure(&gens(4, &["(1 2 3 4)", "(1 3)"]), 100).unwrap();
        let derived = derived_subgroup(&d4).unwrap();
        assert_eq!(derived.order(), 2);
        let phi = frattini_2group(&d4).unwrap();
        assert_eq!(phi.order(), 2);
        assert!(derived.is_subgroup_of(&phi));
        assert_eq!(rank(&d4).unwrap(), 2);
        assert_eq!(derived_length(&d4).unwrap(), Some(2));
        let q = quotient_structure(&d4, &phi).unwrap();
        assert_eq!(
            q,
            QuotientStructure {
                cosets: 4,
                exponent: 2
            }
        );
        assert_eq!(
            quotient_structure(&d4, &d4).unwrap(),
            QuotientStructure {
                cosets: 1,
                exponent: 1
            }
        );
    }

    #[test]
    fn derived_series_of_s4_and_a5() {
        let s4 = closure(&symmetric(4), 100).unwrap();
        assert_eq!(derived_length(&s4).unwrap(), Some(3));
        let trivial = closure(&GeneratingSet::new(3, vec![]).unwrap(), 1).unwrap();
        assert_eq!(derived_length(&trivial).unwrap(), Some(0));
        let a5 = closure(&gens(5, &["(1 2 3)", "(1 2 3 4 5)"]), 100).unwrap();
        assert_eq!(a5.order(), 60);
        assert_eq!(derived_length(&a5).unwrap(), None);
        assert_eq!(frattini_2group(&a5).unwrap_err(), Error::NotATwoGroup(60));
    }

    #[test]
    fn quotient_requires_normality() {
        let s4 = closure(&symmetric(4), 100).unwrap();
        let h = closure(&gens(4, &["(1 2)"]), 10).unwrap();
        assert_eq!(quotient_structure(&s4, &h), Err(Error::NotNormal));
        let a4 = derived_subgroup(&s4).unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(
            quotient_structure(&s4, &a4).unwrap(),
            QuotientStructure {
                cosets: 2,
                exponent: 2
            }
        );
    }
}
