//! Permutations of `{0,…,n−1}` and permutation groups via Schreier–Sims.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// A bijection of `{0,…,n−1}`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` is a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, degree: n });
            }
            if seen[i] {
                return Err(Error::Parse(format!("image {i} repeated, not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Parses 1-indexed cycle notation such as `"(1 4 2 3)(5 6)"`; `"()"` is
    /// the identity.
    pub fn from_cycles(n: usize, text: &str) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let bad = |msg: &str| Error::Parse(format!("cycle notation {text:?}: {msg}"));
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = open.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let cycle: Vec<usize> = open[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<usize>() {
                    Ok(k) if k >= 1 && k <= n => Ok(k - 1),
                    _ => Err(bad("points must be integers in 1..=n")),
                })
                .collect::<Result<_>>()?;
            for (k, &p) in cycle.iter().enumerate() {
                if seen[p] {
                    return Err(bad("point appears twice"));
                }
                seen[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
            rest = open[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &j)| i != j)
    }

    /// 1-indexed cycle notation, fixed points omitted.
    pub fn to_cycles(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push((p + 1).to_string());
                p = self.images[p];
            }
            out.push_str(&format!("({})", cycle.join(" ")));
        }
        if out.is_empty() {
            "()".to_string()
        } else {
            out
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycles())
    }
}

/// One level of the stabilizer chain: the base point, the strong generators
/// fixing all earlier base points, and a transversal `u_β` with `u_β(b) = β`.
#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(point: usize, degree: usize, gens: Vec<Permutation>) -> Self {
        let mut level = Level {
            point,
            gens,
            transversal: vec![None; degree],
            orbit: Vec::new(),
        };
        level.recompute_orbit();
        level
    }

    fn recompute_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.point] = Some(Permutation::identity(degree));
        self.orbit = vec![self.point];
        let mut k = 0;
        while k < self.orbit.len() {
            let beta = self.orbit[k];
            let u = self.transversal[beta].clone().expect("orbit point has a transversal element");
            for s in &self.gens {
                let img = s.apply(beta);
                if self.transversal[img].is_none() {
                    self.transversal[img] = Some(s.compose(&u));
                    self.orbit.push(img);
                }
            }
            k += 1;
        }
    }
}

/// A permutation group with an eagerly built base and strong generating set.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    /// The group generated by `gens` acting on `degree` points.
    pub fn new(degree: usize, gens: &[Permutation]) -> Result<Self> {
        Self::with_base_prefix(degree, gens, &[])
    }

    /// Like [`PermGroup::new`] but the base starts with `prefix`.
    pub fn with_base_prefix(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        for &p in prefix {
            if p >= degree {
                return Err(Error::IndexOutOfRange { index: p, degree });
            }
        }
        let mut generators: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !generators.contains(g) {
                generators.push(g.clone());
            }
        }
        let mut group = PermGroup {
            degree,
            generators: generators.clone(),
            levels: Vec::new(),
        };
        group.schreier_sims(generators, prefix);
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    /// The full symmetric group on `degree` points.
    pub fn symmetric(degree: usize) -> Self {
        if degree < 2 {
            return Self::trivial(degree);
        }
        let mut swap: Vec<usize> = (0..degree).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..degree).map(|i| (i + 1) % degree).collect();
        let gens = [Permutation { images: swap }, Permutation { images: cycle }];
        Self::new(degree, &gens).expect("valid generators")
    }

    /// Builds the chain. Follows the deterministic textbook variant: the
    /// Schreier generators of level `i` are sifted through the levels below,
    /// and any residue becomes a new strong generator.
    fn schreier_sims(&mut self, gens: Vec<Permutation>, prefix: &[usize]) {
        let degree = self.degree;
        let mut base: Vec<usize> = prefix.to_vec();
        for s in &gens {
            if base.iter().all(|&b| s.apply(b) == b) {
                base.push(s.first_moved_point().expect("identity filtered out"));
            }
        }
        let mut strong = gens;
        self.levels = base
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let fixing: Vec<Permutation> = strong
                    .iter()
                    .filter(|s| base[..i].iter().all(|&p| s.apply(p) == p))
                    .cloned()
                    .collect();
                Level::new(b, degree, fixing)
            })
            .collect();

        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            let mut residue = None;
            'search: for k in 0..self.levels[iu].orbit.len() {
                let beta = self.levels[iu].orbit[k];
                let u_beta = self.levels[iu].transversal[beta].clone().expect("orbit point");
                for s in &self.levels[iu].gens {
                    let img = s.apply(beta);
                    let u_img = self.levels[iu].transversal[img].as_ref().expect("orbit closed");
                    let schreier = u_img.inverse().compose(&s.compose(&u_beta));
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip(&schreier, iu + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        residue = Some((h, j));
                        break 'search;
                    }
                }
            }
            match residue {
                None => i -= 1,
                Some((h, j)) => {
                    strong.push(h.clone());
                    if j == self.levels.len() {
                        let p = h.first_moved_point().expect("nontrivial residue");
                        self.levels.push(Level::new(p, degree, Vec::new()));
                    }
                    for level in &mut self.levels[iu + 1..=j] {
                        level.gens.push(h.clone());
                        level.recompute_orbit();
                    }
                    i = j as isize;
                }
            }
        }
    }

    /// Sifts `g` through the chain starting at level `from`. Returns the
    /// residue and the level at which sifting stopped (`levels.len()` when it
    /// went all the way through).
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.point);
            match &level.transversal[beta] {
                None => return (h, j),
                Some(u) => h = u.inverse().compose(&h),
            }
        }
        (h, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The (nonidentity, deduplicated) generators the group was built from.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Exact order: the product of the basic orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Order as `u64` when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(self.order()).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    /// Membership by sifting.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        let (h, j) = self.strip(p, 0);
        Ok(j == self.levels.len() && h.is_identity())
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The subgroup fixing point `i`.
    pub fn point_stabilizer(&self, i: usize) -> Result<PermGroup> {
        if i >= self.degree {
            return Err(Error::IndexOutOfRange {
                index: i,
                degree: self.degree,
            });
        }
        let rebased = PermGroup::with_base_prefix(self.degree, &self.strong_generators(), &[i])?;
        let gens = rebased.levels.get(1).map(|l| l.gens.clone()).unwrap_or_default();
        PermGroup::new(self.degree, &gens)
    }

    fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// The orbit of `i`, sorted.
    pub fn orbit(&self, i: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[i] = true;
        let mut queue = VecDeque::from([i]);
        let mut out = vec![i];
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    out.push(q);
                    queue.push_back(q);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All elements, when the order is at most `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        match self.order_u64() {
            Some(n) if n <= cap as u64 => {}
            _ => return Err(Error::ResourceCap(format!("group order exceeds {cap}"))),
        }
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &beta in &level.orbit {
                let u = level.transversal[beta].as_ref().expect("orbit point");
                for g in &out {
                    next.push(u.compose(g));
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// The group generated by `self` and `other`.
    pub fn join(&self, other: &PermGroup) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        PermGroup::new(self.degree, &gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    #[test]
    fn composition_applies_right_first() {
        let a = perm(&[1, 0, 2]);
        let b = perm(&[0, 2, 1]);
        assert_eq!(a.compose(&b).images(), &[1, 2, 0]);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn cycles_round_trip() {
        let p = Permutation::from_cycles(5, "(1 4 2 3)").unwrap();
        assert_eq!(p.images(), &[3, 2, 0, 1, 4]);
        assert_eq!(p.to_cycles(), "(1 4 2 3)");
        assert!(Permutation::from_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Permutation::from_cycles(3, "()").unwrap().is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
    }

    #[test]
    fn eight_cycle() {
        let c = Permutation::from_cycles(8, "(1 2 3 4 5 6 7 8)").unwrap();
        assert_eq!(PermGroup::new(8, &[c]).unwrap().order(), BigUint::from(8u32));
    }

    #[test]
    fn sym4_from_transposition_and_four_cycle() {
        let t = Permutation::from_cycles(4, "(1 2)").unwrap();
        let c = Permutation::from_cycles(4, "(1 2 3 4)").unwrap();
        let g = PermGroup::new(4, &[t, c]).unwrap();
        assert_eq!(g.order(), BigUint::from(24u32));
        assert_eq!(g.point_stabilizer(2).unwrap().order(), BigUint::from(6u32));
    }

    #[test]
    fn two_overlapping_transpositions() {
        let a = Permutation::from_cycles(3, "(1 2)").unwrap();
        let b = Permutation::from_cycles(3, "(2 3)").unwrap();
        assert_eq!(PermGroup::new(3, &[a, b]).unwrap().order(), BigUint::from(6u32));
    }

    #[test]
    fn trivial_and_symmetric() {
        assert_eq!(PermGroup::trivial(5).order(), BigUint::one());
        assert_eq!(PermGroup::symmetric(8).order(), BigUint::from(40320u32));
        assert!(PermGroup::trivial(3).contains(&Permutation::identity(3)).unwrap());
    }

    #[test]
    fn alternating_excludes_odd() {
        let gens: Vec<Permutation> = ["(1 2 3)", "(2 3 4)", "(3 4 5)"]
            .iter()
            .map(|c| Permutation::from_cycles(5, c).unwrap())
            .collect();
        let a5 = PermGroup::new(5, &gens).unwrap();
        assert_eq!(a5.order(), BigUint::from(60u32));
        assert!(!a5.contains(&Permutation::from_cycles(5, "(1 2)").unwrap()).unwrap());
        assert!(a5.contains(&Permutation::from_cycles(5, "(1 2)(3 4)").unwrap()).unwrap());
    }

    #[test]
    fn wreath_product_c2_s4() {
        // Blocks {1,2},{3,4},{5,6},{7,8}: swaps inside blocks, blocks permuted.
        let gens = [
            Permutation::from_cycles(8, "(1 2)").unwrap(),
            Permutation::from_cycles(8, "(1 3)(2 4)").unwrap(),
            Permutation::from_cycles(8, "(1 3 5 7)(2 4 6 8)").unwrap(),
        ];
        assert_eq!(PermGroup::new(8, &gens).unwrap().order(), BigUint::from(384u32));
    }

    #[test]
    fn elements_enumerates_whole_group() {
        let g = PermGroup::symmetric(4);
        let mut els = g.elements(100).unwrap();
        els.sort();
        els.dedup();
        assert_eq!(els.len(), 24);
        assert!(g.elements(10).is_err());
    }

    #[test]
    fn degree_mismatch_is_reported() {
        let p = Permutation::identity(3);
        assert!(PermGroup::new(4, std::slice::from_ref(&p)).is_err());
        assert!(PermGroup::trivial(4).contains(&p).is_err());
        assert!(PermGroup::trivial(4).point_stabilizer(4).is_err());
    }
}
