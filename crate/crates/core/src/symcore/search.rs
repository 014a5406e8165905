//! Automorphisms of edge-colored complete graphs by individualization and
//! refinement.
//!
//! Vertices are split by iterated color refinement; the search individualizes
//! the smallest vertex of the largest non-singleton cell and compares every
//! explored node against the first path by an invariant trace. Leaves whose
//! trace matches the first leaf yield candidate automorphisms, which are
//! verified against the color matrix before they are kept.

use std::collections::BTreeMap;

use crate::perm::{PermGroup, Permutation};

/// A complete graph on `n` vertices with a color on every ordered pair.
/// The diagonal color is the vertex color.
#[derive(Clone, Debug)]
pub struct ColoredGraph {
    n: usize,
    colors: Colors,
    vertex_colors: Vec<u32>,
    symmetric: bool,
}

#[derive(Clone, Debug)]
enum Colors {
    /// Row-major `n × n` color ids.
    Dense(Vec<u32>),
    /// Bit sets; the color of `(i, j)` is the size of their symmetric
    /// difference. Avoids storing `n²` colors for large cut spaces.
    XorWeight(Vec<Vec<u64>>),
}

impl ColoredGraph {
    /// `colors` is row-major `n × n`.
    pub fn new(n: usize, colors: Vec<u32>) -> Self {
        assert_eq!(colors.len(), n * n, "color matrix must be n × n");
        let symmetric = (0..n).all(|i| (0..i).all(|j| colors[i * n + j] == colors[j * n + i]));
        ColoredGraph {
            n,
            colors: Colors::Dense(colors),
            vertex_colors: vec![0; n],
            symmetric,
        }
    }

    /// The graph on bit sets colored by the weight of symmetric differences.
    pub fn from_xor_weights(sets: Vec<Vec<u64>>) -> Self {
        ColoredGraph {
            n: sets.len(),
            vertex_colors: vec![0; sets.len()],
            colors: Colors::XorWeight(sets),
            symmetric: true,
        }
    }

    /// Builds the graph from a color function on ordered pairs.
    pub fn from_fn(n: usize, color: impl Fn(usize, usize) -> u32) -> Self {
        let mut colors = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                colors.push(color(i, j));
            }
        }
        ColoredGraph::new(n, colors)
    }

    /// Adds an extra vertex coloring that automorphisms must preserve.
    pub fn with_vertex_colors(mut self, vertex_colors: Vec<u32>) -> Self {
        assert_eq!(vertex_colors.len(), self.n, "one color per vertex");
        self.vertex_colors = vertex_colors;
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn color(&self, i: usize, j: usize) -> u32 {
        match &self.colors {
            Colors::Dense(c) => c[i * self.n + j],
            Colors::XorWeight(sets) => sets[i]
                .iter()
                .zip(&sets[j])
                .map(|(a, b)| (a ^ b).count_ones())
                .sum(),
        }
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        let n = self.n;
        if p.degree() != n {
            return false;
        }
        let img = p.images();
        (0..n).all(|i| {
            self.vertex_colors[img[i]] == self.vertex_colors[i]
                && (0..n).all(|j| self.color(img[i], img[j]) == self.color(i, j))
        })
    }

    /// The full automorphism group, returned with a generating set found by
    /// the search.
    pub fn automorphism_group(&self) -> PermGroup {
        let n = self.n;
        if n <= 1 {
            return PermGroup::trivial(n);
        }
        let mut cells = self.initial_cells();
        let mut traces = vec![self.refine(&mut cells)];
        let mut path = vec![cells.clone()];
        let mut base = Vec::new();
        let mut targets = Vec::new();
        while let Some(members) = target_cell(&cells) {
            let b = members[0];
            base.push(b);
            targets.push(members);
            individualize(&mut cells, b);
            traces.push(self.refine(&mut cells));
            path.push(cells.clone());
        }
        let first_leaf = cells;

        let mut gens: Vec<Permutation> = Vec::new();
        for k in (0..base.len()).rev() {
            for &c in &targets[k] {
                if c == base[k] || in_orbit(n, &gens, base[k], c) {
                    continue;
                }
                let mut child = path[k].clone();
                individualize(&mut child, c);
                if self.refine(&mut child) != traces[k + 1] {
                    continue;
                }
                if let Some(p) = self.find_equivalent_leaf(child, k + 1, &traces, &first_leaf) {
                    gens.push(p);
                }
            }
        }
        PermGroup::new(n, &gens).expect("automorphisms share the graph's degree")
    }

    /// Depth-first search below a node for a leaf equivalent to the first
    /// leaf. Returns the automorphism mapping the first leaf to it.
    fn find_equivalent_leaf(
        &self,
        cells: Vec<u32>,
        depth: usize,
        traces: &[u64],
        first_leaf: &[u32],
    ) -> Option<Permutation> {
        let last = traces.len() - 1;
        match target_cell(&cells) {
            None => {
                if depth != last {
                    return None;
                }
                let mut by_cell = vec![0; self.n];
                for (v, &c) in cells.iter().enumerate() {
                    by_cell[c as usize] = v;
                }
                let images = first_leaf.iter().map(|&c| by_cell[c as usize]).collect();
                let p = Permutation::new(images).expect("discrete partitions give bijections");
                self.is_automorphism(&p).then_some(p)
            }
            Some(members) => {
                if depth >= last {
                    return None;
                }
                for x in members {
                    let mut child = cells.clone();
                    individualize(&mut child, x);
                    if self.refine(&mut child) != traces[depth + 1] {
                        continue;
                    }
                    if let Some(p) = self.find_equivalent_leaf(child, depth + 1, traces, first_leaf) {
                        return Some(p);
                    }
                }
                None
            }
        }
    }

    fn initial_cells(&self) -> Vec<u32> {
        let keys: Vec<(u32, u32)> = (0..self.n).map(|v| (self.vertex_colors[v], self.color(v, v))).collect();
        rank(&keys)
    }

    /// Refines `cells` until stable and returns an isomorphism-invariant
    /// hash of the refinement history. Cell ids are ranks of invariant keys,
    /// so they are comparable between branches.
    fn refine(&self, cells: &mut Vec<u32>) -> u64 {
        let n = self.n;
        let mut trace = mix(n as u64);
        let mut count = count_cells(cells);
        loop {
            let keys: Vec<(u32, u64)> = (0..n)
                .map(|v| {
                    let mut sig = 0u64;
                    for u in 0..n {
                        if u == v {
                            continue;
                        }
                        let mut h = mix(((cells[u] as u64) << 32) | self.color(v, u) as u64);
                        if !self.symmetric {
                            h = mix(h ^ self.color(u, v) as u64);
                        }
                        sig = sig.wrapping_add(h);
                    }
                    (cells[v], sig)
                })
                .collect();
            let mut multiplicity: BTreeMap<(u32, u64), u64> = BTreeMap::new();
            for k in &keys {
                *multiplicity.entry(*k).or_default() += 1;
            }
            for ((c, s), m) in &multiplicity {
                trace = mix(trace ^ mix(mix(*c as u64) ^ s) ^ m);
            }
            *cells = rank(&keys);
            let new_count = multiplicity.len();
            if new_count == count {
                return trace;
            }
            count = new_count;
        }
    }
}

/// The vertices of the largest non-singleton cell (lowest cell id on ties),
/// in increasing order.
fn target_cell(cells: &[u32]) -> Option<Vec<usize>> {
    let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in cells {
        *sizes.entry(c).or_default() += 1;
    }
    let mut best: Option<(u32, usize)> = None;
    for (&c, &s) in &sizes {
        if s > 1 && best.is_none_or(|(_, bs)| s > bs) {
            best = Some((c, s));
        }
    }
    let (target, _) = best?;
    Some((0..cells.len()).filter(|&v| cells[v] == target).collect())
}

/// Splits `x` off into its own cell, placed just before the rest of its old
/// cell.
fn individualize(cells: &mut Vec<u32>, x: usize) {
    let keys: Vec<(u32, bool)> = (0..cells.len()).map(|v| (cells[v], v != x)).collect();
    *cells = rank(&keys);
}

fn rank<K: Ord + Copy>(keys: &[K]) -> Vec<u32> {
    let mut distinct: Vec<K> = keys.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).expect("key present") as u32)
        .collect()
}

fn count_cells(cells: &[u32]) -> usize {
    let mut c = cells.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn in_orbit(n: usize, gens: &[Permutation], from: usize, to: usize) -> bool {
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(p) = stack.pop() {
        if p == to {
            return true;
        }
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    false
}

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
