use std::collections::HashMap;

use num_bigint::BigUint;

use super::gf2::GF2Matrix;
use super::graph::{class_t_check, Graph};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::symcore::ColoredGraph;

/// A set of edges as a bit vector over the graph's edge order.
pub type EdgeSet = Vec<u64>;

/// Default cap on the cut-space dimension for the admissible search.
pub const DEFAULT_CUT_DIM_CAP: usize = 14;
/// The cap cannot be raised beyond this.
pub const HARD_CUT_DIM_CAP: usize = 20;

fn empty_set(m: usize) -> EdgeSet {
    vec![0; m.div_ceil(64).max(1)]
}

fn weight(s: &EdgeSet) -> usize {
    s.iter().map(|w| w.count_ones() as usize).sum()
}

fn xor(a: &EdgeSet, b: &EdgeSet) -> EdgeSet {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

fn contains(s: &EdgeSet, e: usize) -> bool {
    s[e / 64] >> (e % 64) & 1 == 1
}

fn edge_ids(s: &EdgeSet, m: usize) -> Vec<usize> {
    (0..m).filter(|&e| contains(s, e)).collect()
}

/// `C(A)`: the edges with exactly one endpoint in `A`.
pub fn cut(g: &Graph, in_a: &[bool]) -> EdgeSet {
    let mut s = empty_set(g.edge_count());
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if in_a[a] != in_a[b] {
            s[e / 64] |= 1 << (e % 64);
        }
    }
    s
}

fn principal_cut(g: &Graph, v: usize) -> EdgeSet {
    let mut in_a = vec![false; g.vertex_count()];
    in_a[v] = true;
    cut(g, &in_a)
}

/// The cut space of a graph, with a basis of principal cuts `C({v})`.
#[derive(Clone, Debug)]
pub struct CutSpace {
    edge_count: usize,
    basis: Vec<EdgeSet>,
    basis_vertices: Vec<usize>,
}

impl CutSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[EdgeSet] {
        &self.basis
    }

    /// The vertices `v` whose cuts `C({v})` form the basis.
    pub fn basis_vertices(&self) -> &[usize] {
        &self.basis_vertices
    }

    /// All `2^dim` cut sets in Gray-code order; index 0 is `∅`.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<EdgeSet>> {
        let cap = cap.min(HARD_CUT_DIM_CAP);
        if self.dim() > cap {
            return Err(Error::DimensionTooLarge { dim: self.dim(), cap });
        }
        let mut out = Vec::with_capacity(1 << self.dim());
        out.push(empty_set(self.edge_count));
        for k in 1usize..1 << self.dim() {
            let flip = k.trailing_zeros() as usize;
            out.push(xor(&out[k - 1], &self.basis[flip]));
        }
        Ok(out)
    }
}

/// The cut space, with basis chosen greedily among `C({0}), C({1}), …`.
pub fn cut_space(g: &Graph) -> CutSpace {
    let m = g.edge_count();
    let mut reduced: Vec<(usize, EdgeSet)> = Vec::new();
    let mut basis = Vec::new();
    let mut basis_vertices = Vec::new();
    for v in 0..g.vertex_count() {
        let original = principal_cut(g, v);
        let mut r = original.clone();
        for (pivot, row) in &reduced {
            if contains(&r, *pivot) {
                r = xor(&r, row);
            }
        }
        if let Some(pivot) = (0..m).find(|&e| contains(&r, e)) {
            for (_, row) in reduced.iter_mut() {
                if contains(row, pivot) {
                    *row = xor(row, &r);
                }
            }
            reduced.push((pivot, r));
            basis.push(original);
            basis_vertices.push(v);
        }
    }
    CutSpace {
        edge_count: m,
        basis,
        basis_vertices,
    }
}

/// The `|E| × dim` matrix whose columns are the basis cut sets, so that
/// `{C x}` is the cut space and `diag_rep` of it gives the cut polytope.
pub fn cut_matrix(g: &Graph) -> GF2Matrix {
    let cs = cut_space(g);
    let rows: Vec<Vec<bool>> = (0..g.edge_count())
        .map(|e| cs.basis().iter().map(|b| contains(b, e)).collect())
        .collect();
    GF2Matrix::from_rows(&rows).expect("rectangular")
}

/// Permutations of the cut sets fixing `∅` and preserving `|S + T|`, on
/// the enumeration order of [`CutSpace::enumerate`].
pub fn admissible_perms(g: &Graph, cap: usize) -> Result<PermGroup> {
    let sets = cut_space(g).enumerate(cap)?;
    Ok(admissible_group_of(&sets))
}

fn admissible_group_of(sets: &[EdgeSet]) -> PermGroup {
    // ∅ is the only set of weight 0, so coloring by |S| fixes it.
    let sizes: Vec<u32> = sets.iter().map(|s| weight(s) as u32).collect();
    ColoredGraph::from_xor_weights(sets.to_vec())
        .with_vertex_colors(sizes)
        .automorphism_group()
}

/// Checks that `p` fixes `∅` and preserves `|S|`, `|S + T|` and `|S ∩ T|`.
pub fn verify_admissible(sets: &[EdgeSet], p: &Permutation) -> bool {
    let n = sets.len();
    if p.degree() != n || p.apply(0) != 0 {
        return false;
    }
    let inter = |a: &EdgeSet, b: &EdgeSet| -> usize { a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum() };
    (0..n).all(|i| {
        let (si, pi) = (&sets[i], &sets[p.apply(i)]);
        weight(pi) == weight(si)
            && (0..n).all(|j| {
                let (sj, pj) = (&sets[j], &sets[p.apply(j)]);
                weight(&xor(pi, pj)) == weight(&xor(si, sj)) && inter(pi, pj) == inter(si, sj)
            })
    })
}

/// The permutations of the cut sets induced by generators of `Aut(Γ)`.
pub fn induced_admissible_perms(g: &Graph, sets: &[EdgeSet]) -> Result<Vec<Permutation>> {
    let m = g.edge_count();
    let index: HashMap<&EdgeSet, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut out = Vec::new();
    for phi in g.automorphism_group().generators() {
        let edge_map: Vec<usize> = g
            .edges()
            .iter()
            .map(|&(a, b)| g.edge_index(phi.apply(a), phi.apply(b)).expect("automorphisms map edges to edges"))
            .collect();
        let images = sets
            .iter()
            .map(|s| {
                let mut t = empty_set(m);
                for e in edge_ids(s, m) {
                    let f = edge_map[e];
                    t[f / 64] |= 1 << (f % 64);
                }
                index
                    .get(&t)
                    .copied()
                    .ok_or_else(|| Error::Internal("automorphism image is not a cut set".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(Permutation::new(images)?);
    }
    Ok(out)
}

/// `|CΓ| · |admissible group|`, with the admissible group.
pub fn affine_symmetry_order_of_cut_polytope(g: &Graph, cap: usize) -> Result<(BigUint, PermGroup)> {
    if !g.is_connected() {
        return Err(Error::Precondition("graph must be connected".into()));
    }
    let cs = cut_space(g);
    let adm = admissible_perms(g, cap)?;
    Ok(((BigUint::from(1u32) << cs.dim()) * adm.order(), adm))
}

/// Cut-set sizes of a graph in class 𝒯, verified by enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSizeReport {
    pub vertices: usize,
    pub max_principal: usize,
    pub min_non_principal: usize,
    pub has_four_cycle_cut: bool,
    pub all_bipartite: bool,
}

/// Verifies that principal cuts have at most `n − 2` edges, all other
/// nonempty cuts at least `n − 1`, and that no cut set is a 4-cycle.
pub fn cut_size_bounds_check(g: &Graph, cap: usize) -> Result<CutSizeReport> {
    if !class_t_check(g).in_class() {
        return Err(Error::Precondition("graph is not in class 𝒯".into()));
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    let principal: Vec<EdgeSet> = (0..n).map(|v| principal_cut(g, v)).collect();
    let sets = cut_space(g).enumerate(cap)?;
    let max_principal = principal.iter().map(weight).max().unwrap_or(0);
    let min_non_principal = sets
        .iter()
        .skip(1)
        .filter(|s| !principal.contains(s))
        .map(weight)
        .min()
        .unwrap_or(usize::MAX);
    let report = CutSizeReport {
        vertices: n,
        max_principal,
        min_non_principal,
        has_four_cycle_cut: sets.iter().any(|s| g.is_four_cycle(&edge_ids(s, m))),
        all_bipartite: sets.iter().all(|s| g.is_bipartite_subgraph(&edge_ids(s, m))),
    };
    if report.max_principal + 2 > n {
        return Err(Error::BoundViolated(format!("principal cut of size {max_principal} exceeds n − 2")));
    }
    if report.min_non_principal + 1 < n {
        return Err(Error::BoundViolated(format!(
            "non-principal cut of size {min_non_principal} is below n − 1"
        )));
    }
    if report.has_four_cycle_cut {
        return Err(Error::BoundViolated("a cut set is a 4-cycle".into()));
    }
    if !report.all_bipartite {
        return Err(Error::Internal("a cut set contains an odd cycle".into()));
    }
    Ok(report)
}
