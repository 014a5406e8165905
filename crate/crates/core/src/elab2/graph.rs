use crate::error::{Error, Result};
use crate::perm::PermGroup;
use crate::symcore::ColoredGraph;

/// A simple undirected graph on `0..n`. Edges are stored as `(u, v)` with
/// `u < v`, sorted; the edge order is the coordinate order of edge sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b),
                    degree: n,
                });
            }
            if a == b {
                return Err(Error::Parse(format!("loop at vertex {a}")));
            }
            out.push((a.min(b), a.max(b)));
        }
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse("repeated edge".into()));
        }
        Ok(Graph { n, edges: out })
    }

    /// Parses an edge list with one `u v` pair per line (0-indexed). An
    /// optional first line holding a single integer gives the vertex count;
    /// otherwise it is one more than the largest endpoint.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("line {}: expected integers", k + 1)))?;
            match nums.as_slice() {
                [count] if n.is_none() && edges.is_empty() => n = Some(*count),
                [a, b] => edges.push((*a, *b)),
                _ => return Err(Error::Parse(format!("line {}: expected \"u v\"", k + 1))),
            }
        }
        let n = n.unwrap_or_else(|| edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0));
        Graph::new(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index(a, b).is_some()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn complement(&self) -> Graph {
        let edges: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|a| (a + 1..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| !self.has_edge(a, b))
            .collect();
        Graph { n: self.n, edges }
    }

    /// Component label of every vertex, numbered from 0 in vertex order.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &(a, b) in &self.edges {
                    let w = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        continue;
                    };
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.is_connected() && self.edges.len() == self.n - 1
    }

    /// Whether some set of at most `k` vertices touches every edge.
    pub fn has_vertex_cover_of_size(&self, k: usize) -> bool {
        fn search(edges: &[(usize, usize)], chosen: &mut Vec<usize>, k: usize) -> bool {
            let uncovered = edges.iter().find(|(a, b)| !chosen.contains(a) && !chosen.contains(b));
            match uncovered {
                None => true,
                Some(_) if chosen.len() == k => false,
                Some(&(a, b)) => {
                    // One endpoint of every edge is in any cover.
                    for v in [a, b] {
                        chosen.push(v);
                        let found = search(edges, chosen, k);
                        chosen.pop();
                        if found {
                            return true;
                        }
                    }
                    false
                }
            }
        }
        search(&self.edges, &mut Vec::new(), k)
    }

    /// Whether the edge subset (given by edge indices) has no odd cycle.
    pub fn is_bipartite_subgraph(&self, edge_ids: &[usize]) -> bool {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let s = side[v].expect("visited");
                for &e in edge_ids {
                    let (a, b) = self.edges[e];
                    let w = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        continue;
                    };
                    match side[w] {
                        None => {
                            side[w] = Some(!s);
                            stack.push(w);
                        }
                        Some(t) if t == s => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Whether the edge subset is a single cycle of length 4.
    pub fn is_four_cycle(&self, edge_ids: &[usize]) -> bool {
        if edge_ids.len() != 4 {
            return false;
        }
        let mut deg = vec![0usize; self.n];
        for &e in edge_ids {
            let (a, b) = self.edges[e];
            deg[a] += 1;
            deg[b] += 1;
        }
        let touched: Vec<usize> = (0..self.n).filter(|&v| deg[v] > 0).collect();
        // Four edges on four vertices of degree two form a single 4-cycle.
        touched.len() == 4 && touched.iter().all(|&v| deg[v] == 2)
    }

    /// The automorphism group, as permutations of the vertices.
    pub fn automorphism_group(&self) -> PermGroup {
        let degrees: Vec<u32> = (0..self.n).map(|v| self.degree(v) as u32).collect();
        ColoredGraph::from_fn(self.n, |a, b| u32::from(a != b && self.has_edge(a, b)))
            .with_vertex_colors(degrees)
            .automorphism_group()
    }
}

/// The complement of a tree: the path `v₁ – … – v_{n−1}` with one extra
/// leaf attached to `v₃`. Vertices `0..n−1` are the path, vertex `n−1` is
/// the leaf.
pub fn caterpillar_complement(n: usize) -> Result<Graph> {
    if n < 7 {
        return Err(Error::Precondition(format!("caterpillar needs at least 7 vertices, got {n}")));
    }
    let mut tree: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
    tree.push((2, n - 1));
    Ok(Graph::new(n, &tree)?.complement())
}

/// The three conditions defining class 𝒯.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassTCertificate {
    pub at_least_seven_vertices: bool,
    pub complement_is_tree: bool,
    /// The complement's edges cannot be covered by 3 vertices.
    pub cover_number_exceeds_three: bool,
}

impl ClassTCertificate {
    pub fn in_class(&self) -> bool {
        self.at_least_seven_vertices && self.complement_is_tree && self.cover_number_exceeds_three
    }
}

pub fn class_t_check(g: &Graph) -> ClassTCertificate {
    let complement = g.complement();
    ClassTCertificate {
        at_least_seven_vertices: g.vertex_count() >= 7,
        complement_is_tree: complement.is_tree(),
        cover_number_exceeds_three: !complement.has_vertex_cover_of_size(3),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn parse_formats() {
        let g = Graph::parse_edge_list("0 1\n1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        let g = Graph::parse_edge_list("5\n0 1\n# comment\n").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert!(Graph::parse_edge_list("0 0").is_err());
        assert!(Graph::parse_edge_list("0 1\n1 0").is_err());
        assert!(Graph::parse_edge_list("0 1 2").is_err());
    }

    #[test]
    fn trees_and_covers() {
        let path = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(path.is_tree());
        assert!(path.has_vertex_cover_of_size(2));
        assert!(!path.has_vertex_cover_of_size(1));
        // The 4-vertex path is self-complementary.
        assert!(path.complement().is_tree());
        let longer = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(!longer.complement().is_tree());
    }

    #[test]
    fn caterpillar_class_membership() {
        let seven = class_t_check(&caterpillar_complement(7).unwrap());
        assert_eq!(
            (seven.at_least_seven_vertices, seven.complement_is_tree, seven.cover_number_exceeds_three),
            (true, true, false)
        );
        for n in [8, 9, 10, 20] {
            assert!(class_t_check(&caterpillar_complement(n).unwrap()).in_class(), "n = {n}");
        }
        assert!(caterpillar_complement(6).is_err());
    }

    #[test]
    fn complete_graph_is_not_in_class() {
        let edges: Vec<(usize, usize)> = (0..7).flat_map(|a| (a + 1..7).map(move |b| (a, b))).collect();
        let k7 = Graph::new(7, &edges).unwrap();
        let cert = class_t_check(&k7);
        assert!(!cert.complement_is_tree);
        assert!(!cert.in_class());
    }

    #[test]
    fn caterpillar_trees_are_asymmetric() {
        for n in [7, 8, 9] {
            let tree = caterpillar_complement(n).unwrap().complement();
            assert_eq!(tree.automorphism_group().order(), BigUint::from(1u32));
        }
        let path = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(path.automorphism_group().order(), BigUint::from(2u32));
    }

    #[test]
    fn four_cycles_and_bipartiteness() {
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(c4.is_four_cycle(&[0, 1, 2, 3]));
        assert!(c4.is_bipartite_subgraph(&[0, 1, 2, 3]));
        let tri = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!tri.is_bipartite_subgraph(&[0, 1, 2]));
    }
}
