//! Finite rational matrix groups, orbit polytopes and their affine
//! symmetries, and the generic symmetry group over ℚ(X).
//!
//! Symmetries are reported as permutations of the group elements, in the
//! element order of [`MatrixGroup`]. For an orbit family centered at the
//! barycenter, `W_{g,h} = f(g⁻¹h)` with `f(g) = uᵗ Q⁻¹ g u`, so only the
//! `|G|` values of `f` are ever computed.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::{Matrix, MultiPoly, Rational, Ring};
use crate::perm::{PermGroup, Permutation};
use crate::symcore::{self, intern, ColoredGraph, VectorFamily};

/// Default bound on the order of a closed matrix group.
pub const DEFAULT_MAX_ORDER: usize = 10_000;

/// A finite group of invertible rational matrices with its multiplication
/// table. Element 0 is the identity; the rest follow in breadth-first order
/// of left multiplication by the generators.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    dim: usize,
    elements: Vec<Matrix<Rational>>,
    index: HashMap<Matrix<Rational>, usize>,
    table: Vec<usize>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

impl MatrixGroup {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Matrix<Rational> {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Matrix<Rational>] {
        &self.elements
    }

    pub fn index_of(&self, m: &Matrix<Rational>) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of `g_i g_j`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order() + j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    /// `g_i · v`.
    pub fn apply(&self, i: usize, v: &[Rational]) -> Vec<Rational> {
        self.elements[i].mul_vec(v)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..i).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Indices of the central elements.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| self.generators.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// `E₁ = (1/|G|) Σ g`, the projection onto the fixed space.
    pub fn averaging_operator(&self) -> Matrix<Rational> {
        let sum = self
            .elements
            .iter()
            .fold(Matrix::zeros(self.dim, self.dim), |acc, g| acc.add(g));
        sum.scale(&Rational::new(1, self.order() as i64))
    }

    /// The permutation `a ↦ g_h a` of the element indices.
    pub fn left_multiplication(&self, h: usize) -> Permutation {
        Permutation::new((0..self.order()).map(|a| self.mul(h, a)).collect()).expect("row of a group table")
    }

    /// The permutation `a ↦ a g_h⁻¹` of the element indices.
    pub fn right_multiplication(&self, h: usize) -> Permutation {
        let hi = self.inverse(h);
        Permutation::new((0..self.order()).map(|a| self.mul(a, hi)).collect()).expect("column of a group table")
    }

    /// The permutation `a ↦ a⁻¹`.
    pub fn inversion(&self) -> Permutation {
        Permutation::new(self.inverses.clone()).expect("inversion is a bijection")
    }

    /// The complete graph on the elements with color `c(g⁻¹h)` on `(g, h)`,
    /// where `class` assigns a color to every element.
    pub fn quotient_colored_graph(&self, class: &[u32]) -> ColoredGraph {
        ColoredGraph::from_fn(self.order(), |g, h| class[self.mul(self.inverse(g), h)])
    }
}

/// Closes `generators` under multiplication.
pub fn close_group(dim: usize, generators: &[Matrix<Rational>], max_order: usize) -> Result<MatrixGroup> {
    for g in generators {
        if g.rows() != dim || g.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "generator is {}×{}, expected {dim}×{dim}",
                g.rows(),
                g.cols()
            )));
        }
        if g.det().is_zero() {
            return Err(Error::Precondition("generator is not invertible".into()));
        }
    }
    let identity = Matrix::identity(dim);
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0)]);
    let mut k = 0;
    while k < elements.len() {
        for s in generators {
            let y = s.mul(&elements[k]);
            if !index.contains_key(&y) {
                if elements.len() == max_order {
                    return Err(Error::OrderExceeded(max_order));
                }
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
        k += 1;
    }
    let generators = generators.iter().map(|g| index[g]).collect();
    finish_group(dim, elements, index, generators)
}

/// A group given by its full element list, kept in the given order. The
/// first element must be the identity.
pub fn group_from_elements(dim: usize, elements: Vec<Matrix<Rational>>, generators: Vec<usize>) -> Result<MatrixGroup> {
    if elements.first() != Some(&Matrix::identity(dim)) {
        return Err(Error::Precondition("element list must start with the identity".into()));
    }
    let mut index = HashMap::new();
    for (i, m) in elements.iter().enumerate() {
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::DimensionMismatch(format!("element {i} is not {dim}×{dim}")));
        }
        if index.insert(m.clone(), i).is_some() {
            return Err(Error::Precondition(format!("element {i} is repeated")));
        }
    }
    if let Some(&bad) = generators.iter().find(|&&g| g >= elements.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            degree: elements.len(),
        });
    }
    finish_group(dim, elements, index, generators)
}

fn finish_group(
    dim: usize,
    elements: Vec<Matrix<Rational>>,
    index: HashMap<Matrix<Rational>, usize>,
    generators: Vec<usize>,
) -> Result<MatrixGroup> {
    let n = elements.len();
    let mut table = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = *index
                .get(&elements[i].mul(&elements[j]))
                .ok_or_else(|| Error::Precondition("element list is not closed under products".into()))?;
        }
    }
    let inverses = (0..n)
        .map(|i| (0..n).find(|&j| table[i * n + j] == 0).expect("finite group has inverses"))
        .collect();
    Ok(MatrixGroup {
        dim,
        elements,
        index,
        table,
        inverses,
        generators,
    })
}

fn check_point(g: &MatrixGroup, v: &[Rational]) -> Result<()> {
    if v.len() != g.dim() {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, group acts on dimension {}",
            v.len(),
            g.dim()
        )));
    }
    Ok(())
}

/// `E₁v`, the barycenter of the orbit polytope.
pub fn barycenter(g: &MatrixGroup, v: &[Rational]) -> Vec<Rational> {
    g.averaging_operator().mul_vec(v)
}

/// The family `(g v)_{g ∈ G}`.
pub fn orbit_family(g: &MatrixGroup, v: &[Rational]) -> VectorFamily<Rational> {
    let columns: Vec<Vec<Rational>> = (0..g.order()).map(|i| g.apply(i, v)).collect();
    VectorFamily::from_vectors(g.dim(), &columns)
}

/// The orbit family translated so the barycenter sits at the origin.
pub fn centered_orbit_family(g: &MatrixGroup, v: &[Rational]) -> VectorFamily<Rational> {
    orbit_family(g, &centered(g, v))
}

fn centered(g: &MatrixGroup, v: &[Rational]) -> Vec<Rational> {
    let c = barycenter(g, v);
    v.iter().zip(&c).map(|(a, b)| a.sub(b)).collect()
}

/// Whether the orbit affinely spans the space.
pub fn is_generating_point(g: &MatrixGroup, v: &[Rational]) -> bool {
    v.len() == g.dim() && centered_orbit_family(g, v).spans()
}

/// Indices of the elements fixing `v`.
pub fn stabilizer_in_group(g: &MatrixGroup, v: &[Rational]) -> Vec<usize> {
    (0..g.order()).filter(|&i| g.apply(i, v) == v).collect()
}

/// `f(g) = uᵗ Q⁻¹ g u` for the centered point `u`, indexed by element.
pub fn affine_orbit_function(g: &MatrixGroup, v: &[Rational]) -> Result<Vec<Rational>> {
    check_point(g, v)?;
    let u = centered(g, v);
    orbit_function_of(g, &u).ok_or(Error::NotGenerating)
}

/// `f(g) = vᵗ Q⁻¹ g v` without centering, `None` when `Q` is singular.
pub(crate) fn orbit_function_of(g: &MatrixGroup, v: &[Rational]) -> Option<Vec<Rational>> {
    let family = orbit_family(g, v);
    let q_inv = symcore::gram(&family).inverse()?;
    let row = q_inv.mul_vec(v);
    Some(
        (0..g.order())
            .map(|i| {
                let gv = family.vector(i);
                row.iter().zip(&gv).fold(Rational::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect(),
    )
}

/// The affine symmetry group of `P(G, v)` as permutations of `G`.
pub fn affsym_group(g: &MatrixGroup, v: &[Rational]) -> Result<PermGroup> {
    let f = affine_orbit_function(g, v)?;
    Ok(g.quotient_colored_graph(&intern(&f)).automorphism_group())
}

/// An affine map `x ↦ linear·x + translation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: Matrix<Rational>,
    pub translation: Vec<Rational>,
}

impl AffineMap {
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.linear
            .mul_vec(x)
            .iter()
            .zip(&self.translation)
            .map(|(a, b)| a.add(b))
            .collect()
    }
}

/// The affine map of `P(G, v)` inducing the vertex permutation `sigma`.
pub fn realize_affine(g: &MatrixGroup, v: &[Rational], sigma: &Permutation) -> Result<AffineMap> {
    check_point(g, v)?;
    let c = barycenter(g, v);
    let linear = symcore::realize(&centered_orbit_family(g, v), sigma).map_err(|e| match e {
        Error::SingularGram => Error::NotGenerating,
        other => other,
    })?;
    let moved = linear.mul_vec(&c);
    let translation = c.iter().zip(&moved).map(|(a, b)| a.sub(b)).collect();
    Ok(AffineMap { linear, translation })
}

/// Limits for the symbolic computation over ℚ(X).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolicCaps {
    pub max_dim: usize,
    pub max_order: usize,
}

impl Default for SymbolicCaps {
    fn default() -> Self {
        SymbolicCaps {
            max_dim: 4,
            max_order: 16,
        }
    }
}

impl SymbolicCaps {
    pub fn admits(&self, g: &MatrixGroup) -> bool {
        g.dim() <= self.max_dim && g.order() <= self.max_order
    }
}

fn has_fixed_vectors(g: &MatrixGroup) -> bool {
    !g.averaging_operator().is_zero()
}

/// Numerators `n_g = Xᵗ adj(Q(X)) g X` of the generic orbit function; the
/// shared denominator `det Q(X)` is dropped.
pub fn symbolic_orbit_function(g: &MatrixGroup, caps: SymbolicCaps) -> Result<Vec<MultiPoly>> {
    if has_fixed_vectors(g) {
        return Err(Error::NoGeneratingPoint);
    }
    if !caps.admits(g) {
        return Err(Error::ResourceCap(format!(
            "symbolic mode is limited to dimension {} and order {} (got {} and {})",
            caps.max_dim,
            caps.max_order,
            g.dim(),
            g.order()
        )));
    }
    let d = g.dim();
    let x: Vec<MultiPoly> = (0..d).map(|i| MultiPoly::variable(i, d)).collect();
    let family = VectorFamily::from_vectors(
        d,
        &(0..g.order())
            .map(|i| g.element(i).to_poly(d).mul_vec(&x))
            .collect::<Vec<_>>(),
    );
    let (det, adj) = symcore::gram(&family).det_adj();
    if det.is_zero() {
        return Err(Error::NoGeneratingPoint);
    }
    let row = adj.mul_vec(&x);
    Ok((0..g.order())
        .map(|i| {
            let gx = family.vector(i);
            row.iter().zip(&gx).fold(MultiPoly::zero(d), |acc, (a, b)| acc.add(&a.mul(b)))
        })
        .collect())
}

/// How to compute the generic symmetry group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenericMode {
    /// Exact computation over ℚ(X).
    Exact,
    /// Intersection over sampled generic points.
    MonteCarlo { samples: usize, seed: u64, threads: usize },
}

/// The generic symmetry group with how it was obtained.
#[derive(Clone, Debug)]
pub struct GenericSymmetry {
    pub group: PermGroup,
    /// True when the group is certified equal to the generic group.
    pub exact: bool,
    /// Per generator: the symbolic verification result, `None` when the
    /// symbolic check was beyond the caps.
    pub verified: Vec<Option<bool>>,
    /// The sampled points in Monte-Carlo mode.
    pub samples: Vec<Vec<Rational>>,
}

const SAMPLE_BOUND: i64 = 1000;
const SAMPLE_ATTEMPTS: usize = 200;

/// Draws an integer point with coordinates in `[−1000, 1000]` that is
/// generating with trivial stabilizer.
pub fn sample_generic_point(g: &MatrixGroup, rng: &mut ChaCha8Rng) -> Result<Vec<Rational>> {
    for _ in 0..SAMPLE_ATTEMPTS {
        let v: Vec<Rational> = (0..g.dim())
            .map(|_| Rational::from_int(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND)))
            .collect();
        if stabilizer_in_group(g, &v).len() == 1 && is_generating_point(g, &v) {
            return Ok(v);
        }
    }
    Err(Error::NoGeneratingPoint)
}

pub(crate) fn verify_quotient_invariance<T: PartialEq>(g: &MatrixGroup, f: &[T], p: &Permutation) -> bool {
    let n = g.order();
    (0..n).all(|a| {
        let pa_inv = g.inverse(p.apply(a));
        let a_inv = g.inverse(a);
        (0..n).all(|b| f[g.mul(pa_inv, p.apply(b))] == f[g.mul(a_inv, b)])
    })
}

/// `LinSym((gX)_{g ∈ G})`, the symmetry group of generic orbit polytopes.
pub fn generic_linsym(g: &MatrixGroup, mode: GenericMode, caps: SymbolicCaps) -> Result<GenericSymmetry> {
    if has_fixed_vectors(g) {
        return Err(Error::NoGeneratingPoint);
    }
    match mode {
        GenericMode::Exact => {
            let n = symbolic_orbit_function(g, caps)?;
            let group = g.quotient_colored_graph(&intern(&n)).automorphism_group();
            let verified = group
                .generators()
                .iter()
                .map(|p| Some(verify_quotient_invariance(g, &n, p)))
                .collect();
            Ok(GenericSymmetry {
                group,
                exact: true,
                verified,
                samples: Vec::new(),
            })
        }
        GenericMode::MonteCarlo { samples, seed, threads } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let points = (0..samples.max(1))
                .map(|_| sample_generic_point(g, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            let evaluate = || -> Vec<Vec<u32>> {
                points
                    .par_iter()
                    .map(|v| intern(&orbit_function_of(g, v).expect("sampled points are generating")))
                    .collect()
            };
            let per_sample = match threads {
                0 => evaluate(),
                k => rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build()
                    .map_err(|e| Error::Internal(e.to_string()))?
                    .install(evaluate),
            };
            let tuples: Vec<Vec<u32>> = (0..g.order())
                .map(|k| per_sample.iter().map(|ids| ids[k]).collect())
                .collect();
            let group = g.quotient_colored_graph(&intern(&tuples)).automorphism_group();
            let verified: Vec<Option<bool>> = match symbolic_orbit_function(g, caps) {
                Ok(n) => group
                    .generators()
                    .iter()
                    .map(|p| Some(verify_quotient_invariance(g, &n, p)))
                    .collect(),
                Err(Error::ResourceCap(_)) => vec![None; group.generators().len()],
                Err(e) => return Err(e),
            };
            let exact = verified.iter().all(|v| *v == Some(true));
            Ok(GenericSymmetry {
                group,
                exact,
                verified,
                samples: points,
            })
        }
    }
}

/// Picks exact mode within the caps and Monte-Carlo otherwise.
pub fn default_generic_mode(g: &MatrixGroup, caps: SymbolicCaps, samples: usize, seed: u64) -> GenericMode {
    if caps.admits(g) {
        GenericMode::Exact
    } else {
        GenericMode::MonteCarlo {
            samples,
            seed,
            threads: 0,
        }
    }
}

/// The three conditions defining a generic point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    pub generating: bool,
    pub trivial_stabilizer: bool,
    /// Whether the orbit has no more symmetries than a generic orbit;
    /// `None` when not evaluated because an earlier condition failed.
    pub no_extra_symmetry: Option<bool>,
    pub exact: bool,
}

impl GenericityReport {
    pub fn is_generic(&self) -> bool {
        self.generating && self.trivial_stabilizer && self.no_extra_symmetry == Some(true)
    }
}

pub fn genericity(g: &MatrixGroup, v: &[Rational], mode: GenericMode, caps: SymbolicCaps) -> Result<GenericityReport> {
    check_point(g, v)?;
    if has_fixed_vectors(g) {
        return Err(Error::NoGeneratingPoint);
    }
    let generating = is_generating_point(g, v);
    let trivial_stabilizer = stabilizer_in_group(g, v).len() == 1;
    if !(generating && trivial_stabilizer) {
        return Ok(GenericityReport {
            generating,
            trivial_stabilizer,
            no_extra_symmetry: None,
            exact: true,
        });
    }
    let generic = generic_linsym(g, mode, caps)?;
    let specific = affsym_group(g, v)?;
    Ok(GenericityReport {
        generating,
        trivial_stabilizer,
        no_extra_symmetry: Some(generic.group.order() == specific.order()),
        exact: generic.exact,
    })
}

/// Whether `v` is a generic point for `G`.
pub fn is_generic(g: &MatrixGroup, v: &[Rational], mode: GenericMode, caps: SymbolicCaps) -> Result<bool> {
    Ok(genericity(g, v, mode, caps)?.is_generic())
}

/// Result of the generic closedness test for the affine symmetry group Ĝ of
/// an orbit polytope.
#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub affsym_order: num_bigint::BigUint,
    /// Ĝ, the group of linear parts realized on the centered polytope.
    pub hat_group: MatrixGroup,
    /// The affine maps realizing the generators of the symmetry group.
    pub realizations: Vec<(Permutation, AffineMap)>,
    /// Each witness point for Ĝ with the order of its orbit polytope's
    /// symmetry group.
    pub witnesses: Vec<(Vec<Rational>, num_bigint::BigUint)>,
    /// True when some witness orbit has exactly `|Ĝ|` symmetries. Since
    /// `Ĝ ≤ LinSym((ĝX)) ≤ LinSym((ĝw))`, this certifies closedness exactly.
    pub closed: bool,
}

const CLOSURE_WITNESSES: usize = 4;

pub fn generic_closure_check(g: &MatrixGroup, v: &[Rational], seed: u64) -> Result<ClosureReport> {
    let sym = affsym_group(g, v)?;
    let c = barycenter(g, v);
    let family = centered_orbit_family(g, v);
    let mut realizations = Vec::new();
    let mut linear_parts = Vec::new();
    for sigma in sym.generators() {
        let linear = symcore::realize(&family, sigma)?;
        let moved = linear.mul_vec(&c);
        let translation = c.iter().zip(&moved).map(|(a, b)| a.sub(b)).collect();
        linear_parts.push(linear.clone());
        realizations.push((sigma.clone(), AffineMap { linear, translation }));
    }
    let bound = sym.order_u64().map_or(usize::MAX, |o| o as usize);
    let hat = close_group(g.dim(), &linear_parts, bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witnesses = Vec::new();
    let mut closed = false;
    for _ in 0..CLOSURE_WITNESSES {
        let w = sample_generic_point(&hat, &mut rng)?;
        let order = affsym_group(&hat, &w)?.order();
        closed = order == num_bigint::BigUint::from(hat.order());
        witnesses.push((w, order));
        if closed {
            break;
        }
    }
    Ok(ClosureReport {
        affsym_order: sym.order(),
        hat_group: hat,
        realizations,
        witnesses,
        closed,
    })
}
