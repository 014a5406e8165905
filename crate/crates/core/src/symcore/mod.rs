//! Linear symmetries of vector families through the color matrix
//! `W = Vᵗ Q⁻¹ V`, `Q = V Vᵗ`.
//!
//! A permutation σ of the index set is realized by an invertible linear map
//! exactly when `w_{σ(i)σ(j)} = w_{ij}` for all `i, j`, so the linear
//! symmetry group is the automorphism group of the complete graph colored
//! by `W`.

mod search;

use std::collections::HashMap;
use std::hash::Hash;

pub use search::ColoredGraph;

use crate::error::{Error, Result};
use crate::exactmath::{Matrix, MultiPoly, Rational, Ring};
use crate::perm::{PermGroup, Permutation};

/// An indexed family of vectors `v_0,…,v_{n−1}` in `S^d`, stored as the
/// columns of a `d × n` matrix. Repeated columns are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFamily<S> {
    columns: Matrix<S>,
}

impl<S: Ring> VectorFamily<S> {
    pub fn new(columns: Matrix<S>) -> Self {
        VectorFamily { columns }
    }

    pub fn from_vectors(dim: usize, vectors: &[Vec<S>]) -> Self {
        VectorFamily::new(Matrix::from_columns(dim, vectors))
    }

    pub fn dim(&self) -> usize {
        self.columns.rows()
    }

    pub fn len(&self) -> usize {
        self.columns.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vector(&self, i: usize) -> Vec<S> {
        self.columns.column(i)
    }

    pub fn columns(&self) -> &Matrix<S> {
        &self.columns
    }
}

impl VectorFamily<Rational> {
    pub fn spans(&self) -> bool {
        self.columns.rank() == self.dim()
    }

    /// A spanning family with the same row space, hence the same color
    /// matrix and the same linear symmetries.
    pub fn reduce_to_row_space(&self) -> VectorFamily<Rational> {
        VectorFamily::new(self.columns.row_space_basis())
    }

    /// Groups equal columns: `class[i]` is the index of the first column
    /// equal to column `i`, renumbered consecutively.
    pub fn distinct_points(&self) -> Vec<usize> {
        let mut ids: HashMap<Vec<Rational>, usize> = HashMap::new();
        (0..self.len())
            .map(|i| {
                let next = ids.len();
                *ids.entry(self.vector(i)).or_insert(next)
            })
            .collect()
    }
}

/// `Q = V Vᵗ`.
pub fn gram<S: Ring>(v: &VectorFamily<S>) -> Matrix<S> {
    v.columns.mul(&v.columns.transpose())
}

/// The color matrix as `numerators / denominator`. Over ℚ the denominator
/// is one; over ℚ[X] it is `det Q` and the numerators are `Vᵗ adj(Q) V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorMatrix<S> {
    numerators: Matrix<S>,
    denominator: S,
}

impl<S: Ring> ColorMatrix<S> {
    pub fn size(&self) -> usize {
        self.numerators.rows()
    }

    pub fn numerators(&self) -> &Matrix<S> {
        &self.numerators
    }

    pub fn denominator(&self) -> &S {
        &self.denominator
    }

    /// Color ids: equal numerators get equal ids, numbered by first
    /// occurrence in row-major order.
    pub fn color_ids(&self) -> Vec<u32> {
        intern(self.numerators.entries())
    }

    pub fn distinct_off_diagonal(&self) -> usize {
        let n = self.size();
        let mut seen: Vec<&S> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let x = self.numerators.get(i, j);
                if i != j && !seen.contains(&x) {
                    seen.push(x);
                }
            }
        }
        seen.len()
    }

    pub fn colored_graph(&self) -> ColoredGraph {
        ColoredGraph::new(self.size(), self.color_ids())
    }
}

impl ColorMatrix<Rational> {
    /// `W` itself.
    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.numerators
    }
}

/// Interns hashable values to consecutive ids by first occurrence.
pub fn intern<T: Hash + Eq + Clone>(values: &[T]) -> Vec<u32> {
    let mut ids: HashMap<T, u32> = HashMap::new();
    values
        .iter()
        .map(|x| {
            let next = ids.len() as u32;
            *ids.entry(x.clone()).or_insert(next)
        })
        .collect()
}

/// `W = Vᵗ Q⁻¹ V` over ℚ.
pub fn color_matrix(v: &VectorFamily<Rational>) -> Result<ColorMatrix<Rational>> {
    let q_inv = gram(v).inverse().ok_or(Error::SingularGram)?;
    let w = v.columns.transpose().mul(&q_inv).mul(&v.columns);
    Ok(ColorMatrix {
        numerators: w,
        denominator: Rational::one(),
    })
}

/// The color matrix over ℚ(X): numerators `Vᵗ adj(Q) V` over the shared
/// denominator `det Q`.
pub fn symbolic_color_matrix(v: &VectorFamily<MultiPoly>) -> Result<ColorMatrix<MultiPoly>> {
    let (det, adj) = gram(v).det_adj();
    if det.is_zero() {
        return Err(Error::SingularGram);
    }
    Ok(ColorMatrix {
        numerators: v.columns.transpose().mul(&adj).mul(&v.columns),
        denominator: det,
    })
}

/// Whether conjugation by `P(σ)` fixes `W`, i.e. `w_{σ(i)σ(j)} = w_{ij}`.
pub fn is_linear_symmetry<S: Ring>(w: &ColorMatrix<S>, sigma: &Permutation) -> bool {
    let n = w.size();
    sigma.degree() == n
        && (0..n).all(|i| {
            (0..n).all(|j| w.numerators.get(sigma.apply(i), sigma.apply(j)) == w.numerators.get(i, j))
        })
}

/// The matrix `A = V P(σ) Vᵗ Q⁻¹` with `A v_i = v_{σ(i)}`.
pub fn realize(v: &VectorFamily<Rational>, sigma: &Permutation) -> Result<Matrix<Rational>> {
    if sigma.degree() != v.len() {
        return Err(Error::DegreeMismatch {
            expected: v.len(),
            found: sigma.degree(),
        });
    }
    let q_inv = gram(v).inverse().ok_or(Error::SingularGram)?;
    let w = v.columns.transpose().mul(&q_inv).mul(&v.columns);
    let cm = ColorMatrix {
        numerators: w,
        denominator: Rational::one(),
    };
    if !is_linear_symmetry(&cm, sigma) {
        return Err(Error::NotASymmetry);
    }
    let permuted = VectorFamily::from_vectors(
        v.dim(),
        &(0..v.len()).map(|i| v.vector(sigma.apply(i))).collect::<Vec<_>>(),
    );
    Ok(permuted.columns.mul(&v.columns.transpose()).mul(&q_inv))
}

/// The linear symmetry group of a spanning family.
pub fn linsym_group(v: &VectorFamily<Rational>) -> Result<PermGroup> {
    Ok(color_matrix(v)?.colored_graph().automorphism_group())
}

/// The linear symmetry group of any family, computed on a spanning family
/// with the same row space.
pub fn linsym_group_of_span(v: &VectorFamily<Rational>) -> PermGroup {
    let reduced = v.reduce_to_row_space();
    if reduced.dim() == 0 {
        return PermGroup::symmetric(v.len());
    }
    linsym_group(&reduced).expect("a row-space basis spans")
}

/// The action of `group` on the distinct points of the family.
pub fn image_on_distinct_points(v: &VectorFamily<Rational>, group: &PermGroup) -> Result<PermGroup> {
    let class = v.distinct_points();
    let m = class.iter().max().map_or(0, |c| c + 1);
    let mut gens = Vec::new();
    for g in group.generators() {
        let mut images = vec![usize::MAX; m];
        for i in 0..v.len() {
            let (from, to) = (class[i], class[g.apply(i)]);
            if images[from] != usize::MAX && images[from] != to {
                return Err(Error::Internal("symmetry does not respect equal points".into()));
            }
            images[from] = to;
        }
        gens.push(Permutation::new(images)?);
    }
    PermGroup::new(m, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{q, qq};
    use num_bigint::BigUint;

    fn family(dim: usize, vs: &[&[i64]]) -> VectorFamily<Rational> {
        VectorFamily::from_vectors(dim, &vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
    }

    fn square() -> VectorFamily<Rational> {
        family(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]])
    }

    #[test]
    fn gram_of_square() {
        assert_eq!(gram(&square()), Matrix::identity(2).scale(&q(2)));
    }

    #[test]
    fn orthonormal_basis_has_identity_colors() {
        let w = color_matrix(&family(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(w.matrix(), &Matrix::identity(3));
    }

    #[test]
    fn square_colors() {
        let w = color_matrix(&square()).unwrap();
        assert_eq!(w.matrix().get(0, 0), &qq(1, 2));
        assert_eq!(w.matrix().get(0, 1), &q(0));
        assert_eq!(w.matrix().get(0, 2), &qq(-1, 2));
    }

    #[test]
    fn square_has_dihedral_symmetry() {
        assert_eq!(linsym_group(&square()).unwrap().order(), BigUint::from(8u32));
    }

    #[test]
    fn simplex_is_fully_symmetric() {
        let tri = family(2, &[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(linsym_group(&tri).unwrap().order(), BigUint::from(6u32));
    }

    #[test]
    fn rotation_is_realized() {
        let rot = Permutation::new(vec![1, 2, 3, 0]).unwrap();
        let a = realize(&square(), &rot).unwrap();
        assert_eq!(a, Matrix::from_ints(&[&[0, -1], &[1, 0]]));
        let swap = Permutation::new(vec![1, 0, 2, 3]).unwrap();
        assert_eq!(realize(&square(), &swap), Err(Error::NotASymmetry));
    }

    #[test]
    fn singular_gram_is_reported() {
        let line = family(2, &[&[1, 0], &[-1, 0]]);
        assert_eq!(color_matrix(&line), Err(Error::SingularGram));
        assert_eq!(linsym_group_of_span(&line).order(), BigUint::from(2u32));
    }

    #[test]
    fn repeated_points_keep_the_fiber_kernel() {
        let doubled = family(1, &[&[1], &[1], &[-1], &[-1]]);
        let g = linsym_group(&doubled).unwrap();
        assert_eq!(g.order(), BigUint::from(8u32));
        assert_eq!(image_on_distinct_points(&doubled, &g).unwrap().order(), BigUint::from(2u32));
    }

    #[test]
    fn symbolic_colors_of_sign_group() {
        let x = MultiPoly::variable(0, 1);
        let v = VectorFamily::from_vectors(1, &[vec![x.clone()], vec![x.neg()]]);
        let w = symbolic_color_matrix(&v).unwrap();
        assert_eq!(w.color_ids(), vec![0, 1, 1, 0]);
    }
}
