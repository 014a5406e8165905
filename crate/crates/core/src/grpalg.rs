//! The group algebra ℚG of a matrix group: splitting idempotents, the γ
//! character of a representation, representation-polytope symmetries, and
//! Gale complements.
//!
//! Coefficients are indexed by the element order of [`MatrixGroup`].

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Rational, Ring};
use crate::orbit::{self, MatrixGroup};
use crate::perm::PermGroup;
use crate::symcore::{self, intern, VectorFamily};

/// An element `Σ r_g g` of ℚG.
#[derive(Clone, Debug)]
pub struct GroupAlgebraElement<'g> {
    group: &'g MatrixGroup,
    coeffs: Vec<Rational>,
}

impl PartialEq for GroupAlgebraElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.group, other.group) && self.coeffs == other.coeffs
    }
}

impl Eq for GroupAlgebraElement<'_> {}

impl<'g> GroupAlgebraElement<'g> {
    pub fn from_coeffs(group: &'g MatrixGroup, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(GroupAlgebraElement { group, coeffs })
    }

    pub fn zero(group: &'g MatrixGroup) -> Self {
        GroupAlgebraElement {
            group,
            coeffs: vec![Rational::zero(); group.order()],
        }
    }

    /// The basis element `g_i`.
    pub fn basis(group: &'g MatrixGroup, i: usize) -> Self {
        let mut a = Self::zero(group);
        a.coeffs[i] = Rational::one();
        a
    }

    pub fn one(group: &'g MatrixGroup) -> Self {
        Self::basis(group, 0)
    }

    /// `E₁ = (1/|G|) Σ g`.
    pub fn averaging(group: &'g MatrixGroup) -> Self {
        GroupAlgebraElement {
            group,
            coeffs: vec![Rational::new(1, group.order() as i64); group.order()],
        }
    }

    pub fn group(&self) -> &'g MatrixGroup {
        self.group
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, Rational::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, Rational::sub)
    }

    fn zip(&self, other: &Self, op: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        GroupAlgebraElement {
            group: self.group,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GroupAlgebraElement {
            group: self.group,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// The algebra product, through the group's multiplication table.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.group);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let k = self.group.mul(i, j);
                out.coeffs[k] = out.coeffs[k].add(&a.mul(b));
            }
        }
        out
    }

    /// The inner product with `⟨g, h⟩ = δ_{gh}`.
    pub fn inner(&self, other: &Self) -> Rational {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(Rational::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    /// The module action `a · v = Σ r_g (g v)`.
    pub fn act(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); v.len()];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (o, x) in out.iter_mut().zip(self.group.apply(i, v)) {
                *o = o.add(&a.mul(&x));
            }
        }
        out
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    /// Whether `x a x⁻¹ = a` for every generator `x`, i.e. the coefficients
    /// form a class function.
    pub fn is_central(&self) -> bool {
        let g = self.group;
        g.generator_indices().iter().all(|&x| {
            let xi = g.inverse(x);
            (0..g.order()).all(|k| self.coeffs[g.mul(g.mul(x, k), xi)] == self.coeffs[k])
        })
    }
}

/// `Q⁻¹v` for the uncentered orbit family, or `NotGenerating`.
fn solve_gram(g: &MatrixGroup, v: &[Rational]) -> Result<(VectorFamily<Rational>, Matrix<Rational>)> {
    if v.len() != g.dim() {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, group acts on dimension {}",
            v.len(),
            g.dim()
        )));
    }
    let family = orbit::orbit_family(g, v);
    let q_inv = symcore::gram(&family).inverse().ok_or(Error::NotGenerating)?;
    Ok((family, q_inv))
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// `f(g) = vᵗ Q⁻¹ g v`, requiring the orbit of `v` to span linearly.
pub fn orbit_character(g: &MatrixGroup, v: &[Rational]) -> Result<Vec<Rational>> {
    let (family, q_inv) = solve_gram(g, v)?;
    let row = q_inv.mul_vec(v);
    Ok((0..g.order()).map(|i| dot(&row, &family.vector(i))).collect())
}

/// `μ(x) = Σ ((gv)ᵗ Q⁻¹ x) g`; satisfies `μ(hx) = h μ(x)` and `μ(x)·v = x`.
pub fn splitting_map<'g>(g: &'g MatrixGroup, v: &[Rational], x: &[Rational]) -> Result<GroupAlgebraElement<'g>> {
    let (family, q_inv) = solve_gram(g, v)?;
    if x.len() != g.dim() {
        return Err(Error::DimensionMismatch("vector length differs from the group dimension".into()));
    }
    let qx = q_inv.mul_vec(x);
    GroupAlgebraElement::from_coeffs(g, (0..g.order()).map(|i| dot(&family.vector(i), &qx)).collect())
}

/// The three defining identities of a splitting idempotent, as checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdempotentCertificate {
    pub idempotent: bool,
    pub fixes_point: bool,
    pub orthogonal: bool,
}

impl IdempotentCertificate {
    pub fn holds(&self) -> bool {
        self.idempotent && self.fixes_point && self.orthogonal
    }
}

#[derive(Clone, Debug)]
pub struct SplittingIdempotent<'g> {
    pub element: GroupAlgebraElement<'g>,
    pub certificate: IdempotentCertificate,
}

/// `f = Σ ((gv)ᵗ Q⁻¹ v) g` with `f² = f`, `f v = v` and `⟨1−f, f⟩ = 0`
/// checked exactly. A failed check is an internal error.
pub fn splitting_idempotent<'g>(g: &'g MatrixGroup, v: &[Rational]) -> Result<SplittingIdempotent<'g>> {
    let f = splitting_map(g, v, v)?;
    let one = GroupAlgebraElement::one(g);
    let certificate = IdempotentCertificate {
        idempotent: f.is_idempotent(),
        fixes_point: f.act(v) == v,
        orthogonal: one.sub(&f).inner(&f).is_zero(),
    };
    if !certificate.holds() {
        return Err(Error::Internal(format!("splitting idempotent fails its identities: {certificate:?}")));
    }
    Ok(SplittingIdempotent { element: f, certificate })
}

/// Whether `g ↦ g⁻¹` is a symmetry of the orbit polytope of `v`. Decided
/// twice, by the color criterion and by centrality of the splitting
/// idempotent; the two must agree.
pub fn has_inversion_symmetry(g: &MatrixGroup, v: &[Rational]) -> Result<bool> {
    let f = orbit_character(g, v)?;
    let by_colors = orbit::verify_quotient_invariance(g, &f, &g.inversion());
    let by_center = splitting_idempotent(g, v)?.element.is_central();
    if by_colors != by_center {
        return Err(Error::Internal(
            "inversion criterion and centrality of the splitting idempotent disagree".into(),
        ));
    }
    Ok(by_colors)
}

/// The family `(vec D(g))_g` of a representation, reduced to a spanning
/// family with the same row space.
fn vectorized(d: &MatrixGroup) -> VectorFamily<Rational> {
    let columns: Vec<Vec<Rational>> = d.elements().iter().map(|m| m.entries().to_vec()).collect();
    VectorFamily::from_vectors(d.dim() * d.dim(), &columns).reduce_to_row_space()
}

/// `γ(g) = |G| · W_{e,g}` for the orbit of the identity matrix under left
/// multiplication. Equals `Σ χ(1) χ` over the irreducible constituents.
pub fn gamma_character(d: &MatrixGroup) -> Result<Vec<i64>> {
    let family = vectorized(d);
    let n = d.order() as i64;
    if family.dim() == 0 {
        return Ok(vec![0; d.order()]);
    }
    let w = symcore::color_matrix(&family)?;
    (0..d.order())
        .map(|g| {
            let x = w.matrix().get(0, g).mul(&Rational::from_int(n));
            x.to_i64()
                .ok_or_else(|| Error::Internal(format!("γ value {x} is not an integer")))
        })
        .collect()
}

/// The affine symmetry group of the representation polytope `conv D(G)`:
/// permutations π with `γ(π(g)⁻¹π(h)) = γ(g⁻¹h)`.
pub fn reppoly_symgroup(d: &MatrixGroup) -> Result<PermGroup> {
    let gamma = gamma_character(d)?;
    Ok(d.quotient_colored_graph(&intern(&gamma)).automorphism_group())
}

/// The subgroup generated by left and right multiplications and inversion,
/// which every representation polytope admits.
pub fn standard_symmetries(g: &MatrixGroup) -> PermGroup {
    let mut gens = Vec::new();
    for &x in g.generator_indices() {
        gens.push(g.left_multiplication(x));
        gens.push(g.right_multiplication(x));
    }
    gens.push(g.inversion());
    PermGroup::new(g.order(), &gens).expect("permutations of the element indices")
}

/// `2 · |G| · |G : Z(G)|`.
pub fn bigsym_lower_bound(g: &MatrixGroup) -> BigUint {
    let n = g.order();
    BigUint::from(2 * n) * BigUint::from(n / g.center().len())
}

/// `1 − f` for an orthogonal idempotent `f`.
pub fn gale_complement<'g>(f: &GroupAlgebraElement<'g>) -> Result<GroupAlgebraElement<'g>> {
    if !f.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let complement = GroupAlgebraElement::one(f.group()).sub(f);
    if !complement.inner(f).is_zero() {
        return Err(Error::NotOrthogonal);
    }
    Ok(complement)
}

/// The family `(g a)_{g ∈ G}` in coefficient coordinates of ℚG.
pub fn algebra_orbit_family(a: &GroupAlgebraElement<'_>) -> VectorFamily<Rational> {
    let g = a.group();
    let columns: Vec<Vec<Rational>> = (0..g.order())
        .map(|i| GroupAlgebraElement::basis(g, i).mul(a).coeffs)
        .collect();
    VectorFamily::from_vectors(g.order(), &columns)
}

/// Linear symmetry groups of the orbit families of `f` and `1 − f`.
pub fn gale_symmetry_groups(f: &GroupAlgebraElement<'_>) -> Result<(PermGroup, PermGroup)> {
    let complement = gale_complement(f)?;
    Ok((
        symcore::linsym_group_of_span(&algebra_orbit_family(f)),
        symcore::linsym_group_of_span(&algebra_orbit_family(&complement)),
    ))
}
