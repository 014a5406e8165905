mod common;

use common::*;
use num_bigint::BigUint;
use orbitope::exactmath::{q, qq, Matrix, MultiPoly, Rational, Ring};
use orbitope::grpalg::{gale_symmetry_groups, orbit_character, splitting_idempotent, splitting_map, GroupAlgebraElement};
use orbitope::orbit::{
    affsym_group, generic_linsym, is_generating_point, orbit_family, GenericMode, MatrixGroup, SymbolicCaps,
};
use orbitope::perm::{PermGroup, Permutation};
use orbitope::symcore::{color_matrix, is_linear_symmetry, linsym_group, realize};
use proptest::prelude::*;

fn small_group() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0usize..11, prop::collection::vec(-6i64..=6, 4))
}

/// A library group with a generating point built from `raw`, if any.
fn instance(index: usize, raw: &[i64]) -> Option<(MatrixGroup, Vec<Rational>)> {
    let (_, g) = library().swap_remove(index);
    let v = pt(&raw[..g.dim()]);
    is_generating_point(&g, &v).then_some((g, v))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), -4i64..=4), 0..5)
        .prop_map(|terms| MultiPoly::from_terms(2, terms.into_iter().map(|((a, b), c)| (vec![a, b], q(c)))))
}

fn int_matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-5i64..=5, n * n).prop_map(move |xs| Matrix::new(n, n, xs.into_iter().map(q).collect()))
}

/// Laplace expansion along the first row.
fn laplace(m: &Matrix<Rational>) -> Rational {
    if m.rows() == 0 {
        return q(1);
    }
    (0..m.cols()).fold(q(0), |acc, j| {
        let term = m.get(0, j).mul(&laplace(&m.minor(0, j)));
        if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        }
    })
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::new(images).unwrap())
}

/// All elements reachable from the generators, by breadth-first closure.
fn closure(n: usize, gens: &[Permutation]) -> std::collections::BTreeSet<Permutation> {
    let mut seen = std::collections::BTreeSet::from([Permutation::identity(n)]);
    let mut queue = vec![Permutation::identity(n)];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen
}

/// Trace of `x ↦ g x f` on ℚG, i.e. the character of the module ℚG·f.
fn module_character(g: &MatrixGroup, f: &GroupAlgebraElement<'_>) -> Vec<Rational> {
    (0..g.order())
        .map(|x| {
            let x_inv = g.inverse(x);
            (0..g.order()).fold(q(0), |acc, h| {
                let k = g.mul(g.mul(g.inverse(h), x_inv), h);
                acc.add(&f.coeffs()[k])
            })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polynomial_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).exact_div(&b), Some(a.clone()));
        }
    }

    #[test]
    fn polynomial_evaluation_is_a_homomorphism(a in poly(), b in poly(), x in -5i64..=5, y in -5i64..=5) {
        let p = [q(x), q(y)];
        prop_assert_eq!(a.mul(&b).eval(&p), a.eval(&p).mul(&b.eval(&p)));
        prop_assert_eq!(a.add(&b).eval(&p), a.eval(&p).add(&b.eval(&p)));
    }

    #[test]
    fn adjugate_identity(m in int_matrix(3)) {
        let (det, adj) = m.det_adj();
        prop_assert_eq!(&det, &laplace(&m));
        prop_assert_eq!(m.mul(&adj), Matrix::identity(3).scale(&det));
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv), Matrix::identity(3));
        } else {
            prop_assert!(det.is_zero());
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in int_matrix(3), b in int_matrix(3)) {
        prop_assert_eq!(a.mul(&b).det(), a.det().mul(&b.det()));
    }

    #[test]
    fn polynomial_adjugate(entries in prop::collection::vec(poly(), 4)) {
        let m = Matrix::new(2, 2, entries);
        let (det, adj) = m.det_adj();
        let expected = m.get(0, 0).mul(m.get(1, 1)).sub(&m.get(0, 1).mul(m.get(1, 0)));
        prop_assert_eq!(&det, &expected);
        let mut scaled = Matrix::zeros(2, 2);
        scaled.set(0, 0, det.clone());
        scaled.set(1, 1, det);
        prop_assert_eq!(m.mul(&adj), scaled);
    }

    #[test]
    fn rational_text_round_trip(num in -1000i64..1000, den in 1i64..1000) {
        let x = qq(num, den);
        let text = x.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), x.clone());
        prop_assert_eq!(text.contains('/'), !x.is_integer());
    }

    #[test]
    fn group_order_ignores_generator_order(
        gens in prop::collection::vec(perm_strategy(6), 1..4),
        dup in 0usize..3,
    ) {
        let base = PermGroup::new(6, &gens).unwrap();
        let mut shuffled: Vec<Permutation> = gens.iter().rev().cloned().collect();
        shuffled.push(gens[dup % gens.len()].clone());
        prop_assert_eq!(PermGroup::new(6, &shuffled).unwrap().order(), base.order());
        prop_assert_eq!(base.order(), BigUint::from(closure(6, &gens).len()));
    }

    #[test]
    fn orbit_stabilizer(gens in prop::collection::vec(perm_strategy(7), 1..3), point in 0usize..7) {
        let g = PermGroup::new(7, &gens).unwrap();
        let stab = g.point_stabilizer(point).unwrap();
        prop_assert_eq!(stab.order() * BigUint::from(g.orbit(point).len()), g.order());
        prop_assert!(g.contains_group(&stab).unwrap());
        for s in stab.generators() {
            prop_assert_eq!(s.apply(point), point);
        }
    }

    #[test]
    fn color_matrix_is_a_projection((index, raw) in small_group()) {
        let Some((g, v)) = instance(index, &raw) else { return Ok(()); };
        let w = color_matrix(&orbit_family(&g, &v)).unwrap();
        let m = w.matrix();
        prop_assert_eq!(&m.mul(m), m);
        prop_assert_eq!(m.trace(), q(g.dim() as i64));
        prop_assert!(m.is_symmetric());
    }

    #[test]
    fn realization_is_a_homomorphism((index, raw) in small_group()) {
        let Some((g, v)) = instance(index, &raw) else { return Ok(()); };
        let family = orbit_family(&g, &v);
        let group = linsym_group(&family).unwrap();
        let gens = group.generators();
        for s in gens {
            for t in gens {
                let st = realize(&family, &s.compose(t)).unwrap();
                prop_assert_eq!(st, realize(&family, s).unwrap().mul(&realize(&family, t).unwrap()));
            }
            let a = realize(&family, s).unwrap();
            for i in 0..family.len() {
                prop_assert_eq!(a.mul_vec(&family.vector(i)), family.vector(s.apply(i)));
            }
        }
    }

    #[test]
    fn splitting_idempotent_identities((index, raw) in small_group()) {
        let Some((g, v)) = instance(index, &raw) else { return Ok(()); };
        let split = splitting_idempotent(&g, &v).unwrap();
        let f = &split.element;
        let one = GroupAlgebraElement::one(&g);
        prop_assert_eq!(&f.mul(f), f);
        prop_assert_eq!(f.act(&v), v.clone());
        prop_assert!(one.sub(f).inner(f).is_zero());
        // μ(h x) = h μ(x).
        let x: Vec<Rational> = (0..g.dim()).map(|i| q(i as i64 + 1)).collect();
        for &h in g.generator_indices() {
            let lhs = splitting_map(&g, &v, &g.apply(h, &x)).unwrap();
            let rhs = GroupAlgebraElement::basis(&g, h).mul(&splitting_map(&g, &v, &x).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn gale_complement_has_the_same_symmetries((index, raw) in small_group()) {
        let Some((g, v)) = instance(index, &raw) else { return Ok(()); };
        let split = splitting_idempotent(&g, &v).unwrap();
        let (a, b) = gale_symmetry_groups(&split.element).unwrap();
        prop_assert_eq!(a.order(), b.order());
        prop_assert!(a.contains_group(&b).unwrap());
    }

    #[test]
    fn generic_group_is_contained_in_every_orbit_group((index, raw) in small_group()) {
        let Some((g, v)) = instance(index, &raw) else { return Ok(()); };
        let generic = generic_linsym(&g, GenericMode::Exact, SymbolicCaps::default()).unwrap();
        let specific = affsym_group(&g, &v).unwrap();
        prop_assert!(specific.contains_group(&generic.group).unwrap());
    }

    #[test]
    fn module_character_is_independent_of_the_point(
        (index, raw) in small_group(),
        other in prop::collection::vec(-6i64..=6, 4),
    ) {
        let Some((g, v)) = instance(index, &raw) else { return Ok(()); };
        let w = pt(&other[..g.dim()]);
        prop_assume!(is_generating_point(&g, &w));
        let fv = splitting_idempotent(&g, &v).unwrap().element;
        let fw = splitting_idempotent(&g, &w).unwrap().element;
        let chi = module_character(&g, &fv);
        prop_assert_eq!(&chi, &module_character(&g, &fw));
        let traces: Vec<Rational> = g.elements().iter().map(|m| m.trace()).collect();
        prop_assert_eq!(chi, traces);
        // W has constant diagonal f(e) and trace d.
        let f = orbit_character(&g, &v).unwrap();
        prop_assert_eq!(f[0].clone(), qq(g.dim() as i64, g.order() as i64));
    }

    #[test]
    fn linear_symmetries_preserve_colors((index, raw) in small_group()) {
        let Some((g, v)) = instance(index, &raw) else { return Ok(()); };
        let family = orbit_family(&g, &v);
        let w = color_matrix(&family).unwrap();
        for s in linsym_group(&family).unwrap().generators() {
            prop_assert!(is_linear_symmetry(&w, s));
        }
    }
}
