mod common;

use common::*;
use orbitope::exactmath::Rational;
use orbitope::orbit::{is_generating_point, orbit_family};
use orbitope::symcore::{linsym_group, VectorFamily};
use proptest::prelude::*;

fn group_elements(family: &VectorFamily<Rational>) -> std::collections::BTreeSet<orbitope::perm::Permutation> {
    linsym_group(family).unwrap().elements(50_000).unwrap().into_iter().collect()
}

#[test]
fn orbit_families_match_brute_force() {
    for (name, g) in library() {
        if g.order() > 6 {
            continue;
        }
        for p in [[2, 1, 3, 5], [1, 0, 0, 0], [1, 1, 1, 1]] {
            let v = pt(&p[..g.dim()]);
            if !is_generating_point(&g, &v) {
                continue;
            }
            let family = orbit_family(&g, &v);
            assert_eq!(group_elements(&family), brute_force_linsym(&family), "{name} at {v:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_families_match_brute_force(
        dim in 1usize..=3,
        extra in 0usize..=3,
        raw in prop::collection::vec(-1i64..=1, 18),
    ) {
        let n = dim + extra;
        let vectors: Vec<Vec<Rational>> = (0..n).map(|i| pt(&raw[i * dim..(i + 1) * dim])).collect();
        let family = VectorFamily::from_vectors(dim, &vectors);
        prop_assume!(family.spans());
        prop_assert_eq!(group_elements(&family), brute_force_linsym(&family));
    }
}
