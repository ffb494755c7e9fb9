mod common;

use common::{change_of_basis, random_table, small_scalar, strictly_upper, transform, truncated_powers};
use nilalg_core::catalog;
use nilalg_core::{Scalar, StructureConstants, Vector};
use num_traits::Zero;
use proptest::prelude::*;

/// Length of the longest nonzero left-normed product of basis elements,
/// plus one. Valid for associative algebras, where such products span the
/// powers of the algebra.
fn brute_nilindex(alg: &StructureConstants, cap: usize) -> Option<usize> {
    let n = alg.dim();
    let mut longest = 0;
    let mut stack: Vec<(Vector, usize)> = (0..n).map(|k| (Vector::basis(n, k), 1)).collect();
    while let Some((w, len)) = stack.pop() {
        if w.is_zero() {
            continue;
        }
        longest = longest.max(len);
        if len > cap {
            return None;
        }
        for j in 0..n {
            stack.push((alg.multiply(&w, &Vector::basis(n, j)).unwrap(), len + 1));
        }
    }
    Some(longest + 1)
}

fn vector(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(small_scalar(), n).prop_map(Vector)
}

fn table_with_vectors() -> impl Strategy<Value = (StructureConstants, Vector, Vector, Vector, Scalar)> {
    random_table(true).prop_flat_map(|alg| {
        let n = alg.dim();
        (Just(alg), vector(n), vector(n), vector(n), small_scalar())
    })
}

fn basis_change_inputs() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (
        prop::collection::vec(-2i64..=2, 1..8),
        prop::collection::vec(-2i64..=2, 1..8),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn display_parses_back(alg in random_table(true)) {
        let text = alg.to_string();
        prop_assert_eq!(StructureConstants::parse(&text).unwrap(), alg);
    }

    #[test]
    fn multiplication_is_bilinear((alg, x, y, z, s) in table_with_vectors()) {
        let m = |u: &Vector, v: &Vector| alg.multiply(u, v).unwrap();
        prop_assert_eq!(m(&(&x + &y), &z), &m(&x, &z) + &m(&y, &z));
        prop_assert_eq!(m(&z, &(&x + &y)), &m(&z, &x) + &m(&z, &y));
        prop_assert_eq!(m(&x.scale(&s), &y), m(&x, &y).scale(&s));
        prop_assert_eq!(m(&x, &y.scale(&s)), m(&x, &y).scale(&s));
    }

    #[test]
    fn center_elements_commute_with_everything(alg in random_table(true)) {
        let n = alg.dim();
        for z in alg.center().space.basis() {
            let z = Vector(z.flat().to_vec());
            for i in 0..n {
                let e = Vector::basis(n, i);
                prop_assert_eq!(alg.multiply(&z, &e).unwrap(), alg.multiply(&e, &z).unwrap());
            }
        }
    }

    #[test]
    fn parser_never_panics(text in "\\PC{0,60}(\n\\PC{0,40}){0,3}") {
        if let Err(e) = StructureConstants::parse(&text) {
            prop_assert!(e.line >= 1 && e.column >= 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nilindex_matches_word_products((lower, upper) in basis_change_inputs(), pick in 0usize..4) {
        let alg = match pick {
            0 => strictly_upper(3),
            1 => strictly_upper(4),
            2 => truncated_powers(4),
            _ => truncated_powers(5),
        };
        let (p, p_inv) = change_of_basis(alg.dim(), &lower, &upper);
        let changed = transform(&alg, &p, &p_inv);
        prop_assert!(changed.check_associative().is_empty());
        prop_assert_eq!(changed.nilindex(), brute_nilindex(&changed, 10));
        prop_assert_eq!(changed.nilindex(), alg.nilindex());
    }
}

#[test]
fn nilindex_of_known_families() {
    assert_eq!(strictly_upper(3).nilindex(), Some(3));
    assert_eq!(strictly_upper(4).nilindex(), Some(4));
    assert_eq!(truncated_powers(5).nilindex(), Some(6));
    assert_eq!(StructureConstants::zero(3).nilindex(), Some(2));
}

#[test]
fn catalog_nilindex_matches_word_products() {
    for e in catalog::load_catalog() {
        if e.algebra.check_associative().is_empty() {
            assert_eq!(e.algebra.nilindex(), brute_nilindex(&e.algebra, 10), "{}", e.id);
        }
    }
}

#[test]
fn catalog_files_round_trip() {
    for e in catalog::load_catalog() {
        let again = StructureConstants::parse(&e.algebra.to_string()).unwrap();
        assert_eq!(again, e.algebra, "{}", e.id);
    }
}

#[test]
fn product_table_reads_as_documented() {
    let alg = StructureConstants::parse("dim 3\ne2*e1 = 2e3 - e1").unwrap();
    let prod = alg.multiply(&Vector::basis(3, 1), &Vector::basis(3, 0)).unwrap();
    assert_eq!(prod.0, vec![Scalar::from_integer(-1), Scalar::zero(), Scalar::from_integer(2)]);
    assert!(alg.multiply(&Vector::basis(3, 0), &Vector::basis(3, 1)).unwrap().is_zero());
}
