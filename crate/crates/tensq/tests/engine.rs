//! Cross-module integration: the double-copy enumeration sizes, the
//! order-only index path, and ingestion round trips.

use tensq::coset::{enumerate, subgroup_index};
use tensq::group::{is_isomorphic, parse_cayley_table, recognize_structure, StructureDescriptor};
use tensq::presentation::{
    family_presentation, family_table, nu_presentation, parse_presentation, FamilyDescriptor, Word,
};
use tensq::tensor::{compute_tensor_square, order_only_tensor, TensorConfig};
use tensq::EnumerationConfig;

#[test]
fn nu_s3_enumerates_to_216() {
    let p = parse_presentation("a, b | a^3, b^2, (a b)^2").unwrap();
    let nu = nu_presentation(&p);
    let (table, _) = enumerate(nu.presentation(), &[], &EnumerationConfig::default()).unwrap();
    assert_eq!(table.n_cosets(), 216); // |G|^2 |GxG| = 36 * 6
}

#[test]
fn nu_s3_index_over_second_copy() {
    let p = parse_presentation("a, b | a^3, b^2, (a b)^2").unwrap();
    let nu = nu_presentation(&p);
    let second: Vec<Word> = nu.second_copy().map(Word::generator).collect();
    let (index, _) = subgroup_index(nu.presentation(), &second, &EnumerationConfig::default())
        .unwrap();
    assert_eq!(index, 36);
    assert_eq!(index / 6, 6); // |GxG|
}

#[test]
fn nu_a4_index_over_second_copy() {
    let p = parse_presentation("a, b | a^3, b^2, (a b)^3").unwrap();
    let (order, g_order, _) = order_only_tensor(&p, &EnumerationConfig::default()).unwrap();
    assert_eq!(g_order, 12);
    assert_eq!(order, 24);
}

#[test]
fn d12_diagonal_subgroup_is_elementary_of_rank_three() {
    let p = family_presentation(&FamilyDescriptor::Dihedral(6)).unwrap();
    let report = compute_tensor_square(&p, &TensorConfig::default()).unwrap();
    assert_eq!(report.tensor_order, 48);
    let detail = report.detail.unwrap();
    assert_eq!(detail.nabla.invariant_factors.as_deref(), Some(&[2, 2, 2][..]));
}

#[test]
fn d20_tensor_square_order_80() {
    let p = family_presentation(&FamilyDescriptor::Dihedral(10)).unwrap();
    let (order, _, _) = order_only_tensor(&p, &EnumerationConfig::default()).unwrap();
    assert_eq!(order, 80); // 2^4 * 5
}

#[test]
fn a4_times_z5_order_only() {
    let d = FamilyDescriptor::direct(FamilyDescriptor::A4, FamilyDescriptor::Cyclic(5));
    let p = family_presentation(&d).unwrap();
    let (order, g_order, _) = order_only_tensor(&p, &EnumerationConfig::default()).unwrap();
    assert_eq!(g_order, 60);
    assert_eq!(order, 120); // 24 r with r = 5
}

#[test]
fn ingested_cayley_table_feeds_the_engine() {
    // Render S3's table, re-ingest it, and check it against the family
    // construction and the recognizer.
    let s3 = family_table(&FamilyDescriptor::Dihedral(3)).unwrap();
    let mut text = format!("# order-6 table\n{}\n", s3.order());
    for x in 0..s3.order() {
        let row: Vec<String> = (0..s3.order()).map(|y| s3.mul(x, y).to_string()).collect();
        text.push_str(&row.join(" "));
        text.push('\n');
    }
    let ingested = parse_cayley_table(&text).unwrap();
    assert!(is_isomorphic(&ingested, &s3).unwrap());
    assert_eq!(ingested.derived_subgroup().order(), 3);
    let fp = ingested.fingerprint();
    assert_eq!(fp.order, 6);
    assert_eq!(fp.center_order, 1);
}

#[test]
fn heisenberg_tensor_square_recognized() {
    // The extraspecial group of order 27 and exponent 3 comes out of the
    // engine when the order-18 generalized dihedral group is fed in.
    let d = FamilyDescriptor::generalized_dihedral(vec![3, 3]);
    let p = family_presentation(&d).unwrap();
    let report = compute_tensor_square(&p, &TensorConfig::default()).unwrap();
    assert_eq!(report.tensor_order, 54);
    let detail = report.detail.unwrap();
    match recognize_structure(&detail.tensor_table).unwrap() {
        StructureDescriptor::CyclicTimes(2, inner) => {
            assert!(matches!(
                *inner,
                StructureDescriptor::Extraspecial { p: 3, .. }
            ));
        }
        other => panic!("unexpected structure {other}"),
    }
}

#[test]
fn presentation_abelianization_matches_table_route() {
    // Over the whole catalog: the exponent-sum matrix and the brute-force
    // commutator quotient must give the same abelianization.
    for case in tensq::catalog::build_catalog() {
        let p = family_presentation(&case.family).unwrap();
        let matrix = p.abelianized_relation_matrix();
        let via_matrix =
            tensq::abelian::abelian_from_relations(p.generator_count(), &matrix).unwrap();
        let table = family_table(&case.family).unwrap();
        let (via_table, _, _) = table.abelianization();
        assert_eq!(via_matrix, via_table, "{}", case.id);
    }
}

#[test]
fn isomorphism_is_reflexive_and_symmetric_on_the_catalog() {
    let tables: Vec<_> = tensq::catalog::build_catalog()
        .into_iter()
        .map(|c| (c.id.clone(), family_table(&c.family).unwrap()))
        .collect();
    for (id, g) in &tables {
        assert!(is_isomorphic(g, g).unwrap(), "{id} not isomorphic to itself");
    }
    for (i, (ida, a)) in tables.iter().enumerate() {
        for (idb, b) in &tables[i + 1..] {
            let ab = is_isomorphic(a, b).unwrap();
            let ba = is_isomorphic(b, a).unwrap();
            assert_eq!(ab, ba, "{ida} vs {idb} asymmetric");
            if ab {
                assert_eq!(a.fingerprint(), b.fingerprint(), "{ida} vs {idb}");
            }
        }
    }
}

#[test]
fn regular_representation_size_cap() {
    let p = parse_presentation("a | a^5000").unwrap();
    let err = tensq::coset::regular_representation(&p, &EnumerationConfig::default());
    assert!(matches!(
        err,
        Err(tensq::coset::EnumerationError::TableTooLarge(5000))
    ));
    // The enumeration itself is fine; only the table materialization is
    // capped.
    let (idx, _) = subgroup_index(&p, &[], &EnumerationConfig::default()).unwrap();
    assert_eq!(idx, 5000);
}
