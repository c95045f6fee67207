mod common;

use std::collections::BTreeSet;

use graphc::enumeration::{enumerate_basis, DEFAULT_MAX_CELL_SIZE};
use graphc::ComplexType;

#[test]
fn enumeration_matches_naive_generator() {
    for kind in ComplexType::BOTH {
        for k in 1..=3 {
            for m in 0..=2 {
                let naive = common::naive_basis(kind, k, m);
                let basis = enumerate_basis(kind, k, m, DEFAULT_MAX_CELL_SIZE).unwrap();
                let keys: BTreeSet<_> = basis.diagrams().iter().map(common::orbit_key).collect();
                assert_eq!(keys.len(), basis.len(), "{kind} ({k},{m}): two basis elements share an orbit");
                assert_eq!(keys, naive, "{kind} ({k},{m})");
            }
        }
    }
}

#[test]
fn naive_even_chord_count_at_order_three() {
    let chords = common::naive_basis(ComplexType::Even, 3, 0)
        .into_iter()
        .filter(|(ve, vi, _)| *ve == 6 && *vi == 0)
        .count();
    let gc = graphc::linalg::GraphComplex::new();
    let cd = graphc::chordhom::enumerate_chord_diagrams(&gc, ComplexType::Even, 3).unwrap();
    assert_eq!(cd.len(), chords);
}
