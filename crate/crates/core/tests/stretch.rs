use lodim::coloring::{local_chromatic_number, locality_coloring, locality_of_coloring};
use lodim::graph::kneser;

#[test]
fn kneser_8_3_local_chromatic_number() {
    let g = kneser(8, 3).unwrap();
    assert_eq!(g.n(), 56);
    assert!(locality_coloring(&g, 3).unwrap().is_none());
    let r = local_chromatic_number(&g).unwrap();
    assert_eq!(r.value, 4);
    assert_eq!(locality_of_coloring(&g, &r.witness).unwrap(), 4);
}
