use proptest::prelude::*;
use rsdesign::constructions::fixture;
use rsdesign::designs::DesignArray;
use rsdesign::exactmath::SchemeParams;
use rsdesign::format::{parse_design, write_design};

fn design_strategy() -> impl Strategy<Value = DesignArray> {
    (1usize..=6, 2usize..=5)
        .prop_flat_map(|(n, q)| (Just(n), 0..=n, Just(q)))
        .prop_flat_map(|(n, w, q)| {
            let x = DesignArray::full(&SchemeParams::new(n, w, q).unwrap()).unwrap();
            let len = x.len();
            (Just(x), proptest::sample::subsequence((0..len).collect::<Vec<_>>(), 0..=len))
        })
        .prop_map(|(x, idx)| x.select(&idx).unwrap())
}

proptest! {
    #[test]
    fn write_then_read_is_identity(y in design_strategy()) {
        let back = parse_design(&write_design(&y)).unwrap();
        prop_assert_eq!(back.params(), y.params());
        prop_assert_eq!(back.rows(), y.rows());
    }
}

#[test]
fn checked_in_fixtures_match_writer() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in ["fig1", "fig2"] {
        let on_disk = std::fs::read_to_string(dir.join(format!("{name}.rsd"))).unwrap();
        assert_eq!(on_disk, write_design(&fixture(name).unwrap()));
    }
}

#[test]
fn checked_in_ingredients_match_generators() {
    use rsdesign::constructions::{mols_oa, sqs8};
    use rsdesign::format::{write_block_design, write_orthogonal_array};
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    assert_eq!(std::fs::read_to_string(dir.join("sqs8.bd")).unwrap(), write_block_design(&sqs8()));
    assert_eq!(std::fs::read_to_string(dir.join("mols4.oa")).unwrap(), write_orthogonal_array(&mols_oa(4).unwrap()));
}
