use hyperqueens::ipmodel::{build_base, export_lp, parse_lp, ModelMode};
use hyperqueens::BoardSpec;

const MAX_2_2: &str = include_str!("golden/max_2_2.lp");

#[test]
fn max_model_matches_golden_file() {
    let m = build_base(BoardSpec::new(2, 2).unwrap(), ModelMode::Max).unwrap();
    assert_eq!(export_lp(&m), MAX_2_2);
    assert_eq!(parse_lp(MAX_2_2).unwrap(), m);
}
