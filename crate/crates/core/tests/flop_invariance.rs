mod common;

#[test]
fn invariants_agree_across_the_flop() {
    let compared = common::props::flop_invariance(3).unwrap();
    assert!(compared >= 3, "only {compared} classes compared");
}

#[test]
fn invariants_agree_across_the_flop_at_cap_five() {
    let compared = common::props::flop_invariance(5).unwrap();
    assert!(compared >= 7, "only {compared} classes compared");
}
