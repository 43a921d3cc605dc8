use topogame::harness::{
    diagram_dot, duality_row, profile, profiles, to_json_pretty, verify_diagram, verify_duality, Property, ARROWS,
};
use topogame::topology::{chain, indiscrete, sierpinski};

#[test]
fn duality_row_json_shape() {
    let row = duality_row(&sierpinski(), 0, "sierpinski").unwrap();
    assert_eq!(
        serde_json::to_string(&row).unwrap(),
        r#"{"space":"sierpinski","x":0,"qgame":"I","dual":"II","agree":true}"#
    );
    assert!(duality_row(&indiscrete(2).unwrap(), 0, "indiscrete:2").unwrap().agree);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = profiles(3).unwrap();
    let b = profiles(3).unwrap();
    assert_eq!(to_json_pretty(&a), to_json_pretty(&b));
    assert_eq!(diagram_dot(&a), diagram_dot(&b));
    assert_eq!(to_json_pretty(&verify_duality(3).unwrap()), to_json_pretty(&verify_duality(3).unwrap()));
}

#[test]
fn every_single_fault_is_localized() {
    // with every other entry true, falsifying one entry breaks exactly the
    // arrows into it that apply to the space
    let base = profile(&chain(3).unwrap(), 0, "chain:3").unwrap();
    for p in Property::ALL {
        let mut broken = base.clone();
        broken.set(p, false);
        let r = verify_diagram(&[broken]);
        let mut got: Vec<_> = r.violations.iter().map(|v| (v.from, v.to)).collect();
        let mut want: Vec<_> = ARROWS
            .iter()
            .filter(|a| a.to == p && (!a.guarded || base.regular))
            .map(|a| (a.from, a.to))
            .collect();
        got.sort();
        want.sort();
        assert_eq!(got, want, "{p:?}");
    }
}
