use cobord_web::{bound_json, class_json, hypersurface_grid_json};
use serde_json::Value;

#[test]
fn class_of_projective_plane() {
    let v: Value = serde_json::from_str(&class_json(r#"{"proj":2}"#).unwrap()).unwrap();
    assert_eq!(v["dim"], 2);
    assert_eq!(v["chern_numbers"].as_array().unwrap().len(), 2);
}

#[test]
fn bound_matches_cli_examples() {
    let v: Value = serde_json::from_str(&bound_json(r#"{"hyp":[3,4]}"#, 2, "1").unwrap()).unwrap();
    assert_eq!(v["lower_bound"], 2);
    let v: Value = serde_json::from_str(&bound_json(r#"{"proj":1}"#, 2, "1,1").unwrap()).unwrap();
    assert_eq!(v["lower_bound"], "-inf");
}

#[test]
fn grid_covers_all_cells() {
    let v: Value = serde_json::from_str(&hypersurface_grid_json(2, "1", 3, 4).unwrap()).unwrap();
    let cells = v.as_array().unwrap();
    assert_eq!(cells.len(), 15);
    // Y_0: two points with a free involution.
    let y0 = cells.iter().find(|c| c["degree"] == 2 && c["dim"] == 0).unwrap();
    assert_eq!(y0["lower_bound"], "-inf");
}

#[test]
fn errors_are_messages() {
    assert!(class_json("{oops").is_err());
    assert!(bound_json(r#"{"proj":2}"#, 4, "1").is_err());
    assert!(hypersurface_grid_json(2, "1", 2, 50).is_err());
}
