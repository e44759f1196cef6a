use padic_opalg_wasm::{ktheory_table_json, matrix_report_json, tate_heatmap_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn heatmap_has_one_row_per_point() {
    let v = parse(tate_heatmap_json(3, 16, "1, 3, 9", 12).unwrap());
    let grid = v["grid"].as_array().unwrap();
    assert_eq!(grid.len(), 12);
    assert!(grid.iter().all(|r| r.as_array().unwrap().len() == 12));
    assert_eq!(v["report"]["isometric"], Value::Bool(true));
    assert!(tate_heatmap_json(3, 16, "", 12).is_err());
    assert!(tate_heatmap_json(3, 16, "1,1,1,1,1,1,1", 12).is_err());
}

#[test]
fn quillen_and_cuntz_tables() {
    let q = parse(ktheory_table_json("quillen", 5, 0, 0, 3).unwrap());
    let groups: Vec<&str> = q.as_array().unwrap().iter().map(|r| r["group"].as_str().unwrap()).collect();
    assert_eq!(groups, ["Z", "Z/4", "0", "Z/24"]);
    let c = parse(ktheory_table_json("cuntz", 2, 3, 0, 0).unwrap());
    assert_eq!(c[0]["group"], "Z/2");
    assert!(ktheory_table_json("torus", 2, 0, 0, 1).is_err());
    assert!(ktheory_table_json("quillen", 2, 0, 3, 1).is_err());
}

#[test]
fn all_ones_matrix_breaks_the_cstar_identity() {
    let v = parse(matrix_report_json(2, 32, "1 1; 1 1").unwrap());
    assert_eq!(v["norm_squared"], "1");
    assert_eq!(v["norm_tstar_t"], "1/2");
    assert_eq!(v["cstar_identity"], Value::Bool(false));
    let id = parse(matrix_report_json(7, 8, "1 0\n0 1").unwrap());
    assert!(id["flags"].as_array().unwrap().iter().any(|f| f == "UNITARY"));
    assert!(matrix_report_json(2, 8, "1 2 3; 4 5").is_err());
    assert!(matrix_report_json(2, 8, "1 x; 0 1").is_err());
}
