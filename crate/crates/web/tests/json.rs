use guided_web::{brute_force_check, compare_algorithms, sweep_switch_time};

#[test]
fn exported_functions_return_json() {
    let v: serde_json::Value = serde_json::from_str(&compare_algorithms(60, 0.1, 6, 3, 2, 0.1).unwrap()).unwrap();
    assert_eq!(v["algorithms"].as_array().unwrap().len(), 3);
    assert_eq!(v["k"], 6);

    let v: serde_json::Value = serde_json::from_str(&sweep_switch_time(30, 0.2, 4, 1, 2, 2, 0.1).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);

    let v: serde_json::Value = serde_json::from_str(&brute_force_check(3, 1.0, 2, 0, 0.1).unwrap()).unwrap();
    // triangle: any two vertices cut two edges
    assert_eq!(v["opt_value"], 2.0);
}
