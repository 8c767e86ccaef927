use lodim_web::{gadget_json, index_code_json, local_coloring_json};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn coloring_demo_reports_both_numbers() {
    let v = parse(local_coloring_json("kneser", 6, 3));
    assert_eq!((v["chi"].as_u64(), v["chiLocal"].as_u64()), (Some(2), Some(2)));
    let v = parse(local_coloring_json("schrijver", 6, 2));
    assert_eq!(v["chiLocal"], 4);
    let max = v["neighborhoodColors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .max();
    assert_eq!(max, Some(4));
    assert_eq!(v["labels"].as_array().unwrap().len(), v["n"].as_u64().unwrap() as usize);
    assert!(local_coloring_json("kneser", 9, 3).is_err());
    assert!(local_coloring_json("mycielski", 5, 2).is_err());
}

#[test]
fn index_demo_decodes_every_receiver() {
    for method in ["minrank", "local", "compress"] {
        let v = parse(index_code_json(
            "petersen",
            10,
            5,
            method,
            0,
            &[1, 2, 3, 4, 0, 1, 2, 3, 4, 0],
        ));
        assert_eq!(v["decoded"], v["message"], "{method}");
        let v = parse(index_code_json("complete", 4, 2, method, 0, &[1, 0, 1, 1]));
        assert_eq!(v["length"], 1);
        assert_eq!(v["broadcast"], serde_json::json!([1]));
    }
    assert!(index_code_json("cycle", 5, 2, "minrank", 0, &[1, 0]).is_err());
    assert!(index_code_json("cycle", 5, 4, "minrank", 0, &[0; 5]).is_err());
}

#[test]
fn gadget_demo_matches_certifier() {
    let v = parse(gadget_json(3, "none"));
    assert_eq!(v["report"]["counterexamples"], 0);
    assert_eq!(v["edges"].as_array().unwrap().len(), 9);
    let v = parse(gadget_json(3, "id"));
    assert!(v["report"]["counterexamples"].as_u64().unwrap() > 0);
    assert_eq!(v["edges"].as_array().unwrap().len(), 8);
    assert!(gadget_json(7, "").is_err());
    assert!(gadget_json(2, "xy").is_err());
}
