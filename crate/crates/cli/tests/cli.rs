use std::process::{Command, Output};

fn specht(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specht")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn roots() {
    let o = specht(&["roots", "A3", "--format=records"]);
    assert!(o.status.success());
    let r = &records(&o)[0];
    assert_eq!(r["roots"], 12);
    let o = specht(&["roots", "D4"]);
    let text = stdout(&o);
    assert!(text.contains("simple    1000 0100 0010 0001"));
    assert!(text.contains("highest   1211"));
    assert_eq!(specht(&["roots", "E8"]).status.code(), Some(3));
    assert_eq!(specht(&["roots"]).status.code(), Some(2));
}

#[test]
fn subsystems() {
    let o = specht(&["subsystems", "D4", "--format=records"]);
    let recs = records(&o);
    assert_eq!(recs.len(), 12);
    assert_eq!(recs[2]["name"], "A3''");
    assert_eq!(recs[2]["generators"], "{0100,0010,0001}");
    assert_eq!(records(&specht(&["subsystems", "A1", "--format=records"])).len(), 2);
    let ext = records(&specht(&["subsystems", "D4", "--extended", "--format=records"]));
    assert!(ext.iter().any(|r| r["name"] == "G2" && r["generators"] == "{1/3(1000+0010+0001),0100}" && r["order"] == 12));
}

#[test]
fn specht_reports() {
    let o = specht(&["specht", "D4", "1000,0100,0010", "1101,0111", "--format=records"]);
    assert!(o.status.success());
    let r = &records(&o)[0];
    assert_eq!(r["dimension"], 3);
    assert_eq!(r["identified"], "χ4");
    assert_eq!(r["polytabloid"].as_array().unwrap().len(), 4);

    let r = &records(&specht(&["specht", "D4", "-", "1000,0100,0010,0001", "--format=records"]))[0];
    assert_eq!(r["identified"], "χ2");

    let o = specht(&["specht", "B3", "100,122,001", "010,111,012", "--format=records"]);
    assert_eq!(o.status.code(), Some(3));
    let r = &records(&o)[0];
    assert_eq!(r["useful"], false);
    assert_eq!(r["polytabloid"].as_array().unwrap().len(), 0);
    assert!(r["witness"].is_string());
}

#[test]
fn modular_field() {
    let o = specht(&["specht", "D4", "1000,0100,0010", "1101,0111", "--field=p3", "--format=records"]);
    let r = &records(&o)[0];
    assert_eq!(r["field"], "F3");
    assert_eq!(r["identified"], "χ4");
    assert_eq!(specht(&["specht", "D4", "1000", "0100", "--field=p4"]).status.code(), Some(2));
}

#[test]
fn rejected_input() {
    assert_eq!(specht(&["useful-check", "D4", "1000", "1000"]).status.code(), Some(3));
    assert_eq!(specht(&["useful-check", "D4", "1000", "9999"]).status.code(), Some(3));
    assert_eq!(specht(&["specht", "D4", "1/2(1000+0010)", "0100"]).status.code(), Some(3));
}

#[test]
fn series() {
    let o = specht(&["series", "--mode=coset", "D4", "1000", "0100,0001,0010", "0100,0001,1/2(1000+1211)", "--format=records"]);
    let r = &records(&o)[0];
    assert_eq!(r["identified"], "χ10");
    assert_eq!(r["module_dimension"], 7);
    assert_eq!(specht(&["series", "D4", "1000,0100,0010", "1101,0111", "1101"]).status.code(), Some(3));
}

#[test]
fn good_search() {
    let recs = records(&specht(&["good-check", "D4", "--search", "--format=records"]));
    assert_eq!(recs.len(), 12);
    assert_eq!(recs[0]["identified"], "χ4");
    assert!(recs.iter().any(|r| r["j_prime"].is_null()));
}

#[test]
fn batch_pairs_keep_input_order() {
    let dir = std::env::temp_dir().join(format!("specht-pairs-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("pairs.txt");
    std::fs::write(&file, "# rows ; columns\n1000,0100,0010 ; 1101,0111\n1000,0010,0001 ; 1111,0100\n- ; 1000,0100,0010,0001\n").unwrap();
    let path = file.to_str().unwrap();
    let serial = specht(&["specht", "D4", "--pairs", path, "--format=records"]);
    let parallel = specht(&["specht", "D4", "--pairs", path, "--jobs", "3", "--format=records"]);
    assert_eq!(serial.stdout, parallel.stdout);
    let ids: Vec<String> = records(&serial).iter().map(|r| r["identified"].as_str().unwrap().to_string()).collect();
    assert_eq!(ids, ["χ4", "χ13", "χ2"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_d4_records() {
    let o = specht(&["verify-d4", "--format=records", "--jobs", "4"]);
    let recs = records(&o);
    assert_eq!(recs.len(), 16);
    assert_eq!(recs[0]["self_check"], true);
    let summary = &recs[15];
    assert_eq!(summary["checks"], 14);
    let failed = summary["failed"].as_u64().unwrap();
    assert_eq!(o.status.code(), Some(if failed == 0 { 0 } else { 4 }));
    for label in ["χ12", "χ11", "χ10"] {
        assert!(recs.iter().any(|r| r["expected"] == label && r["pass"] == true));
    }
    let serial = specht(&["verify-d4", "--format=records"]);
    assert_eq!(serial.stdout, o.stdout);
}

#[test]
fn corrupted_table_is_rejected() {
    let dir = std::env::temp_dir().join(format!("specht-table-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let table = stdout(&specht(&["table", "--format=records"]));
    let rec: serde_json::Value = serde_json::from_str(table.lines().next().unwrap()).unwrap();
    let mut text = String::new();
    for (i, r) in rec["rows"].as_array().unwrap().iter().enumerate() {
        let mut values: Vec<i64> = r[1].as_array().unwrap().iter().map(|v| v.as_i64().unwrap()).collect();
        if i == 3 {
            values[1] = -values[1];
        }
        let cells: Vec<String> = values.iter().map(i64::to_string).collect();
        text += &format!("{} {}\n", r[0].as_str().unwrap(), cells.join(" "));
    }
    let file = dir.join("table.txt");
    std::fs::write(&file, text).unwrap();
    let o = specht(&["verify-d4", "--table", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("self-check failed"));
    std::fs::remove_dir_all(&dir).ok();
}
