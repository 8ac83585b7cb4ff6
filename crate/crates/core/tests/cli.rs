use std::fs;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley-pack"))
        .args(args)
        .env_remove("CAYLEY_PACK_FORMAT")
        .env_remove("CAYLEY_PACK_OUT")
        .env_remove("CAYLEY_PACK_BUDGET")
        .env_remove("CAYLEY_PACK_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cuts_table_rows() {
    let o = cli(&["cuts", "10", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("Z            {1,3,5}"));
    assert!(text.contains("N - Z        {8,6,4}"));
    assert!(text.contains("dist         1"));

    let o = cli(&["cuts", "5", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["profile"]["cuts"], serde_json::json!([0, 4]));
    assert_eq!(v["profile"]["delta"], 0);
}

#[test]
fn rays_csv() {
    let o = cli(&["rays", "10", "4", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "r,x,y,L,H,U\n1,1,0,5,1,1\n2,1,1,7,1,3\n3,1,2,9,1,5\n4,0,1,2,4,\n"
    );
}

#[test]
fn scan_is_deterministic_and_ordered() {
    let one = cli(&["scan", "--k-max", "40", "--format", "csv", "--jobs", "1"]);
    let many = cli(&["scan", "--k-max", "40", "--format", "csv", "--jobs", "4"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let text = stdout(&one);
    assert!(text.starts_with("k,a,Z,delta,c_L,c_R,count_d,count_e,lattice_agrees\n3,1,"));
    assert!(text.contains("\n15,3,2 4 6 8 14,0,2,0,6,8,true\n"));
}

#[test]
fn scan_rejects_unknown_check() {
    let o = cli(&["scan", "--k-max", "5", "--checks", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn build_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        ("one", vec!["build", "one", "10", "4"]),
        ("two", vec!["build", "two", "1", "2"]),
        ("product", vec!["build", "product", "2", "3", "4"]),
        (
            "search",
            vec![
                "build", "search", "--orders", "2,4", "--gen-a", "1,0", "--gen-b", "1,1",
            ],
        ),
    ] {
        let path = dir.path().join(format!("{name}.json"));
        let mut a = args.clone();
        a.extend(["--out", path.to_str().unwrap()]);
        let o = cli(&a);
        assert!(
            o.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let v = cli(&["verify", path.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{name}");
        assert!(stdout(&v).starts_with("ok:"));
    }
}

#[test]
fn build_two_matches_worked_example() {
    let o = cli(&["build", "two", "1", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "path,start,labels\n1,5,AAAAA\n2,2,BBABB\n");
}

#[test]
fn corrupted_witnesses_fail() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let p = path.to_str().unwrap();
    assert!(cli(&["build", "one", "10", "4", "--out", p])
        .status
        .success());
    let good = fs::read_to_string(&path).unwrap();

    fs::write(&path, good.replacen("\"labels\":\"A", "\"labels\":\"B", 1)).unwrap();
    let o = cli(&["verify", p]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(
        out.contains("repeated vertex") || out.contains("arc overlap"),
        "{out}"
    );

    let swapped = good.replace("\"gen_a\":[4],\"gen_b\":[5]", "\"gen_a\":[5],\"gen_b\":[4]");
    assert_ne!(swapped, good);
    fs::write(&path, swapped).unwrap();
    assert_eq!(cli(&["verify", p]).status.code(), Some(1));

    fs::write(&path, "not json").unwrap();
    assert_eq!(cli(&["verify", p]).status.code(), Some(4));
}

#[test]
fn usage_and_inconclusive_exit_codes() {
    assert_eq!(cli(&["cuts", "10", "9"]).status.code(), Some(2));
    assert_eq!(cli(&["build", "two", "1", "1"]).status.code(), Some(2));
    assert_eq!(cli(&["frobnicate"]).status.code(), Some(2));
    let o = cli(&[
        "build", "search", "--orders", "4,4", "--gen-a", "1,0", "--gen-b", "0,1", "--budget", "3",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn environment_sets_defaults_and_flags_win() {
    let o = Command::new(env!("CARGO_BIN_EXE_cayley-pack"))
        .args(["cuts", "6", "2"])
        .env("CAYLEY_PACK_FORMAT", "json")
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with('{'));
    let o = Command::new(env!("CARGO_BIN_EXE_cayley-pack"))
        .args(["cuts", "6", "2", "--format", "table"])
        .env("CAYLEY_PACK_FORMAT", "json")
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("Cay(Z_6"));
}
