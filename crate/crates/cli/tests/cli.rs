//! End-to-end runs of the binary against the documented interface.

use std::process::Command;

fn icosa() -> Command {
    Command::new(env!("CARGO_BIN_EXE_icosa"))
}

#[test]
fn verify_exits_zero_and_prints_table() {
    let out = icosa().arg("verify").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS  syzygy"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn search_json_contains_coefficient_pairs() {
    let out = icosa().arg("search").output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let g = v["coefficient_pairs"]["g"].as_array().unwrap();
    assert!((g[0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((g[1].as_f64().unwrap() - 1.5954).abs() < 1e-4);
    let h = v["coefficient_pairs"]["h"].as_array().unwrap();
    assert!((h[1].as_f64().unwrap() - 0.0280899).abs() < 1e-6);
    assert_eq!(v["census"]["counts"]["new"], 8);
    assert_eq!(v["classification"]["o1"], "soccer");
    assert_eq!(v["classification"]["o2"], "dual_soccer");
}

#[test]
fn dynamics_edge_anchor_value() {
    let out = icosa().args(["dynamics", "--edge-anchor"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let z = v["edge_anchor"]["z"].as_f64().unwrap();
    assert!((z - 0.143827).abs() < 1e-5);
    assert!(v["edge_anchor"]["multiplier"].as_f64().unwrap() > 1.0);
}

#[test]
fn dynamics_trace_writes_history() {
    let dir = std::env::temp_dir().join("icosa_cli_test_trace");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trace.json");
    let out = icosa()
        .args([
            "dynamics",
            "--map",
            "g",
            "--seed",
            "0.31,0.24",
            "--trace",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["cycle"].is_number());
    assert!(v["history"].as_array().unwrap().len() >= 2);
}

#[test]
fn render_writes_byte_identical_ppm_for_any_thread_count() {
    let dir = std::env::temp_dir().join("icosa_cli_test_render");
    std::fs::create_dir_all(&dir).unwrap();
    let p1 = dir.join("one.ppm");
    let p4 = dir.join("four.ppm");
    for (threads, path) in [("1", &p1), ("4", &p4)] {
        let out = icosa()
            .args([
                "render",
                "--map",
                "g",
                "--kind",
                "basins",
                "--res",
                "64",
                "--out",
                path.to_str().unwrap(),
                "--threads",
                threads,
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p4).unwrap());
}

#[test]
fn resolvent_at_point_reports_constants() {
    let out = icosa().args(["resolvent", "--z", "0.4,0.3"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // a5 / H is the constant -1 for monic tetrahedral quartics
    let c = v["coefficient_fit"]["c_mean"].as_array().unwrap();
    assert!((c[0].as_f64().unwrap() + 1.0).abs() < 1e-8);
    assert!(v["coefficient_fit"]["c_rel_spread"].as_f64().unwrap() < 1e-8);
    assert!(v["alt5_action"].as_bool().unwrap());
    assert!(v["at"]["coefficients"].as_array().unwrap().len() == 6);
}

#[test]
fn scatter_export_writes_image_and_labels() {
    let dir = std::env::temp_dir().join("icosa_cli_test_scatter");
    std::fs::create_dir_all(&dir).unwrap();
    let img = dir.join("scatter.png");
    let out = icosa()
        .args([
            "render",
            "--map",
            "g",
            "--kind",
            "scatter",
            "--res",
            "128",
            "--out",
            img.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("scatter.json")).unwrap()).unwrap();
    assert_eq!(side["points"].as_array().unwrap().len(), 60);
    let labels: Vec<usize> = side["labels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap() as usize)
        .collect();
    for a in 0..5 {
        assert_eq!(labels.iter().filter(|&&l| l == a).count(), 12);
    }
}

#[test]
fn usage_error_exits_2() {
    let out = icosa().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn outputs_are_reproducible_for_fixed_seed() {
    let run = || {
        // --seed is a pre-subcommand flag
        let out = icosa()
            .args(["--seed", "99", "resolvent", "--demo", "--seeds", "100"])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run(), run());
}
