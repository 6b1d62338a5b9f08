use homotopy_radar_cli::run;

fn hradar(args: &[&str]) -> (i32, String) {
    let mut buf = Vec::new();
    let code = run(std::iter::once("hradar").chain(args.iter().copied()), &mut buf).unwrap();
    (code, String::from_utf8(buf).unwrap())
}

/// Data rows of a CSV dump, comment lines dropped.
fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines().skip(1).filter(|l| !l.starts_with('#')).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

#[test]
fn sqrt_track_follows_the_closed_form() {
    let (code, out) = hradar(&["track", "--fixture", "sqrt", "--to", "0.99"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("t,re_x1,im_x1,residual,inv_condition\n"));
    let rows = rows(&out);
    assert!(rows.len() > 5);
    assert_eq!(rows.last().unwrap()[0], 0.99);
    for r in rows {
        assert!((r[1] - (1.0 - r[0]).sqrt()).abs() < 1e-10 && r[2].abs() < 1e-10, "{r:?}");
    }
}

#[test]
fn cusp_track_is_a_square() {
    let (code, out) = hradar(&["track", "--fixture", "cusp", "--to", "0.95"]);
    assert_eq!(code, 0);
    for r in rows(&out) {
        assert!((r[1] - (r[0] - 1.0).powi(2)).abs() < 1e-10, "{r:?}");
    }
}

#[test]
fn ojika1_track_underflows_before_the_end() {
    let (code, out) = hradar(&["track", "--fixture", "ojika1"]);
    assert_ne!(code, 0);
    assert!(out.lines().last().unwrap().starts_with("# StepUnderflow"));
    let last = rows(&out).pop().unwrap();
    assert!(last[0] < 1.0 && last[0] > 0.99);
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["track", "--fixture", "planted", "--to", "0.4"][..],
        &["radius", "--fixture", "ojika1", "--t0", "0.955647336181678", "--format", "csv"],
        &["radius", "--fixture", "ojika1", "--seed", "5", "--format", "csv"],
        &["table", "table4"],
        &["solve-binomial", "--fixture", "monomial4"],
        &["coeffs", "--fixture", "monomial4", "--n", "8"],
    ] {
        assert_eq!(hradar(args), hradar(args), "{args:?}");
    }
}

#[test]
fn radius_exit_codes() {
    let (code, out) = hradar(&["radius", "--fixture", "sqrt", "--n", "64"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "Converged");
    assert!(v["error"].as_f64().unwrap() <= 4e-8);
    let (code, out) = hradar(&["radius", "--fixture", "cusp"]);
    assert_eq!(code, 1);
    assert!(out.contains("\"CoefficientsVanish\""));
}

#[test]
fn richardson_csv_layout() {
    let (_, out) = hradar(&["radius", "--fixture", "sqrt", "--t0", "0", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "i,j,re,im,error");
    assert_eq!(lines.len(), 1 + 6 * 7 / 2);
    let first: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(&first[..2], &[1.0, 1.0]);
    // c_2 / c_3 of sqrt(1 - t) is 2
    assert!((first[2] - 2.0).abs() < 1e-9 && (first[4] - 1.0).abs() < 1e-9);
}

#[test]
fn tables_have_reference_rows() {
    let (_, t1) = hradar(&["table", "table1"]);
    assert!(t1.lines().any(|l| l.starts_with("8,1.2,")));
    let (_, t2) = hradar(&["table", "table2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&t2).unwrap();
    assert_eq!(v[8]["errors"].as_array().unwrap().len(), 9);
    let (_, t4) = hradar(&["table", "table4"]);
    assert!(t4.lines().any(|l| l.starts_with("2,-0.125,")));
    let (_, t3) = hradar(&["table", "table3", "--precision", "extended"]);
    assert_eq!(t3.lines().count(), 18);
}

#[test]
fn homotopy_file_input() {
    let path = std::env::temp_dir().join(format!("hradar-cli-{}.json", std::process::id()));
    std::fs::write(
        &path,
        r#"{"dim": 1, "equations": [[{"re": 1, "exp": [2]}, {"t_coeffs": [{"re": -1}, {"re": 1}], "exp": [0]}]],
            "start_points": [[{"re": 1}]]}"#,
    )
    .unwrap();
    let file = path.to_str().unwrap();
    let (code, out) = hradar(&["radius", "--file", file, "--t0", "0.5"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(code, 0);
    assert!((v["singularity"]["re"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert!(v["error"].is_null());
    let mut buf = Vec::new();
    assert!(run(["hradar", "radius", "--file", file, "--path", "3"], &mut buf).is_err());
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn solve_binomial_inline() {
    let (code, out) = hradar(&["solve-binomial", "--exponents", "2,0;1,3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 6);
    let (code, _) = hradar(&["solve-binomial", "--exponents", "1,2;2,4"]);
    assert_eq!(code, 1);
    let mut buf = Vec::new();
    assert!(run(["hradar", "solve-binomial", "--fixture", "sqrt"], &mut buf).is_err());
}

#[test]
fn seeded_gamma_is_reported() {
    let (_, out) = hradar(&["radius", "--fixture", "ojika1", "--seed", "1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 1);
    let g = &v["gamma"];
    let m = g["re"].as_f64().unwrap().hypot(g["im"].as_f64().unwrap());
    assert!((m - 1.0).abs() < 1e-15);
    assert!(v["target"].is_null());
}
