use std::process::{Command, Output};

fn casimir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .env_remove("CASIMIR_CONFIG")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let idx = lines
        .next()
        .unwrap()
        .split(',')
        .position(|h| h == name)
        .unwrap();
    lines
        .map(|l| l.split(',').nth(idx).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn internal_energy_single_row() {
    let o = casimir(&["internal-energy", "--a", "1", "--T", "1", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 2);
    assert_eq!(s.lines().next().unwrap(), "a,T,n,value,err_estimate,method,converged");
    let v = column(&s, "value")[0];
    assert!((v + 4.382392e-5).abs() < 1e-11);
}

#[test]
fn pressure_in_four_dimensions() {
    let o = casimir(&["pressure", "--D", "4", "--n", "1", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = column(&stdout(&o), "value")[0];
    assert!((v + 0.0411234).abs() < 1e-7);
}

#[test]
fn crosscheck_all_passes() {
    let o = casimir(&["crosscheck", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.lines().count() > 30);
    assert!(s.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn profile_columns() {
    let o = casimir(&["profile", "--D", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let u = column(&s, "u");
    let w2 = column(&s, "w2");
    assert_eq!(u.len(), 99);
    assert!(u.iter().all(|&x| x > 0.0 && x < 1.0));
    for i in 0..w2.len() {
        assert!(((w2[i] - w2[98 - i]) / w2[i]).abs() < 1e-12);
    }
    // f₆(1/2) = 126 ζ(6); prefactor −(D−2)(D/2−2)Γ(3)/(4π)³
    let expected = -4.0 * 2.0 / (4.0 * std::f64::consts::PI).powi(3) * 128.185225810041;
    assert!(((w2[49] - expected) / expected).abs() < 1e-12);
    let zeros = stdout(&casimir(&["profile", "--D", "4"]));
    assert!(column(&zeros, "w2").iter().all(|&w| w == 0.0));
}

#[test]
fn sweep_rows_follow_sweep_order() {
    let o = casimir(&["free-energy", "--sweep", "a:2:0.5:7:log", "--T", "0.4"]);
    assert_eq!(o.status.code(), Some(0));
    let a = column(&stdout(&o), "a");
    assert_eq!(a.len(), 7);
    assert_eq!(a[0], 2.0);
    assert!(a.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "# test cavity\na = 2\nT = 0.25 # warm\nn = 1.5\n").unwrap();
    let p = path.to_str().unwrap();

    let from_file = stdout(&casimir(&["internal-energy", "--config", p]));
    assert_eq!(column(&from_file, "a"), [2.0]);
    assert_eq!(column(&from_file, "n"), [1.5]);

    let overridden = stdout(&casimir(&["internal-energy", "--config", p, "--a", "3"]));
    assert_eq!(column(&overridden, "a"), [3.0]);
    assert_eq!(column(&overridden, "T"), [0.25]);

    let via_env = Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(["internal-energy"])
        .env("CASIMIR_CONFIG", p)
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(via_env.stdout).unwrap(), from_file);

    std::fs::write(&path, "speed_of_light = 2\n").unwrap();
    assert_eq!(casimir(&["internal-energy", "--config", p]).status.code(), Some(2));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let args = ["circuit", "--format", "json"];
    let direct = stdout(&casimir(&args));
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let o = casimir(&with_out);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
}

#[test]
fn exit_codes() {
    assert_eq!(casimir(&["em-energy", "--n", "0.5"]).status.code(), Some(2));
    assert_eq!(casimir(&["pressure", "--D", "5", "--T", "1"]).status.code(), Some(2));
    assert_eq!(casimir(&["dispersive", "--sweep", "T:1:2:3:cubic"]).status.code(), Some(2));
    assert_eq!(casimir(&["profile", "--D", "3"]).status.code(), Some(2));
    assert_eq!(casimir(&["--help"]).status.code(), Some(0));
    let nc = casimir(&["free-energy", "--T", "1e-7"]);
    assert_eq!(nc.status.code(), Some(1));
    assert!(stdout(&nc).lines().nth(1).unwrap().ends_with(",false"));
}
