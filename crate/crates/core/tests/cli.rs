use std::f64::consts::PI;
use std::process::Command;

fn fraclap(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fraclap")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(2).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn quadrature_csv() {
    let (code, out, err) = fraclap(&["quadrature", "--alpha", "1", "--k", "1"]);
    assert_eq!(code, 0, "{err}");
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("# fraclap quadrature alpha=1 k=1"));
    assert_eq!(lines.next().unwrap(), "i,node,weight");
    let r = &rows(&out)[0];
    assert_eq!(r[0], "0");
    assert!((r[1].parse::<f64>().unwrap() - 4.0 / (3.0 * PI)).abs() < 1e-14);
    assert!((r[2].parse::<f64>().unwrap() - PI / 4.0).abs() < 1e-14);
    assert!(err.contains("sum of weights"));
}

#[test]
fn invalid_input_exits_with_error_line() {
    let (code, out, err) = fraclap(&["quadrature", "--alpha", "2.5"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.starts_with("error: kind=domain message="), "{err}");

    let (code, _, err) = fraclap(&["diffusion", "--alpha", "1", "--dt", "0.3"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: kind=config"), "{err}");

    let (code, _, _) = fraclap(&["table-s", "--dim", "three"]);
    assert_ne!(code, 0);
}

#[test]
fn failed_check_exits_one() {
    // far too few nodes for the boundary behavior of 1 - r²
    let (code, out, err) = fraclap(&["coeff-decay", "--k", "8"]);
    assert_eq!(code, 1);
    assert_eq!(rows(&out).len(), 31);
    assert!(err.contains("error: kind=validation"));
}

#[test]
fn table_s_is_deterministic() {
    let args = ["table-s", "--alpha", "1", "--s", "1", "--n", "0,1"];
    let (code, a, _) = fraclap(&args);
    let (_, b, _) = fraclap(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let r = rows(&a);
    assert_eq!(r.len(), 2);
    assert!((r[0][4].parse::<f64>().unwrap() - 2.1206).abs() < 1e-3);
    assert!(r[1][4].parse::<f64>().unwrap() < 1e-8);
}

#[test]
fn poisson_table_columns() {
    let (code, out, err) = fraclap(&["poisson-table", "--alpha", "1", "--n", "0"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.lines().nth(1).unwrap(), "alpha,eq,L,n,error,abs_error");
    let r = rows(&out);
    let eqs: Vec<&str> = r.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(eqs, ["eq1", "eq2", "eq3", "eq4"]);
    let ls: Vec<&str> = r.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(ls, ["0", "0", "1", "1"]);
    // eq2 at n = 0: the abs column is 1/(α/2+2) at the origin
    assert!((r[1][5].parse::<f64>().unwrap() - 0.4).abs() < 1e-12);
}

#[test]
fn diffusion_writes_profile_beside_errors() {
    let dir = std::env::temp_dir().join(format!("fraclap-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("heat.csv");
    let (code, out, err) = fraclap(&[
        "diffusion",
        "--alpha",
        "1",
        "--dt",
        "0.25,0.125",
        "--n-max",
        "4",
        "--radii",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.is_empty());
    let errors = std::fs::read_to_string(&path).unwrap();
    let profile = std::fs::read_to_string(dir.join("heat_profile.csv")).unwrap();
    assert_eq!(errors.lines().nth(1).unwrap(), "alpha,dt,error");
    assert_eq!(rows(&errors).len(), 2);
    let p = rows(&profile);
    assert_eq!(p.len(), 5);
    assert_eq!(p[4][2].parse::<f64>().unwrap(), 0.0);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn oscillatory_reference_row_is_zero() {
    let (code, out, err) = fraclap(&["oscillatory", "--n", "5,20,40"]);
    assert_eq!(code, 0, "{err}");
    let r = rows(&out);
    assert_eq!(r[2][1].parse::<f64>().unwrap(), 0.0);
    assert!(r[0][1].parse::<f64>().unwrap() > r[1][1].parse::<f64>().unwrap());
}
