use trapezoid_cli::{run_command, CommandOutput};

fn run(args: &str) -> CommandOutput {
    run_command(std::iter::once("trapezoid").chain(args.split_whitespace()), "")
}

fn run_stdin(args: &str, stdin: &str) -> CommandOutput {
    run_command(std::iter::once("trapezoid").chain(args.split_whitespace()), stdin)
}

#[test]
fn ast_genfunc_text() {
    let out = run("ast genfunc --n 2 --l 4 --format text");
    assert_eq!(out.code, 0, "{}", out.stderr);
    let ring = trapezoid_core::Ring::qrst();
    let got = trapezoid_core::LaurentPolynomial::parse_text(&ring, out.stdout.trim()).unwrap();
    let want =
        trapezoid_core::LaurentPolynomial::parse_text(&ring, "1 + 2*Q*R + 2*R + R^2 + R*S + R*T").unwrap();
    assert_eq!(got, want);
}

#[test]
fn ast_genfunc_json_and_csv() {
    let json = run("ast genfunc --n 2 --l 4 --format json");
    assert_eq!(json.code, 0);
    let p = trapezoid_core::LaurentPolynomial::from_json(json.stdout.trim()).unwrap();
    assert_eq!(p.num_terms(), 6);
    let csv = run("ast genfunc --n 2 --l 4 --format csv");
    let mut lines = csv.stdout.lines();
    assert_eq!(lines.next(), Some(r#""n","l","polynomial""#));
    assert!(lines.next().unwrap().starts_with(r#"2,4,"#));
}

#[test]
fn csspp_count() {
    let out = run("csspp count --n 2 --k 2");
    assert_eq!((out.code, out.stdout.as_str()), (0, "7\n"));
}

#[test]
fn routes_agree_through_cli() {
    for (n, l) in [(2, 3), (3, 2), (3, 1)] {
        let a = run(&format!("ast genfunc --n {n} --l {l} --format json")).stdout;
        let c = run(&format!("csspp genfunc --n {n} --k {} --d 0 --format json", l - 1)).stdout;
        let d = run(&format!("det genfunc --n {n} --l {l} --format json")).stdout;
        let g = run(&format!("lgv genfunc --n {n} --l {l} --d 0 --format json")).stdout;
        assert_eq!(a, c);
        assert_eq!(a, d);
        assert_eq!(a, g);
    }
}

#[test]
fn verify_small_bounds() {
    let out = run("verify --max-n 3 --max-l 4");
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    let json = run("verify --max-n 2 --max-l 2 --format json --jobs 2");
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert!(v["rows"].as_array().unwrap().len() > 10);
}

#[test]
fn domain_errors_exit_two() {
    let out = run("csspp genfunc --n 2 --k 2 --d 3");
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("d=3"));
    assert_eq!(run("lgv genfunc --n 2 --l 2 --d 2").code, 2);
    assert_eq!(run("ast genfunc --n 2 --l 0").code, 2);
    assert_eq!(run("ast xenum --n 2 --l 2 --x 1/0").code, 2);
    assert_eq!(run("ast frobnicate").code, 2);
    assert_eq!(run("verify --max-n 0").code, 2);
}

#[test]
fn enumeration_guard() {
    let out = run("ast enumerate --n 7 --l 6");
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("--force"));
    let small = run("ast enumerate --n 2 --l 1 --format json");
    assert_eq!(small.stdout.lines().count(), 5);
}

#[test]
fn stats_and_tree_map_from_stdin() {
    let a = r#"{"n":4,"l":4,"rows":[[0,0,0,0,0,1,0,0,0,0],[1,0,0,0,-1,0,1,0],[0,0,0,0,1,0],[1,0,0,0]]}"#;
    let st = run_stdin("ast stats --input - --format json", a);
    assert_eq!(st.code, 0, "{}", st.stderr);
    let v: serde_json::Value = serde_json::from_str(&st.stdout).unwrap();
    assert_eq!((v["q"].as_u64(), v["n"].as_u64()), (Some(1), Some(4)));
    let bad = run_stdin("ast stats --input -", r#"{"n":1,"l":2,"rows":[[0,0]]}"#);
    assert_eq!(bad.code, 2);
    let tree = run_stdin("tree map --input - --format json", a);
    assert_eq!(tree.code, 0, "{}", tree.stderr);
    let t: trapezoid_core::trees::TruncatedTree = serde_json::from_str(&tree.stdout).unwrap();
    assert_eq!(t.label(), (vec![2], vec![1]));
}

#[test]
fn tree_roundtrip_and_twoenum() {
    let out = run("tree roundtrip --n 3 --l 1");
    assert_eq!((out.code, out.stdout.as_str()), (0, "20/20\n"));
    let two = run("twoenum --n 3 --l 3 --format json");
    let v: serde_json::Value = serde_json::from_str(&two.stdout).unwrap();
    assert_eq!(v["value"], "64");
    assert_eq!(v["parity"], "odd");
}

#[test]
fn xenum_table() {
    let out = run("ast xenum --n 3 --l 2 --x 2 --table --format csv");
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 4);
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("trapezoid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z.json");
    let out = run(&format!("det entry --i 0 --j 0 --l 2 --format text --out {}", path.display()));
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    assert!(!std::fs::read_to_string(&path).unwrap().is_empty());
    std::fs::remove_dir_all(dir).unwrap();
}
