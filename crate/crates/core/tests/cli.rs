use std::io::Write;
use std::process::{Command, Output, Stdio};

const T4_SPEC: &str = "\
tnorm T4
summand 1/4 1/2 lukasiewicz
summand 1/2 1 product

fn phi
point 0 : 1 3/5
point 1 : 3/5 3/5

fn psi
point 0 : 3/5
point 1 : 3/5
";

fn qflat(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qflat"))
        .args(args)
        .env_remove("QFLAT_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn first_token(o: &Output) -> String {
    stdout(o).split_whitespace().next().unwrap_or_default().to_string()
}

#[test]
fn eval_builtins() {
    let o = qflat(&["eval", "lukasiewicz", "impl", "7/10", "1/2"], None);
    assert_eq!((o.status.code(), first_token(&o)), (Some(0), "4/5".into()));
    assert_eq!(first_token(&qflat(&["eval", "godel", "conj", "7/10", "1/2"], None)), "1/2");
    assert_eq!(first_token(&qflat(&["eval", "T4", "conj", "3/10", "4/5"], None)), "3/10");
    assert_eq!(first_token(&qflat(&["eval", "lukasiewicz", "conj", "0.7", "0.5"], None)), "1/5");
    assert_eq!(first_token(&qflat(&["eval", "product", "dl", "1/2", "1/4"], None)), "1/2");
    assert_eq!(first_token(&qflat(&["eval", "product", "dr", "1/2", "1/4"], None)), "1");
}

#[test]
fn exit_codes() {
    assert_eq!(qflat(&["eval", "godel", "conj", "1/0", "1"], None).status.code(), Some(2));
    assert_eq!(qflat(&["eval", "godel", "conj", "2", "1"], None).status.code(), Some(3));
    assert_eq!(qflat(&["eval", "godel", "frobnicate", "1", "1"], None).status.code(), Some(2));
    assert_eq!(qflat(&["check", "-s", "-", "T4", "flat", "phi"], Some("fn phi\npoint 0 : 1\n")).status.code(), Some(2));
    assert_eq!(qflat(&["check", "godel", "lower", "missing"], None).status.code(), Some(2));
}

#[test]
fn check_verdicts() {
    let o = qflat(&["check", "-s", "-", "T4", "flat", "phi"], Some(T4_SPEC));
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("VIOLATED F2 at c="), "{out}");
    assert!(out.contains("tensor(meet)=13/25"), "{out}");
    // The witness pair is printed in the spec format and parses back.
    let witness = &out[out.find("fn psi1").unwrap()..];
    let spec = format!("tnorm T4\nsummand 1/4 1/2 lukasiewicz\nsummand 1/2 1 product\n{witness}");
    let o = qflat(&["check", "-s", "-", "T4", "upper", "psi2"], Some(&spec));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = qflat(&["check", "T4", "flat", "lower(3/10)"], None);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "HOLDS\n".into()));
    let o = qflat(&["check", "godel", "lower", "identity"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("VIOLATED L1 pair"));
}

#[test]
fn tensor_values() {
    let o = qflat(&["tensor", "-s", "-", "T4", "phi", "upper(3/10)"], Some(T4_SPEC));
    assert_eq!(stdout(&o), "3/5 ~0.6 attained=true\n");
    let o = qflat(&["tensor", "-s", "-", "T4", "phi", "psi"], Some(T4_SPEC));
    assert_eq!(first_token(&o), "3/5");
    // Not an upper set: a warning, not a failure.
    let o = qflat(&["tensor", "godel", "lower(1/2)", "const(1/2)"], None);
    assert_eq!(o.status.code(), Some(0));
    let o = qflat(&["tensor", "godel", "const(1)", "lower(1/2)"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not an upper set"));
}

#[test]
fn csv_output() {
    let o = qflat(&["csv", "--tnorm", "godel", "lower(1/2)", "--samples", "5"], None);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("x,left,at,right,x_exact,left_exact,at_exact,right_exact"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.contains(&"0.5,1,1,0.5,1/2,1,1,1/2"));
    assert_eq!(rows[0], "0,,1,1,0,,1,1");

    let o = qflat(&["csv", "const(1)", "-n", "8"], None);
    assert_eq!(stdout(&o).lines().count(), 1 + 8 + 2);

    // The non-attained net at 3/10 under T4: left limit 1, value 1/2.
    let o = qflat(&["csv", "--tnorm", "T4", "net(3/10)", "-n", "4"], None);
    assert!(stdout(&o).contains("\n0.3,1,0.5,0.5,3/10,1,1/2,1/2\n"));
    assert_eq!(qflat(&["csv", "const(1)", "-n", "1"], None).status.code(), Some(3));
}

#[test]
fn verify_suites() {
    let o = qflat(&["verify", "--suite", "adjunction", "--grid", "100", "--tnorm", "T4"], None);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "PASS adjunction T4\n".into()));
    let o = qflat(&["verify", "--suite", "adjunction", "--trials", "2", "--grid", "16", "--mutant"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL adjunction lukasiewicz triple x="));
    let o = qflat(&["verify", "--suite", "distributivity", "--trials", "200"], None);
    assert_eq!(stdout(&o), "PASS distributivity sup-min triples=200 failures=0\n");
}

#[test]
fn seeds_are_deterministic() {
    let args = ["verify", "--suite", "equivalence", "--trials", "40", "--grid", "24"];
    let a = qflat(&args, None);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(stdout(&a), stdout(&qflat(&args, None)));
    let env_seeded = Command::new(env!("CARGO_BIN_EXE_qflat")).args(args).env("QFLAT_SEED", "7").output().unwrap();
    let mut flagged = args.to_vec();
    flagged.extend(["--seed", "7"]);
    assert_eq!(env_seeded.stdout, qflat(&flagged, None).stdout);
    assert_ne!(env_seeded.stdout, a.stdout);
}

#[test]
fn fmt_round_trips() {
    let dir = std::env::temp_dir().join(format!("qflat-fmt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t4.spec");
    std::fs::write(&path, "# comment\n".to_string() + T4_SPEC).unwrap();
    let once = stdout(&qflat(&["fmt", path.to_str().unwrap()], None));
    std::fs::write(&path, &once).unwrap();
    let twice = stdout(&qflat(&["fmt", path.to_str().unwrap()], None));
    assert_eq!(once, twice);
    assert!(once.contains("point 0 : 1 3/5\npoint 1 : 3/5 3/5\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}
