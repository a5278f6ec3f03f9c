use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_holotn");

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("holotn-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str], out: &Path) -> Output {
    Command::new(BIN).args(args).arg("--out").arg(out).output().expect("spawn holotn")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn success_exits_zero() {
    let d = scratch("ok");
    let o = run(&["verify", "--model", "fredkin1d", "--n", "4", "--n", "6", "--q", "2"], &d);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report = fs::read_to_string(d.join("verify_fredkin1d_s1.txt")).unwrap();
    assert!(report.contains(" 0 failed"));
}

#[test]
fn failed_verification_exits_one() {
    // The six-vertex move graph splits at L = 6.
    let d = scratch("fail");
    let o = run(&["verify", "--model", "sixvertex", "--l", "6", "--q", "1"], &d);
    assert_eq!(code(&o), 1);
    let report = fs::read_to_string(d.join("verify_sixvertex_s1.txt")).unwrap();
    assert!(report.contains("FAIL move graph L=6"));
}

#[test]
fn bad_input_exits_two() {
    let d = scratch("bad");
    for args in [
        &["enumerate", "--model", "fredkin1d", "--n", "5"][..],
        &["enumerate", "--model", "fredkin1d", "--n", "18"],
        &["enumerate", "--model", "fredkin1d", "--n", "4", "--q", "-1"],
        &["enumerate", "--model", "lozenge", "--domain", "nowhere"],
        &["enumerate", "--model", "sixvertex", "--l", "6", "--colors", "2"],
        &["correlate", "--model", "lozenge", "--domain", "hex1"],
        &["enumerate", "--model", "bogus"],
    ] {
        assert_eq!(code(&run(args, &d)), 2, "{args:?}");
    }
    assert!(snapshot(&d).is_empty(), "nothing written on bad input");
}

#[test]
fn outputs_are_byte_identical() {
    let cases: &[&[&str]] = &[
        &["enumerate", "--model", "fredkin1d", "--n", "6", "--colors", "2"],
        &["enumerate", "--model", "lozenge", "--domain", "hex3", "--format", "json"],
        &["contract", "--model", "sixvertex", "--l", "2"],
        &["correlate", "--model", "fredkin1d", "--n", "8"],
        &["render", "--model", "lozenge", "--domain", "hex6"],
        &["render", "--model", "sixvertex", "--l", "4", "--exploded"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let a = scratch(&format!("det{i}a"));
        let b = scratch(&format!("det{i}b"));
        assert_eq!(code(&run(args, &a)), 0, "{args:?}");
        assert_eq!(code(&run(args, &b)), 0, "{args:?}");
        let (sa, sb) = (snapshot(&a), snapshot(&b));
        assert!(!sa.is_empty());
        assert_eq!(sa, sb, "{args:?}");
    }
}

#[test]
fn empty_domain_render_is_an_error() {
    let d = scratch("empty");
    let dom = d.join("empty.json");
    fs::write(&dom, r#"{"faces": []}"#).unwrap();
    let o = run(&["render", "--model", "lozenge", "--domain", dom.to_str().unwrap()], &d);
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!d.join("tiling_lozenge_empty_s1_max.svg").exists());
}

#[test]
fn correlate_csv_layout() {
    let d = scratch("corr");
    assert_eq!(code(&run(&["correlate", "--model", "fredkin1d", "--n", "8", "--q", "1"], &d)), 0);
    let text = fs::read_to_string(d.join("correlate_fredkin1d_s1.csv")).unwrap();
    assert!(text.starts_with("model,L-or-N,s,q,r,phi_mean,S_r,G_c,fit_model,fit_param,residual\n"));
    assert_eq!(text.lines().count(), 1 + 8, "one row per cut r = 0..N-1");

    assert_eq!(code(&run(&["correlate", "--model", "sixvertex", "--l", "4", "--q", "1"], &d)), 0);
    let text = fs::read_to_string(d.join("correlate_sixvertex_s1.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(correlations::BANNER_2D));
    assert!(lines.next().unwrap().starts_with("model,"));
}

#[test]
fn render_reads_chain_input() {
    let d = scratch("input");
    let chain = d.join("chain.txt");
    fs::write(&chain, "u1 u1 d1 d1").unwrap();
    let o = run(&["render", "--model", "fredkin1d", "--n", "4", "--input", chain.to_str().unwrap()], &d);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let svg = fs::read_to_string(d.join("walk_fredkin1d_n4_s1_input.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
}
