use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn polyrig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyrig"))
        .args(args)
        .env_remove("COLLAGE_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = polyrig(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn circle_is_covered_by_its_charts() {
    let out = ok(&["cover-check", &path("circle.collage"), "--pieces", "A,B"]);
    assert!(out.starts_with("covering: true\n"), "{out}");
}

#[test]
fn partial_cover_reports_witness() {
    let out = ok(&["cover-check", &path("circle.collage"), "--pieces", "U,B"]);
    assert!(out.starts_with("covering: false\n"), "{out}");
    assert!(out.contains("witness: [1/8]"), "{out}");
}

#[test]
fn point_at_infinity_of_the_half_line() {
    let out = ok(&["classify-point", &path("halfline.collage"), "--point", "P_inf"]);
    assert!(out.contains("type: (1|0|0)\n"), "{out}");
    let out = ok(&["classify-point", &path("halfline.collage"), "--point", "P0", "--flag", "F0"]);
    assert!(out.contains("type: (0|1|0)\n"), "{out}");
    let out = ok(&["classify-point", &path("halfline.collage"), "--point", "P1"]);
    assert!(out.contains("type: (0|0|0)\n"), "{out}");
    let out = ok(&["classify-point", &path("square.collage"), "--point", "corner", "--flag", "corner_full"]);
    assert!(out.contains("type: (0|2|0)\n"), "{out}");
    let out = ok(&["classify-point", &path("square.collage"), "--point", "irrational"]);
    assert!(out.contains("type: (0|0|1)\n"), "{out}");
}

#[test]
fn fibration_sample_rows_match_grid() {
    let out = ok(&["fibration-sample", &path("interval.collage"), "--q", "0.5", "--grid", "16"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "b0,theta0,abs_z0,abs_z1,mu0,roundtrip_ok");
    assert_eq!(lines.len() - 1, 16);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true") && l.split(',').count() == 6));
}

#[test]
fn tolerance_comes_from_environment() {
    let run = |tol: &str| {
        Command::new(env!("CARGO_BIN_EXE_polyrig"))
            .args(["fibration-sample", &path("interval.collage"), "--q", "0.5", "--grid", "5"])
            .env("COLLAGE_TOL", tol)
            .output()
            .unwrap()
    };
    let o = run("0");
    assert_eq!(o.status.code(), Some(0));
    // 1/4 and 3/4 do not round-trip exactly through logarithms
    assert!(stdout(&o).contains(",false"), "{}", stdout(&o));
    assert!(!stdout(&run("1e-6")).contains(",false"));
    assert_eq!(run("lots").status.code(), Some(1));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["flags", &*path("square.collage"), "--point", "edge"],
        vec!["develop", &*path("circle.collage")],
        vec!["--json", "infinite-faces", &*path("halfline.collage")],
    ] {
        assert_eq!(ok(&args), ok(&args));
    }
}

#[test]
fn canonical_documents_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["circle.collage", "halfline.collage", "interval.collage", "square.collage", "torus.collage", "torus2.collage"] {
        let once = ok(&["canonicalize", &path(name), "--document"]);
        let p = dir.path().join(name);
        std::fs::write(&p, &once).unwrap();
        let twice = ok(&["canonicalize", p.to_str().unwrap(), "--document"]);
        assert_eq!(once, twice, "{name}");
    }
}

#[test]
fn torus_document_is_a_manifold() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.collage");
    ok(&["torus", &path("torus.collage"), "--output", out.to_str().unwrap()]);
    let report = ok(&["manifold-check", out.to_str().unwrap()]);
    assert!(report.starts_with("manifold: true\n"), "{report}");
    assert!(report.contains("- [1/3]"), "{report}");
    assert_eq!(ok(&["separated", out.to_str().unwrap()]), "separated: true\n");
}

#[test]
fn mumford_and_pic() {
    let out = ok(&["mumford", &path("torus2.collage")]);
    for line in ["proper: true", "separated: true", "manifold: true", "overconvergent: true"] {
        assert!(out.contains(line), "{out}");
    }
    assert!(ok(&["pic", &path("torus.collage")]).contains("metrisable: false"));
    assert!(ok(&["pic", &path("torus2.collage")]).contains("metrisable: true"));
}

#[test]
fn overconvergence_verdicts() {
    assert!(ok(&["overconvergent", &path("circle.collage"), "--open", "V"]).contains("overconvergent: true"));
    assert!(ok(&["overconvergent", &path("circle.collage"), "--open", "U"]).contains("overconvergent: false"));
}

#[test]
fn circle_monodromy() {
    let out = ok(&["monodromy", &path("circle.collage")]);
    assert!(out.contains("translations_only: true") && out.contains("- [2]"), "{out}");
}

#[test]
fn polyhedron_subcommands() {
    assert!(ok(&["faces", &path("square.collage")]).contains("count: 9\n"));
    assert!(ok(&["infinite-faces", &path("halfline.collage")]).contains("count: 1\n"));
    assert!(ok(&["normal-fan", &path("interval.collage")]).contains("cone_rays"));
    assert!(ok(&["monoid", &path("interval.collage")]).contains("module_generators: [-x0, x0 - 1]"));
    assert!(ok(&["canonicalize", &path("circle.collage"), "--chart", "B"]).contains("vertices:"));
    assert!(ok(&["refine", &path("circle.collage"), "--chart", "A", "--pieces", "U"]).contains("cells: 3\n"));
}

#[test]
fn point_subcommands() {
    let out = ok(&["flags", &path("square.collage"), "--point", "centre", "--depth", "2", "--window", "1"]);
    assert!(out.contains("count: 25\n"), "{out}");
    let out = ok(&["local-integers", &path("square.collage"), "--point", "corner"]);
    assert!(out.contains("vanishing_generators: [-x0, -x1]"), "{out}");
    let out = ok(&["valuation", &path("square.collage"), "--flag", "centre_line", "--function", "1,1;-1"]);
    assert!(out.contains("value: (0, 2)") && out.contains("sign: positive"), "{out}");
}

#[test]
fn norm_of_two_terms() {
    // |1| q^0 + |2+i| q^0 on [0,1]: both terms have supremum in (-1, 0].
    let out = ok(&["norm", &path("interval.collage"), "--q", "0.5", "--term", "1@-1@0", "--term", "2,1@1@-1"]);
    let v: f64 = out.lines().find_map(|l| l.strip_prefix("norm: ")).unwrap().parse().unwrap();
    assert!((v - (1.0 + 5f64.sqrt())).abs() < 1e-12, "{out}");
}

#[test]
fn json_mode() {
    let out = ok(&["--json", "classify-point", &path("halfline.collage"), "--point", "P_inf"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["type"], "(1|0|0)");
    let o = polyrig(&["--json", "classify-point", &path("halfline.collage"), "--point", "Q"]);
    assert_eq!(o.status.code(), Some(3));
    let e: serde_json::Value = serde_json::from_str(&stderr(&o)).unwrap();
    assert_eq!(e["error"]["code"], "unknown-point");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let syntax = write("syntax.collage", "version = \"1\"\n[[charts]]\nname = \"A\"\ndim = 1\nrows = [{ slope = [1], constant = \"x\" }]\n");
    let missing = write(
        "missing.collage",
        "version = \"1\"\n[[charts]]\nname = \"A\"\ndim = 1\n[[gluings]]\nfrom = \"A\"\nto = \"Z\"\nsource = []\nmatrix = [[1]]\ntranslation = [\"0\"]\n",
    );

    assert_eq!(polyrig(&["--help"]).status.code(), Some(0));
    assert_eq!(polyrig(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(polyrig(&["faces"]).status.code(), Some(1));
    assert_eq!(polyrig(&["faces", "/nonexistent/file"]).status.code(), Some(1));

    let o = polyrig(&["validate", &syntax]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error[syntax]: 5:"), "{}", stderr(&o));

    let o = polyrig(&["validate", &missing]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("unknown chart \"Z\""), "{}", stderr(&o));

    let o = polyrig(&["local-integers", &path("halfline.collage"), "--point", "P_inf"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error[invalid-argument]"));
}
