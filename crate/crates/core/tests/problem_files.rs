use std::fs;
use std::path::Path;

use plap::problem::{NonlinearityKind, ProblemSpec};

fn shipped() -> Vec<(String, ProblemSpec)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems");
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), ProblemSpec::from_path(&p).unwrap()))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[test]
fn every_shipped_problem_validates() {
    let all = shipped();
    assert!(all.len() >= 6);
    for (name, spec) in &all {
        let report = spec.validate();
        assert!(report.passed(), "{name}: {report}");
    }
}

#[test]
fn shipped_problems_round_trip() {
    for (name, spec) in shipped() {
        let back = ProblemSpec::from_toml_str(&spec.to_toml_string()).unwrap();
        assert_eq!(back, spec, "{name}");
    }
}

#[test]
fn shipped_values_are_read_as_written() {
    let all = shipped();
    let get = |n: &str| all.iter().find(|(name, _)| name == n).map(|(_, s)| s.clone()).unwrap();
    let fucik = get("fucik_p3.toml");
    assert_eq!(fucik.p, 3.0);
    assert_eq!((fucik.alpha.eval(0.5), fucik.beta.eval(0.5)), (2.0, 1.0));
    let rational = get("rational_k1.toml");
    assert_eq!(rational.r, 15.0);
    let f = rational.f.unwrap();
    assert_eq!(f.kind(), NonlinearityKind::Rational);
    assert_eq!((f.f0(), f.f_inf()), (Some(1.0), Some(0.5)));
    let weighted = get("weighted_p1_5.toml");
    assert_eq!(weighted.length, 2.0);
    assert!((weighted.weight.eval(2.0) - 2.0).abs() < 1e-15);
    assert!((weighted.alpha.eval(1.0) - 1.0).abs() < 1e-15);
    assert_eq!(get("explicit_family.toml").f.unwrap().kind(), NonlinearityKind::OscillatoryEnergy);
}

#[test]
fn malformed_files_are_rejected() {
    for text in [
        "p = 2.0\nunknown_key = 1\n",
        "p = 2.0\n[weight]\nkind = \"spline\"\nparams = [1.0]\n",
        "p = 2.0\n[f]\nkind = \"rational\"\nparams = [1.0]\n",
        "domain_length = 1.0\n",
        "p = \"two\"\n",
    ] {
        assert!(ProblemSpec::from_toml_str(text).is_err(), "accepted: {text:?}");
    }
    let spec = ProblemSpec::from_toml_str("p = 2.0\n[weight]\nkind = \"affine\"\nparams = [1.0, -2.0]\n").unwrap();
    assert!(!spec.validate().passed());
    assert!(spec.check().is_err());
}
