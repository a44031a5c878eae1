//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero when any criterion fails.

mod oracle;
mod population;

use std::panic;
use std::process::{Command, ExitCode};
use std::time::Instant;

use population::{families, random_spd, rng, Family, Sample};
use stratalg::catalog::{all_builtins, builtin, builtin_names};
use stratalg::report::parse_report;
use stratalg::rational::{int, to_f64};
use stratalg::{
    build_step2_j_stratification, center_dim_bounds, containment_audit, find_complex_structure,
    is_integrable, is_strata_preserving, parse_algebra_file, promote_candidate, search_integrable_j,
    theorem_suite, transport, verify_stratification, CatalogError, KCase, LieAlgebra, Outcome,
    PromotionError, SearchConfig, SearchOutcome, StratError, Subspace,
};

type Verdict = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn nilpotent_families() -> impl Iterator<Item = &'static Family> {
    families().iter().filter(|f| f.base.report.j0.is_some())
}

fn validation() -> Verdict {
    let entries = all_builtins();
    for e in &entries {
        ensure!(oracle::is_antisymmetric(&e.algebra), "{}: bracket not antisymmetric", e.name);
        ensure!(
            oracle::first_jacobi_failure(&e.algebra).is_none(),
            "{}: oracle finds a Jacobi failure",
            e.name
        );
        ensure!(e.algebra.validate().is_ok(), "{}: rejected", e.name);
    }

    let mutants: [(&str, (usize, usize), usize); 3] =
        [("kt4", (1, 3), 1), ("ch6", (5, 6), 1), ("fil4", (2, 3), 2)];
    let mut named = Vec::new();
    for (name, (i, j), k) in mutants {
        let base = builtin(name).unwrap().algebra;
        let n = base.dim();
        let mut out = vec![int(0); n];
        out[k - 1] = int(1);
        let table = base
            .structure_constants()
            .map(|(key, v)| (key, v.clone()))
            .chain([((i - 1, j - 1), out)]);
        let mutant = LieAlgebra::from_table(n, table).unwrap();
        let expected = oracle::first_jacobi_failure(&mutant);
        ensure!(expected.is_some(), "{name} mutant satisfies Jacobi");
        let violation = mutant.validate().err().ok_or(format!("{name} mutant accepted"))?;
        ensure!(
            Some(violation.triple) == expected,
            "{name} mutant: library names {:?}, oracle {:?}",
            violation.triple,
            expected
        );
        let (a, b, c) = violation.triple;
        let label = format!("(e{}, e{}, e{})", a + 1, b + 1, c + 1);
        ensure!(violation.to_string().contains(&label), "{name}: message lacks {label}");
        named.push(format!("{name}+[e{i},e{j}]=e{k} at {label}"));
    }

    // the same mutant through the file reader
    let text = r#"{"dim": 4, "brackets": [
        {"i": 1, "j": 2, "out": {"3": "1"}},
        {"i": 1, "j": 3, "out": {"1": "1"}}]}"#;
    match parse_algebra_file(text.as_bytes()) {
        Err(CatalogError::Jacobi(v)) => ensure!(v.triple == (0, 1, 2), "file triple {:?}", v.triple),
        other => return Err(format!("file mutant: {:?}", other.map(|p| p.name))),
    }
    Ok(format!("{} entries valid; {}", entries.len(), named.join("; ")))
}

fn integrability() -> Verdict {
    for name in ["kt4", "ch6", "hh6"] {
        let e = builtin(name).unwrap();
        let j = e.j().unwrap();
        let failures = oracle::nijenhuis_failures(&e.algebra, j.matrix());
        ensure!(failures.is_empty(), "{name}: oracle failures {failures:?}");
        ensure!(is_integrable(&e.algebra, j).integrable, "{name}: library rejects");
    }
    let hh6 = builtin("hh6").unwrap();
    let (_, variant) = hh6
        .complex_structures
        .iter()
        .find(|(n, _)| n == "Je1=e3")
        .ok_or("hh6 variant missing")?;
    let failures = oracle::nijenhuis_failures(&hh6.algebra, variant.matrix());
    ensure!(failures.first() == Some(&(1, 2)), "oracle witnesses {failures:?}");
    let report = is_integrable(&hh6.algebra, variant);
    ensure!(!report.integrable, "library accepts the hh6 variant");
    let pairs: Vec<_> = report.witnesses.iter().map(|w| w.pair).collect();
    ensure!(pairs == failures, "library witnesses {pairs:?}, oracle {failures:?}");
    let mut agree = 0;
    for f in families() {
        let lib = is_integrable(&f.base.algebra, &f.base.j).integrable;
        ensure!(lib == f.integrable, "{}: library {lib}, oracle {}", f.name, f.integrable);
        agree += 1;
    }
    Ok(format!(
        "kt4, ch6, hh6 integrable; hh6/Je1=e3 fails first at {:?}; oracle agrees on {agree} structures",
        failures[0]
    ))
}

fn expected_j0(family: &str) -> Option<usize> {
    match family {
        "a4/standard" => Some(1),
        "kt4/standard" | "ch6/standard" | "hh6/standard" => Some(2),
        "h7/standard" => Some(3),
        _ => None,
    }
}

fn route_agreement() -> Verdict {
    let mut checked = 0;
    let mut seen = Vec::new();
    for f in nilpotent_families() {
        let want = expected_j0(&f.name);
        for s in f.samples() {
            let truth = oracle::j0(&s.algebra, s.j.matrix());
            let r = &s.report.routes;
            ensure!(
                r.ascending == truth && r.p == truth && r.descending == truth,
                "{}: routes {r:?}, oracle {truth:?}",
                f.name
            );
            ensure!(s.report.j0 == truth && s.report.route_agreement, "{}: j0 {:?}", f.name, s.report.j0);
            if let Some(w) = want {
                ensure!(truth == Some(w), "{}: j0 {truth:?}, expected {w}", f.name);
            }
            checked += 1;
        }
        seen.push(format!("{} {}", f.name, f.base.report.j0.unwrap()));
    }
    for name in ["a4/standard", "kt4/standard", "ch6/standard", "hh6/standard"] {
        ensure!(nilpotent_families().any(|f| f.name == name), "{name} missing");
    }
    Ok(format!("{checked} instances agree; {}", seen.join(", ")))
}

fn image(s: &Sample, sub: &Subspace) -> Subspace {
    oracle::image(s.j.matrix(), sub)
}

fn containment_lattice() -> Verdict {
    let mut checks = 0usize;
    let mut violations = Vec::new();
    for f in nilpotent_families() {
        for s in f.samples() {
            let r = &s.report;
            let j0 = r.j0.unwrap();
            let mut check = |ok: bool, what: String| {
                checks += 1;
                if !ok {
                    violations.push(format!("{}: {what}", f.name));
                }
            };
            for j in 0..=r.horizon() {
                let c = r.c_desc.term(j);
                let p = r.p_desc.term(j);
                let d = r.d_desc.term(j);
                check(p.contains(c).unwrap(), format!("c_{j} ⊄ p_{j}"));
                check(d.contains(p).unwrap(), format!("p_{j} ⊄ d_{j}"));
                check(d.contains(&image(s, p)).unwrap(), format!("Jp_{j} ⊄ d_{j}"));
                if j <= j0 {
                    let cc = c.sum(&image(s, c)).unwrap();
                    let pp = p.sum(&image(s, p)).unwrap();
                    check(pp.contains(&cc).unwrap(), format!("c_{j}+Jc_{j} ⊄ p_{j}+Jp_{j}"));
                    check(d.contains(&pp).unwrap(), format!("p_{j}+Jp_{j} ⊄ d_{j}"));
                    check(
                        r.d_asc.term(j0 - j).contains(d).unwrap(),
                        format!("d_{j} ⊄ d^{}", j0 - j),
                    );
                }
            }
            for v in containment_audit(&s.algebra, &s.j, r) {
                check(v.outcome != Outcome::Fail, format!("audit {}: {}", v.name, v.detail));
            }
        }
    }
    ensure!(violations.is_empty(), "{} violations, first: {}", violations.len(), violations[0]);
    Ok(format!("{checks} containments, 0 violations"))
}

fn center_identity() -> Verdict {
    let mut checked = 0;
    for f in families() {
        for s in f.samples() {
            let z = oracle::center(&s.algebra);
            let d1 = s.report.d_asc.term(1);
            let meet = z.intersection(&image(s, &z)).unwrap();
            ensure!(*d1 == meet, "{}: d^1 dim {} vs z ∩ Jz dim {}", f.name, d1.dim(), meet.dim());
            let asc = oracle::j_ascending(&s.algebra, s.j.matrix());
            ensure!(asc[1.min(asc.len() - 1)] == meet, "{}: oracle d^1", f.name);
            ensure!(d1.dim() % 2 == 0, "{}: d^1 odd", f.name);
            if let Some(j0) = s.report.j0 {
                let k = f.step.ok_or(format!("{}: nilpotent J on non-nilpotent algebra", f.name))?;
                ensure!(k <= j0 && 2 * j0 <= s.algebra.dim(), "{}: k = {k}, j0 = {j0}", f.name);
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} instances"))
}

fn center_bounds() -> Verdict {
    let mut seen = Vec::new();
    for f in nilpotent_families().filter(|f| f.integrable && f.step.is_some_and(|k| k >= 2)) {
        for s in f.samples() {
            let z = oracle::center(&s.algebra).dim();
            let n = s.algebra.dim();
            ensure!(2 <= z && z + 2 <= n, "{}: dim z = {z}, dim = {n}", f.name);
            let v = center_dim_bounds(&s.algebra, &s.report);
            ensure!(v.outcome == Outcome::Pass, "{}: {}", f.name, v.detail);
        }
        let n = f.base.algebra.dim();
        seen.push(format!("{} {} ∈ [2,{}]", f.entry, oracle::center(&f.base.algebra).dim(), n - 2));
    }
    for name in ["kt4", "ch6", "hh6"] {
        let z = oracle::center(&builtin(name).unwrap().algebra).dim();
        ensure!(z == 2, "{name}: dim z = {z}");
    }
    Ok(seen.join(", "))
}

fn step_two_construction() -> Verdict {
    let mut r = rng(7);
    for name in ["ch6", "hh6"] {
        let e = builtin(name).unwrap();
        let j = e.j().unwrap();
        let n = e.algebra.dim();
        for trial in 0..20 {
            let phi = random_spd(&mut r, n);
            let s = build_step2_j_stratification(&e.algebra, j, &phi)
                .map_err(|err| format!("{name} trial {trial}: {err}"))?;
            ensure!(verify_stratification(&e.algebra, &s).is_ok(), "{name} trial {trial}: invalid");
            ensure!(is_strata_preserving(j, &s), "{name} trial {trial}: not strata-preserving");
            for layer in &s.layers {
                ensure!(oracle::image(j.matrix(), layer) == *layer, "{name}: layer not J-invariant");
            }
            let total = s.layers[0].sum(&s.layers[1]).unwrap();
            ensure!(total.is_full() && s.layers[0].dim() + s.layers[1].dim() == n, "{name}: not a direct sum");
        }
    }
    let kt4 = builtin("kt4").unwrap();
    let j = kt4.j().unwrap();
    let c1 = oracle::lower_central(&kt4.algebra)[1].clone();
    let je3 = j.apply(&[int(0), int(0), int(1), int(0)]);
    ensure!(je3 == vec![int(0), int(0), int(0), int(1)], "kt4: Je3 = {je3:?}");
    ensure!(!c1.contains_vector(&je3).unwrap(), "kt4: Je3 lies in c_1");
    match build_step2_j_stratification(&kt4.algebra, j, &random_spd(&mut r, 4)) {
        Err(StratError::DerivedNotInvariant) => {}
        other => return Err(format!("kt4: {:?}", other.map(|s| s.step()))),
    }
    Ok("ch6, hh6: 40 stratifications valid and strata-preserving; kt4 rejected (Je3 = e4 ∉ c_1)".into())
}

fn step_two_classification() -> Verdict {
    let mut seen = Vec::new();
    let mut checked = 0;
    for f in families().iter().filter(|f| f.integrable && f.step == Some(2)) {
        for s in f.samples() {
            let c = s.classification.as_ref().ok_or(format!("{}: unclassified", f.name))?;
            let j0 = s.report.j0.ok_or(format!("{}: J not nilpotent", f.name))?;
            ensure!(c.computed_j0 == Some(j0), "{}: computed {:?} vs {j0}", f.name, c.computed_j0);
            ensure!(c.predicted_j0 == j0, "{}: predicted {} vs {j0}", f.name, c.predicted_j0);
            ensure!(j0 == 2 || j0 == 3, "{}: j0 = {j0}", f.name);
            match f.entry.as_str() {
                "kt4" => ensure!(
                    c.case == KCase::KZero && j0 == 2 && c.center_preserving,
                    "kt4: {} j0 {j0} center {}",
                    c.case,
                    c.center_preserving
                ),
                "ch6" | "hh6" => ensure!(
                    c.case == KCase::KFull && j0 == 2 && c.strata_preserving,
                    "{}: {} j0 {j0} strata {}",
                    f.name,
                    c.case,
                    c.strata_preserving
                ),
                _ => {}
            }
            checked += 1;
        }
        let c = f.base.classification.as_ref().unwrap();
        seen.push(format!("{} {} j0={}", f.entry, c.case, c.predicted_j0));
    }
    for name in ["kt4", "ch6", "hh6"] {
        ensure!(seen.iter().any(|s| s.starts_with(name)), "{name} not classified");
    }
    Ok(format!("{checked} instances; {}", seen.join(", ")))
}

fn invariant_central_series() -> Verdict {
    let ch6 = families().iter().find(|f| f.name == "ch6/standard").ok_or("ch6 missing")?;
    let k = ch6.step.unwrap();
    for s in ch6.samples() {
        let lower = oracle::lower_central(&s.algebra);
        for (j, c) in lower.iter().enumerate() {
            ensure!(image(s, c) == *c, "ch6: c_{j} not J-invariant");
        }
        for j in 0..=s.report.horizon() {
            let c = &lower[j.min(lower.len() - 1)];
            ensure!(s.report.c_desc.term(j) == c, "ch6: library c_{j} differs from oracle");
            ensure!(s.report.p_desc.term(j) == c, "ch6: p_{j} ≠ c_{j}");
        }
        ensure!(s.report.j0 == Some(k), "ch6: j0 {:?}, k {k}", s.report.j0);
    }
    let mut met = Vec::new();
    for f in nilpotent_families().filter(|f| f.integrable) {
        let Some(k) = f.step.filter(|&k| k >= 1) else { continue };
        for s in f.samples() {
            if s.report.j0 != Some(k) {
                continue;
            }
            let z = oracle::center(&s.algebra);
            if oracle::lower_central(&s.algebra)[k - 1] != z {
                continue;
            }
            ensure!(image(s, &z) == z, "{}: Jz ≠ z", f.name);
            if !met.contains(&f.name) {
                met.push(f.name.clone());
            }
        }
    }
    ensure!(met.iter().any(|n| n == "ch6/standard"), "ch6 did not meet c_(k-1) = z");
    Ok(format!("ch6: p_j = c_j, j0 = k = {k}; Jz = z on {}", met.join(", ")))
}

fn equivariance() -> Verdict {
    let mut checked = 0;
    for f in families() {
        let base = &f.base;
        let suite = |s: &Sample| -> Result<Vec<(String, Outcome)>, String> {
            let out = theorem_suite(&s.algebra, &s.j, s.stratification.as_ref())
                .map_err(|e| format!("{}: {e}", f.name))?;
            Ok(out.verdicts().map(|v| (v.name.clone(), v.outcome)).collect())
        };
        let verdicts = suite(base)?;
        ensure!(
            verdicts.iter().all(|(_, o)| *o != Outcome::Fail),
            "{}: failing verdicts {:?}",
            f.name,
            verdicts
        );
        for s in &f.conjugates {
            let (a, b) = (&base.report, &s.report);
            ensure!(a.j0 == b.j0 && a.step == b.step, "{}: j0 or step moved", f.name);
            for (x, y) in a.series().iter().zip(b.series()) {
                ensure!(x.dims() == y.dims(), "{}: {:?} dims moved", f.name, x.kind);
                for (t, u) in x.terms.iter().zip(&y.terms) {
                    ensure!(transport(t, &s.p_inv) == *u, "{}: {:?} term does not transport", f.name, x.kind);
                }
            }
            let cases = (base.classification.as_ref().map(|c| c.case), s.classification.as_ref().map(|c| c.case));
            ensure!(cases.0 == cases.1, "{}: case {:?} vs {:?}", f.name, cases.0, cases.1);
            ensure!(suite(s)? == verdicts, "{}: verdicts changed", f.name);
            checked += 1;
        }
    }
    Ok(format!("{} structures × {} basis changes = {checked}", families().len(), population::CONJUGATIONS))
}

fn reverified(alg: &LieAlgebra, j: &stratalg::ComplexStructure) -> bool {
    oracle::squares_to_minus_identity(j.matrix()) && oracle::nijenhuis_failures(alg, j.matrix()).is_empty()
}

fn search_gate() -> Verdict {
    let mut found = Vec::new();
    for name in ["a4", "kt4"] {
        let alg = builtin(name).unwrap().algebra;
        let j = find_complex_structure(&alg, 1, 100)
            .map_err(|e| format!("{name}: {e}"))?
            .ok_or(format!("{name}: nothing found in 100 restarts"))?;
        ensure!(reverified(&alg, &j), "{name}: emitted J fails re-verification");
        let config = SearchConfig { seed: 1, restarts: 100, ..SearchConfig::default() };
        match search_integrable_j(&alg, &config).map_err(|e| e.to_string())? {
            SearchOutcome::Found { j: again, restart, .. } => {
                ensure!(again == j, "{name}: search is not deterministic");
                found.push(format!("{name} at restart {restart}"));
            }
            SearchOutcome::Exhausted { .. } => return Err(format!("{name}: exhausted")),
        }
    }

    // whatever comes back from a structure-free algebra must still verify
    let fil4 = builtin("fil4").unwrap().algebra;
    if let Some(j) = find_complex_structure(&fil4, 3, 5).map_err(|e| e.to_string())? {
        ensure!(reverified(&fil4, &j), "fil4: emitted J fails re-verification");
    }

    let hh6 = builtin("hh6").unwrap();
    let (_, variant) = hh6.complex_structures.iter().find(|(n, _)| n == "Je1=e3").unwrap();
    let floats: Vec<Vec<f64>> = variant.matrix().row_vectors().map(|r| r.iter().map(to_f64).collect()).collect();
    match promote_candidate(&hh6.algebra, &floats, 1_000_000) {
        Err(PromotionError::NotIntegrable { pair: (1, 2) }) => {}
        other => return Err(format!("non-integrable candidate: {other:?}")),
    }
    let mut skew = floats.clone();
    skew[0][1] += 0.25;
    ensure!(
        matches!(promote_candidate(&hh6.algebra, &skew, 1_000_000), Err(PromotionError::NotAlmostComplex(_))),
        "non-almost-complex candidate was promoted"
    );
    Ok(format!("{}; hook rejects non-integrable and non-almost-complex candidates", found.join(", ")))
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_stratalg"))
        .args(args)
        .output()
        .expect("spawn the binary");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const TOP_LEVEL_KEYS: [&str; 6] = ["name", "command", "dim", "status", "errors", "verdicts"];

fn cli_end_to_end() -> Verdict {
    for name in builtin_names() {
        let (code, first, _) = run_cli(&["-i", name, "--cmd", "report"]);
        let (code2, second, _) = run_cli(&["-i", name, "--cmd", "report"]);
        ensure!(first == second && code == code2, "{name}: output not deterministic");
        let report = parse_report(&first).map_err(|e| format!("{name}: {e}"))?;
        let value: serde_json::Value = serde_json::from_str(&first).unwrap();
        for key in TOP_LEVEL_KEYS {
            ensure!(value.get(key).is_some(), "{name}: missing `{key}`");
        }
        ensure!(report.validation.is_some() && report.series.is_some(), "{name}: sections missing");
        let want = if report.passed() { 0 } else { 1 };
        ensure!(code == want, "{name}: exit {code} with status {:?}", report.status);
        ensure!(code == 0, "{name}: report fails: {first}");
        let (_, md1, _) = run_cli(&["-i", name, "--cmd", "report", "--format", "markdown"]);
        let (_, md2, _) = run_cli(&["-i", name, "--cmd", "report", "--format", "markdown"]);
        ensure!(md1 == md2 && md1.starts_with('#'), "{name}: markdown not deterministic");
    }

    let (code, _, _) = run_cli(&["-i", "kt4", "--cmd", "validate"]);
    ensure!(code == 0, "validate kt4 exit {code}");

    let (code, out, _) = run_cli(&["-i", "ch6", "--cmd", "suite", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure!(code == 0, "suite ch6 exit {code}");
    ensure!(value["series"]["route_agreement"] == serde_json::Value::Bool(true), "suite ch6 lacks route_agreement true");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"name": "broken", "dim": 4, "brackets": [
            {"i": 1, "j": 2, "out": {"3": "1"}},
            {"i": 1, "j": 3, "out": {"1": "1"}}]}"#,
    )
    .unwrap();
    let (code, out, _) = run_cli(&["-i", bad.to_str().unwrap(), "--cmd", "report"]);
    ensure!(code == 1, "Jacobi-violating file exit {code}");
    ensure!(out.contains("(e1, e2, e3)"), "report does not name the triple: {out}");
    ensure!(parse_report(&out).is_ok(), "failure report is not schema-valid");

    let (code, _, _) = run_cli(&["-i", "no-such-algebra", "--cmd", "report"]);
    ensure!(code == 1, "unknown input exit {code}");
    let (code, _, err) = run_cli(&["-i", "kt4", "--cmd", "dance"]);
    ensure!(code == 2 && err.contains("--cmd"), "bad --cmd exit {code}: {err}");
    let (code, _, err) = run_cli(&["-i", "kt4", "--cmd", "search", "--threshold=-1"]);
    ensure!(code == 2 && err.contains("--threshold"), "bad --threshold exit {code}: {err}");
    let (code, _, _) = run_cli(&["--cmd", "report"]);
    ensure!(code == 2, "missing --input exit {code}");

    let target = dir.path().join("kt4.json");
    let (code, stdout, _) = run_cli(&["-i", "kt4", "--cmd", "report", "--out", target.to_str().unwrap()]);
    let written = std::fs::read_to_string(&target).map_err(|e| e.to_string())?;
    let (_, direct, _) = run_cli(&["-i", "kt4", "--cmd", "report"]);
    ensure!(code == 0 && stdout.is_empty() && written == direct, "--out does not match stdout");

    let (_, s1, _) = run_cli(&["-i", "kt4", "--cmd", "search", "--seed", "5", "--restarts", "20"]);
    let (_, s2, _) = run_cli(&["-i", "kt4", "--cmd", "search", "--seed", "5", "--restarts", "20"]);
    ensure!(s1 == s2, "search output not deterministic for a fixed seed");

    Ok(format!("{} builtins deterministic and schema-valid; exit codes 0/1/2 as specified", builtin_names().len()))
}

struct Criterion {
    id: usize,
    name: &'static str,
    check: fn() -> Verdict,
}

const CRITERIA: [Criterion; 12] = [
    Criterion { id: 1, name: "validation", check: validation },
    Criterion { id: 2, name: "integrability", check: integrability },
    Criterion { id: 3, name: "route agreement", check: route_agreement },
    Criterion { id: 4, name: "containment lattice", check: containment_lattice },
    Criterion { id: 5, name: "first ascending term is z ∩ Jz", check: center_identity },
    Criterion { id: 6, name: "center dimension bounds", check: center_bounds },
    Criterion { id: 7, name: "step-two invariant stratification", check: step_two_construction },
    Criterion { id: 8, name: "step-two classification", check: step_two_classification },
    Criterion { id: 9, name: "invariant central series", check: invariant_central_series },
    Criterion { id: 10, name: "equivariance", check: equivariance },
    Criterion { id: 11, name: "search gate", check: search_gate },
    Criterion { id: 12, name: "cli end-to-end", check: cli_end_to_end },
];

fn main() -> ExitCode {
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let verdict = panic::catch_unwind(c.check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS  {:>2} {} ({secs:.2}s): {detail}", c.id, c.name),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2} {} ({secs:.2}s): {detail}", c.id, c.name);
            }
        }
    }
    println!("{}/{} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
