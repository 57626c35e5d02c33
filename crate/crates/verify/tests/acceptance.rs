//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use eqtrees::gset::GSet;
use eqtrees::homology::{order_complex, reduced_homology};
use eqtrees::partition::build_partition_poset;
use eqtrees::perm::{Group, Perm};
use eqtrees::tree::{build_tree_poset, build_tree_space, default_leaf_names, f_inverse, f_map, parse_measured_tree};
use eqtrees::Rational;
use eqtrees_verify::sampling::{random_measured_tree, rng_from_seed};
use eqtrees_verify::scenario::parse_check_list;
use eqtrees_verify::{parse_scenario, run_scenario, Report, RunConfig, Scenario, Verdict};
use serde_json::{json, Value};

type Outcome = Result<String, String>;

fn scenario_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn load(file: &str) -> Scenario {
    let path = scenario_dir().join(file);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_scenario(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn run(mut scenario: Scenario, checks: &str) -> Report {
    scenario.checks = parse_check_list(checks).expect("known checks");
    run_scenario(&scenario, RunConfig::default())
}

fn require(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn verdict_is<'a>(report: &'a Report, check: &str, want: Verdict) -> Result<&'a Value, String> {
    let o = report.outcome(check).ok_or_else(|| format!("{check} missing"))?;
    require(o.verdict == want, || format!("{check}: {} ({})", o.verdict, o.summary))?;
    Ok(&o.payload)
}

fn points(n: usize) -> GSet {
    GSet::trivial(&Group::trivial(0), n)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Bell numbers from the Bell triangle.
fn bell(n: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

/// All set partitions of `0..n` as block labels (restricted growth strings).
fn brute_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn go(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == labels.len() {
            out.push(labels.clone());
            return;
        }
        for b in 0..=max + 1 {
            labels[i] = b;
            go(i + 1, max.max(b), labels, out);
        }
    }
    if n > 0 {
        go(1, 0, &mut labels, &mut out);
    }
    out
}

fn same_block(labels: &[usize], x: usize, y: usize) -> bool {
    labels[x] == labels[y]
}

/// `p` refines `q`.
fn refines(p: &[usize], q: &[usize]) -> bool {
    (0..p.len()).all(|x| (0..p.len()).all(|y| !same_block(p, x, y) || same_block(q, x, y)))
}

/// Nontrivial partitions invariant under every permutation in `perms`.
fn brute_invariant(n: usize, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    brute_partitions(n)
        .into_iter()
        .filter(|p| {
            let blocks = p.iter().max().map_or(0, |m| m + 1);
            blocks > 1 && blocks < n
        })
        .filter(|p| {
            perms.iter().all(|s| {
                (0..n).all(|x| (0..n).all(|y| same_block(p, x, y) == same_block(p, s[x], s[y])))
            })
        })
        .collect()
}

fn betti(v: &Value) -> Value {
    v["betti"].clone()
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    for n in 3..=5 {
        let scenario = parse_scenario(&format!("group=\"\"; gset=\"{n}\"")).unwrap();
        let report = run(scenario, "partition-homology");
        let payload = verdict_is(&report, "partition-homology", Verdict::Pass)?;
        let want = json!([[n - 3, factorial(n - 1)]]);
        require(betti(&payload["homology"]) == want, || format!("n={n}: {}", payload["homology"]))?;
        require(payload["homology"]["torsion"] == json!([]), || format!("n={n}: torsion"))?;
        require(payload["objects"] == json!(bell(n) - 2), || format!("n={n}: {} objects", payload["objects"]))?;
        notes.push(format!("n={n}: H{} = Z^{}", n - 3, factorial(n - 1)));
    }
    Ok(notes.join(", "))
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    for n in 3..=5 {
        let a = points(n);
        let space = build_tree_space(&a).unwrap();
        let trees = build_tree_poset(&a).unwrap();
        let partitions = build_partition_poset(&a).unwrap();
        let hs = reduced_homology(&space.complex).nonzero_betti();
        let ht = reduced_homology(&order_complex(&trees).unwrap()).nonzero_betti();
        let hp = reduced_homology(&order_complex(&partitions).unwrap()).nonzero_betti();
        require(hs == ht && ht == hp, || format!("n={n}: {hs:?} {ht:?} {hp:?}"))?;

        let mut rng = rng_from_seed(n as u64);
        let samples = 100;
        for _ in 0..samples {
            let m = random_measured_tree(trees.objects(), &mut rng);
            let back = f_inverse(&f_map(&m)).map_err(|e| e.to_string())?;
            require(back == m, || format!("round trip changed {m}"))?;
        }
        let scenario = parse_scenario(&format!("group=\"\"; gset=\"{n}\"")).unwrap();
        let report = run(scenario, "tree-homeo-roundtrip");
        let payload = verdict_is(&report, "tree-homeo-roundtrip", Verdict::Pass)?;
        require(payload["samples"] == json!(100), || "sample count".into())?;
        notes.push(format!("n={n}: {hs:?}, {samples}+100 round trips"));
    }
    Ok(notes.join("; "))
}

fn criterion_3() -> Outcome {
    let names = default_leaf_names(6);
    let m = parse_measured_tree("((1 2)@1/2 ((3 4)@1/2 (5 6)@2/3)@1)", &names).map_err(|e| e.to_string())?;
    let point = f_map(&m);
    let r = |a: i64, b: i64| Rational::new(a.into(), b.into());
    require(point.coordinates == vec![r(1, 2), r(1, 6), r(1, 3)], || {
        format!("coordinates {:?}", point.coordinates)
    })?;
    let chain: Vec<String> = point.trees.iter().map(|t| t.to_string()).collect();
    let displayed = ["((1 2) ((3 4) (5 6)))", "(1 2 (3 4 (5 6)))", "(1 2 (3 4 5 6))"];
    require(chain == displayed, || format!("chain {chain:?}"))?;
    require(f_inverse(&point).as_ref() == Ok(&m), || "inverse differs".into())?;
    Ok(format!("{} with (1/2, 1/6, 1/3)", chain.join(" > ")))
}

fn criterion_4() -> Outcome {
    // (file, group order, number of subgroups, C2 generator as images for the brute-force count)
    let cases = [
        ("c2_free4.scn", 2, 2),
        ("c2_orbit_point.scn", 2, 2),
        ("c4_mixed.scn", 4, 3),
        ("s3_regular.scn", 6, 6),
    ];
    let mut notes = Vec::new();
    for (file, order, subgroups) in cases {
        let scenario = load(file);
        require(scenario.group.order() == order, || format!("{file}: group order"))?;
        let a = scenario.gset.clone();
        let report = run(scenario, "fixed-point-equivalence,tree-fixed-points");
        for check in ["fixed-point-equivalence", "tree-fixed-points"] {
            let payload = verdict_is(&report, check, Verdict::Pass)?;
            let rows = payload["subgroups"].as_array().unwrap();
            require(rows.len() == subgroups, || format!("{file}: {} subgroups", rows.len()))?;
            for row in rows {
                require(row["isomorphism"].is_array(), || format!("{file} {check}: no certificate for {}", row["subgroup"]))?;
            }
        }
        // Whole-group fixed partitions against an independent enumeration.
        let perms: Vec<Vec<usize>> =
            a.group().generators().iter().map(|&g| a.alpha(g).images().to_vec()).collect();
        let expected = brute_invariant(a.size(), &perms).len();
        let rows = report.outcome("fixed-point-equivalence").unwrap().payload["subgroups"].clone();
        let full = rows.as_array().unwrap().iter().find(|r| r["order"] == json!(order)).unwrap();
        require(full["direct_objects"] == json!(expected), || format!("{file}: {} vs {expected}", full["direct_objects"]))?;
        notes.push(format!("{file}: {subgroups} subgroups, {expected} G-invariant partitions"));
    }
    Ok(notes.join("; "))
}

fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    for file in ["c2_orbit_point.scn", "c4_mixed.scn"] {
        let report = run(load(file), "nonisovariant-acyclic");
        let payload = verdict_is(&report, "nonisovariant-acyclic", Verdict::Pass)?;
        require(payload["connected"] == json!(true), || format!("{file}: disconnected"))?;
        require(betti(&payload["homology"]) == json!([]), || format!("{file}: {}", payload["homology"]))?;
        require(payload["homology"]["torsion"] == json!([]), || format!("{file}: torsion"))?;
        let cone = payload["cone_point"].as_str().map_or("no cone point".to_string(), |c| format!("cone point {c}"));
        notes.push(format!("{file}: {} objects, acyclic, {cone}", payload["objects"]));
    }
    Ok(notes.join("; "))
}

/// Components of the comparability graph on `parts`.
fn components(parts: &[Vec<usize>]) -> usize {
    let k = parts.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for i in 0..k {
        for j in 0..k {
            if refines(&parts[i], &parts[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..k).filter(|&i| find(&mut parent, i) == i).count()
}

fn criterion_6() -> Outcome {
    let report = run(load("c2_free4.scn"), "isovariant-wedge");
    let payload = verdict_is(&report, "isovariant-wedge", Verdict::Pass)?;
    let oracle = components(&brute_invariant(4, &[vec![1, 0, 3, 2]])) - 1;
    require(oracle == 2, || format!("brute-force reduced H0 rank {oracle}"))?;
    require(betti(&payload["direct"]) == json!([[0, oracle]]), || format!("direct {}", payload["direct"]))?;
    require(payload["predicted"] == json!([[0, "2"]]), || format!("predicted {}", payload["predicted"]))?;

    let report = run(load("s3_regular.scn"), "subgroup-lattice");
    let payload = verdict_is(&report, "subgroup-lattice", Verdict::Pass)?;
    let trivial = payload["classes"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["order"] == json!(1))
        .ok_or("no trivial class")?;
    require(trivial["shape"] == json!("4 points"), || format!("S(S3,e) is {}", trivial["shape"]))?;
    require(trivial["matches_invariant_partitions"] == json!(true), || "S(S3,e) not matched".into())?;
    Ok("C2 free of size 4: reduced H0 = Z^2 = prediction; S(S3,e) is 4 points".into())
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    for file in ["c2_free4.scn", "c4_mixed.scn"] {
        let report = run(load(file), "finality,initiality");
        for check in ["finality", "initiality"] {
            let payload = verdict_is(&report, check, Verdict::Pass)?;
            require(payload["failures"] == json!([]), || format!("{file} {check}: failures"))?;
            require(payload["translations_hold"] == json!(true), || format!("{file} {check}: translations"))?;
            notes.push(format!(
                "{file} {check}: {} fibers, {} cones",
                payload["fibers"], payload["cone_points"]
            ));
        }
    }
    Ok(notes.join("; "))
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    for (file, n) in [("s3_natural.scn", 3), ("s4_natural.scn", 4), ("c4_mixed.scn", 6)] {
        let report = run(load(file), "lie-character");
        let payload = verdict_is(&report, "lie-character", Verdict::Pass)?;
        require(payload["rank"] == json!(factorial(n - 1)), || format!("{file}: rank {}", payload["rank"]))?;
        require(payload["degree"] == json!(n - 3), || format!("{file}: degree"))?;
        require(payload["concentrated"] == json!(true) && payload["torsion_free"] == json!(true), || {
            format!("{file}: not concentrated or torsion")
        })?;
        let classes = payload["classes"].as_array().unwrap();
        require(classes.iter().all(|c| c["agrees"] == json!(true)), || format!("{file}: class mismatch"))?;
        notes.push(format!("{file}: rank {}, {} classes agree", factorial(n - 1), classes.len()));
    }
    Ok(notes.join("; "))
}

/// `|N_{Σ_k}(⟨s⟩)| / |⟨s⟩|` for an involution `s`, by scanning `Σ_k`.
fn weyl_of_involution(s: &[usize]) -> usize {
    let k = s.len();
    let sp = Perm::new(s.to_vec()).unwrap();
    let mut count = 0;
    let mut images: Vec<usize> = (0..k).collect();
    loop {
        let g = Perm::new(images.clone()).unwrap();
        if g.compose(&sp).compose(&g.inverse()) == sp {
            count += 1;
        }
        // next permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| images[i] < images[i + 1]) else { break };
        let j = (i + 1..k).rev().find(|&j| images[j] > images[i]).unwrap();
        images.swap(i, j);
        images[i + 1..].reverse();
    }
    count / 2
}

fn criterion_9() -> Outcome {
    let report = run(load("c2_free4.scn"), "weyl-identity");
    let payload = verdict_is(&report, "weyl-identity", Verdict::ReportOnly)?;
    let big = weyl_of_involution(&[1, 0, 3, 2]);
    let small = weyl_of_involution(&[1, 0]);
    require(payload["weyl_in_sigma_dm"] == json!(big), || format!("W in S4: {}", payload["weyl_in_sigma_dm"]))?;
    require(payload["weyl_in_sigma_d"] == json!(small), || format!("W in S2: {}", payload["weyl_in_sigma_d"]))?;
    require(payload["m_factorial"] == json!(2), || "m!".into())?;
    let left = big / (small * 2);
    require(payload["left"] == json!(left.to_string()), || format!("left {}", payload["left"]))?;
    Ok(format!(
        "report only: left {} = {big}/({small}*2); right {} (exponent m-1), {} (exponent dm-1)",
        payload["left"].as_str().unwrap(),
        payload["right_exponent_m_minus_1"].as_str().unwrap(),
        payload["right_exponent_dm_minus_1"].as_str().unwrap()
    ))
}

fn criterion_10() -> Outcome {
    let mut files: Vec<String> = std::fs::read_dir(scenario_dir())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|f| f.ends_with(".scn") && !f.starts_with("psl27"))
        .collect();
    files.sort();
    for file in &files {
        let report = run(load(file), "invariants");
        verdict_is(&report, "invariants", Verdict::Pass).map_err(|e| format!("{file}: {e}"))?;
    }

    let scenario = load("c4_mixed.scn");
    let first = run(scenario.clone(), "tree-homeo-roundtrip,invariants").to_json();
    let second = run(scenario, "tree-homeo-roundtrip,invariants").to_json();
    require(first == second, || "library reports differ".into())?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("run{i}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_verify"))
            .arg(scenario_dir().join("c2_free4.scn"))
            .arg("--json")
            .arg(&out)
            .stderr(Stdio::null())
            .status()
            .map_err(|e| e.to_string())?;
        require(status.code() == Some(0), || format!("exit status {status}"))?;
        outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    require(outputs[0] == outputs[1], || "CLI reports differ".into())?;
    Ok(format!(
        "invariants hold on {} scenarios; reports byte-identical ({} bytes)",
        files.len(),
        outputs[0].len()
    ))
}

fn main() {
    let criteria: [(usize, &str, u64, fn() -> Outcome); 10] = [
        (1, "partition complex homology", 10, criterion_1),
        (2, "tree space agreement and F round trip", 30, criterion_2),
        (3, "worked measured-tree example", 1, criterion_3),
        (4, "fixed-point equivalences", 60, criterion_4),
        (5, "non-isovariant contractibility", 30, criterion_5),
        (6, "isovariant wedge and S(S3,e)", 10, criterion_6),
        (7, "finality and initiality fiber checks", 300, criterion_7),
        (8, "tree homology is sign times Lie", 300, criterion_8),
        (9, "Weyl identity (report only)", 60, criterion_9),
        (10, "invariants and report determinism", 60, criterion_10),
    ];
    let mut failed = 0;
    for (id, title, limit, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > Duration::from_secs(limit) => Err(format!("took longer than {limit}s")),
            other => other,
        };
        let (verdict, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => {
                failed += 1;
                ("FAIL", d.clone())
            }
        };
        println!(
            "criterion {id:>2} {verdict} {title} [{:.2}s / {limit}s]: {detail}",
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
