//! The checks a scenario can request, and the shared structures they use.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use eqtrees::gset::{coset_gset, isovariance_class, GSet};
use eqtrees::guards::Guards;
use eqtrees::homology::{
    character, reduced_homology, vertex_action, HomologyResult, SimplicialComplex,
};
use eqtrees::lie::verify_tree_homology_module_within;
use eqtrees::partition::{
    build_equivariant_partition_poset, build_partition_poset_within, invariant_partitions_via_surjections,
    isovariant_wedge_prediction, orbit_partition, orthogonal_complement, orthogonal_complement_by_lattice,
    two_orbit_subposet, weyl_identity_check_within, Partition,
};
use eqtrees::perm::{all_subgroups_within, are_conjugate, is_normal, is_solvable, Group, Subgroup};
use eqtrees::poset::{between_subgroup_poset, compare_posets, poset_isomorphic, ActedPoset, ChainPoset, Poset};
use eqtrees::quillen::{
    check_g_finality, check_g_initiality, check_realization_equivalence_within, last_vertex_map, layered_tree_map,
    ArrowConvention, Certificate, FiberCheckReport, PosetMap, RealizationReport,
};
use eqtrees::tree::{
    build_tree_poset, build_tree_space, equivariant_tree_poset, equivariant_tree_space_by_orbits, f_inverse, f_map,
    fixed_tree_space, labelled_faces, ReducedTree, TreeSpace,
};
use eqtrees::{Error, Result};
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::sampling::{random_measured_tree, rng_from_seed};
use crate::scenario::Scenario;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    PartitionHomology,
    FixedPointEquivalence,
    TreeFixedPoints,
    TreeHomeoRoundtrip,
    Finality,
    Initiality,
    ZigzagBetti,
    NonisovariantAcyclic,
    IsovariantWedge,
    WeylIdentity,
    SubgroupLattice,
    LieCharacter,
    SolvableWedge,
    Invariants,
}

impl CheckId {
    pub const ALL: [CheckId; 14] = [
        CheckId::PartitionHomology,
        CheckId::FixedPointEquivalence,
        CheckId::TreeFixedPoints,
        CheckId::TreeHomeoRoundtrip,
        CheckId::Finality,
        CheckId::Initiality,
        CheckId::ZigzagBetti,
        CheckId::NonisovariantAcyclic,
        CheckId::IsovariantWedge,
        CheckId::WeylIdentity,
        CheckId::SubgroupLattice,
        CheckId::LieCharacter,
        CheckId::SolvableWedge,
        CheckId::Invariants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::PartitionHomology => "partition-homology",
            CheckId::FixedPointEquivalence => "fixed-point-equivalence",
            CheckId::TreeFixedPoints => "tree-fixed-points",
            CheckId::TreeHomeoRoundtrip => "tree-homeo-roundtrip",
            CheckId::Finality => "finality",
            CheckId::Initiality => "initiality",
            CheckId::ZigzagBetti => "zigzag-betti",
            CheckId::NonisovariantAcyclic => "nonisovariant-acyclic",
            CheckId::IsovariantWedge => "isovariant-wedge",
            CheckId::WeylIdentity => "weyl-identity",
            CheckId::SubgroupLattice => "subgroup-lattice",
            CheckId::LieCharacter => "lie-character",
            CheckId::SolvableWedge => "solvable-wedge",
            CheckId::Invariants => "invariants",
        }
    }

    /// The statement the check tests.
    pub fn anchor(self) -> &'static str {
        match self {
            CheckId::PartitionHomology => {
                "partition complex of n points: reduced homology free of rank (n-1)!, concentrated in degree n-3"
            }
            CheckId::FixedPointEquivalence => "H-fixed partitions of A are the H-equivariant partitions of A restricted to H",
            CheckId::TreeFixedPoints => "H-fixed A-trees are the H-trees on A restricted to H",
            CheckId::TreeHomeoRoundtrip => {
                "measured A-trees correspond equivariantly to points of the realized tree poset; tree space, tree poset and partition complex agree"
            }
            CheckId::Finality => "sending a chain of partitions to its layered tree is G-homotopy final",
            CheckId::Initiality => "sending a chain to its final element is G-homotopy initial",
            CheckId::ZigzagBetti => {
                "the zig-zag between partition complex, chain subdivision and tree poset is a G-homotopy equivalence"
            }
            CheckId::NonisovariantAcyclic => {
                "A not isovariant for any subgroup: the invariant partition complex and invariant tree space are contractible"
            }
            CheckId::IsovariantWedge => {
                "A = m copies of G/H: invariant partition complex is |W_G(H)|^(m-1) smashes of S(G,H) with the partition complex of m"
            }
            CheckId::WeylIdentity => "Weyl group counting identity for H-isovariant actions",
            CheckId::SubgroupLattice => "invariant partitions of G/H are equivalent to the subgroups strictly between H and G",
            CheckId::LieCharacter => "top homology of the A-tree space is the sign representation tensored with Lie_A",
            CheckId::SolvableWedge => {
                "G solvable, H normal, A H-isovariant: invariant partition complex and invariant tree space have free homology in one degree"
            }
            CheckId::Invariants => {
                "Lagrange, orbit-stabilizer, Burnside, boundary of boundary, Euler-Poincare, action automorphisms"
            }
        }
    }

    pub fn is_report_only(self) -> bool {
        matches!(self, CheckId::WeylIdentity)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        CheckId::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<&str> = CheckId::ALL.iter().map(|c| c.name()).collect();
            format!("unknown check `{s}` (expected one of {}, or all)", names.join(", "))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    ReportOnly,
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::ReportOnly => "REPORT-ONLY",
            Verdict::Skipped => "SKIPPED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub check: CheckId,
    pub verdict: Verdict,
    pub summary: String,
    pub payload: Value,
    pub millis: u128,
}

/// Knobs that are not part of the scenario file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            samples: 100,
            workers: 0,
        }
    }
}

fn guard(name: &'static str, limit: usize, actual: usize) -> Result<()> {
    if actual > limit {
        Err(Error::GuardExceeded {
            guard: name,
            limit,
            actual,
        })
    } else {
        Ok(())
    }
}

fn cached<'a, T>(cell: &'a OnceLock<Result<T>>, build: impl FnOnce() -> Result<T>) -> Result<&'a T> {
    match cell.get_or_init(build) {
        Ok(v) => Ok(v),
        Err(e) => Err(e.clone()),
    }
}

/// Structures shared between checks, built on first use.
pub struct Context<'a> {
    pub scenario: &'a Scenario,
    pub config: RunConfig,
    subgroups: OnceLock<Result<Vec<Subgroup>>>,
    partitions: OnceLock<Result<ActedPoset<Partition>>>,
    partition_complex: OnceLock<Result<(SimplicialComplex, HomologyResult)>>,
    invariant_partitions: OnceLock<Result<ActedPoset<Partition>>>,
    chains: OnceLock<Result<ChainPoset>>,
    trees: OnceLock<Result<ActedPoset<ReducedTree>>>,
    space: OnceLock<Result<TreeSpace>>,
}

impl<'a> Context<'a> {
    pub fn new(scenario: &'a Scenario, config: RunConfig) -> Self {
        Context {
            scenario,
            config,
            subgroups: OnceLock::new(),
            partitions: OnceLock::new(),
            partition_complex: OnceLock::new(),
            invariant_partitions: OnceLock::new(),
            chains: OnceLock::new(),
            trees: OnceLock::new(),
            space: OnceLock::new(),
        }
    }

    fn a(&self) -> &GSet {
        &self.scenario.gset
    }

    fn g(&self) -> &Group {
        &self.scenario.group
    }

    fn guards(&self) -> &Guards {
        &self.scenario.guards
    }

    fn n(&self) -> usize {
        self.a().size()
    }

    fn subgroups(&self) -> Result<&Vec<Subgroup>> {
        cached(&self.subgroups, || all_subgroups_within(self.g(), self.guards().subgroup_search))
    }

    fn partitions(&self) -> Result<&ActedPoset<Partition>> {
        cached(&self.partitions, || build_partition_poset_within(self.a(), self.guards().partition_points))
    }

    fn partition_complex(&self) -> Result<&(SimplicialComplex, HomologyResult)> {
        cached(&self.partition_complex, || {
            let k = order_complex_guarded(self.partitions()?, self.guards())?;
            let h = reduced_homology(&k);
            Ok((k, h))
        })
    }

    fn invariant_partitions(&self) -> Result<&ActedPoset<Partition>> {
        cached(&self.invariant_partitions, || {
            guard("partition_points", self.guards().partition_points, self.n())?;
            build_equivariant_partition_poset(self.a(), &Subgroup::full(self.g()))
        })
    }

    fn chains(&self) -> Result<&ChainPoset> {
        cached(&self.chains, || {
            self.partitions()?.chain_poset_filtered(|_| true, self.guards().chain_count)
        })
    }

    fn trees(&self) -> Result<&ActedPoset<ReducedTree>> {
        cached(&self.trees, || {
            guard("tree_leaves", self.guards().tree_leaves, self.n())?;
            build_tree_poset(self.a())
        })
    }

    fn space(&self) -> Result<&TreeSpace> {
        cached(&self.space, || {
            guard("tree_leaves", self.guards().tree_leaves, self.n())?;
            build_tree_space(self.a())
        })
    }
}

fn order_complex_guarded<O: eqtrees::poset::PosetObject>(p: &ActedPoset<O>, guards: &Guards) -> Result<SimplicialComplex> {
    let chains = p.chain_poset_filtered(|_| true, guards.chain_count)?;
    Ok(eqtrees::homology::chains_as_complex(&chains))
}

pub fn homology_json(h: &HomologyResult) -> Value {
    let betti: Vec<Value> = h.nonzero_betti().into_iter().map(|(d, b)| json!([d, b])).collect();
    let torsion: Vec<Value> = h
        .degrees
        .iter()
        .filter(|d| !d.torsion.is_empty())
        .map(|d| json!([d.degree, d.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()]))
        .collect();
    json!({ "betti": betti, "torsion": torsion, "text": h.to_string() })
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// One representative per conjugacy class, in lattice order.
fn class_representatives(subgroups: &[Subgroup]) -> Result<Vec<Subgroup>> {
    let mut reps: Vec<Subgroup> = Vec::new();
    for h in subgroups {
        let mut fresh = true;
        for r in &reps {
            if are_conjugate(r, h)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            reps.push(h.clone());
        }
    }
    Ok(reps)
}

type Outcome = (Verdict, String, Value);

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn skipped(reason: impl Into<String>) -> Result<Outcome> {
    let reason = reason.into();
    Ok((Verdict::Skipped, reason.clone(), json!({ "reason": reason })))
}

fn partition_homology(ctx: &Context) -> Result<Outcome> {
    let n = ctx.n();
    let p = ctx.partitions()?;
    let (k, h) = ctx.partition_complex()?;
    let invariant = ctx.invariant_partitions()?;
    let hg = reduced_homology(&order_complex_guarded(invariant, ctx.guards())?);
    let payload = json!({
        "points": n,
        "objects": p.len(),
        "chains": k.simplex_count(),
        "homology": homology_json(h),
        "invariant_objects": invariant.len(),
        "invariant_homology": homology_json(&hg),
    });
    if n < 3 {
        return Ok((
            Verdict::ReportOnly,
            format!("{n} points: the partition poset is empty"),
            payload,
        ));
    }
    let degree = n - 3;
    let expected = factorial(n - 1);
    let ok = h.concentrated_in() == Some(degree as isize) && h.betti(degree as isize) == expected && h.is_torsion_free();
    let summary = format!("reduced homology {h}; expected Z^{expected} in degree {degree}");
    Ok((pass_if(ok), summary, payload))
}

fn fixed_point_equivalence(ctx: &Context) -> Result<Outcome> {
    let a = ctx.a();
    let full = ctx.partitions()?;
    let rows = ctx
        .subgroups()?
        .par_iter()
        .map(|h| {
            let fixed = full.fixed_subposet(h)?;
            let direct = build_equivariant_partition_poset(a, h)?;
            let cmp = compare_posets(&fixed, &direct)?;
            let oracle = if a.size() <= 6 {
                let by_maps = invariant_partitions_via_surjections(a, h)?;
                let built: std::collections::BTreeSet<Partition> = direct.objects().iter().cloned().collect();
                Some(by_maps == built)
            } else {
                None
            };
            let ok = cmp.holds() && oracle != Some(false);
            Ok((
                ok,
                json!({
                    "subgroup": h.describe(),
                    "order": h.order(),
                    "fixed_objects": cmp.fixed_objects,
                    "fixed_relations": cmp.fixed_relations,
                    "direct_objects": cmp.direct_objects,
                    "direct_relations": cmp.direct_relations,
                    "isomorphism": cmp.isomorphism,
                    "surjection_oracle_agrees": oracle,
                }),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = rows.iter().all(|r| r.0);
    let passing = rows.iter().filter(|r| r.0).count();
    let summary = format!("{passing}/{} subgroups: fixed subposet isomorphic to direct construction", rows.len());
    let rows: Vec<Value> = rows.into_iter().map(|r| r.1).collect();
    Ok((pass_if(ok), summary, json!({ "subgroups": rows })))
}

fn tree_fixed_points(ctx: &Context) -> Result<Outcome> {
    if ctx.n() < 3 {
        return skipped("fewer than three points: no reduced trees");
    }
    let a = ctx.a();
    let trees = ctx.trees()?;
    let space = ctx.space()?;
    let rows = ctx
        .subgroups()?
        .par_iter()
        .map(|h| {
            let fixed = trees.fixed_subposet(h)?;
            let direct = equivariant_tree_poset(a, h)?;
            let cmp = compare_posets(&fixed, &direct)?;
            let (fk, labels) = fixed_tree_space(space, h);
            let space_agrees = if a.size() <= 6 {
                let (ok, ol) = equivariant_tree_space_by_orbits(a, h)?;
                Some(labelled_faces(&fk, &labels) == labelled_faces(&ok, &ol))
            } else {
                None
            };
            let ok = cmp.holds() && space_agrees != Some(false);
            Ok((
                ok,
                json!({
                    "subgroup": h.describe(),
                    "order": h.order(),
                    "fixed_objects": cmp.fixed_objects,
                    "fixed_relations": cmp.fixed_relations,
                    "direct_objects": cmp.direct_objects,
                    "direct_relations": cmp.direct_relations,
                    "isomorphism": cmp.isomorphism,
                    "fixed_space_simplices": fk.simplex_count(),
                    "orbit_space_agrees": space_agrees,
                }),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = rows.iter().all(|r| r.0);
    let passing = rows.iter().filter(|r| r.0).count();
    let summary = format!("{passing}/{} subgroups: fixed trees isomorphic to direct H-trees", rows.len());
    let rows: Vec<Value> = rows.into_iter().map(|r| r.1).collect();
    Ok((pass_if(ok), summary, json!({ "subgroups": rows })))
}

fn tree_homeo_roundtrip(ctx: &Context) -> Result<Outcome> {
    if ctx.n() < 3 {
        return skipped("fewer than three points: no reduced trees");
    }
    let a = ctx.a();
    let trees = ctx.trees()?;
    let names = a.names();
    let mut rng = rng_from_seed(ctx.config.seed);
    let mut round_trip_failures = Vec::new();
    let mut equivariance_failures = Vec::new();
    let mut example = Value::Null;
    for i in 0..ctx.config.samples {
        let m = random_measured_tree(trees.objects(), &mut rng);
        let g = rng.random_range(0..ctx.g().order());
        let point = f_map(&m);
        let valid = point.validate().is_ok();
        let back = f_inverse(&point);
        if !valid || back.as_ref() != Ok(&m) {
            round_trip_failures.push(m.code(&names));
        }
        let sigma = a.alpha(g);
        if f_map(&m.image(sigma)) != point.image(sigma) {
            equivariance_failures.push(json!({ "tree": m.code(&names), "element": sigma.to_string() }));
        }
        if i == 0 {
            example = json!({
                "tree": m.code(&names),
                "chain": point.trees.iter().map(|t| t.render(&names)).collect::<Vec<_>>(),
                "coordinates": point.coordinates.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
        }
    }

    let partitions = ctx.partitions()?;
    let space = ctx.space()?;
    let rows = ctx
        .subgroups()?
        .par_iter()
        .map(|h| {
            let (fk, _) = fixed_tree_space(space, h);
            let tree_space = reduced_homology(&fk);
            let tree_poset = reduced_homology(&order_complex_guarded(&trees.fixed_subposet(h)?, ctx.guards())?);
            let partition = reduced_homology(&order_complex_guarded(&partitions.fixed_subposet(h)?, ctx.guards())?);
            let agree = tree_space == tree_poset && tree_poset == partition;
            Ok((
                agree,
                json!({
                    "subgroup": h.describe(),
                    "tree_space": homology_json(&tree_space),
                    "tree_poset": homology_json(&tree_poset),
                    "partition_poset": homology_json(&partition),
                    "agree": agree,
                }),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let homology_agrees = rows.iter().all(|r| r.0);
    let ok = round_trip_failures.is_empty() && equivariance_failures.is_empty() && homology_agrees;
    let summary = format!(
        "{} samples: {} round-trip failures, {} equivariance failures; fixed-point homology agrees for {}/{} subgroups",
        ctx.config.samples,
        round_trip_failures.len(),
        equivariance_failures.len(),
        rows.iter().filter(|r| r.0).count(),
        rows.len()
    );
    Ok((
        pass_if(ok),
        summary,
        json!({
            "seed": ctx.config.seed,
            "samples": ctx.config.samples,
            "round_trip_failures": round_trip_failures,
            "equivariance_failures": equivariance_failures,
            "example": example,
            "subgroups": rows.into_iter().map(|r| r.1).collect::<Vec<_>>(),
        }),
    ))
}

fn fiber_payload(r: &FiberCheckReport) -> Value {
    let failures: Vec<Value> = r
        .fibers
        .iter()
        .filter(|f| !f.certificate.passes())
        .take(20)
        .map(|f| json!({ "target": f.target, "subgroup": f.subgroup, "certificate": f.certificate.to_string() }))
        .collect();
    let acyclic = r.fibers.iter().filter(|f| f.certificate == Certificate::Acyclic).count();
    json!({
        "convention": r.convention.to_string(),
        "fibers": r.fibers.len(),
        "cone_points": r.cone_count(),
        "acyclic": acyclic,
        "failures": failures,
        "translation_samples": r.translation_samples.len(),
        "translations_hold": r.translation_samples.iter().all(|s| s.2),
    })
}

fn fiber_summary(r: &FiberCheckReport) -> String {
    let failing = r.fibers.iter().filter(|f| !f.certificate.passes()).count();
    format!(
        "{} fixed fibers ({} convention): {} cone points, {} acyclic, {} failing",
        r.fibers.len(),
        r.convention,
        r.cone_count(),
        r.fibers.len() - r.cone_count() - failing,
        failing
    )
}

fn finality(ctx: &Context) -> Result<Outcome> {
    if ctx.n() < 3 {
        return skipped("fewer than three points: empty posets");
    }
    let (partitions, chains, trees) = (ctx.partitions()?, ctx.chains()?, ctx.trees()?);
    let phi = PosetMap::new(chains, trees, layered_tree_map(partitions, chains, trees)?)?;
    let r = check_g_finality(&phi, ArrowConvention::AgainstOrder)?;
    Ok((pass_if(r.passed()), fiber_summary(&r), fiber_payload(&r)))
}

fn initiality(ctx: &Context) -> Result<Outcome> {
    if ctx.n() < 3 {
        return skipped("fewer than three points: empty posets");
    }
    let (partitions, chains) = (ctx.partitions()?, ctx.chains()?);
    let last = PosetMap::new(chains, partitions, last_vertex_map(chains))?;
    let r = check_g_initiality(&last, ArrowConvention::AlongOrder)?;
    Ok((pass_if(r.passed()), fiber_summary(&r), fiber_payload(&r)))
}

fn realization_payload(r: &RealizationReport) -> Value {
    let rows: Vec<Value> = r
        .comparisons
        .iter()
        .map(|c| {
            json!({
                "subgroup": c.subgroup,
                "order": c.subgroup_order,
                "source": homology_json(&c.source_homology),
                "target": homology_json(&c.target_homology),
                "map_ranks": c.map_ranks,
                "betti_equal": c.betti_equal(),
                "map_is_isomorphism": c.map_is_isomorphism(),
            })
        })
        .collect();
    Value::Array(rows)
}

fn zigzag_betti(ctx: &Context) -> Result<Outcome> {
    if ctx.n() < 3 {
        return skipped("fewer than three points: empty posets");
    }
    let (partitions, chains, trees) = (ctx.partitions()?, ctx.chains()?, ctx.trees()?);
    let limit = ctx.guards().realization_simplices;
    let phi = PosetMap::new(chains, trees, layered_tree_map(partitions, chains, trees)?)?;
    let last = PosetMap::new(chains, partitions, last_vertex_map(chains))?;
    let to_trees = check_realization_equivalence_within(&phi, limit)?;
    let to_partitions = check_realization_equivalence_within(&last, limit)?;
    let ok = to_trees.passed() && to_partitions.passed();
    let unchecked = to_trees
        .comparisons
        .iter()
        .chain(&to_partitions.comparisons)
        .filter(|c| c.map_ranks.is_none())
        .count();
    let summary = format!(
        "{} subgroups: chains->trees {}, chains->partitions {}; {} map-rank checks skipped by guard",
        to_trees.comparisons.len(),
        if to_trees.passed() { "equivalent" } else { "NOT equivalent" },
        if to_partitions.passed() { "equivalent" } else { "NOT equivalent" },
        unchecked
    );
    Ok((
        pass_if(ok),
        summary,
        json!({
            "chains_to_trees": realization_payload(&to_trees),
            "chains_to_partitions": realization_payload(&to_partitions),
        }),
    ))
}

fn nonisovariant_acyclic(ctx: &Context) -> Result<Outcome> {
    let a = ctx.a();
    if let Some(h) = isovariance_class(a) {
        return skipped(format!("A is isovariant (every stabilizer conjugate to {})", h.describe()));
    }
    let pg = ctx.invariant_partitions()?;
    let k = order_complex_guarded(pg, ctx.guards())?;
    let h = reduced_homology(&k);
    let connected = k.is_connected();
    let cone = pg.has_cone_point().map(|x| pg.object(x).display_with(&a.names()));
    let p2 = two_orbit_subposet(pg, a);
    let k2 = order_complex_guarded(&p2, ctx.guards())?;
    let h2 = reduced_homology(&k2);
    let two_orbit_ok = k2.is_connected() && h2.is_acyclic();
    let tree_space = if a.size() >= 3 {
        let (fk, _) = fixed_tree_space(ctx.space()?, &Subgroup::full(ctx.g()));
        Some(reduced_homology(&fk))
    } else {
        None
    };
    let tree_ok = tree_space.as_ref().is_none_or(|t| t.is_acyclic());
    let ok = connected && h.is_acyclic() && two_orbit_ok && tree_ok;
    let summary = format!(
        "{} invariant partitions, {}, homology {}; cone point {}",
        pg.len(),
        if connected { "connected" } else { "disconnected" },
        h,
        cone.clone().unwrap_or_else(|| "none".into())
    );
    Ok((
        pass_if(ok),
        summary,
        json!({
            "objects": pg.len(),
            "connected": connected,
            "homology": homology_json(&h),
            "cone_point": cone,
            "two_orbit_objects": p2.len(),
            "two_orbit_homology": homology_json(&h2),
            "two_orbit_connected": k2.is_connected(),
            "invariant_tree_space": tree_space.as_ref().map(homology_json),
        }),
    ))
}

fn isovariant_wedge(ctx: &Context) -> Result<Outcome> {
    let (a, g) = (ctx.a(), ctx.g());
    let Some(h) = isovariance_class(a) else {
        return skipped("A is not isovariant");
    };
    let m = a.orbits().len();
    let pg = ctx.invariant_partitions()?;
    let direct = reduced_homology(&order_complex_guarded(pg, ctx.guards())?);
    let direct_betti: Vec<(isize, num_bigint::BigInt)> =
        direct.nonzero_betti().into_iter().map(|(d, b)| (d, b.into())).collect();

    let alpha = pg.index_of(&orbit_partition(a));
    let complement = alpha.map(|x| {
        let by_bounds = orthogonal_complement(pg, x);
        let by_lattice = orthogonal_complement_by_lattice(pg, x);
        let names = a.names();
        (
            by_bounds == by_lattice,
            by_bounds.iter().map(|&b| pg.object(b).display_with(&names)).collect::<Vec<_>>(),
        )
    });
    let complement_ok = complement.as_ref().is_none_or(|c| c.0);

    if m == 1 {
        let s = between_subgroup_poset(g, &h)?;
        let hs = reduced_homology(&order_complex_guarded(&s, ctx.guards())?);
        let ok = hs == direct;
        return Ok((
            pass_if(ok),
            format!("transitive: invariant partitions {direct}, intermediate subgroups {hs}"),
            json!({
                "subgroup": h.describe(),
                "orbits": m,
                "direct": homology_json(&direct),
                "intermediate_subgroups": homology_json(&hs),
            }),
        ));
    }
    let prediction = isovariant_wedge_prediction(g, &h, m)?;
    let matches = prediction.predicted == direct_betti && (!prediction.torsion_free || direct.is_torsion_free());
    let ok = matches && complement_ok;
    let summary = format!(
        "H = {}, m = {m}: direct {direct}; predicted {}{}",
        h.describe(),
        if prediction.predicted.is_empty() {
            "acyclic".to_string()
        } else {
            prediction
                .predicted
                .iter()
                .map(|(d, b)| format!("H{d}: Z^{b}"))
                .collect::<Vec<_>>()
                .join(", ")
        },
        if prediction.degenerate { " (H = G: classical partition complex)" } else { "" }
    );
    Ok((
        pass_if(ok),
        summary,
        json!({
            "subgroup": h.describe(),
            "orbits": m,
            "weyl_order": prediction.weyl_order,
            "copies": prediction.copies.to_string(),
            "intermediate_subgroups": homology_json(&prediction.subgroup_homology),
            "partitions_of_orbits": homology_json(&prediction.partition_homology),
            "predicted": prediction.predicted.iter().map(|(d, b)| json!([d, b.to_string()])).collect::<Vec<_>>(),
            "direct": homology_json(&direct),
            "degenerate": prediction.degenerate,
            "orbit_partition_complement": complement.map(|c| json!({ "bounds_match_lattice": c.0, "members": c.1 })),
        }),
    ))
}

fn weyl_identity(ctx: &Context) -> Result<Outcome> {
    let (a, g) = (ctx.a(), ctx.g());
    let Some(h) = isovariance_class(a) else {
        return skipped("A is not isovariant");
    };
    let m = a.orbits().len();
    let r = weyl_identity_check_within(g, &h, m, ctx.guards().weyl_points)?;
    let summary = format!(
        "d = {}, m = {}: left {}; right {} (exponent m-1), {} (exponent dm-1)",
        r.d, r.m, r.left, r.right_orbit_reading, r.right_point_reading
    );
    Ok((
        Verdict::ReportOnly,
        summary,
        json!({
            "subgroup": h.describe(),
            "d": r.d,
            "m": r.m,
            "weyl_in_sigma_dm": r.weyl_in_sigma_dm,
            "weyl_in_sigma_d": r.weyl_in_sigma_d,
            "m_factorial": r.m_factorial,
            "weyl_g_h": r.weyl_g_h,
            "left": r.left.to_string(),
            "right_exponent_m_minus_1": r.right_orbit_reading.to_string(),
            "right_exponent_dm_minus_1": r.right_point_reading.to_string(),
        }),
    ))
}

/// "k points" for a discrete poset, otherwise the homology.
fn shape<O: eqtrees::poset::PosetObject>(p: &ActedPoset<O>, h: &HomologyResult) -> String {
    match (p.len(), p.relation_count()) {
        (0, _) => "empty".into(),
        (1, _) => "1 point".into(),
        (k, 0) => format!("{k} points"),
        _ => h.to_string(),
    }
}

fn subgroup_lattice(ctx: &Context) -> Result<Outcome> {
    let g = ctx.g();
    guard("subgroup_search", ctx.guards().subgroup_search, g.order())?;
    let reps = class_representatives(ctx.subgroups()?)?;
    let rows = reps
        .par_iter()
        .filter(|h| !h.is_full())
        .map(|h| {
            let s = between_subgroup_poset(g, h)?;
            let hs = reduced_homology(&order_complex_guarded(&s, ctx.guards())?);
            let equivalent = if h.index() <= ctx.guards().partition_points {
                let orbit = coset_gset(g, h)?;
                let pg = build_equivariant_partition_poset(&orbit, &Subgroup::full(g))?;
                Some(poset_isomorphic(&s, &pg)?.is_some())
            } else {
                None
            };
            Ok((
                equivalent != Some(false),
                json!({
                    "subgroup": h.describe(),
                    "order": h.order(),
                    "index": h.index(),
                    "intermediate_subgroups": s.len(),
                    "shape": shape(&s, &hs),
                    "homology": homology_json(&hs),
                    "matches_invariant_partitions": equivalent,
                }),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = rows.iter().all(|r| r.0);
    let shapes: Vec<String> = rows
        .iter()
        .map(|r| format!("S(G,{}) {}", r.1["subgroup"].as_str().unwrap_or("?"), r.1["shape"].as_str().unwrap_or("?")))
        .collect();
    let summary = if shapes.is_empty() {
        "no proper subgroups".to_string()
    } else {
        shapes.join("; ")
    };
    Ok((
        pass_if(ok),
        summary,
        json!({ "classes": rows.into_iter().map(|r| r.1).collect::<Vec<_>>() }),
    ))
}

fn lie_character(ctx: &Context) -> Result<Outcome> {
    if ctx.n() < 3 {
        return skipped("fewer than three points: no tree space");
    }
    let r = verify_tree_homology_module_within(ctx.a(), ctx.guards().lie_homology_points)?;
    let classes: Vec<Value> = r
        .classes
        .iter()
        .map(|c| {
            json!({
                "representative": c.representative,
                "class_size": c.class_size,
                "homology_trace": c.homology_trace.to_string(),
                "sign": c.sign,
                "lie": c.lie,
                "sign_times_lie": c.sign * c.lie,
                "agrees": c.agrees(),
            })
        })
        .collect();
    let summary = format!(
        "degree {}: rank {} (expected {}), {} classes, {} agree",
        r.degree,
        r.rank,
        r.expected_rank,
        r.classes.len(),
        r.classes.iter().filter(|c| c.agrees()).count()
    );
    Ok((
        pass_if(r.holds()),
        summary,
        json!({
            "degree": r.degree,
            "rank": r.rank,
            "expected_rank": r.expected_rank,
            "concentrated": r.concentrated,
            "torsion_free": r.torsion_free,
            "classes": classes,
        }),
    ))
}

fn solvable_wedge(ctx: &Context) -> Result<Outcome> {
    let (a, g) = (ctx.a(), ctx.g());
    if !is_solvable(g) {
        return skipped("G is not solvable");
    }
    let Some(h) = isovariance_class(a) else {
        return skipped("A is not isovariant");
    };
    if !is_normal(&h, g)? {
        return skipped(format!("isovariance subgroup {} is not normal", h.describe()));
    }
    let pg = ctx.invariant_partitions()?;
    let hp = reduced_homology(&order_complex_guarded(pg, ctx.guards())?);
    let ht = if a.size() >= 3 {
        let (fk, _) = fixed_tree_space(ctx.space()?, &Subgroup::full(g));
        Some(reduced_homology(&fk))
    } else {
        None
    };
    let single = |x: &HomologyResult| x.concentrated_in().is_some() && x.is_torsion_free();
    let ok = single(&hp) && ht.as_ref().is_none_or(single);
    let summary = format!(
        "invariant partitions {hp}; invariant tree space {}",
        ht.as_ref().map_or("not built".to_string(), |t| t.to_string())
    );
    Ok((
        pass_if(ok),
        summary,
        json!({
            "subgroup": h.describe(),
            "invariant_partitions": homology_json(&hp),
            "invariant_tree_space": ht.as_ref().map(homology_json),
        }),
    ))
}

fn invariants(ctx: &Context) -> Result<Outcome> {
    let (a, g) = (ctx.a(), ctx.g());
    let order = g.order();
    let mut laws: Vec<(&str, bool)> = Vec::new();

    laws.push(("lagrange", ctx.subgroups()?.iter().all(|h| order % h.order() == 0)));
    let mut orbit_stabilizer = true;
    for x in 0..a.size() {
        orbit_stabilizer &= a.orbit(x)?.len() * a.stabilizer(x)?.order() == order;
    }
    laws.push(("orbit_stabilizer", orbit_stabilizer));
    let fixed_total: usize = (0..order).map(|e| (0..a.size()).filter(|&x| a.act(e, x) == x).count()).sum();
    laws.push(("burnside", a.orbits().len() * order == fixed_total));
    laws.push(("gset_action_homomorphism", a.verify_action().is_ok()));
    let sign_ok = (0..order).all(|x| (0..order).all(|y| a.sign(g.mul(x, y)) == a.sign(x) * a.sign(y)));
    laws.push(("sign_multiplicative", sign_ok));

    let p = ctx.partitions()?;
    laws.push(("partition_poset_order", p.verify_partial_order().is_ok()));
    laws.push(("partition_poset_action", p.verify_action().is_ok()));
    let (pk, ph) = ctx.partition_complex()?;
    let mut complexes: Vec<(SimplicialComplex, Vec<eqtrees::perm::Perm>, HomologyResult)> =
        vec![(pk.clone(), vertex_action(p), ph.clone())];
    if a.size() >= 3 {
        let t = ctx.trees()?;
        laws.push(("tree_poset_order", t.verify_partial_order().is_ok()));
        laws.push(("tree_poset_action", t.verify_action().is_ok()));
        let space = ctx.space()?;
        let hs = reduced_homology(&space.complex);
        complexes.push((space.complex.clone(), space.action.clone(), hs));
        let chi = character(&space.complex, g, &space.action, a.size() - 3)?;
        let real = (0..order).all(|x| chi.values[x] == chi.values[g.inv(x)]);
        laws.push(("character_reality", real));
        laws.push(("character_class_function", chi.is_class_function(g)));
    }
    let mut boundary = true;
    let mut euler = true;
    let mut automorphisms = true;
    for (k, action, h) in &complexes {
        boundary &= k.verify_boundaries().is_ok();
        euler &= k.euler_characteristic() - 1 == h.euler_characteristic();
        automorphisms &= g.generators().iter().all(|&x| k.verify_automorphism(&action[x]).is_ok());
    }
    laws.push(("boundary_squared_zero", boundary));
    laws.push(("euler_poincare", euler));
    laws.push(("simplicial_automorphisms", automorphisms));

    let failing: Vec<&str> = laws.iter().filter(|l| !l.1).map(|l| l.0).collect();
    let ok = failing.is_empty();
    let summary = if ok {
        format!("{} laws hold", laws.len())
    } else {
        format!("failing: {}", failing.join(", "))
    };
    let payload: serde_json::Map<String, Value> = laws.into_iter().map(|(k, v)| (k.to_string(), Value::Bool(v))).collect();
    Ok((pass_if(ok), summary, Value::Object(payload)))
}

fn dispatch(id: CheckId, ctx: &Context) -> Result<Outcome> {
    match id {
        CheckId::PartitionHomology => partition_homology(ctx),
        CheckId::FixedPointEquivalence => fixed_point_equivalence(ctx),
        CheckId::TreeFixedPoints => tree_fixed_points(ctx),
        CheckId::TreeHomeoRoundtrip => tree_homeo_roundtrip(ctx),
        CheckId::Finality => finality(ctx),
        CheckId::Initiality => initiality(ctx),
        CheckId::ZigzagBetti => zigzag_betti(ctx),
        CheckId::NonisovariantAcyclic => nonisovariant_acyclic(ctx),
        CheckId::IsovariantWedge => isovariant_wedge(ctx),
        CheckId::WeylIdentity => weyl_identity(ctx),
        CheckId::SubgroupLattice => subgroup_lattice(ctx),
        CheckId::LieCharacter => lie_character(ctx),
        CheckId::SolvableWedge => solvable_wedge(ctx),
        CheckId::Invariants => invariants(ctx),
    }
}

/// Runs one check. Guard violations become `SKIPPED`; other library errors
/// become `FAIL` for pass-type checks.
pub fn run_check(id: CheckId, ctx: &Context) -> CheckOutcome {
    let start = Instant::now();
    let (verdict, summary, payload) = match dispatch(id, ctx) {
        Ok(o) => o,
        Err(e @ Error::GuardExceeded { .. }) => (Verdict::Skipped, e.to_string(), json!({ "error": e.to_string() })),
        Err(e) => {
            let v = if id.is_report_only() { Verdict::ReportOnly } else { Verdict::Fail };
            (v, format!("error: {e}"), json!({ "error": e.to_string() }))
        }
    };
    CheckOutcome {
        check: id,
        verdict,
        summary,
        payload,
        millis: start.elapsed().as_millis(),
    }
}
