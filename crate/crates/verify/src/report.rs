//! Reports in JSON (sorted keys) and Markdown.

use serde_json::{json, Value};

use crate::checks::{CheckOutcome, RunConfig, Verdict};
use crate::scenario::Scenario;

#[derive(Clone, Debug)]
pub struct Report {
    pub name: Option<String>,
    pub group: String,
    pub group_order: usize,
    pub gset: String,
    pub points: usize,
    pub orbit_sizes: Vec<usize>,
    pub guards: Vec<(&'static str, usize)>,
    pub config: RunConfig,
    /// Sorted by check name.
    pub outcomes: Vec<CheckOutcome>,
    /// Include wall-clock times; off by default so reports are reproducible.
    pub timing: bool,
}

impl Report {
    pub fn new(scenario: &Scenario, config: RunConfig, mut outcomes: Vec<CheckOutcome>) -> Self {
        outcomes.sort_by_key(|o| o.check.name());
        let mut orbit_sizes: Vec<usize> = scenario.gset.orbits().iter().map(Vec::len).collect();
        orbit_sizes.sort_unstable();
        Report {
            name: scenario.name.clone(),
            group: scenario.group_text.clone(),
            group_order: scenario.group.order(),
            gset: scenario.gset_text.clone(),
            points: scenario.gset.size(),
            orbit_sizes,
            guards: scenario.guards.entries(),
            config,
            outcomes,
            timing: false,
        }
    }

    /// A pass-type check failed.
    pub fn failed(&self) -> bool {
        self.outcomes.iter().any(|o| o.verdict == Verdict::Fail)
    }

    pub fn outcome(&self, name: &str) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.check.name() == name)
    }

    pub fn to_value(&self) -> Value {
        let checks: Vec<Value> = self
            .outcomes
            .iter()
            .map(|o| {
                let mut v = json!({
                    "check": o.check.name(),
                    "anchor": o.check.anchor(),
                    "kind": if o.check.is_report_only() { "report-only" } else { "pass-type" },
                    "verdict": o.verdict.as_str(),
                    "summary": o.summary,
                    "payload": o.payload,
                });
                if self.timing {
                    v["millis"] = json!(o.millis as u64);
                }
                v
            })
            .collect();
        let guards: serde_json::Map<String, Value> =
            self.guards.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        json!({
            "scenario": {
                "name": self.name,
                "group": self.group,
                "group_order": self.group_order,
                "gset": self.gset,
                "points": self.points,
                "orbit_sizes": self.orbit_sizes,
                "guards": guards,
            },
            "seed": self.config.seed,
            "samples": self.config.samples,
            "checks": checks,
            "failed": self.failed(),
        })
    }

    /// Pretty JSON; `serde_json` maps keep keys sorted.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let title = self.name.as_deref().unwrap_or("scenario");
        out.push_str(&format!("# Verification report: {title}\n\n"));
        let group = if self.group.is_empty() { "trivial" } else { &self.group };
        out.push_str(&format!("- group: `{group}` (order {})\n", self.group_order));
        out.push_str(&format!(
            "- G-set: `{}` ({} points, orbit sizes {:?})\n",
            self.gset, self.points, self.orbit_sizes
        ));
        out.push_str(&format!("- seed {}, {} samples\n\n", self.config.seed, self.config.samples));
        if self.timing {
            out.push_str("| check | verdict | summary | ms |\n|---|---|---|---|\n");
        } else {
            out.push_str("| check | verdict | summary |\n|---|---|---|\n");
        }
        for o in &self.outcomes {
            let summary = o.summary.replace('|', "\\|");
            if self.timing {
                out.push_str(&format!("| {} | {} | {} | {} |\n", o.check, o.verdict, summary, o.millis));
            } else {
                out.push_str(&format!("| {} | {} | {} |\n", o.check, o.verdict, summary));
            }
        }
        for o in &self.outcomes {
            out.push_str(&format!("\n## {}\n\n{}\n\n", o.check, o.check.anchor()));
            out.push_str("```json\n");
            out.push_str(&serde_json::to_string_pretty(&o.payload).expect("values serialize"));
            out.push_str("\n```\n");
        }
        out
    }
}
