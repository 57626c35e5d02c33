//! Scenario files: a group, a G-set and the checks to run on it.
//!
//! ```text
//! # C4 acting on C4 + C4/C2
//! group="(1 2 3 4)"; gset="G/e + G/(1 3)(2 4)"
//! checks="finality, initiality"
//! guard="tree_leaves=6"
//! ```
//!
//! Entries are `key="value"` separated by `;` or newlines. Keys are `name`,
//! `group` (`;`-separated generators, empty for the trivial group), `gset`
//! (an orbit sum), `checks` (names separated by commas or spaces, or `all`)
//! and `guard` (comma-separated `limit=value` overrides; may repeat).

use eqtrees::gset::{parse_orbit_sum, GSet};
use eqtrees::guards::Guards;
use eqtrees::perm::Group;
use thiserror::Error;

use crate::checks::CheckId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, ScenarioError>;

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: Option<String>,
    pub group_text: String,
    pub gset_text: String,
    pub group: Group,
    pub gset: GSet,
    pub checks: Vec<CheckId>,
    pub guards: Guards,
}

/// A quoted value with the position of its first character.
struct Entry {
    key: String,
    value: String,
    line: usize,
    column: usize,
}

fn error(line: usize, column: usize, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Parse {
        line,
        column,
        message: message.into(),
    }
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }
}

fn tokenize(text: &str) -> Result<Vec<Entry>> {
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut entries = Vec::new();
    loop {
        match cur.peek() {
            None => break,
            Some(c) if c.is_whitespace() || c == ';' => {
                cur.bump();
            }
            Some('#') => {
                while !matches!(cur.peek(), None | Some('\n')) {
                    cur.bump();
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let mut key = String::new();
                while let Some(c) = cur.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '-') {
                    key.push(c);
                    cur.bump();
                }
                while matches!(cur.peek(), Some(' ' | '\t')) {
                    cur.bump();
                }
                if cur.peek() != Some('=') {
                    return Err(error(cur.line, cur.column, format!("expected `=` after `{key}`")));
                }
                cur.bump();
                while matches!(cur.peek(), Some(' ' | '\t')) {
                    cur.bump();
                }
                if cur.peek() != Some('"') {
                    return Err(error(cur.line, cur.column, "expected a quoted value"));
                }
                cur.bump();
                let (vline, vcolumn) = (cur.line, cur.column);
                let mut value = String::new();
                loop {
                    match cur.bump() {
                        None | Some('\n') => return Err(error(vline, vcolumn - 1, "unterminated string")),
                        Some('"') => break,
                        Some(c) => value.push(c),
                    }
                }
                entries.push(Entry {
                    key,
                    value,
                    line: vline,
                    column: vcolumn,
                });
                while matches!(cur.peek(), Some(' ' | '\t')) {
                    cur.bump();
                }
                match cur.peek() {
                    None | Some(';' | '\n' | '\r' | '#') => {}
                    Some(c) => return Err(error(cur.line, cur.column, format!("unexpected `{c}` after value"))),
                }
            }
            Some(c) => return Err(error(cur.line, cur.column, format!("unexpected `{c}`"))),
        }
    }
    Ok(entries)
}

/// Rebases a library parse error from value-relative to file coordinates.
fn relocate(e: eqtrees::Error, entry: &Entry) -> ScenarioError {
    match e {
        eqtrees::Error::Parse { column, message, .. } => error(entry.line, entry.column + column - 1, message),
        other => error(entry.line, entry.column, other.to_string()),
    }
}

/// Parses a check list such as `finality, initiality` or `all`.
pub fn parse_check_list(text: &str) -> std::result::Result<Vec<CheckId>, String> {
    let mut out = Vec::new();
    for name in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        if name == "all" {
            out.extend(CheckId::ALL);
        } else {
            out.push(name.parse::<CheckId>()?);
        }
    }
    let mut seen = Vec::new();
    out.retain(|c| {
        let fresh = !seen.contains(c);
        seen.push(*c);
        fresh
    });
    Ok(out)
}

/// Applies `limit=value` pairs separated by commas.
pub fn apply_guards(guards: &mut Guards, text: &str) -> std::result::Result<(), String> {
    for pair in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| format!("guard `{pair}` is not of the form limit=value"))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| format!("guard value `{}` is not a nonnegative integer", value.trim()))?;
        guards.set(key.trim(), value)?;
    }
    Ok(())
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let entries = tokenize(text)?;
    let mut name = None;
    let mut group_entry: Option<&Entry> = None;
    let mut gset_entry: Option<&Entry> = None;
    let mut checks = None;
    let mut guards = Guards::default();
    for entry in &entries {
        let once = |slot_taken: bool| -> Result<()> {
            if slot_taken {
                Err(error(entry.line, entry.column, format!("duplicate key `{}`", entry.key)))
            } else {
                Ok(())
            }
        };
        match entry.key.as_str() {
            "name" => {
                once(name.is_some())?;
                name = Some(entry.value.clone());
            }
            "group" => {
                once(group_entry.is_some())?;
                group_entry = Some(entry);
            }
            "gset" => {
                once(gset_entry.is_some())?;
                gset_entry = Some(entry);
            }
            "checks" => {
                once(checks.is_some())?;
                checks = Some(parse_check_list(&entry.value).map_err(|m| error(entry.line, entry.column, m))?);
            }
            "guard" => apply_guards(&mut guards, &entry.value).map_err(|m| error(entry.line, entry.column, m))?,
            other => {
                return Err(error(
                    entry.line,
                    entry.column,
                    format!("unknown key `{other}` (expected name, group, gset, checks or guard)"),
                ))
            }
        }
    }
    let gset_entry = gset_entry.ok_or_else(|| error(1, 1, "missing `gset`"))?;
    let group_text = group_entry.map_or(String::new(), |e| e.value.clone());
    let group = match group_entry {
        Some(e) => Group::parse(&e.value, None).map_err(|err| relocate(err, e))?,
        None => Group::trivial(0),
    };
    let gset = parse_orbit_sum(&group, &gset_entry.value).map_err(|err| relocate(err, gset_entry))?;
    Ok(Scenario {
        name,
        group_text,
        gset_text: gset_entry.value.clone(),
        group,
        gset,
        checks: checks.unwrap_or_else(|| CheckId::ALL.to_vec()),
        guards,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_scenario() {
        let s = parse_scenario("group=\"(1 2 3 4)\"; gset=\"G/e + G/(1 3)(2 4)\"").unwrap();
        assert_eq!(s.group.order(), 4);
        assert_eq!(s.gset.size(), 6);
        assert_eq!(s.gset.orbits().len(), 2);
        assert_eq!(s.checks, CheckId::ALL.to_vec());
    }

    #[test]
    fn trivial_group_on_points() {
        let s = parse_scenario("group=\"\"; gset=\"3\"").unwrap();
        assert_eq!(s.group.order(), 1);
        assert_eq!(s.gset.size(), 3);
    }

    #[test]
    fn free_involution() {
        let s = parse_scenario("group=\"(1 2)\"\ngset=\"G/e + G/e\"\n").unwrap();
        assert_eq!(s.gset.size(), 4);
        assert!(s.gset.orbits().iter().all(|o| o.len() == 2));
    }

    #[test]
    fn comments_checks_and_guards() {
        let text = "# header\nname=\"s3\" # trailing\ngroup=\"(1 2);(1 2 3)\"\ngset=\"G/e\"\nchecks=\"subgroup-lattice,invariants\"\nguard=\"tree_leaves=5, iso_nodes=10\"\n";
        let s = parse_scenario(text).unwrap();
        assert_eq!(s.name.as_deref(), Some("s3"));
        assert_eq!(s.group.order(), 6);
        assert_eq!(s.checks, vec![CheckId::SubgroupLattice, CheckId::Invariants]);
        assert_eq!(s.guards.tree_leaves, 5);
        assert_eq!(s.guards.iso_nodes, 10);
    }

    fn position(text: &str) -> (usize, usize) {
        match parse_scenario(text).unwrap_err() {
            ScenarioError::Parse { line, column, .. } => (line, column),
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(position("group=\"(1 2)\"\ngset=\"G/e + H/e\""), (2, 13));
        assert_eq!(position("group=\"(1 2\"; gset=\"1\""), (1, 12));
        assert_eq!(position("gset=\"1\"\nchecks=\"nonsense\""), (2, 9));
        assert_eq!(position("gset=\"1\"; colour=\"red\""), (1, 19));
        assert_eq!(position("gset=\"1"), (1, 6));
        assert_eq!(position("group=\"(1 2)\""), (1, 1));
    }

    #[test]
    fn subgroup_terms_must_lie_in_the_group() {
        assert!(parse_scenario("group=\"(1 2 3 4)\"; gset=\"G/(1 2)\"").is_err());
    }

    #[test]
    fn duplicate_keys_rejected() {
        assert!(parse_scenario("gset=\"1\"; gset=\"2\"").is_err());
    }
}
