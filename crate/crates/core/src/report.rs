//! Machine-readable shapes shared by the CLI and the C ABI.
//!
//! Atoms are reported by name in universe order, epistemic literals in
//! their grammar form (`enot not p`), and every list is canonically sorted,
//! so serialising the same result twice gives identical bytes.

use serde::Serialize;

use crate::asp::{AspVerdict, Interpretation, SePair, Side};
use crate::epistemic::{Guess, ViewKind, WorldView};
use crate::equivalence::{UeTable, Verdict, Witness};
use crate::syntax::{Elp, Universe};

pub type AtomSet = Vec<String>;

pub fn atom_set(i: Interpretation, u: &Universe) -> AtomSet {
    i.names(u)
}

pub fn atom_sets(v: &[Interpretation], u: &Universe) -> Vec<AtomSet> {
    v.iter().map(|&i| atom_set(i, u)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViewReport {
    pub guess: Vec<String>,
    pub interpretations: Vec<AtomSet>,
    pub kind: ViewKind,
}

impl ViewReport {
    pub fn new(v: &WorldView, p: &Elp) -> Self {
        ViewReport {
            guess: v.guess.names(p),
            interpretations: atom_sets(&v.interpretations, &p.atoms),
            kind: v.kind,
        }
    }
}

pub fn view_reports(v: &[WorldView], p: &Elp) -> Vec<ViewReport> {
    v.iter().map(|w| ViewReport::new(w, p)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnswerSetsReport {
    pub mode: &'static str,
    pub answer_sets: Vec<AtomSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WorldViewsReport {
    pub mode: &'static str,
    pub candidate_world_views: Vec<ViewReport>,
    pub world_views: Vec<ViewReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub facts: AtomSet,
    pub guess: Option<Vec<String>>,
    pub left: Vec<ViewReport>,
    pub right: Vec<ViewReport>,
}

impl WitnessReport {
    pub fn new(w: &Witness, p: &Elp) -> Self {
        WitnessReport {
            facts: atom_set(w.facts, &p.atoms),
            guess: w.guess.map(|g| g.names(p)),
            left: view_reports(&w.left, p),
            right: view_reports(&w.right, p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub notion: String,
    pub equivalent: bool,
    pub witness: Option<WitnessReport>,
}

impl VerdictReport {
    /// `p` supplies the shared vocabulary of the aligned pair.
    pub fn new(notion: &str, v: &Verdict, p: &Elp) -> Self {
        VerdictReport {
            notion: notion.to_owned(),
            equivalent: v.equivalent,
            witness: v.witness.as_ref().map(|w| WitnessReport::new(w, p)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SePairReport {
    pub x: AtomSet,
    pub y: AtomSet,
}

impl SePairReport {
    pub fn new(pair: SePair, u: &Universe) -> Self {
        SePairReport {
            x: atom_set(pair.x, u),
            y: atom_set(pair.y, u),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AspWitnessReport {
    pub ue_model: SePairReport,
    pub only_in: Side,
    pub facts: Option<AtomSet>,
    pub left: Vec<AtomSet>,
    pub right: Vec<AtomSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AspVerdictReport {
    pub notion: String,
    pub equivalent: bool,
    pub witness: Option<AspWitnessReport>,
}

impl AspVerdictReport {
    pub fn new(v: &AspVerdict, u: &Universe) -> Self {
        AspVerdictReport {
            notion: "asp-uniform".to_owned(),
            equivalent: v.equivalent,
            witness: v.witness.as_ref().map(|w| AspWitnessReport {
                ue_model: SePairReport::new(w.pair, u),
                only_in: w.only_in,
                facts: w.facts.map(|d| atom_set(d, u)),
                left: atom_sets(&w.left, u),
                right: atom_sets(&w.right, u),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UeEntryReport {
    pub guess: Vec<String>,
    pub facts: AtomSet,
    pub view: Vec<AtomSet>,
}

/// Table entries in `(guess, facts)` order.
pub fn ue_table_report(t: &UeTable, p: &Elp) -> Vec<UeEntryReport> {
    t.entries
        .iter()
        .map(|((g, d), view)| UeEntryReport {
            guess: g.names(p),
            facts: atom_set(*d, &p.atoms),
            view: atom_sets(view, &p.atoms),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UeDiffReport {
    pub coincide: bool,
    pub first_difference: Option<UeDiffEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UeDiffEntry {
    pub guess: Vec<String>,
    pub facts: AtomSet,
    pub left: Vec<AtomSet>,
    pub right: Vec<AtomSet>,
}

pub fn ue_diff_report(t1: &UeTable, t2: &UeTable, p: &Elp) -> UeDiffReport {
    let diff = t1.first_difference(t2).map(|(g, d)| UeDiffEntry {
        guess: g.names(p),
        facts: atom_set(d, &p.atoms),
        left: atom_sets(t1.get(g, d), &p.atoms),
        right: atom_sets(t2.get(g, d), &p.atoms),
    });
    UeDiffReport {
        coincide: diff.is_none(),
        first_difference: diff,
    }
}

/// Compact JSON, newline-terminated.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialise");
    s.push('\n');
    s
}

// ---- text rendering ----

pub fn set_text(s: &[String]) -> String {
    format!("{{{}}}", s.join(", "))
}

pub fn sets_text(v: &[AtomSet]) -> String {
    format!(
        "{{{}}}",
        v.iter().map(|s| set_text(s)).collect::<Vec<_>>().join(", ")
    )
}

pub fn view_text(v: &ViewReport) -> String {
    format!(
        "{} {} with guess {}",
        v.kind,
        sets_text(&v.interpretations),
        set_text(&v.guess)
    )
}

pub fn views_text(v: &[ViewReport]) -> String {
    if v.is_empty() {
        "none".to_owned()
    } else {
        v.iter().map(view_text).collect::<Vec<_>>().join("; ")
    }
}

pub fn guess_text(g: Guess, p: &Elp) -> String {
    set_text(&g.names(p))
}

pub fn kind_from_str(s: &str) -> Option<ViewKind> {
    match s {
        "cwv" => Some(ViewKind::Cwv),
        "wv" => Some(ViewKind::Wv),
        _ => None,
    }
}
