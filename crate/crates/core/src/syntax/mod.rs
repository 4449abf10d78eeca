//! Program representation for ground ELPs and plain (epistemic-free) programs.
//!
//! Atoms are dense indices into a per-program [`Universe`]. Rule bodies are
//! kept as ordered sets so that structurally equal rules compare equal
//! regardless of how they were written.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

mod parse;
mod render;

pub use parse::{parse_asp, parse_elp, parse_program, Mode};
pub use render::{render_asp, render_elp, render_program, RenderOptions};

pub const RESERVED: [&str; 3] = ["not", "enot", "true"];

/// Index of an atom in its program's universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(pub u32);

impl Atom {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered, duplicate-free list of atom names.
#[derive(Debug, Clone, Default)]
pub struct Universe {
    names: Vec<String>,
    index: HashMap<String, Atom>,
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Universe {}

impl Universe {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a universe from names, rejecting duplicates and illegal names.
    pub fn from_names<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self, String> {
        let mut u = Universe::new();
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(format!("`{n}` is not a legal atom name"));
            }
            if u.get(n).is_some() {
                return Err(format!("atom `{n}` declared twice"));
            }
            u.intern(n);
        }
        Ok(u)
    }

    /// Returns the atom for `name`, adding it at the end if new.
    pub fn intern(&mut self, name: &str) -> Atom {
        if let Some(&a) = self.index.get(name) {
            return a;
        }
        let a = Atom(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), a);
        a
    }

    pub fn get(&self, name: &str) -> Option<Atom> {
        self.index.get(name).copied()
    }

    pub fn name(&self, atom: Atom) -> &str {
        &self.names[atom.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        (0..self.names.len() as u32).map(Atom)
    }

    /// Extends `self` with the atoms of `other` and returns the id mapping
    /// from `other` into the merged universe.
    fn merge(&mut self, other: &Universe) -> Vec<Atom> {
        other.names.iter().map(|n| self.intern(n)).collect()
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&s)
}

/// An atom `a` or its default negation `¬a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub negated: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal {
            atom,
            negated: false,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal {
            atom,
            negated: true,
        }
    }

    pub fn complement(self) -> Self {
        Literal {
            atom: self.atom,
            negated: !self.negated,
        }
    }
}

/// A body element `¬ℓ`: `¬a` when `inner` is `a`, `¬¬a` when `inner` is `¬a`.
///
/// Three negations never survive construction: `¬¬¬a` is built as `¬a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NegBodyEntry {
    inner: Literal,
}

impl NegBodyEntry {
    /// `¬ℓ`.
    pub fn negate(inner: Literal) -> Self {
        NegBodyEntry { inner }
    }

    /// `¬¬ℓ`; collapses `¬¬¬a` to `¬a`.
    pub fn negate_twice(inner: Literal) -> Self {
        if inner.negated {
            NegBodyEntry {
                inner: Literal::pos(inner.atom),
            }
        } else {
            NegBodyEntry {
                inner: Literal::neg(inner.atom),
            }
        }
    }

    /// `¬a`.
    pub fn not(atom: Atom) -> Self {
        Self::negate(Literal::pos(atom))
    }

    /// `¬¬a`.
    pub fn not_not(atom: Atom) -> Self {
        Self::negate(Literal::neg(atom))
    }

    pub fn inner(self) -> Literal {
        self.inner
    }

    pub fn atom(self) -> Atom {
        self.inner.atom
    }

    pub fn is_double(self) -> bool {
        self.inner.negated
    }
}

/// `not ℓ`, where `not` is epistemic negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EpistemicLiteral {
    pub inner: Literal,
}

impl EpistemicLiteral {
    pub fn new(inner: Literal) -> Self {
        EpistemicLiteral { inner }
    }

    /// Text form in the program grammar, e.g. `enot not p`.
    pub fn display(self, universe: &Universe) -> String {
        let name = universe.name(self.inner.atom);
        if self.inner.negated {
            format!("enot not {name}")
        } else {
            format!("enot {name}")
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElpRule {
    /// Empty head is `⊥`.
    pub head: BTreeSet<Atom>,
    pub body_lits: BTreeSet<Literal>,
    pub body_epi_pos: BTreeSet<EpistemicLiteral>,
    pub body_epi_neg: BTreeSet<EpistemicLiteral>,
    /// Number of `⊤` tokens; they carry no meaning.
    pub body_top: u32,
}

impl ElpRule {
    pub fn fact(atom: Atom) -> Self {
        ElpRule {
            head: [atom].into(),
            ..Default::default()
        }
    }

    pub fn is_epistemic_free(&self) -> bool {
        self.body_epi_pos.is_empty() && self.body_epi_neg.is_empty()
    }

    pub fn eliterals(&self) -> impl Iterator<Item = EpistemicLiteral> + '_ {
        self.body_epi_pos.iter().chain(&self.body_epi_neg).copied()
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.head
            .iter()
            .copied()
            .chain(self.body_lits.iter().map(|l| l.atom))
            .chain(self.eliterals().map(|e| e.inner.atom))
    }

    /// The same rule as a plain rule, if it has no epistemic literals.
    pub fn to_asp(&self) -> Option<AspRule> {
        if !self.is_epistemic_free() {
            return None;
        }
        Some(AspRule {
            head: self.head.clone(),
            pos_body: self
                .body_lits
                .iter()
                .filter(|l| !l.negated)
                .map(|l| l.atom)
                .collect(),
            neg_body: self
                .body_lits
                .iter()
                .filter(|l| l.negated)
                .map(|l| NegBodyEntry::not(l.atom))
                .collect(),
            body_top: self.body_top,
        })
    }

    fn remap(&self, map: &[Atom]) -> ElpRule {
        let lit = |l: &Literal| Literal {
            atom: map[l.atom.index()],
            negated: l.negated,
        };
        let elit = |e: &EpistemicLiteral| EpistemicLiteral::new(lit(&e.inner));
        ElpRule {
            head: self.head.iter().map(|a| map[a.index()]).collect(),
            body_lits: self.body_lits.iter().map(lit).collect(),
            body_epi_pos: self.body_epi_pos.iter().map(elit).collect(),
            body_epi_neg: self.body_epi_neg.iter().map(elit).collect(),
            body_top: self.body_top,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AspRule {
    pub head: BTreeSet<Atom>,
    pub pos_body: BTreeSet<Atom>,
    pub neg_body: BTreeSet<NegBodyEntry>,
    pub body_top: u32,
}

impl AspRule {
    pub fn fact(atom: Atom) -> Self {
        AspRule {
            head: [atom].into(),
            ..Default::default()
        }
    }

    /// The same rule as an ELP rule; fails on `¬¬a` in the body.
    pub fn to_elp(&self) -> Option<ElpRule> {
        if self.neg_body.iter().any(|n| n.is_double()) {
            return None;
        }
        Some(ElpRule {
            head: self.head.clone(),
            body_lits: self
                .pos_body
                .iter()
                .map(|&a| Literal::pos(a))
                .chain(self.neg_body.iter().map(|n| Literal::neg(n.atom())))
                .collect(),
            body_top: self.body_top,
            ..Default::default()
        })
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.head
            .iter()
            .chain(&self.pos_body)
            .copied()
            .chain(self.neg_body.iter().map(|n| n.atom()))
    }

    fn remap(&self, map: &[Atom]) -> AspRule {
        AspRule {
            head: self.head.iter().map(|a| map[a.index()]).collect(),
            pos_body: self.pos_body.iter().map(|a| map[a.index()]).collect(),
            neg_body: self
                .neg_body
                .iter()
                .map(|n| {
                    NegBodyEntry::negate(Literal {
                        atom: map[n.atom().index()],
                        negated: n.is_double(),
                    })
                })
                .collect(),
            body_top: self.body_top,
        }
    }
}

/// A ground epistemic logic program `(A, E, R)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Elp {
    pub atoms: Universe,
    /// Epistemic literal domain; guesses are subsets of it, indexed by position.
    pub eliterals: Vec<EpistemicLiteral>,
    pub rules: Vec<ElpRule>,
}

impl Elp {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn atom(&mut self, name: &str) -> Atom {
        self.atoms.intern(name)
    }

    /// Adds `e` to the domain if missing and returns its index.
    pub fn add_eliteral(&mut self, e: EpistemicLiteral) -> usize {
        match self.eliteral_index(e) {
            Some(i) => i,
            None => {
                self.eliterals.push(e);
                self.eliterals.len() - 1
            }
        }
    }

    pub fn eliteral_index(&self, e: EpistemicLiteral) -> Option<usize> {
        self.eliterals.iter().position(|&x| x == e)
    }

    /// Appends a rule, extending the domain with its epistemic literals.
    pub fn push_rule(&mut self, rule: ElpRule) {
        debug_assert!(rule.atoms().all(|a| a.index() < self.atoms.len()));
        for e in rule.eliterals() {
            self.add_eliteral(e);
        }
        self.rules.push(rule);
    }

    /// Adds one fact per atom in `facts` (duplicates of existing rules are skipped).
    pub fn with_facts(&self, facts: impl IntoIterator<Item = Atom>) -> Elp {
        let mut out = self.clone();
        for a in facts {
            let r = ElpRule::fact(a);
            if !out.rules.contains(&r) {
                out.rules.push(r);
            }
        }
        out
    }

    /// `(A1 ∪ A2, E1 ∪ E2, R1 ∪ R2)`, with rules deduplicated.
    pub fn union(&self, other: &Elp) -> Elp {
        let mut atoms = self.atoms.clone();
        let map = atoms.merge(&other.atoms);
        let mut out = Elp {
            atoms,
            eliterals: Vec::new(),
            rules: Vec::new(),
        };
        for &e in &self.eliterals {
            out.add_eliteral(e);
        }
        for e in &other.eliterals {
            out.add_eliteral(remap_eliteral(*e, &map));
        }
        let mut seen = HashSet::new();
        let rules = self
            .rules
            .iter()
            .cloned()
            .chain(other.rules.iter().map(|r| r.remap(&map)));
        for r in rules {
            if seen.insert(r.clone()) {
                out.rules.push(r);
            }
        }
        out
    }

    /// The epistemic-free view of this program, if it has no epistemic literals.
    pub fn to_asp(&self) -> Option<AspProgram> {
        Some(AspProgram {
            atoms: self.atoms.clone(),
            rules: self
                .rules
                .iter()
                .map(ElpRule::to_asp)
                .collect::<Option<_>>()?,
        })
    }

    /// Same rules over a different universe / domain; `map` sends old atom ids to new ones.
    fn reindexed(&self, atoms: Universe, eliterals: Vec<EpistemicLiteral>, map: &[Atom]) -> Elp {
        Elp {
            atoms,
            eliterals,
            rules: self.rules.iter().map(|r| r.remap(map)).collect(),
        }
    }
}

fn remap_eliteral(e: EpistemicLiteral, map: &[Atom]) -> EpistemicLiteral {
    EpistemicLiteral::new(Literal {
        atom: map[e.inner.atom.index()],
        negated: e.inner.negated,
    })
}

/// An epistemic-free program `(A, R)`; bodies may contain `¬¬a`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AspProgram {
    pub atoms: Universe,
    pub rules: Vec<AspRule>,
}

impl AspProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn atom(&mut self, name: &str) -> Atom {
        self.atoms.intern(name)
    }

    /// Lifts the program to an ELP with `E = ∅`; fails on `¬¬a` bodies.
    pub fn to_elp(&self) -> Option<Elp> {
        Some(Elp {
            atoms: self.atoms.clone(),
            eliterals: Vec::new(),
            rules: self
                .rules
                .iter()
                .map(AspRule::to_elp)
                .collect::<Option<_>>()?,
        })
    }

    /// Adds one fact per atom in `facts` (duplicates of existing rules are skipped).
    pub fn with_facts(&self, facts: impl IntoIterator<Item = Atom>) -> AspProgram {
        let mut out = self.clone();
        for a in facts {
            let r = AspRule::fact(a);
            if !out.rules.contains(&r) {
                out.rules.push(r);
            }
        }
        out
    }
}

/// Either kind of program, as produced by [`parse_program`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Program {
    Elp(Elp),
    Asp(AspProgram),
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_program(self, &RenderOptions::default()))
    }
}

/// Union of two ELPs; see [`Elp::union`].
pub fn union_elps(p1: &Elp, p2: &Elp) -> Elp {
    p1.union(p2)
}

/// Puts both programs over `A1 ∪ A2` and `E1 ∪ E2` (first program's order
/// first). Rules are untouched apart from atom renumbering.
pub fn align(p1: &Elp, p2: &Elp) -> (Elp, Elp) {
    let mut atoms = p1.atoms.clone();
    let map2 = atoms.merge(&p2.atoms);
    let map1: Vec<Atom> = p1.atoms.atoms().collect();

    let mut eliterals = p1.eliterals.clone();
    for e in &p2.eliterals {
        let e = remap_eliteral(*e, &map2);
        if !eliterals.contains(&e) {
            eliterals.push(e);
        }
    }
    (
        p1.reindexed(atoms.clone(), eliterals.clone(), &map1),
        p2.reindexed(atoms, eliterals, &map2),
    )
}

/// Puts two plain programs over `A1 ∪ A2`.
pub fn align_asp(p1: &AspProgram, p2: &AspProgram) -> (AspProgram, AspProgram) {
    let mut atoms = p1.atoms.clone();
    let map2 = atoms.merge(&p2.atoms);
    (
        AspProgram {
            atoms: atoms.clone(),
            rules: p1.rules.clone(),
        },
        AspProgram {
            atoms,
            rules: p2.rules.iter().map(|r| r.remap(&map2)).collect(),
        },
    )
}
