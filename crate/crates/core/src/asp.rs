//! Semantics of epistemic-free programs by exhaustive enumeration.
//!
//! Interpretations are `u64` bitsets over the program's universe (bit `i`
//! is atom `i`). Every search here scans interpretations and their subsets
//! directly; there is no propagation or learning.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::syntax::{AspProgram, Atom, NegBodyEntry, Universe};
use crate::{Error, Limits, Result};

/// A set of atoms over a fixed universe.
///
/// Ordered canonically: by cardinality, then lexicographically on the sorted
/// atom indices (`{0,2} < {1,2}`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Interpretation(u64);

impl Interpretation {
    pub const EMPTY: Interpretation = Interpretation(0);

    pub fn from_bits(bits: u64) -> Self {
        Interpretation(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = Atom>) -> Self {
        Interpretation(atoms.into_iter().fold(0, |acc, a| acc | bit(a)))
    }

    /// Looks names up in `universe`; `None` if one is missing.
    pub fn from_names<S: AsRef<str>>(
        universe: &Universe,
        names: impl IntoIterator<Item = S>,
    ) -> Option<Self> {
        let mut bits = 0;
        for n in names {
            bits |= bit(universe.get(n.as_ref())?);
        }
        Some(Interpretation(bits))
    }

    pub fn contains(self, a: Atom) -> bool {
        self.0 & bit(a) != 0
    }

    pub fn with(self, a: Atom) -> Self {
        Interpretation(self.0 | bit(a))
    }

    pub fn union(self, other: Self) -> Self {
        Interpretation(self.0 | other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn atoms(self) -> impl Iterator<Item = Atom> {
        let bits = self.0;
        (0..64u32).filter(move |i| bits >> i & 1 == 1).map(Atom)
    }

    /// Atom names in universe order.
    pub fn names(self, universe: &Universe) -> Vec<String> {
        self.atoms().map(|a| universe.name(a).to_owned()).collect()
    }

    pub fn display(self, universe: &Universe) -> String {
        format!("{{{}}}", self.names(universe).join(", "))
    }

    /// All `2^n` subsets of an `n`-atom universe in canonical order.
    pub fn all(n: usize) -> Vec<Interpretation> {
        let mut v: Vec<_> = (0..1u64 << n).map(Interpretation).collect();
        v.sort();
        v
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.atoms().map(|a| a.0)).finish()
    }
}

impl Ord for Interpretation {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(self.0, other.0)
    }
}

impl PartialOrd for Interpretation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Cardinality first, then the set holding the smallest differing element wins.
pub(crate) fn canonical_cmp(a: u64, b: u64) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        if a == b {
            Ordering::Equal
        } else if a >> (a ^ b).trailing_zeros() & 1 == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    })
}

fn bit(a: Atom) -> u64 {
    1u64 << a.0
}

/// A rule body element, for [`holds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BodyElement {
    Atom(Atom),
    Neg(NegBodyEntry),
    Top,
}

/// `a ↦ a∈I`, `¬a ↦ a∉I`, `¬¬a ↦ a∈I`, `⊤ ↦ true`.
pub fn holds(i: Interpretation, e: BodyElement) -> bool {
    match e {
        BodyElement::Atom(a) => i.contains(a),
        BodyElement::Neg(n) => i.contains(n.atom()) == n.is_double(),
        BodyElement::Top => true,
    }
}

pub fn is_model(i: Interpretation, p: &AspProgram) -> bool {
    MaskProgram::compile(p).is_model(i.0)
}

/// GL-reduct: rules whose negated body parts all hold in `i`, reduced to
/// `head ← positive body`.
pub fn gl_reduct(p: &AspProgram, i: Interpretation) -> AspProgram {
    AspProgram {
        atoms: p.atoms.clone(),
        rules: p
            .rules
            .iter()
            .filter(|r| r.neg_body.iter().all(|&n| holds(i, BodyElement::Neg(n))))
            .map(|r| crate::syntax::AspRule {
                head: r.head.clone(),
                pos_body: r.pos_body.clone(),
                ..Default::default()
            })
            .collect(),
    }
}

/// Bitmask form of a rule. The body holds in `i` iff `pos ⊆ i`,
/// `neg ∩ i = ∅` and `negneg ⊆ i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct MaskRule {
    pub head: u64,
    pub pos: u64,
    pub neg: u64,
    pub negneg: u64,
}

impl MaskRule {
    pub fn fact(bits: u64) -> Self {
        MaskRule {
            head: bits,
            pos: 0,
            neg: 0,
            negneg: 0,
        }
    }

    #[inline]
    fn body_holds(&self, i: u64) -> bool {
        self.pos & !i == 0 && self.neg & i == 0 && self.negneg & !i == 0
    }

    #[inline]
    fn satisfied_by(&self, i: u64) -> bool {
        !self.body_holds(i) || self.head & i != 0
    }

    /// Whether the rule survives the GL-reduct w.r.t. `m`.
    #[inline]
    fn kept_in_reduct(&self, m: u64) -> bool {
        self.neg & m == 0 && self.negneg & !m == 0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct MaskProgram {
    pub n: usize,
    pub rules: Vec<MaskRule>,
}

impl MaskProgram {
    pub fn compile(p: &AspProgram) -> Self {
        let fold = |it: &mut dyn Iterator<Item = Atom>| it.fold(0u64, |acc, a| acc | bit(a));
        MaskProgram {
            n: p.atoms.len(),
            rules: p
                .rules
                .iter()
                .map(|r| MaskRule {
                    head: fold(&mut r.head.iter().copied()),
                    pos: fold(&mut r.pos_body.iter().copied()),
                    neg: fold(&mut r.neg_body.iter().filter(|n| !n.is_double()).map(|n| n.atom())),
                    negneg: fold(&mut r.neg_body.iter().filter(|n| n.is_double()).map(|n| n.atom())),
                })
                .collect(),
        }
    }

    pub fn with_facts(mut self, facts: u64) -> Self {
        for i in 0..self.n {
            if facts >> i & 1 == 1 {
                self.rules.push(MaskRule::fact(1 << i));
            }
        }
        self
    }

    pub fn is_model(&self, i: u64) -> bool {
        self.rules.iter().all(|r| r.satisfied_by(i))
    }

    fn reduct(&self, m: u64) -> Vec<(u64, u64)> {
        self.rules
            .iter()
            .filter(|r| r.kept_in_reduct(m))
            .map(|r| (r.head, r.pos))
            .collect()
    }

    /// Some proper subset of `m` satisfies the reduct w.r.t. `y`.
    fn has_smaller_reduct_model(&self, m: u64, reduct: &[(u64, u64)]) -> bool {
        let sat = |x: u64| reduct.iter().all(|&(h, p)| p & !x != 0 || h & x != 0);
        if m == 0 {
            return false;
        }
        let mut x = (m - 1) & m;
        loop {
            if sat(x) {
                return true;
            }
            if x == 0 {
                return false;
            }
            x = (x - 1) & m;
        }
    }

    fn is_answer_set(&self, m: u64) -> bool {
        self.is_model(m) && !self.has_smaller_reduct_model(m, &self.reduct(m))
    }

    /// Answer sets, canonically sorted.
    pub fn answer_sets(&self) -> Vec<Interpretation> {
        // scan order 0..2^n is not canonical, so sort after
        let mut out: Vec<_> = (0..1u64 << self.n)
            .filter(|&m| self.is_answer_set(m))
            .map(Interpretation)
            .collect();
        out.sort();
        out
    }

    pub fn se_models(&self) -> Vec<SePair> {
        let mut out = Vec::new();
        for y in 0..1u64 << self.n {
            if !self.is_model(y) {
                continue;
            }
            let reduct = self.reduct(y);
            let mut x = y;
            loop {
                if reduct.iter().all(|&(h, p)| p & !x != 0 || h & x != 0) {
                    out.push(SePair {
                        x: Interpretation(x),
                        y: Interpretation(y),
                    });
                }
                if x == 0 {
                    break;
                }
                x = (x - 1) & y;
            }
        }
        out.sort();
        out
    }
}

/// `(X, Y)` with `X ⊆ Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SePair {
    pub x: Interpretation,
    pub y: Interpretation,
}

impl SePair {
    pub fn display(self, universe: &Universe) -> String {
        format!(
            "({}, {})",
            self.x.display(universe),
            self.y.display(universe)
        )
    }
}

fn compile_checked(p: &AspProgram, limits: &Limits) -> Result<MaskProgram> {
    limits.check_atoms(p.atoms.len())?;
    Ok(MaskProgram::compile(p))
}

/// All answer sets of `p`, canonically sorted.
pub fn answer_sets(p: &AspProgram, limits: &Limits) -> Result<Vec<Interpretation>> {
    Ok(compile_checked(p, limits)?.answer_sets())
}

/// `{(X,Y) : X ⊆ Y, Y ⊨ p, X ⊨ p^Y}`, sorted.
pub fn se_models(p: &AspProgram, limits: &Limits) -> Result<Vec<SePair>> {
    Ok(compile_checked(p, limits)?.se_models())
}

/// SE-models whose `X` is `Y` or maximal below `Y`.
pub fn ue_models(p: &AspProgram, limits: &Limits) -> Result<Vec<SePair>> {
    Ok(ue_filter(&se_models(p, limits)?))
}

fn ue_filter(se: &[SePair]) -> Vec<SePair> {
    se.iter()
        .filter(|m| {
            m.x == m.y
                || !se.iter().any(|o| {
                    o.y == m.y && m.x.is_proper_subset(o.x) && o.x.is_proper_subset(m.y)
                })
        })
        .copied()
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AspWitness {
    /// First UE-model (canonical order) held by only one program.
    pub pair: SePair,
    pub only_in: Side,
    /// Smallest fact set separating the answer sets, found by direct search.
    /// `None` would mean the two characterisations disagree.
    pub facts: Option<Interpretation>,
    pub left: Vec<Interpretation>,
    pub right: Vec<Interpretation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AspVerdict {
    pub equivalent: bool,
    pub witness: Option<AspWitness>,
}

/// Uniform equivalence of two plain programs over the same universe, decided
/// by comparing UE-models. On failure a fact-set counterexample is searched
/// for independently.
pub fn asp_uniform_equivalent(
    p1: &AspProgram,
    p2: &AspProgram,
    limits: &Limits,
) -> Result<AspVerdict> {
    if p1.atoms != p2.atoms {
        return Err(Error::NotAligned("atom universes differ"));
    }
    let ue1 = ue_models(p1, limits)?;
    let ue2 = ue_models(p2, limits)?;
    if ue1 == ue2 {
        return Ok(AspVerdict {
            equivalent: true,
            witness: None,
        });
    }
    let left_only = ue1.iter().filter(|m| !ue2.contains(m)).min();
    let right_only = ue2.iter().filter(|m| !ue1.contains(m)).min();
    let (pair, only_in) = match (left_only, right_only) {
        (Some(&l), Some(&r)) if r < l => (r, Side::Right),
        (Some(&l), _) => (l, Side::Left),
        (None, Some(&r)) => (r, Side::Right),
        (None, None) => unreachable!("sets differ"),
    };
    let facts = fact_witness(p1, p2)?;
    let (left, right) = match facts {
        Some(d) => (
            MaskProgram::compile(p1).with_facts(d.0).answer_sets(),
            MaskProgram::compile(p2).with_facts(d.0).answer_sets(),
        ),
        None => (Vec::new(), Vec::new()),
    };
    Ok(AspVerdict {
        equivalent: false,
        witness: Some(AspWitness {
            pair,
            only_in,
            facts,
            left,
            right,
        }),
    })
}

/// Smallest `D ⊆ A` (canonical order) with `AS(p1 ∪ D) ≠ AS(p2 ∪ D)`.
pub fn fact_witness(p1: &AspProgram, p2: &AspProgram) -> Result<Option<Interpretation>> {
    if p1.atoms != p2.atoms {
        return Err(Error::NotAligned("atom universes differ"));
    }
    let (m1, m2) = (MaskProgram::compile(p1), MaskProgram::compile(p2));
    Ok(Interpretation::all(m1.n).into_par_iter().find_first(|d| {
        m1.clone().with_facts(d.0).answer_sets() != m2.clone().with_facts(d.0).answer_sets()
    }))
}
