//! Epistemic guesses, compatibility, the epistemic reduct, and candidate
//! world views / world views.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::asp::{canonical_cmp, Interpretation, MaskProgram, MaskRule};
use crate::syntax::{AspProgram, AspRule, Elp, EpistemicLiteral, NegBodyEntry};
use crate::{Error, Limits, Result};

/// A subset of the epistemic literal domain, as a bitset over domain positions.
///
/// Ordered like [`Interpretation`]: cardinality, then lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Guess(u64);

impl Guess {
    pub const EMPTY: Guess = Guess(0);

    pub fn from_bits(bits: u64) -> Self {
        Guess(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Guess(indices.into_iter().fold(0, |acc, i| acc | 1 << i))
    }

    /// The whole domain of size `k`.
    pub fn full(k: usize) -> Self {
        Guess(if k == 64 { u64::MAX } else { (1u64 << k) - 1 })
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits >> i & 1 == 1)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_proper_subset(self, other: Guess) -> bool {
        self.0 & !other.0 == 0 && self != other
    }

    /// Epistemic literal strings in domain order.
    pub fn names(self, p: &Elp) -> Vec<String> {
        self.indices()
            .map(|i| p.eliterals[i].display(&p.atoms))
            .collect()
    }

    /// All subsets of a `k`-literal domain in canonical order.
    pub fn all(k: usize) -> Vec<Guess> {
        let mut v: Vec<_> = (0..1u64 << k).map(Guess).collect();
        v.sort();
        v
    }

    fn check_within(self, domain: usize) -> Result<()> {
        match self.indices().find(|&i| i >= domain) {
            Some(index) => Err(Error::GuessOutsideDomain { index, domain }),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for Guess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

impl Ord for Guess {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(self.0, other.0)
    }
}

impl PartialOrd for Guess {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ViewKind {
    Cwv,
    Wv,
}

impl fmt::Display for ViewKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViewKind::Cwv => "cwv",
            ViewKind::Wv => "wv",
        })
    }
}

/// A candidate world view or world view together with its (unique) guess.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldView {
    pub guess: Guess,
    /// Nonempty, canonically sorted.
    pub interpretations: Vec<Interpretation>,
    pub kind: ViewKind,
}

fn literal_holds(i: Interpretation, e: EpistemicLiteral) -> bool {
    i.contains(e.inner.atom) != e.inner.negated
}

/// Compatibility of `m` with `phi` w.r.t. the domain `e`:
/// `m` is nonempty, every `not ℓ ∈ phi` has a witness `I ⊭ ℓ` in `m`, and
/// every `not ℓ ∈ e ∖ phi` has `ℓ` true throughout `m`.
pub fn compatible(m: &[Interpretation], phi: Guess, e: &[EpistemicLiteral]) -> Result<bool> {
    phi.check_within(e.len())?;
    if m.is_empty() {
        return Ok(false);
    }
    Ok(e.iter().enumerate().all(|(i, &lit)| {
        if phi.contains(i) {
            m.iter().any(|&interp| !literal_holds(interp, lit))
        } else {
            m.iter().all(|&interp| literal_holds(interp, lit))
        }
    }))
}

/// The only guess `m` can be compatible with: `{not ℓ ∈ e : some I ∈ m has I ⊭ ℓ}`.
pub fn guess_of(m: &[Interpretation], e: &[EpistemicLiteral]) -> Result<Guess> {
    if m.is_empty() {
        return Err(Error::EmptyInterpretationSet);
    }
    Ok(Guess::from_indices(e.iter().enumerate().filter_map(
        |(i, &lit)| m.iter().any(|&interp| !literal_holds(interp, lit)).then_some(i),
    )))
}

/// `Π^Φ`: epistemic literals in `phi` become `⊤` (so a rule with `¬ξ`,
/// `ξ ∈ phi`, is dropped as its body contains `¬⊤`); every other `not ℓ`
/// becomes `¬ℓ`, and `¬ not ℓ` becomes `¬¬ℓ` (with `¬¬¬a` read as `¬a`).
pub fn epistemic_reduct(p: &Elp, phi: Guess) -> Result<AspProgram> {
    phi.check_within(p.eliterals.len())?;
    let index = |e: EpistemicLiteral| {
        p.eliteral_index(e).ok_or_else(|| {
            Error::Malformed(format!(
                "`{}` occurs in a rule but not in the epistemic literal domain",
                e.display(&p.atoms)
            ))
        })
    };
    let mut rules = Vec::with_capacity(p.rules.len());
    'rules: for r in &p.rules {
        let mut out = AspRule {
            head: r.head.clone(),
            body_top: r.body_top,
            ..Default::default()
        };
        for l in &r.body_lits {
            if l.negated {
                out.neg_body.insert(NegBodyEntry::not(l.atom));
            } else {
                out.pos_body.insert(l.atom);
            }
        }
        for &e in &r.body_epi_neg {
            if phi.contains(index(e)?) {
                continue 'rules;
            }
        }
        for &e in &r.body_epi_pos {
            if phi.contains(index(e)?) {
                out.body_top += 1;
            } else {
                out.neg_body.insert(NegBodyEntry::negate(e.inner));
            }
        }
        for &e in &r.body_epi_neg {
            out.neg_body.insert(NegBodyEntry::negate_twice(e.inner));
        }
        rules.push(out);
    }
    Ok(AspProgram {
        atoms: p.atoms.clone(),
        rules,
    })
}

/// Bitmask form of an ELP for the guess scans.
#[derive(Debug, Clone)]
pub(crate) struct CompiledElp {
    pub n: usize,
    pub k: usize,
    rules: Vec<EpiRule>,
    /// Per domain position: atom bit and whether the inner literal is `¬a`.
    elits: Vec<(u64, bool)>,
}

#[derive(Debug, Clone)]
struct EpiRule {
    base: MaskRule,
    epos: u64,
    eneg: u64,
}

impl CompiledElp {
    pub fn compile(p: &Elp) -> Result<Self> {
        let base = MaskProgram::compile(&AspProgram {
            atoms: p.atoms.clone(),
            rules: p
                .rules
                .iter()
                .map(|r| {
                    let mut r = r.clone();
                    r.body_epi_pos.clear();
                    r.body_epi_neg.clear();
                    r.to_asp().expect("epistemic parts removed")
                })
                .collect(),
        });
        let mut rules = Vec::with_capacity(p.rules.len());
        for (r, base) in p.rules.iter().zip(base.rules) {
            let mask = |set: &std::collections::BTreeSet<EpistemicLiteral>| -> Result<u64> {
                let mut m = 0;
                for &e in set {
                    let i = p.eliteral_index(e).ok_or_else(|| {
                        Error::Malformed(format!(
                            "`{}` occurs in a rule but not in the epistemic literal domain",
                            e.display(&p.atoms)
                        ))
                    })?;
                    m |= 1 << i;
                }
                Ok(m)
            };
            rules.push(EpiRule {
                base,
                epos: mask(&r.body_epi_pos)?,
                eneg: mask(&r.body_epi_neg)?,
            });
        }
        Ok(CompiledElp {
            n: p.atoms.len(),
            k: p.eliterals.len(),
            rules,
            elits: p
                .eliterals
                .iter()
                .map(|e| (1u64 << e.inner.atom.0, e.inner.negated))
                .collect(),
        })
    }

    /// Same as [`epistemic_reduct`], on masks.
    pub fn reduct(&self, phi: Guess) -> MaskProgram {
        let phi = phi.0;
        let mut rules = Vec::with_capacity(self.rules.len());
        for r in &self.rules {
            if r.eneg & phi != 0 {
                continue;
            }
            let mut m = r.base;
            let mut rest = r.epos & !phi;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let (a, negated) = self.elits[i];
                if negated {
                    m.negneg |= a;
                } else {
                    m.neg |= a;
                }
            }
            let mut rest = r.eneg;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let (a, negated) = self.elits[i];
                if negated {
                    m.neg |= a;
                } else {
                    m.negneg |= a;
                }
            }
            rules.push(m);
        }
        MaskProgram { n: self.n, rules }
    }

    fn compatible(&self, m: &[Interpretation], phi: Guess) -> bool {
        !m.is_empty()
            && self.elits.iter().enumerate().all(|(i, &(a, negated))| {
                let holds = |interp: &Interpretation| (interp.bits() & a != 0) != negated;
                if phi.contains(i) {
                    !m.iter().all(holds)
                } else {
                    m.iter().all(holds)
                }
            })
    }

    /// CWV of `Π ∪ facts` for `phi`, if any.
    pub fn cwv(&self, phi: Guess, facts: Interpretation) -> Option<Vec<Interpretation>> {
        let m = self.reduct(phi).with_facts(facts.bits()).answer_sets();
        self.compatible(&m, phi).then_some(m)
    }

    /// All views of `Π ∪ facts` of the given kind, by guess in canonical order.
    pub fn views(&self, facts: Interpretation, kind: ViewKind) -> Vec<WorldView> {
        let cwvs: Vec<WorldView> = Guess::all(self.k)
            .into_iter()
            .filter_map(|phi| {
                self.cwv(phi, facts).map(|m| WorldView {
                    guess: phi,
                    interpretations: m,
                    kind: ViewKind::Cwv,
                })
            })
            .collect();
        match kind {
            ViewKind::Cwv => cwvs,
            ViewKind::Wv => maximal(&cwvs),
        }
    }
}

fn maximal(cwvs: &[WorldView]) -> Vec<WorldView> {
    cwvs.iter()
        .filter(|c| !cwvs.iter().any(|o| c.guess.is_proper_subset(o.guess)))
        .map(|c| WorldView {
            kind: ViewKind::Wv,
            ..c.clone()
        })
        .collect()
}

pub(crate) fn compile_checked(p: &Elp, limits: &Limits) -> Result<CompiledElp> {
    limits.check_atoms(p.atoms.len())?;
    limits.check_eliterals(p.eliterals.len())?;
    CompiledElp::compile(p)
}

/// The CWV for `phi`: `AS(Π^Φ)` when it is compatible with `phi`.
pub fn cwv_for_guess(p: &Elp, phi: Guess, limits: &Limits) -> Result<Option<WorldView>> {
    phi.check_within(p.eliterals.len())?;
    let c = compile_checked(p, limits)?;
    Ok(c.cwv(phi, Interpretation::EMPTY).map(|m| WorldView {
        guess: phi,
        interpretations: m,
        kind: ViewKind::Cwv,
    }))
}

/// All CWVs, ordered by guess.
pub fn candidate_world_views(p: &Elp, limits: &Limits) -> Result<Vec<WorldView>> {
    Ok(compile_checked(p, limits)?.views(Interpretation::EMPTY, ViewKind::Cwv))
}

/// CWVs whose guess is subset-maximal among all CWV guesses.
pub fn world_views(p: &Elp, limits: &Limits) -> Result<Vec<WorldView>> {
    Ok(compile_checked(p, limits)?.views(Interpretation::EMPTY, ViewKind::Wv))
}

/// Views of the requested kind.
pub fn views(p: &Elp, kind: ViewKind, limits: &Limits) -> Result<Vec<WorldView>> {
    Ok(compile_checked(p, limits)?.views(Interpretation::EMPTY, kind))
}
