//! Ordinary and uniform (C)WV-equivalence, and the UE-function.
//!
//! Uniform checks scan every fact set `D ⊆ A` of the shared universe in
//! canonical order. The scans run on the rayon pool but always report the
//! first failing `D` in that order, so verdicts and witnesses do not depend
//! on the number of threads.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::asp::Interpretation;
use crate::epistemic::{compile_checked, CompiledElp, Guess, ViewKind, WorldView};
use crate::syntax::Elp;
use crate::{Error, Limits, Result};

/// Which views an equivalence notion compares.
pub type EquivKind = ViewKind;

/// A counterexample: the fact set, the first guess (canonical order) on which
/// the programs disagree, and the views of both programs extended by `facts`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub facts: Interpretation,
    pub guess: Option<Guess>,
    pub left: Vec<WorldView>,
    pub right: Vec<WorldView>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub equivalent: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn from_witness(witness: Option<Witness>) -> Self {
        Verdict {
            equivalent: witness.is_none(),
            witness,
        }
    }
}

fn check_aligned(p1: &Elp, p2: &Elp) -> Result<()> {
    if p1.atoms != p2.atoms {
        return Err(Error::NotAligned("atom universes differ"));
    }
    if p1.eliterals != p2.eliterals {
        return Err(Error::NotAligned("epistemic literal domains differ"));
    }
    Ok(())
}

fn compile_pair(p1: &Elp, p2: &Elp, limits: &Limits) -> Result<(CompiledElp, CompiledElp)> {
    check_aligned(p1, p2)?;
    Ok((compile_checked(p1, limits)?, compile_checked(p2, limits)?))
}

fn view_of(views: &[WorldView], phi: Guess) -> Option<&[crate::asp::Interpretation]> {
    views
        .iter()
        .find(|v| v.guess == phi)
        .map(|v| v.interpretations.as_slice())
}

/// First guess whose view (or its absence) differs between the two lists.
fn first_differing_guess(left: &[WorldView], right: &[WorldView]) -> Option<Guess> {
    let guesses: BTreeSet<Guess> = left.iter().chain(right).map(|v| v.guess).collect();
    guesses
        .into_iter()
        .find(|&g| view_of(left, g) != view_of(right, g))
}

fn compare_at(
    c1: &CompiledElp,
    c2: &CompiledElp,
    facts: Interpretation,
    kind: EquivKind,
) -> Option<Witness> {
    let left = c1.views(facts, kind);
    let right = c2.views(facts, kind);
    let sets = |v: &[WorldView]| -> BTreeSet<Vec<Interpretation>> {
        v.iter().map(|w| w.interpretations.clone()).collect()
    };
    if sets(&left) == sets(&right) {
        return None;
    }
    Some(Witness {
        facts,
        guess: first_differing_guess(&left, &right),
        left,
        right,
    })
}

/// Whether the two programs have the same kind-`k` views (as sets of
/// interpretation sets). Programs must be aligned.
pub fn ordinary_equivalent(p1: &Elp, p2: &Elp, kind: EquivKind, limits: &Limits) -> Result<Verdict> {
    let (c1, c2) = compile_pair(p1, p2, limits)?;
    Ok(Verdict::from_witness(compare_at(
        &c1,
        &c2,
        Interpretation::EMPTY,
        kind,
    )))
}

/// Ordinary equivalence of `p1 ∪ D` and `p2 ∪ D` for every `D ⊆ A`; the
/// witness is the first failing `D` in canonical order.
pub fn uniformly_equivalent(
    p1: &Elp,
    p2: &Elp,
    kind: EquivKind,
    limits: &Limits,
) -> Result<Verdict> {
    let (c1, c2) = compile_pair(p1, p2, limits)?;
    let witness = Interpretation::all(c1.n)
        .into_par_iter()
        .find_map_first(|d| compare_at(&c1, &c2, d, kind));
    Ok(Verdict::from_witness(witness))
}

/// Sparse UE-function: `(guess, D) ↦ view` for every combination where
/// `AS((Π ∪ D)^Φ)` is a kind-`k` view of `Π ∪ D` for `Φ`. Absent keys map to `∅`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UeTable {
    pub kind: EquivKind,
    pub entries: BTreeMap<(Guess, Interpretation), Vec<Interpretation>>,
}

impl UeTable {
    pub fn get(&self, guess: Guess, facts: Interpretation) -> &[Interpretation] {
        self.entries
            .get(&(guess, facts))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// First key (in `(guess, D)` order) where the two tables disagree.
    pub fn first_difference(&self, other: &UeTable) -> Option<(Guess, Interpretation)> {
        let keys: BTreeSet<_> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter()
            .find(|&&(g, d)| self.get(g, d) != other.get(g, d))
            .copied()
    }
}

pub fn ue_function(p: &Elp, kind: EquivKind, limits: &Limits) -> Result<UeTable> {
    let c = compile_checked(p, limits)?;
    let per_d: Vec<(Interpretation, Vec<WorldView>)> = Interpretation::all(c.n)
        .into_par_iter()
        .map(|d| (d, c.views(d, kind)))
        .collect();
    let entries = per_d
        .into_iter()
        .flat_map(|(d, views)| {
            views
                .into_iter()
                .map(move |v| ((v.guess, d), v.interpretations))
        })
        .collect();
    Ok(UeTable { kind, entries })
}

/// Compares the two UE-functions entry by entry, one fact set at a time,
/// without building either table. The witness is the first disagreeing
/// entry, scanning `D` in canonical order and then guesses; its `left` /
/// `right` hold that entry's view for each program (empty when `∅`).
pub fn ue_functions_coincide(
    p1: &Elp,
    p2: &Elp,
    kind: EquivKind,
    limits: &Limits,
) -> Result<Verdict> {
    let (c1, c2) = compile_pair(p1, p2, limits)?;
    let witness = Interpretation::all(c1.n)
        .into_par_iter()
        .find_map_first(|d| {
            let left = c1.views(d, kind);
            let right = c2.views(d, kind);
            let phi = first_differing_guess(&left, &right)?;
            let pick = |v: Vec<WorldView>| v.into_iter().filter(|w| w.guess == phi).collect();
            Some(Witness {
                facts: d,
                guess: Some(phi),
                left: pick(left),
                right: pick(right),
            })
        });
    Ok(Verdict::from_witness(witness))
}
