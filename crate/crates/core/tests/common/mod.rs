//! Reference semantics written straight from the definitions, plus random
//! program generators. Nothing here calls into the crate's solvers: programs
//! are rendered to text and parsed by the crate, while the oracle evaluates
//! its own copy over plain atom-index sets.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Set = BTreeSet<usize>;

pub const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// `not ℓ` as `(atom, ℓ is ¬atom)`.
pub type ELit = (usize, bool);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ORule {
    pub head: Vec<usize>,
    pub pos: Vec<usize>,
    /// `¬a`
    pub neg: Vec<usize>,
    /// `¬¬a`
    pub negneg: Vec<usize>,
    pub epos: Vec<ELit>,
    /// `¬ξ`
    pub eneg: Vec<ELit>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OProg {
    pub n: usize,
    pub elits: Vec<ELit>,
    pub rules: Vec<ORule>,
}

fn elit_text(e: ELit) -> String {
    if e.1 {
        format!("enot not {}", NAMES[e.0])
    } else {
        format!("enot {}", NAMES[e.0])
    }
}

impl OProg {
    /// Text with `#atoms` and `#eliterals` so atom `i` is the crate's atom `i`
    /// and the domain order matches.
    pub fn text(&self) -> String {
        let mut s = format!("#atoms {{{}}}.\n", NAMES[..self.n].join(", "));
        if !self.elits.is_empty() {
            let es: Vec<_> = self.elits.iter().map(|&e| elit_text(e)).collect();
            s += &format!("#eliterals {{{}}}.\n", es.join(", "));
        }
        for r in &self.rules {
            let head: Vec<_> = r.head.iter().map(|&a| NAMES[a]).collect();
            let mut body: Vec<String> = Vec::new();
            body.extend(r.pos.iter().map(|&a| NAMES[a].to_owned()));
            body.extend(r.neg.iter().map(|&a| format!("not {}", NAMES[a])));
            body.extend(r.negneg.iter().map(|&a| format!("not not {}", NAMES[a])));
            body.extend(r.epos.iter().map(|&e| elit_text(e)));
            body.extend(r.eneg.iter().map(|&e| format!("not {}", elit_text(e))));
            s += &head.join(" | ");
            if !body.is_empty() {
                s += &format!(" :- {}", body.join(", "));
            } else if head.is_empty() {
                s += ":- ";
            }
            s += ".\n";
        }
        s
    }

    pub fn is_epistemic_free(&self) -> bool {
        self.rules.iter().all(|r| r.epos.is_empty() && r.eneg.is_empty())
    }

    pub fn with_facts(&self, d: &Set) -> OProg {
        let mut p = self.clone();
        for &a in d {
            p.rules.push(ORule {
                head: vec![a],
                ..Default::default()
            });
        }
        p
    }
}

pub fn subsets(n: usize) -> Vec<Set> {
    (0..1u32 << n)
        .map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect())
        .collect()
}

pub fn subsets_of(s: &Set) -> Vec<Set> {
    let v: Vec<usize> = s.iter().copied().collect();
    (0..1u32 << v.len())
        .map(|bits| {
            (0..v.len())
                .filter(|i| bits >> i & 1 == 1)
                .map(|i| v[i])
                .collect()
        })
        .collect()
}

pub fn names(s: &Set) -> BTreeSet<String> {
    s.iter().map(|&a| NAMES[a].to_owned()).collect()
}

// ---- answer sets ----

fn body_true(i: &Set, r: &ORule) -> bool {
    assert!(r.epos.is_empty() && r.eneg.is_empty());
    r.pos.iter().all(|a| i.contains(a))
        && r.neg.iter().all(|a| !i.contains(a))
        && r.negneg.iter().all(|a| i.contains(a))
}

pub fn satisfies(i: &Set, rules: &[ORule]) -> bool {
    rules
        .iter()
        .all(|r| !body_true(i, r) || r.head.iter().any(|a| i.contains(a)))
}

/// GL-reduct: drop rules whose negative part is false in `m`, then drop
/// the negative parts.
pub fn gl_reduct(rules: &[ORule], m: &Set) -> Vec<ORule> {
    rules
        .iter()
        .filter(|r| {
            r.neg.iter().all(|a| !m.contains(a)) && r.negneg.iter().all(|a| m.contains(a))
        })
        .map(|r| ORule {
            head: r.head.clone(),
            pos: r.pos.clone(),
            ..Default::default()
        })
        .collect()
}

pub fn answer_sets(p: &OProg) -> BTreeSet<Set> {
    subsets(p.n)
        .into_iter()
        .filter(|m| {
            satisfies(m, &p.rules) && {
                let red = gl_reduct(&p.rules, m);
                !subsets_of(m)
                    .iter()
                    .any(|x| x.len() < m.len() && satisfies(x, &red))
            }
        })
        .collect()
}

// ---- SE / UE models ----

pub fn se_models(p: &OProg) -> BTreeSet<(Set, Set)> {
    let mut out = BTreeSet::new();
    for y in subsets(p.n) {
        if !satisfies(&y, &p.rules) {
            continue;
        }
        let red = gl_reduct(&p.rules, &y);
        for x in subsets_of(&y) {
            if satisfies(&x, &red) {
                out.insert((x, y.clone()));
            }
        }
    }
    out
}

/// `(X, Y)` with `X = Y`, or `X ⊂ Y` maximal among SE-models below `Y`.
pub fn ue_models(p: &OProg) -> BTreeSet<(Set, Set)> {
    let se = se_models(p);
    se.iter()
        .filter(|(x, y)| {
            x == y
                || !se
                    .iter()
                    .any(|(x2, y2)| y2 == y && x2 != y && x.is_subset(x2) && x2.len() > x.len())
        })
        .cloned()
        .collect()
}

pub fn asp_uniformly_equivalent(p1: &OProg, p2: &OProg) -> bool {
    assert_eq!(p1.n, p2.n);
    subsets(p1.n)
        .iter()
        .all(|d| answer_sets(&p1.with_facts(d)) == answer_sets(&p2.with_facts(d)))
}

// ---- epistemic semantics ----

/// Epistemic reduct: `ξ ∈ Φ` becomes `⊤`; any other `not ℓ` becomes `¬ℓ`.
/// Hence `ξ` with `ξ ∈ Φ` vanishes, `¬ξ` with `ξ ∈ Φ` kills the rule, and
/// `¬ξ` otherwise is `¬¬ℓ` (with `¬¬¬a` read as `¬a`).
pub fn epistemic_reduct(p: &OProg, phi: &BTreeSet<ELit>) -> OProg {
    let mut rules = Vec::new();
    for r in &p.rules {
        if r.eneg.iter().any(|e| phi.contains(e)) {
            continue;
        }
        let mut nr = ORule {
            head: r.head.clone(),
            pos: r.pos.clone(),
            neg: r.neg.clone(),
            negneg: r.negneg.clone(),
            ..Default::default()
        };
        for &(a, neg) in r.epos.iter().filter(|e| !phi.contains(e)) {
            if neg {
                nr.negneg.push(a);
            } else {
                nr.neg.push(a);
            }
        }
        for &(a, neg) in &r.eneg {
            if neg {
                nr.neg.push(a);
            } else {
                nr.negneg.push(a);
            }
        }
        rules.push(nr);
    }
    OProg {
        n: p.n,
        elits: Vec::new(),
        rules,
    }
}

fn lit_true(i: &Set, (a, neg): ELit) -> bool {
    i.contains(&a) != neg
}

/// Compatibility of `m` with the guess `phi`.
pub fn compatible(m: &BTreeSet<Set>, phi: &BTreeSet<ELit>, domain: &[ELit]) -> bool {
    !m.is_empty()
        && domain.iter().all(|&e| {
            if phi.contains(&e) {
                m.iter().any(|i| !lit_true(i, e))
            } else {
                m.iter().all(|i| lit_true(i, e))
            }
        })
}

pub type View = (BTreeSet<ELit>, BTreeSet<Set>);

pub fn guesses(domain: &[ELit]) -> Vec<BTreeSet<ELit>> {
    (0..1u32 << domain.len())
        .map(|bits| {
            (0..domain.len())
                .filter(|i| bits >> i & 1 == 1)
                .map(|i| domain[i])
                .collect()
        })
        .collect()
}

pub fn cwvs(p: &OProg) -> Vec<View> {
    guesses(&p.elits)
        .into_iter()
        .filter_map(|phi| {
            let m = answer_sets(&epistemic_reduct(p, &phi));
            compatible(&m, &phi, &p.elits).then_some((phi, m))
        })
        .collect()
}

pub fn wvs(p: &OProg) -> Vec<View> {
    let c = cwvs(p);
    c.iter()
        .filter(|(g, _)| {
            !c.iter()
                .any(|(g2, _)| g.is_subset(g2) && g2.len() > g.len())
        })
        .cloned()
        .collect()
}

pub fn views(p: &OProg, wv: bool) -> Vec<View> {
    if wv {
        wvs(p)
    } else {
        cwvs(p)
    }
}

pub fn view_sets(p: &OProg, wv: bool) -> BTreeSet<BTreeSet<Set>> {
    views(p, wv).into_iter().map(|(_, m)| m).collect()
}

pub fn ordinary_equivalent(p1: &OProg, p2: &OProg, wv: bool) -> bool {
    view_sets(p1, wv) == view_sets(p2, wv)
}

pub fn uniformly_equivalent(p1: &OProg, p2: &OProg, wv: bool) -> bool {
    subsets(p1.n)
        .iter()
        .all(|d| ordinary_equivalent(&p1.with_facts(d), &p2.with_facts(d), wv))
}

// ---- generators ----

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pick(rng: &mut ChaCha8Rng, n: usize, max: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    let k = rng.gen_range(0..=max.min(n));
    v.truncate(k);
    v.sort();
    v
}

pub struct GenConfig {
    pub max_atoms: usize,
    pub max_rules: usize,
    pub max_elits: usize,
    pub negneg: bool,
}

pub fn gen_rule(rng: &mut ChaCha8Rng, n: usize, elits: &[ELit], negneg: bool) -> ORule {
    let mut r = ORule {
        head: pick(rng, n, 2),
        pos: pick(rng, n, 2),
        neg: pick(rng, n, 2),
        ..Default::default()
    };
    if negneg && rng.gen_bool(0.2) {
        r.negneg = pick(rng, n, 1);
    }
    if !elits.is_empty() {
        for e in elits {
            match rng.gen_range(0..6) {
                0 => r.epos.push(*e),
                1 => r.eneg.push(*e),
                _ => {}
            }
        }
    }
    r
}

pub fn gen_domain(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<ELit> {
    let mut all: Vec<ELit> = (0..n).flat_map(|a| [(a, false), (a, true)]).collect();
    all.shuffle(rng);
    all.truncate(k);
    all
}

pub fn gen_prog(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> OProg {
    let n = rng.gen_range(1..=cfg.max_atoms);
    let k = rng.gen_range(0..=cfg.max_elits.min(2 * n));
    let elits = gen_domain(rng, n, k);
    let m = rng.gen_range(0..=cfg.max_rules);
    let rules = (0..m)
        .map(|_| gen_rule(rng, n, &elits, cfg.negneg))
        .collect();
    OProg { n, elits, rules }
}

/// Pairs over one vocabulary, biased towards near-equivalent programs so
/// that both verdicts occur often.
pub fn gen_pair(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> (OProg, OProg) {
    let p1 = gen_prog(rng, cfg);
    let mut p2 = p1.clone();
    match rng.gen_range(0..4) {
        0 => {
            p2.rules = (0..rng.gen_range(0..=cfg.max_rules))
                .map(|_| gen_rule(rng, p1.n, &p1.elits, cfg.negneg))
                .collect()
        }
        1 => {
            if p2.rules.len() < cfg.max_rules {
                p2.rules.push(gen_rule(rng, p1.n, &p1.elits, cfg.negneg));
            }
        }
        2 => {
            if !p2.rules.is_empty() {
                let i = rng.gen_range(0..p2.rules.len());
                p2.rules.remove(i);
            }
        }
        _ => {
            // a rule with a tautological body part never fires
            if !p2.rules.is_empty() {
                let i = rng.gen_range(0..p2.rules.len());
                let a = rng.gen_range(0..p1.n);
                let r = &mut p2.rules[i];
                if !r.pos.contains(&a) {
                    r.pos.push(a);
                    r.pos.sort();
                }
                if !r.neg.contains(&a) {
                    r.neg.push(a);
                    r.neg.sort();
                }
            }
        }
    }
    (p1, p2)
}

// ---- crate results in oracle form ----

use elp_core::asp::Interpretation;
use elp_core::epistemic::{Guess, WorldView};
use elp_core::syntax::{parse_asp, parse_elp, AspProgram, Elp};

pub fn set_of(i: Interpretation) -> Set {
    (0..64).filter(|b| i.bits() >> b & 1 == 1).collect()
}

pub fn sets_of(v: &[Interpretation]) -> BTreeSet<Set> {
    v.iter().map(|&i| set_of(i)).collect()
}

pub fn interp(s: &Set) -> Interpretation {
    Interpretation::from_bits(s.iter().fold(0, |acc, &a| acc | 1 << a))
}

pub fn guess_of(g: Guess, p: &Elp) -> BTreeSet<ELit> {
    g.indices()
        .map(|i| {
            let e = p.eliterals[i];
            (e.inner.atom.index(), e.inner.negated)
        })
        .collect()
}

pub fn crate_views(v: &[WorldView], p: &Elp) -> Vec<View> {
    v.iter()
        .map(|w| (guess_of(w.guess, p), sets_of(&w.interpretations)))
        .collect()
}

pub fn to_elp(p: &OProg) -> Elp {
    parse_elp(&p.text()).unwrap_or_else(|e| panic!("{e}\n{}", p.text()))
}

pub fn to_asp(p: &OProg) -> AspProgram {
    parse_asp(&p.text()).unwrap_or_else(|e| panic!("{e}\n{}", p.text()))
}
