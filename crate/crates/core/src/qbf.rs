//! Restricted `∃X ∀Y ∃Z` 3-CNF formulas, a brute-force evaluator, and the
//! reduction to a pair of ELPs that are uniformly equivalent exactly when
//! the formula is false.

use std::collections::BTreeSet;

use crate::syntax::{Atom, Elp, ElpRule, EpistemicLiteral, Literal};
use crate::{Error, Limits, Result};

/// DIMACS-style literal: variable index (1-based) with a sign.
pub type QLit = i32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qbf3 {
    pub num_vars: u32,
    pub x_vars: Vec<u32>,
    pub y_vars: Vec<u32>,
    pub z_vars: Vec<u32>,
    pub clauses: Vec<[QLit; 3]>,
}

fn qerr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Qbf(format!("line {line}: {}", msg.into())))
}

impl Qbf3 {
    /// Validates the shape: disjoint blocks, every clause variable quantified.
    pub fn new(
        x_vars: Vec<u32>,
        y_vars: Vec<u32>,
        z_vars: Vec<u32>,
        clauses: Vec<[QLit; 3]>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &v in x_vars.iter().chain(&y_vars).chain(&z_vars) {
            if v == 0 {
                return Err(Error::Qbf("variable 0 is not allowed".into()));
            }
            if !seen.insert(v) {
                return Err(Error::Qbf(format!("variable {v} is quantified twice")));
            }
        }
        for c in &clauses {
            for &l in c {
                if l == 0 || !seen.contains(&l.unsigned_abs()) {
                    return Err(Error::Qbf(format!(
                        "variable {} occurs in a clause but is not quantified",
                        l.unsigned_abs()
                    )));
                }
            }
        }
        Ok(Qbf3 {
            num_vars: seen.last().copied().unwrap_or(0),
            x_vars,
            y_vars,
            z_vars,
            clauses,
        })
    }

    fn var_count(&self) -> usize {
        self.x_vars.len() + self.y_vars.len() + self.z_vars.len()
    }

    fn check_guard(&self, limits: &Limits) -> Result<()> {
        let n = self.var_count();
        if n > 12 && !limits.force || n > 62 {
            return Err(Error::GuardExceeded {
                what: "qbf variable set",
                size: n,
                limit: 12,
                estimate: format!("2^{n}"),
            });
        }
        Ok(())
    }

    /// Ψ under a full assignment (`true_vars` contains exactly the true variables).
    fn satisfied(&self, value: &dyn Fn(u32) -> bool) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&l| value(l.unsigned_abs()) == (l > 0))
        })
    }
}

/// Parses the QDIMACS-like text form: `p cnf <vars> <clauses>`, then exactly
/// the prefix lines `e … 0`, `a … 0`, `e … 0`, then 3-literal clauses ending
/// in `0`. Lines starting with `c` are comments.
pub fn parse_qbf3(text: &str) -> Result<Qbf3> {
    let mut header: Option<(u32, usize)> = None;
    let mut blocks: Vec<(char, Vec<u32>)> = Vec::new();
    let mut clauses = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        let words: Vec<&str> = t.split_whitespace().collect();
        if words[0] == "p" {
            if header.is_some() {
                return qerr(line, "duplicate header");
            }
            if words.len() != 4 || words[1] != "cnf" {
                return qerr(line, "header must be `p cnf <vars> <clauses>`");
            }
            let nv = words[2].parse().map_err(|_| Error::Qbf(format!("line {line}: bad variable count")))?;
            let nc = words[3].parse().map_err(|_| Error::Qbf(format!("line {line}: bad clause count")))?;
            header = Some((nv, nc));
            continue;
        }
        let Some((num_vars, _)) = header else {
            return qerr(line, "missing `p cnf` header");
        };
        let ints = |ws: &[&str]| -> Result<Vec<i64>> {
            ws.iter()
                .map(|w| {
                    w.parse::<i64>()
                        .map_err(|_| Error::Qbf(format!("line {line}: `{w}` is not an integer")))
                })
                .collect()
        };
        let check_var = |v: i64| -> Result<u32> {
            let a = v.unsigned_abs();
            if a == 0 || a > num_vars as u64 {
                return qerr(line, format!("variable {a} is outside 1..={num_vars}"));
            }
            Ok(a as u32)
        };
        if words[0] == "e" || words[0] == "a" {
            if !clauses.is_empty() {
                return qerr(line, "quantifier line after the first clause");
            }
            let q = if words[0] == "e" { 'e' } else { 'a' };
            let expected = ['e', 'a', 'e'];
            if blocks.len() >= 3 || expected[blocks.len()] != q {
                return qerr(
                    line,
                    "prefix must be exactly one existential, one universal and one existential block (`e`, `a`, `e`)",
                );
            }
            let nums = ints(&words[1..])?;
            if nums.last() != Some(&0) {
                return qerr(line, "quantifier line must end with 0");
            }
            let mut vars = Vec::new();
            for &v in &nums[..nums.len() - 1] {
                if v < 0 {
                    return qerr(line, "negative variable in the prefix");
                }
                vars.push(check_var(v)?);
            }
            blocks.push((q, vars));
            continue;
        }
        if blocks.len() != 3 {
            return qerr(
                line,
                "prefix must be exactly one existential, one universal and one existential block (`e`, `a`, `e`)",
            );
        }
        let nums = ints(&words)?;
        if nums.last() != Some(&0) || nums[..nums.len() - 1].contains(&0) {
            return qerr(line, "clause must end with a single 0");
        }
        let lits = &nums[..nums.len() - 1];
        if lits.len() != 3 {
            return qerr(
                line,
                format!("clause has {} literals; exactly 3 are required (repeat a literal to pad)", lits.len()),
            );
        }
        let mut clause = [0; 3];
        for (slot, &l) in clause.iter_mut().zip(lits) {
            check_var(l)?;
            *slot = l as i32;
        }
        clauses.push(clause);
    }
    let Some((_, nc)) = header else {
        return Err(Error::Qbf("missing `p cnf` header".into()));
    };
    if blocks.len() != 3 {
        return Err(Error::Qbf(
            "prefix must be exactly one existential, one universal and one existential block (`e`, `a`, `e`)".into(),
        ));
    }
    if clauses.len() != nc {
        return Err(Error::Qbf(format!(
            "header announces {nc} clauses but {} were given",
            clauses.len()
        )));
    }
    let mut blocks = blocks.into_iter().map(|(_, v)| v);
    let (x, y, z) = (
        blocks.next().unwrap(),
        blocks.next().unwrap(),
        blocks.next().unwrap(),
    );
    let mut q = Qbf3::new(x, y, z, clauses)?;
    q.num_vars = header.map(|h| h.0).unwrap_or(q.num_vars);
    Ok(q)
}

/// Assignment as a bitset over the positions of `vars`.
fn value_of(vars: &[u32], bits: u64) -> impl Fn(u32) -> Option<bool> + '_ {
    move |v| {
        vars.iter()
            .position(|&w| w == v)
            .map(|i| bits >> i & 1 == 1)
    }
}

/// Truth value of `∃X ∀Y ∃Z Ψ` by exhaustive search.
pub fn eval_qbf3(q: &Qbf3, limits: &Limits) -> Result<bool> {
    q.check_guard(limits)?;
    let (nx, ny, nz) = (q.x_vars.len(), q.y_vars.len(), q.z_vars.len());
    Ok((0..1u64 << nx).any(|xb| {
        (0..1u64 << ny).all(|yb| {
            (0..1u64 << nz).any(|zb| {
                let (fx, fy, fz) = (
                    value_of(&q.x_vars, xb),
                    value_of(&q.y_vars, yb),
                    value_of(&q.z_vars, zb),
                );
                q.satisfied(&|v| fx(v).or_else(|| fy(v)).or_else(|| fz(v)).unwrap())
            })
        })
    }))
}

/// Whether `∃X ∃Z Ψ` holds with every `Y` variable set to true.
pub fn check_y_top_assumption(q: &Qbf3, limits: &Limits) -> Result<bool> {
    q.check_guard(limits)?;
    let (nx, nz) = (q.x_vars.len(), q.z_vars.len());
    Ok((0..1u64 << nx).any(|xb| {
        (0..1u64 << nz).any(|zb| {
            let (fx, fz) = (value_of(&q.x_vars, xb), value_of(&q.z_vars, zb));
            q.satisfied(&|v| fx(v).or_else(|| fz(v)).unwrap_or(true))
        })
    }))
}

pub fn var_atom(v: u32) -> String {
    format!("v{v}")
}

pub fn complement_atom(v: u32) -> String {
    format!("nv{v}")
}

struct Builder {
    p: Elp,
}

impl Builder {
    fn atom(&mut self, name: &str) -> Atom {
        self.p.atom(name)
    }

    fn rule(&mut self, head: &[Atom], body: Body) {
        self.p.push_rule(ElpRule {
            head: head.iter().copied().collect(),
            body_lits: body.lits.into_iter().collect(),
            body_epi_pos: body.epos.into_iter().collect(),
            body_epi_neg: body.eneg.into_iter().collect(),
            body_top: body.top,
        });
    }
}

#[derive(Default)]
struct Body {
    lits: Vec<Literal>,
    epos: Vec<EpistemicLiteral>,
    eneg: Vec<EpistemicLiteral>,
    top: u32,
}

fn enot(l: Literal) -> EpistemicLiteral {
    EpistemicLiteral::new(l)
}

/// Builds `(Π1, Π2)`. Refuses formulas that fail [`check_y_top_assumption`]
/// unless `allow_unchecked` is set.
///
/// Variable `i` becomes atoms `v{i}` / `nv{i}`; the saturation atoms are
/// `sat` and `fls`. `Π2` differs only in the clause rules, whose bodies
/// are all `⊤`.
pub fn reduce_qbf(q: &Qbf3, allow_unchecked: bool, limits: &Limits) -> Result<(Elp, Elp)> {
    if !allow_unchecked && !check_y_top_assumption(q, limits)? {
        return Err(Error::AssumptionViolated);
    }
    let build = |clauses_to_top: bool| {
        let mut b = Builder { p: Elp::new() };
        for &v in q.x_vars.iter().chain(&q.y_vars).chain(&q.z_vars) {
            b.atom(&var_atom(v));
            b.atom(&complement_atom(v));
        }
        let sat = b.atom("sat");
        let fls = b.atom("fls");
        let pair = |b: &mut Builder, v: u32| (b.atom(&var_atom(v)), b.atom(&complement_atom(v)));

        for &x in &q.x_vars {
            let (v, nv) = pair(&mut b, x);
            b.rule(&[v], Body { epos: vec![enot(Literal::pos(nv))], ..Default::default() });
            b.rule(&[nv], Body { epos: vec![enot(Literal::pos(v))], ..Default::default() });
        }
        for &y in &q.y_vars {
            let (v, nv) = pair(&mut b, y);
            b.rule(&[v], Body { lits: vec![Literal::neg(nv)], ..Default::default() });
            b.rule(&[nv], Body { lits: vec![Literal::neg(v)], ..Default::default() });
            b.rule(&[], Body { eneg: vec![enot(Literal::pos(v))], ..Default::default() });
            b.rule(&[], Body { eneg: vec![enot(Literal::pos(nv))], ..Default::default() });
        }
        for &z in &q.z_vars {
            let (v, nv) = pair(&mut b, z);
            b.rule(&[v, nv], Body::default());
            b.rule(&[v], Body { lits: vec![Literal::pos(sat)], ..Default::default() });
            b.rule(&[nv], Body { lits: vec![Literal::pos(sat)], ..Default::default() });
        }
        for c in &q.clauses {
            let body = if clauses_to_top {
                Body { top: 3, ..Default::default() }
            } else {
                // a clause literal v maps to nv, ¬v maps to v: the rule fires
                // when the clause is falsified
                let lits = c
                    .iter()
                    .map(|&l| {
                        let v = l.unsigned_abs();
                        let name = if l > 0 { complement_atom(v) } else { var_atom(v) };
                        Literal::pos(b.atom(&name))
                    })
                    .collect();
                Body { lits, ..Default::default() }
            };
            b.rule(&[sat], body);
        }
        b.rule(
            &[fls],
            Body {
                epos: vec![enot(Literal::pos(fls)), enot(Literal::neg(sat))],
                ..Default::default()
            },
        );
        b.rule(&[], Body { eneg: vec![enot(Literal::pos(fls))], ..Default::default() });
        b.p
    };
    let (pi1, pi2) = (build(false), build(true));
    // `Π1` and `Π2` share atoms but `Π2` may not mention every one in a rule
    debug_assert_eq!(pi1.atoms, pi2.atoms);
    Ok((pi1, pi2))
}
