use super::{AspProgram, AspRule, Atom, Elp, ElpRule, EpistemicLiteral, Program, Universe};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Declarations {
    /// Emit `#atoms` / `#eliterals` only when parsing the rules alone would
    /// not reproduce the universe or domain (extra entries or different order).
    #[default]
    Auto,
    Always,
    Never,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RenderOptions {
    pub declarations: Declarations,
}

impl RenderOptions {
    pub fn always() -> Self {
        RenderOptions {
            declarations: Declarations::Always,
        }
    }

    pub fn bare() -> Self {
        RenderOptions {
            declarations: Declarations::Never,
        }
    }
}

pub fn render_program(p: &Program, opts: &RenderOptions) -> String {
    match p {
        Program::Elp(p) => render_elp(p, opts),
        Program::Asp(p) => render_asp(p, opts),
    }
}

/// Atoms in the order the parser will meet them.
#[derive(Default)]
struct Seen {
    atoms: Vec<Atom>,
}

impl Seen {
    fn see(&mut self, a: Atom) {
        if !self.atoms.contains(&a) {
            self.atoms.push(a);
        }
    }
}

fn elit(u: &Universe, e: EpistemicLiteral) -> String {
    e.display(u)
}

fn head_text(u: &Universe, head: impl Iterator<Item = Atom>, seen: &mut Seen) -> String {
    head.map(|a| {
        seen.see(a);
        u.name(a).to_owned()
    })
    .collect::<Vec<_>>()
    .join(" | ")
}

fn rule_text(head: String, body: Vec<String>) -> String {
    match (head.is_empty(), body.is_empty()) {
        (false, true) => format!("{head}."),
        (true, true) => ":- .".to_owned(),
        (true, false) => format!(":- {}.", body.join(", ")),
        (false, false) => format!("{head} :- {}.", body.join(", ")),
    }
}

fn elp_rule(u: &Universe, r: &ElpRule, seen: &mut Seen) -> String {
    let head = head_text(u, r.head.iter().copied(), seen);
    let mut body = Vec::new();
    for l in r.body_lits.iter().filter(|l| !l.negated) {
        seen.see(l.atom);
        body.push(u.name(l.atom).to_owned());
    }
    for l in r.body_lits.iter().filter(|l| l.negated) {
        seen.see(l.atom);
        body.push(format!("not {}", u.name(l.atom)));
    }
    for &e in &r.body_epi_pos {
        seen.see(e.inner.atom);
        body.push(elit(u, e));
    }
    for &e in &r.body_epi_neg {
        seen.see(e.inner.atom);
        body.push(format!("not {}", elit(u, e)));
    }
    body.extend((0..r.body_top).map(|_| "true".to_owned()));
    rule_text(head, body)
}

fn asp_rule(u: &Universe, r: &AspRule, seen: &mut Seen) -> String {
    let head = head_text(u, r.head.iter().copied(), seen);
    let mut body = Vec::new();
    for &a in &r.pos_body {
        seen.see(a);
        body.push(u.name(a).to_owned());
    }
    for n in r.neg_body.iter().filter(|n| !n.is_double()) {
        seen.see(n.atom());
        body.push(format!("not {}", u.name(n.atom())));
    }
    for n in r.neg_body.iter().filter(|n| n.is_double()) {
        seen.see(n.atom());
        body.push(format!("not not {}", u.name(n.atom())));
    }
    body.extend((0..r.body_top).map(|_| "true".to_owned()));
    rule_text(head, body)
}

fn atoms_directive(u: &Universe) -> String {
    format!("#atoms {{{}}}.\n", u.names().join(", "))
}

fn needs_atoms_directive(u: &Universe, seen: &Seen, opts: &RenderOptions) -> bool {
    match opts.declarations {
        Declarations::Always => true,
        Declarations::Never => false,
        Declarations::Auto => {
            seen.atoms.len() != u.len() || seen.atoms.iter().enumerate().any(|(i, a)| a.index() != i)
        }
    }
}

/// Canonical text of an ELP: directives (when needed), then one rule per line
/// in stored order.
pub fn render_elp(p: &Elp, opts: &RenderOptions) -> String {
    let u = &p.atoms;
    let mut occurring: Vec<EpistemicLiteral> = Vec::new();
    for r in &p.rules {
        for e in r.body_epi_pos.iter().chain(&r.body_epi_neg) {
            if !occurring.contains(e) {
                occurring.push(*e);
            }
        }
    }
    let emit_elits = match opts.declarations {
        Declarations::Always => true,
        Declarations::Never => false,
        Declarations::Auto => occurring != p.eliterals,
    };

    let mut seen = Seen::default();
    let mut out = String::new();
    if emit_elits {
        for e in &p.eliterals {
            seen.see(e.inner.atom);
        }
    }
    let rules: Vec<String> = p.rules.iter().map(|r| elp_rule(u, r, &mut seen)).collect();

    if needs_atoms_directive(u, &seen, opts) {
        out.push_str(&atoms_directive(u));
    }
    if emit_elits {
        let list: Vec<String> = p.eliterals.iter().map(|&e| elit(u, e)).collect();
        out.push_str(&format!("#eliterals {{{}}}.\n", list.join(", ")));
    }
    for r in rules {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

pub fn render_asp(p: &AspProgram, opts: &RenderOptions) -> String {
    let mut seen = Seen::default();
    let rules: Vec<String> = p
        .rules
        .iter()
        .map(|r| asp_rule(&p.atoms, r, &mut seen))
        .collect();
    let mut out = String::new();
    if needs_atoms_directive(&p.atoms, &seen, opts) {
        out.push_str(&atoms_directive(&p.atoms));
    }
    for r in rules {
        out.push_str(&r);
        out.push('\n');
    }
    out
}
