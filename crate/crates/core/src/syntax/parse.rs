use std::collections::HashSet;

use super::{
    AspProgram, AspRule, Atom, Elp, ElpRule, EpistemicLiteral, Literal, NegBodyEntry, Program,
    Universe,
};
use crate::{Error, Result};

/// Which language the text is parsed as.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Epistemic programs: `enot` allowed, `not not a` rejected.
    Elp,
    /// Plain programs: `not not a` allowed, `enot` rejected.
    Asp,
}

pub fn parse_program(text: &str, mode: Mode) -> Result<Program> {
    let statements = Parser::new(text, mode)?.statements()?;
    match mode {
        Mode::Elp => build_elp(statements).map(Program::Elp),
        Mode::Asp => build_asp(statements).map(Program::Asp),
    }
}

pub fn parse_elp(text: &str) -> Result<Elp> {
    match parse_program(text, Mode::Elp)? {
        Program::Elp(p) => Ok(p),
        Program::Asp(_) => unreachable!(),
    }
}

pub fn parse_asp(text: &str) -> Result<AspProgram> {
    match parse_program(text, Mode::Asp)? {
        Program::Asp(p) => Ok(p),
        Program::Elp(_) => unreachable!(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    Enot,
    True,
    Pipe,
    Arrow,
    Dot,
    Comma,
    LBrace,
    RBrace,
    AtomsDirective,
    EliteralsDirective,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Not => "`not`".into(),
            Tok::Enot => "`enot`".into(),
            Tok::True => "`true`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`:-`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::AtomsDirective => "`#atoms`".into(),
            Tok::EliteralsDirective => "`#eliterals`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let single = |tok| Spanned {
            tok,
            line: l0,
            column: c0,
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {}
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '|' => out.push(single(Tok::Pipe)),
            '.' => out.push(single(Tok::Dot)),
            ',' => out.push(single(Tok::Comma)),
            '{' => out.push(single(Tok::LBrace)),
            '}' => out.push(single(Tok::RBrace)),
            ':' => {
                if chars.get(i + 1) == Some(&'-') {
                    out.push(single(Tok::Arrow));
                    i += 2;
                    col += 2;
                    continue;
                }
                return Err(Error::parse(l0, c0, "expected `:-`"));
            }
            '-' | '~' => {
                return Err(Error::parse(
                    l0,
                    c0,
                    "strong negation is not supported; replace `-p` by a fresh atom `p1` and add the constraint `:- p, p1.`",
                ))
            }
            '#' | 'a'..='z' | 'A'..='Z' | '_' | '0'..='9' => {
                let start = i;
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                col += i - start;
                let tok = match word.as_str() {
                    "#atoms" => Tok::AtomsDirective,
                    "#eliterals" => Tok::EliteralsDirective,
                    "not" => Tok::Not,
                    "enot" => Tok::Enot,
                    "true" => Tok::True,
                    w if w.starts_with('#') => {
                        return Err(Error::parse(l0, c0, format!("unknown directive `{w}`")))
                    }
                    w if w.starts_with(|c: char| c.is_ascii_uppercase() || c == '_') => {
                        return Err(Error::parse(
                            l0,
                            c0,
                            format!("`{w}` looks like a variable; only ground programs are supported"),
                        ))
                    }
                    w if w.starts_with(|c: char| c.is_ascii_digit()) => {
                        return Err(Error::parse(
                            l0,
                            c0,
                            format!("`{w}`: atom names must start with a lowercase letter"),
                        ))
                    }
                    _ => Tok::Ident(word),
                };
                out.push(Spanned {
                    tok,
                    line: l0,
                    column: c0,
                });
                continue;
            }
            other => {
                return Err(Error::parse(
                    l0,
                    c0,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
        i += 1;
        col += 1;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Debug)]
struct Name {
    name: String,
    pos: Pos,
}

#[derive(Debug)]
struct RawElit {
    atom: Name,
    negated: bool,
}

#[derive(Debug)]
enum RawElem {
    Top,
    /// Atom under 0, 1 or 2 default negations.
    Lit { atom: Name, nots: u8 },
    Epi { elit: RawElit, negated: bool },
}

#[derive(Debug)]
enum Statement {
    Atoms(Vec<Name>),
    Eliterals(Vec<RawElit>),
    Rule { head: Vec<Name>, body: Vec<RawElem> },
}

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
    mode: Mode,
}

impl Parser {
    fn new(text: &str, mode: Mode) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
            mode,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        let t = &self.toks[self.at];
        Pos {
            line: t.line,
            column: t.column,
        }
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let p = self.pos();
        Err(Error::parse(p.line, p.column, message))
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            ))
        }
    }

    fn ident(&mut self) -> Result<Name> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Name { name, pos })
            }
            t @ (Tok::Not | Tok::Enot | Tok::True) => self.error(format!(
                "{} is a reserved word and cannot name an atom",
                t.describe()
            )),
            t => self.error(format!("expected an atom, found {}", t.describe())),
        }
    }

    fn statements(mut self) -> Result<Vec<Statement>> {
        let mut out = Vec::new();
        while *self.peek() != Tok::Eof {
            out.push(self.statement()?);
        }
        Ok(out)
    }

    fn statement(&mut self) -> Result<Statement> {
        match self.peek() {
            Tok::AtomsDirective => {
                self.bump();
                let names = self.braced(|p| p.ident())?;
                Ok(Statement::Atoms(names))
            }
            Tok::EliteralsDirective => {
                if self.mode == Mode::Asp {
                    return self.error("`#eliterals` is not allowed in asp mode");
                }
                self.bump();
                let elits = self.braced(|p| {
                    p.expect(Tok::Enot)?;
                    p.eliteral_tail()
                })?;
                Ok(Statement::Eliterals(elits))
            }
            _ => self.rule(),
        }
    }

    fn braced<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect(Tok::LBrace)?;
        let mut items = Vec::new();
        if *self.peek() != Tok::RBrace {
            items.push(item(self)?);
            while *self.peek() == Tok::Comma {
                self.bump();
                items.push(item(self)?);
            }
        }
        self.expect(Tok::RBrace)?;
        self.expect(Tok::Dot)?;
        Ok(items)
    }

    fn rule(&mut self) -> Result<Statement> {
        let mut head = Vec::new();
        if *self.peek() != Tok::Arrow {
            head.push(self.ident()?);
            while *self.peek() == Tok::Pipe {
                self.bump();
                head.push(self.ident()?);
            }
        }
        let mut body = Vec::new();
        match self.peek() {
            Tok::Dot => {}
            Tok::Arrow => {
                self.bump();
                if *self.peek() != Tok::Dot {
                    body.push(self.elem()?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        body.push(self.elem()?);
                    }
                }
            }
            t => {
                return self.error(format!(
                    "expected `|`, `:-` or `.`, found {}",
                    t.describe()
                ))
            }
        }
        self.expect(Tok::Dot)?;
        Ok(Statement::Rule { head, body })
    }

    /// After `enot`: `["not"] ident`.
    fn eliteral_tail(&mut self) -> Result<RawElit> {
        let negated = *self.peek() == Tok::Not;
        if negated {
            self.bump();
        }
        if *self.peek() == Tok::Not {
            return self.error("an epistemic literal takes a literal: at most one `not` after `enot`");
        }
        Ok(RawElit {
            atom: self.ident()?,
            negated,
        })
    }

    fn elem(&mut self) -> Result<RawElem> {
        let start = self.pos();
        let mut nots = 0u8;
        while *self.peek() == Tok::Not {
            self.bump();
            nots = nots.saturating_add(1);
        }
        match self.peek() {
            Tok::True => {
                if nots > 0 {
                    return self.error("`not true` is never satisfied; drop the rule instead");
                }
                self.bump();
                Ok(RawElem::Top)
            }
            Tok::Enot => {
                if self.mode == Mode::Asp {
                    return self.error("epistemic negation `enot` is not allowed in asp mode");
                }
                if nots > 1 {
                    return Err(Error::parse(
                        start.line,
                        start.column,
                        "at most one `not` may precede `enot`",
                    ));
                }
                self.bump();
                Ok(RawElem::Epi {
                    elit: self.eliteral_tail()?,
                    negated: nots == 1,
                })
            }
            _ => {
                if nots >= 3 {
                    return Err(Error::parse(
                        start.line,
                        start.column,
                        "triple `not` on a literal; write `not a` instead",
                    ));
                }
                if nots == 2 && self.mode == Mode::Elp {
                    return Err(Error::parse(
                        start.line,
                        start.column,
                        "`not not a` is only allowed in asp mode",
                    ));
                }
                Ok(RawElem::Lit {
                    atom: self.ident()?,
                    nots,
                })
            }
        }
    }
}

/// Declared atoms first, then atoms in order of first occurrence.
fn build_universe(statements: &[Statement]) -> Result<Universe> {
    let mut u = Universe::new();
    for s in statements {
        if let Statement::Atoms(names) = s {
            for n in names {
                if u.get(&n.name).is_some() {
                    return Err(Error::parse(
                        n.pos.line,
                        n.pos.column,
                        format!("atom `{}` declared twice", n.name),
                    ));
                }
                u.intern(&n.name);
            }
        }
    }
    for s in statements {
        match s {
            Statement::Atoms(_) => {}
            Statement::Eliterals(elits) => {
                for e in elits {
                    u.intern(&e.atom.name);
                }
            }
            Statement::Rule { head, body } => {
                for n in head {
                    u.intern(&n.name);
                }
                for e in body {
                    match e {
                        RawElem::Top => {}
                        RawElem::Lit { atom, .. } => {
                            u.intern(&atom.name);
                        }
                        RawElem::Epi { elit, .. } => {
                            u.intern(&elit.atom.name);
                        }
                    }
                }
            }
        }
    }
    Ok(u)
}

fn elit_of(u: &Universe, e: &RawElit) -> EpistemicLiteral {
    EpistemicLiteral::new(Literal {
        atom: atom_of(u, &e.atom),
        negated: e.negated,
    })
}

fn atom_of(u: &Universe, n: &Name) -> Atom {
    u.get(&n.name).expect("universe built from the same statements")
}

fn build_elp(statements: Vec<Statement>) -> Result<Elp> {
    let atoms = build_universe(&statements)?;
    let mut p = Elp {
        atoms,
        eliterals: Vec::new(),
        rules: Vec::new(),
    };
    let mut declared = HashSet::new();
    for s in &statements {
        if let Statement::Eliterals(elits) = s {
            for raw in elits {
                let e = elit_of(&p.atoms, raw);
                if !declared.insert(e) {
                    return Err(Error::parse(
                        raw.atom.pos.line,
                        raw.atom.pos.column,
                        format!(
                            "epistemic literal `{}` declared twice",
                            e.display(&p.atoms)
                        ),
                    ));
                }
                p.eliterals.push(e);
            }
        }
    }
    for s in statements {
        let Statement::Rule { head, body } = s else {
            continue;
        };
        let mut rule = ElpRule {
            head: head.iter().map(|n| atom_of(&p.atoms, n)).collect(),
            ..Default::default()
        };
        for e in &body {
            match e {
                RawElem::Top => rule.body_top += 1,
                RawElem::Lit { atom, nots } => {
                    let a = atom_of(&p.atoms, atom);
                    rule.body_lits.insert(Literal {
                        atom: a,
                        negated: *nots == 1,
                    });
                }
                RawElem::Epi { elit, negated } => {
                    let e = elit_of(&p.atoms, elit);
                    if *negated {
                        rule.body_epi_neg.insert(e);
                    } else {
                        rule.body_epi_pos.insert(e);
                    }
                }
            }
        }
        p.push_rule(rule);
    }
    Ok(p)
}

fn build_asp(statements: Vec<Statement>) -> Result<AspProgram> {
    let atoms = build_universe(&statements)?;
    let mut rules = Vec::new();
    for s in statements {
        let Statement::Rule { head, body } = s else {
            continue;
        };
        let mut rule = AspRule {
            head: head.iter().map(|n| atom_of(&atoms, n)).collect(),
            ..Default::default()
        };
        for e in &body {
            match e {
                RawElem::Top => rule.body_top += 1,
                RawElem::Lit { atom, nots } => {
                    let a = atom_of(&atoms, atom);
                    match nots {
                        0 => {
                            rule.pos_body.insert(a);
                        }
                        1 => {
                            rule.neg_body.insert(NegBodyEntry::not(a));
                        }
                        _ => {
                            rule.neg_body.insert(NegBodyEntry::not_not(a));
                        }
                    }
                }
                RawElem::Epi { .. } => unreachable!("rejected by the parser in asp mode"),
            }
        }
        rules.push(rule);
    }
    Ok(AspProgram { atoms, rules })
}
