//! The `elp` command line tool.
//!
//! Exit codes: 0 positive / equivalent, 1 not equivalent (or a failed
//! `qbf --verify`), 2 usage, parse or guard error, 3 no solution.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::asp::{self, AspVerdict, Side};
use crate::epistemic::{self, ViewKind};
use crate::equivalence::{self, Verdict};
use crate::qbf;
use crate::report::{self, *};
use crate::syntax::{self, render_elp, AspProgram, Elp, Mode, Program, RenderOptions};
use crate::{Error, Limits};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DIFFERENT: u8 = 1;
pub const EXIT_ERROR: u8 = 2;
pub const EXIT_NONE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "elp", version, about = "Exact solving and equivalence checking for ground epistemic logic programs")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Refuse inputs with more atoms than this
    #[arg(long, global = true, env = "ELP_MAX_ATOMS", default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_atoms: u32,
    /// Refuse inputs with more epistemic literals than this
    #[arg(long, global = true, env = "ELP_MAX_ELITERALS", default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_eliterals: u32,
    /// Ignore the size guards
    #[arg(long, global = true)]
    pub force: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for the D / guess scans (default: all cores)
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[value(alias = "json-like")]
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputMode {
    Elp,
    Asp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Cwv,
    Wv,
}

impl From<Kind> for ViewKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Cwv => ViewKind::Cwv,
            Kind::Wv => ViewKind::Wv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Notion {
    OrdinaryCwv,
    OrdinaryWv,
    UniformCwv,
    UniformWv,
    AspUniform,
}

impl Notion {
    fn name(self) -> &'static str {
        match self {
            Notion::OrdinaryCwv => "ordinary-cwv",
            Notion::OrdinaryWv => "ordinary-wv",
            Notion::UniformCwv => "uniform-cwv",
            Notion::UniformWv => "uniform-wv",
            Notion::AspUniform => "asp-uniform",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print answer sets (asp mode) or candidate world views and world views
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = InputMode::Elp)]
        mode: InputMode,
    },
    /// Check two programs for equivalence and print a minimal witness
    Equiv {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, value_enum)]
        notion: Notion,
        #[arg(long, value_enum, default_value_t = InputMode::Elp)]
        mode: InputMode,
    },
    /// Dump the UE-function table, or compare it with another program's
    Uef {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Wv)]
        kind: Kind,
        /// Print the first entry where FILE2's table differs
        #[arg(long, value_name = "FILE2")]
        diff: Option<PathBuf>,
    },
    /// Reduce a restricted 3-QBF to the program pair pi1.elp / pi2.elp
    Qbf {
        file: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Print the formula's truth value
        #[arg(long)]
        eval: bool,
        /// Check that pi1 has a candidate world view iff the formula is true
        #[arg(long)]
        verify: bool,
        /// Skip the all-universals-true check
        #[arg(long)]
        allow_unchecked: bool,
    },
}

/// Errors carry the file they came from so parse diagnostics read
/// `file:line:col: message`.
#[derive(Debug)]
pub struct CliError {
    pub path: Option<PathBuf>,
    pub message: String,
}

impl CliError {
    fn at(path: &Path, e: Error) -> Self {
        let message = match e {
            Error::Parse { .. } => e.to_string(),
            _ => format!(" {e}"),
        };
        CliError {
            path: Some(path.to_owned()),
            message,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            path: None,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError {
            path: None,
            message: e.to_string(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.path {
            Some(p) => write!(f, "{}:{}", p.display(), self.message),
            None => f.write_str(&self.message),
        }
    }
}

type CliResult = std::result::Result<u8, CliError>;

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    let stdout = io::stdout();
    let code = match run(&cli, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    };
    ExitCode::from(code)
}

/// Runs a parsed command line, writing the report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult {
    let c = &cli.common;
    let limits = Limits {
        max_atoms: c.max_atoms as usize,
        max_eliterals: c.max_eliterals as usize,
        force: c.force,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = c.jobs {
        builder = builder.num_threads(n as usize);
    }
    let pool = builder.build().map_err(|e| CliError {
        path: None,
        message: e.to_string(),
    })?;
    // reports are small; buffer them so the worker pool never touches `out`
    let mut buf = Vec::new();
    let code = pool.install(|| dispatch(&cli.command, c.format, &limits, &mut buf));
    out.write_all(&buf)?;
    code
}

fn dispatch(cmd: &Command, format: Format, limits: &Limits, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Solve { file, mode } => solve(file, *mode, format, limits, out),
        Command::Equiv {
            file1,
            file2,
            notion,
            mode,
        } => equiv(file1, file2, *notion, *mode, format, limits, out),
        Command::Uef { file, kind, diff } => {
            uef(file, (*kind).into(), diff.as_deref(), format, limits, out)
        }
        Command::Qbf {
            file,
            out_dir,
            eval,
            verify,
            allow_unchecked,
        } => qbf_cmd(file, out_dir, *eval, *verify, *allow_unchecked, format, limits, out),
    }
}

fn read(path: &Path) -> std::result::Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError {
        path: Some(path.to_owned()),
        message: format!(" {e}"),
    })
}

fn load(path: &Path, mode: InputMode) -> std::result::Result<Program, CliError> {
    let text = read(path)?;
    let mode = match mode {
        InputMode::Elp => Mode::Elp,
        InputMode::Asp => Mode::Asp,
    };
    syntax::parse_program(&text, mode).map_err(|e| CliError::at(path, e))
}

fn load_elp(path: &Path, mode: InputMode) -> std::result::Result<Elp, CliError> {
    match load(path, mode)? {
        Program::Elp(p) => Ok(p),
        Program::Asp(p) => p.to_elp().ok_or_else(|| {
            CliError::at(
                path,
                Error::Malformed("program cannot be read as an epistemic program".into()),
            )
        }),
    }
}

fn load_asp(path: &Path, mode: InputMode) -> std::result::Result<AspProgram, CliError> {
    match load(path, mode)? {
        Program::Asp(p) => Ok(p),
        Program::Elp(p) => p.to_asp().ok_or_else(|| {
            CliError::at(
                path,
                Error::Malformed("asp-uniform needs programs without epistemic negation".into()),
            )
        }),
    }
}

fn emit(out: &mut dyn Write, s: &str) -> std::result::Result<(), CliError> {
    out.write_all(s.as_bytes())?;
    Ok(())
}

fn kind_label(k: ViewKind) -> &'static str {
    match k {
        ViewKind::Cwv => "CWV",
        ViewKind::Wv => "WV",
    }
}

fn view_line(v: &ViewReport) -> String {
    format!(
        "{} {} with guess {}",
        kind_label(v.kind),
        sets_text(&v.interpretations),
        set_text(&v.guess)
    )
}

fn solve(path: &Path, mode: InputMode, format: Format, limits: &Limits, out: &mut dyn Write) -> CliResult {
    match load(path, mode)? {
        Program::Asp(p) => {
            let sets = asp::answer_sets(&p, limits)?;
            let sets = atom_sets(&sets, &p.atoms);
            let found = !sets.is_empty();
            match format {
                Format::Json => emit(
                    out,
                    &to_json(&AnswerSetsReport {
                        mode: "asp",
                        answer_sets: sets,
                    }),
                )?,
                Format::Text => {
                    let mut s = format!("answer sets: {}\n", sets.len());
                    for a in &sets {
                        s += &format!("  {}\n", set_text(a));
                    }
                    emit(out, &s)?;
                }
            }
            Ok(if found { EXIT_OK } else { EXIT_NONE })
        }
        Program::Elp(p) => {
            let cwvs = view_reports(&epistemic::candidate_world_views(&p, limits)?, &p);
            let wvs = view_reports(&epistemic::world_views(&p, limits)?, &p);
            let found = !cwvs.is_empty();
            match format {
                Format::Json => emit(
                    out,
                    &to_json(&WorldViewsReport {
                        mode: "elp",
                        candidate_world_views: cwvs,
                        world_views: wvs,
                    }),
                )?,
                Format::Text => {
                    let mut s = format!("candidate world views: {}\n", cwvs.len());
                    for v in &cwvs {
                        s += &format!("  {}\n", view_line(v));
                    }
                    s += &format!("world views: {}\n", wvs.len());
                    for v in &wvs {
                        s += &format!("  {}\n", view_line(v));
                    }
                    emit(out, &s)?;
                }
            }
            Ok(if found { EXIT_OK } else { EXIT_NONE })
        }
    }
}

fn equiv(
    path1: &Path,
    path2: &Path,
    notion: Notion,
    mode: InputMode,
    format: Format,
    limits: &Limits,
    out: &mut dyn Write,
) -> CliResult {
    if notion == Notion::AspUniform {
        let p1 = load_asp(path1, mode)?;
        let p2 = load_asp(path2, mode)?;
        let (p1, p2) = syntax::align_asp(&p1, &p2);
        let v = asp::asp_uniform_equivalent(&p1, &p2, limits)?;
        print_asp_verdict(&v, &p1, format, out)?;
        return Ok(if v.equivalent { EXIT_OK } else { EXIT_DIFFERENT });
    }
    let p1 = load_elp(path1, mode)?;
    let p2 = load_elp(path2, mode)?;
    let (p1, p2) = syntax::align(&p1, &p2);
    let v = match notion {
        Notion::OrdinaryCwv => equivalence::ordinary_equivalent(&p1, &p2, ViewKind::Cwv, limits)?,
        Notion::OrdinaryWv => equivalence::ordinary_equivalent(&p1, &p2, ViewKind::Wv, limits)?,
        Notion::UniformCwv => equivalence::uniformly_equivalent(&p1, &p2, ViewKind::Cwv, limits)?,
        Notion::UniformWv => equivalence::uniformly_equivalent(&p1, &p2, ViewKind::Wv, limits)?,
        Notion::AspUniform => unreachable!(),
    };
    print_verdict(notion.name(), &v, &p1, format, out)?;
    Ok(if v.equivalent { EXIT_OK } else { EXIT_DIFFERENT })
}

fn verdict_head(notion: &str, equivalent: bool) -> String {
    if equivalent {
        format!("equivalent ({notion})\n")
    } else {
        format!("not equivalent ({notion})\n")
    }
}

fn views_lines(v: &[ViewReport]) -> String {
    if v.is_empty() {
        "none".to_owned()
    } else {
        v.iter().map(view_line).collect::<Vec<_>>().join("; ")
    }
}

fn print_verdict(notion: &str, v: &Verdict, p: &Elp, format: Format, out: &mut dyn Write) -> std::result::Result<(), CliError> {
    let r = VerdictReport::new(notion, v, p);
    match format {
        Format::Json => emit(out, &to_json(&r)),
        Format::Text => {
            let mut s = verdict_head(notion, r.equivalent);
            if let Some(w) = &r.witness {
                s += &format!("  facts D = {}\n", set_text(&w.facts));
                if let Some(g) = &w.guess {
                    s += &format!("  guess: {}\n", set_text(g));
                }
                s += &format!("  left:  {}\n", views_lines(&w.left));
                s += &format!("  right: {}\n", views_lines(&w.right));
            }
            emit(out, &s)
        }
    }
}

fn print_asp_verdict(v: &AspVerdict, p: &AspProgram, format: Format, out: &mut dyn Write) -> std::result::Result<(), CliError> {
    let r = AspVerdictReport::new(v, &p.atoms);
    match format {
        Format::Json => emit(out, &to_json(&r)),
        Format::Text => {
            let mut s = verdict_head(&r.notion, r.equivalent);
            if let Some(w) = &r.witness {
                let side = match w.only_in {
                    Side::Left => "first",
                    Side::Right => "second",
                };
                s += &format!(
                    "  UE-model ({}, {}) only of the {side} program\n",
                    set_text(&w.ue_model.x),
                    set_text(&w.ue_model.y)
                );
                if let Some(d) = &w.facts {
                    s += &format!("  facts D = {}\n", set_text(d));
                    s += &format!("  left:  {}\n", sets_text(&w.left));
                    s += &format!("  right: {}\n", sets_text(&w.right));
                }
            }
            emit(out, &s)
        }
    }
}

fn uef(
    path: &Path,
    kind: ViewKind,
    diff: Option<&Path>,
    format: Format,
    limits: &Limits,
    out: &mut dyn Write,
) -> CliResult {
    let p = load_elp(path, InputMode::Elp)?;
    let Some(path2) = diff else {
        let t = equivalence::ue_function(&p, kind, limits)?;
        let entries = ue_table_report(&t, &p);
        match format {
            Format::Json => emit(out, &to_json(&entries))?,
            Format::Text => {
                let mut s = format!("{}-UE-function: {} entries\n", kind_label(kind), entries.len());
                for e in &entries {
                    s += &format!(
                        "  guess {} facts {} -> {}\n",
                        set_text(&e.guess),
                        set_text(&e.facts),
                        sets_text(&e.view)
                    );
                }
                emit(out, &s)?;
            }
        }
        return Ok(EXIT_OK);
    };
    let p2 = load_elp(path2, InputMode::Elp)?;
    let (p1, p2) = syntax::align(&p, &p2);
    let t1 = equivalence::ue_function(&p1, kind, limits)?;
    let t2 = equivalence::ue_function(&p2, kind, limits)?;
    let r = report::ue_diff_report(&t1, &t2, &p1);
    match format {
        Format::Json => emit(out, &to_json(&r))?,
        Format::Text => match &r.first_difference {
            None => emit(out, "coincide\n")?,
            Some(d) => emit(
                out,
                &format!(
                    "differ at guess {} facts {}\n  left:  {}\n  right: {}\n",
                    set_text(&d.guess),
                    set_text(&d.facts),
                    sets_text(&d.left),
                    sets_text(&d.right)
                ),
            )?,
        },
    }
    Ok(if r.coincide { EXIT_OK } else { EXIT_DIFFERENT })
}

#[derive(serde::Serialize)]
struct QbfReport {
    pi1: String,
    pi2: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cwv_exists: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

#[allow(clippy::too_many_arguments)]
fn qbf_cmd(
    path: &Path,
    out_dir: &Path,
    eval: bool,
    verify: bool,
    allow_unchecked: bool,
    format: Format,
    limits: &Limits,
    out: &mut dyn Write,
) -> CliResult {
    let text = read(path)?;
    let q = qbf::parse_qbf3(&text).map_err(|e| CliError::at(path, e))?;
    let (pi1, pi2) = qbf::reduce_qbf(&q, allow_unchecked, limits)?;

    fs::create_dir_all(out_dir)?;
    let f1 = out_dir.join("pi1.elp");
    let f2 = out_dir.join("pi2.elp");
    fs::write(&f1, render_elp(&pi1, &RenderOptions::always()))?;
    fs::write(&f2, render_elp(&pi2, &RenderOptions::always()))?;

    let value = if eval || verify {
        Some(qbf::eval_qbf3(&q, limits)?)
    } else {
        None
    };
    let cwv_exists = if verify {
        Some(!epistemic::candidate_world_views(&pi1, limits)?.is_empty())
    } else {
        None
    };
    let verified = cwv_exists.zip(value).map(|(c, v)| c == v);

    match format {
        Format::Json => emit(
            out,
            &to_json(&QbfReport {
                pi1: f1.display().to_string(),
                pi2: f2.display().to_string(),
                value: value.filter(|_| eval),
                cwv_exists,
                verified,
            }),
        )?,
        Format::Text => {
            let mut s = format!("wrote {} and {}\n", f1.display(), f2.display());
            if eval {
                s += &format!("{}\n", value.unwrap_or_default());
            }
            if let (Some(c), Some(ok)) = (cwv_exists, verified) {
                s += &format!(
                    "CWV exists for pi1: {}; matches oracle: {}\n",
                    if c { "yes" } else { "no" },
                    if ok { "pass" } else { "FAIL" }
                );
            }
            emit(out, &s)?;
        }
    }
    Ok(if verified == Some(false) { EXIT_DIFFERENT } else { EXIT_OK })
}
