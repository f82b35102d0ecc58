//! Command dispatch for `iwalab`. `run` returns the canonical report and the
//! exit code (0 pass, 1 a check failed or could not be decided, 2 input error).

use clap::{Parser, Subcommand, ValueEnum};
use iwalab::algebra::{AlgebraElement, Character};
use iwalab::flats::{detect_flats, ns_hypothesis_level, zero_set_level, NsVerdict, DEFAULT_BUDGET};
use iwalab::ideals::{chi, classify_factor, finite_level_size, growth_profile, ideals_equal, sharp_ideal, split_p, split_simple, twist_ideal, ElementaryModule};
use iwalab::io::{self, Document, Header};
use iwalab::systems::{self, check1, fourier_hat, funeq_check, twist_system, CharacterHom, GammaSystem, IsoVerdict, Mode, SearchBudget};
use iwalab::Error;
use num_rational::Ratio;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "iwalab", version, about = "Exact computations with truncated Iwasawa algebras and Γ-systems")]
pub struct Cli {
    /// Cap on characters (and on |Γ_N| for synthesis) enumerated at one level.
    #[arg(long, global = true, env = "IWALAB_BUDGET")]
    pub budget: Option<u128>,
    /// Overrides the header precision M.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Full quotient, falling back to the torsion part when a character kills a factor.
    Auto,
    Full,
    Torsion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SplitBy {
    Simple,
    P,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms on a system (given, or synthesized from the module).
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
    },
    /// Build the standard system of the module and write it as a document.
    Synthesize {
        file: PathBuf,
        #[arg(long)]
        levels: Option<u32>,
        #[arg(long, value_enum, default_value = "full")]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Characteristic ideal, its ♯-image, factor classification and level sizes.
    CharIdeal { file: PathBuf },
    /// Characters of Γ_n killing the element.
    ZeroSet {
        file: PathBuf,
        #[arg(long)]
        level: u32,
        /// Decompose the zero set into flats.
        #[arg(long)]
        flats: bool,
    },
    /// No flat of codimension ≤ 1 in the zero set at level n.
    NsCheck {
        file: PathBuf,
        #[arg(long)]
        level: u32,
    },
    /// Level-wise Γ-isomorphism between image(k|a) and image(k|b)^♯.
    Funeq {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
    },
    /// Fourier round trip and level compatibility on the dual basis of every b_n.
    FourierCheck {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
    },
    /// Twist by the unit character γ_i ↦ u_i and revalidate.
    Twist {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        phi: Option<Vec<i128>>,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split the module into (simple, rest) or (p-part, rest).
    Split {
        file: PathBuf,
        #[arg(long, value_enum)]
        by: SplitBy,
    },
    /// Z_p-ranks of Λ/(I_n + (ξ)) for n ≤ N.
    Growth {
        file: PathBuf,
        #[arg(long)]
        levels: Option<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Pass,
    Fail,
    Undetermined,
}

impl Verdict {
    fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Undetermined => "undetermined",
        }
    }
    fn code(self) -> i32 {
        if self == Verdict::Pass {
            0
        } else {
            1
        }
    }
}

struct Report {
    verdict: Verdict,
    lines: Vec<String>,
    result: Value,
}

struct Job {
    command: &'static str,
    header: Header,
    budget: u128,
    doc: Document,
}

type Outcome = std::result::Result<Report, String>;

fn lib(e: Error) -> String {
    e.to_string()
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => (format!("error: {e}\n"), 2),
        },
        None => execute(&cli),
    }
}

fn file_of(c: &Command) -> &PathBuf {
    match c {
        Command::Validate { file, .. }
        | Command::Synthesize { file, .. }
        | Command::CharIdeal { file }
        | Command::ZeroSet { file, .. }
        | Command::NsCheck { file, .. }
        | Command::Funeq { file, .. }
        | Command::FourierCheck { file, .. }
        | Command::Twist { file, .. }
        | Command::Split { file, .. }
        | Command::Growth { file, .. } => file,
    }
}

fn name_of(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Synthesize { .. } => "synthesize",
        Command::CharIdeal { .. } => "char-ideal",
        Command::ZeroSet { .. } => "zero-set",
        Command::NsCheck { .. } => "ns-check",
        Command::Funeq { .. } => "funeq",
        Command::FourierCheck { .. } => "fourier-check",
        Command::Twist { .. } => "twist",
        Command::Split { .. } => "split",
        Command::Growth { .. } => "growth",
    }
}

fn execute(cli: &Cli) -> (String, i32) {
    let path = file_of(&cli.command);
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return (format!("error: {}: {e}\n", path.display()), 2),
    };
    let doc = match io::parse_document(&text) {
        Ok(d) => d,
        Err(e) => return (format!("error: {}: {e}\n", path.display()), 2),
    };
    let mut header = doc.header.clone();
    if let Some(m) = cli.precision {
        header.precision = m;
    }
    let mut job = Job { command: name_of(&cli.command), header, budget: cli.budget.unwrap_or(DEFAULT_BUDGET), doc };
    let outcome = dispatch(&cli.command, &mut job);
    match outcome {
        Err(msg) => (format!("error: {msg}\n"), 2),
        Ok(r) => (render(&job, &r, cli.json), r.verdict.code()),
    }
}

fn render(job: &Job, r: &Report, as_json: bool) -> String {
    let h = &job.header;
    if as_json {
        let v = json!({
            "command": job.command,
            "config": {"p": h.p, "d": h.d, "precision": h.precision, "levels": h.levels, "budget": job.budget.to_string()},
            "verdict": r.verdict.name(),
            "result": r.result,
        });
        return serde_json::to_string_pretty(&v).expect("reports serialize") + "\n";
    }
    let mut out = format!("iwalab {}\np = {}, d = {}, precision = {}, levels = {}, budget = {}\n", job.command, h.p, h.d, h.precision, h.levels, job.budget);
    for l in &r.lines {
        out.push_str(l);
        out.push('\n');
    }
    out.push_str(&format!("verdict: {}\n", r.verdict.name()));
    out
}

fn dispatch(c: &Command, job: &mut Job) -> Outcome {
    match c {
        Command::Validate { mode, .. } => cmd_validate(job, *mode),
        Command::Synthesize { levels, mode, out, .. } => {
            if let Some(n) = levels {
                job.header.levels = *n;
            }
            cmd_synthesize(job, *mode, out.as_ref())
        }
        Command::CharIdeal { .. } => cmd_char_ideal(job),
        Command::ZeroSet { level, flats, .. } => cmd_zero_set(job, *level, *flats),
        Command::NsCheck { level, .. } => cmd_ns_check(job, *level),
        Command::Funeq { mode, .. } => cmd_funeq(job, *mode),
        Command::FourierCheck { mode, .. } => cmd_fourier(job, *mode),
        Command::Twist { phi, mode, out, .. } => cmd_twist(job, phi.as_deref(), *mode, out.as_ref()),
        Command::Split { by, .. } => cmd_split(job, *by),
        Command::Growth { levels, .. } => {
            if let Some(n) = levels {
                job.header.levels = *n;
            }
            cmd_growth(job)
        }
    }
}

fn module(job: &Job) -> std::result::Result<ElementaryModule, String> {
    let m = job.doc.module.as_ref().ok_or("the document has no module block")?;
    io::module_from_doc(&job.header, m).map_err(lib)
}

/// The element block, or else the generator of the characteristic ideal.
fn element(job: &Job) -> std::result::Result<AlgebraElement, String> {
    if let Some(e) = &job.doc.element {
        return io::element_from_doc(job.header.d, e, "element").map_err(lib);
    }
    if job.doc.module.is_some() {
        return chi(&module(job)?).generator().map_err(lib);
    }
    Err("the document has neither an element nor a module block".into())
}

fn synthesize(job: &Job, m: &ElementaryModule, mode: ModeArg) -> std::result::Result<(GammaSystem, Mode), String> {
    let top = job.header.levels;
    let go = |md| systems::from_torsion_module(m, top, md, job.budget);
    match mode {
        ModeArg::Full => go(Mode::Full).map(|s| (s, Mode::Full)).map_err(lib),
        ModeArg::Torsion => go(Mode::Torsion).map(|s| (s, Mode::Torsion)).map_err(lib),
        ModeArg::Auto => match go(Mode::Full) {
            Ok(s) => Ok((s, Mode::Full)),
            Err(Error::Precondition(_)) => go(Mode::Torsion).map(|s| (s, Mode::Torsion)).map_err(lib),
            Err(e) => Err(lib(e)),
        },
    }
}

/// The system block if present, else the synthesized system; the second
/// component names its origin.
fn system(job: &Job, mode: ModeArg) -> std::result::Result<(GammaSystem, String), String> {
    if let Some(s) = &job.doc.system {
        let mut h = job.doc.header.clone();
        h.levels = job.header.levels;
        return io::system_from_doc(&h, s).map(|s| (s, "document".to_string())).map_err(lib);
    }
    let m = module(job).map_err(|_| "the document has neither a system nor a module block".to_string())?;
    let (s, md) = synthesize(job, &m, mode)?;
    let name = if md == Mode::Full { "synthesized (full)" } else { "synthesized (torsion)" };
    Ok((s, name.into()))
}

fn exps(v: &[u32], p: u64) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter().map(|e| format!("Z/{p}^{e}")).collect::<Vec<_>>().join(" + ")
}

fn chars(v: &[Character]) -> Vec<Vec<u64>> {
    v.iter().map(|w| w.c.clone()).collect()
}

fn char_list(v: &[Character]) -> String {
    if v.is_empty() {
        return "none".into();
    }
    v.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")
}

fn elem_json(x: &AlgebraElement) -> std::result::Result<Value, String> {
    io::element_to_doc(x).map(|d| serde_json::to_value(d).expect("elements serialize")).map_err(lib)
}

fn cmd_validate(job: &Job, mode: ModeArg) -> Outcome {
    let (s, origin) = system(job, mode)?;
    let rep = systems::validate(&s);
    let mut lines = vec![format!("system: {origin}")];
    for l in &rep.summary {
        lines.push(format!("level {}: a = {}, b = {}", l.level, exps(&l.a_exps, s.p()), exps(&l.b_exps, s.p())));
    }
    for ax in [systems::Axiom::Gamma1, systems::Axiom::Gamma2, systems::Axiom::Gamma3, systems::Axiom::Gamma4] {
        lines.push(format!("{ax:?}: {}", if rep.axiom_passed(ax) { "ok" } else { "FAILED" }));
    }
    for f in rep.failures() {
        lines.push(format!("  {:?} at {:?}: {:?}", f.axiom, f.levels, f.witness));
    }
    let verdict = if rep.passed() { Verdict::Pass } else { Verdict::Fail };
    Ok(Report { verdict, lines, result: json!({"origin": origin, "report": rep}) })
}

fn write_doc(path: &PathBuf, doc: &Document) -> std::result::Result<(), String> {
    std::fs::write(path, io::to_json(doc) + "\n").map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_synthesize(job: &Job, mode: ModeArg, out: Option<&PathBuf>) -> Outcome {
    let m = module(job)?;
    let (s, md) = synthesize(job, &m, mode)?;
    let mut doc = io::system_document(&s);
    doc.module = job.doc.module.clone();
    let mut lines = vec![format!("mode: {}", if md == Mode::Full { "full" } else { "torsion" }), format!("system precision: {}", s.precision())];
    for n in 0..=s.top() {
        lines.push(format!("level {n}: b = {}", exps(s.level(n).b.exps(), s.p())));
    }
    match out {
        Some(p) => {
            write_doc(p, &doc)?;
            lines.push(format!("written: {}", p.display()));
        }
        None => lines.push(io::to_json(&doc)),
    }
    let result = json!({"mode": md, "b_orders": s.b_orders(), "document": serde_json::to_value(&doc).expect("documents serialize")});
    Ok(Report { verdict: Verdict::Pass, lines, result })
}

fn cmd_char_ideal(job: &Job) -> Outcome {
    let m = module(job)?;
    let c = chi(&m);
    let g = c.generator().map_err(lib)?;
    let sh = sharp_ideal(&c);
    let gs = sh.generator().map_err(lib)?;
    let eq = ideals_equal(&c, &sh, m.p, job.budget).map_err(lib)?;
    let mut lines = vec![format!("χ = ({g})"), format!("χ^♯ = ({gs})"), format!("χ = χ^♯: {eq:?}")];
    let mut factors = Vec::new();
    for (i, f) in m.factors.iter().enumerate() {
        let v = classify_factor(&f.xi, m.p);
        lines.push(format!("factors[{i}]: ({})^{}: {v:?}", f.xi, f.r));
        factors.push(json!({"xi": elem_json(&f.xi)?, "r": f.r, "class": v}));
    }
    let mut sizes = Vec::new();
    for n in 0..=job.header.levels {
        match finite_level_size(&m, n, job.budget) {
            Ok(r) => {
                lines.push(format!("|M/I_{n} M| = {}^{}", m.p, r.exponent));
                sizes.push(json!({"level": n, "exponent": r.exponent}));
            }
            Err(Error::Precondition(why)) => {
                lines.push(format!("|M/I_{n} M| infinite: {why}"));
                sizes.push(json!({"level": n, "infinite": why}));
            }
            Err(e) => return Err(lib(e)),
        }
    }
    let result = json!({"generator": elem_json(&g)?, "sharp": elem_json(&gs)?, "sharp_equal": eq, "factors": factors, "sizes": sizes});
    Ok(Report { verdict: Verdict::Pass, lines, result })
}

fn cmd_zero_set(job: &Job, level: u32, flats: bool) -> Outcome {
    let x = element(job)?;
    let zeros = zero_set_level(&x, job.header.p, level, job.budget).map_err(lib)?;
    let mut lines = vec![format!("ξ = {x}"), format!("level {level}: {} zeros", zeros.len()), format!("zeros: {}", char_list(&zeros))];
    let mut result = json!({"level": level, "zeros": chars(&zeros)});
    if flats {
        let rep = detect_flats(&zeros, job.header.p, level, job.header.d);
        for f in &rep.cover {
            lines.push(format!("flat codim {}: basis {:?}, target {:?}", f.codim(), f.basis, f.target));
        }
        lines.push(format!("residual: {}", char_list(&rep.residual)));
        result["flats"] = json!(rep.cover.iter().map(|f| json!({"codim": f.codim(), "basis": f.basis, "target": f.target})).collect::<Vec<_>>());
        result["residual"] = json!(chars(&rep.residual));
        result["exact"] = json!(rep.exact);
    }
    Ok(Report { verdict: Verdict::Pass, lines, result })
}

fn cmd_ns_check(job: &Job, level: u32) -> Outcome {
    let x = element(job)?;
    let (v, rep) = ns_hypothesis_level(&x, job.header.p, level, job.budget).map_err(lib)?;
    let (verdict, what) = match &v {
        NsVerdict::Holds => (Verdict::Pass, "holds".to_string()),
        NsVerdict::ViolatedAtLevel(f) => (Verdict::Fail, format!("violated at level {level}: flat basis {:?}, target {:?}", f.basis, f.target)),
        NsVerdict::Undetermined => (Verdict::Undetermined, format!("undetermined: {} zeros outside every flat", rep.residual.len())),
    };
    let lines = vec![format!("ξ = {x}"), format!("zeros at level {level}: {}", char_list(&rep.zeros)), format!("NS: {what}")];
    let result = json!({"level": level, "verdict": v, "zeros": chars(&rep.zeros), "residual": chars(&rep.residual)});
    Ok(Report { verdict, lines, result })
}

fn cmd_funeq(job: &Job, mode: ModeArg) -> Outcome {
    let (s, origin) = system(job, mode)?;
    let rep = funeq_check(&s, SearchBudget::default()).map_err(lib)?;
    let mut lines = vec![format!("system: {origin}"), format!("|a_n| = |b_n|: {}", rep.orders_equal)];
    let mut result = json!({"origin": origin, "report": rep});
    if !rep.valid {
        let v = systems::validate(&s);
        lines.push("system is not valid".into());
        let first = v.failures().first().map(|f| (*f).clone());
        if let Some(f) = &first {
            lines.push(format!("  {:?} at levels {:?}: {:?}", f.axiom, f.levels, f.witness));
        }
        result["witness"] = json!(first);
        return Ok(Report { verdict: Verdict::Fail, lines, result });
    }
    if let Some(p) = &rep.profile {
        lines.push(format!("image profile stabilized: {}", p.stabilized.map_or("n/a (N < 2)".into(), |b| b.to_string())));
    }
    for l in &rep.levels {
        let v = match &l.verdict {
            IsoVerdict::Isomorphic(m) => format!("isomorphic via {m:?}"),
            IsoVerdict::NotIsomorphic(why) => format!("not isomorphic: {why}"),
            IsoVerdict::Undetermined => "undetermined (sampling found no isomorphism)".into(),
        };
        lines.push(format!("level {}: a = {}, b^♯ = {}: {v}", l.level, exps(&l.a_exps, s.p()), exps(&l.b_exps, s.p())));
    }
    let verdict = if rep.all_isomorphic() {
        Verdict::Pass
    } else if rep.any_refuted() {
        Verdict::Fail
    } else {
        Verdict::Undetermined
    };
    Ok(Report { verdict, lines, result })
}

/// The functionals e_j^* with e_j ↦ 1/p^{b_j}; both checks are linear in f,
/// so passing on this basis covers every homomorphism.
fn dual_basis(b: &iwalab::modules::FiniteModule) -> std::result::Result<Vec<CharacterHom>, String> {
    (0..b.gens())
        .map(|j| {
            let vals = (0..b.gens()).map(|i| if i == j { Ratio::new(1, b.modulus(j)) } else { Ratio::from_integer(0) }).collect();
            CharacterHom::new(b, vals).map_err(lib)
        })
        .collect()
}

fn cmd_fourier(job: &Job, mode: ModeArg) -> Outcome {
    let (s, origin) = system(job, mode)?;
    let mut lines = vec![format!("system: {origin}")];
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for n in 0..=s.top() {
        let b = &s.level(n).b;
        for (j, f) in dual_basis(b)?.iter().enumerate() {
            let hat = fourier_hat(b, f).map_err(lib)?;
            checked += 1;
            if hat.delta_e() != *f {
                failures.push(json!({"check": "round_trip", "level": n, "generator": j}));
            }
            if !hat.is_linear(b, s.p()) {
                failures.push(json!({"check": "linear", "level": n, "generator": j}));
            }
            for m in 0..=n {
                checked += 1;
                if !check1(&s, m, n, f).map_err(lib)? {
                    failures.push(json!({"check": "compatibility", "m": m, "n": n, "generator": j}));
                }
            }
        }
    }
    lines.push(format!("checks: {checked}, failures: {}", failures.len()));
    for f in &failures {
        lines.push(format!("  {f}"));
    }
    let verdict = if failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
    Ok(Report { verdict, lines, result: json!({"origin": origin, "checks": checked, "failures": failures}) })
}

fn cmd_twist(job: &Job, phi: Option<&[i128]>, mode: ModeArg, out: Option<&PathBuf>) -> Outcome {
    let u = match phi {
        Some(u) => u.to_vec(),
        None => job.doc.phi.clone().ok_or("no --phi and no phi block")?,
    };
    let phi = io::unit_from_doc(&job.header, &u).map_err(lib)?;
    let (s, origin) = system(job, mode)?;
    let t = twist_system(&s, &phi).map_err(lib)?;
    let rep = systems::validate(&t);
    let mut lines = vec![format!("system: {origin}"), format!("φ = {:?} mod {}^{}", phi.u, phi.p, phi.m)];
    let mut result = json!({"origin": origin, "phi": phi, "report": rep});
    if job.doc.module.is_some() {
        let c = twist_ideal(&chi(&module(job)?), &phi).map_err(lib)?;
        let g = c.generator().map_err(lib)?;
        lines.push(format!("φ*χ = ({g})"));
        result["twisted_ideal"] = elem_json(&g)?;
    }
    lines.push(format!("twisted system valid: {}", rep.passed()));
    for f in rep.failures() {
        lines.push(format!("  {:?} at {:?}: {:?}", f.axiom, f.levels, f.witness));
    }
    if let Some(p) = out {
        write_doc(p, &io::system_document(&t))?;
        lines.push(format!("written: {}", p.display()));
    }
    let verdict = if rep.passed() { Verdict::Pass } else { Verdict::Fail };
    Ok(Report { verdict, lines, result })
}

fn cmd_split(job: &Job, by: SplitBy) -> Outcome {
    let m = module(job)?;
    let rep = match by {
        SplitBy::Simple => split_simple(&m),
        SplitBy::P => split_p(&m),
    };
    let names = match by {
        SplitBy::Simple => ("simple", "rest"),
        SplitBy::P => ("p-part", "rest"),
    };
    let show = |x: &ElementaryModule| {
        if x.factors.is_empty() {
            "0".to_string()
        } else {
            x.factors.iter().map(|f| format!("Λ/({})^{}", f.xi, f.r)).collect::<Vec<_>>().join(" + ")
        }
    };
    let mut lines = vec![format!("{}: {}", names.0, show(&rep.first)), format!("{}: {}", names.1, show(&rep.second))];
    lines.extend(rep.warnings.iter().map(|w| format!("warning: {w}")));
    let result = json!({
        "first": io::module_to_doc(&rep.first).map_err(lib)?,
        "second": io::module_to_doc(&rep.second).map_err(lib)?,
        "verdicts": rep.verdicts,
        "warnings": rep.warnings,
    });
    Ok(Report { verdict: Verdict::Pass, lines, result })
}

fn cmd_growth(job: &Job) -> Outcome {
    let x = element(job)?;
    let g = growth_profile(&x, job.header.p, job.header.levels, job.budget).map_err(lib)?;
    let lines = vec![
        format!("ξ = {x}"),
        format!("ranks: {:?}", g.ranks),
        format!("rank_N ≤ C·p^(N(d-1)) with C = {:.6}: {}", g.fitted_constant, g.within_bound),
    ];
    let verdict = if g.within_bound { Verdict::Pass } else { Verdict::Fail };
    Ok(Report { verdict, lines, result: serde_json::to_value(&g).expect("profiles serialize") })
}
