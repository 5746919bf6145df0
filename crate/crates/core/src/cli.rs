//! The `nnfopt` command line.
//!
//! Exit codes: 0 success, 1 no solution or inconsistent, 2 usage error,
//! 3 format or I/O error, 4 refusal (no tractable algorithm applies).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::circuit::{parse_nnf, serialize_nnf, Literal, NnfCircuit, PartialInterpretation};
use crate::compile::{compile_cnf_to_dnnf, parse_dimacs, serialize_dimacs};
use crate::error::{Error, Result};
use crate::gen::{self, NameTable, PosNegFlavor};
use crate::obdd::{serialize_obdd, ObddId, ObddManager};
use crate::objective::{
    classify, load_objective, parse_weight, write_objective, Aggregator, Formula, Objective, Weight, WeightedBase,
};
use crate::optimize::{
    condition_and_fix, dispatch, opt_obdd_linearize, oracle_enumerate, Algorithm, DispatchOptions, FptOptions,
    OptResult, OptStatus, DEFAULT_N_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_SOLUTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FORMAT: i32 = 3;
pub const EXIT_INTRACTABLE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "nnfopt", version, about = "Optimization over compiled NNF circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Size and structural properties of a circuit
    Check(CircuitArg),
    /// Condition a circuit on a term
    Condition {
        #[command(flatten)]
        circuit: CircuitArg,
        /// Literals such as "A -B1" or "1 -5"
        #[arg(long, allow_hyphen_values = true)]
        term: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Consistency test (exit 1 when inconsistent)
    Consistent(CircuitArg),
    /// Compile DIMACS CNF to DNNF
    Compile {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Family of a weighted base
    Classify {
        #[arg(long)]
        base: PathBuf,
    },
    /// Optimal model of a circuit under a weighted base
    Optimize(OptimizeArgs),
    /// Optimal model by exhaustive enumeration
    Oracle {
        #[command(flatten)]
        circuit: CircuitArg,
        #[arg(long)]
        base: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        condition: Option<String>,
    },
    /// Write a generated instance
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct CircuitArg {
    #[arg(long)]
    circuit: PathBuf,
    /// Name table; defaults to the circuit path with extension `.names`
    #[arg(long)]
    names: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Auto,
    DnnfLinear,
    DnfMonotone,
    FptPoly,
    ObddLinearize,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AggArg {
    Sum,
    Leximax,
}

#[derive(Args, Debug)]
struct OptimizeArgs {
    #[arg(long, required_unless_present = "obdd")]
    circuit: Option<PathBuf>,
    #[arg(long)]
    names: Option<PathBuf>,
    #[arg(long)]
    base: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    algo: AlgoArg,
    #[arg(long, default_value_t = DEFAULT_N_CAP)]
    n_cap: usize,
    /// Worker threads for fpt-poly; the output does not depend on it
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, allow_hyphen_values = true)]
    condition: Option<String>,
    /// Constraint OBDD for obdd-linearize
    #[arg(long)]
    obdd: Option<PathBuf>,
    /// `<weight>:<file.obdd>` item for obdd-linearize
    #[arg(long, allow_hyphen_values = true)]
    item: Vec<String>,
    /// Aggregator for obdd-linearize when no base is given
    #[arg(long, value_enum, default_value = "sum")]
    agg: AggArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenKind {
    HittingSet,
    TermsatQ,
    HittingSetQplus,
    Owa,
    Posneg,
    PosnegWeights,
    NeglitElim,
    PkgDemo,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    /// Output directory
    #[arg(long)]
    out: PathBuf,
    /// Two element names per line (hitting-set, hitting-set-qplus)
    #[arg(long)]
    sets: Option<PathBuf>,
    /// Two DIMACS literals per line (termsat-q)
    #[arg(long)]
    terms: Option<PathBuf>,
    /// Number of variables for termsat-q; defaults to the largest used
    #[arg(long)]
    vars: Option<u32>,
    /// DIMACS file of positive and negative clauses (posneg, posneg-weights)
    #[arg(long)]
    cnf: Option<PathBuf>,
    /// Input weighted base (owa, neglit-elim)
    #[arg(long)]
    base: Option<PathBuf>,
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Format { .. } | Error::Io(_) => EXIT_FORMAT,
        Error::IntractableCombination(_) | Error::TooManyVars { .. } | Error::NExceedsCap { .. } => EXIT_INTRACTABLE,
        _ => EXIT_USAGE,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)?;
    Ok(())
}

fn load_circuit(path: &Path) -> Result<NnfCircuit> {
    parse_nnf(&read(path)?)
}

fn load_names(explicit: Option<&Path>, circuit: Option<&Path>) -> Result<Option<NameTable>> {
    if let Some(p) = explicit {
        return NameTable::parse(&read(p)?).map(Some);
    }
    match circuit.map(|c| c.with_extension("names")) {
        Some(p) if p.is_file() => NameTable::parse(&read(&p)?).map(Some),
        _ => Ok(None),
    }
}

fn parse_term(text: &str, names: Option<&NameTable>) -> Result<PartialInterpretation> {
    let empty = NameTable::new();
    let table = names.unwrap_or(&empty);
    let lits = text
        .split_whitespace()
        .map(|tok| {
            table.resolve_literal(tok).ok_or_else(|| Error::InvalidArgument(format!("unknown literal `{tok}`")))
        })
        .collect::<Result<Vec<Literal>>>()?;
    PartialInterpretation::from_literals(lits)
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Check(a) => {
            let c = load_circuit(&a.circuit)?;
            writeln!(out, "nodes {}", c.num_nodes())?;
            writeln!(out, "edges {}", c.size())?;
            writeln!(out, "vars {}", c.num_vars())?;
            match c.first_non_decomposable() {
                None => writeln!(out, "decomposable yes")?,
                Some(id) => writeln!(out, "decomposable no (node {id})")?,
            }
            writeln!(out, "smooth {}", if c.is_smooth() { "yes" } else { "no" })?;
            writeln!(out, "dnf {}", if c.dnf_terms().is_some() { "yes" } else { "no" })?;
            Ok(EXIT_OK)
        }
        Command::Condition { circuit, term, out: dest } => {
            let c = load_circuit(&circuit.circuit)?;
            let names = load_names(circuit.names.as_deref(), Some(&circuit.circuit))?;
            let gamma = parse_term(&term, names.as_ref())?;
            check_range(&gamma, c.num_vars())?;
            let text = serialize_nnf(&c.condition(&gamma));
            emit(out, dest.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Consistent(a) => {
            let c = load_circuit(&a.circuit)?;
            let (method, sat) = match c.consistent() {
                Ok(s) => ("dnnf", s),
                Err(Error::NotDecomposable(_)) => {
                    let r = oracle_enumerate(&c, &WeightedBase::new(c.num_vars()), &Aggregator::Sum)?;
                    ("enumeration", r.is_optimal())
                }
                Err(e) => return Err(e),
            };
            writeln!(out, "method {method}")?;
            writeln!(out, "{}", if sat { "consistent" } else { "inconsistent" })?;
            Ok(if sat { EXIT_OK } else { EXIT_NO_SOLUTION })
        }
        Command::Compile { cnf, out: dest } => {
            let cnf = parse_dimacs(&read(&cnf)?)?;
            emit(out, dest.as_deref(), &serialize_nnf(&compile_cnf_to_dnnf(&cnf)))?;
            Ok(EXIT_OK)
        }
        Command::Classify { base } => {
            let obj = load_objective(&base)?;
            writeln!(out, "family {}", classify(&obj.base))?;
            writeln!(out, "items {}", obj.base.len())?;
            writeln!(out, "vars {}", obj.base.num_vars())?;
            writeln!(out, "aggregator {}", obj.aggregator)?;
            Ok(EXIT_OK)
        }
        Command::Optimize(a) => optimize(a, out),
        Command::Oracle { circuit, base, condition } => {
            let c = load_circuit(&circuit.circuit)?;
            let names = load_names(circuit.names.as_deref(), Some(&circuit.circuit))?;
            let obj = load_objective(&base)?;
            let c = apply_condition(c, condition.as_deref(), names.as_ref())?;
            let r = oracle_enumerate(&c, &obj.base, &obj.aggregator)?;
            report(out, Algorithm::Brute, &obj.base, &obj.aggregator, &r, names.as_ref())
        }
        Command::Gen(g) => generate(g, out),
    }
}

fn check_range(gamma: &PartialInterpretation, num_vars: u32) -> Result<()> {
    if gamma.max_var() > num_vars {
        return Err(Error::VarOutOfRange { var: gamma.max_var(), num_vars });
    }
    Ok(())
}

fn emit(out: &mut dyn Write, dest: Option<&Path>, text: &str) -> Result<()> {
    match dest {
        Some(p) => write_file(p, text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn apply_condition(c: NnfCircuit, condition: Option<&str>, names: Option<&NameTable>) -> Result<NnfCircuit> {
    match condition {
        Some(t) => {
            let gamma = parse_term(t, names)?;
            check_range(&gamma, c.num_vars())?;
            Ok(condition_and_fix(&c, &gamma))
        }
        None => Ok(c),
    }
}

fn report(
    out: &mut dyn Write,
    algo: Algorithm,
    b: &WeightedBase,
    agg: &Aggregator,
    r: &OptResult,
    names: Option<&NameTable>,
) -> Result<i32> {
    writeln!(out, "algorithm {algo}")?;
    writeln!(out, "family {}", classify(b))?;
    writeln!(out, "aggregator {agg}")?;
    match &r.status {
        OptStatus::Optimal { model, score } => {
            writeln!(out, "status OPTIMAL")?;
            writeln!(out, "score {score}")?;
            writeln!(out, "model {model}")?;
            if let Some(t) = names {
                let named: Vec<&str> = model.true_vars().filter_map(|v| t.name(v)).collect();
                writeln!(out, "true {}", named.join(" "))?;
            }
            Ok(EXIT_OK)
        }
        OptStatus::NoSolution => {
            writeln!(out, "status NO_SOLUTION")?;
            Ok(EXIT_NO_SOLUTION)
        }
    }
}

fn optimize(a: OptimizeArgs, out: &mut dyn Write) -> Result<i32> {
    if a.algo == AlgoArg::ObddLinearize || a.obdd.is_some() {
        return optimize_obdd(a, out);
    }
    let circuit_path = a.circuit.as_deref().expect("clap requires --circuit");
    let base_path = a.base.as_deref().ok_or_else(|| Error::InvalidArgument("--base is required".into()))?;
    let names = load_names(a.names.as_deref(), Some(circuit_path))?;
    let c = apply_condition(load_circuit(circuit_path)?, a.condition.as_deref(), names.as_ref())?;
    let obj = load_objective(base_path)?;
    let algorithm = match a.algo {
        AlgoArg::Auto => None,
        AlgoArg::DnnfLinear => Some(Algorithm::DnnfLinear),
        AlgoArg::DnfMonotone => Some(Algorithm::DnfMonotone),
        AlgoArg::FptPoly => Some(Algorithm::FptPolynomial),
        AlgoArg::Brute => Some(Algorithm::Brute),
        AlgoArg::ObddLinearize => unreachable!(),
    };
    let opts = DispatchOptions { algorithm, fpt: FptOptions { n_cap: a.n_cap, jobs: a.jobs.max(1) } };
    let (r, algo) = dispatch(&c, &obj.base, &obj.aggregator, &opts)?;
    report(out, algo, &obj.base, &obj.aggregator, &r, names.as_ref())
}

fn optimize_obdd(a: OptimizeArgs, out: &mut dyn Write) -> Result<i32> {
    let path = a.obdd.as_deref().ok_or_else(|| Error::InvalidArgument("obdd-linearize needs --obdd".into()))?;
    if a.condition.is_some() {
        return Err(Error::InvalidArgument("--condition is not supported with OBDD inputs".into()));
    }
    let (mut m, phi) = ObddManager::parse(&read(path)?)?;
    let mut items: Vec<(ObddId, Weight)> = Vec::new();
    let mut formulas = WeightedBase::new(m.num_vars());
    let agg = match &a.base {
        Some(bp) => {
            let obj = load_objective(bp)?;
            for it in obj.base.items() {
                let lits = it.formula.term_literals().ok_or_else(|| {
                    Error::InvalidArgument("only term items can be combined with OBDD inputs".into())
                })?;
                items.push((m.build_term(lits)?, it.weight.clone()));
                formulas.push(it.formula.clone(), it.weight.clone())?;
            }
            obj.aggregator
        }
        None => match a.agg {
            AggArg::Sum => Aggregator::Sum,
            AggArg::Leximax => Aggregator::Leximax,
        },
    };
    for spec in &a.item {
        let (w, file) = spec
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("item `{spec}` is not `<weight>:<file>`")))?;
        let weight = parse_weight(w).ok_or_else(|| Error::InvalidArgument(format!("bad weight `{w}`")))?;
        let f = m.load(&read(Path::new(file))?)?;
        formulas.push(Formula::circuit(m.to_nnf(f)), weight.clone())?;
        items.push((f, weight));
    }
    let r = opt_obdd_linearize(&m, phi, &items, &agg, a.n_cap)?;
    let names = load_names(a.names.as_deref(), None)?;
    report(out, Algorithm::ObddLinearize, &formulas, &agg, &r, names.as_ref())
}

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty() && !t[0].starts_with('#'))
}

fn need<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    p.as_deref().ok_or_else(|| Error::InvalidArgument(format!("this generator needs --{flag}")))
}

fn generate(g: GenArgs, out: &mut dyn Write) -> Result<i32> {
    let dir = &g.out;
    fs::create_dir_all(dir)?;
    let mut written: Vec<PathBuf> = Vec::new();
    let mut put = |name: &str, text: &str| -> Result<()> {
        let p = dir.join(name);
        write_file(&p, text)?;
        written.push(p);
        Ok(())
    };
    let write_instance = |inst: &gen::Instance, put: &mut dyn FnMut(&str, &str) -> Result<()>| -> Result<()> {
        put("instance.nnf", &serialize_nnf(&inst.circuit))?;
        put("instance.names", &inst.names.serialize())?;
        let s = crate::objective::serialize_objective(&inst.objective);
        for (rel, text) in &s.formulas {
            put(rel, text)?;
        }
        put("instance.wb", &s.text)
    };
    match g.kind {
        GenKind::HittingSet | GenKind::HittingSetQplus => {
            let text = read(need(&g.sets, "sets")?)?;
            let sets: Vec<Vec<String>> = lines(&text).map(|(_, t)| t.iter().map(|s| s.to_string()).collect()).collect();
            let inst = if g.kind == GenKind::HittingSet {
                gen::gen_hitting_set_linear(&sets)?
            } else {
                gen::gen_hitting_set_qplus(&sets)?
            };
            write_instance(&inst, &mut put)?;
        }
        GenKind::TermsatQ => {
            let text = read(need(&g.terms, "terms")?)?;
            let mut terms = Vec::new();
            for (ln, t) in lines(&text) {
                let lits: Vec<Literal> = t
                    .iter()
                    .map(|s| s.parse::<i64>().ok().and_then(Literal::from_dimacs))
                    .collect::<Option<_>>()
                    .ok_or_else(|| Error::format(ln, "expected two nonzero integers"))?;
                match lits.as_slice() {
                    &[a, b] => terms.push([a, b]),
                    _ => return Err(Error::format(ln, "expected two literals")),
                }
            }
            let used = terms.iter().flatten().map(|l| l.var().index()).max().unwrap_or(0);
            let inst = gen::gen_term_sat_quadratic(&terms, g.vars.unwrap_or(used).max(used))?;
            write_instance(&inst, &mut put)?;
        }
        GenKind::Owa => {
            let obj = load_objective(need(&g.base, "base")?)?;
            let owa = gen::gen_owa_from_quadratic(&obj.base)?;
            put("instance.nnf", &serialize_nnf(&NnfCircuit::constant(true, obj.base.num_vars())))?;
            put("instance.wb", &crate::objective::serialize_objective(&owa).text)?;
        }
        GenKind::Posneg | GenKind::PosnegWeights => {
            let cnf = parse_dimacs(&read(need(&g.cnf, "cnf")?)?)?;
            let (pos, neg): (Vec<_>, Vec<_>) = cnf.clauses.iter().cloned().partition(|c| c.iter().all(|l| l.is_positive()));
            let flavor =
                if g.kind == GenKind::Posneg { PosNegFlavor::GplusLiterals } else { PosNegFlavor::GplusWeights };
            let inst = gen::gen_posneg_cnf(&pos, &neg, cnf.num_vars, flavor)?;
            write_instance(&inst, &mut put)?;
        }
        GenKind::NeglitElim => {
            let obj = load_objective(need(&g.base, "base")?)?;
            let e = gen::eliminate_negative_literals(&obj.base)?;
            put("constraint.obdd", &serialize_obdd(&e.manager, e.constraint))?;
            let rewritten = Objective { base: e.base, aggregator: obj.aggregator };
            let s = crate::objective::serialize_objective(&rewritten);
            for (rel, text) in &s.formulas {
                put(rel, text)?;
            }
            put("instance.wb", &s.text)?;
        }
        GenKind::PkgDemo => {
            let d = gen::gen_package_demo();
            put("pkg.cnf", &serialize_dimacs(&d.cnf))?;
            put("pkg.nnf", &serialize_nnf(&d.circuit))?;
            put("pkg.names", &d.names.serialize())?;
            let mc = Objective { base: d.minimal_change, aggregator: Aggregator::Sum };
            let nw = Objective { base: d.newest, aggregator: Aggregator::Sum };
            written.push(dir.join("minchange.wb"));
            write_objective(&mc, &dir.join("minchange.wb"))?;
            written.push(dir.join("newest.wb"));
            write_objective(&nw, &dir.join("newest.wb"))?;
        }
    }
    for p in written {
        writeln!(out, "wrote {}", p.display())?;
    }
    Ok(EXIT_OK)
}

