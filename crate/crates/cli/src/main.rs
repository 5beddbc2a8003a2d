use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use stratlat::enumerate::{enumerate_models, sample_models, EnumerationBudget};
use stratlat::io::{from_json, read_model, FunctionJson, StratifiedJson, SystemJson};
use stratlat::inverse::representation_isomorphism;
use stratlat::lp::{rw_minimum_model, wfs_oracle, Program, Truth3};
use stratlat::stratified::{check_axioms, classify, Suite};
use stratlat::{Error, StratifiedLattice, Verdict};

#[derive(Parser)]
#[command(name = "stratlat", version, about = "Stratified complete lattices: checks, limits, fixed points, programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a stratified lattice against an axiom suite.
    Check {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = SuiteArg::Model)]
        suite: SuiteArg,
        #[arg(long)]
        json: bool,
    },
    /// Decompose a model into its tower and verify the limit isomorphism.
    Represent {
        model: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Least fixed point of a weakly monotone function on a model.
    Lfp {
        model: PathBuf,
        function: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Minimum infinite-valued model of a logic program.
    Solve {
        program: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        trace: bool,
        /// Exit 1 if the collapsed values differ from the well-founded model.
        #[arg(long)]
        diff_wfs: bool,
    },
    /// Well-founded model of a logic program.
    Wfs {
        program: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Stratified lattices up to isomorphism of the underlying lattice, as JSON lines.
    Enumerate {
        #[arg(long)]
        max_elems: usize,
        #[arg(long)]
        depth: usize,
        /// Shuffle with this seed before taking `--count`.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        count: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Model,
    Strong,
    Symmetric,
    Dual,
    #[value(name = "B", alias = "b")]
    B,
}

impl SuiteArg {
    fn suite(self) -> Suite {
        match self {
            SuiteArg::Model => Suite::Model,
            SuiteArg::Strong => Suite::Strong,
            SuiteArg::Symmetric => Suite::Symmetric,
            SuiteArg::Dual => Suite::Dual,
            SuiteArg::B => Suite::B,
        }
    }
}

const OK: u8 = 0;
const VIOLATED: u8 = 1;
const INPUT: u8 = 2;

/// What a command produced: exit code, text for humans, and the JSON form.
struct Outcome {
    code: u8,
    text: String,
    json: Value,
}

/// A failure before any result exists.
struct Failure {
    code: u8,
    message: String,
    witness: Option<Value>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: INPUT,
            message: message.into(),
            witness: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) | Error::IsoFailure(_) => VIOLATED,
            _ => INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
            witness: None,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<StratifiedLattice, Failure> {
    read_model(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_program(path: &Path) -> Result<Program, Failure> {
    Program::parse(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn color() -> bool {
    std::env::var("STRATLAT_COLOR").is_ok_and(|v| v == "1")
}

fn mark(ok: bool) -> String {
    let (word, code) = if ok { ("PASS", "32") } else { ("FAIL", "31") };
    if color() {
        format!("\x1b[{code}m[{word}]\x1b[0m")
    } else {
        format!("[{word}]")
    }
}

fn check(path: &Path, suite: SuiteArg) -> Result<Outcome, Failure> {
    let s = load_model(path)?;
    let reports = check_axioms(&s, suite.suite().axioms());
    let class = classify(&s);
    let mut text = String::new();
    let mut items = Vec::new();
    for r in &reports {
        let rendered = r.witness.as_ref().map(|w| w.render(&s));
        text += &format!("{} {}", mark(r.holds), r.axiom);
        if let Some(w) = &rendered {
            text += &format!("  witness {w}");
        }
        text.push('\n');
        let witness = r.witness.as_ref().map(|w| {
            json!({
                "levels": w.levels,
                "elements": w.elements.iter().map(|&x| s.lattice().label(x)).collect::<Vec<_>>(),
            })
        });
        items.push(json!({"axiom": r.axiom.name(), "holds": r.holds, "witness": witness}));
    }
    text += &format!("classification: {}\n", class.name());
    let pass = reports.iter().all(|r| r.holds);
    let first_failure = items.iter().find(|i| i["holds"] == false).cloned();
    Ok(Outcome {
        code: if pass { OK } else { VIOLATED },
        text,
        json: json!({"axioms": items, "classification": class.name(), "witness": first_failure}),
    })
}

fn represent(path: &Path) -> Result<Outcome, Failure> {
    let s = load_model(path)?;
    let rep = representation_isomorphism(&s).map_err(|e| match e {
        Error::NotAModel { axiom, witness } => Failure {
            code: INPUT,
            message: format!("not a model: {axiom} fails at {witness}"),
            witness: Some(json!({"axiom": axiom, "witness": witness})),
        },
        Error::IsoFailure(msg) => Failure {
            code: VIOLATED,
            message: format!("isomorphism check failed: {msg}"),
            witness: Some(json!({"isomorphism": msg})),
        },
        other => other.into(),
    })?;
    let system = SystemJson::from_system(&rep.decomposition.system);
    let l = s.lattice();
    let limit = rep.limit.model.lattice();
    let iso: serde_json::Map<String, Value> = s
        .elements()
        .map(|x| (l.label(x).to_string(), Value::from(limit.label(rep.iso[x]))))
        .collect();
    let mut text = String::new();
    for (a, level) in system.tower.iter().enumerate() {
        text += &format!("L_{a}: {{{}}}\n", level.elements.join(", "));
    }
    for m in &system.maps {
        let pairs: Vec<String> = m.table.iter().map(|(x, y)| format!("{x}->{y}")).collect();
        text += &format!("h[{}->{}]: {}\n", m.from, m.to, pairs.join(", "));
    }
    text += "isomorphism:\n";
    for (x, y) in &iso {
        text += &format!("  {x} -> {}\n", y.as_str().unwrap_or_default());
    }
    text += "verified\n";
    Ok(Outcome {
        code: OK,
        text,
        json: json!({"system": system, "isomorphism": iso}),
    })
}

fn lfp(model_path: &Path, fn_path: &Path) -> Result<Outcome, Failure> {
    let s = Arc::new(load_model(model_path)?);
    let f = from_json::<FunctionJson>(&read(fn_path)?)
        .and_then(|j| j.to_function(s.clone()))
        .map_err(|e| Failure::input(format!("{}: {e}", fn_path.display())))?;
    let l = s.lattice();
    if let Some((level, x, y)) = f.weak_monotonicity_violation() {
        return Err(Failure {
            code: INPUT,
            message: format!(
                "not weakly monotone: {} ⊑_{level} {} but f({}) = {}, f({}) = {}",
                l.label(x),
                l.label(y),
                l.label(x),
                l.label(f.apply(x)),
                l.label(y),
                l.label(f.apply(y))
            ),
            witness: Some(json!({"level": level, "x": l.label(x), "y": l.label(y)})),
        });
    }
    let trace = f.stratified_lfp_traced()?;
    let y = trace.result;
    let fixed = f.apply(y) == y;
    let pre: Vec<usize> = s.elements().filter(|&z| s.lex_leq(f.apply(z), z)).collect();
    let least = pre.iter().all(|&z| s.lex_leq(y, z));
    let lattice = f.fixed_point_lattice()?;
    let lattice_ok = lattice.verdict == Verdict::Holds;

    let mut text = format!("least fixed point: {}\n", l.label(y));
    let mut steps = Vec::new();
    for step in &trace.steps {
        let seq: Vec<&str> = std::iter::once(step.start)
            .chain(step.iterates.iter().copied())
            .map(|u| l.label(u))
            .collect();
        text += &format!("  level {}: {}\n", step.level, seq.join(" -> "));
        steps.push(json!({"level": step.level, "sequence": seq, "value": l.label(step.value)}));
    }
    text += &format!("{} f(y) = y\n", mark(fixed));
    text += &format!("{} least pre-fixed point\n", mark(least));
    text += &format!(
        "{} fixed points form a complete lattice ({} points, {} subsets)\n",
        mark(lattice_ok),
        lattice.points.len(),
        lattice.subsets_checked
    );
    let witness = match &lattice.verdict {
        Verdict::Fails(set) => Some(json!({"subset": set.iter().map(|&x| l.label(x)).collect::<Vec<_>>()})),
        Verdict::Holds if !fixed || !least => Some(json!({"result": l.label(y)})),
        Verdict::Holds => None,
    };
    let ok = fixed && least && lattice_ok;
    Ok(Outcome {
        code: if ok { OK } else { VIOLATED },
        text,
        json: json!({
            "result": l.label(y),
            "levels": steps,
            "verdicts": {"fixed": fixed, "least_prefixed": least, "complete_lattice": lattice_ok},
            "witness": witness,
        }),
    })
}

fn solve(path: &Path, trace: bool, diff_wfs: bool) -> Result<Outcome, Failure> {
    let p = load_program(path)?;
    let m = rw_minimum_model(&p)?;
    let atoms = p.atoms();
    let collapsed = m.collapsed();
    let mut text = String::new();
    let mut table = serde_json::Map::new();
    for (i, name) in atoms.iter().enumerate() {
        let v = m.values[i];
        text += &format!("{name} = {v}  ({})\n", collapsed[i]);
        table.insert(
            name.clone(),
            json!({"value": v.to_string(), "collapsed": collapsed[i].to_string(), "level": v.level()}),
        );
    }
    let levels: Vec<Value> = m
        .levels
        .iter()
        .map(|t| {
            let frozen: Vec<&str> = t.frozen.iter().map(|&a| atoms[a].as_str()).collect();
            let iterates: Vec<Vec<String>> = t
                .iterates
                .iter()
                .map(|i| i.iter().map(|v| v.to_string()).collect())
                .collect();
            json!({"level": t.level, "frozen": frozen, "iterates": iterates})
        })
        .collect();
    if trace {
        for t in &m.levels {
            let frozen: Vec<&str> = t.frozen.iter().map(|&a| atoms[a].as_str()).collect();
            text += &format!("level {}: {} iterates, froze {{{}}}\n", t.level, t.iterates.len(), frozen.join(", "));
            for it in &t.iterates {
                let shown: Vec<String> = atoms.iter().zip(it).map(|(a, v)| format!("{a}={v}")).collect();
                text += &format!("    {}\n", shown.join(" "));
            }
        }
        if !m.undefined.is_empty() {
            let names: Vec<&str> = m.undefined.iter().map(|&a| atoms[a].as_str()).collect();
            text += &format!("left at 0: {{{}}}\n", names.join(", "));
        }
    }
    let mut code = OK;
    let mut witness = None;
    if diff_wfs {
        let wfs = wfs_oracle(&p);
        match (0..atoms.len()).find(|&i| wfs[i] != collapsed[i]) {
            Some(i) => {
                code = VIOLATED;
                text += &format!("{} collapse differs from the well-founded model at {}\n", mark(false), atoms[i]);
                witness = Some(json!({
                    "atom": atoms[i],
                    "collapsed": collapsed[i].to_string(),
                    "wfs": wfs[i].to_string(),
                }));
            }
            None => text += &format!("{} collapse matches the well-founded model\n", mark(true)),
        }
    }
    Ok(Outcome {
        code,
        text,
        json: json!({"atoms": table, "levels": levels, "witness": witness}),
    })
}

fn wfs(path: &Path) -> Result<Outcome, Failure> {
    let p = load_program(path)?;
    let values = wfs_oracle(&p);
    let mut text = String::new();
    let mut table = serde_json::Map::new();
    for (name, v) in p.atoms().iter().zip(&values) {
        text += &format!("{name} = {v}\n");
        table.insert(name.clone(), Value::from(v.to_string()));
    }
    let undefined = values.iter().filter(|&&v| v == Truth3::Undef).count();
    Ok(Outcome {
        code: OK,
        text,
        json: json!({"atoms": table, "undefined": undefined}),
    })
}

fn enumerate(max_elems: usize, depth: usize, seed: Option<u64>, count: Option<usize>) -> Result<Outcome, Failure> {
    let mut budget = EnumerationBudget::new(max_elems, depth)?;
    let models = match (seed, count) {
        (Some(seed), count) => {
            budget = budget.with_seed(seed);
            if let Some(c) = count {
                budget = budget.with_samples(c);
            } else {
                budget = budget.with_samples(usize::MAX);
            }
            sample_models(&budget)?
        }
        (None, count) => {
            let mut all = enumerate_models(&budget)?;
            if let Some(c) = count {
                all.truncate(c);
            }
            all
        }
    };
    let lines: Vec<String> = models
        .iter()
        .map(|s| serde_json::to_string(&StratifiedJson::from_model(s)).expect("plain data serializes"))
        .collect();
    let mut text = lines.join("\n");
    if !text.is_empty() {
        text.push('\n');
    }
    Ok(Outcome {
        code: OK,
        text,
        json: Value::Null,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json_out, result) = match &cli.command {
        Command::Check { model, suite, json } => (*json, check(model, *suite)),
        Command::Represent { model, json } => (*json, represent(model)),
        Command::Lfp { model, function, json } => (*json, lfp(model, function)),
        Command::Solve {
            program,
            json,
            trace,
            diff_wfs,
        } => (*json, solve(program, *trace, *diff_wfs)),
        Command::Wfs { program, json } => (*json, wfs(program)),
        Command::Enumerate {
            max_elems,
            depth,
            seed,
            count,
        } => (false, enumerate(*max_elems, *depth, *seed, *count)),
    };
    match result {
        Ok(out) => {
            if json_out {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("plain data serializes"));
            } else {
                print!("{}", out.text);
                if out.code == VIOLATED {
                    if let Some(w) = out.json.get("witness") {
                        println!("witness: {w}");
                    }
                }
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            if let Some(w) = f.witness {
                println!("witness: {w}");
            }
            ExitCode::from(f.code)
        }
    }
}
