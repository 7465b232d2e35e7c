//! Command-line driver: FSTDS scripts, inference from JSON case files,
//! formula minimization, class analysis/synthesis, grammar queries, hedges,
//! defuzzification, and the reasoning-profile tables.
//!
//! Exit codes: 0 ok, 1 user error, 2 internal error.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use fuzzkit::defuzz::{defuzzify, defuzzify_firings, DefuzzMethod};
use fuzzkit::fstds;
use fuzzkit::grammar::{derive, FuzzyGrammar};
use fuzzkit::hedge::{apply_hedge_with, HedgeKind, HedgeOptions};
use fuzzkit::inference::{gmp, gmt, ite_infer, multi_infer, Modifier};
use fuzzkit::json::{FuzzySetDto, InferCaseDto, KernelDto, RuleBaseDto, UniverseDto};
use fuzzkit::linguistics::{age_variable, LanguageVariable};
use fuzzkit::logic::{
    analyze, fpi, parse_formula, simplest_form, synthesize, BoundExpr, ClassPartition,
    ConstraintACell, ConstraintAtom, Direction, NormalForm, System,
};
use fuzzkit::relation::{CompositionRule, ElseKind, ImplicationKind};
use fuzzkit::set::FuzzySet;
use fuzzkit::tables::{ponens_table, syllogism_table, tollens_table, TableFormat};
use serde::Deserialize;
use std::collections::HashMap;
use std::fs;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fuzzkit", about = "Fuzzy sets, approximate reasoning, and the FSTDS interpreter", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an FSTDS script and print its transcript.
    Run { script: String },
    /// Generalized modus ponens/tollens, IF-THEN-ELSE, or multi-rule
    /// inference from a JSON case file.
    Infer(InferArgs),
    /// Fuzzy prime implicants (or simplest forms) of a formula.
    Minimize {
        formula: String,
        /// Enumerate the simplest forms instead of the prime implicants.
        #[arg(long)]
        simplest: bool,
        /// Declared variable count (defaults to the largest index used).
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Inequality systems for membership of a formula's value in a class.
    Analyze {
        formula: String,
        /// Number of classes in the even partition of [0, 1].
        #[arg(long, default_value_t = 3)]
        classes: usize,
        /// Class index, 1-based.
        #[arg(long)]
        class: usize,
    },
    /// The inverse of analyze: a formula from JSON inequality systems.
    Synthesize {
        file: String,
        #[arg(long, default_value_t = 3)]
        classes: usize,
        #[arg(long)]
        class: usize,
    },
    /// Grammar queries.
    #[command(subcommand)]
    Grammar (GrammarCommand),
    /// Emit the reasoning-profile tables or the syllogism table.
    Tables {
        /// ponens | tollens | syllogism
        #[arg(long, default_value = "ponens")]
        which: String,
        #[arg(long, default_value_t = 1000)]
        grid_n: usize,
        /// csv | markdown
        #[arg(long, default_value = "csv")]
        format: String,
        /// Composition rule for the syllogism table.
        #[arg(long, default_value = "max-min")]
        composition: String,
    },
    /// Apply a named hedge to a JSON fuzzy set.
    Hedge {
        /// very | plus | minus | highly | more-or-less | sort-of | rather |
        /// con | dil | int | norm | pow:<alpha> | scale:<k>
        #[arg(long)]
        name: String,
        #[arg(long)]
        set: String,
        /// Use the alternate printed definition of sort-of.
        #[arg(long)]
        alt_sort_of: bool,
        /// Use the alternate printed definition of rather.
        #[arg(long)]
        alt_rather: bool,
        /// Fuzzify through a JSON kernel instead of a pointwise hedge.
        #[arg(long)]
        kernel: Option<String>,
    },
    /// Collapse a JSON fuzzy set to a crisp coordinate.
    Defuzz {
        #[arg(long)]
        method: String,
        #[arg(long)]
        set: String,
    },
}

#[derive(Args)]
struct InferArgs {
    /// gmp | gmt | ite | multi
    #[arg(long)]
    mode: String,
    /// JSON case file.
    #[arg(long)]
    file: String,
    #[arg(long, default_value = "rm")]
    implication: String,
    #[arg(long, default_value = "max-min")]
    composition: String,
    /// IF-THEN-ELSE relation kind for --mode ite.
    #[arg(long, default_value = "rm")]
    else_kind: String,
    /// Optional premise modifier applied before composing.
    #[arg(long)]
    modifier: Option<String>,
    /// Defuzzify the result with this method.
    #[arg(long)]
    defuzz: Option<String>,
}

#[derive(Subcommand)]
enum GrammarCommand {
    /// Best-grade derivation of a sentence.
    Derive {
        #[arg(long)]
        grammar: String,
        #[arg(long)]
        sentence: String,
        #[arg(long, default_value_t = 0)]
        max_steps: usize,
    },
    /// Evaluate a noun phrase against a language variable.
    Noun {
        /// JSON language variable file, or the built-in `age` vocabulary.
        #[arg(long, default_value = "age")]
        variable: String,
        phrase: Vec<String>,
    },
}

enum CliError {
    User(String),
    Internal(String),
}

impl From<fuzzkit::FuzzyError> for CliError {
    fn from(e: fuzzkit::FuzzyError) -> Self {
        CliError::User(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn user_err(msg: impl Into<String>) -> CliError {
    CliError::User(msg.into())
}

fn read_file(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| user_err(format!("cannot read {path}: {e}")))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &str) -> CliResult<T> {
    serde_json::from_str(&read_file(path)?)
        .map_err(|e| user_err(format!("cannot parse {path}: {e}")))
}

fn print_set(s: &FuzzySet) {
    for (p, g) in s.universe().points().iter().zip(s.grades()) {
        println!("{} {:.6}", p.label, g.value());
    }
}

fn parse_implication(name: &str) -> CliResult<ImplicationKind> {
    ImplicationKind::parse(name).ok_or_else(|| user_err(format!("unknown implication kind {name:?}")))
}

fn parse_composition(name: &str) -> CliResult<CompositionRule> {
    CompositionRule::parse(name).ok_or_else(|| user_err(format!("unknown composition rule {name:?}")))
}

fn parse_hedge(name: &str) -> CliResult<HedgeKind> {
    let lower = name.trim().to_ascii_lowercase();
    if let Some(alpha) = lower.strip_prefix("pow:") {
        let alpha: f64 = alpha.parse().map_err(|_| user_err("bad pow exponent"))?;
        return Ok(HedgeKind::Power(alpha));
    }
    if let Some(k) = lower.strip_prefix("scale:") {
        let k: f64 = k.parse().map_err(|_| user_err("bad scale factor"))?;
        return Ok(HedgeKind::Scalar(k));
    }
    Ok(match lower.as_str() {
        "very" => HedgeKind::Very,
        "plus" => HedgeKind::Plus,
        "minus" => HedgeKind::Minus,
        "highly" => HedgeKind::Highly,
        "more-or-less" | "mol" => HedgeKind::MoreOrLess,
        "sort-of" => HedgeKind::SortOf,
        "rather" => HedgeKind::Rather,
        "con" => HedgeKind::Con,
        "dil" => HedgeKind::Dil,
        "int" => HedgeKind::Int,
        "norm" => HedgeKind::Norm,
        other => return Err(user_err(format!("unknown hedge {other:?}"))),
    })
}

fn run_infer(args: &InferArgs) -> CliResult<()> {
    let composition = parse_composition(&args.composition)?;
    let modifier = match &args.modifier {
        Some(m) => {
            Some(Modifier::parse(m).ok_or_else(|| user_err(format!("unknown modifier {m:?}")))?)
        }
        None => None,
    };
    let result: FuzzySet = match args.mode.as_str() {
        "gmp" | "gmt" | "ite" => {
            let case: InferCaseDto = read_json(&args.file)?;
            let a = case.a.to_set()?;
            let b = case.b.to_set()?;
            let mut premise = case.premise.to_set()?;
            if let Some(m) = modifier {
                premise = m.apply_set(&premise);
            }
            match args.mode.as_str() {
                "gmp" => gmp(parse_implication(&args.implication)?, &a, &b, &premise, composition)?,
                "gmt" => gmt(parse_implication(&args.implication)?, &a, &b, &premise, composition)?,
                _ => {
                    let c = case
                        .c
                        .as_ref()
                        .ok_or_else(|| user_err("ite mode needs a \"c\" set"))?
                        .to_set()?;
                    let kind = ElseKind::parse(&args.else_kind)
                        .ok_or_else(|| user_err(format!("unknown else kind {:?}", args.else_kind)))?;
                    ite_infer(kind, &a, &b, &c, &premise)?
                }
            }
        }
        "multi" => {
            let base: RuleBaseDto = read_json(&args.file)?;
            let (rules, inputs) = base.to_rules()?;
            let (aggregate, firings) = multi_infer(&rules, &inputs)?;
            if let Some(method) = &args.defuzz {
                let method = DefuzzMethod::parse(method)
                    .ok_or_else(|| user_err(format!("unknown defuzzification method {method:?}")))?;
                let value = if method.is_set_based() {
                    defuzzify(method, &aggregate)?
                } else {
                    defuzzify_firings(method, &firings)?
                };
                println!("{value:.6}");
                return Ok(());
            }
            aggregate
        }
        other => return Err(user_err(format!("unknown inference mode {other:?}"))),
    };
    if let Some(method) = &args.defuzz {
        let method = DefuzzMethod::parse(method)
            .ok_or_else(|| user_err(format!("unknown defuzzification method {method:?}")))?;
        println!("{:.6}", defuzzify(method, &result)?);
    } else {
        print_set(&result);
    }
    Ok(())
}

fn analysis_json(atoms: &[Vec<ConstraintAtom>]) -> serde_json::Value {
    serde_json::Value::Array(
        atoms
            .iter()
            .map(|system| {
                serde_json::Value::Array(
                    system
                        .iter()
                        .map(|a| serde_json::Value::String(a.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AtomOrGroupDto {
    Group { any_of: Vec<AtomDto> },
    Atom(AtomDto),
}

#[derive(Deserialize)]
struct AtomDto {
    var: usize,
    dir: String,
    bound: serde_json::Value,
}

impl AtomDto {
    fn to_atom(&self) -> CliResult<ConstraintAtom> {
        let direction = match self.dir.as_str() {
            ">=" => Direction::Ge,
            "<=" => Direction::Le,
            ">" => Direction::Gt,
            "<" => Direction::Lt,
            other => return Err(user_err(format!("unknown direction {other:?}"))),
        };
        let bound = match &self.bound {
            serde_json::Value::String(s) => match s.as_str() {
                "a_{j-1}" | "lower" => BoundExpr::Lower,
                "1-a_{j-1}" | "1-lower" => BoundExpr::OneMinusLower,
                "a_j" | "upper" => BoundExpr::Upper,
                "1-a_j" | "1-upper" => BoundExpr::OneMinusUpper,
                other => return Err(user_err(format!("unknown bound {other:?}"))),
            },
            serde_json::Value::Number(n) => {
                BoundExpr::Literal(n.as_f64().ok_or_else(|| user_err("bad bound number"))?)
            }
            _ => return Err(user_err("bound must be a symbol or a number")),
        };
        Ok(ConstraintAtom::new(self.var, direction, bound))
    }
}

fn run_synthesize(file: &str, classes: usize, class: usize) -> CliResult<()> {
    let systems_dto: Vec<Vec<AtomOrGroupDto>> = read_json(file)?;
    let mut systems: Vec<System> = Vec::new();
    for system in &systems_dto {
        let mut cells = Vec::new();
        for cell in system {
            cells.push(match cell {
                AtomOrGroupDto::Atom(a) => ConstraintACell::Atom(a.to_atom()?),
                AtomOrGroupDto::Group { any_of } => ConstraintACell::AnyOf(
                    any_of.iter().map(|a| a.to_atom()).collect::<CliResult<_>>()?,
                ),
            });
        }
        systems.push(cells);
    }
    let partition = ClassPartition::even(classes)?;
    let synthesis = synthesize(&systems, &partition, class)?;
    println!("{synthesis}");
    Ok(())
}

fn load_variable(spec: &str) -> CliResult<LanguageVariable> {
    if spec == "age" {
        return Ok(age_variable());
    }
    #[derive(Deserialize)]
    struct VariableDto {
        name: String,
        universe: UniverseDto,
        nouns: HashMap<String, Vec<f64>>,
        #[serde(default)]
        modifiers: HashMap<String, String>,
    }
    let dto: VariableDto = read_json(spec)?;
    let universe = dto.universe.to_universe()?;
    let mut variable =
        LanguageVariable::new(dto.name, std::sync::Arc::clone(&universe)).with_standard_modifiers();
    for (word, grades) in &dto.nouns {
        variable.add_noun(word.clone(), FuzzySet::from_values(std::sync::Arc::clone(&universe), grades)?)?;
    }
    for (word, hedge) in &dto.modifiers {
        variable.add_modifier(word.clone(), parse_hedge(hedge)?);
    }
    Ok(variable)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Run { script } => {
            let source = read_file(&script)?;
            let parsed = fstds::parse_script(&source)?;
            for line in fstds::exec(&parsed)? {
                println!("{line}");
            }
        }
        Command::Infer(args) => run_infer(&args)?,
        Command::Minimize { formula, simplest, arity } => {
            let f = parse_formula(&formula, arity)?;
            if simplest {
                for form in simplest_form(&f)? {
                    println!("{form}");
                }
            } else {
                let terms = fpi(&f)?;
                let nf = NormalForm::new(f.arity(), terms);
                println!("{nf}");
            }
        }
        Command::Analyze { formula, classes, class } => {
            let f = parse_formula(&formula, None)?;
            let partition = ClassPartition::even(classes)?;
            let analysis = analyze(&f, &partition, class)?;
            let mut doc = serde_json::Map::new();
            doc.insert("lower".into(), analysis_json(&analysis.lower));
            if let Some(upper) = &analysis.upper {
                doc.insert("upper".into(), analysis_json(upper));
            }
            println!("{}", serde_json::Value::Object(doc));
        }
        Command::Synthesize { file, classes, class } => run_synthesize(&file, classes, class)?,
        Command::Grammar(cmd) => match cmd {
            GrammarCommand::Derive { grammar, sentence, max_steps } => {
                let g = FuzzyGrammar::parse(&read_file(&grammar)?)?;
                match derive(&g, &g.tokenize(&sentence), max_steps) {
                    Some(d) => println!("{:.6}", d.grade.value()),
                    None => println!("none"),
                }
            }
            GrammarCommand::Noun { variable, phrase } => {
                let v = load_variable(&variable)?;
                let set = v.parse_noun(&phrase.join(" "))?;
                print_set(&set);
            }
        },
        Command::Tables { which, grid_n, format, composition } => {
            let format = TableFormat::parse(&format)
                .ok_or_else(|| user_err(format!("unknown table format {format:?}")))?;
            let text = match which.as_str() {
                "ponens" | "151a" => ponens_table(grid_n, format),
                "tollens" | "151b" => tollens_table(grid_n, format),
                "syllogism" => syllogism_table(grid_n, parse_composition(&composition)?, format),
                other => return Err(user_err(format!("unknown table {other:?}"))),
            };
            print!("{text}");
        }
        Command::Hedge { name, set, alt_sort_of, alt_rather, kernel } => {
            let dto: FuzzySetDto = read_json(&set)?;
            let s = dto.to_set()?;
            let result = match kernel {
                Some(path) => {
                    let kernel: KernelDto = read_json(&path)?;
                    fuzzkit::hedge::fuzzify(&s, &kernel.to_kernel()?)?
                }
                None => {
                    let opts = HedgeOptions {
                        sort_of_alt: alt_sort_of,
                        rather_alt: alt_rather,
                    };
                    apply_hedge_with(parse_hedge(&name)?, &s, opts)?
                }
            };
            print_set(&result);
        }
        Command::Defuzz { method, set } => {
            let method = DefuzzMethod::parse(&method)
                .ok_or_else(|| user_err(format!("unknown defuzzification method {method:?}")))?;
            let dto: FuzzySetDto = read_json(&set)?;
            println!("{:.6}", defuzzify(method, &dto.to_set()?)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let outcome = std::panic::catch_unwind(|| run(cli))
        .unwrap_or_else(|_| Err(CliError::Internal("unexpected panic".into())));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::User(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
