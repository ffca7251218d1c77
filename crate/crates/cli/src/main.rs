use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use cuspidal::clifford::{clifford_bijection, normal_irreps, trivial_natural};
use cuspidal::extquot::{build_extended_quotient, ActionDatumSpec};
use cuspidal::groups::json::{summarize, GroupSpec};
use cuspidal::groups::DEFAULT_ORDER_BOUND;
use cuspidal::lparams::{self, EnhancedParameter};
use cuspidal::reps::{character_table, verify_columns, verify_orthogonality};
use cuspidal::springer::{self, GroupType, Partition, SectionDatum, SectionSpec, SpringerTable};
use cuspidal::tga::{cohomologous, is_coboundary, twisted_irreps, CocycleSpec};
use cuspidal::{Error, FiniteGroup};

mod examples;
mod schema;

#[derive(Parser, Debug)]
#[command(name = "cuspidal", version, about = "Exact Springer and L-parameter computations")]
struct Cli {
    /// Print the JSON schemas of all input formats and exit.
    #[arg(long, global = true)]
    schema: bool,
    /// Indented output (the default).
    #[arg(long, global = true, conflicts_with = "compact")]
    pretty: bool,
    /// Single-line output.
    #[arg(long, global = true)]
    compact: bool,
    /// Upper bound on group orders during closure.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_BOUND)]
    order_bound: usize,
    /// Worker threads for batch classification.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summaries of finite groups.
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },
    /// Character tables.
    Reps {
        #[command(subcommand)]
        op: RepsOp,
    },
    /// Twisted group algebras.
    Tga {
        #[command(subcommand)]
        op: TgaOp,
    },
    /// Clifford theory for a normal subgroup.
    Clifford {
        #[command(subcommand)]
        op: CliffordOp,
    },
    /// Twisted extended quotients.
    Extquot {
        #[command(subcommand)]
        op: ExtquotOp,
    },
    /// Generalized Springer combinatorics.
    Springer {
        #[command(subcommand)]
        op: SpringerOp,
    },
    /// Enhanced L-parameters.
    Lparam {
        #[command(subcommand)]
        op: LparamOp,
    },
    /// Run the built-in worked examples.
    Examples {
        #[arg(long, value_enum, default_value_t = Case::All)]
        case: Case,
    },
}

#[derive(Args, Debug)]
struct GroupSource {
    /// Group JSON file.
    #[arg(long = "in", conflicts_with = "name")]
    input: Option<PathBuf>,
    /// Catalog name such as S4, Q8, D8, C2xC2.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Subcommand, Debug)]
enum GroupOp {
    Summary(GroupSource),
}

#[derive(Subcommand, Debug)]
enum RepsOp {
    Table(GroupSource),
}

#[derive(Subcommand, Debug)]
enum TgaOp {
    /// Irreducible modules of K[Γ,♮].
    Irreps {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Whether two cocycles on the same group are cohomologous.
    Cohomologous {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum CliffordOp {
    /// Orbits, cocycles and the matching with Irr(Γ).
    Bijection {
        /// {"group": ..., "normal": [words]}
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum ExtquotOp {
    Build {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum SpringerOp {
    /// Σ_u |Irr A(u)| against Σ over cuspidal supports.
    Census {
        #[arg(long = "type")]
        ty: String,
        /// Rank: GL_r, SO_{2r+1} or Sp_{2r}.
        #[arg(long)]
        rank: usize,
    },
    /// Cuspidal pairs of a group given by natural dimension.
    Cuspidal {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        n: usize,
    },
    /// Unipotent classes of a group given by natural dimension.
    Classes {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        n: usize,
    },
    /// Component group of a unipotent class.
    ComponentGroup {
        #[arg(long = "type")]
        ty: String,
        /// Comma-separated parts.
        #[arg(long)]
        partition: String,
    },
    /// ♮_E from a section and its comparison with the Clifford cocycle.
    Cocycle {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args, Debug)]
struct ParamInput {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum LparamOp {
    /// Discreteness, boundedness, relevance, cuspidality.
    Classify(ParamInput),
    /// The cuspidal support.
    Support {
        #[command(flatten)]
        param: ParamInput,
        /// Extra Springer table files.
        #[arg(long = "table")]
        tables: Vec<PathBuf>,
    },
    /// The Bernstein component and its extended quotient.
    Component(ParamInput),
    /// The standard triple (L, φ_t, z, ρ_t).
    Triple(ParamInput),
    /// Classify a JSON list of enhanced parameters.
    Batch(ParamInput),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Case {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    Cusp3,
    Unitary,
    Census,
    All,
}

#[derive(Serialize)]
struct CommandReport {
    command: Vec<String>,
    inputs_sha256: String,
    result: Value,
    exact: bool,
}

/// Input files are hashed in the order they are read.
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new() -> Self {
        Inputs { hasher: Sha256::new() }
    }

    fn read(&mut self, path: &PathBuf) -> Result<String, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        self.hasher.update((text.len() as u64).to_le_bytes());
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn digest(self) -> String {
        format!("{:x}", self.hasher.finalize())
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report")
}

fn load_group(src: &GroupSource, inputs: &mut Inputs, bound: usize) -> Result<FiniteGroup, Error> {
    match (&src.input, &src.name) {
        (Some(p), _) => GroupSpec::from_json(&inputs.read(p)?)?.build(bound),
        (None, Some(n)) => GroupSpec::Named { name: n.clone() }.build(bound),
        (None, None) => Err(Error::validation("give --in FILE or --name NAME")),
    }
}

fn group_type(s: &str) -> Result<GroupType, Error> {
    s.parse()
}

fn census_dimension(ty: GroupType, rank: usize) -> usize {
    match ty {
        GroupType::Sp => 2 * rank,
        GroupType::SOOdd => 2 * rank + 1,
        GroupType::SOEven => 2 * rank,
        _ => rank,
    }
}

fn parse_param(text: &str) -> Result<EnhancedParameter, Error> {
    EnhancedParameter::from_json(text)
}

#[derive(serde::Deserialize)]
struct CliffordInput {
    group: GroupSpec,
    normal: Vec<Vec<usize>>,
}

fn run(cli: &Cli, command: &Command, inputs: &mut Inputs) -> Result<Value, Error> {
    let bound = cli.order_bound;
    Ok(match command {
        Command::Group { op: GroupOp::Summary(src) } => to_value(&summarize(&load_group(src, inputs, bound)?)),
        Command::Reps { op: RepsOp::Table(src) } => {
            let g = load_group(src, inputs, bound)?;
            let table = character_table(&g);
            let rows: Vec<Vec<String>> = table.iter().map(|c| c.values.iter().map(|v| v.to_string()).collect()).collect();
            json!({
                "class_sizes": g.conjugacy_classes().iter().map(Vec::len).collect::<Vec<_>>(),
                "characters": rows,
                "orthogonality": verify_orthogonality(&g, &table),
                "columns": verify_columns(&g, &table),
            })
        }
        Command::Tga { op: TgaOp::Irreps { input } } => {
            let (g, c) = serde_json::from_str::<CocycleSpec>(&inputs.read(input)?)
                .map_err(|e| Error::Parse(format!("cocycle JSON: {e}")))?
                .build(bound)?;
            let irreps = twisted_irreps(&g, &c)?;
            let dims: Vec<usize> = irreps.iter().map(|r| r.dim()).collect();
            json!({
                "group_order": g.order(),
                "modulus": c.modulus(),
                "coboundary": is_coboundary(&g, &c),
                "dimensions": dims,
                "dimension_square_sum": dims.iter().map(|d| d * d).sum::<usize>(),
            })
        }
        Command::Tga { op: TgaOp::Cohomologous { input, other } } => {
            let parse = |t: String| {
                serde_json::from_str::<CocycleSpec>(&t).map_err(|e| Error::Parse(format!("cocycle JSON: {e}")))
            };
            let (g, a) = parse(inputs.read(input)?)?.build(bound)?;
            let (h, b) = parse(inputs.read(other)?)?.build(bound)?;
            if g.order() != h.order() {
                return Err(Error::validation("cocycles live on groups of different orders"));
            }
            let beta = cohomologous(&g, &a, &b);
            json!({
                "cohomologous": beta.is_some(),
                "beta": beta.map(|v| v.iter().map(|z| format!("{}/{}", z.exponent(), z.order())).collect::<Vec<_>>()),
            })
        }
        Command::Clifford { op: CliffordOp::Bijection { input } } => {
            let spec: CliffordInput = serde_json::from_str(&inputs.read(input)?)
                .map_err(|e| Error::Parse(format!("Clifford JSON: {e}")))?;
            let g = spec.group.build(bound)?;
            let gens = spec.normal.iter().map(|w| g.evaluate_word(w)).collect::<Result<Vec<_>, _>>()?;
            let n = g.normal_closure(&gens);
            if n.order() != g.subgroup(&gens).order() {
                return Err(Error::validation("the generated subgroup is not normal"));
            }
            let m = clifford_bijection(&g, &n, &trivial_natural(&g, &n))?;
            let (_, irreps) = normal_irreps(&g, &n)?;
            json!({
                "normal_irreps": irreps.len(),
                "bijection": m.is_bijection(),
                "dimension_sum": m.dimension_sum(),
                "matching": to_value(&m),
            })
        }
        Command::Extquot { op: ExtquotOp::Build { input } } => {
            let d = ActionDatumSpec::from_json(&inputs.read(input)?)?.build(bound)?;
            let q = build_extended_quotient(&d)?;
            json!({ "size": q.len(), "quotient": to_value(&q) })
        }
        Command::Springer { op } => springer_command(op, inputs, bound)?,
        Command::Lparam { op } => lparam_command(op, inputs, cli.jobs)?,
        Command::Examples { case } => {
            let results = examples::run(*case);
            json!({
                "pass": results.iter().all(|r| r.pass),
                "cases": to_value(&results),
            })
        }
    })
}

fn springer_command(op: &SpringerOp, inputs: &mut Inputs, bound: usize) -> Result<Value, Error> {
    Ok(match op {
        SpringerOp::Census { ty, rank } => {
            let ty = group_type(ty)?;
            let c = springer::census(ty, census_dimension(ty, *rank))?;
            json!({ "balanced": c.balanced(), "census": to_value(&c) })
        }
        SpringerOp::Cuspidal { ty, n } => to_value(&springer::cuspidal_pairs(group_type(ty)?, *n)),
        SpringerOp::Classes { ty, n } => to_value(&springer::unipotent_classes(group_type(ty)?, *n)),
        SpringerOp::ComponentGroup { ty, partition } => {
            let parts = partition
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part {s:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let cg = springer::component_group(group_type(ty)?, &Partition::new(parts)?)?;
            json!({
                "order": cg.order(),
                "generators": cg.generator_names(),
                "irreducibles": cg.irreducible_count(),
            })
        }
        SpringerOp::Cocycle { input } => {
            let d = SectionDatum::from_spec(&SectionSpec::from_json(&inputs.read(input)?)?, bound)?;
            let natural = springer::cocycle_from_section(&d)?;
            json!({
                "quotient_order": d.quotient().order(),
                "modulus": natural.modulus(),
                "exponents": natural.exponents(),
                "coboundary": is_coboundary(d.quotient(), &natural),
                "comparison": to_value(&springer::verify_lemma42(&d)?),
            })
        }
    })
}

fn classify_all(params: &[EnhancedParameter], jobs: usize) -> Vec<Value> {
    let classify = |ep: &EnhancedParameter| match lparams::classify(ep) {
        Ok(c) => to_value(&c),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let jobs = jobs.max(1);
    if jobs == 1 || params.len() < 2 {
        return params.iter().map(classify).collect();
    }
    let chunk = params.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = params
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(classify).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker")).collect()
    })
}

fn lparam_command(op: &LparamOp, inputs: &mut Inputs, jobs: usize) -> Result<Value, Error> {
    Ok(match op {
        LparamOp::Classify(p) => to_value(&lparams::classify(&parse_param(&inputs.read(&p.input)?)?)?),
        LparamOp::Support { param, tables } => {
            let ep = parse_param(&inputs.read(&param.input)?)?;
            let tables = tables
                .iter()
                .map(|t| {
                    let raw: SpringerTable = serde_json::from_str(&inputs.read(t)?)
                        .map_err(|e| Error::Parse(format!("Springer table JSON: {e}")))?;
                    let entries = serde_json::to_string(&raw.entries).expect("json");
                    SpringerTable::from_json(raw.group_type, raw.n, &entries)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let cd = lparams::cuspidal_support_with_tables(&ep.parameter(), &ep.enhancement, &tables)?;
            json!({
                "levi": cd.levi_description(),
                "cuspidal": cd.is_cuspidal(),
                "datum": to_value(&cd),
            })
        }
        LparamOp::Component(p) => {
            let ep = parse_param(&inputs.read(&p.input)?)?;
            let class = lparams::bernstein_component(&ep.parameter(), &ep.enhancement)?;
            let quotient = if class.group.is_type_a() {
                Some(to_value(&lparams::component_extended_quotient(&class, &[], None)?))
            } else {
                None
            };
            json!({ "class": to_value(&class), "extended_quotient": quotient })
        }
        LparamOp::Triple(p) => {
            let ep = parse_param(&inputs.read(&p.input)?)?;
            to_value(&lparams::standard_triple(&ep.parameter(), &ep.enhancement)?)
        }
        LparamOp::Batch(p) => {
            let params: Vec<EnhancedParameter> = serde_json::from_str(&inputs.read(&p.input)?)
                .map_err(|e| Error::Parse(format!("L-parameter list JSON: {e}")))?;
            Value::Array(classify_all(&params, jobs))
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotSupported(_) | Error::OrderBound(_) | Error::MatrixBound(_) => 3,
        _ => 2,
    }
}

fn render(cli: &Cli, v: &impl Serialize) -> String {
    if cli.compact {
        serde_json::to_string(v).expect("json")
    } else {
        serde_json::to_string_pretty(v).expect("json")
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.schema {
        emit(&render(&cli, &schema::all()));
        return ExitCode::SUCCESS;
    }
    let Some(command) = &cli.command else {
        eprintln!("no subcommand given; see --help");
        return ExitCode::from(2);
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut inputs = Inputs::new();
    match run(&cli, command, &mut inputs) {
        Ok(result) => {
            let failed = matches!(command, Command::Examples { .. }) && result["pass"] == Value::Bool(false);
            let report = CommandReport {
                command: argv,
                inputs_sha256: inputs.digest(),
                result,
                exact: true,
            };
            emit(&render(&cli, &report));
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
