//! Command-line front end.
//!
//! Exit statuses: 0 success, 1 usage error, 2 unreadable or malformed input,
//! 3 constraint violation (e.g. a non-monotone property without override).

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{greedy_color_by_core, max_clique_localized, segmentation, Thresholds};
use crate::engine::{
    core_hierarchy, order_independence_fuzz, p_core_at_level, CoreHierarchy, CoreKind, PeelOptions,
    TieBreakPolicy,
};
use crate::error::Error;
use crate::graph::{BuildOptions, MergeRule, Network, VertexId};
use crate::pajek::{export_dot, parse_edge_list, parse_net, SizeScale, WeightClasses};
use crate::property::{check_monotonicity, Property, VertexProperty};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CONSTRAINT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "corekit", version, about = "Generalized core decomposition of networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// p-core at a level: members and deletion trace
    Core {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        peel: PeelArgs,
        #[arg(long)]
        level: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Core number of every vertex as CSV
    Hierarchy {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        peel: PeelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Vertex counts per core-number threshold interval
    Segment {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        peel: PeelArgs,
        /// geometric:<t1>,<ratio>,<count> or list:<v1>,<v2>,...
        #[arg(long, default_value = "geometric:1,2,21")]
        thresholds: String,
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Greedy coloring in descending degree-core order
    Color {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Maximum clique searched inside degree cores
    Clique {
        #[command(flatten)]
        input: InputArgs,
        /// largest clique size to try
        #[arg(long)]
        size_limit: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Graphviz DOT with vertex sizes from core numbers
    ExportDot {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        peel: PeelArgs,
        #[arg(long, default_value = "sqrt")]
        size_scale: SizeScale,
        /// geometric:<t1>,<ratio> or list:<v1>,<v2>,...
        #[arg(long, default_value = "geometric:1000,2")]
        weight_classes: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample monotonicity and fuzz deletion order
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        peel: PeelArgs,
        /// level for the order fuzz; defaults to the largest core number
        #[arg(long)]
        level: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 20)]
        fuzz_trials: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Net,
    Edgelist,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// input file, `-` for stdin
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "net")]
    pub format: Format,
    /// read an edge list as arcs
    #[arg(long)]
    pub directed: bool,
    /// how parallel lines are combined: sum|max|min|first
    #[arg(long, default_value = "sum")]
    pub merge: MergeRule,
}

#[derive(Debug, Args)]
pub struct PeelArgs {
    #[arg(long, default_value = "p1")]
    pub property: Property,
    /// lowest_id | highest_id | random | order:<label>,<label>,...
    #[arg(long, default_value = "lowest_id")]
    pub tie_break: String,
    #[arg(long)]
    pub allow_non_monotone: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// output file; stdout when absent
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Input(e.to_string()),
            other => Failure::Library(other),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Input(_) => EXIT_INPUT,
            Failure::Library(_) => EXIT_CONSTRAINT,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Input(m) => m.clone(),
            Failure::Library(e) => e.to_string(),
        }
    }
}

/// Parse `args` (including the program name) and run. Returns the exit status.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli.command).and_then(|(text, output)| emit(&text, output.as_ref(), stdout)) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "corekit: {}", f.message());
            f.exit_code()
        }
    }
}

fn emit(text: &str, path: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(format!("stdout: {e}"))),
    }
}

fn load(input: &InputArgs, property: Option<Property>) -> Result<Network<f64>, Failure> {
    let mut text = String::new();
    let read = if input.input.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(&input.input).map(|t| text = t)
    };
    read.map_err(|e| Failure::Input(format!("{}: {e}", input.input.display())))?;
    let doc = match input.format {
        Format::Net => parse_net::<f64>(&text)?,
        Format::Edgelist => parse_edge_list::<f64>(&text, input.directed)?,
    };
    let options = BuildOptions {
        merge: input.merge,
        require_nonnegative: property == Some(Property::WeightSum),
    };
    Ok(doc.to_network(options)?)
}

fn tie_break(spec: &str, seed: u64, net: &Network<f64>) -> Result<TieBreakPolicy, Failure> {
    match spec {
        "lowest_id" => Ok(TieBreakPolicy::LowestId),
        "highest_id" => Ok(TieBreakPolicy::HighestId),
        "random" => Ok(TieBreakPolicy::SeededRandom(seed)),
        _ => {
            let labels = spec.strip_prefix("order:").ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown tie-break `{spec}` (lowest_id|highest_id|random|order:<labels>)"
                ))
            })?;
            let order = labels
                .split(',')
                .map(|l| {
                    net.vertex_by_label(l.trim())
                        .ok_or_else(|| Failure::Usage(format!("tie-break order: unknown vertex `{l}`")))
                })
                .collect::<Result<Vec<VertexId>, _>>()?;
            Ok(TieBreakPolicy::Preference(order))
        }
    }
}

fn peel_options(peel: &PeelArgs, net: &Network<f64>) -> Result<PeelOptions, Failure> {
    Ok(PeelOptions {
        tie_break: tie_break(&peel.tie_break, peel.seed, net)?,
        allow_non_monotone: peel.allow_non_monotone,
        always_recompute: false,
    })
}

fn hierarchy_for(net: &Network<f64>, peel: &PeelArgs) -> Result<CoreHierarchy<f64>, Failure> {
    Ok(core_hierarchy(net, &peel.property, &peel_options(peel, net)?)?)
}

fn execute(command: &Command) -> Result<(String, Option<PathBuf>), Failure> {
    let mut out = String::new();
    let output = match command {
        Command::Core { input, peel, level, output } => {
            let net = load(input, Some(peel.property))?;
            let result = p_core_at_level(&net, &peel.property, *level, &peel_options(peel, &net)?)?;
            let kind = match result.kind {
                CoreKind::Unique => "p-core",
                CoreKind::OrderDependentFixpoint => "order-dependent fixpoint",
            };
            let _ = writeln!(out, "# level {} property {} ({kind})", level, peel.property);
            let _ = writeln!(out, "# members {}", result.members.len());
            for v in &result.members {
                let _ = writeln!(out, "{}", net.label(*v));
            }
            let _ = writeln!(out, "# deletion trace: vertex,value");
            for (v, value) in &result.trace {
                let _ = writeln!(out, "{},{}", net.label(*v), value);
            }
            output
        }
        Command::Hierarchy { input, peel, output } => {
            let net = load(input, Some(peel.property))?;
            let h = hierarchy_for(&net, peel)?;
            out.push_str("vertex,core\n");
            for v in net.vertices() {
                let _ = writeln!(out, "{},{}", net.label(v), h.core_number(v));
            }
            output
        }
        Command::Segment { input, peel, thresholds, csv, output } => {
            let thresholds: Thresholds<f64> = thresholds.parse().map_err(Failure::Usage)?;
            let net = load(input, Some(peel.property))?;
            let table = segmentation(&hierarchy_for(&net, peel)?, &thresholds);
            if *csv {
                out.push_str(&table.render_csv());
            } else {
                out.push_str(&table.render_text());
                let _ = writeln!(
                    out,
                    "# core number <= {}: {}; above {}: {}",
                    table.start,
                    table.at_or_below_start,
                    thresholds.values().last().map_or(String::from("-"), f64::to_string),
                    table.above_last
                );
            }
            output
        }
        Command::Color { input, output } => {
            let net = load(input, Some(Property::Degree))?;
            let h = core_hierarchy(&net, &Property::Degree, &PeelOptions::default())?;
            let coloring = greedy_color_by_core(&net, &h)?;
            out.push_str("vertex,color\n");
            for v in net.vertices() {
                let _ = writeln!(out, "{},{}", net.label(v), coloring.color[v.0]);
            }
            let core = h.max_core().unwrap_or(0.0);
            let _ = writeln!(out, "# colors used {}; bound 1 + core(G) = {}", coloring.colors_used, 1.0 + core);
            output
        }
        Command::Clique { input, size_limit, output } => {
            let net = load(input, Some(Property::Degree))?;
            let clique = max_clique_localized(&net, *size_limit)?;
            let _ = writeln!(out, "# clique size {}", clique.len());
            for v in &clique {
                let _ = writeln!(out, "{}", net.label(*v));
            }
            output
        }
        Command::ExportDot { input, peel, size_scale, weight_classes, output } => {
            let classes = parse_weight_classes(weight_classes)?;
            let net = load(input, Some(peel.property))?;
            let h = hierarchy_for(&net, peel)?;
            out.push_str(&export_dot(&net, &h, *size_scale, &classes)?);
            output
        }
        Command::Check { input, peel, level, trials, fuzz_trials, output } => {
            let net = load(input, Some(peel.property))?;
            let pf = &peel.property;
            let monotone = VertexProperty::<f64>::is_monotone(pf);
            let _ = writeln!(
                out,
                "property {pf}: declared {}",
                if monotone { "monotone" } else { "non-monotone" }
            );
            let found = check_monotonicity(pf, &net, *trials, peel.seed)?;
            let _ = writeln!(out, "monotonicity: {trials} trials, {} counterexamples", found.len());
            for c in found.iter().take(5) {
                let names = |s: &[VertexId]| s.iter().map(|v| net.label(*v)).collect::<Vec<_>>().join(" ");
                let _ = writeln!(
                    out,
                    "  vertex {}: {} on {{{}}} > {} on {{{}}}",
                    net.label(c.vertex),
                    c.smaller_value,
                    names(&c.smaller),
                    c.larger_value,
                    names(&c.larger)
                );
            }
            let mut options = peel_options(peel, &net)?;
            options.allow_non_monotone = true;
            let level = match level {
                Some(t) => *t,
                None => core_hierarchy(&net, pf, &options)?.max_core().unwrap_or(0.0),
            };
            let same = order_independence_fuzz(&net, pf, level, *fuzz_trials, peel.seed, true)?;
            let _ = writeln!(
                out,
                "order independence at level {level}: {fuzz_trials} trials, {}",
                if same { "identical cores" } else { "cores differ" }
            );
            output
        }
    };
    Ok((out, output.output.clone()))
}

fn parse_weight_classes(spec: &str) -> Result<WeightClasses, Failure> {
    let bad = || Failure::Usage(format!("weight classes `{spec}`: expected geometric:<t1>,<ratio> or list:<v1>,..."));
    let (kind, args) = spec.split_once(':').ok_or_else(bad)?;
    let values = args
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| bad())?;
    let classes = match (kind, values.as_slice()) {
        ("geometric", &[first, ratio]) => WeightClasses::Geometric { first, ratio },
        ("list", _) => WeightClasses::Thresholds(values),
        _ => return Err(bad()),
    };
    classes.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(classes)
}
