//! Command-line front end: train, evaluate, cv, predict, stats, export.
//!
//! [`run`] is the whole interface; the `tendmine` binary forwards its argv
//! and standard streams to it. Exit codes are 0 on success, 1 on usage
//! errors (unknown flags, out-of-range values), and 2 on data or I/O errors,
//! which print as `error: ...` on stderr. Dataset paths that do not exist
//! as given are retried under the directory named by `TENDMINE_DATA`.

use std::env;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dataset::{Dataset, DatasetSchema, Instance};
use crate::error::{Error, Result};
use crate::evaluation::{
    cross_validate, evaluate_model, trim_number, EvaluationReport, PriorModel,
};
use crate::induction::{build_tree, InductionConfig, SplitCriterion};
use crate::tree::DecisionTree;
use crate::{parse_arff, parse_csv};

/// Parsed command line: one subcommand plus its inputs and overrides.
#[derive(Debug, Parser)]
#[command(
    name = "tendmine",
    version,
    about = "Decision-tree induction, evaluation, and prediction for nominal datasets"
)]
pub struct CliInvocation {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Induce a decision tree from a labeled dataset
    Train(TrainArgs),
    /// Evaluate a saved tree against a labeled dataset
    Evaluate(EvaluateArgs),
    /// Run stratified k-fold cross-validation on a dataset
    Cv(CvArgs),
    /// Classify rows with a saved tree
    Predict(PredictArgs),
    /// Print attribute-by-class crosstab tables
    Stats(StatsArgs),
    /// Render a saved tree as text or DOT
    Export(ExportArgs),
}

#[derive(Debug, Args)]
struct DataArgs {
    /// Dataset file (.arff or .csv); names that do not exist are looked up
    /// under $TENDMINE_DATA
    data: String,
    /// Class attribute name (default: the last ARFF attribute or CSV column)
    #[arg(long, value_name = "NAME")]
    class: Option<String>,
}

#[derive(Debug, Args)]
struct ConfigArgs {
    /// Split selection criterion
    #[arg(long, value_enum, default_value_t = CriterionArg::GainRatio)]
    criterion: CriterionArg,
    /// Disable pessimistic subtree-replacement pruning
    #[arg(long)]
    no_prune: bool,
    /// Pruning confidence factor in (0, 0.5]
    #[arg(long, value_name = "REAL", default_value_t = 0.25, value_parser = parse_cf)]
    cf: f64,
    /// Minimum total instance weight per leaf (at least 1)
    #[arg(long, value_name = "INT", default_value_t = 2, value_parser = parse_min_leaf)]
    min_leaf: usize,
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    config: ConfigArgs,
    /// Write the serialized tree here instead of stdout
    #[arg(long, short = 'o', value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    /// Saved tree file (tendmine-tree v1)
    model: String,
    #[command(flatten)]
    data: DataArgs,
    /// Report format
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Debug, Args)]
struct CvArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    config: ConfigArgs,
    /// Number of folds (at least 2)
    #[arg(long, value_name = "INT", default_value_t = 10, value_parser = parse_folds)]
    folds: usize,
    /// Shuffle seed for fold assignment
    #[arg(long, value_name = "INT", default_value_t = 1)]
    seed: u64,
    /// Report format
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Debug, Args)]
struct PredictArgs {
    /// Saved tree file (tendmine-tree v1)
    model: String,
    #[command(flatten)]
    data: DataArgs,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[command(flatten)]
    data: DataArgs,
}

#[derive(Debug, Args)]
struct ExportArgs {
    /// Saved tree file (tendmine-tree v1)
    model: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = ExportFormat::Text)]
    format: ExportFormat,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CriterionArg {
    #[value(name = "gainratio")]
    GainRatio,
    #[value(name = "infogain")]
    InfoGain,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExportFormat {
    Text,
    Dot,
}

fn parse_cf(text: &str) -> std::result::Result<f64, String> {
    let value: f64 = text
        .parse()
        .map_err(|_| format!("`{text}` is not a number"))?;
    if value > 0.0 && value <= 0.5 {
        Ok(value)
    } else {
        Err("confidence factor must lie in (0, 0.5]".to_string())
    }
}

fn parse_min_leaf(text: &str) -> std::result::Result<usize, String> {
    let value: usize = text
        .parse()
        .map_err(|_| format!("`{text}` is not a count"))?;
    if value >= 1 {
        Ok(value)
    } else {
        Err("minimum leaf weight must be at least 1".to_string())
    }
}

fn parse_folds(text: &str) -> std::result::Result<usize, String> {
    let value: usize = text
        .parse()
        .map_err(|_| format!("`{text}` is not a count"))?;
    if value >= 2 {
        Ok(value)
    } else {
        Err("fold count must be at least 2".to_string())
    }
}

impl ConfigArgs {
    fn induction_config(&self) -> InductionConfig {
        InductionConfig {
            criterion: match self.criterion {
                CriterionArg::GainRatio => SplitCriterion::GainRatio,
                CriterionArg::InfoGain => SplitCriterion::InfoGain,
            },
            min_instances_per_leaf: self.min_leaf,
            confidence_factor: self.cf,
            pruning: !self.no_prune,
            ..InductionConfig::default()
        }
    }
}

/// Parses argv and executes one subcommand, returning the process exit code.
///
/// `argv` must include the program name as its first element. Reports and
/// predictions go to `stdout`; usage and runtime errors go to `stderr`.
pub fn run<I, T, O, E>(argv: I, stdout: &mut O, stderr: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    O: Write,
    E: Write,
{
    let invocation = match CliInvocation::try_parse_from(argv) {
        Ok(invocation) => invocation,
        Err(e) => {
            let rendered = e.render();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    1
                }
            };
        }
    };
    match dispatch(invocation, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn dispatch<O: Write>(invocation: CliInvocation, out: &mut O) -> Result<()> {
    match invocation.command {
        Command::Train(args) => train(&args, out),
        Command::Evaluate(args) => evaluate(&args, out),
        Command::Cv(args) => cv(&args, out),
        Command::Predict(args) => predict(&args, out),
        Command::Stats(args) => stats(&args, out),
        Command::Export(args) => export(&args, out),
    }
}

/// Returns `path` if it exists; otherwise retries relative paths under
/// `data_dir`, falling back to the original so error messages name what the
/// user typed.
fn resolve_in(path: &str, data_dir: Option<&Path>) -> PathBuf {
    let direct = PathBuf::from(path);
    if direct.exists() || !direct.is_relative() {
        return direct;
    }
    if let Some(dir) = data_dir {
        let candidate = dir.join(&direct);
        if candidate.exists() {
            return candidate;
        }
    }
    direct
}

fn resolve_data_path(path: &str) -> PathBuf {
    let dir = env::var_os("TENDMINE_DATA").map(PathBuf::from);
    resolve_in(path, dir.as_deref())
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read `{}`: {e}", path.display())))
}

/// Parses a dataset file, deciding ARFF versus CSV by extension and falling
/// back to sniffing for a leading `@` directive.
fn parse_table(path: &Path, text: &str, class: Option<&str>) -> Result<Dataset> {
    let extension = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    let arff = match extension.as_deref() {
        Some("arff") => true,
        Some("csv") => false,
        _ => text
            .lines()
            .map(str::trim)
            .find(|line| !line.is_empty() && !line.starts_with('%'))
            .is_some_and(|line| line.starts_with('@')),
    };
    if arff {
        let d = parse_arff(text)?;
        match class {
            Some(name) => d.with_class(name),
            None => Ok(d),
        }
    } else {
        parse_csv(text, class)
    }
}

fn load_dataset(args: &DataArgs) -> Result<Dataset> {
    let path = resolve_data_path(&args.data);
    let text = read_file(&path)?;
    parse_table(&path, &text, args.class.as_deref())
}

fn load_model(path_text: &str) -> Result<DecisionTree> {
    let path = resolve_data_path(path_text);
    let text = read_file(&path)?;
    DecisionTree::from_model_text(&text)
}

fn train<O: Write>(args: &TrainArgs, out: &mut O) -> Result<()> {
    let d = load_dataset(&args.data)?;
    let tree = build_tree(&d, &args.config.induction_config())?;
    let text = tree.to_model_text();
    match &args.output {
        Some(path) => fs::write(path, &text)
            .map_err(|e| Error::invalid(format!("cannot write `{}`: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn render_report<O: Write>(
    report: &EvaluationReport,
    format: ReportFormat,
    out: &mut O,
) -> Result<()> {
    let text = match format {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Json => report.to_json(),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn evaluate<O: Write>(args: &EvaluateArgs, out: &mut O) -> Result<()> {
    let tree = load_model(&args.model)?;
    let d = load_dataset(&args.data)?;
    let prior = PriorModel::from_distribution(&d.class_distribution());
    let report = evaluate_model(&tree, &d, &prior)?;
    render_report(&report, args.format, out)
}

fn cv<O: Write>(args: &CvArgs, out: &mut O) -> Result<()> {
    let d = load_dataset(&args.data)?;
    let report = cross_validate(&d, args.folds, args.seed, &args.config.induction_config())?;
    render_report(&report, args.format, out)
}

/// Re-expresses `input` rows in the model schema, matching attributes and
/// values by name. The class column may be absent or carry unknown labels;
/// it is not consulted for prediction.
fn remap_for_model(input: &Dataset, schema: &DatasetSchema) -> Result<Vec<Instance>> {
    if input.schema().as_ref() == schema {
        return Ok(input.instances().to_vec());
    }
    let class_index = schema.class_index();
    let mut sources = Vec::with_capacity(schema.attributes().len());
    for (a, spec) in schema.attributes().iter().enumerate() {
        match input.schema().attribute_index(spec.name()) {
            Some(i) => sources.push(Some(i)),
            None if a == class_index => sources.push(None),
            None => {
                return Err(Error::schema(format!(
                    "input data has no attribute named `{}`",
                    spec.name()
                )))
            }
        }
    }
    let mut rows = Vec::with_capacity(input.len());
    for (n, instance) in input.instances().iter().enumerate() {
        let mut values = Vec::with_capacity(sources.len());
        for (a, source) in sources.iter().enumerate() {
            let spec = &schema.attributes()[a];
            let mapped = match source {
                None => None,
                Some(i) => match instance.value(*i) {
                    None => None,
                    Some(v) => {
                        let token = &input.schema().attributes()[*i].values()[v];
                        match spec.value_index(token) {
                            Some(m) => Some(m),
                            None if a == class_index => None,
                            None => {
                                return Err(Error::schema(format!(
                                    "row {}: value `{token}` is not in the domain of `{}`",
                                    n + 1,
                                    spec.name()
                                )))
                            }
                        }
                    }
                },
            };
            values.push(mapped);
        }
        rows.push(Instance::with_weight(values, instance.weight()));
    }
    Ok(rows)
}

fn predict<O: Write>(args: &PredictArgs, out: &mut O) -> Result<()> {
    let tree = load_model(&args.model)?;
    let input = load_dataset(&args.data)?;
    let class_values = tree.schema().class_attribute().values().to_vec();
    for instance in remap_for_model(&input, tree.schema())? {
        let prediction = tree.classify(&instance)?;
        writeln!(
            out,
            "{}\t{}",
            class_values[prediction.label],
            trim_number(prediction.probabilities[prediction.label], 4)
        )?;
    }
    Ok(())
}

fn stats<O: Write>(args: &StatsArgs, out: &mut O) -> Result<()> {
    let d = load_dataset(&args.data)?;
    let schema = d.schema().clone();
    let class_names = schema.class_attribute().values();
    for (position, attribute) in schema.candidate_attributes().into_iter().enumerate() {
        if position > 0 {
            writeln!(out)?;
        }
        let spec = &schema.attributes()[attribute];
        writeln!(
            out,
            "=== {} x {} ===",
            spec.name(),
            schema.class_attribute().name()
        )?;
        writeln!(out)?;

        let crosstab = d.crosstab(attribute)?;
        let row_sums = crosstab.row_sums();
        let column_sums = crosstab.column_sums();

        let label_width = spec
            .values()
            .iter()
            .map(String::len)
            .chain(["total".len()])
            .max()
            .unwrap_or(5)
            + 2;
        let mut columns: Vec<String> = class_names.to_vec();
        columns.push("total".to_string());
        let cell_width = crosstab
            .cells()
            .iter()
            .flatten()
            .chain(row_sums.iter())
            .chain(column_sums.iter())
            .chain([crosstab.total()].iter())
            .map(|w| trim_number(*w, 4).len())
            .chain(columns.iter().map(String::len))
            .max()
            .unwrap_or(5)
            + 2;

        let mut header = format!("{:<label_width$}", "");
        for column in &columns {
            header.push_str(&format!("{column:>cell_width$}"));
        }
        writeln!(out, "{header}")?;
        for (v, row) in crosstab.cells().iter().enumerate() {
            let mut line = format!("{:<label_width$}", spec.values()[v]);
            for cell in row {
                line.push_str(&format!("{:>cell_width$}", trim_number(*cell, 4)));
            }
            line.push_str(&format!("{:>cell_width$}", trim_number(row_sums[v], 4)));
            writeln!(out, "{line}")?;
        }
        let mut totals = format!("{:<label_width$}", "total");
        for sum in &column_sums {
            totals.push_str(&format!("{:>cell_width$}", trim_number(*sum, 4)));
        }
        totals.push_str(&format!("{:>cell_width$}", trim_number(crosstab.total(), 4)));
        writeln!(out, "{totals}")?;
    }
    Ok(())
}

fn export<O: Write>(args: &ExportArgs, out: &mut O) -> Result<()> {
    let tree = load_model(&args.model)?;
    let text = match args.format {
        ExportFormat::Text => tree.export_text(),
        ExportFormat::Dot => tree.export_dot(),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}
