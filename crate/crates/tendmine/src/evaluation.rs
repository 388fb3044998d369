//! Classifier evaluation: confusion matrices, per-class rates, probabilistic
//! error measures, information scores, and stratified cross-validation.
//!
//! Reports follow the long-standing Weka layout: a summary block (accuracy,
//! kappa, K&B information score, SF class complexity, absolute and squared
//! errors with prior-relative variants), a detailed per-class table, and the
//! confusion matrix. Relative metrics compare against a [`PriorModel`], the
//! add-one-smoothed class prior of the training data, so they stay finite.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dataset::{ClassDistribution, Dataset, DatasetSchema};
use crate::error::{Error, Result};
use crate::folds::stratified_folds;
use crate::induction::{build_tree, InductionConfig};
use crate::tree::{DecisionTree, Prediction};

/// Smallest probability admitted to scheme-complexity logarithms.
const SCHEME_PROBABILITY_FLOOR: f64 = 1e-45;

/// Weighted confusion counts: rows are actual classes, columns predicted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConfusionMatrix {
    cells: Vec<Vec<f64>>,
}

impl ConfusionMatrix {
    /// An all-zero `class_count` by `class_count` matrix.
    pub fn new(class_count: usize) -> Self {
        ConfusionMatrix {
            cells: vec![vec![0.0; class_count]; class_count],
        }
    }

    /// Wraps an existing square grid of non-negative counts.
    pub fn from_cells(cells: Vec<Vec<f64>>) -> Result<Self> {
        let k = cells.len();
        if k == 0 {
            return Err(Error::invalid("a confusion matrix needs at least one class"));
        }
        for row in &cells {
            if row.len() != k {
                return Err(Error::invalid(format!(
                    "confusion matrix rows must have {k} columns"
                )));
            }
            if row.iter().any(|c| !c.is_finite() || *c < 0.0) {
                return Err(Error::invalid(
                    "confusion matrix cells must be finite and non-negative",
                ));
            }
        }
        Ok(ConfusionMatrix { cells })
    }

    pub fn record(&mut self, actual: usize, predicted: usize, weight: f64) {
        self.cells[actual][predicted] += weight;
    }

    pub fn cells(&self) -> &[Vec<f64>] {
        &self.cells
    }

    pub fn class_count(&self) -> usize {
        self.cells.len()
    }

    pub fn total(&self) -> f64 {
        self.cells.iter().flatten().sum()
    }

    /// Summed diagonal weight (correctly classified).
    pub fn correct_weight(&self) -> f64 {
        (0..self.cells.len()).map(|i| self.cells[i][i]).sum()
    }

    /// Row sums: weight per actual class.
    pub fn actual_totals(&self) -> Vec<f64> {
        self.cells.iter().map(|row| row.iter().sum()).collect()
    }

    /// Column sums: weight per predicted class.
    pub fn predicted_totals(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.cells.len()];
        for row in &self.cells {
            for (sum, cell) in sums.iter_mut().zip(row) {
                *sum += cell;
            }
        }
        sums
    }
}

/// One class's row of the detailed accuracy table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMetricsRow {
    pub tp_rate: f64,
    pub fp_rate: f64,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    /// Absent when the class has no positives or no negatives.
    pub roc_area: Option<f64>,
}

/// Add-one-smoothed class prior, the baseline for relative metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorModel {
    probabilities: Vec<f64>,
}

impl PriorModel {
    /// Wraps explicit per-class probabilities (positive, summing to 1).
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::invalid("a prior needs at least one class"));
        }
        if probabilities.iter().any(|p| !p.is_finite() || *p <= 0.0) {
            return Err(Error::invalid("prior probabilities must be positive"));
        }
        let sum: f64 = probabilities.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!(
                "prior probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(PriorModel { probabilities })
    }

    /// Estimates the prior from training class weights as
    /// `(w_c + 1) / (W + k)`.
    pub fn from_distribution(distribution: &ClassDistribution) -> Self {
        let k = distribution.class_count() as f64;
        let total = distribution.total();
        PriorModel {
            probabilities: distribution
                .weights()
                .iter()
                .map(|w| (w + 1.0) / (total + k))
                .collect(),
        }
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability(&self, class: usize) -> f64 {
        self.probabilities[class]
    }

    /// Entropy of the prior in bits.
    pub fn entropy_bits(&self) -> f64 {
        -self
            .probabilities
            .iter()
            .filter(|p| **p > 0.0)
            .map(|p| p * p.log2())
            .sum::<f64>()
    }
}

/// Absolute and squared errors with their prior-relative percentages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorMetrics {
    pub mae: f64,
    pub rmse: f64,
    pub rae_percent: f64,
    pub rrse_percent: f64,
}

/// Kononenko-Bratko information score totals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KbInformation {
    pub relative_percent: f64,
    pub total_bits: f64,
    pub bits_per_instance: f64,
}

/// SF class complexity: bits to encode the actual classes under the prior
/// (order 0) versus under the model (scheme).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SfComplexity {
    pub order0_bits: f64,
    pub scheme_bits: f64,
    pub improvement_bits: f64,
}

/// The full metric suite for one evaluation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub correct_count: f64,
    pub incorrect_count: f64,
    pub correct_percent: f64,
    pub kappa: f64,
    pub kb_relative_percent: f64,
    pub kb_total_bits: f64,
    pub kb_bits_per_instance: f64,
    pub class_complexity_order0_bits: f64,
    pub class_complexity_scheme_bits: f64,
    pub sf_improvement_bits: f64,
    pub mae: f64,
    pub rmse: f64,
    pub rae_percent: f64,
    pub rrse_percent: f64,
    pub total_instances: f64,
    pub per_class: Vec<ClassMetricsRow>,
    pub confusion: ConfusionMatrix,
    pub class_names: Vec<String>,
}

/// Cohen's kappa; defined as 0 when chance agreement is total.
pub fn kappa(m: &ConfusionMatrix) -> Result<f64> {
    let total = m.total();
    if total <= 0.0 {
        return Err(Error::invalid(
            "kappa requires a confusion matrix with positive total weight",
        ));
    }
    let observed = m.correct_weight() / total;
    let expected: f64 = m
        .actual_totals()
        .iter()
        .zip(m.predicted_totals())
        .map(|(a, p)| a * p)
        .sum::<f64>()
        / (total * total);
    let denominator = 1.0 - expected;
    if denominator <= f64::EPSILON {
        return Ok(0.0);
    }
    Ok((observed - expected) / denominator)
}

/// Area under the ROC curve for `(score, is_positive, weight)` items.
///
/// Computed as the probability that a random positive outranks a random
/// negative, counting ties as half (the Mann-Whitney midrank convention).
/// Returns `None` when either class has no weight.
pub fn roc_area(items: &[(f64, bool, f64)]) -> Option<f64> {
    let mut sorted: Vec<(f64, bool, f64)> = items
        .iter()
        .copied()
        .filter(|(_, _, weight)| *weight > 0.0)
        .collect();
    let positive_total: f64 = sorted.iter().filter(|i| i.1).map(|i| i.2).sum();
    let negative_total: f64 = sorted.iter().filter(|i| !i.1).map(|i| i.2).sum();
    if positive_total <= 0.0 || negative_total <= 0.0 {
        return None;
    }
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut ranked_pairs = 0.0;
    let mut negatives_below = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut positives = 0.0;
        let mut negatives = 0.0;
        let mut j = i;
        while j < sorted.len() && sorted[j].0 == sorted[i].0 {
            if sorted[j].1 {
                positives += sorted[j].2;
            } else {
                negatives += sorted[j].2;
            }
            j += 1;
        }
        ranked_pairs += positives * (negatives_below + negatives / 2.0);
        negatives_below += negatives;
        i = j;
    }
    Some(ranked_pairs / (positive_total * negative_total))
}

/// Computes one class's accuracy-table row from the confusion matrix, with
/// the ROC area taken from `scores` when provided.
pub fn per_class_metrics(
    m: &ConfusionMatrix,
    class: usize,
    scores: Option<&[(f64, bool, f64)]>,
) -> Result<ClassMetricsRow> {
    if class >= m.class_count() {
        return Err(Error::invalid(format!(
            "class index {class} is out of range for {} classes",
            m.class_count()
        )));
    }
    let total = m.total();
    let true_positive = m.cells()[class][class];
    let actual = m.actual_totals()[class];
    let predicted = m.predicted_totals()[class];
    let false_positive = predicted - true_positive;

    let ratio = |num: f64, den: f64| if den > 0.0 { num / den } else { 0.0 };
    let tp_rate = ratio(true_positive, actual);
    let fp_rate = ratio(false_positive, total - actual);
    let precision = ratio(true_positive, predicted);
    let recall = tp_rate;
    let f_measure = ratio(2.0 * precision * recall, precision + recall);
    Ok(ClassMetricsRow {
        tp_rate,
        fp_rate,
        precision,
        recall,
        f_measure,
        roc_area: scores.and_then(roc_area),
    })
}

/// Mean absolute error contributions of one probability vector against the
/// indicator vector of `actual`, averaged over classes.
fn indicator_errors(probabilities: &[f64], actual: usize) -> (f64, f64) {
    let k = probabilities.len() as f64;
    let mut absolute = 0.0;
    let mut squared = 0.0;
    for (c, &q) in probabilities.iter().enumerate() {
        let delta = q - if c == actual { 1.0 } else { 0.0 };
        absolute += delta.abs();
        squared += delta * delta;
    }
    (absolute / k, squared / k)
}

fn percent_ratio(numerator: f64, denominator: f64) -> f64 {
    if denominator > 0.0 {
        100.0 * numerator / denominator
    } else {
        0.0
    }
}

#[derive(Default)]
struct ErrorSums {
    weight: f64,
    absolute: f64,
    squared: f64,
    prior_absolute: f64,
    prior_squared: f64,
}

impl ErrorSums {
    fn add(&mut self, probabilities: &[f64], prior: &[f64], actual: usize, weight: f64) {
        let (absolute, squared) = indicator_errors(probabilities, actual);
        let (prior_absolute, prior_squared) = indicator_errors(prior, actual);
        self.weight += weight;
        self.absolute += weight * absolute;
        self.squared += weight * squared;
        self.prior_absolute += weight * prior_absolute;
        self.prior_squared += weight * prior_squared;
    }

    fn finish(&self) -> ErrorMetrics {
        ErrorMetrics {
            mae: self.absolute / self.weight,
            rmse: (self.squared / self.weight).sqrt(),
            rae_percent: percent_ratio(self.absolute, self.prior_absolute),
            rrse_percent: percent_ratio(self.squared.sqrt(), self.prior_squared.sqrt()),
        }
    }
}

fn check_aligned(
    predictions: &[Prediction],
    actuals: &[usize],
    prior: &PriorModel,
    allow_empty: bool,
) -> Result<()> {
    if predictions.len() != actuals.len() {
        return Err(Error::invalid(format!(
            "{} predictions but {} actual labels",
            predictions.len(),
            actuals.len()
        )));
    }
    if predictions.is_empty() && !allow_empty {
        return Err(Error::invalid("no predictions to evaluate"));
    }
    let k = prior.probabilities().len();
    for (i, (prediction, &actual)) in predictions.iter().zip(actuals).enumerate() {
        if prediction.probabilities.len() != k {
            return Err(Error::invalid(format!(
                "prediction {i} has {} probabilities but the prior has {k}",
                prediction.probabilities.len()
            )));
        }
        if actual >= k {
            return Err(Error::invalid(format!(
                "actual class {actual} of instance {i} is out of range"
            )));
        }
    }
    Ok(())
}

/// MAE, RMSE, and their percentages relative to the prior predictor.
///
/// Errors use the indicator-vector convention: each instance contributes the
/// per-class mean of `|q_c - y_c|` (and its square), where `y` is 1 at the
/// actual class and 0 elsewhere. The prior predictor always outputs the
/// `PriorModel` probabilities; relative metrics are 0 when it makes no error.
pub fn probabilistic_error_metrics(
    predictions: &[Prediction],
    actuals: &[usize],
    prior: &PriorModel,
) -> Result<ErrorMetrics> {
    check_aligned(predictions, actuals, prior, false)?;
    let mut sums = ErrorSums::default();
    for (prediction, &actual) in predictions.iter().zip(actuals) {
        sums.add(&prediction.probabilities, prior.probabilities(), actual, 1.0);
    }
    Ok(sums.finish())
}

/// Per-instance information gained over the prior, in bits.
///
/// With `p` the prior and `q` the predicted probability of the actual class,
/// the score is `log2 q - log2 p` when `q >= p` and
/// `-(log2 (1-q) - log2 (1-p))` otherwise, so confidently wrong predictions
/// score negative. Probabilities must lie strictly inside (0, 1).
fn kb_score(q: f64, p: f64) -> Result<f64> {
    for (what, value) in [("predicted", q), ("prior", p)] {
        if !(value > 0.0 && value < 1.0) {
            return Err(Error::invalid(format!(
                "{what} probability {value} must lie strictly inside (0, 1)"
            )));
        }
    }
    Ok(if q >= p {
        q.log2() - p.log2()
    } else {
        -((1.0 - q).log2() - (1.0 - p).log2())
    })
}

/// Kononenko-Bratko information score of predictions against a prior.
///
/// `relative_percent` sums each instance's score as a percentage of the
/// prior entropy, so it can exceed 100.
pub fn kb_information(
    predictions: &[Prediction],
    actuals: &[usize],
    prior: &PriorModel,
) -> Result<KbInformation> {
    check_aligned(predictions, actuals, prior, false)?;
    let prior_entropy = prior.entropy_bits();
    let mut total_bits = 0.0;
    let mut relative_percent = 0.0;
    for (prediction, &actual) in predictions.iter().zip(actuals) {
        let score = kb_score(prediction.probabilities[actual], prior.probability(actual))?;
        total_bits += score;
        relative_percent += 100.0 * score / prior_entropy;
    }
    Ok(KbInformation {
        relative_percent,
        total_bits,
        bits_per_instance: total_bits / predictions.len() as f64,
    })
}

/// SF class complexity of predictions against a prior.
///
/// `order0_bits` encodes the actual classes under the prior,
/// `scheme_bits` under the model (probabilities clamped at 1e-45 before the
/// logarithm), and `improvement_bits` is their difference.
pub fn sf_complexity(
    predictions: &[Prediction],
    actuals: &[usize],
    prior: &PriorModel,
) -> Result<SfComplexity> {
    check_aligned(predictions, actuals, prior, true)?;
    let mut order0_bits = 0.0;
    let mut scheme_bits = 0.0;
    for (prediction, &actual) in predictions.iter().zip(actuals) {
        order0_bits -= prior.probability(actual).log2();
        scheme_bits -= prediction.probabilities[actual]
            .max(SCHEME_PROBABILITY_FLOOR)
            .log2();
    }
    Ok(SfComplexity {
        order0_bits,
        scheme_bits,
        improvement_bits: order0_bits - scheme_bits,
    })
}

struct EvaluationRecord {
    probabilities: Vec<f64>,
    label: usize,
    actual: usize,
    weight: f64,
    prior_id: usize,
}

/// Accumulates per-instance predictions, possibly across folds with
/// different priors, and computes the pooled report.
struct Evaluator {
    class_names: Vec<String>,
    priors: Vec<PriorModel>,
    records: Vec<EvaluationRecord>,
}

impl Evaluator {
    fn new(schema: &DatasetSchema) -> Self {
        Evaluator {
            class_names: schema.class_attribute().values().to_vec(),
            priors: Vec::new(),
            records: Vec::new(),
        }
    }

    fn add_prior(&mut self, prior: PriorModel) -> usize {
        self.priors.push(prior);
        self.priors.len() - 1
    }

    fn record(&mut self, prediction: Prediction, actual: usize, weight: f64, prior_id: usize) {
        self.records.push(EvaluationRecord {
            probabilities: prediction.probabilities,
            label: prediction.label,
            actual,
            weight,
            prior_id,
        });
    }

    fn finish(self) -> Result<EvaluationReport> {
        if self.records.is_empty() {
            return Err(Error::invalid("no instances were evaluated"));
        }
        let k = self.class_names.len();
        let mut confusion = ConfusionMatrix::new(k);
        let mut sums = ErrorSums::default();
        let mut kb_total_bits = 0.0;
        let mut kb_relative_percent = 0.0;
        let mut order0_bits = 0.0;
        let mut scheme_bits = 0.0;
        for record in &self.records {
            let prior = &self.priors[record.prior_id];
            confusion.record(record.actual, record.label, record.weight);
            sums.add(
                &record.probabilities,
                prior.probabilities(),
                record.actual,
                record.weight,
            );
            let p = prior.probability(record.actual);
            let q = record.probabilities[record.actual];
            let score = kb_score(q, p)?;
            kb_total_bits += record.weight * score;
            kb_relative_percent += 100.0 * record.weight * score / prior.entropy_bits();
            order0_bits -= record.weight * p.log2();
            scheme_bits -= record.weight * q.max(SCHEME_PROBABILITY_FLOOR).log2();
        }
        let errors = sums.finish();
        let total = sums.weight;
        let correct = confusion.correct_weight();
        let kappa_statistic = kappa(&confusion)?;

        let mut per_class = Vec::with_capacity(k);
        for class in 0..k {
            let scores: Vec<(f64, bool, f64)> = self
                .records
                .iter()
                .map(|r| (r.probabilities[class], r.actual == class, r.weight))
                .collect();
            per_class.push(per_class_metrics(&confusion, class, Some(&scores))?);
        }

        Ok(EvaluationReport {
            correct_count: correct,
            incorrect_count: total - correct,
            correct_percent: 100.0 * correct / total,
            kappa: kappa_statistic,
            kb_relative_percent,
            kb_total_bits,
            kb_bits_per_instance: kb_total_bits / total,
            class_complexity_order0_bits: order0_bits,
            class_complexity_scheme_bits: scheme_bits,
            sf_improvement_bits: order0_bits - scheme_bits,
            mae: errors.mae,
            rmse: errors.rmse,
            rae_percent: errors.rae_percent,
            rrse_percent: errors.rrse_percent,
            total_instances: total,
            per_class,
            confusion,
            class_names: self.class_names,
        })
    }
}

/// Evaluates a tree on a labeled dataset against a fixed prior.
pub fn evaluate_model(
    tree: &DecisionTree,
    test: &Dataset,
    prior: &PriorModel,
) -> Result<EvaluationReport> {
    if test.schema().as_ref() != tree.schema().as_ref() {
        return Err(Error::schema("test data does not match the tree's schema"));
    }
    if test.is_empty() {
        return Err(Error::invalid("cannot evaluate on an empty dataset"));
    }
    if prior.probabilities().len() != test.schema().class_count() {
        return Err(Error::invalid(format!(
            "prior has {} classes but the schema declares {}",
            prior.probabilities().len(),
            test.schema().class_count()
        )));
    }
    let mut evaluator = Evaluator::new(test.schema());
    let prior_id = evaluator.add_prior(prior.clone());
    for (i, instance) in test.instances().iter().enumerate() {
        let actual = test.class_of(instance).ok_or_else(|| {
            Error::invalid(format!("instance {i} has a missing class value"))
        })?;
        let prediction = tree.classify(instance)?;
        evaluator.record(prediction, actual, instance.weight(), prior_id);
    }
    evaluator.finish()
}

/// Stratified k-fold cross-validation with a deterministic seed.
///
/// Each fold trains a tree and a [`PriorModel`] on the k-1 training parts
/// and scores the held-out part; records accumulate in fold order into one
/// pooled report, so a fixed `(d, k, seed, cfg)` reproduces it byte for
/// byte.
pub fn cross_validate(
    d: &Dataset,
    k: usize,
    seed: u64,
    cfg: &InductionConfig,
) -> Result<EvaluationReport> {
    let folds = stratified_folds(d, k, seed)?;
    let mut evaluator = Evaluator::new(d.schema());
    for (train, test) in &folds {
        let tree = build_tree(train, cfg)?;
        let prior = PriorModel::from_distribution(&train.class_distribution());
        let prior_id = evaluator.add_prior(prior);
        for instance in test.instances() {
            let actual = test
                .class_of(instance)
                .expect("stratified_folds rejects missing class values");
            let prediction = tree.classify(instance)?;
            evaluator.record(prediction, actual, instance.weight(), prior_id);
        }
    }
    evaluator.finish()
}

/// Formats a count or metric with up to `decimals` places, trimming
/// trailing zeros so whole numbers print bare.
pub(crate) fn trim_number(value: f64, decimals: usize) -> String {
    let mut text = format!("{value:.decimals$}");
    if text.contains('.') {
        while text.ends_with('0') {
            text.pop();
        }
        if text.ends_with('.') {
            text.pop();
        }
    }
    if text == "-0" {
        text = "0".to_string();
    }
    text
}

fn class_letter(index: usize) -> String {
    if index < 26 {
        char::from(b'a' + index as u8).to_string()
    } else {
        format!("c{index}")
    }
}

impl EvaluationReport {
    /// Renders the per-class accuracy table, the summary block, and the
    /// confusion matrix as text.
    pub fn to_text(&self) -> String {
        let mut out = String::from("=== Detailed Accuracy By Class ===\n\n");
        let _ = writeln!(
            out,
            "{:<11}{:<11}{:<11}{:<11}{:<11}{:<11}Class",
            "TP Rate", "FP Rate", "Precision", "Recall", "F-Measure", "ROC Area"
        );
        for (name, metrics) in self.class_names.iter().zip(&self.per_class) {
            let roc = metrics
                .roc_area
                .map_or_else(|| "-".to_string(), |a| trim_number(a, 4));
            let _ = writeln!(
                out,
                "{:<11}{:<11}{:<11}{:<11}{:<11}{:<11}{}",
                trim_number(metrics.tp_rate, 4),
                trim_number(metrics.fp_rate, 4),
                trim_number(metrics.precision, 4),
                trim_number(metrics.recall, 4),
                trim_number(metrics.f_measure, 4),
                roc,
                name
            );
        }

        out.push_str("\n=== Summary ===\n\n");
        let mut row = |label: &str, value: String, extra: Option<String>| {
            match extra {
                Some(extra) => {
                    let _ = writeln!(out, "{label:<40}{value:<18}{extra}");
                }
                None => {
                    let _ = writeln!(out, "{label:<40}{value}");
                }
            }
        };
        let total = self.total_instances;
        row(
            "Correctly Classified instances",
            trim_number(self.correct_count, 4),
            Some(format!("{} %", trim_number(self.correct_percent, 4))),
        );
        row(
            "Incorrectly Classified Instances",
            trim_number(self.incorrect_count, 4),
            Some(format!(
                "{} %",
                trim_number(percent_ratio(self.incorrect_count, total), 4)
            )),
        );
        row("Kappa statistic", trim_number(self.kappa, 4), None);
        row(
            "K&B Relative Info Score",
            format!("{} %", trim_number(self.kb_relative_percent, 4)),
            None,
        );
        row(
            "K&B Information Score",
            format!("{} bits", trim_number(self.kb_total_bits, 4)),
            Some(format!(
                "{} bits/instance",
                trim_number(self.kb_bits_per_instance, 4)
            )),
        );
        row(
            "Class complexity order 0",
            format!("{} bits", trim_number(self.class_complexity_order0_bits, 4)),
            Some(format!(
                "{} bits/instance",
                trim_number(self.class_complexity_order0_bits / total, 4)
            )),
        );
        row(
            "Class complexity Scheme",
            format!("{} bits", trim_number(self.class_complexity_scheme_bits, 4)),
            Some(format!(
                "{} bits/instance",
                trim_number(self.class_complexity_scheme_bits / total, 4)
            )),
        );
        row(
            "Complexity improvement (SF)",
            format!("{} bits", trim_number(self.sf_improvement_bits, 4)),
            Some(format!(
                "{} bits/instance",
                trim_number(self.sf_improvement_bits / total, 4)
            )),
        );
        row("Mean absolute error", trim_number(self.mae, 4), None);
        row("Root mean squared error", trim_number(self.rmse, 4), None);
        row(
            "Relative absolute error",
            format!("{} %", trim_number(self.rae_percent, 4)),
            None,
        );
        row(
            "Root relative squared error",
            format!("{} %", trim_number(self.rrse_percent, 4)),
            None,
        );
        row(
            "Total Number of Instances",
            trim_number(self.total_instances, 4),
            None,
        );

        out.push_str("\n=== Confusion Matrix ===\n\n");
        let k = self.class_names.len();
        let cell_width = self
            .confusion
            .cells()
            .iter()
            .flatten()
            .map(|c| trim_number(*c, 4).len())
            .max()
            .unwrap_or(1)
            .max(2)
            + 1;
        for class in 0..k {
            let _ = write!(out, "{:>cell_width$}", class_letter(class));
        }
        out.push_str("   <-- classified as\n");
        for (class, row_cells) in self.confusion.cells().iter().enumerate() {
            for cell in row_cells {
                let _ = write!(out, "{:>cell_width$}", trim_number(*cell, 4));
            }
            let _ = writeln!(
                out,
                " |   {} = {}",
                class_letter(class),
                self.class_names[class]
            );
        }
        out
    }

    /// Serializes the report as pretty-printed JSON with one key per field.
    pub fn to_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("reports contain only finite numbers");
        text.push('\n');
        text
    }
}
