//! C4.5 tree growth and pessimistic pruning.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::dataset::{ClassDistribution, Dataset};
use crate::error::{Error, Result};
use crate::infotheory::{evaluate_tally, SplitEvaluation, SplitTally, GAIN_EPSILON};
use crate::tree::{DecisionTree, TreeNode};

/// Split-quality criterion used by [`select_split`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitCriterion {
    /// Information gain divided by split info (C4.5).
    #[default]
    GainRatio,
    /// Raw information gain (ID3).
    InfoGain,
}

/// Tunable knobs for growth and pruning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InductionConfig {
    pub criterion: SplitCriterion,
    /// A split must leave at least two branches with this much weight.
    pub min_instances_per_leaf: usize,
    /// Pruning confidence factor in (0, 0.5]; smaller prunes harder.
    pub confidence_factor: f64,
    /// Apply subtree-replacement pruning after growth.
    pub pruning: bool,
    /// Only consider splits whose gain reaches the mean gain of all
    /// positive-gain candidates.
    pub average_gain_constraint: bool,
    /// Smooth leaf probabilities as `(w + 1) / (W + k)` in classify.
    pub laplace_smoothing: bool,
}

impl Default for InductionConfig {
    /// Standard C4.5 behavior: gain ratio with the average-gain constraint,
    /// pruning at confidence 0.25, at least 2 instances per leaf, Laplace
    /// smoothing on.
    fn default() -> Self {
        InductionConfig {
            criterion: SplitCriterion::GainRatio,
            min_instances_per_leaf: 2,
            confidence_factor: 0.25,
            pruning: true,
            average_gain_constraint: true,
            laplace_smoothing: true,
        }
    }
}

impl InductionConfig {
    /// ID3 behavior: plain information gain, no constraint, no pruning.
    pub fn id3() -> Self {
        InductionConfig {
            criterion: SplitCriterion::InfoGain,
            pruning: false,
            average_gain_constraint: false,
            ..InductionConfig::default()
        }
    }

    /// Checks field ranges.
    pub fn validate(&self) -> Result<()> {
        if !(self.confidence_factor > 0.0 && self.confidence_factor <= 0.5) {
            return Err(Error::invalid(format!(
                "confidence factor {} is outside (0, 0.5]",
                self.confidence_factor
            )));
        }
        if self.min_instances_per_leaf < 1 {
            return Err(Error::invalid(
                "minimum instances per leaf must be at least 1",
            ));
        }
        Ok(())
    }
}

/// Picks the best split attribute, or `None` when no candidate is usable.
///
/// A candidate is usable when its information gain exceeds 1e-12 and the
/// partition it induces (with missing weight routed proportionally) leaves
/// at least two branches carrying `min_instances_per_leaf` weight. With the
/// average-gain constraint on, candidates below the mean gain of the usable
/// set are then dropped. The survivor maximizing the configured criterion
/// wins; ties go to the lowest schema index.
pub fn select_split(
    d: &Dataset,
    candidates: &[usize],
    cfg: &InductionConfig,
) -> Result<Option<SplitEvaluation>> {
    cfg.validate()?;
    let min_leaf = cfg.min_instances_per_leaf as f64;
    let mut usable: Vec<SplitEvaluation> = Vec::new();
    for &attribute in candidates {
        let tally = SplitTally::collect(d, attribute)?;
        let evaluation = evaluate_tally(d.schema().class_count(), attribute, &tally);
        if evaluation.info_gain <= GAIN_EPSILON {
            continue;
        }
        let known = tally.known_weight();
        if known <= 0.0 {
            continue;
        }
        let scale = (known + tally.missing_weight) / known;
        let feasible = tally
            .branch_weights()
            .iter()
            .filter(|&&w| w * scale >= min_leaf)
            .count();
        if feasible < 2 {
            continue;
        }
        usable.push(evaluation);
    }
    if usable.is_empty() {
        return Ok(None);
    }
    usable.sort_by_key(|e| e.attribute);
    let mean_gain: f64 =
        usable.iter().map(|e| e.info_gain).sum::<f64>() / usable.len() as f64;

    let mut best: Option<(f64, SplitEvaluation)> = None;
    for evaluation in usable {
        if cfg.average_gain_constraint && evaluation.info_gain + GAIN_EPSILON < mean_gain {
            continue;
        }
        let score = match cfg.criterion {
            SplitCriterion::InfoGain => Some(evaluation.info_gain),
            SplitCriterion::GainRatio => evaluation.gain_ratio,
        };
        let Some(score) = score else { continue };
        if best.as_ref().is_none_or(|(top, _)| score > *top) {
            best = Some((score, evaluation));
        }
    }
    Ok(best.map(|(_, evaluation)| evaluation))
}

/// Grows a tree on `d`, pruning it afterwards when `cfg.pruning` is set.
///
/// Growth recurses over [`Dataset::partition_by_attribute`] subsets of the
/// [`select_split`] winner and stops at class-pure nodes, nodes below twice
/// the leaf minimum, or nodes with no usable split. Empty child subsets
/// become leaves carrying a copy of the parent's distribution.
pub fn build_tree(d: &Dataset, cfg: &InductionConfig) -> Result<DecisionTree> {
    cfg.validate()?;
    if d.is_empty() {
        return Err(Error::invalid("cannot induce a tree from an empty dataset"));
    }
    for (i, instance) in d.instances().iter().enumerate() {
        if d.class_of(instance).is_none() {
            return Err(Error::invalid(format!(
                "instance {i} has a missing class value"
            )));
        }
    }
    let candidates = d.schema().candidate_attributes();
    let root = grow(d, &candidates, cfg)?;
    let tree = DecisionTree::new(d.schema().clone(), root, cfg.laplace_smoothing)?;
    if cfg.pruning {
        prune_tree(&tree, d, cfg)
    } else {
        Ok(tree)
    }
}

fn grow(d: &Dataset, candidates: &[usize], cfg: &InductionConfig) -> Result<TreeNode> {
    let distribution = d.class_distribution();
    if distribution.is_pure()
        || distribution.total() < 2.0 * cfg.min_instances_per_leaf as f64
    {
        return Ok(TreeNode::leaf(distribution));
    }
    let Some(selected) = select_split(d, candidates, cfg)? else {
        return Ok(TreeNode::leaf(distribution));
    };
    let attribute = selected.attribute;
    let subsets = d.partition_by_attribute(attribute)?;
    let remaining: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&c| c != attribute)
        .collect();
    let mut branch_weights = Vec::with_capacity(subsets.len());
    let mut children = Vec::with_capacity(subsets.len());
    for subset in &subsets {
        branch_weights.push(subset.total_weight());
        if subset.is_empty() {
            children.push(TreeNode::leaf(distribution.clone()));
        } else {
            children.push(grow(subset, &remaining, cfg)?);
        }
    }
    Ok(TreeNode::Internal {
        attribute,
        branch_weights,
        children,
    })
}

/// Applies bottom-up subtree replacement with the pessimistic error bound.
///
/// The training data is re-routed through the tree; at each internal node
/// the collapsed-leaf estimate is compared against the summed child
/// estimates and the node becomes a leaf when it is no worse than 0.1
/// errors above them.
pub fn prune_tree(
    t: &DecisionTree,
    training: &Dataset,
    cfg: &InductionConfig,
) -> Result<DecisionTree> {
    cfg.validate()?;
    if training.schema().as_ref() != t.schema().as_ref() {
        return Err(Error::schema(
            "training data does not match the tree's schema",
        ));
    }
    let z = Normal::new(0.0, 1.0)
        .expect("unit normal")
        .inverse_cdf(1.0 - cfg.confidence_factor);
    let (root, _) = prune_node(t.root().clone(), training, cfg, z)?;
    DecisionTree::new(t.schema().clone(), root, t.laplace_smoothing())
}

fn prune_node(
    node: TreeNode,
    routed: &Dataset,
    cfg: &InductionConfig,
    z: f64,
) -> Result<(TreeNode, f64)> {
    let distribution = routed.class_distribution();
    match node {
        TreeNode::Leaf { .. } => {
            let estimate = leaf_error_estimate(&distribution, z, cfg.confidence_factor);
            Ok((node, estimate))
        }
        TreeNode::Internal {
            attribute,
            branch_weights,
            children,
        } => {
            let subsets = routed.partition_by_attribute(attribute)?;
            let mut pruned = Vec::with_capacity(children.len());
            let mut subtree_estimate = 0.0;
            for (child, subset) in children.into_iter().zip(&subsets) {
                let (child, estimate) = prune_node(child, subset, cfg, z)?;
                pruned.push(child);
                subtree_estimate += estimate;
            }
            let leaf_estimate = leaf_error_estimate(&distribution, z, cfg.confidence_factor);
            if leaf_estimate <= subtree_estimate + 0.1 {
                Ok((TreeNode::leaf(distribution), leaf_estimate))
            } else {
                Ok((
                    TreeNode::Internal {
                        attribute,
                        branch_weights,
                        children: pruned,
                    },
                    subtree_estimate,
                ))
            }
        }
    }
}

fn leaf_error_estimate(distribution: &ClassDistribution, z: f64, cf: f64) -> f64 {
    let n = distribution.total();
    let e = if n > 0.0 {
        n - distribution.max_weight()
    } else {
        0.0
    };
    e + add_errs(n, e, z, cf)
}

/// Upper confidence bound on the number of extra errors among `n` weighted
/// instances that showed `e` errors, at confidence `cf`.
fn add_errs(n: f64, e: f64, z: f64, cf: f64) -> f64 {
    if n <= 0.0 {
        return 0.0;
    }
    if e < 1.0 {
        let base = n * (1.0 - cf.powf(1.0 / n));
        if e == 0.0 {
            return base;
        }
        return base + e * (add_errs(n, 1.0, z, cf) - base);
    }
    if e + 0.5 >= n {
        return (n - e).max(0.0);
    }
    let f = (e + 0.5) / n;
    let r = (f
        + z * z / (2.0 * n)
        + z * (f / n - f * f / n + z * z / (4.0 * n * n)).sqrt())
        / (1.0 + z * z / n);
    r * n - e
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::corpus;
    use crate::dataset::{AttributeSpec, DatasetSchema, Instance};

    fn dataset_from(attrs: &[(&str, &[&str])], class: usize, rows: &[&[&str]]) -> Dataset {
        let specs = attrs
            .iter()
            .map(|(name, values)| AttributeSpec::new(*name, values.iter().copied()).unwrap())
            .collect();
        let schema = Arc::new(DatasetSchema::new(specs, class).unwrap());
        let instances = rows
            .iter()
            .map(|row| {
                Instance::new(
                    row.iter()
                        .enumerate()
                        .map(|(a, token)| {
                            (*token != "?")
                                .then(|| schema.attributes()[a].value_index(token).unwrap())
                        })
                        .collect(),
                )
            })
            .collect();
        Dataset::new(schema, instances).unwrap()
    }

    fn as_internal(node: &TreeNode) -> (usize, &[f64], &[TreeNode]) {
        match node {
            TreeNode::Internal {
                attribute,
                branch_weights,
                children,
            } => (*attribute, branch_weights, children),
            TreeNode::Leaf { .. } => panic!("expected an internal node"),
        }
    }

    fn as_leaf(node: &TreeNode) -> (&[f64], usize) {
        match node {
            TreeNode::Leaf {
                distribution,
                predicted,
            } => (distribution.weights(), *predicted),
            TreeNode::Internal { .. } => panic!("expected a leaf"),
        }
    }

    fn training_correct(tree: &DecisionTree, d: &Dataset) -> usize {
        d.instances()
            .iter()
            .filter(|i| {
                tree.classify(i).unwrap().label == d.class_of(i).unwrap()
            })
            .count()
    }

    #[test]
    fn config_validation_rejects_bad_ranges() {
        let mut cfg = InductionConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.confidence_factor = 0.0;
        assert!(cfg.validate().is_err());
        cfg.confidence_factor = 0.6;
        assert!(cfg.validate().is_err());
        cfg.confidence_factor = 0.5;
        assert!(cfg.validate().is_ok());
        cfg.min_instances_per_leaf = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn bloggers_select_split_prefers_degree() {
        let d = corpus::bloggers();
        let cfg = InductionConfig::default();
        let selected = select_split(&d, &d.schema().candidate_attributes(), &cfg)
            .unwrap()
            .unwrap();
        assert_eq!(selected.attribute, 0);
        assert!((selected.gain_ratio.unwrap() - 0.055415920487836).abs() < 1e-9);
    }

    #[test]
    fn info_gain_criterion_selects_topic() {
        let d = corpus::bloggers();
        let cfg = InductionConfig {
            criterion: SplitCriterion::InfoGain,
            ..InductionConfig::default()
        };
        let selected = select_split(&d, &d.schema().candidate_attributes(), &cfg)
            .unwrap()
            .unwrap();
        assert_eq!(selected.attribute, 2);
        assert!((selected.info_gain - 0.081202840579233).abs() < 1e-9);
    }

    #[test]
    fn average_gain_constraint_filters_low_gain_candidates() {
        // `a` has the best gain ratio through a lopsided split but a gain
        // below the candidate mean; `b` carries the higher gain.
        let mut rows: Vec<&[&str]> = vec![&["a1", "b1", "y"], &["a1", "b1", "y"]];
        rows.extend(std::iter::repeat_n(&["a2", "b1", "y"] as &[&str], 4));
        rows.extend(std::iter::repeat_n(&["a2", "b2", "y"] as &[&str], 2));
        rows.extend(std::iter::repeat_n(&["a2", "b1", "n"] as &[&str], 2));
        rows.extend(std::iter::repeat_n(&["a2", "b2", "n"] as &[&str], 6));
        let d = dataset_from(
            &[
                ("a", &["a1", "a2"]),
                ("b", &["b1", "b2"]),
                ("class", &["y", "n"]),
            ],
            2,
            &rows,
        );

        let constrained = InductionConfig::default();
        let selected = select_split(&d, &[0, 1], &constrained).unwrap().unwrap();
        assert_eq!(selected.attribute, 1);

        let unconstrained = InductionConfig {
            average_gain_constraint: false,
            ..InductionConfig::default()
        };
        let selected = select_split(&d, &[0, 1], &unconstrained).unwrap().unwrap();
        assert_eq!(selected.attribute, 0);
    }

    #[test]
    fn select_split_ties_break_to_lowest_schema_index() {
        let rows: Vec<&[&str]> = vec![
            &["p", "p", "y"],
            &["p", "p", "y"],
            &["q", "q", "n"],
            &["q", "q", "n"],
        ];
        let d = dataset_from(
            &[
                ("first", &["p", "q"]),
                ("second", &["p", "q"]),
                ("class", &["y", "n"]),
            ],
            2,
            &rows,
        );
        let selected = select_split(&d, &[0, 1], &InductionConfig::default())
            .unwrap()
            .unwrap();
        assert_eq!(selected.attribute, 0);
        let selected = select_split(&d, &[1, 0], &InductionConfig::default())
            .unwrap()
            .unwrap();
        assert_eq!(selected.attribute, 0);
    }

    #[test]
    fn select_split_returns_none_without_usable_candidates() {
        let constant = dataset_from(
            &[("x", &["only"]), ("class", &["y", "n"])],
            1,
            &[&["only", "y"], &["only", "n"]],
        );
        assert_eq!(
            select_split(&constant, &[0], &InductionConfig::default()).unwrap(),
            None
        );

        let d = corpus::bloggers();
        let strict = InductionConfig {
            min_instances_per_leaf: 40,
            ..InductionConfig::default()
        };
        assert_eq!(
            select_split(&d, &d.schema().candidate_attributes(), &strict).unwrap(),
            None
        );
    }

    #[test]
    fn min_leaf_feasibility_excludes_narrow_splits() {
        // At 30 instances per leaf only degree and caprice stay feasible,
        // and the mean-gain constraint then drops caprice.
        let d = corpus::bloggers();
        let cfg = InductionConfig {
            min_instances_per_leaf: 30,
            ..InductionConfig::default()
        };
        let selected = select_split(&d, &d.schema().candidate_attributes(), &cfg)
            .unwrap()
            .unwrap();
        assert_eq!(selected.attribute, 0);
    }

    #[test]
    fn select_split_rejects_class_candidate() {
        let d = corpus::bloggers();
        assert!(select_split(&d, &[5], &InductionConfig::default()).is_err());
    }

    #[test]
    fn single_class_dataset_builds_single_leaf() {
        let d = dataset_from(
            &[("x", &["a", "b"]), ("class", &["y", "n"])],
            1,
            &[&["a", "y"], &["b", "y"], &["a", "y"]],
        );
        let tree = build_tree(&d, &InductionConfig::default()).unwrap();
        assert_eq!(tree.stats().node_count, 1);
        assert_eq!(tree.stats().leaf_count, 1);
        assert_eq!(as_leaf(tree.root()), (&[3.0, 0.0][..], 0));
    }

    #[test]
    fn perfect_attribute_builds_depth_one_tree() {
        let d = dataset_from(
            &[("x", &["a", "b"]), ("class", &["y", "n"])],
            1,
            &[&["a", "y"], &["a", "y"], &["b", "n"], &["b", "n"]],
        );
        let cfg = InductionConfig {
            pruning: false,
            ..InductionConfig::default()
        };
        let tree = build_tree(&d, &cfg).unwrap();
        let (attribute, branch_weights, children) = as_internal(tree.root());
        assert_eq!(attribute, 0);
        assert_eq!(branch_weights, [2.0, 2.0]);
        assert_eq!(as_leaf(&children[0]), (&[2.0, 0.0][..], 0));
        assert_eq!(as_leaf(&children[1]), (&[0.0, 2.0][..], 1));
    }

    #[test]
    fn empty_child_subsets_become_parent_copy_leaves() {
        let d = dataset_from(
            &[("x", &["a", "b", "c"]), ("class", &["y", "n"])],
            1,
            &[&["a", "y"], &["a", "y"], &["b", "n"], &["b", "n"]],
        );
        let cfg = InductionConfig {
            pruning: false,
            ..InductionConfig::default()
        };
        let tree = build_tree(&d, &cfg).unwrap();
        let (_, branch_weights, children) = as_internal(tree.root());
        assert_eq!(branch_weights, [2.0, 2.0, 0.0]);
        assert_eq!(as_leaf(&children[2]), (&[2.0, 2.0][..], 0));
    }

    #[test]
    fn build_tree_rejects_empty_and_missing_class() {
        let schema = Arc::new(
            DatasetSchema::new(
                vec![
                    AttributeSpec::new("x", ["a", "b"]).unwrap(),
                    AttributeSpec::new("class", ["y", "n"]).unwrap(),
                ],
                1,
            )
            .unwrap(),
        );
        let empty = Dataset::new(schema.clone(), vec![]).unwrap();
        assert!(build_tree(&empty, &InductionConfig::default()).is_err());

        let unlabeled = Dataset::new(
            schema,
            vec![Instance::new(vec![Some(0), None])],
        )
        .unwrap();
        assert!(build_tree(&unlabeled, &InductionConfig::default()).is_err());
    }

    #[test]
    fn bloggers_unpruned_tree_matches_goldens() {
        let d = corpus::bloggers();
        let cfg = InductionConfig {
            pruning: false,
            ..InductionConfig::default()
        };
        let tree = build_tree(&d, &cfg).unwrap();
        assert_eq!(tree.stats().node_count, 45);
        assert_eq!(tree.stats().leaf_count, 32);
        let (attribute, branch_weights, _) = as_internal(tree.root());
        assert_eq!(attribute, 0);
        assert_eq!(branch_weights, [39.0, 47.0, 14.0]);
        assert_eq!(training_correct(&tree, &d), 91);
    }

    #[test]
    fn bloggers_pruned_tree_matches_golden_structure() {
        let d = corpus::bloggers();
        let tree = build_tree(&d, &InductionConfig::default()).unwrap();
        assert_eq!(tree.stats().node_count, 11);
        assert_eq!(tree.stats().leaf_count, 7);
        assert_eq!(training_correct(&tree, &d), 84);

        let (attribute, branch_weights, children) = as_internal(tree.root());
        assert_eq!(attribute, 0);
        assert_eq!(branch_weights, [39.0, 47.0, 14.0]);
        assert_eq!(as_leaf(&children[0]), (&[30.0, 9.0][..], 0));
        assert_eq!(as_leaf(&children[2]), (&[4.0, 10.0][..], 1));

        let (attribute, branch_weights, medium) = as_internal(&children[1]);
        assert_eq!(attribute, 1);
        assert_eq!(branch_weights, [23.0, 12.0, 12.0]);
        assert_eq!(as_leaf(&medium[0]), (&[21.0, 2.0][..], 0));

        let (attribute, branch_weights, middle) = as_internal(&medium[1]);
        assert_eq!(attribute, 3);
        assert_eq!(branch_weights, [10.0, 2.0]);
        assert_eq!(as_leaf(&middle[0]), (&[10.0, 0.0][..], 0));
        assert_eq!(as_leaf(&middle[1]), (&[0.0, 2.0][..], 1));

        let (attribute, branch_weights, right) = as_internal(&medium[2]);
        assert_eq!(attribute, 4);
        assert_eq!(branch_weights, [10.0, 2.0]);
        assert_eq!(as_leaf(&right[0]), (&[1.0, 9.0][..], 1));
        assert_eq!(as_leaf(&right[1]), (&[2.0, 0.0][..], 0));
    }

    #[test]
    fn id3_grows_an_unpruned_info_gain_tree() {
        let d = corpus::bloggers();
        let tree = build_tree(&d, &InductionConfig::id3()).unwrap();
        let (attribute, _, _) = as_internal(tree.root());
        assert_eq!(attribute, 2);
        assert!(tree.stats().node_count > 11);
    }

    #[test]
    fn pruning_never_increases_node_count() {
        let d = corpus::bloggers();
        let cfg = InductionConfig {
            pruning: false,
            ..InductionConfig::default()
        };
        let unpruned = build_tree(&d, &cfg).unwrap();
        let pruned = prune_tree(&unpruned, &d, &InductionConfig::default()).unwrap();
        assert!(pruned.stats().node_count <= unpruned.stats().node_count);
        assert_eq!(pruned.stats().node_count, 11);
    }

    #[test]
    fn prune_tree_keeps_single_leaf_unchanged() {
        let d = dataset_from(
            &[("x", &["a", "b"]), ("class", &["y", "n"])],
            1,
            &[&["a", "y"], &["b", "y"]],
        );
        let tree = build_tree(&d, &InductionConfig::default()).unwrap();
        assert_eq!(tree.stats().node_count, 1);
        let pruned = prune_tree(&tree, &d, &InductionConfig::default()).unwrap();
        assert_eq!(pruned, tree);
    }

    #[test]
    fn redundant_split_collapses_under_pruning() {
        // Both branches predict `y`, so the merged leaf's pessimistic
        // estimate beats the subtree's and the split must collapse.
        let rows: Vec<&[&str]> = vec![
            &["a", "y"],
            &["a", "y"],
            &["a", "y"],
            &["a", "n"],
            &["b", "y"],
            &["b", "y"],
            &["b", "n"],
        ];
        let attrs: &[(&str, &[&str])] = &[("x", &["a", "b"]), ("class", &["y", "n"])];
        let d = dataset_from(attrs, 1, &rows);

        let grown = build_tree(
            &d,
            &InductionConfig {
                pruning: false,
                min_instances_per_leaf: 1,
                ..InductionConfig::default()
            },
        )
        .unwrap();
        assert!(grown.stats().node_count > 1);

        let pruned = prune_tree(&grown, &d, &InductionConfig::default()).unwrap();
        assert_eq!(pruned.stats().node_count, 1);
        assert_eq!(as_leaf(pruned.root()), (&[5.0, 2.0][..], 0));
    }

    #[test]
    fn prune_tree_rejects_mismatched_training_schema() {
        let d = corpus::bloggers();
        let tree = build_tree(&d, &InductionConfig::default()).unwrap();
        let other = dataset_from(
            &[("x", &["a", "b"]), ("class", &["y", "n"])],
            1,
            &[&["a", "y"], &["b", "n"]],
        );
        assert!(prune_tree(&tree, &other, &InductionConfig::default()).is_err());
    }

    #[test]
    fn add_errs_matches_reference_values() {
        let cf = 0.25;
        let z = Normal::new(0.0, 1.0).unwrap().inverse_cdf(1.0 - cf);
        assert!((z - 0.6744897501960817).abs() < 1e-12);

        let cases = [
            (48.0, 9.0, 2.4942309208773707),
            (39.0, 9.0, 2.416617908115228),
            (14.0, 4.0, 1.7412868379331972),
            (23.0, 2.0, 1.6867554086053347),
            (2.0, 0.0, 1.0),
            (10.0, 0.0, 1.2944943670387588),
            (6.0, 0.5, 1.2706517010318286),
            (3.0, 2.8, 0.20000000000000018),
            (1.0, 0.0, 0.75),
            (0.0, 0.0, 0.0),
            (5.5, 1.25, 1.2885682658946003),
        ];
        for (n, e, expected) in cases {
            assert!(
                (add_errs(n, e, z, cf) - expected).abs() < 1e-9,
                "add_errs({n}, {e})"
            );
        }
    }

    #[test]
    fn classify_routes_table_rows_through_the_tree() {
        let d = corpus::bloggers();
        let tree = build_tree(&d, &InductionConfig::default()).unwrap();

        // high, left, political, yes, yes -> the degree=high leaf [30, 9].
        let row = Instance::new(vec![Some(0), Some(0), Some(1), Some(0), Some(0), None]);
        let prediction = tree.classify(&row).unwrap();
        assert_eq!(prediction.label, 0);
        assert!((prediction.probabilities[0] - 31.0 / 41.0).abs() < 1e-12);
    }

    #[test]
    fn classify_mixes_branches_when_the_test_value_is_missing() {
        let d = corpus::bloggers();
        let tree = build_tree(&d, &InductionConfig::default()).unwrap();

        // Missing degree mixes the three top-level branches by their
        // training shares; caprice=left resolves the medium subtree.
        let row = Instance::new(vec![None, Some(0), Some(1), Some(0), Some(0), None]);
        let prediction = tree.classify(&row).unwrap();
        let raw_yes = 0.39 * 30.0 + 0.47 * 21.0 + 0.14 * 4.0;
        let raw_no = 0.39 * 9.0 + 0.47 * 2.0 + 0.14 * 10.0;
        let expected = (raw_yes + 1.0) / (raw_yes + raw_no + 2.0);
        assert!((prediction.probabilities[0] - expected).abs() < 1e-9);
        assert_eq!(prediction.label, 0);
    }

    #[test]
    fn training_replay_reaches_a_leaf_containing_each_instance() {
        let d = corpus::bloggers();
        let cfg = InductionConfig {
            pruning: false,
            min_instances_per_leaf: 1,
            ..InductionConfig::default()
        };
        let tree = build_tree(&d, &cfg).unwrap();
        for instance in d.instances() {
            let mut node = tree.root();
            while let TreeNode::Internal {
                attribute,
                children,
                ..
            } = node
            {
                node = &children[instance.value(*attribute).unwrap()];
            }
            let (weights, _) = as_leaf(node);
            assert!(weights[d.class_of(instance).unwrap()] > 0.0);
        }
    }

    #[test]
    fn identical_inputs_build_identical_trees() {
        let d = corpus::bloggers();
        let first = build_tree(&d, &InductionConfig::default()).unwrap();
        let second = build_tree(&d, &InductionConfig::default()).unwrap();
        assert_eq!(first, second);
        assert_eq!(first.to_model_text(), second.to_model_text());
    }

    #[test]
    fn bloggers_tree_survives_model_round_trip() {
        let d = corpus::bloggers();
        let tree = build_tree(&d, &InductionConfig::default()).unwrap();
        let text = tree.to_model_text();
        let back = DecisionTree::from_model_text(&text).unwrap();
        assert_eq!(back, tree);
        assert_eq!(back.to_model_text(), text);
    }
}
