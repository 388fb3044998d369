//! Randomized invariant checks over small generated datasets.

use std::collections::HashMap;
use std::sync::Arc;

use proptest::collection::vec;
use proptest::prelude::*;

use tendmine::{
    build_tree, cross_validate, entropy, evaluate_split, kappa, parse_arff, roc_area,
    stratified_folds, AttributeSpec, ClassDistribution, ConfusionMatrix, Dataset, DatasetSchema,
    DecisionTree, InductionConfig, Instance, SplitCriterion,
};

#[derive(Debug, Clone)]
struct DataSpec {
    attribute_values: Vec<usize>,
    class_values: usize,
    rows: Vec<(Vec<Option<usize>>, usize)>,
}

fn data_spec() -> impl Strategy<Value = DataSpec> {
    (vec(2..=3usize, 1..=3), 2..=3usize).prop_flat_map(|(attribute_values, class_values)| {
        let cells: Vec<BoxedStrategy<Option<usize>>> = attribute_values
            .iter()
            .map(|&n| {
                prop_oneof![5 => (0..n).prop_map(Some), 1 => Just(None)].boxed()
            })
            .collect();
        vec((cells, 0..class_values), 1..=24).prop_map(move |rows| DataSpec {
            attribute_values: attribute_values.clone(),
            class_values,
            rows,
        })
    })
}

fn realize(spec: &DataSpec) -> Dataset {
    let mut attributes: Vec<AttributeSpec> = spec
        .attribute_values
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let values: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
            AttributeSpec::new(format!("a{i}"), values).unwrap()
        })
        .collect();
    let classes: Vec<String> = (0..spec.class_values).map(|c| format!("c{c}")).collect();
    attributes.push(AttributeSpec::new("class", classes).unwrap());
    let schema = Arc::new(DatasetSchema::new(attributes, spec.attribute_values.len()).unwrap());
    let instances = spec
        .rows
        .iter()
        .map(|(cells, class)| {
            let mut values = cells.clone();
            values.push(Some(*class));
            Instance::new(values)
        })
        .collect();
    Dataset::new(schema, instances).unwrap()
}

fn render_arff(d: &Dataset) -> String {
    let mut out = String::from("@relation generated\n");
    for attribute in d.schema().attributes() {
        out.push_str(&format!(
            "@attribute {} {{{}}}\n",
            attribute.name(),
            attribute.values().join(",")
        ));
    }
    out.push_str("@data\n");
    for instance in d.instances() {
        let row: Vec<&str> = instance
            .values()
            .iter()
            .zip(d.schema().attributes())
            .map(|(value, attribute)| match value {
                Some(v) => attribute.values()[*v].as_str(),
                None => "?",
            })
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn brute_force_roc(items: &[(f64, bool, f64)]) -> Option<f64> {
    let positives: f64 = items.iter().filter(|i| i.1).map(|i| i.2).sum();
    let negatives: f64 = items.iter().filter(|i| !i.1).map(|i| i.2).sum();
    if positives <= 0.0 || negatives <= 0.0 {
        return None;
    }
    let mut above = 0.0;
    for positive in items.iter().filter(|i| i.1) {
        for negative in items.iter().filter(|i| !i.1) {
            if positive.0 > negative.0 {
                above += positive.2 * negative.2;
            } else if positive.0 == negative.0 {
                above += 0.5 * positive.2 * negative.2;
            }
        }
    }
    Some(above / (positives * negatives))
}

proptest! {
    #[test]
    fn entropy_stays_within_log_bounds(weights in vec(0.0..10.0f64, 1..=4)) {
        prop_assume!(weights.iter().sum::<f64>() > 0.0);
        let k = weights.len() as f64;
        let h = entropy(&ClassDistribution::new(weights).unwrap());
        prop_assert!(h >= -1e-12 && h <= k.log2() + 1e-12, "entropy {h} out of range");
    }

    #[test]
    fn split_scores_stay_in_range(spec in data_spec()) {
        let d = realize(&spec);
        let class_entropy = entropy(&d.class_distribution());
        for attribute in 0..spec.attribute_values.len() {
            let scores = evaluate_split(&d, attribute).unwrap();
            prop_assert!(
                scores.info_gain >= -1e-12 && scores.info_gain <= class_entropy + 1e-12,
                "gain {} outside [0, {class_entropy}]", scores.info_gain
            );
            prop_assert!(scores.split_info >= -1e-12);
            if let Some(ratio) = scores.gain_ratio {
                prop_assert!((-1e-9..=1.0 + 1e-9).contains(&ratio), "ratio {ratio}");
            }
        }
    }

    #[test]
    fn partition_and_crosstab_conserve_weight(spec in data_spec()) {
        let d = realize(&spec);
        let total = d.total_weight();
        for attribute in 0..spec.attribute_values.len() {
            let subsets = d.partition_by_attribute(attribute).unwrap();
            let partitioned: f64 = subsets.iter().map(Dataset::total_weight).sum();
            prop_assert!((partitioned - total).abs() <= 1e-9);

            let crosstab = d.crosstab(attribute).unwrap();
            prop_assert!((crosstab.total() - total).abs() <= 1e-9);
            for (subset, row_sum) in subsets.iter().zip(crosstab.row_sums()) {
                prop_assert!((subset.total_weight() - row_sum).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn predictions_are_probability_distributions(
        spec in data_spec(),
        criterion in prop_oneof![Just(SplitCriterion::GainRatio), Just(SplitCriterion::InfoGain)],
        pruning in any::<bool>(),
    ) {
        let d = realize(&spec);
        let cfg = InductionConfig {
            criterion,
            min_instances_per_leaf: 1,
            pruning,
            ..InductionConfig::default()
        };
        let tree = build_tree(&d, &cfg).unwrap();
        for instance in d.instances() {
            let prediction = tree.classify(instance).unwrap();
            let sum: f64 = prediction.probabilities.iter().sum();
            prop_assert!((sum - 1.0).abs() <= 1e-9, "probabilities sum to {sum}");
            prop_assert!(prediction.probabilities.iter().all(|p| *p >= 0.0));
            let best = prediction
                .probabilities
                .iter()
                .cloned()
                .fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(prediction.probabilities[prediction.label] == best);

            let mut blanked = instance.values().to_vec();
            blanked[0] = None;
            let prediction = tree.classify(&Instance::new(blanked)).unwrap();
            let sum: f64 = prediction.probabilities.iter().sum();
            prop_assert!((sum - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn pruning_never_grows_the_tree(spec in data_spec(), cf in 0.05..=0.5f64) {
        let d = realize(&spec);
        let grown = build_tree(
            &d,
            &InductionConfig { pruning: false, ..InductionConfig::default() },
        )
        .unwrap();
        let pruned = build_tree(
            &d,
            &InductionConfig { pruning: true, confidence_factor: cf, ..InductionConfig::default() },
        )
        .unwrap();
        prop_assert!(pruned.stats().node_count <= grown.stats().node_count);
        prop_assert!(pruned.stats().leaf_count <= grown.stats().leaf_count);
    }

    #[test]
    fn model_text_round_trips(spec in data_spec()) {
        let d = realize(&spec);
        let tree = build_tree(
            &d,
            &InductionConfig { min_instances_per_leaf: 1, ..InductionConfig::default() },
        )
        .unwrap();
        let text = tree.to_model_text();
        let restored = DecisionTree::from_model_text(&text).unwrap();
        prop_assert_eq!(&restored.to_model_text(), &text);
        prop_assert_eq!(restored.stats(), tree.stats());
        for instance in d.instances() {
            prop_assert_eq!(
                restored.classify(instance).unwrap(),
                tree.classify(instance).unwrap()
            );
        }
    }

    #[test]
    fn generated_arff_round_trips(spec in data_spec()) {
        let d = realize(&spec);
        let parsed = parse_arff(&render_arff(&d)).unwrap();
        prop_assert_eq!(parsed.schema().as_ref(), d.schema().as_ref());
        prop_assert_eq!(parsed.instances(), d.instances());
    }

    #[test]
    fn folds_cover_the_dataset_exactly(spec in data_spec(), k in 2..=4usize, seed in 0..50u64) {
        let d = realize(&spec);
        prop_assume!(k <= d.len());
        let folds = stratified_folds(&d, k, seed).unwrap();
        prop_assert_eq!(folds.len(), k);

        let mut counts: HashMap<Vec<Option<usize>>, i64> = HashMap::new();
        for instance in d.instances() {
            *counts.entry(instance.values().to_vec()).or_default() += 1;
        }
        for (train, test) in &folds {
            prop_assert_eq!(train.len() + test.len(), d.len());
            prop_assert!(!test.instances().is_empty());
            for instance in test.instances() {
                *counts.entry(instance.values().to_vec()).or_default() -= 1;
            }
        }
        prop_assert!(counts.values().all(|&n| n == 0));
    }

    #[test]
    fn cross_validation_is_deterministic(spec in data_spec(), seed in 0..50u64) {
        let d = realize(&spec);
        prop_assume!(d.len() >= 2);
        let k = d.len().min(3);
        let cfg = InductionConfig { min_instances_per_leaf: 1, ..InductionConfig::default() };
        let first = cross_validate(&d, k, seed, &cfg).unwrap();
        let second = cross_validate(&d, k, seed, &cfg).unwrap();
        prop_assert_eq!(&first, &second);
        prop_assert_eq!(first.to_json(), second.to_json());
        prop_assert!((first.confusion.total() - d.total_weight()).abs() <= 1e-9);

        let parsed: tendmine::EvaluationReport = serde_json::from_str(&first.to_json()).unwrap();
        prop_assert_eq!(&parsed, &first);
    }

    #[test]
    fn roc_area_matches_brute_force(
        items in vec((0..=10u8, any::<bool>(), 1..=3u8), 1..=12)
    ) {
        let items: Vec<(f64, bool, f64)> = items
            .into_iter()
            .map(|(score, positive, weight)| (score as f64 / 10.0, positive, weight as f64))
            .collect();
        let fast = roc_area(&items);
        let slow = brute_force_roc(&items);
        prop_assert_eq!(fast.is_some(), slow.is_some());
        if let (Some(fast), Some(slow)) = (fast, slow) {
            prop_assert!((fast - slow).abs() <= 1e-12, "{fast} vs {slow}");
            let complemented: Vec<(f64, bool, f64)> =
                items.iter().map(|&(s, p, w)| (s, !p, w)).collect();
            let complement = roc_area(&complemented).unwrap();
            prop_assert!((fast + complement - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn kappa_matches_its_definition(
        cells in (2..=3usize).prop_flat_map(|k| vec(vec(0.0..5.0f64, k..=k), k..=k))
    ) {
        let total: f64 = cells.iter().flatten().sum();
        prop_assume!(total > 0.0);
        let m = ConfusionMatrix::from_cells(cells.clone()).unwrap();
        let observed = m.correct_weight() / total;
        let expected: f64 = (0..cells.len())
            .map(|c| m.actual_totals()[c] * m.predicted_totals()[c] / (total * total))
            .sum();
        let value = kappa(&m).unwrap();
        if 1.0 - expected <= f64::EPSILON {
            prop_assert_eq!(value, 0.0);
        } else {
            let direct = (observed - expected) / (1.0 - expected);
            prop_assert!((value - direct).abs() <= 1e-9);
            prop_assert!(value <= 1.0 + 1e-12);
        }
    }
}
