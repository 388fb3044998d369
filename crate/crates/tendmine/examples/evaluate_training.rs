//! Train on the bloggers corpus and evaluate on the same data, printing the
//! full report: per-class accuracy table, summary, and confusion matrix.

use tendmine::{build_tree, corpus, evaluate_model, InductionConfig, PriorModel};

fn main() -> tendmine::Result<()> {
    let data = corpus::bloggers();
    let tree = build_tree(&data, &InductionConfig::default())?;
    let prior = PriorModel::from_distribution(&data.class_distribution());
    let report = evaluate_model(&tree, &data, &prior)?;
    print!("{}", report.to_text());
    Ok(())
}
