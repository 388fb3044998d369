//! Grow a decision tree for the bloggers corpus with and without pruning,
//! compare their sizes, and print the pruned tree.

use tendmine::{build_tree, corpus, InductionConfig};

fn main() -> tendmine::Result<()> {
    let data = corpus::bloggers();

    let unpruned_config = InductionConfig {
        pruning: false,
        ..InductionConfig::default()
    };
    let unpruned = build_tree(&data, &unpruned_config)?;
    let pruned = build_tree(&data, &InductionConfig::default())?;

    for (label, tree) in [("unpruned", &unpruned), ("pruned", &pruned)] {
        let stats = tree.stats();
        println!(
            "{label}: {} nodes, {} leaves",
            stats.node_count, stats.leaf_count
        );
    }

    println!("\n{}", pruned.export_text().trim_end());

    let serialized = pruned.to_model_text();
    let restored = tendmine::DecisionTree::from_model_text(&serialized)?;
    println!(
        "\nmodel text round-trips: {}",
        restored.to_model_text() == serialized
    );

    Ok(())
}
