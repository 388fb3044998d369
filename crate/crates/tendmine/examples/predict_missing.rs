//! Classify instances with the trained tree, including rows with missing
//! values, which are routed down every branch in proportion to the branch
//! weights seen in training.

use tendmine::{build_tree, corpus, InductionConfig, Instance};

fn print_prediction(tree: &tendmine::DecisionTree, instance: &Instance) -> tendmine::Result<()> {
    let class_values = tree.schema().class_attribute().values();
    let prediction = tree.classify(instance)?;
    print!("-> {}", class_values[prediction.label]);
    for (name, p) in class_values.iter().zip(&prediction.probabilities) {
        print!("  p({name}) = {p:.4}");
    }
    println!();
    Ok(())
}

fn main() -> tendmine::Result<()> {
    let data = corpus::bloggers();
    let tree = build_tree(&data, &InductionConfig::default())?;
    let schema = data.schema();

    let describe = |instance: &Instance| {
        let cells: Vec<String> = schema
            .attributes()
            .iter()
            .zip(instance.values())
            .take(schema.attributes().len() - 1)
            .map(|(attribute, value)| match value {
                Some(v) => format!("{}={}", attribute.name(), attribute.values()[*v]),
                None => format!("{}=?", attribute.name()),
            })
            .collect();
        cells.join(" ")
    };

    let complete = &data.instances()[2];
    println!("{}", describe(complete));
    print_prediction(&tree, complete)?;

    let mut values = complete.values().to_vec();
    values[schema.attribute_index("degree").expect("corpus attribute")] = None;
    values[schema.class_index()] = None;
    let partial = Instance::new(values);
    println!("\n{}", describe(&partial));
    print_prediction(&tree, &partial)?;

    Ok(())
}
