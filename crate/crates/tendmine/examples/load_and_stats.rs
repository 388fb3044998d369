//! Parse an ARFF corpus and summarize it: schema, class balance, and an
//! attribute-by-class crosstab.

use tendmine::{corpus, parse_arff};

fn main() -> tendmine::Result<()> {
    let data = parse_arff(corpus::BLOGGERS_ARFF)?;
    let schema = data.schema();

    println!("{} instances, {} attributes", data.len(), schema.attributes().len());
    for attribute in schema.attributes() {
        println!("  {} {{{}}}", attribute.name(), attribute.values().join(", "));
    }

    let class = schema.class_attribute();
    let distribution = data.class_distribution();
    println!("\nclass {}:", class.name());
    for (name, weight) in class.values().iter().zip(distribution.weights()) {
        println!("  {name:<8}{weight}");
    }

    let caprice = schema.attribute_index("caprice").expect("corpus attribute");
    let crosstab = data.crosstab(caprice)?;
    println!("\ncaprice x {}:", class.name());
    print!("{:<10}", "");
    for name in class.values() {
        print!("{name:>8}");
    }
    println!("{:>8}", "total");
    for (value, row) in schema.attributes()[caprice].values().iter().zip(crosstab.cells()) {
        print!("{value:<10}");
        for cell in row {
            print!("{cell:>8}");
        }
        println!("{:>8}", row.iter().sum::<f64>());
    }
    println!("cells sum to {}", crosstab.total());

    Ok(())
}
