//! Stratified 10-fold cross-validation on the bloggers corpus with a fixed
//! seed; the same invocation always reproduces the same report.

use tendmine::{corpus, cross_validate, InductionConfig};

fn main() -> tendmine::Result<()> {
    let data = corpus::bloggers();
    let config = InductionConfig::default();

    let report = cross_validate(&data, 10, 1, &config)?;
    print!("{}", report.to_text());

    let again = cross_validate(&data, 10, 1, &config)?;
    println!("\nsame seed reproduces the report: {}", again == report);

    let reseeded = cross_validate(&data, 10, 42, &config)?;
    println!(
        "seed 42 accuracy: {} % (seed 1: {} %)",
        reseeded.correct_percent, report.correct_percent
    );

    Ok(())
}
