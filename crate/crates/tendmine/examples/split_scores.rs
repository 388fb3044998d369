//! Score every candidate attribute of the bloggers corpus: entropy of the
//! class, then information gain, split info, and gain ratio per attribute.

use tendmine::{corpus, entropy, evaluate_split, select_split, InductionConfig};

fn main() -> tendmine::Result<()> {
    let data = corpus::bloggers();

    let class_bits = entropy(&data.class_distribution());
    println!("class entropy: {class_bits:.6} bits\n");

    println!(
        "{:<10}{:>12}{:>14}{:>12}",
        "attribute", "info gain", "split info", "gain ratio"
    );
    for attribute in data.schema().candidate_attributes() {
        let scores = evaluate_split(&data, attribute)?;
        let gain_ratio = scores
            .gain_ratio
            .map_or_else(|| "-".to_string(), |g| format!("{g:.6}"));
        println!(
            "{:<10}{:>12.6}{:>14.6}{:>12}",
            data.schema().attributes()[attribute].name(),
            scores.info_gain,
            scores.split_info,
            gain_ratio
        );
    }

    let candidates = data.schema().candidate_attributes();
    let by_gain_ratio = select_split(&data, &candidates, &InductionConfig::default())?
        .expect("the corpus has usable splits");
    let by_info_gain = select_split(&data, &candidates, &InductionConfig::id3())?
        .expect("the corpus has usable splits");
    println!(
        "\nbest by gain ratio: {}",
        data.schema().attributes()[by_gain_ratio.attribute].name()
    );
    println!(
        "best by info gain:  {}",
        data.schema().attributes()[by_info_gain.attribute].name()
    );

    Ok(())
}
