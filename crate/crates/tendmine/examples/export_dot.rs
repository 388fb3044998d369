//! Emit the pruned bloggers tree as DOT, ready for Graphviz:
//!
//! ```sh
//! cargo run --example export_dot | dot -Tsvg -o tree.svg
//! ```

use tendmine::{build_tree, corpus, InductionConfig};

fn main() -> tendmine::Result<()> {
    let data = corpus::bloggers();
    let tree = build_tree(&data, &InductionConfig::default())?;
    print!("{}", tree.export_dot());
    Ok(())
}
