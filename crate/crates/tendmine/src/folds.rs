//! Seeded stratified k-fold splitting.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Splits a dataset into `k` stratified `(train, test)` pairs.
///
/// Instance positions are grouped by class, each group is shuffled with a
/// ChaCha generator seeded from `seed`, the groups are concatenated in class
/// order, and positions are dealt round-robin to the folds. Every instance
/// lands in exactly one test fold, per-fold class counts differ from exact
/// proportionality by at most one, and the result is identical for a fixed
/// `(dataset, k, seed)` triple.
pub fn stratified_folds(d: &Dataset, k: usize, seed: u64) -> Result<Vec<(Dataset, Dataset)>> {
    if k < 2 || k > d.len() {
        return Err(Error::invalid(format!(
            "fold count {k} is out of range 2..={}",
            d.len()
        )));
    }
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); d.schema().class_count()];
    for (i, instance) in d.instances().iter().enumerate() {
        let class = d.class_of(instance).ok_or_else(|| {
            Error::invalid(format!("instance {i} has a missing class value"))
        })?;
        by_class[class].push(i);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for group in &mut by_class {
        group.shuffle(&mut rng);
    }
    let order: Vec<usize> = by_class.concat();

    let mut folds = Vec::with_capacity(k);
    for fold in 0..k {
        let mut train = Vec::new();
        let mut test = Vec::new();
        for (position, &instance) in order.iter().enumerate() {
            let target = if position % k == fold {
                &mut test
            } else {
                &mut train
            };
            target.push(d.instances()[instance].clone());
        }
        folds.push((
            Dataset::from_parts(d.schema().clone(), train),
            Dataset::from_parts(d.schema().clone(), test),
        ));
    }
    Ok(folds)
}
