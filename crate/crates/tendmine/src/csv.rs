//! Parser for headered CSV files of nominal tokens.
//!
//! The first non-blank line names the columns; every later line is one
//! instance. Cells are split on commas and trimmed (no quoting or embedded
//! commas). `?` or an empty cell marks a missing value. Each column's value
//! list is inferred as the lexicographically sorted set of distinct
//! case-folded tokens observed in that column.

use std::sync::Arc;

use crate::dataset::{AttributeSpec, Dataset, DatasetSchema, Instance};
use crate::error::{Error, Result};

/// Parses CSV text into a [`Dataset`].
///
/// `class_column` selects the class attribute by header name
/// (case-insensitively); when `None` the last column is the class.
pub fn parse_csv(text: &str, class_column: Option<&str>) -> Result<Dataset> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let Some((header_line, header)) = lines.next() else {
        return Err(Error::parse(1, "empty file"));
    };
    let names: Vec<&str> = header.split(',').map(str::trim).collect();
    for (i, name) in names.iter().enumerate() {
        let folded = name.to_lowercase();
        if names[..i].iter().any(|n| n.to_lowercase() == folded) {
            return Err(Error::parse(
                header_line,
                format!("duplicate column name `{name}`"),
            ));
        }
    }

    let mut rows: Vec<(usize, Vec<Option<String>>)> = Vec::new();
    for (line_no, line) in lines {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != names.len() {
            return Err(Error::parse(
                line_no,
                format!(
                    "row has {} cells but the header declares {} columns",
                    cells.len(),
                    names.len()
                ),
            ));
        }
        let tokens = cells
            .iter()
            .map(|c| match *c {
                "" | "?" => None,
                token => Some(token.to_lowercase()),
            })
            .collect();
        rows.push((line_no, tokens));
    }

    let mut attributes = Vec::with_capacity(names.len());
    for (column, name) in names.iter().enumerate() {
        let mut observed: Vec<&str> = rows
            .iter()
            .filter_map(|(_, tokens)| tokens[column].as_deref())
            .collect();
        observed.sort_unstable();
        observed.dedup();
        if observed.is_empty() {
            return Err(Error::schema(format!(
                "column `{name}` has no observed values"
            )));
        }
        attributes.push(
            AttributeSpec::new(*name, observed)
                .map_err(|e| Error::parse(header_line, e.to_string()))?,
        );
    }

    let class_index = match class_column {
        Some(name) => {
            let folded = name.to_lowercase();
            names
                .iter()
                .position(|n| n.to_lowercase() == folded)
                .ok_or_else(|| Error::schema(format!("unknown class column `{name}`")))?
        }
        None => names.len() - 1,
    };
    let schema = Arc::new(DatasetSchema::new(attributes, class_index)?);

    let instances = rows
        .into_iter()
        .map(|(_, tokens)| {
            let values = tokens
                .iter()
                .zip(schema.attributes())
                .map(|(token, attr)| {
                    token.as_deref().map(|t| {
                        attr.value_index(t)
                            .expect("inferred domains cover every observed token")
                    })
                })
                .collect();
            Instance::new(values)
        })
        .collect();
    Ok(Dataset::from_parts(schema, instances))
}
