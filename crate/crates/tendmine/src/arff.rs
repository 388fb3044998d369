//! Parser for a nominal-only ARFF subset.
//!
//! Supported syntax: full-line `%` comments, `@relation <name>`,
//! `@attribute <name> {v1,v2,...}` declarations (nominal only), `@data`, and
//! comma-separated data rows with `?` for missing values. Value tokens are
//! matched case-insensitively against the declared lists. Numeric, string,
//! date, and relational attribute types are rejected, as are sparse data
//! rows.

use std::sync::Arc;

use crate::dataset::{AttributeSpec, Dataset, DatasetSchema, Instance};
use crate::error::{Error, Result};

/// Strips one layer of matching single or double quotes.
fn unquote(token: &str) -> &str {
    let bytes = token.as_bytes();
    if bytes.len() >= 2 {
        let (first, last) = (bytes[0], bytes[bytes.len() - 1]);
        if (first == b'\'' && last == b'\'') || (first == b'"' && last == b'"') {
            return &token[1..token.len() - 1];
        }
    }
    token
}

fn keyword(line: &str) -> Option<(&str, &str)> {
    if !line.starts_with('@') {
        return None;
    }
    let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    Some((head, rest.trim()))
}

/// Parses ARFF text into a [`Dataset`] whose class is the last attribute.
pub fn parse_arff(text: &str) -> Result<Dataset> {
    let mut attributes: Vec<AttributeSpec> = Vec::new();
    let mut relation_seen = false;
    let mut in_data = false;
    let mut instances: Vec<Instance> = Vec::new();
    let mut schema: Option<Arc<DatasetSchema>> = None;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }

        if in_data {
            if line.starts_with('{') {
                return Err(Error::unsupported(line_no, "sparse ARFF data rows"));
            }
            if line.starts_with('@') {
                return Err(Error::parse(line_no, "declaration after @data"));
            }
            let schema = schema.as_ref().expect("schema exists once @data is seen");
            instances.push(parse_row(line, line_no, schema)?);
            continue;
        }

        let Some((head, rest)) = keyword(line) else {
            return Err(Error::parse(line_no, "data row before @data"));
        };
        match head.to_lowercase().as_str() {
            "@relation" => {
                if relation_seen {
                    return Err(Error::parse(line_no, "duplicate @relation"));
                }
                if unquote(rest).is_empty() {
                    return Err(Error::parse(line_no, "@relation needs a name"));
                }
                relation_seen = true;
            }
            "@attribute" => {
                if !relation_seen {
                    return Err(Error::parse(line_no, "@attribute before @relation"));
                }
                attributes.push(parse_attribute(rest, line_no)?);
            }
            "@data" => {
                if !relation_seen {
                    return Err(Error::parse(line_no, "@data before @relation"));
                }
                if attributes.is_empty() {
                    return Err(Error::parse(line_no, "no attributes declared before @data"));
                }
                let class = attributes.len() - 1;
                let built = DatasetSchema::new(std::mem::take(&mut attributes), class)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
                schema = Some(Arc::new(built));
                in_data = true;
            }
            other => {
                return Err(Error::parse(line_no, format!("unknown keyword `{other}`")));
            }
        }
    }

    match schema {
        Some(schema) => Ok(Dataset::from_parts(schema, instances)),
        None => {
            let line_no = text.lines().count().max(1);
            Err(Error::parse(line_no, "missing @data section"))
        }
    }
}

fn parse_attribute(rest: &str, line_no: usize) -> Result<AttributeSpec> {
    let rest = rest.trim();
    let (name_part, type_part) = match rest.starts_with('\'') || rest.starts_with('"') {
        true => {
            let quote = rest.chars().next().unwrap();
            let end = rest[1..]
                .find(quote)
                .map(|p| p + 1)
                .ok_or_else(|| Error::parse(line_no, "unterminated quoted attribute name"))?;
            (&rest[1..end], rest[end + 1..].trim())
        }
        false => rest
            .split_once(char::is_whitespace)
            .map(|(n, t)| (n, t.trim()))
            .ok_or_else(|| Error::parse(line_no, "@attribute needs a name and a type"))?,
    };
    if !(type_part.starts_with('{') && type_part.ends_with('}')) {
        let shown = type_part.split_whitespace().next().unwrap_or(type_part);
        return Err(Error::unsupported(
            line_no,
            format!("only nominal attributes are supported, found `{shown}`"),
        ));
    }
    let values = type_part[1..type_part.len() - 1]
        .split(',')
        .map(|v| unquote(v.trim()).to_string());
    AttributeSpec::new(name_part, values).map_err(|e| Error::parse(line_no, e.to_string()))
}

fn parse_row(line: &str, line_no: usize, schema: &Arc<DatasetSchema>) -> Result<Instance> {
    let tokens: Vec<&str> = line.split(',').map(|t| unquote(t.trim())).collect();
    if tokens.len() != schema.attributes().len() {
        return Err(Error::parse(
            line_no,
            format!(
                "row has {} values but the schema declares {} attributes",
                tokens.len(),
                schema.attributes().len()
            ),
        ));
    }
    let mut values = Vec::with_capacity(tokens.len());
    for (attr, token) in schema.attributes().iter().zip(&tokens) {
        if *token == "?" {
            values.push(None);
        } else {
            let index = attr.value_index(token).ok_or_else(|| {
                Error::parse(
                    line_no,
                    format!("unknown value `{token}` for attribute `{}`", attr.name()),
                )
            })?;
            values.push(Some(index));
        }
    }
    Ok(Instance::new(values))
}
