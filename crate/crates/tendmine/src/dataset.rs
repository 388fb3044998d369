//! Tabular data model: nominal attributes, weighted instances, partitions.
//!
//! A [`Dataset`] is an immutable table of [`Instance`] rows conforming to a
//! shared [`DatasetSchema`]. Every attribute is nominal; cell values are
//! stored as indices into the attribute's declared value list, with `None`
//! marking a missing value. Instance weights default to 1 and become
//! fractional only through missing-value routing in
//! [`Dataset::partition_by_attribute`].

use std::sync::Arc;

use crate::error::{Error, Result};

const WEIGHT_EPSILON: f64 = 1e-12;

fn validate_token(kind: &str, token: &str) -> Result<()> {
    if token.is_empty() {
        return Err(Error::schema(format!("{kind} must not be empty")));
    }
    if token == "?" {
        return Err(Error::schema(format!(
            "{kind} `?` is reserved for missing values"
        )));
    }
    if let Some(bad) = token
        .chars()
        .find(|c| c.is_whitespace() || matches!(c, ',' | '{' | '}' | '%' | '"' | '\''))
    {
        return Err(Error::schema(format!(
            "{kind} `{token}` contains the unsupported character `{bad}`"
        )));
    }
    Ok(())
}

/// A nominal attribute: a name plus its ordered list of admissible values.
///
/// Value tokens are case-folded to lower case on construction so that inputs
/// differing only by case map to the same value index. Tokens must be plain
/// words: no whitespace, commas, braces, quotes, or `%`, and never the
/// reserved missing marker `?`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeSpec {
    name: String,
    values: Vec<String>,
}

impl AttributeSpec {
    /// Builds an attribute, case-folding and validating every value token.
    pub fn new<N, I, V>(name: N, values: I) -> Result<Self>
    where
        N: Into<String>,
        I: IntoIterator<Item = V>,
        V: Into<String>,
    {
        let name = name.into();
        validate_token("attribute name", &name)?;
        let values: Vec<String> = values
            .into_iter()
            .map(|v| v.into().to_lowercase())
            .collect();
        if values.is_empty() {
            return Err(Error::schema(format!(
                "attribute `{name}` has an empty value list"
            )));
        }
        for (i, value) in values.iter().enumerate() {
            validate_token("value token", value)?;
            if values[..i].contains(value) {
                return Err(Error::schema(format!(
                    "attribute `{name}` declares the value `{value}` twice"
                )));
            }
        }
        Ok(AttributeSpec { name, values })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[String] {
        &self.values
    }

    /// Looks up a value token case-insensitively.
    pub fn value_index(&self, token: &str) -> Option<usize> {
        let folded = token.to_lowercase();
        self.values.iter().position(|v| *v == folded)
    }
}

/// Ordered attribute list plus the position of the class attribute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetSchema {
    attributes: Vec<AttributeSpec>,
    class_index: usize,
}

impl DatasetSchema {
    /// Validates attribute-name uniqueness and the class position.
    pub fn new(attributes: Vec<AttributeSpec>, class_index: usize) -> Result<Self> {
        if attributes.is_empty() {
            return Err(Error::schema("a schema needs at least one attribute"));
        }
        if class_index >= attributes.len() {
            return Err(Error::schema(format!(
                "class index {class_index} is out of range for {} attributes",
                attributes.len()
            )));
        }
        for (i, attr) in attributes.iter().enumerate() {
            let folded = attr.name().to_lowercase();
            if attributes[..i]
                .iter()
                .any(|other| other.name().to_lowercase() == folded)
            {
                return Err(Error::schema(format!(
                    "duplicate attribute name `{}`",
                    attr.name()
                )));
            }
        }
        Ok(DatasetSchema {
            attributes,
            class_index,
        })
    }

    pub fn attributes(&self) -> &[AttributeSpec] {
        &self.attributes
    }

    pub fn attribute(&self, index: usize) -> Option<&AttributeSpec> {
        self.attributes.get(index)
    }

    pub fn class_index(&self) -> usize {
        self.class_index
    }

    pub fn class_attribute(&self) -> &AttributeSpec {
        &self.attributes[self.class_index]
    }

    /// Number of class values.
    pub fn class_count(&self) -> usize {
        self.class_attribute().values().len()
    }

    /// Finds an attribute by name, case-insensitively.
    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        let folded = name.to_lowercase();
        self.attributes
            .iter()
            .position(|a| a.name().to_lowercase() == folded)
    }

    /// Indices of every non-class attribute, in schema order.
    pub fn candidate_attributes(&self) -> Vec<usize> {
        (0..self.attributes.len())
            .filter(|&i| i != self.class_index)
            .collect()
    }

    fn check_split_attribute(&self, attribute: usize) -> Result<&AttributeSpec> {
        if attribute == self.class_index {
            return Err(Error::invalid(format!(
                "attribute `{}` is the class attribute",
                self.class_attribute().name()
            )));
        }
        self.attribute(attribute).ok_or_else(|| {
            Error::invalid(format!(
                "attribute index {attribute} is out of range for {} attributes",
                self.attributes.len()
            ))
        })
    }
}

/// One weighted row: per-attribute value indices with `None` for missing.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    values: Vec<Option<usize>>,
    weight: f64,
}

impl Instance {
    /// An instance with weight 1.
    pub fn new(values: Vec<Option<usize>>) -> Self {
        Instance { values, weight: 1.0 }
    }

    pub fn with_weight(values: Vec<Option<usize>>, weight: f64) -> Self {
        Instance { values, weight }
    }

    pub fn values(&self) -> &[Option<usize>] {
        &self.values
    }

    /// The value index for one attribute, `None` when missing or out of range.
    pub fn value(&self, attribute: usize) -> Option<usize> {
        self.values.get(attribute).copied().flatten()
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }
}

/// Class weights aligned with the class attribute's value list.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassDistribution {
    weights: Vec<f64>,
}

impl ClassDistribution {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::invalid(
                "class weights must be finite and non-negative",
            ));
        }
        Ok(ClassDistribution { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn class_count(&self) -> usize {
        self.weights.len()
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Largest class weight.
    pub fn max_weight(&self) -> f64 {
        self.weights.iter().cloned().fold(0.0, f64::max)
    }

    /// Index of the heaviest class; ties resolve to the lowest index.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &w) in self.weights.iter().enumerate() {
            if w > self.weights[best] {
                best = i;
            }
        }
        best
    }

    /// True when all weight sits in a single class (or the total is zero).
    pub fn is_pure(&self) -> bool {
        self.total() - self.max_weight() <= WEIGHT_EPSILON
    }

    /// Per-class proportions; all zeros when the total is zero.
    pub fn proportions(&self) -> Vec<f64> {
        let total = self.total();
        if total <= 0.0 {
            return vec![0.0; self.weights.len()];
        }
        self.weights.iter().map(|w| w / total).collect()
    }
}

/// Attribute-value by class weight table.
#[derive(Debug, Clone, PartialEq)]
pub struct Crosstab {
    cells: Vec<Vec<f64>>,
}

impl Crosstab {
    /// Cell grid: one row per attribute value, one column per class.
    pub fn cells(&self) -> &[Vec<f64>] {
        &self.cells
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.cells.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<f64> {
        let columns = self.cells.first().map_or(0, Vec::len);
        let mut sums = vec![0.0; columns];
        for row in &self.cells {
            for (sum, cell) in sums.iter_mut().zip(row) {
                *sum += cell;
            }
        }
        sums
    }

    pub fn total(&self) -> f64 {
        self.row_sums().iter().sum()
    }
}

/// An immutable table of instances sharing one schema.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    schema: Arc<DatasetSchema>,
    instances: Vec<Instance>,
}

impl Dataset {
    /// Builds a dataset, validating every instance against the schema.
    pub fn new(schema: Arc<DatasetSchema>, instances: Vec<Instance>) -> Result<Self> {
        for (i, instance) in instances.iter().enumerate() {
            if instance.values().len() != schema.attributes().len() {
                return Err(Error::schema(format!(
                    "instance {i} has {} values but the schema declares {} attributes",
                    instance.values().len(),
                    schema.attributes().len()
                )));
            }
            for (a, value) in instance.values().iter().enumerate() {
                if let Some(v) = value {
                    let arity = schema.attributes()[a].values().len();
                    if *v >= arity {
                        return Err(Error::schema(format!(
                            "instance {i} has value index {v} for attribute `{}` of arity {arity}",
                            schema.attributes()[a].name()
                        )));
                    }
                }
            }
            if !instance.weight().is_finite() || instance.weight() < 0.0 {
                return Err(Error::schema(format!(
                    "instance {i} has an invalid weight {}",
                    instance.weight()
                )));
            }
        }
        Ok(Dataset { schema, instances })
    }

    pub(crate) fn from_parts(schema: Arc<DatasetSchema>, instances: Vec<Instance>) -> Self {
        Dataset { schema, instances }
    }

    pub fn schema(&self) -> &Arc<DatasetSchema> {
        &self.schema
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.instances.iter().map(Instance::weight).sum()
    }

    /// The class value index of one instance, `None` when missing.
    pub fn class_of(&self, instance: &Instance) -> Option<usize> {
        instance.value(self.schema.class_index())
    }

    /// Summed instance weight per class value.
    ///
    /// Instances with a missing class contribute to no class, so the
    /// distribution total can fall short of [`Dataset::total_weight`] when
    /// class values are absent.
    pub fn class_distribution(&self) -> ClassDistribution {
        let mut weights = vec![0.0; self.schema.class_count()];
        for instance in &self.instances {
            if let Some(c) = self.class_of(instance) {
                weights[c] += instance.weight();
            }
        }
        ClassDistribution { weights }
    }

    /// Splits into one sub-dataset per value of a non-class attribute.
    ///
    /// Instances with a known value land in exactly one subset. Instances
    /// missing the value are copied into every subset that received known
    /// weight, scaled by that subset's share of the known weight; when no
    /// instance has a known value, missing weight is spread uniformly so the
    /// partition always conserves total weight.
    pub fn partition_by_attribute(&self, attribute: usize) -> Result<Vec<Dataset>> {
        let spec = self.schema.check_split_attribute(attribute)?;
        let arity = spec.values().len();
        let mut subsets: Vec<Vec<Instance>> = vec![Vec::new(); arity];
        let mut known_weight = vec![0.0; arity];
        let mut missing: Vec<&Instance> = Vec::new();
        for instance in &self.instances {
            match instance.value(attribute) {
                Some(v) => {
                    known_weight[v] += instance.weight();
                    subsets[v].push(instance.clone());
                }
                None => missing.push(instance),
            }
        }
        let known_total: f64 = known_weight.iter().sum();
        for instance in missing {
            if known_total > 0.0 {
                for (v, subset) in subsets.iter_mut().enumerate() {
                    if known_weight[v] > 0.0 {
                        let share = known_weight[v] / known_total;
                        subset.push(Instance::with_weight(
                            instance.values().to_vec(),
                            instance.weight() * share,
                        ));
                    }
                }
            } else {
                for subset in subsets.iter_mut() {
                    subset.push(Instance::with_weight(
                        instance.values().to_vec(),
                        instance.weight() / arity as f64,
                    ));
                }
            }
        }
        Ok(subsets
            .into_iter()
            .map(|instances| Dataset::from_parts(self.schema.clone(), instances))
            .collect())
    }

    /// Attribute-value by class weight table for a non-class attribute.
    ///
    /// Rows follow the attribute's value order and row sums equal the
    /// corresponding [`Dataset::partition_by_attribute`] subset weights.
    pub fn crosstab(&self, attribute: usize) -> Result<Crosstab> {
        let subsets = self.partition_by_attribute(attribute)?;
        let cells = subsets
            .iter()
            .map(|s| s.class_distribution().weights().to_vec())
            .collect();
        Ok(Crosstab { cells })
    }

    /// Returns a dataset identical to this one with the class attribute
    /// re-pointed at the named column.
    pub fn with_class(&self, name: &str) -> Result<Dataset> {
        let index = self.schema.attribute_index(name).ok_or_else(|| {
            Error::schema(format!("unknown class attribute `{name}`"))
        })?;
        let schema = DatasetSchema::new(self.schema.attributes().to_vec(), index)?;
        Ok(Dataset {
            schema: Arc::new(schema),
            instances: self.instances.clone(),
        })
    }

    /// Serializes to the supported ARFF subset.
    ///
    /// Instance weights are not representable in ARFF and are omitted; the
    /// round trip through [`crate::parse_arff`] is exact for datasets whose
    /// weights are all 1 and whose class is the last attribute.
    pub fn to_arff(&self, relation: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("@relation {relation}\n\n"));
        for attr in self.schema.attributes() {
            out.push_str(&format!(
                "@attribute {} {{{}}}\n",
                attr.name(),
                attr.values().join(",")
            ));
        }
        out.push_str("\n@data\n");
        for instance in &self.instances {
            let row: Vec<&str> = instance
                .values()
                .iter()
                .enumerate()
                .map(|(a, value)| match value {
                    Some(v) => self.schema.attributes()[a].values()[*v].as_str(),
                    None => "?",
                })
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}
