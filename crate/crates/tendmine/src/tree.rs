//! Decision trees: structure, classification, rendering, serialization.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::dataset::{ClassDistribution, DatasetSchema, Instance};
use crate::error::{Error, Result};

/// One tree node: an attribute test or a leaf distribution.
#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode {
    /// Multi-way test on a nominal attribute, one child per value.
    Internal {
        /// Schema index of the tested attribute.
        attribute: usize,
        /// Training weight that followed each branch; used to route
        /// instances whose test value is missing.
        branch_weights: Vec<f64>,
        children: Vec<TreeNode>,
    },
    /// Terminal class distribution.
    Leaf {
        distribution: ClassDistribution,
        /// Majority class of the distribution (ties to the lowest index).
        predicted: usize,
    },
}

impl TreeNode {
    /// Builds a leaf predicting the distribution's majority class.
    pub fn leaf(distribution: ClassDistribution) -> TreeNode {
        let predicted = distribution.argmax();
        TreeNode::Leaf {
            distribution,
            predicted,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, TreeNode::Leaf { .. })
    }

    fn count(&self) -> TreeStats {
        match self {
            TreeNode::Leaf { .. } => TreeStats {
                node_count: 1,
                leaf_count: 1,
            },
            TreeNode::Internal { children, .. } => {
                let mut stats = TreeStats {
                    node_count: 1,
                    leaf_count: 0,
                };
                for child in children {
                    let sub = child.count();
                    stats.node_count += sub.node_count;
                    stats.leaf_count += sub.leaf_count;
                }
                stats
            }
        }
    }
}

/// Node and leaf totals for one tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeStats {
    pub node_count: usize,
    pub leaf_count: usize,
}

/// A classification produced by [`DecisionTree::classify`].
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    /// Predicted class value index (argmax of `probabilities`, ties to the
    /// lowest index).
    pub label: usize,
    /// Per-class probabilities summing to 1.
    pub probabilities: Vec<f64>,
}

/// An induced decision tree bound to its training schema.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    schema: Arc<DatasetSchema>,
    root: TreeNode,
    laplace_smoothing: bool,
    stats: TreeStats,
}

impl DecisionTree {
    /// Wraps a root node after validating it against the schema.
    ///
    /// Internal nodes must test distinct non-class attributes along every
    /// path with one child and one branch weight per attribute value; leaf
    /// distributions must span the class values and predict their argmax.
    pub fn new(
        schema: Arc<DatasetSchema>,
        root: TreeNode,
        laplace_smoothing: bool,
    ) -> Result<Self> {
        let mut on_path = vec![false; schema.attributes().len()];
        validate_node(&root, &schema, &mut on_path)?;
        let stats = root.count();
        Ok(DecisionTree {
            schema,
            root,
            laplace_smoothing,
            stats,
        })
    }

    pub fn schema(&self) -> &Arc<DatasetSchema> {
        &self.schema
    }

    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    pub fn stats(&self) -> TreeStats {
        self.stats
    }

    /// Whether classify applies add-one smoothing to leaf distributions.
    pub fn laplace_smoothing(&self) -> bool {
        self.laplace_smoothing
    }

    /// Routes an instance to a class distribution and normalizes it.
    ///
    /// A missing test value descends every branch, weighting each child's
    /// distribution by the branch's share of the training weight. With
    /// Laplace smoothing the probabilities are `(w_c + 1) / (W + k)`;
    /// without it they are relative frequencies, falling back to uniform
    /// when the collected distribution is all zero.
    pub fn classify(&self, instance: &Instance) -> Result<Prediction> {
        if instance.values().len() != self.schema.attributes().len() {
            return Err(Error::invalid(format!(
                "instance has {} values but the schema declares {} attributes",
                instance.values().len(),
                self.schema.attributes().len()
            )));
        }
        for (a, value) in instance.values().iter().enumerate() {
            if a == self.schema.class_index() {
                continue;
            }
            let arity = self.schema.attributes()[a].values().len();
            if let Some(v) = value {
                if *v >= arity {
                    return Err(Error::invalid(format!(
                        "value index {v} is out of range for attribute `{}`",
                        self.schema.attributes()[a].name()
                    )));
                }
            }
        }

        let weights = collect_distribution(&self.root, instance);
        let k = self.schema.class_count();
        let total: f64 = weights.iter().sum();
        let probabilities: Vec<f64> = if self.laplace_smoothing {
            weights
                .iter()
                .map(|w| (w + 1.0) / (total + k as f64))
                .collect()
        } else if total > 0.0 {
            weights.iter().map(|w| w / total).collect()
        } else {
            vec![1.0 / k as f64; k]
        };
        let mut label = 0;
        for (i, &p) in probabilities.iter().enumerate() {
            if p > probabilities[label] {
                label = i;
            }
        }
        Ok(Prediction {
            label,
            probabilities,
        })
    }

    /// Renders the tree as indented `attribute = value` lines.
    ///
    /// Each branch contributes one line; leaves append
    /// `: label (weight/errors)`. A tree that is a single leaf renders as
    /// one such suffix line, so the line count is `node_count - 1` for
    /// multi-node trees and 1 for a lone leaf.
    pub fn export_text(&self) -> String {
        let mut out = String::new();
        match &self.root {
            TreeNode::Leaf { .. } => {
                out.push_str(&leaf_suffix(&self.root, &self.schema));
                out.push('\n');
            }
            node => render_text(node, &self.schema, 0, &mut out),
        }
        out
    }

    /// Renders the tree as a DOT digraph.
    ///
    /// Every node becomes one node statement with a stable pre-order id
    /// (`n0`, `n1`, ...); every branch becomes one edge statement labeled
    /// with the attribute value. Internal nodes are labeled with the
    /// attribute name, leaves with `label (weight)`.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("digraph tendmine {\n");
        let mut next_id = 0;
        render_dot(&self.root, &self.schema, &mut next_id, &mut out);
        out.push_str("}\n");
        out
    }

    /// Serializes to the versioned line-based `tendmine-tree v1` format.
    pub fn to_model_text(&self) -> String {
        let mut out = String::from("tendmine-tree v1\n");
        let _ = writeln!(out, "laplace {}", u8::from(self.laplace_smoothing));
        let _ = writeln!(out, "class {}", self.schema.class_index());
        let _ = writeln!(out, "attributes {}", self.schema.attributes().len());
        for attr in self.schema.attributes() {
            let _ = writeln!(out, "attribute {},{}", attr.name(), attr.values().join(","));
        }
        let _ = writeln!(out, "nodes {}", self.stats.node_count);
        write_node(&self.root, &mut out);
        out
    }

    /// Parses the `tendmine-tree v1` format produced by
    /// [`DecisionTree::to_model_text`].
    pub fn from_model_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut next = |what: &str| {
            lines
                .next()
                .ok_or_else(|| Error::parse(text.lines().count().max(1), format!("missing {what}")))
        };

        let (line_no, header) = next("header")?;
        if header != "tendmine-tree v1" {
            return Err(Error::parse(line_no, "expected header `tendmine-tree v1`"));
        }
        let laplace = match field(next("laplace line")?, "laplace")? {
            (_, "0") => false,
            (_, "1") => true,
            (line_no, other) => {
                return Err(Error::parse(
                    line_no,
                    format!("laplace must be 0 or 1, found `{other}`"),
                ))
            }
        };
        let (line_no, class_text) = field(next("class line")?, "class")?;
        let class_index: usize = parse_number(class_text, line_no, "class index")?;
        let (line_no, count_text) = field(next("attributes line")?, "attributes")?;
        let attribute_count: usize = parse_number(count_text, line_no, "attribute count")?;

        let mut attributes = Vec::with_capacity(attribute_count);
        for _ in 0..attribute_count {
            let (line_no, spec_text) = field(next("attribute line")?, "attribute")?;
            let mut parts = spec_text.split(',');
            let name = parts.next().unwrap_or_default();
            let values: Vec<&str> = parts.collect();
            attributes.push(
                crate::dataset::AttributeSpec::new(name, values)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?,
            );
        }
        let schema = Arc::new(
            DatasetSchema::new(attributes, class_index)
                .map_err(|e| Error::parse(1, e.to_string()))?,
        );

        let (line_no, node_text) = field(next("nodes line")?, "nodes")?;
        let declared: usize = parse_number(node_text, line_no, "node count")?;
        let root = read_node(&mut lines, &schema, text)?;
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::parse(line_no, "trailing content after the tree"));
        }
        let tree = DecisionTree::new(schema, root, laplace)
            .map_err(|e| Error::parse(1, e.to_string()))?;
        if tree.stats.node_count != declared {
            return Err(Error::parse(
                line_no,
                format!(
                    "node count {declared} does not match the {} serialized nodes",
                    tree.stats.node_count
                ),
            ));
        }
        Ok(tree)
    }
}

fn validate_node(
    node: &TreeNode,
    schema: &DatasetSchema,
    on_path: &mut [bool],
) -> Result<()> {
    match node {
        TreeNode::Leaf {
            distribution,
            predicted,
        } => {
            if distribution.class_count() != schema.class_count() {
                return Err(Error::schema(format!(
                    "leaf distribution has {} classes but the schema declares {}",
                    distribution.class_count(),
                    schema.class_count()
                )));
            }
            if *predicted != distribution.argmax() {
                return Err(Error::schema(
                    "leaf predicted label is not the distribution argmax",
                ));
            }
            Ok(())
        }
        TreeNode::Internal {
            attribute,
            branch_weights,
            children,
        } => {
            if *attribute == schema.class_index() {
                return Err(Error::schema("internal node tests the class attribute"));
            }
            let spec = schema.attribute(*attribute).ok_or_else(|| {
                Error::schema(format!("internal node tests unknown attribute {attribute}"))
            })?;
            if on_path[*attribute] {
                return Err(Error::schema(format!(
                    "attribute `{}` repeats on a root-to-leaf path",
                    spec.name()
                )));
            }
            let arity = spec.values().len();
            if children.len() != arity || branch_weights.len() != arity {
                return Err(Error::schema(format!(
                    "node on `{}` needs {arity} children and branch weights",
                    spec.name()
                )));
            }
            if branch_weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
                return Err(Error::schema(format!(
                    "node on `{}` has an invalid branch weight",
                    spec.name()
                )));
            }
            on_path[*attribute] = true;
            for child in children {
                validate_node(child, schema, on_path)?;
            }
            on_path[*attribute] = false;
            Ok(())
        }
    }
}

fn collect_distribution(node: &TreeNode, instance: &Instance) -> Vec<f64> {
    match node {
        TreeNode::Leaf { distribution, .. } => distribution.weights().to_vec(),
        TreeNode::Internal {
            attribute,
            branch_weights,
            children,
        } => match instance.value(*attribute) {
            Some(v) => collect_distribution(&children[v], instance),
            None => {
                let total: f64 = branch_weights.iter().sum();
                let k = children.len() as f64;
                let mut mixed: Option<Vec<f64>> = None;
                for (child, &weight) in children.iter().zip(branch_weights) {
                    let share = if total > 0.0 { weight / total } else { 1.0 / k };
                    if share == 0.0 {
                        continue;
                    }
                    let sub = collect_distribution(child, instance);
                    let mixed = mixed.get_or_insert_with(|| vec![0.0; sub.len()]);
                    for (m, s) in mixed.iter_mut().zip(&sub) {
                        *m += share * s;
                    }
                }
                mixed.unwrap_or_default()
            }
        },
    }
}

fn leaf_suffix(node: &TreeNode, schema: &DatasetSchema) -> String {
    let TreeNode::Leaf {
        distribution,
        predicted,
    } = node
    else {
        unreachable!("leaf_suffix is only called on leaves");
    };
    let weight = distribution.total();
    let errors = weight - distribution.max_weight();
    format!(
        ": {} ({weight:.1}/{errors:.1})",
        schema.class_attribute().values()[*predicted]
    )
}

fn render_text(node: &TreeNode, schema: &DatasetSchema, depth: usize, out: &mut String) {
    let TreeNode::Internal {
        attribute,
        children,
        ..
    } = node
    else {
        return;
    };
    let spec = &schema.attributes()[*attribute];
    for (v, child) in children.iter().enumerate() {
        out.push_str(&"|   ".repeat(depth));
        out.push_str(&format!("{} = {}", spec.name(), spec.values()[v]));
        match child {
            TreeNode::Leaf { .. } => {
                out.push_str(&leaf_suffix(child, schema));
                out.push('\n');
            }
            _ => {
                out.push('\n');
                render_text(child, schema, depth + 1, out);
            }
        }
    }
}

fn dot_escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

fn render_dot(
    node: &TreeNode,
    schema: &DatasetSchema,
    next_id: &mut usize,
    out: &mut String,
) -> usize {
    let id = *next_id;
    *next_id += 1;
    match node {
        TreeNode::Leaf {
            distribution,
            predicted,
        } => {
            let label = format!(
                "{} ({:.1})",
                schema.class_attribute().values()[*predicted],
                distribution.total()
            );
            let _ = writeln!(out, "  n{id} [label=\"{}\"];", dot_escape(&label));
        }
        TreeNode::Internal {
            attribute,
            children,
            ..
        } => {
            let spec = &schema.attributes()[*attribute];
            let _ = writeln!(out, "  n{id} [label=\"{}\"];", dot_escape(spec.name()));
            for (v, child) in children.iter().enumerate() {
                let child_id = render_dot(child, schema, next_id, out);
                let _ = writeln!(
                    out,
                    "  n{id} -> n{child_id} [label=\"{}\"];",
                    dot_escape(&spec.values()[v])
                );
            }
        }
    }
    id
}

fn write_node(node: &TreeNode, out: &mut String) {
    match node {
        TreeNode::Leaf {
            distribution,
            predicted,
        } => {
            let weights: Vec<String> = distribution
                .weights()
                .iter()
                .map(f64::to_string)
                .collect();
            let _ = writeln!(out, "leaf {predicted} {}", weights.join(" "));
        }
        TreeNode::Internal {
            attribute,
            branch_weights,
            children,
        } => {
            let weights: Vec<String> = branch_weights.iter().map(f64::to_string).collect();
            let _ = writeln!(out, "internal {attribute} {}", weights.join(" "));
            for child in children {
                write_node(child, out);
            }
        }
    }
}

fn field<'a>(line: (usize, &'a str), name: &str) -> Result<(usize, &'a str)> {
    let (line_no, text) = line;
    if let Some(rest) = text.strip_prefix(name) {
        if rest.starts_with(char::is_whitespace) {
            let rest = rest.trim_start();
            if !rest.is_empty() {
                return Ok((line_no, rest));
            }
        }
    }
    Err(Error::parse(line_no, format!("expected `{name} ...`")))
}

fn parse_number<T: std::str::FromStr>(text: &str, line_no: usize, what: &str) -> Result<T> {
    text.parse()
        .map_err(|_| Error::parse(line_no, format!("invalid {what} `{text}`")))
}

fn read_node<'a, I>(
    lines: &mut I,
    schema: &Arc<DatasetSchema>,
    text: &str,
) -> Result<TreeNode>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (line_no, line) = lines
        .next()
        .ok_or_else(|| Error::parse(text.lines().count().max(1), "missing node line"))?;
    let mut parts = line.split_whitespace();
    let kind = parts.next().unwrap_or_default();
    match kind {
        "leaf" => {
            let predicted: usize =
                parse_number(parts.next().unwrap_or_default(), line_no, "leaf label")?;
            let weights = parts
                .map(|t| parse_number::<f64>(t, line_no, "leaf weight"))
                .collect::<Result<Vec<f64>>>()?;
            let distribution = ClassDistribution::new(weights)
                .map_err(|e| Error::parse(line_no, e.to_string()))?;
            if predicted != distribution.argmax() {
                return Err(Error::parse(
                    line_no,
                    "leaf predicted label is not the distribution argmax",
                ));
            }
            Ok(TreeNode::Leaf {
                distribution,
                predicted,
            })
        }
        "internal" => {
            let attribute: usize =
                parse_number(parts.next().unwrap_or_default(), line_no, "attribute index")?;
            let branch_weights = parts
                .map(|t| parse_number::<f64>(t, line_no, "branch weight"))
                .collect::<Result<Vec<f64>>>()?;
            let arity = schema
                .attribute(attribute)
                .map(|a| a.values().len())
                .ok_or_else(|| {
                    Error::parse(line_no, format!("unknown attribute index {attribute}"))
                })?;
            if branch_weights.len() != arity {
                return Err(Error::parse(
                    line_no,
                    format!("expected {arity} branch weights"),
                ));
            }
            let children = (0..arity)
                .map(|_| read_node(lines, schema, text))
                .collect::<Result<Vec<TreeNode>>>()?;
            Ok(TreeNode::Internal {
                attribute,
                branch_weights,
                children,
            })
        }
        other => Err(Error::parse(
            line_no,
            format!("expected `leaf` or `internal`, found `{other}`"),
        )),
    }
}
