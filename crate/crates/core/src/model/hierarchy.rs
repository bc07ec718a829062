use std::collections::HashSet;

use crate::error::AhpError;
use crate::matrix::JudgmentMatrix;

/// One element of the hierarchy. Leaves are indicators; internal nodes carry
/// the judgment matrix comparing their children, in child order.
#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: String,
    pub label: String,
    pub children: Vec<Node>,
    pub matrix: Option<JudgmentMatrix>,
}

impl Node {
    pub fn leaf(id: impl Into<String>, label: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            label: label.into(),
            children: Vec::new(),
            matrix: None,
        }
    }

    pub fn internal(id: impl Into<String>, label: impl Into<String>, children: Vec<Node>) -> Self {
        Self {
            id: id.into(),
            label: label.into(),
            children,
            matrix: None,
        }
    }

    pub fn with_matrix(mut self, matrix: JudgmentMatrix) -> Self {
        self.matrix = Some(matrix);
        self
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Pre-order traversal of this subtree.
    pub fn iter(&self) -> impl Iterator<Item = &Node> {
        let mut stack = vec![self];
        std::iter::from_fn(move || {
            let node = stack.pop()?;
            stack.extend(node.children.iter().rev());
            Some(node)
        })
    }

    fn find_mut(&mut self, id: &str) -> Option<&mut Node> {
        if self.id == id {
            return Some(self);
        }
        self.children.iter_mut().find_map(|c| c.find_mut(id))
    }
}

/// Goal at the root, criteria below, indicators at the leaves.
#[derive(Debug, Clone, PartialEq)]
pub struct Hierarchy {
    root: Node,
    levels: Vec<String>,
}

impl Hierarchy {
    /// Validate and wrap a tree. `levels` optionally names the layers from the
    /// root down (e.g. goal, criterion, indicator).
    pub fn new(root: Node, levels: Vec<String>) -> Result<Self, AhpError> {
        if root.is_leaf() {
            return Err(AhpError::EmptyHierarchy(root.id));
        }
        let mut seen = HashSet::new();
        for node in root.iter() {
            if !seen.insert(node.id.as_str()) {
                return Err(AhpError::DuplicateNodeId(node.id.clone()));
            }
            if let Some(m) = &node.matrix {
                check_matrix_fits(node, m)?;
            }
        }
        Ok(Self { root, levels })
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn levels(&self) -> &[String] {
        &self.levels
    }

    pub fn find(&self, id: &str) -> Option<&Node> {
        self.root.iter().find(|n| n.id == id)
    }

    /// Id of the parent of `id`, or `None` for the root or unknown ids.
    pub fn parent_of(&self, id: &str) -> Option<&Node> {
        self.root
            .iter()
            .find(|n| n.children.iter().any(|c| c.id == id))
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Node> {
        self.root.iter()
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Node> {
        self.root.iter().filter(|n| n.is_leaf())
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = &Node> {
        self.root.iter().filter(|n| !n.is_leaf())
    }

    /// Return a copy of the hierarchy with `matrix` bound to `node_id`.
    pub fn attach_matrix(&self, node_id: &str, matrix: JudgmentMatrix) -> Result<Self, AhpError> {
        let mut next = self.clone();
        let node = next
            .root
            .find_mut(node_id)
            .ok_or_else(|| AhpError::UnknownNode(node_id.to_string()))?;
        check_matrix_fits(node, &matrix)?;
        node.matrix = Some(matrix);
        Ok(next)
    }
}

fn check_matrix_fits(node: &Node, matrix: &JudgmentMatrix) -> Result<(), AhpError> {
    if node.is_leaf() {
        return Err(AhpError::LeafNode(node.id.clone()));
    }
    if matrix.order() != node.children.len() {
        return Err(AhpError::OrderMismatch {
            expected: node.children.len(),
            got: matrix.order(),
        });
    }
    Ok(())
}
