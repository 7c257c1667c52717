use super::part::Part;

/// A node of the part tree: either a leaf part or a nested group.
#[derive(Clone, Debug)]
pub enum ScoreNode {
    Part(Part),
    Group(PartGroup),
}

/// Ordered tree of parts, mirroring bracketed instrument groups.
#[derive(Clone, Debug, Default)]
pub struct PartGroup {
    pub name: Option<String>,
    pub children: Vec<ScoreNode>,
}

impl PartGroup {
    pub fn new() -> PartGroup {
        PartGroup::default()
    }

    pub fn from_parts(parts: Vec<Part>) -> PartGroup {
        PartGroup {
            name: None,
            children: parts.into_iter().map(ScoreNode::Part).collect(),
        }
    }

    pub fn push_part(&mut self, part: Part) {
        self.children.push(ScoreNode::Part(part));
    }

    /// Leaf parts in depth-first order.
    pub fn parts(&self) -> Vec<&Part> {
        let mut out = Vec::new();
        collect(&self.children, &mut out);
        out
    }

    pub fn parts_mut(&mut self) -> Vec<&mut Part> {
        let mut out = Vec::new();
        collect_mut(&mut self.children, &mut out);
        out
    }

    pub fn leaf_count(&self) -> usize {
        self.parts().len()
    }
}

fn collect<'a>(children: &'a [ScoreNode], out: &mut Vec<&'a Part>) {
    for child in children {
        match child {
            ScoreNode::Part(p) => out.push(p),
            ScoreNode::Group(g) => collect(&g.children, out),
        }
    }
}

fn collect_mut<'a>(children: &'a mut [ScoreNode], out: &mut Vec<&'a mut Part>) {
    for child in children {
        match child {
            ScoreNode::Part(p) => out.push(p),
            ScoreNode::Group(g) => collect_mut(&mut g.children, out),
        }
    }
}
