use crate::tw::decomposition::TreeDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Sorted agents.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition. Children always precede their parent, so a
/// forward pass over `nodes` is a bottom-up traversal; the root is last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// Every node matches its kind, leaves and root are empty.
    pub fn is_well_formed(&self) -> bool {
        let ok_nodes = self.nodes.iter().enumerate().all(|(i, node)| {
            if node.children.iter().any(|&c| c >= i) {
                return false;
            }
            let child_bag = |j: usize| &self.nodes[node.children[j]].bag;
            match node.kind {
                NodeKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
                NodeKind::Introduce(v) => {
                    node.children.len() == 1 && {
                        let mut expect = child_bag(0).clone();
                        !expect.contains(&v) && {
                            expect.push(v);
                            expect.sort_unstable();
                            expect == node.bag
                        }
                    }
                }
                NodeKind::Forget(v) => {
                    node.children.len() == 1 && child_bag(0).contains(&v) && {
                        let expect: Vec<usize> = child_bag(0).iter().copied().filter(|&x| x != v).collect();
                        expect == node.bag
                    }
                }
                NodeKind::Join => node.children.len() == 2 && child_bag(0) == &node.bag && child_bag(1) == &node.bag,
            }
        });
        ok_nodes && !self.nodes.is_empty() && self.nodes[self.root()].bag.is_empty()
    }
}

struct Builder<'a> {
    td: &'a TreeDecomposition,
    adj: Vec<Vec<usize>>,
    nodes: Vec<NiceNode>,
}

impl Builder<'_> {
    fn push(&mut self, kind: NodeKind, children: Vec<usize>) -> usize {
        let bag = match kind {
            NodeKind::Leaf => Vec::new(),
            NodeKind::Introduce(v) => {
                let mut b = self.nodes[children[0]].bag.clone();
                b.push(v);
                b.sort_unstable();
                b
            }
            NodeKind::Forget(v) => self.nodes[children[0]].bag.iter().copied().filter(|&x| x != v).collect(),
            NodeKind::Join => self.nodes[children[0]].bag.clone(),
        };
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Walks from `node`'s bag to `target`: forget what leaves, then
    /// introduce what arrives.
    fn transition(&mut self, mut node: usize, target: &[usize]) -> usize {
        let current = self.nodes[node].bag.clone();
        for &v in current.iter().filter(|v| !target.contains(v)) {
            node = self.push(NodeKind::Forget(v), vec![node]);
        }
        for &v in target.iter().filter(|v| !current.contains(v)) {
            node = self.push(NodeKind::Introduce(v), vec![node]);
        }
        node
    }

    /// Nice subtree whose top node carries the bag of tree node `t`.
    fn build(&mut self, t: usize, parent: Option<usize>) -> usize {
        let bag = self.td.bags()[t].clone();
        let children: Vec<usize> = self.adj[t].iter().copied().filter(|&c| Some(c) != parent).collect();
        let mut tops = Vec::new();
        for c in children {
            let sub = self.build(c, Some(t));
            tops.push(self.transition(sub, &bag));
        }
        if tops.is_empty() {
            let leaf = self.push(NodeKind::Leaf, vec![]);
            return self.transition(leaf, &bag);
        }
        let mut acc = tops[0];
        for &other in &tops[1..] {
            acc = self.push(NodeKind::Join, vec![acc, other]);
        }
        acc
    }
}

/// Nice decomposition rooted at bag 0, ending in an empty root. Every agent
/// is forgotten exactly once. Shape errors are impossible here since
/// [`TreeDecomposition`] checks them on construction.
pub fn to_nice(td: &TreeDecomposition) -> NiceDecomposition {
    let mut b = Builder { td, adj: td.adjacency(), nodes: Vec::new() };
    let top = b.build(0, None);
    b.transition(top, &[]);
    NiceDecomposition { nodes: b.nodes }
}
