use std::fmt;
use std::hash::{Hash, Hasher};

use rand::Rng;

use super::{CommoditySet, LaminarError};

/// One set of a laminar family together with its place in the tree
/// representation.
#[derive(Clone, Debug)]
pub struct TreeNode {
    pub set: CommoditySet,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// An admissible laminar family over `b` commodities.
///
/// Nodes are stored in canonical set order (cardinality, then bitset value),
/// so children always precede their parent and the last node is `K`.
/// Equality and hashing look at the set collection only.
#[derive(Clone)]
pub struct LaminarFamily {
    commodity_count: usize,
    nodes: Vec<TreeNode>,
}

impl LaminarFamily {
    /// Validates a collection of commodity subsets of `{0, .., b-1}`.
    pub fn from_sets(
        commodity_count: usize,
        sets: impl IntoIterator<Item = CommoditySet>,
    ) -> Result<Self, LaminarError> {
        let b = commodity_count;
        let mut sets: Vec<CommoditySet> = sets.into_iter().collect();
        for s in sets.iter_mut() {
            if s.is_empty() || s.span() > b {
                return Err(LaminarError::InvalidSet(format!("{s:?}")));
            }
            *s = s.with_universe(b);
        }
        sets.sort();
        for pair in sets.windows(2) {
            if pair[0] == pair[1] {
                return Err(LaminarError::DuplicateSet(format!("{:?}", pair[0])));
            }
        }
        for (i, a) in sets.iter().enumerate() {
            for c in &sets[i + 1..] {
                if !a.is_disjoint(c) && !a.is_subset(c) {
                    return Err(LaminarError::NotLaminar(format!("{a:?}"), format!("{c:?}")));
                }
            }
        }
        let full = CommoditySet::full(b);
        if sets.binary_search(&full).is_err() {
            return Err(LaminarError::NotAdmissible(format!("{full:?}")));
        }
        for k in 0..b {
            let single = CommoditySet::singleton(b, k);
            if sets.binary_search(&single).is_err() {
                return Err(LaminarError::NotAdmissible(format!("{single:?}")));
            }
        }
        Ok(Self::from_sorted_unchecked(b, sets))
    }

    /// Builds the tree over sets that are already sorted, distinct, laminar
    /// and admissible.
    pub(crate) fn from_sorted_unchecked(commodity_count: usize, sets: Vec<CommoditySet>) -> Self {
        let m = sets.len();
        let mut nodes: Vec<TreeNode> = sets
            .into_iter()
            .map(|set| TreeNode {
                set,
                parent: None,
                children: Vec::new(),
            })
            .collect();
        for i in 0..m {
            // In a laminar family the first superset in canonical order is
            // the smallest one, i.e. the parent.
            let parent = (i + 1..m).find(|&j| nodes[i].set.is_subset(&nodes[j].set));
            nodes[i].parent = parent;
            if let Some(p) = parent {
                nodes[p].children.push(i);
            }
        }
        LaminarFamily {
            commodity_count,
            nodes,
        }
    }

    /// `{K} ∪ singletons`: every commodity splits off at the root.
    pub fn star(commodity_count: usize) -> Self {
        let b = commodity_count;
        let mut sets: Vec<CommoditySet> = (0..b).map(|k| CommoditySet::singleton(b, k)).collect();
        if b > 1 {
            sets.push(CommoditySet::full(b));
        }
        sets.sort();
        Self::from_sorted_unchecked(b, sets)
    }

    pub fn commodity_count(&self) -> usize {
        self.commodity_count
    }

    /// `|S(l)|`.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &TreeNode {
        &self.nodes[i]
    }

    /// Index of the node holding `K`.
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn sets(&self) -> impl Iterator<Item = &CommoditySet> {
        self.nodes.iter().map(|n| &n.set)
    }

    pub fn position(&self, set: &CommoditySet) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.set.cmp(set)).ok()
    }

    pub fn contains(&self, set: &CommoditySet) -> bool {
        self.position(set).is_some()
    }

    /// Every non-singleton has exactly two children (`|S(l)| = 2b - 1`).
    pub fn is_full_binary(&self) -> bool {
        self.nodes
            .iter()
            .all(|n| n.children.is_empty() || n.children.len() == 2)
    }

    /// Whether node `i` lies in the subtree rooted at node `ancestor`.
    pub fn in_subtree(&self, i: usize, ancestor: usize) -> bool {
        self.nodes[i].set.is_subset(&self.nodes[ancestor].set)
    }

    /// Newline-separated bit strings in canonical order.
    pub fn to_debug_string(&self) -> String {
        let mut out = String::new();
        for n in &self.nodes {
            out.push_str(&n.set.to_bit_string(self.commodity_count));
            out.push('\n');
        }
        out
    }

    pub fn from_debug_string(text: &str) -> Result<Self, LaminarError> {
        let mut universe = None;
        let mut sets = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let set = CommoditySet::from_bit_string(line)
                .ok_or_else(|| LaminarError::InvalidSet(line.to_string()))?;
            match universe {
                None => universe = Some(line.len()),
                Some(u) if u != line.len() => return Err(LaminarError::InvalidSet(line.to_string())),
                Some(_) => {}
            }
            sets.push(set);
        }
        Self::from_sets(universe.unwrap_or(0), sets)
    }
}

impl PartialEq for LaminarFamily {
    fn eq(&self, other: &Self) -> bool {
        self.commodity_count == other.commodity_count
            && self.nodes.len() == other.nodes.len()
            && self.sets().zip(other.sets()).all(|(a, b)| a == b)
    }
}

impl Eq for LaminarFamily {}

impl Hash for LaminarFamily {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.commodity_count.hash(state);
        for s in self.sets() {
            s.hash(state);
        }
    }
}

impl fmt::Debug for LaminarFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.sets()).finish()
    }
}

/// Mutable rooted tree whose leaves carry commodities; the working form for
/// structural edits (insertions, SPR).
#[derive(Clone, Debug)]
pub(crate) struct Topology {
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    pub leaf: Vec<Option<usize>>,
    pub root: usize,
}

impl Topology {
    pub fn single_leaf(commodity: usize) -> Self {
        Topology {
            parent: vec![None],
            children: vec![Vec::new()],
            leaf: vec![Some(commodity)],
            root: 0,
        }
    }

    pub fn from_family(family: &LaminarFamily) -> Self {
        let nodes = family.nodes();
        Topology {
            parent: nodes.iter().map(|n| n.parent).collect(),
            children: nodes.iter().map(|n| n.children.clone()).collect(),
            leaf: nodes
                .iter()
                .map(|n| {
                    if n.children.is_empty() {
                        n.set.iter().next()
                    } else {
                        None
                    }
                })
                .collect(),
            root: family.root(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    /// Splits the edge above `node` with a new internal node whose other
    /// child is a new leaf for `commodity`.
    pub fn insert_leaf_above(&mut self, node: usize, commodity: usize) {
        let leaf = self.push(Some(commodity));
        let joint = self.push(None);
        self.attach_above(node, joint, leaf);
    }

    fn push(&mut self, leaf: Option<usize>) -> usize {
        self.parent.push(None);
        self.children.push(Vec::new());
        self.leaf.push(leaf);
        self.parent.len() - 1
    }

    /// Makes `joint` the parent of `node` and `other`, in `node`'s old place.
    pub fn attach_above(&mut self, node: usize, joint: usize, other: usize) {
        let above = self.parent[node];
        self.parent[joint] = above;
        match above {
            Some(p) => {
                for c in self.children[p].iter_mut() {
                    if *c == node {
                        *c = joint;
                    }
                }
            }
            None => self.root = joint,
        }
        self.children[joint] = vec![node, other];
        self.parent[node] = Some(joint);
        self.parent[other] = Some(joint);
    }

    /// Detaches `node` and suppresses its parent, which must have exactly
    /// two children. Returns `(freed parent, sibling)`.
    pub fn prune(&mut self, node: usize) -> (usize, usize) {
        let p = self.parent[node].expect("cannot prune the root");
        let sibling = *self.children[p]
            .iter()
            .find(|&&c| c != node)
            .expect("binary parent");
        let grand = self.parent[p];
        self.parent[sibling] = grand;
        match grand {
            Some(g) => {
                for c in self.children[g].iter_mut() {
                    if *c == p {
                        *c = sibling;
                    }
                }
            }
            None => self.root = sibling,
        }
        self.parent[node] = None;
        self.parent[p] = None;
        self.children[p].clear();
        (p, sibling)
    }

    /// Recomputes every set bottom-up from the leaves and builds the family.
    pub fn to_family(&self, commodity_count: usize) -> LaminarFamily {
        let b = commodity_count;
        let mut sets: Vec<Option<CommoditySet>> = vec![None; self.len()];
        let mut stack = vec![(self.root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if let Some(k) = self.leaf[v] {
                sets[v] = Some(CommoditySet::singleton(b, k));
            } else if expanded {
                let mut acc = CommoditySet::empty(b);
                for &c in &self.children[v] {
                    acc.union_with(sets[c].as_ref().expect("child computed"));
                }
                sets[v] = Some(acc);
            } else {
                stack.push((v, true));
                for &c in &self.children[v] {
                    stack.push((c, false));
                }
            }
        }
        let mut collected: Vec<CommoditySet> = sets.into_iter().flatten().collect();
        collected.sort();
        collected.dedup();
        LaminarFamily::from_sorted_unchecked(b, collected)
    }
}

/// A full-binary family drawn uniformly from all `(2b-3)!!` of them, by
/// inserting leaves one at a time on a uniformly chosen edge (the edge above
/// the root included).
pub fn random_full_binary<R: Rng + ?Sized>(commodity_count: usize, rng: &mut R) -> LaminarFamily {
    assert!(commodity_count >= 1);
    let mut topo = Topology::single_leaf(0);
    for k in 1..commodity_count {
        let at = rng.gen_range(0..topo.len());
        topo.insert_leaf_above(at, k);
    }
    topo.to_family(commodity_count)
}

/// Every full-binary family on `b` commodities. There are `(2b-3)!!` of
/// them, so this is only meant for tiny `b`.
pub fn enumerate_full_binary(commodity_count: usize) -> Vec<LaminarFamily> {
    assert!(commodity_count >= 1);
    let mut out = Vec::new();
    let mut stack = vec![(Topology::single_leaf(0), 1usize)];
    while let Some((topo, next)) = stack.pop() {
        if next == commodity_count {
            out.push(topo.to_family(commodity_count));
            continue;
        }
        for at in 0..topo.len() {
            let mut t = topo.clone();
            t.insert_leaf_above(at, next);
            stack.push((t, next + 1));
        }
    }
    out
}

/// Refines an admissible family into a full-binary one: while a set has
/// three or more children, two of them chosen at random are merged under a
/// new set. Every input set survives.
pub fn random_binarize<R: Rng + ?Sized>(family: &LaminarFamily, rng: &mut R) -> LaminarFamily {
    if family.is_full_binary() {
        return family.clone();
    }
    let mut sets: Vec<CommoditySet> = family.sets().cloned().collect();
    for node in family.nodes() {
        if node.children.len() < 3 {
            continue;
        }
        let mut group: Vec<CommoditySet> = node
            .children
            .iter()
            .map(|&c| family.node(c).set.clone())
            .collect();
        while group.len() >= 3 {
            let i = rng.gen_range(0..group.len());
            let mut j = rng.gen_range(0..group.len() - 1);
            if j >= i {
                j += 1;
            }
            let (lo, hi) = (i.min(j), i.max(j));
            let b = group.swap_remove(hi);
            let a = group.swap_remove(lo);
            let merged = a.union(&b);
            sets.push(merged.clone());
            group.push(merged);
        }
    }
    sets.sort();
    LaminarFamily::from_sorted_unchecked(family.commodity_count(), sets)
}
