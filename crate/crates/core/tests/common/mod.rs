//! Independent oracles and instance generators shared by the integration
//! tests. Nothing here calls the solver code it is used to check.
#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use steiner_anneal::graph::NodeId;
use steiner_anneal::{GraphArc, Instance, LaminarFamily};

pub const INF: i64 = i64::MAX / 4;

/// A random directed instance on `n` nodes with root 0 and `b` terminals.
/// A random arborescence from the root keeps every node reachable; `extra`
/// further arcs are added at random. Costs are integers in `1..=10`.
pub fn random_instance<R: Rng>(rng: &mut R, n: usize, b: usize, extra: usize) -> Instance {
    assert!(b < n);
    let mut order: Vec<NodeId> = (1..n).collect();
    order.shuffle(rng);
    let mut placed = vec![0];
    let mut arcs = Vec::new();
    for &v in &order {
        let u = placed[rng.gen_range(0..placed.len())];
        arcs.push(GraphArc::new(u, v, rng.gen_range(1..=10) as f64));
        placed.push(v);
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            arcs.push(GraphArc::new(u, v, rng.gen_range(1..=10) as f64));
        }
    }
    let mut terminals = order.clone();
    terminals.shuffle(rng);
    terminals.truncate(b);
    Instance::new(n, arcs, 0, terminals).unwrap()
}

/// One of the small oracle instances: `n <= 8`, `b` in `{2, 3, 4}`.
pub fn small_instance<R: Rng>(rng: &mut R) -> Instance {
    let b = rng.gen_range(2..=4);
    let n = rng.gen_range(b + 2..=8);
    let extra = rng.gen_range(2..=18 - (n - 1));
    random_instance(rng, n, b, extra)
}

fn int_cost(c: f64) -> i64 {
    assert!(c.fract() == 0.0, "oracles need integer costs, got {c}");
    c as i64
}

/// Floyd-Warshall over integer costs.
pub fn floyd(instance: &Instance) -> Vec<Vec<i64>> {
    let n = instance.node_count();
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for a in instance.arcs() {
        let c = int_cost(a.cost);
        if c < d[a.tail][a.head] {
            d[a.tail][a.head] = c;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// `z(r, K)` by trying every assignment of a splitting node to every
/// non-singleton set of `family`.
pub fn brute_structure(instance: &Instance, dist: &[Vec<i64>], family: &LaminarFamily) -> i64 {
    let n = instance.node_count();
    let nodes = family.nodes();
    let internal: Vec<usize> = (0..nodes.len()).filter(|&i| !nodes[i].children.is_empty()).collect();
    let root = family.root();
    let leaf_terminal = |i: usize| instance.terminal(nodes[i].set.iter().next().unwrap());
    if internal.is_empty() {
        return dist[instance.root()][leaf_terminal(root)];
    }
    let mut split = vec![0usize; nodes.len()];
    let mut best = INF;
    let total = n.pow(internal.len() as u32);
    for code in 0..total {
        let mut c = code;
        for &i in &internal {
            split[i] = c % n;
            c /= n;
        }
        let mut cost = dist[instance.root()][split[root]];
        for &i in &internal {
            for &ch in &nodes[i].children {
                let to = if nodes[ch].children.is_empty() {
                    leaf_terminal(ch)
                } else {
                    split[ch]
                };
                cost = (cost + dist[split[i]][to]).min(INF);
            }
        }
        best = best.min(cost);
    }
    best
}

/// The Steiner optimum by enumerating arc subsets: the cheapest subset in
/// which every terminal is reachable from the root. Branches are cut once
/// they cost at least the best subset found so far.
pub fn exhaustive_opt(instance: &Instance) -> i64 {
    let arcs: Vec<(usize, usize, i64)> = instance
        .arcs()
        .iter()
        .map(|a| (a.tail, a.head, int_cost(a.cost)))
        .collect();
    assert!(arcs.len() <= 24, "too many arcs for enumeration");
    let need: u64 = instance.terminals().iter().fold(0, |m, &t| m | 1 << t);
    let covers = |chosen: u32| {
        let mut reached: u64 = 1 << instance.root();
        loop {
            let mut next = reached;
            for (i, &(u, v, _)) in arcs.iter().enumerate() {
                if chosen >> i & 1 == 1 && reached >> u & 1 == 1 {
                    next |= 1 << v;
                }
            }
            if next == reached {
                return reached & need == need;
            }
            reached = next;
        }
    };
    fn go(i: usize, chosen: u32, cost: i64, arcs: &[(usize, usize, i64)], best: &mut i64, covers: &dyn Fn(u32) -> bool) {
        if cost >= *best {
            return;
        }
        if i == arcs.len() {
            if covers(chosen) {
                *best = cost;
            }
            return;
        }
        go(i + 1, chosen | 1 << i, cost + arcs[i].2, arcs, best, covers);
        go(i + 1, chosen, cost, arcs, best, covers);
    }
    let mut best = INF;
    go(0, 0, 0, &arcs, &mut best, &covers);
    best
}

/// Dreyfus-Wagner for rooted directed Steiner trees, with a Dijkstra sweep
/// on reversed arcs in place of the dense closure step. `O(3^b n + 2^b m
/// log n)`.
pub fn dreyfus_wagner(instance: &Instance) -> i64 {
    let n = instance.node_count();
    let b = instance.terminals().len();
    let mut rev: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for a in instance.arcs() {
        rev[a.head].push((a.tail, int_cost(a.cost)));
    }
    // Relaxes `f` backwards along arcs: f[v] = min_u dist(v, u) + f[u].
    let sweep = |f: &mut Vec<i64>| {
        let mut heap: BinaryHeap<Reverse<(i64, usize)>> =
            f.iter().enumerate().filter(|(_, &d)| d < INF).map(|(v, &d)| Reverse((d, v))).collect();
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > f[u] {
                continue;
            }
            for &(v, c) in &rev[u] {
                if d + c < f[v] {
                    f[v] = d + c;
                    heap.push(Reverse((d + c, v)));
                }
            }
        }
    };
    let full = (1usize << b) - 1;
    let mut f: Vec<Vec<i64>> = vec![Vec::new(); full + 1];
    for (k, &t) in instance.terminals().iter().enumerate() {
        let mut row = vec![INF; n];
        row[t] = 0;
        sweep(&mut row);
        f[1 << k] = row;
    }
    for s in 1..=full {
        if s.count_ones() < 2 {
            continue;
        }
        let low = s & s.wrapping_neg();
        let mut row = vec![INF; n];
        // Subsets containing the lowest element, each split counted once.
        let rest = s ^ low;
        let mut a = rest;
        loop {
            let left = a | low;
            if left != s {
                let right = s ^ left;
                for v in 0..n {
                    let c = f[left][v] + f[right][v];
                    if c < row[v] {
                        row[v] = c;
                    }
                }
            }
            if a == 0 {
                break;
            }
            a = (a - 1) & rest;
        }
        sweep(&mut row);
        f[s] = row;
    }
    f[full][instance.root()]
}

/// `(2b - 3)!!`, the number of rooted binary trees on `b` labelled leaves.
pub fn double_factorial_count(b: usize) -> usize {
    (1..b).map(|i| 2 * i - 1).product::<usize>().max(1)
}

/// Every arc of `arcs` reachable from the root, and all terminals reached.
pub fn connects_terminals(instance: &Instance, arcs: &[usize]) -> bool {
    let n = instance.node_count();
    let mut reached = vec![false; n];
    reached[instance.root()] = true;
    loop {
        let mut changed = false;
        for &a in arcs {
            let arc = instance.arc(a);
            if reached[arc.tail] && !reached[arc.head] {
                reached[arc.head] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    instance.terminals().iter().all(|&t| reached[t])
}

/// Checks that `arcs` form an arborescence rooted at the root whose leaves
/// are terminals.
pub fn is_steiner_arborescence(instance: &Instance, arcs: &[usize]) -> bool {
    let n = instance.node_count();
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    for &a in arcs {
        let arc = instance.arc(a);
        indeg[arc.head] += 1;
        outdeg[arc.tail] += 1;
    }
    if indeg[instance.root()] != 0 || indeg.iter().any(|&d| d > 1) {
        return false;
    }
    // With in-degree at most one, connectivity from the root rules out cycles.
    let mut reached = vec![false; n];
    reached[instance.root()] = true;
    let mut count = 0;
    loop {
        let mut changed = false;
        for &a in arcs {
            let arc = instance.arc(a);
            if reached[arc.tail] && !reached[arc.head] {
                reached[arc.head] = true;
                count += 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if count != arcs.len() || !instance.terminals().iter().all(|&t| reached[t]) {
        return false;
    }
    (0..n).all(|v| v == instance.root() || indeg[v] == 0 || outdeg[v] > 0 || instance.is_terminal(v))
}

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub file: String,
    pub path: PathBuf,
    pub opt: f64,
}

impl CorpusEntry {
    /// Rectilinear grid instances carry terminal coordinates.
    pub fn is_rectilinear(&self) -> bool {
        self.file.starts_with("rect")
    }
}

/// Entries of `fixtures/corpus/manifest.csv`.
pub fn corpus() -> Vec<CorpusEntry> {
    let dir = fixture_dir().join("corpus");
    let text = std::fs::read_to_string(dir.join("manifest.csv")).expect("corpus manifest");
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (file, opt) = l.split_once(',').expect("path,opt");
            CorpusEntry {
                file: file.to_string(),
                path: dir.join(file),
                opt: opt.parse().expect("numeric optimum"),
            }
        })
        .collect()
}
