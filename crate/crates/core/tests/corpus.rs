//! The benchmark corpus under `fixtures/corpus`: SteinLib-format instances
//! with optima from a Dreyfus-Wagner oracle.
//!
//! `cargo test --test corpus -- --ignored regenerate` rewrites the files.

mod common;

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use steiner_anneal::io::{parse_stp, to_instance, write_stp, Link, RawStpInstance, RootPolicy};

use common::{corpus, dreyfus_wagner, exhaustive_opt, fixture_dir, small_instance};

fn link(tail: usize, head: usize, cost: f64, directed: bool) -> Link {
    Link {
        tail,
        head,
        cost,
        directed,
    }
}

/// Sparse undirected graph in the style of SteinLib's random series: a
/// random spanning tree plus random extra edges, costs uniform in 1..=10.
fn random_sparse(name: &str, n: usize, m: usize, terminals: usize, rng: &mut ChaCha8Rng) -> RawStpInstance {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut seen = HashSet::new();
    let mut links = Vec::with_capacity(m);
    for i in 1..n {
        let u = order[rng.gen_range(0..i)];
        let v = order[i];
        seen.insert((u.min(v), u.max(v)));
        links.push(link(u, v, rng.gen_range(1..=10) as f64, false));
    }
    while links.len() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && seen.insert((u.min(v), u.max(v))) {
            links.push(link(u, v, rng.gen_range(1..=10) as f64, false));
        }
    }
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.shuffle(rng);
    nodes.truncate(terminals);
    RawStpInstance {
        name: Some(name.to_string()),
        creator: None,
        remark: None,
        nodes: n,
        links,
        terminals: nodes,
        declared_root: None,
        coordinates: None,
    }
}

/// Directed graph with a declared root: a random arborescence from the root
/// plus random arcs, costs uniform in 1..=20.
fn random_directed(name: &str, n: usize, m: usize, terminals: usize, rng: &mut ChaCha8Rng) -> RawStpInstance {
    let mut order: Vec<usize> = (1..n).collect();
    order.shuffle(rng);
    let mut placed = vec![0];
    let mut seen = HashSet::new();
    let mut links = Vec::with_capacity(m);
    for &v in &order {
        let u = placed[rng.gen_range(0..placed.len())];
        seen.insert((u, v));
        links.push(link(u, v, rng.gen_range(1..=20) as f64, true));
        placed.push(v);
    }
    while links.len() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(1..n));
        if u != v && seen.insert((u, v)) {
            links.push(link(u, v, rng.gen_range(1..=20) as f64, true));
        }
    }
    order.shuffle(rng);
    order.truncate(terminals);
    RawStpInstance {
        name: Some(name.to_string()),
        creator: None,
        remark: None,
        nodes: n,
        links,
        terminals: order,
        declared_root: Some(0),
        coordinates: None,
    }
}

/// Hanan grid of `points` random integer points in `[0, 100]^2`: grid lines
/// through every point, edges between neighbouring grid nodes with their
/// rectilinear length. Terminals are the original points.
fn hanan_grid(name: &str, points: usize, rng: &mut ChaCha8Rng) -> RawStpInstance {
    let mut pts: Vec<(i64, i64)> = Vec::new();
    while pts.len() < points {
        let p = (rng.gen_range(0..=100), rng.gen_range(0..=100));
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let mut xs: Vec<i64> = pts.iter().map(|p| p.0).collect();
    let mut ys: Vec<i64> = pts.iter().map(|p| p.1).collect();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    let id = |i: usize, j: usize| i * ys.len() + j;
    let mut links = Vec::new();
    let mut coordinates = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            coordinates.push(Some((x as f64, y as f64)));
            if i + 1 < xs.len() {
                links.push(link(id(i, j), id(i + 1, j), (xs[i + 1] - x) as f64, false));
            }
            if j + 1 < ys.len() {
                links.push(link(id(i, j), id(i, j + 1), (ys[j + 1] - y) as f64, false));
            }
        }
    }
    let terminals = pts
        .iter()
        .map(|p| id(xs.binary_search(&p.0).unwrap(), ys.binary_search(&p.1).unwrap()))
        .collect();
    RawStpInstance {
        name: Some(name.to_string()),
        creator: None,
        remark: None,
        nodes: xs.len() * ys.len(),
        links,
        terminals,
        declared_root: None,
        coordinates: Some(coordinates),
    }
}

fn corpus_instances() -> Vec<(String, RawStpInstance)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out = Vec::new();
    for (i, &(n, m, t)) in [
        (50, 63, 9),
        (50, 100, 10),
        (75, 94, 11),
        (75, 150, 12),
        (100, 125, 12),
        (100, 200, 12),
        (150, 300, 12),
        (200, 400, 11),
    ]
    .iter()
    .enumerate()
    {
        let name = format!("rand{n}_{}", i + 1);
        out.push((format!("{name}.stp"), random_sparse(&name, n, m, t, &mut rng)));
    }
    for &(n, m, t) in &[(500, 1000, 11), (750, 1500, 11), (1000, 2000, 11), (1000, 2500, 11)] {
        let name = format!("rand{n}_m{m}");
        out.push((format!("{name}.stp"), random_sparse(&name, n, m, t, &mut rng)));
    }
    for &(n, m, t) in &[(80, 320, 8), (120, 480, 9), (160, 640, 10), (200, 800, 10)] {
        let name = format!("dir{n}");
        out.push((format!("{name}.stp"), random_directed(&name, n, m, t, &mut rng)));
    }
    for (i, &p) in [10, 11, 11, 12, 12, 13, 13, 13].iter().enumerate() {
        let name = format!("rect{p}_{}", i + 1);
        out.push((format!("{name}.stp"), hanan_grid(&name, p, &mut rng)));
    }
    out
}

#[test]
#[ignore = "rewrites the checked-in corpus"]
fn regenerate() {
    let dir = fixture_dir().join("corpus");
    std::fs::create_dir_all(&dir).unwrap();
    let mut manifest = String::from("path,opt\n");
    for (file, raw) in corpus_instances() {
        let instance = to_instance(&raw, RootPolicy::FirstTerminal).unwrap().instance;
        let opt = dreyfus_wagner(&instance);
        std::fs::write(dir.join(&file), write_stp(&raw)).unwrap();
        writeln!(manifest, "{file},{opt}").unwrap();
    }
    std::fs::write(dir.join("manifest.csv"), manifest).unwrap();
}

#[test]
fn corpus_matches_generator() {
    let generated = corpus_instances();
    let entries = corpus();
    assert_eq!(entries.len(), generated.len());
    for (entry, (file, raw)) in entries.iter().zip(&generated) {
        assert_eq!(&entry.file, file);
        let text = std::fs::read_to_string(&entry.path).unwrap();
        assert_eq!(&parse_stp(&text).unwrap(), raw, "{file}");
    }
}

#[test]
fn corpus_optima_are_exact() {
    let entries = corpus();
    assert!(entries.len() >= 20);
    for entry in &entries {
        let raw = parse_stp(&std::fs::read_to_string(&entry.path).unwrap()).unwrap();
        let loaded = to_instance(&raw, RootPolicy::FirstTerminal).unwrap();
        let instance = &loaded.instance;
        assert!(instance.node_count() < 3500);
        // Commodities plus the root.
        assert!(instance.commodity_count() < 160);
        assert_eq!(dreyfus_wagner(instance) as f64, entry.opt, "{}", entry.file);
        assert_eq!(entry.is_rectilinear(), loaded.coordinates.is_some(), "{}", entry.file);
    }
}

#[test]
fn undirected_optimum_does_not_depend_on_the_root() {
    for entry in corpus().iter().filter(|e| e.is_rectilinear()).take(2) {
        let raw = parse_stp(&std::fs::read_to_string(&entry.path).unwrap()).unwrap();
        for &t in raw.terminals.iter().take(3) {
            let instance = to_instance(&raw, RootPolicy::Node(t)).unwrap().instance;
            assert_eq!(dreyfus_wagner(&instance) as f64, entry.opt);
        }
    }
}

#[test]
fn dreyfus_wagner_agrees_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    for _ in 0..60 {
        let instance = small_instance(&mut rng);
        assert_eq!(dreyfus_wagner(&instance), exhaustive_opt(&instance));
    }
}
