use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{ArcId, GraphArc, GraphError, Instance, NodeId};
use crate::laminar::{pick_central_root, TerminalCoordinates};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StpError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{what}: declared {declared}, found {found}")]
    CountMismatch {
        what: &'static str,
        declared: usize,
        found: usize,
    },
    #[error("missing section {0}")]
    MissingSection(&'static str),
    #[error("root policy needs a Coordinates section covering every terminal")]
    NoCoordinates,
    #[error("root override {0} is out of range")]
    BadRoot(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One `E` (undirected) or `A` (directed) line, 0-based.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Link {
    pub tail: NodeId,
    pub head: NodeId,
    pub cost: f64,
    pub directed: bool,
}

/// An STP document as written, with node ids shifted to 0-based.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawStpInstance {
    pub name: Option<String>,
    pub creator: Option<String>,
    pub remark: Option<String>,
    pub nodes: usize,
    pub links: Vec<Link>,
    pub terminals: Vec<NodeId>,
    pub declared_root: Option<NodeId>,
    /// Per node, when a Coordinates section is present.
    pub coordinates: Option<Vec<Option<(f64, f64)>>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
enum Section {
    #[default]
    None,
    Comment,
    Graph,
    Terminals,
    Coordinates,
    Other,
}

fn syntax(line: usize, message: impl Into<String>) -> StpError {
    StpError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, token: Option<&str>, what: &str) -> Result<T, StpError> {
    let token = token.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| syntax(line, format!("bad {what} {token:?}")))
}

fn node_id(line: usize, token: Option<&str>, nodes: usize) -> Result<NodeId, StpError> {
    let id: usize = parse_num(line, token, "node id")?;
    if id == 0 || id > nodes {
        return Err(syntax(line, format!("node {id} outside 1..={nodes}")));
    }
    Ok(id - 1)
}

fn unquote(rest: &str) -> String {
    rest.trim().trim_matches('"').to_string()
}

/// Parses a SteinLib STP document. Keywords are case-insensitive and lines
/// outside known sections are ignored.
pub fn parse_stp(text: &str) -> Result<RawStpInstance, StpError> {
    let mut raw = RawStpInstance::default();
    let mut section = Section::None;
    let mut seen_graph = false;
    let mut seen_terminals = false;
    let mut nodes_declared = None;
    let mut edges_declared = None;
    let mut arcs_declared = None;
    let mut terminals_declared = None;
    let (mut e_lines, mut a_lines) = (0usize, 0usize);
    let mut coords: Vec<Option<(f64, f64)>> = Vec::new();

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let mut tokens = line.split_whitespace();
        let Some(first) = tokens.next() else { continue };
        let key = first.to_ascii_lowercase();
        if key == "eof" {
            break;
        }
        if key == "section" {
            let name = tokens.next().unwrap_or("").to_ascii_lowercase();
            section = match name.as_str() {
                "comment" => Section::Comment,
                "graph" => Section::Graph,
                "terminals" => Section::Terminals,
                "coordinates" => Section::Coordinates,
                _ => Section::Other,
            };
            match section {
                Section::Graph => seen_graph = true,
                Section::Terminals => seen_terminals = true,
                Section::Coordinates => {
                    let n = nodes_declared.ok_or_else(|| syntax(lineno, "Coordinates before Graph"))?;
                    coords = vec![None; n];
                    raw.coordinates = Some(Vec::new());
                }
                _ => {}
            }
            continue;
        }
        if key == "end" {
            section = Section::None;
            continue;
        }
        let rest = line.trim_start()[first.len()..].trim();
        match section {
            Section::Comment => match key.as_str() {
                "name" => raw.name = Some(unquote(rest)),
                "creator" => raw.creator = Some(unquote(rest)),
                "remark" => raw.remark = Some(unquote(rest)),
                _ => {}
            },
            Section::Graph => match key.as_str() {
                "nodes" => {
                    let n: usize = parse_num(lineno, tokens.next(), "node count")?;
                    nodes_declared = Some(n);
                    raw.nodes = n;
                }
                "edges" => edges_declared = Some(parse_num(lineno, tokens.next(), "edge count")?),
                "arcs" => arcs_declared = Some(parse_num(lineno, tokens.next(), "arc count")?),
                "e" | "a" => {
                    let n = nodes_declared.ok_or_else(|| syntax(lineno, "link before Nodes"))?;
                    let tail = node_id(lineno, tokens.next(), n)?;
                    let head = node_id(lineno, tokens.next(), n)?;
                    let cost: f64 = parse_num(lineno, tokens.next(), "cost")?;
                    let directed = key == "a";
                    if directed {
                        a_lines += 1;
                    } else {
                        e_lines += 1;
                    }
                    raw.links.push(Link {
                        tail,
                        head,
                        cost,
                        directed,
                    });
                }
                _ => {}
            },
            Section::Terminals => match key.as_str() {
                "terminals" => terminals_declared = Some(parse_num(lineno, tokens.next(), "terminal count")?),
                "t" => {
                    let n = nodes_declared.ok_or_else(|| syntax(lineno, "terminal before Nodes"))?;
                    raw.terminals.push(node_id(lineno, tokens.next(), n)?);
                }
                "root" => {
                    let n = nodes_declared.ok_or_else(|| syntax(lineno, "root before Nodes"))?;
                    raw.declared_root = Some(node_id(lineno, tokens.next(), n)?);
                }
                _ => {}
            },
            Section::Coordinates => {
                if key == "dd" {
                    let id = node_id(lineno, tokens.next(), coords.len())?;
                    let x: f64 = parse_num(lineno, tokens.next(), "x coordinate")?;
                    let y: f64 = parse_num(lineno, tokens.next(), "y coordinate")?;
                    coords[id] = Some((x, y));
                }
            }
            Section::None | Section::Other => {}
        }
    }

    if !seen_graph || nodes_declared.is_none() {
        return Err(StpError::MissingSection("Graph"));
    }
    if !seen_terminals {
        return Err(StpError::MissingSection("Terminals"));
    }
    let checks = [
        ("Edges", edges_declared, e_lines),
        ("Arcs", arcs_declared, a_lines),
        ("Terminals", terminals_declared, raw.terminals.len()),
    ];
    for (what, declared, found) in checks {
        if let Some(declared) = declared {
            if declared != found {
                return Err(StpError::CountMismatch { what, declared, found });
            }
        }
    }
    if raw.coordinates.is_some() {
        raw.coordinates = Some(coords);
    }
    Ok(raw)
}

/// Writes an STP document; `parse_stp(write_stp(raw)) == raw`.
pub fn write_stp(raw: &RawStpInstance) -> String {
    let mut out = String::from("33D32945 STP File, STP Format Version 1.0\n\nSECTION Comment\n");
    for (key, value) in [("Name", &raw.name), ("Creator", &raw.creator), ("Remark", &raw.remark)] {
        if let Some(v) = value {
            let _ = writeln!(out, "{key} \"{v}\"");
        }
    }
    out.push_str("END\n\nSECTION Graph\n");
    let _ = writeln!(out, "Nodes {}", raw.nodes);
    let edges = raw.links.iter().filter(|l| !l.directed).count();
    let arcs = raw.links.len() - edges;
    if edges > 0 || arcs == 0 {
        let _ = writeln!(out, "Edges {edges}");
    }
    if arcs > 0 {
        let _ = writeln!(out, "Arcs {arcs}");
    }
    for l in &raw.links {
        let tag = if l.directed { 'A' } else { 'E' };
        let _ = writeln!(out, "{tag} {} {} {}", l.tail + 1, l.head + 1, l.cost);
    }
    out.push_str("END\n\nSECTION Terminals\n");
    let _ = writeln!(out, "Terminals {}", raw.terminals.len());
    if let Some(r) = raw.declared_root {
        let _ = writeln!(out, "Root {}", r + 1);
    }
    for t in &raw.terminals {
        let _ = writeln!(out, "T {}", t + 1);
    }
    out.push_str("END\n");
    if let Some(coords) = &raw.coordinates {
        out.push_str("\nSECTION Coordinates\n");
        for (v, c) in coords.iter().enumerate() {
            if let Some((x, y)) = c {
                let _ = writeln!(out, "DD {} {x} {y}", v + 1);
            }
        }
        out.push_str("END\n");
    }
    out.push_str("\nEOF\n");
    out
}

/// How the root is chosen when the file declares none. A declared root
/// always wins.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RootPolicy {
    /// The first terminal of the file.
    #[default]
    FirstTerminal,
    /// A given node (0-based).
    Node(NodeId),
    /// The most central terminal by coordinates.
    Central,
}

/// Which rule produced the root, for the results CSV.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootRule {
    Declared,
    Override,
    FirstTerminal,
    Central,
}

impl RootRule {
    pub fn name(self) -> &'static str {
        match self {
            RootRule::Declared => "declared",
            RootRule::Override => "override",
            RootRule::FirstTerminal => "first",
            RootRule::Central => "central",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LoadedInstance {
    pub instance: Instance,
    pub root_rule: RootRule,
    /// Terminal positions by commodity, when the file has coordinates for
    /// all of them.
    pub coordinates: Option<TerminalCoordinates>,
}

fn terminal_points(raw: &RawStpInstance, terminals: &[NodeId]) -> Option<Vec<(f64, f64)>> {
    let coords = raw.coordinates.as_ref()?;
    terminals.iter().map(|&t| coords[t]).collect()
}

/// Builds a validated instance: `E` links are bidirected, `A` links kept,
/// the root resolved by `policy` and removed from the terminal list.
pub fn to_instance(raw: &RawStpInstance, policy: RootPolicy) -> Result<LoadedInstance, StpError> {
    let (root, rule) = match (raw.declared_root, policy) {
        (Some(r), _) => (r, RootRule::Declared),
        (None, RootPolicy::Node(v)) => {
            if v >= raw.nodes {
                return Err(StpError::BadRoot(v));
            }
            (v, RootRule::Override)
        }
        (None, RootPolicy::FirstTerminal) => {
            let &t = raw.terminals.first().ok_or(GraphError::NoTerminals)?;
            (t, RootRule::FirstTerminal)
        }
        (None, RootPolicy::Central) => {
            if raw.terminals.is_empty() {
                return Err(GraphError::NoTerminals.into());
            }
            let points = terminal_points(raw, &raw.terminals).ok_or(StpError::NoCoordinates)?;
            (raw.terminals[pick_central_root(&points)], RootRule::Central)
        }
    };
    let terminals: Vec<NodeId> = raw.terminals.iter().copied().filter(|&t| t != root).collect();
    let mut arcs = Vec::with_capacity(2 * raw.links.len());
    for l in &raw.links {
        arcs.push(GraphArc::new(l.tail, l.head, l.cost));
        if !l.directed {
            arcs.push(GraphArc::new(l.head, l.tail, l.cost));
        }
    }
    let coordinates = terminal_points(raw, &terminals)
        .map(|p| TerminalCoordinates::new(p.into_iter().map(Some).collect()).expect("all present"));
    let instance = Instance::new(raw.nodes, arcs, root, terminals)?;
    Ok(LoadedInstance {
        instance,
        root_rule: rule,
        coordinates,
    })
}

/// One `tail head cost` line per arc (1-based ids) and a closing
/// `TOTAL <cost>` line.
pub fn write_solution(instance: &Instance, arcs: &[ArcId]) -> String {
    let mut out = String::new();
    for &a in arcs {
        let arc = instance.arc(a);
        let _ = writeln!(out, "{} {} {}", arc.tail + 1, arc.head + 1, arc.cost);
    }
    let _ = writeln!(out, "TOTAL {}", instance.cost_of(arcs));
    out
}
