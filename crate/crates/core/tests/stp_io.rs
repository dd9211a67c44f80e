use proptest::prelude::*;
use steiner_anneal::graph::GraphError;
use steiner_anneal::io::{parse_stp, to_instance, write_solution, write_stp, Link, RawStpInstance, RootPolicy, RootRule, StpError};

fn raw_strategy() -> impl Strategy<Value = RawStpInstance> {
    (2usize..30).prop_flat_map(|n| {
        let link = (0..n, 0..n, 1u32..1000, any::<bool>(), any::<bool>()).prop_map(|(t, h, c, half, directed)| Link {
            tail: t,
            head: h,
            cost: if half { c as f64 + 0.5 } else { c as f64 },
            directed,
        });
        (
            Just(n),
            prop::collection::vec(link, 0..60),
            prop::sample::subsequence((0..n).collect::<Vec<_>>(), 0..n),
            prop::option::of(0..n),
            prop::option::of(prop::collection::vec(prop::option::of((-500i32..500, -500i32..500)), n)),
            prop::option::of("[a-z0-9]{1,8}"),
        )
            .prop_map(|(n, links, terminals, root, coords, name)| RawStpInstance {
                name,
                creator: None,
                remark: None,
                nodes: n,
                links,
                terminals,
                declared_root: root,
                coordinates: coords.map(|c| c.into_iter().map(|p| p.map(|(x, y)| (x as f64, y as f64 / 4.0))).collect()),
            })
    })
}

proptest! {
    #[test]
    fn write_then_parse_is_identity(raw in raw_strategy()) {
        let text = write_stp(&raw);
        prop_assert_eq!(parse_stp(&text).unwrap(), raw.clone());
        prop_assert_eq!(parse_stp(&text.to_uppercase()).unwrap().links, raw.links);
    }
}

const MIXED: &str = "33D32945 STP File, STP Format Version 1.0
section comment
name \"mixed\"
END

Section Graph
NODES 5
edges 3
ARCS 1
e 1 2 4
E 2 3 1.5
e 3 4 2
A 4 5 10
end

SECTION TERMINALS
terminals 2
t 4
T 5
END

SECTION Presolve
fixed 7
END

eof
";

#[test]
fn mixed_case_document() {
    let raw = parse_stp(MIXED).unwrap();
    assert_eq!(raw.name.as_deref(), Some("mixed"));
    assert_eq!(raw.nodes, 5);
    assert_eq!(raw.links.len(), 4);
    assert_eq!(raw.terminals, vec![3, 4]);
    assert!(raw.links[3].directed && !raw.links[0].directed);
    let loaded = to_instance(&raw, RootPolicy::FirstTerminal).unwrap();
    assert_eq!(loaded.root_rule, RootRule::FirstTerminal);
    assert_eq!(loaded.instance.root(), 3);
    assert_eq!(loaded.instance.terminals(), &[4]);
    // Three edges both ways plus one arc.
    assert_eq!(loaded.instance.arc_count(), 7);

    let over = to_instance(&raw, RootPolicy::Node(0)).unwrap();
    assert_eq!(over.root_rule, RootRule::Override);
    assert_eq!(over.instance.terminals(), &[3, 4]);
    assert_eq!(to_instance(&raw, RootPolicy::Node(9)).unwrap_err(), StpError::BadRoot(9));
    assert_eq!(to_instance(&raw, RootPolicy::Central).unwrap_err(), StpError::NoCoordinates);
    // Node 5 only has an arc towards it, so rooting there strands node 4.
    assert_eq!(
        to_instance(&raw, RootPolicy::Node(4)).unwrap_err(),
        StpError::Graph(GraphError::UnreachableTerminal(3))
    );
}

#[test]
fn declared_root_wins_over_override() {
    let text = MIXED.replace("t 4\n", "t 4\nRoot 1\n");
    let raw = parse_stp(&text).unwrap();
    let loaded = to_instance(&raw, RootPolicy::Node(2)).unwrap();
    assert_eq!(loaded.root_rule, RootRule::Declared);
    assert_eq!(loaded.instance.root(), 0);
    assert_eq!(loaded.instance.terminals(), &[3, 4]);
}

#[test]
fn malformed_documents() {
    let bad_count = MIXED.replace("edges 3", "edges 4");
    assert_eq!(
        parse_stp(&bad_count).unwrap_err(),
        StpError::CountMismatch {
            what: "Edges",
            declared: 4,
            found: 3
        }
    );
    assert!(matches!(
        parse_stp(&MIXED.replace("E 2 3 1.5", "E 2 9 1.5")),
        Err(StpError::Syntax { line: 11, .. })
    ));
    assert!(matches!(
        parse_stp(&MIXED.replace("e 3 4 2", "e 3 4 two")),
        Err(StpError::Syntax { line: 12, .. })
    ));
    assert_eq!(
        parse_stp("SECTION Graph\nNodes 2\nEND\nEOF\n").unwrap_err(),
        StpError::MissingSection("Terminals")
    );
    assert_eq!(parse_stp("").unwrap_err(), StpError::MissingSection("Graph"));
    let nonpositive = MIXED.replace("e 1 2 4", "e 1 2 0");
    assert!(matches!(
        to_instance(&parse_stp(&nonpositive).unwrap(), RootPolicy::FirstTerminal),
        Err(StpError::Graph(GraphError::NonPositiveCost { .. }))
    ));
}

#[test]
fn solution_lines_are_one_based() {
    let loaded = to_instance(&parse_stp(MIXED).unwrap(), RootPolicy::FirstTerminal).unwrap();
    let instance = &loaded.instance;
    let arc = (0..instance.arc_count()).find(|&a| instance.arc(a).tail == 3 && instance.arc(a).head == 4).unwrap();
    assert_eq!(write_solution(instance, &[arc]), "4 5 10\nTOTAL 10\n");
}
