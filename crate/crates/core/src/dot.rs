//! Graphviz export. Output is a pure function of the model, so repeated
//! renders are byte-identical.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::model::{Model, Structure};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Edge color for a set of operation or relation labels sharing one pair.
fn color(labels: &[&str]) -> &'static str {
    match labels {
        [_, _, ..] => "purple",
        ["G"] | ["RG"] => "blue",
        _ => "red",
    }
}

/// Renders the Hasse diagram (solid, drawn bottom to top), the involution
/// (`N` or `g`, dashed) and the tense operations or relations as labeled
/// colored edges. Labels of edges with the same endpoints are merged.
pub fn render_dot(model: &Model) -> String {
    let (kind, poset, involution, label) = match model.structure() {
        Structure::Algebra(a) => ("algebra", a.lattice().order(), a.negation_table(), "N"),
        Structure::Space(s) => ("space", s.poset(), s.reversal(), "g"),
    };
    let mut tense: BTreeMap<(usize, usize), Vec<&str>> = BTreeMap::new();
    match model.structure() {
        Structure::Algebra(a) => {
            for (x, &y) in a.future_table().iter().enumerate() {
                tense.entry((x, y)).or_default().push("G");
            }
            for (x, &y) in a.past_table().iter().enumerate() {
                tense.entry((x, y)).or_default().push("H");
            }
        }
        Structure::Space(s) => {
            for pair in s.future().pairs() {
                tense.entry(pair).or_default().push("RG");
            }
            for pair in s.past().pairs() {
                tense.entry(pair).or_default().push("RH");
            }
        }
    }

    let node = |i: usize| format!("n{i}");
    let mut out = String::new();
    writeln!(out, "digraph {kind} {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for i in poset.elements() {
        writeln!(out, "  {} [label={}];", node(i), quote(model.name(i))).unwrap();
    }
    for (a, b) in poset.covers() {
        writeln!(out, "  {} -> {};", node(a), node(b)).unwrap();
    }
    for (x, &y) in involution.iter().enumerate() {
        writeln!(
            out,
            "  {} -> {} [style=dashed, constraint=false, label={}];",
            node(x),
            node(y),
            quote(label)
        )
        .unwrap();
    }
    for ((x, y), labels) in &tense {
        writeln!(
            out,
            "  {} -> {} [color={}, fontcolor={}, constraint=false, label={}];",
            node(*x),
            node(*y),
            color(labels),
            color(labels),
            quote(&labels.join(","))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::dual_space;
    use crate::samples;

    #[test]
    fn k3_dual_has_three_merged_relation_edges() {
        let dual = dual_space(&samples::k3()).unwrap();
        let dot = render_dot(&Model::space(dual));
        let relation_edges: Vec<_> = dot
            .lines()
            .filter(|l| l.contains("label=\"RG,RH\""))
            .collect();
        assert_eq!(relation_edges.len(), 3, "{dot}");
        assert_eq!(
            dot.lines().filter(|l| l.contains("style=dashed")).count(),
            2
        );
        assert!(dot.starts_with("digraph space {\n  rankdir=BT;"));
    }

    #[test]
    fn empty_relations_draw_nothing() {
        let dot = render_dot(&Model::space(samples::chain_identity_space()));
        assert!(!dot.contains("RG"));
        assert!(!dot.contains("RH"));
        assert!(dot.contains("  n0 -> n1;\n"));
    }

    #[test]
    fn algebra_edges_merge_g_and_h() {
        let dot = render_dot(&Model::algebra(samples::b2()));
        assert_eq!(dot.matches("label=\"G,H\"").count(), 2);
        assert_eq!(render_dot(&Model::algebra(samples::b2())), dot);
    }

    #[test]
    fn labels_are_escaped() {
        assert_eq!(quote("a\"b\\"), "\"a\\\"b\\\\\"");
    }
}
