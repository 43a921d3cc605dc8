//! Deterministic DOT and JSON output.

use std::fmt::Write as _;

use serde::Serialize;

use super::diagram::{ARROWS, UNVERIFIED};
use super::profile::{Profile, Property};

/// The diagram with each node annotated by how many profiles make it true.
/// Nodes and edges come out in a fixed order.
pub fn diagram_dot(profiles: &[Profile]) -> String {
    let mut dot = String::from(
        "// Every non-isolated point of a finite space has all sixteen properties,\n\
         // so these counts confirm the arrows but cannot separate the classes.\n\
         digraph implications {\n  rankdir=TB;\n  node [shape=box];\n",
    );
    for p in Property::ALL {
        let true_count = profiles.iter().filter(|pr| pr.get(p)).count();
        let _ = writeln!(
            dot,
            "  {} [label=\"{}\\n{}/{} true\"];",
            p.key(),
            p.label().replace('"', "'"),
            true_count,
            profiles.len()
        );
    }
    for a in ARROWS {
        let style = if a.guarded { ", style=dashed" } else { "" };
        let _ = writeln!(dot, "  {} -> {} [label=\"{}\"{style}];", a.from.key(), a.to.key(), a.label);
    }
    for (from, to) in UNVERIFIED {
        let _ = writeln!(dot, "  {} -> {} [style=dotted, label=\"unverified\"];", from.key(), to.key());
    }
    dot.push_str("}\n");
    dot
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}
