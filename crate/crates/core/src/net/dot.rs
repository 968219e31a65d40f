use std::collections::BTreeMap;
use std::fmt::Write;

use super::{Configuration, Endpoint, NetTerm, PortGraph};

/// Graphviz rendering. Agents are `a<i>` in traversal order, interface
/// ports `i<k>`, other free ports `f<k>`. An edge leaving a principal port
/// has it as its tail, labelled `0`.
pub fn to_dot(config: &Configuration) -> String {
    let g = PortGraph::build(config);
    let mut out = String::from("graph net {\n");
    for a in 0..g.agent_count() {
        let _ = writeln!(out, "  a{a} [label=\"{}\", shape=triangle];", g.symbol(a));
    }
    let mut free_ids: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, t) in config.interface.iter().enumerate() {
        let label = match t {
            NetTerm::Name(n) => n.clone(),
            NetTerm::Agent(..) => format!("#{i}"),
        };
        let _ = writeln!(out, "  i{i} [label=\"{label}\", shape=plaintext];");
    }
    for n in g.free_names() {
        if config.interface.iter().any(|t| t.as_name() == Some(n.as_str())) {
            continue;
        }
        let k = free_ids.len();
        free_ids.insert(n, k);
        let _ = writeln!(out, "  f{k} [label=\"{n}\", shape=plaintext];");
    }
    let node = |e: &Endpoint| -> String {
        match e {
            Endpoint::Port { agent, .. } => format!("a{agent}"),
            Endpoint::Interface(i) => format!("i{i}"),
            Endpoint::Free(n) => match free_ids.get(n.as_str()) {
                Some(k) => format!("f{k}"),
                None => {
                    let i = config
                        .interface
                        .iter()
                        .position(|t| t.as_name() == Some(n.as_str()))
                        .unwrap_or(0);
                    format!("i{i}")
                }
            },
        }
    };
    let is_principal = |e: &Endpoint| matches!(e, Endpoint::Port { port: 0, .. });
    let mut edges = Vec::new();
    for (a, b) in g.wires() {
        edges.push((a, b));
    }
    // Wires between two non-agent endpoints.
    for (i, _) in config.interface.iter().enumerate() {
        let here = Endpoint::Interface(i);
        let other = g.partner(&here);
        if !matches!(other, Endpoint::Port { .. }) && node(&here) < node(&other) {
            edges.push((here, other));
        }
    }
    for n in g.free_names() {
        let here = Endpoint::Free(n.clone());
        let other = g.partner(&here);
        if matches!(other, Endpoint::Free(_)) && node(&here) < node(&other) {
            edges.push((here, other));
        }
    }
    for (a, b) in edges {
        let (tail, head) = if !is_principal(&a) && is_principal(&b) {
            (b, a)
        } else {
            (a, b)
        };
        let mut attrs = Vec::new();
        if is_principal(&tail) {
            attrs.push("taillabel=\"0\"".to_owned());
        }
        if is_principal(&head) {
            attrs.push("headlabel=\"0\"".to_owned());
        }
        let attrs = if attrs.is_empty() {
            String::new()
        } else {
            format!(" [{}]", attrs.join(", "))
        };
        let _ = writeln!(out, "  {} -- {}{attrs};", node(&tail), node(&head));
    }
    out.push_str("}\n");
    out
}
