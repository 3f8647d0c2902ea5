//! Text formats for hypergraphs and partitions.
//!
//! Hypergraph: one hyperedge per line, comma-separated node tokens, optionally
//! followed by `;weight`. Blank lines and `#` comments are skipped.
//!
//! Partition: `token,community_id` lines sorted by token.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, HypergraphBuilder, NodeIndex};

pub fn parse_hypergraph(text: &str) -> Result<(Hypergraph, NodeIndex)> {
    let mut builder = HypergraphBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (members, weight) = match line.split_once(';') {
            Some((m, w)) => {
                let weight: f64 = w.trim().parse().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("invalid weight `{}`", w.trim()),
                })?;
                (m, weight)
            }
            None => (line, 1.0),
        };
        let tokens: Vec<&str> = members.split(',').map(str::trim).collect();
        if tokens.iter().any(|t| t.is_empty()) {
            return Err(Error::Parse {
                line: i + 1,
                message: "empty node token".into(),
            });
        }
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("weight must be positive, got {weight}"),
            });
        }
        builder.add_edge(tokens, weight);
    }
    builder.build()
}

pub fn read_hypergraph(path: impl AsRef<Path>) -> Result<(Hypergraph, NodeIndex)> {
    parse_hypergraph(&std::fs::read_to_string(path)?)
}

/// Serializes `hypergraph`. Weights equal to 1 are omitted. Isolated nodes
/// are written as single-token lines so the node set survives a round trip.
pub fn format_hypergraph(hypergraph: &Hypergraph, nodes: &NodeIndex) -> String {
    let mut out = String::new();
    for edge in hypergraph.edges() {
        let tokens: Vec<&str> = edge.members().iter().map(|&v| nodes.token(v)).collect();
        out.push_str(&tokens.join(","));
        if edge.weight() != 1.0 {
            let _ = write!(out, ";{}", edge.weight());
        }
        out.push('\n');
    }
    for v in 0..hypergraph.node_count() {
        if hypergraph.incident(v).is_empty() {
            let _ = writeln!(out, "{}", nodes.token(v));
        }
    }
    out
}

/// Serializes a labelling as `token,community_id`, sorted by token, with ids
/// renumbered by first appearance in that order.
pub fn format_partition(nodes: &NodeIndex, labels: &[usize]) -> String {
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| nodes.token(a).cmp(nodes.token(b)));
    let mut relabel = HashMap::new();
    let mut out = String::new();
    for v in order {
        let next = relabel.len();
        let id = *relabel.entry(labels[v]).or_insert(next);
        let _ = writeln!(out, "{},{}", nodes.token(v), id);
    }
    out
}

/// Parses `token,community_id` lines.
pub fn parse_partition(text: &str) -> Result<Vec<(String, usize)>> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: i + 1, message };
        let (token, id) = line
            .rsplit_once(',')
            .ok_or_else(|| parse_err("expected `token,community_id`".into()))?;
        let id: usize = id
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("invalid community id `{}`", id.trim())))?;
        entries.push((token.trim().to_owned(), id));
    }
    Ok(entries)
}

pub fn read_partition(path: impl AsRef<Path>) -> Result<Vec<(String, usize)>> {
    parse_partition(&std::fs::read_to_string(path)?)
}

/// Aligns partition entries with `nodes`; both must cover the same tokens.
pub fn labels_for(nodes: &NodeIndex, entries: &[(String, usize)]) -> Result<Vec<usize>> {
    let mut labels = vec![None; nodes.len()];
    for (token, id) in entries {
        let v = nodes
            .get(token)
            .ok_or(Error::NodeSetMismatch(entries.len(), nodes.len()))?;
        labels[v] = Some(*id);
    }
    labels
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::NodeSetMismatch(entries.len(), nodes.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_weights_comments_and_blanks() {
        let text = "# header\n\nn1,n2,n7;2.5\nn2, n3\n";
        let (h, nodes) = parse_hypergraph(text).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.edge(0).weight(), 2.5);
        assert_eq!(h.edge(1).weight(), 1.0);
        assert_eq!(nodes.tokens(), &["n1", "n2", "n7", "n3"]);
    }

    #[test]
    fn reports_line_of_bad_weight() {
        let err = parse_hypergraph("a,b\na,c;x\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, message: "invalid weight `x`".into() });
        assert!(matches!(parse_hypergraph("a,,b"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_hypergraph("a,b;-1"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn hypergraph_text_round_trip() {
        let text = "a,b,c;2\nc,d\n";
        let (h, nodes) = parse_hypergraph(text).unwrap();
        assert_eq!(format_hypergraph(&h, &nodes), text);
    }

    #[test]
    fn isolated_nodes_survive_round_trip() {
        let (h, nodes) = parse_hypergraph("a,b\nc\n").unwrap();
        let text = format_hypergraph(&h, &nodes);
        assert_eq!(text, "a,b\nc\n");
        let (h2, nodes2) = parse_hypergraph(&text).unwrap();
        assert_eq!(h2.node_count(), 3);
        assert_eq!(nodes2.tokens(), nodes.tokens());
    }

    #[test]
    fn partition_is_sorted_and_renumbered() {
        let (_, nodes) = parse_hypergraph("z,a\nm,a\n").unwrap();
        // tokens: z=0, a=1, m=2
        let text = format_partition(&nodes, &[5, 9, 5]);
        assert_eq!(text, "a,0\nm,1\nz,1\n");
        let entries = parse_partition(&text).unwrap();
        assert_eq!(labels_for(&nodes, &entries).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn mismatched_partition_rejected() {
        let (_, nodes) = parse_hypergraph("a,b\n").unwrap();
        let entries = parse_partition("a,0\n").unwrap();
        assert!(matches!(labels_for(&nodes, &entries), Err(Error::NodeSetMismatch(..))));
        let entries = parse_partition("a,0\nb,0\nc,1\n").unwrap();
        assert!(matches!(labels_for(&nodes, &entries), Err(Error::NodeSetMismatch(..))));
    }
}
