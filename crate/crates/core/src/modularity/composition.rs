use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::hypercore::{Hypergraph, Partition};

/// Hyperedges of size `d` whose largest community holds `c` members.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositionRow {
    pub d: usize,
    pub c: usize,
    pub count: usize,
    /// Summed edge weight; equals `count` for unweighted input.
    pub frequency: f64,
}

impl CompositionRow {
    /// Community edge: strictly more than half the members in one community.
    pub fn is_community_edge(&self) -> bool {
        2 * self.c > self.d
    }

    /// `round(100·c/d)`.
    pub fn purity_percent(&self) -> u32 {
        (100.0 * self.c as f64 / self.d as f64).round() as u32
    }
}

/// Edge-type table, sorted by frequency descending, then `d` ascending, then
/// `c` descending.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CompositionTable {
    pub rows: Vec<CompositionRow>,
}

impl CompositionTable {
    pub fn from_rows(mut rows: Vec<CompositionRow>) -> Self {
        rows.sort_by(|a, b| {
            b.frequency
                .total_cmp(&a.frequency)
                .then(a.d.cmp(&b.d))
                .then(b.c.cmp(&a.c))
        });
        Self { rows }
    }

    pub fn total_count(&self) -> usize {
        self.rows.iter().map(|r| r.count).sum()
    }

    pub fn get(&self, c: usize, d: usize) -> Option<&CompositionRow> {
        self.rows.iter().find(|r| r.c == c && r.d == d)
    }

    /// `d,c,purity,frequency` CSV with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,c,purity,frequency\n");
        for row in &self.rows {
            let _ = writeln!(out, "{},{},{}%,{}", row.d, row.c, row.purity_percent(), format_frequency(row));
        }
        out
    }
}

fn format_frequency(row: &CompositionRow) -> String {
    if row.frequency == row.count as f64 {
        row.count.to_string()
    } else {
        format!("{}", row.frequency)
    }
}

/// Tabulates every retained hyperedge by `(c, d)`, where `c` is the largest
/// number of its members sharing one community.
pub fn edge_composition(hypergraph: &Hypergraph, partition: &Partition) -> CompositionTable {
    let mut acc: BTreeMap<(usize, usize), (usize, f64)> = BTreeMap::new();
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for edge in hypergraph.edges() {
        counts.clear();
        for &v in edge.members() {
            *counts.entry(partition.community(v)).or_insert(0) += 1;
        }
        let c = counts.values().copied().max().unwrap_or(0);
        let entry = acc.entry((edge.size(), c)).or_insert((0, 0.0));
        entry.0 += 1;
        entry.1 += edge.weight();
    }
    CompositionTable::from_rows(
        acc.into_iter()
            .map(|((d, c), (count, frequency))| CompositionRow { d, c, count, frequency })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_split() {
        let h = Hypergraph::from_edges(3, vec![(vec![0, 1, 2], 1.0)]).unwrap();
        let p = Partition::from_labels(&[0, 0, 1], h.degrees()).unwrap();
        let table = edge_composition(&h, &p);
        assert_eq!(table.rows.len(), 1);
        assert_eq!((table.rows[0].c, table.rows[0].d, table.rows[0].count), (2, 3, 1));
        assert!(table.rows[0].is_community_edge());
    }

    #[test]
    fn single_community_gives_pure_rows() {
        let h = Hypergraph::from_edges(
            5,
            vec![(vec![0, 1], 1.0), (vec![1, 2, 3], 1.0), (vec![0, 3, 4], 1.0), (vec![0, 1, 2, 4], 1.0)],
        )
        .unwrap();
        let p = Partition::from_labels(&[0; 5], h.degrees()).unwrap();
        let table = edge_composition(&h, &p);
        assert_eq!(table.get(2, 2).unwrap().count, 1);
        assert_eq!(table.get(3, 3).unwrap().count, 2);
        assert_eq!(table.get(4, 4).unwrap().count, 1);
        assert_eq!(table.total_count(), h.edge_count());
    }

    #[test]
    fn tie_at_half_is_noise() {
        let h = Hypergraph::from_edges(4, vec![(vec![0, 1, 2, 3], 1.0)]).unwrap();
        let p = Partition::from_labels(&[0, 0, 1, 1], h.degrees()).unwrap();
        let row = edge_composition(&h, &p).rows[0];
        assert_eq!((row.c, row.d), (2, 4));
        assert!(!row.is_community_edge());
    }

    #[test]
    fn csv_layout() {
        let h = Hypergraph::from_edges(
            4,
            vec![(vec![0, 1, 2], 1.0), (vec![0, 1, 3], 1.0), (vec![0, 1], 1.0)],
        )
        .unwrap();
        let p = Partition::from_labels(&[0, 0, 1, 1], h.degrees()).unwrap();
        assert_eq!(
            edge_composition(&h, &p).to_csv(),
            "d,c,purity,frequency\n3,2,67%,2\n2,2,100%,1\n"
        );
    }
}
