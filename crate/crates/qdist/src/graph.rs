//! The qubit-connectivity graph: positions are vertices, and two positions
//! are adjacent iff some parity-check row touches both.

use crate::codes::SparsityProfile;
use crate::error::{Error, Result};

/// Undirected simple graph with sorted adjacency, stored CSR-style.
#[derive(Clone)]
pub struct ConnectivityGraph {
    n: usize,
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl ConnectivityGraph {
    /// Builds from row supports: an edge `{a, b}` appears iff some support
    /// contains both `a` and `b`.
    pub fn from_supports(supports: &[Vec<usize>], n: usize) -> Result<Self> {
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for support in supports {
            for &a in support {
                if a >= n {
                    return Err(Error::IndexOutOfRange { index: a, size: n });
                }
            }
            for (i, &a) in support.iter().enumerate() {
                for &b in &support[i + 1..] {
                    if a != b {
                        adj[a].push(b as u32);
                        adj[b].push(a as u32);
                    }
                }
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len() as u32);
        }
        Ok(Self {
            n,
            offsets,
            targets,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n as u32).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn num_edges(&self) -> usize {
        self.targets.len() / 2
    }

    /// Edges as `(a, b)` with `a < b`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n as u32).flat_map(move |a| {
            self.neighbors(a)
                .iter()
                .copied()
                .filter(move |&b| a < b)
                .map(move |b| (a, b))
        })
    }

    /// Edge-list text: one `a b` line per edge, `a < b`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (a, b) in self.edges() {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

/// The degree bound `z = (l - 1) * j` for a `(j, l)`-limited check matrix.
pub fn degree_bound(profile: SparsityProfile) -> usize {
    profile.l.saturating_sub(1) * profile.j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{from_css, toric_code};

    #[test]
    fn path_and_triangle() {
        let path = ConnectivityGraph::from_supports(&[vec![0, 1], vec![1, 2]], 3).unwrap();
        assert_eq!(path.neighbors(0), &[1]);
        assert_eq!(path.neighbors(1), &[0, 2]);
        assert_eq!(path.neighbors(2), &[1]);

        let tri = ConnectivityGraph::from_supports(&[vec![0, 1, 2]], 3).unwrap();
        assert_eq!(tri.num_edges(), 3);
        for v in 0..3 {
            assert_eq!(tri.degree(v), 2);
        }
    }

    #[test]
    fn out_of_range_support_is_error() {
        assert!(ConnectivityGraph::from_supports(&[vec![0, 3]], 3).is_err());
    }

    #[test]
    fn toric_l2_degrees_within_bound() {
        let code = from_css(&toric_code(2).unwrap());
        let profile = code.sparsity_profile();
        let g = ConnectivityGraph::from_supports(&code.row_supports(), code.n()).unwrap();
        assert_eq!(g.num_vertices(), 8);
        let z = degree_bound(profile);
        for v in 0..8 {
            assert!(g.degree(v) <= z);
        }
    }

    #[test]
    fn degree_bound_values() {
        assert_eq!(degree_bound(SparsityProfile::new(2, 4)), 6);
        assert_eq!(degree_bound(SparsityProfile::new(5, 10)), 45);
        assert_eq!(degree_bound(SparsityProfile::new(1, 2)), 1);
    }

    #[test]
    fn construction_ignores_row_order_and_duplicates() {
        let a = ConnectivityGraph::from_supports(&[vec![0, 1], vec![1, 2], vec![0, 1]], 3)
            .unwrap();
        let b = ConnectivityGraph::from_supports(&[vec![1, 2], vec![0, 1]], 3).unwrap();
        assert_eq!(a.to_edge_list(), b.to_edge_list());
    }

    #[test]
    fn edge_list_format() {
        let tri = ConnectivityGraph::from_supports(&[vec![0, 1, 2]], 3).unwrap();
        assert_eq!(tri.to_edge_list(), "0 1\n0 2\n1 2\n");
    }
}
