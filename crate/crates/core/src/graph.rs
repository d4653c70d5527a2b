//! Undirected simple graphs over nodes `0..n` as sorted edge sets.

use std::fmt;

use crate::error::Error;

/// Undirected edge, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub a: u32,
    pub b: u32,
}

impl Edge {
    /// Normalizes endpoint order; rejects self-loops.
    pub fn new(a: u32, b: u32) -> Result<Self, Error> {
        if a == b {
            return Err(Error::InvalidInput(format!("self-loop at node {a}")));
        }
        Ok(if a < b {
            Edge { a, b }
        } else {
            Edge { a: b, b: a }
        })
    }

    pub fn touches(&self, node: u32) -> bool {
        self.a == node || self.b == node
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Sorted, deduplicated set of edges. Ordering is lexicographic over the
/// sorted edge list, which gives a total order used for deterministic
/// tie-breaking throughout the solver and oracle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EdgeSet(Vec<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(Vec::new())
    }

    pub fn from_edges(mut edges: Vec<Edge>) -> Self {
        edges.sort();
        edges.dedup();
        EdgeSet(edges)
    }

    /// Builds from raw endpoint pairs, normalizing each.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self, Error> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            edges.push(Edge::new(a, b)?);
        }
        Ok(Self::from_edges(edges))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.binary_search(e).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Edge> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Edge] {
        &self.0
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        match self.0.binary_search(&e) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, e);
                true
            }
        }
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(
            self.0
                .iter()
                .filter(|e| !other.contains(e))
                .copied()
                .collect(),
        )
    }

    /// Set union.
    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let mut edges = self.0.clone();
        edges.extend(other.0.iter().copied());
        EdgeSet::from_edges(edges)
    }

    /// True when the sets share no edge.
    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.0.iter().all(|e| !large.contains(e))
    }

    /// True when every edge of `self` is in `other`.
    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.iter().all(|e| other.contains(e))
    }

    /// Largest node index mentioned, or `None` when empty.
    pub fn max_node(&self) -> Option<u32> {
        self.0.iter().map(|e| e.b).max()
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::slice::Iter<'a, Edge>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Union-find over `0..n` with path halving and union by size.
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    components: u32,
}

impl UnionFind {
    pub fn new(n: u32) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n as usize],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        self.components -= 1;
        true
    }

    pub fn components(&self) -> u32 {
        self.components
    }
}

/// Number of connected components of `(0..n, edges)`.
///
/// Isolated nodes count as components; a graph on `n = 1` has one.
pub fn component_count(n: u32, edges: &EdgeSet) -> u32 {
    let mut uf = UnionFind::new(n);
    for e in edges {
        debug_assert!(e.b < n, "edge {e} out of range for n={n}");
        uf.union(e.a, e.b);
    }
    uf.components()
}

/// True when `(0..n, edges)` is a single connected component.
pub fn is_connected(n: u32, edges: &EdgeSet) -> bool {
    component_count(n, edges) == 1
}

/// All `C(n, 2)` edges of the complete graph, in lexicographic order.
pub fn complete_edges(n: u32) -> Vec<Edge> {
    let mut edges = Vec::with_capacity((n as usize * (n as usize - 1)) / 2);
    for a in 0..n {
        for b in (a + 1)..n {
            edges.push(Edge { a, b });
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_normalizes_and_rejects_loops() {
        assert_eq!(Edge::new(3, 1).unwrap(), Edge { a: 1, b: 3 });
        assert!(Edge::new(2, 2).is_err());
    }

    #[test]
    fn edge_set_dedups_and_sorts() {
        let s = EdgeSet::from_pairs(&[(2, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.as_slice(), &[Edge { a: 0, b: 1 }, Edge { a: 1, b: 2 }]);
    }

    #[test]
    fn set_algebra_behaves() {
        let s = EdgeSet::from_pairs(&[(0, 1), (1, 2), (2, 3)]).unwrap();
        let t = EdgeSet::from_pairs(&[(1, 2)]).unwrap();
        assert_eq!(s.difference(&t).len(), 2);
        assert_eq!(s.union(&t), s);
        assert!(t.is_subset(&s));
        assert!(!s.is_disjoint(&t));
        assert!(t.is_disjoint(&s.difference(&t)));
    }

    #[test]
    fn component_count_handles_isolates_and_paths() {
        let empty = EdgeSet::new();
        assert_eq!(component_count(4, &empty), 4);
        let path = EdgeSet::from_pairs(&[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(component_count(4, &path), 1);
        assert!(is_connected(4, &path));
        let split = EdgeSet::from_pairs(&[(0, 1), (2, 3)]).unwrap();
        assert_eq!(component_count(4, &split), 2);
        assert!(!is_connected(4, &split));
    }

    #[test]
    fn single_node_graph_is_connected() {
        assert!(is_connected(1, &EdgeSet::new()));
    }

    #[test]
    fn edge_set_order_is_lexicographic() {
        let a = EdgeSet::from_pairs(&[(0, 1)]).unwrap();
        let b = EdgeSet::from_pairs(&[(0, 2)]).unwrap();
        let c = EdgeSet::from_pairs(&[(0, 1), (0, 2)]).unwrap();
        assert!(a < b);
        assert!(a < c);
        assert!(c < b);
        assert!(EdgeSet::new() < a);
    }

    #[test]
    fn complete_graph_has_binomial_edges() {
        assert_eq!(complete_edges(5).len(), 10);
        assert_eq!(complete_edges(2), vec![Edge { a: 0, b: 1 }]);
    }
}
