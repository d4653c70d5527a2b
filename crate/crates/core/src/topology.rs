//! Named network constructions and structural analyses.
//!
//! The solver only ever prescribes networks from a small family: the empty
//! network, a spanning tree, a ring, a Harary network, or a reinforced ring.
//! Each constructor returns the exact edge set together with its name so
//! callers can render "what to build" without reverse-engineering edges.
//!
//! Edge connectivity is computed twice by independent routes: a max-flow
//! routine used everywhere, and an exhaustive removal search used to
//! cross-check it in tests. Both must agree; neither is derived from the
//! other.

use std::fmt;

use crate::error::Error;
use crate::graph::{complete_edges, is_connected, Edge, EdgeSet, UnionFind};

/// Which named construction an edge set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TopologyKind {
    Empty,
    Tree,
    Ring,
    /// Harary network with target edge connectivity `k`.
    Harary(u32),
    /// Ring with skip-chords every `k` positions plus fill chords.
    ReinforcedRing(u32),
    /// A network found by search rather than by a named construction.
    Custom,
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyKind::Empty => write!(f, "empty"),
            TopologyKind::Tree => write!(f, "tree"),
            TopologyKind::Ring => write!(f, "ring"),
            TopologyKind::Harary(k) => write!(f, "harary(k={k})"),
            TopologyKind::ReinforcedRing(k) => write!(f, "reinforced_ring(k={k})"),
            TopologyKind::Custom => write!(f, "custom"),
        }
    }
}

/// An edge set together with the construction that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedTopology {
    pub kind: TopologyKind,
    pub n: u32,
    pub edges: EdgeSet,
}

impl fmt::Display for NamedTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on {} nodes ({} links)",
            self.kind,
            self.n,
            self.edges.len()
        )
    }
}

/// Empty network on `n` nodes.
pub fn empty(n: u32) -> NamedTopology {
    NamedTopology {
        kind: TopologyKind::Empty,
        n,
        edges: EdgeSet::new(),
    }
}

/// Spanning path `0-1-...-(n-1)`, the canonical minimum connected network.
pub fn tree(n: u32) -> Result<NamedTopology, Error> {
    if n < 1 {
        return Err(Error::InvalidInput(
            "tree requires at least one node".into(),
        ));
    }
    let pairs: Vec<(u32, u32)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Ok(NamedTopology {
        kind: TopologyKind::Tree,
        n,
        edges: EdgeSet::from_pairs(&pairs)?,
    })
}

/// Cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
pub fn ring(n: u32) -> Result<NamedTopology, Error> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "ring requires n >= 3, got {n}"
        )));
    }
    let h = harary(n, 2)?;
    Ok(NamedTopology {
        kind: TopologyKind::Ring,
        ..h
    })
}

/// Harary network on `n` nodes with edge connectivity `k` (`1 <= k <= n-1`).
///
/// For `k >= 2` this is the classic circulant construction with exactly
/// `ceil(n*k/2)` links. For `k = 1` that edge count cannot keep the network
/// connected for `n >= 4` (connectivity needs `n - 1` links), so this
/// returns the spanning path: `n - 1` links with edge connectivity 1.
pub fn harary(n: u32, k: u32) -> Result<NamedTopology, Error> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "harary requires n >= 2, got {n}"
        )));
    }
    if k < 1 || k >= n {
        return Err(Error::InvalidInput(format!(
            "harary(n={n}) requires 1 <= k <= {}, got k={k}",
            n - 1
        )));
    }
    if k == 1 {
        let t = tree(n)?;
        return Ok(NamedTopology {
            kind: TopologyKind::Harary(1),
            ..t
        });
    }
    let mut pairs = Vec::new();
    for off in 1..=(k / 2) {
        for i in 0..n {
            pairs.push((i, (i + off) % n));
        }
    }
    if k % 2 == 1 {
        if n.is_multiple_of(2) {
            for i in 0..n / 2 {
                pairs.push((i, i + n / 2));
            }
        } else {
            for i in 0..=(n - 1) / 2 {
                pairs.push((i, (i + n.div_ceil(2)) % n));
            }
        }
    }
    let edges = EdgeSet::from_pairs(&pairs)?;
    let expected = (u64::from(n) * u64::from(k)).div_ceil(2);
    if edges.len() as u64 != expected {
        return Err(Error::Inconsistency(format!(
            "harary({n},{k}) produced {} links, expected {expected}",
            edges.len()
        )));
    }
    Ok(NamedTopology {
        kind: TopologyKind::Harary(k),
        n,
        edges,
    })
}

/// Ring reinforced with skip-chords every `k` positions, filled with
/// diameter then lexicographic chords up to exactly
/// `n + floor(n/k) + ceil(floor(n/k)/2)` links.
///
/// Requires `n >= 4` and `k >= 1`. Spacings of `n/2` or more produce
/// degenerate chords, which the fill stage replaces; the link count is
/// what matters downstream, not which chords realize it. Errors with
/// [`Error::ConstructionMismatch`] when the simple graph on `n` nodes
/// cannot hold the required count.
pub fn reinforced_ring(n: u32, k: u32) -> Result<NamedTopology, Error> {
    if n < 4 {
        return Err(Error::InvalidInput(format!(
            "reinforced ring requires n >= 4, got {n}"
        )));
    }
    if k < 1 {
        return Err(Error::InvalidInput(format!(
            "reinforced ring on n={n} requires k >= 1, got k={k}"
        )));
    }
    let m = n / k;
    let target = u64::from(n) + u64::from(m) + u64::from(m).div_ceil(2);

    let mut edges = ring(n)?.edges;
    let add = |edges: &mut EdgeSet, a: u32, b: u32| {
        if a != b {
            edges.insert(Edge::new(a, b).expect("distinct endpoints"));
        }
    };
    for i in 0..m {
        add(&mut edges, (i * k) % n, ((i + 1) * k) % n);
    }
    if m.is_multiple_of(2) {
        add(&mut edges, (k * m) % n, 0);
    } else {
        add(&mut edges, 0, n / 2);
    }
    for i in 0..n {
        if edges.len() as u64 >= target {
            break;
        }
        add(&mut edges, i, (i + n / 2) % n);
    }
    if (edges.len() as u64) < target {
        for e in complete_edges(n) {
            if edges.len() as u64 >= target {
                break;
            }
            edges.insert(e);
        }
    }
    if edges.len() as u64 != target {
        return Err(Error::ConstructionMismatch(format!(
            "reinforced ring on n={n}, k={k} needs {target} links but the complete \
             graph holds only {}",
            n * (n - 1) / 2
        )));
    }
    Ok(NamedTopology {
        kind: TopologyKind::ReinforcedRing(k),
        n,
        edges,
    })
}

/// Node degrees in `(0..n, edges)`.
pub fn degrees(n: u32, edges: &EdgeSet) -> Vec<u32> {
    let mut deg = vec![0u32; n as usize];
    for e in edges {
        deg[e.a as usize] += 1;
        deg[e.b as usize] += 1;
    }
    deg
}

/// Smallest node degree; 0 when some node is isolated.
pub fn min_degree(n: u32, edges: &EdgeSet) -> u32 {
    degrees(n, edges).into_iter().min().unwrap_or(0)
}

/// Edge connectivity by max-flow: the minimum over targets `t` of the
/// number of edge-disjoint paths from node 0 to `t`. Returns 0 for
/// disconnected or single-node graphs.
pub fn edge_connectivity(n: u32, edges: &EdgeSet) -> u32 {
    if n <= 1 || !is_connected(n, edges) {
        return 0;
    }
    let mut best = u32::MAX;
    for t in 1..n {
        best = best.min(max_flow_unit(n, edges, 0, t));
        if best == 1 {
            // cannot go lower for a connected graph
            break;
        }
    }
    best
}

/// Unit-capacity max flow from `s` to `t` by shortest augmenting paths.
fn max_flow_unit(n: u32, edges: &EdgeSet, s: u32, t: u32) -> u32 {
    let n = n as usize;
    let mut residual = vec![0u32; n * n];
    for e in edges {
        residual[e.a as usize * n + e.b as usize] = 1;
        residual[e.b as usize * n + e.a as usize] = 1;
    }
    let mut flow = 0;
    let mut parent = vec![usize::MAX; n];
    loop {
        parent.fill(usize::MAX);
        parent[s as usize] = s as usize;
        let mut queue = std::collections::VecDeque::from([s as usize]);
        while let Some(u) = queue.pop_front() {
            if u == t as usize {
                break;
            }
            for v in 0..n {
                if parent[v] == usize::MAX && residual[u * n + v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t as usize] == usize::MAX {
            return flow;
        }
        let mut v = t as usize;
        while v != s as usize {
            let u = parent[v];
            residual[u * n + v] -= 1;
            residual[v * n + u] += 1;
            v = u;
        }
        flow += 1;
    }
}

/// Edge connectivity by exhaustive removal search: the smallest number of
/// edges whose removal disconnects the graph. Exponential in the edge
/// count; exists purely to cross-check [`edge_connectivity`].
pub fn edge_connectivity_enumerated(n: u32, edges: &EdgeSet) -> u32 {
    if n <= 1 || !is_connected(n, edges) {
        return 0;
    }
    min_cut_to_components(n, edges, 2).expect("connected input splits eventually")
}

/// Smallest number of edge removals that leaves at least `c` connected
/// components, found by exhaustive search over removal sets in increasing
/// size. Requires a connected input and `2 <= c <= n`.
pub fn min_cut_to_components(n: u32, edges: &EdgeSet, c: u32) -> Result<u32, Error> {
    if c < 2 || c > n {
        return Err(Error::InvalidInput(format!(
            "component target must satisfy 2 <= c <= n, got c={c}, n={n}"
        )));
    }
    if !is_connected(n, edges) {
        return Err(Error::InvalidInput(
            "minimum cut search requires a connected graph".into(),
        ));
    }
    let list = edges.as_slice();
    let m = list.len();
    // creating c components takes at least c - 1 removals
    for r in (c as usize - 1)..=m {
        if any_combination(m, r, |removed| {
            let mut uf = UnionFind::new(n);
            let mut skip = removed.iter().peekable();
            for (idx, e) in list.iter().enumerate() {
                if skip.peek() == Some(&&idx) {
                    skip.next();
                    continue;
                }
                uf.union(e.a, e.b);
            }
            uf.components() >= c
        }) {
            return Ok(r as u32);
        }
    }
    Err(Error::Inconsistency(
        "removing every edge failed to reach the component target".into(),
    ))
}

/// Visits every size-`r` index combination of `0..m` in lexicographic
/// order until `f` returns true; reports whether any call did.
fn any_combination(m: usize, r: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if r > m {
        return false;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        if f(&idx) {
            return true;
        }
        // advance to the next combination
        let mut i = r;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] != i + m - r {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
