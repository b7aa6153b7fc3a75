//! Qubit-connectivity graphs: heavy-hex generators, edge-list loading, edge
//! coloring into parallel gate layers and graph-distance neighborhoods.
//!
//! The heavy-hex family is built from horizontal chains ("rows") joined by
//! bridge qubits. Between row `r` and row `r + 1` a bridge sits at every column
//! `c` with `c % 4 == 3` for even `r` and `c % 4 == 1` for odd `r`. Sites are
//! numbered in generation order: row 0, the bridges below it, row 1, and so on.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Built-in lattice sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SizeClass {
    /// Single heavy hexagon with chain tails.
    L19,
    /// Three-cell strip spanning two rows.
    L28,
    /// Two full rows plus a partial third row.
    L46,
    /// Full 8 x 16 patch with 28 bridges.
    L156,
}

impl SizeClass {
    pub const ALL: [SizeClass; 4] = [SizeClass::L19, SizeClass::L28, SizeClass::L46, SizeClass::L156];

    pub fn num_sites(self) -> usize {
        match self {
            SizeClass::L19 => 19,
            SizeClass::L28 => 28,
            SizeClass::L46 => 46,
            SizeClass::L156 => 156,
        }
    }
}

impl fmt::Display for SizeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.num_sites())
    }
}

impl FromStr for SizeClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "L19" | "19" => Ok(SizeClass::L19),
            "L28" | "28" => Ok(SizeClass::L28),
            "L46" | "46" => Ok(SizeClass::L46),
            "L156" | "156" => Ok(SizeClass::L156),
            other => Err(Error::UnsupportedTopology(format!(
                "no built-in heavy-hex lattice named {other:?} (expected L19, L28, L46 or L156)"
            ))),
        }
    }
}

/// Parameters of a rectangular heavy-hex patch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeavyHexParams {
    pub rows: usize,
    pub row_width: usize,
}

impl HeavyHexParams {
    /// The 156-qubit patch: 8 rows of 16 with 4 bridges per gap.
    pub const HERON: HeavyHexParams = HeavyHexParams { rows: 8, row_width: 16 };
}

/// One position in a heavy-hex patch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PatchSite {
    Row { row: usize, col: usize },
    Bridge { gap: usize, col: usize },
}

fn bridge_offset(gap: usize) -> usize {
    if gap % 2 == 0 {
        3
    } else {
        1
    }
}

/// Builds the heavy-hex patch, keeping only positions accepted by `keep`.
fn heavy_hex_patch(params: HeavyHexParams, keep: impl Fn(PatchSite) -> bool) -> Result<LatticeGraph> {
    let HeavyHexParams { rows, row_width } = params;
    if rows == 0 || row_width < 2 || (rows > 1 && row_width < 4) {
        return Err(Error::UnsupportedTopology(format!(
            "heavy-hex patch needs rows >= 1 and row_width >= 2 (>= 4 with several rows), got {rows} x {row_width}"
        )));
    }

    let mut sites = Vec::new();
    for row in 0..rows {
        for col in 0..row_width {
            sites.push(PatchSite::Row { row, col });
        }
        if row + 1 < rows {
            for col in (bridge_offset(row)..row_width).step_by(4) {
                sites.push(PatchSite::Bridge { gap: row, col });
            }
        }
    }
    let sites: Vec<PatchSite> = sites.into_iter().filter(|&s| keep(s)).collect();
    let index_of = |target: PatchSite| sites.iter().position(|&s| s == target);

    let mut edges = Vec::new();
    for (i, &site) in sites.iter().enumerate() {
        match site {
            PatchSite::Row { row, col } => {
                if let Some(j) = index_of(PatchSite::Row { row, col: col + 1 }) {
                    edges.push((i, j));
                }
            }
            PatchSite::Bridge { gap, col } => {
                for row in [gap, gap + 1] {
                    if let Some(j) = index_of(PatchSite::Row { row, col }) {
                        edges.push((i, j));
                    }
                }
            }
        }
    }
    let coords = sites
        .iter()
        .map(|&s| match s {
            PatchSite::Row { row, col } => (col as f64, 2.0 * row as f64),
            PatchSite::Bridge { gap, col } => (col as f64, 2.0 * gap as f64 + 1.0),
        })
        .collect();

    let graph = LatticeGraph::from_parts(sites.len(), edges, Some(coords))?;
    if !graph.is_connected() {
        return Err(Error::UnsupportedTopology("selected heavy-hex region is disconnected".into()));
    }
    Ok(graph)
}

/// Builds a full rectangular heavy-hex patch.
pub fn heavy_hex_from_params(params: HeavyHexParams) -> Result<LatticeGraph> {
    heavy_hex_patch(params, |_| true)
}

/// Builds one of the built-in heavy-hex lattices. All of them are regions of
/// the 156-site patch, so L19 ⊂ L28 ⊂ L156 share their local structure.
pub fn build_heavy_hex(size: SizeClass) -> Result<LatticeGraph> {
    use PatchSite::*;
    let params = HeavyHexParams::HERON;
    match size {
        SizeClass::L156 => heavy_hex_patch(params, |_| true),
        SizeClass::L19 => heavy_hex_patch(params, |s| match s {
            Row { row: 0, col } => col <= 7,
            Row { row: 1, col } => col <= 8,
            Bridge { gap: 0, col } => col <= 7,
            _ => false,
        }),
        SizeClass::L28 => heavy_hex_patch(params, |s| match s {
            Row { row: 0, col } => col <= 11,
            Row { row: 1, col } => col <= 12,
            Bridge { gap: 0, col } => col <= 11,
            _ => false,
        }),
        SizeClass::L46 => heavy_hex_patch(params, |s| match s {
            Row { row: 0 | 1, .. } | Bridge { gap: 0, .. } => true,
            Bridge { gap: 1, col } => col <= 5,
            Row { row: 2, col } => col <= 7,
            _ => false,
        }),
    }
}

/// Proper edge coloring: `layer_of_edge[e]` is the parallel layer of edge `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoring {
    pub layer_of_edge: Vec<usize>,
    pub num_layers: usize,
    /// Set when more than three layers were needed.
    pub exceeds_three_layers: bool,
}

/// Simple undirected graph with a fixed edge coloring and layout coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeGraph {
    num_sites: usize,
    /// Canonically ordered: `i < j` within each pair, pairs sorted.
    edges: Vec<(usize, usize)>,
    coloring: EdgeColoring,
    coords: Vec<(f64, f64)>,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
}

/// Graph-distance ball around a site.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighborhood {
    pub center: usize,
    pub radius: usize,
    /// Sorted ascending.
    pub members: Vec<usize>,
}

impl LatticeGraph {
    /// Validates the edge list, canonicalizes it and computes the coloring.
    /// Missing coordinates are replaced by a circular layout.
    pub fn from_parts(
        num_sites: usize,
        edges: Vec<(usize, usize)>,
        coords: Option<Vec<(f64, f64)>>,
    ) -> Result<Self> {
        if num_sites == 0 {
            return Err(Error::InvalidInput("graph must have at least one site".into()));
        }
        let mut seen = BTreeSet::new();
        for &(i, j) in &edges {
            if i >= num_sites || j >= num_sites {
                return Err(Error::InvalidInput(format!(
                    "edge ({i}, {j}) out of range for {num_sites} sites"
                )));
            }
            if i == j {
                return Err(Error::InvalidInput(format!("self-loop on site {i}")));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidInput(format!("duplicate edge ({i}, {j})")));
            }
        }
        let edges: Vec<(usize, usize)> = seen.into_iter().collect();
        let coords = match coords {
            Some(c) if c.len() == num_sites => c,
            Some(c) => {
                return Err(Error::InvalidInput(format!(
                    "{} coordinates given for {num_sites} sites",
                    c.len()
                )))
            }
            None => circular_layout(num_sites),
        };
        let adjacency = build_adjacency(num_sites, &edges);
        let coloring = color_edges_raw(num_sites, &edges, &adjacency);
        Ok(Self { num_sites, edges, coloring, coords, adjacency })
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn coloring(&self) -> &EdgeColoring {
        &self.coloring
    }

    pub fn layer_of_edge(&self, e: usize) -> usize {
        self.coloring.layer_of_edge[e]
    }

    pub fn num_layers(&self) -> usize {
        self.coloring.num_layers
    }

    pub fn coords(&self) -> &[(f64, f64)] {
        &self.coords
    }

    pub fn neighbors(&self, site: usize) -> &[usize] {
        &self.adjacency[site]
    }

    pub fn degree(&self, site: usize) -> usize {
        self.adjacency[site].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges of one layer, in canonical order.
    pub fn layer_edges(&self, layer: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges
            .iter()
            .zip(&self.coloring.layer_of_edge)
            .filter(move |(_, &l)| l == layer)
            .map(|(&e, _)| e)
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Shortest-path distances from `source` (`None` when unreachable).
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.num_sites];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Largest shortest-path distance (graph must be connected).
    pub fn diameter(&self) -> usize {
        (0..self.num_sites)
            .map(|s| self.bfs_distances(s).into_iter().flatten().max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// All sites within graph distance `radius` of `center`, center included.
    pub fn neighborhood(&self, center: usize, radius: usize) -> Result<Neighborhood> {
        if center >= self.num_sites {
            return Err(Error::InvalidInput(format!(
                "site {center} out of range for {} sites",
                self.num_sites
            )));
        }
        let members = self
            .bfs_distances(center)
            .into_iter()
            .enumerate()
            .filter_map(|(s, d)| d.filter(|&d| d <= radius).map(|_| s))
            .collect();
        Ok(Neighborhood { center, radius, members })
    }

    /// Graph restricted to `sites`, relabeled in the given order.
    pub fn induced_subgraph(&self, sites: &[usize]) -> Result<LatticeGraph> {
        let mut new_index = vec![usize::MAX; self.num_sites];
        for (k, &s) in sites.iter().enumerate() {
            if s >= self.num_sites || new_index[s] != usize::MAX {
                return Err(Error::InvalidInput(format!("invalid or repeated site {s} in subgraph")));
            }
            new_index[s] = k;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(i, j)| new_index[i] != usize::MAX && new_index[j] != usize::MAX)
            .map(|&(i, j)| (new_index[i], new_index[j]))
            .collect();
        let coords = sites.iter().map(|&s| self.coords[s]).collect();
        LatticeGraph::from_parts(sites.len(), edges, Some(coords))
    }

    /// Edge-list text: one `i j` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# {} sites\n", self.num_sites);
        for &(i, j) in &self.edges {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "num_sites": self.num_sites,
            "edges": self.edges.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
            "layers": self.coloring.layer_of_edge,
            "coords": self.coords.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>(),
        })
    }
}

/// Parses an edge-list document. Lines are `i j`; `#` starts a comment. The
/// site count is one more than the largest index, or the value of a
/// `# sites: N` header when present.
pub fn load_edge_list(text: &str) -> Result<LatticeGraph> {
    let mut edges = Vec::new();
    let mut declared: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let (content, comment) = match raw.find('#') {
            Some(p) => (&raw[..p], Some(&raw[p + 1..])),
            None => (raw, None),
        };
        if let Some(c) = comment {
            if let Some(n) = c.trim().strip_prefix("sites:") {
                declared = Some(n.trim().parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    message: format!("bad site count {:?}", n.trim()),
                })?);
            }
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            [a, b] => {
                let parse = |s: &str| {
                    s.parse::<usize>().map_err(|_| Error::Parse {
                        line: lineno + 1,
                        message: format!("expected a site index, found {s:?}"),
                    })
                };
                edges.push((parse(a)?, parse(b)?));
            }
            _ => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected two indices, found {:?}", content.trim()),
                })
            }
        }
    }
    let inferred = edges.iter().map(|&(i, j)| i.max(j) + 1).max().unwrap_or(0);
    let num_sites = declared.unwrap_or(inferred);
    LatticeGraph::from_parts(num_sites, edges, None)
}

fn build_adjacency(num_sites: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); num_sites];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

fn circular_layout(n: usize) -> Vec<(f64, f64)> {
    let radius = (n as f64).max(1.0) / std::f64::consts::TAU * 2.0;
    (0..n)
        .map(|k| {
            let a = std::f64::consts::TAU * k as f64 / n as f64;
            (radius * a.cos(), radius * a.sin())
        })
        .collect()
}

/// Computes a proper edge coloring of `graph` from scratch.
pub fn color_edges(graph: &LatticeGraph) -> EdgeColoring {
    color_edges_raw(graph.num_sites, &graph.edges, &graph.adjacency)
}

fn color_edges_raw(num_sites: usize, edges: &[(usize, usize)], adjacency: &[Vec<usize>]) -> EdgeColoring {
    let max_deg = adjacency.iter().map(Vec::len).max().unwrap_or(0);
    let finish = |colors: Vec<usize>| {
        let num_layers = colors.iter().map(|c| c + 1).max().unwrap_or(0);
        EdgeColoring { layer_of_edge: colors, num_layers, exceeds_three_layers: num_layers > 3 }
    };
    if edges.is_empty() {
        return finish(Vec::new());
    }
    if let Some(c) = greedy_coloring(num_sites, edges, max_deg) {
        return finish(c);
    }
    if is_bipartite(num_sites, adjacency) {
        return finish(bipartite_coloring(num_sites, edges, max_deg));
    }
    let mut k = max_deg;
    loop {
        if let Some(c) = greedy_coloring(num_sites, edges, k) {
            return finish(c);
        }
        if let Some(c) = backtrack_coloring(num_sites, edges, k, 200_000) {
            return finish(c);
        }
        // greedy always succeeds once k reaches 2 * max_deg - 1
        k += 1;
    }
}

/// First-fit over the canonical edge order with at most `k` colors.
fn greedy_coloring(num_sites: usize, edges: &[(usize, usize)], k: usize) -> Option<Vec<usize>> {
    let mut used = vec![0u64; num_sites];
    let mut colors = Vec::with_capacity(edges.len());
    for &(i, j) in edges {
        let busy = used[i] | used[j];
        let c = (0..k.min(64)).find(|&c| busy & (1 << c) == 0)?;
        used[i] |= 1 << c;
        used[j] |= 1 << c;
        colors.push(c);
    }
    Some(colors)
}

fn is_bipartite(num_sites: usize, adjacency: &[Vec<usize>]) -> bool {
    let mut side = vec![None; num_sites];
    for start in 0..num_sites {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap_or(false);
            for &v in &adjacency[u] {
                match side[v] {
                    None => {
                        side[v] = Some(!su);
                        queue.push_back(v);
                    }
                    Some(sv) if sv == su => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// König coloring with `max_deg` colors via alternating-path flips.
fn bipartite_coloring(num_sites: usize, edges: &[(usize, usize)], max_deg: usize) -> Vec<usize> {
    // at[v][c] = edge index of color c at v
    let mut at: Vec<Vec<Option<usize>>> = vec![vec![None; max_deg]; num_sites];
    let mut colors: Vec<Option<usize>> = vec![None; edges.len()];
    let free = |at: &Vec<Vec<Option<usize>>>, v: usize| (0..max_deg).find(|&c| at[v][c].is_none());
    for (e, &(u, v)) in edges.iter().enumerate() {
        let a = free(&at, u).expect("degree bound");
        let b = free(&at, v).expect("degree bound");
        if at[v][a].is_some() {
            // walk the a/b path from v and swap its colors
            let mut path = Vec::new();
            let mut node = v;
            let mut want = a;
            while let Some(pe) = at[node][want] {
                path.push(pe);
                let (x, y) = edges[pe];
                node = if x == node { y } else { x };
                want = if want == a { b } else { a };
            }
            for &pe in &path {
                let (x, y) = edges[pe];
                let c = colors[pe].expect("path edges are colored");
                at[x][c] = None;
                at[y][c] = None;
            }
            for &pe in &path {
                let (x, y) = edges[pe];
                let c = if colors[pe] == Some(a) { b } else { a };
                colors[pe] = Some(c);
                at[x][c] = Some(pe);
                at[y][c] = Some(pe);
            }
        }
        debug_assert!(at[u][a].is_none() && at[v][a].is_none());
        colors[e] = Some(a);
        at[u][a] = Some(e);
        at[v][a] = Some(e);
    }
    colors.into_iter().map(|c| c.expect("all edges colored")).collect()
}

fn backtrack_coloring(num_sites: usize, edges: &[(usize, usize)], k: usize, budget: usize) -> Option<Vec<usize>> {
    fn go(
        e: usize,
        edges: &[(usize, usize)],
        k: usize,
        used: &mut [u64],
        colors: &mut [usize],
        steps: &mut usize,
    ) -> Option<bool> {
        if e == edges.len() {
            return Some(true);
        }
        *steps = steps.checked_sub(1)?;
        let (i, j) = edges[e];
        for c in 0..k.min(64) {
            let bit = 1u64 << c;
            if (used[i] | used[j]) & bit == 0 {
                used[i] |= bit;
                used[j] |= bit;
                colors[e] = c;
                if go(e + 1, edges, k, used, colors, steps)? {
                    return Some(true);
                }
                used[i] &= !bit;
                used[j] &= !bit;
            }
        }
        Some(false)
    }
    let mut used = vec![0u64; num_sites];
    let mut colors = vec![0; edges.len()];
    let mut steps = budget;
    match go(0, edges, k, &mut used, &mut colors, &mut steps) {
        Some(true) => Some(colors),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_proper(g: &LatticeGraph) {
        for s in 0..g.num_sites() {
            let layers: Vec<usize> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, &(i, j))| i == s || j == s)
                .map(|(e, _)| g.layer_of_edge(e))
                .collect();
            let unique: BTreeSet<_> = layers.iter().collect();
            assert_eq!(unique.len(), layers.len(), "site {s} has clashing layers {layers:?}");
        }
    }

    #[test]
    fn builtin_sizes() {
        for size in SizeClass::ALL {
            let g = build_heavy_hex(size).unwrap();
            assert_eq!(g.num_sites(), size.num_sites());
            assert!(g.max_degree() <= 3);
            assert!(g.is_connected());
            assert_eq!(g.num_layers(), 3, "{size}");
            assert_proper(&g);
        }
        assert_eq!(build_heavy_hex(SizeClass::L156).unwrap().edges().len(), 176);
    }

    #[test]
    fn l19_matches_hand_enumeration() {
        // row 0: sites 0..=7, bridges 8 (col 3) and 9 (col 7), row 1: 10..=18
        let mut expected: Vec<(usize, usize)> = (0..7).map(|c| (c, c + 1)).collect();
        expected.extend((10..18).map(|c| (c, c + 1)));
        expected.extend([(3, 8), (8, 13), (7, 9), (9, 17)]);
        expected.sort_unstable();
        let g = build_heavy_hex(SizeClass::L19).unwrap();
        assert_eq!(g.edges(), expected.as_slice());
        assert_eq!(g.edges().len(), 19);
    }

    #[test]
    fn l156_layers_are_matchings() {
        let g = build_heavy_hex(SizeClass::L156).unwrap();
        for layer in 0..3 {
            let mut covered = BTreeSet::new();
            for (i, j) in g.layer_edges(layer) {
                assert!(covered.insert(i) && covered.insert(j));
            }
        }
    }

    #[test]
    fn k4_neighborhoods_on_l156_average_about_16() {
        let g = build_heavy_hex(SizeClass::L156).unwrap();
        let mean = (0..156).map(|j| g.neighborhood(j, 4).unwrap().members.len()).sum::<usize>() as f64 / 156.0;
        assert!((12.0..=20.0).contains(&mean), "mean |N_j| = {mean}");
    }

    #[test]
    fn unsupported_size_is_rejected() {
        assert!(matches!("L27".parse::<SizeClass>(), Err(Error::UnsupportedTopology(_))));
        assert!(matches!(
            heavy_hex_from_params(HeavyHexParams { rows: 2, row_width: 3 }),
            Err(Error::UnsupportedTopology(_))
        ));
    }

    #[test]
    fn edge_list_basics() {
        let g = load_edge_list("0 1\n").unwrap();
        assert_eq!((g.num_sites(), g.edges().len()), (2, 1));

        let tri = load_edge_list("0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(tri.num_layers(), 3);
        assert_proper(&tri);

        let path = load_edge_list("# path\n0 1\n1 2 # tail\n").unwrap();
        assert_ne!(path.layer_of_edge(0), path.layer_of_edge(1));

        let star = load_edge_list("0 1\n0 2\n0 3\n").unwrap();
        assert_eq!(star.num_layers(), 3);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(load_edge_list("0 x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load_edge_list("0 1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(load_edge_list("0 1\n1 0\n"), Err(Error::InvalidInput(_))));
        assert!(matches!(load_edge_list("# sites: 2\n0 5\n"), Err(Error::InvalidInput(_))));
        assert!(matches!(load_edge_list("3 3\n"), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn l28_edge_list_roundtrip_matches_generator() {
        // row 0: 0..=11, bridges 12 (col 3), 13 (col 7), 14 (col 11), row 1: 15..=27
        let mut text = String::new();
        for c in 0..11 {
            text.push_str(&format!("{} {}\n", c, c + 1));
        }
        for c in 15..27 {
            text.push_str(&format!("{} {}\n", c, c + 1));
        }
        text.push_str("3 12\n12 18\n7 13\n13 22\n11 14\n14 26\n");
        let loaded = load_edge_list(&text).unwrap();
        let built = build_heavy_hex(SizeClass::L28).unwrap();
        assert_eq!(loaded.edges(), built.edges());
        assert_eq!(loaded.coloring(), built.coloring());
    }

    #[test]
    fn petersen_needs_four_layers() {
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let edges = [outer, spokes, inner].concat();
        let g = LatticeGraph::from_parts(10, edges, None).unwrap();
        assert_eq!(g.num_layers(), 4);
        assert!(g.coloring().exceeds_three_layers);
        assert_proper(&g);
    }

    #[test]
    fn neighborhood_edges() {
        let g = build_heavy_hex(SizeClass::L19).unwrap();
        assert_eq!(g.neighborhood(5, 0).unwrap().members, vec![5]);
        let d = g.diameter();
        assert_eq!(g.neighborhood(5, d).unwrap().members.len(), 19);
        assert!(g.neighborhood(19, 1).is_err());
    }
}
