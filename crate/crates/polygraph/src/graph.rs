//! Graph representation and the measurement algorithms that certify every
//! constructed graph: BFS distances, exact and budgeted diameter, girth,
//! bipartition, degree statistics, and disjoint shortest-path counting.
//!
//! Graphs are immutable after construction: a compact CSR adjacency with
//! dense vertex identifiers, sorted neighbor lists, no self-loops and no
//! parallel edges. All measurements are pure reads, so the multi-source
//! sweeps distribute sources across rayon workers over the shared structure;
//! merged results are max/min reductions and therefore independent of worker
//! count and scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU32, Ordering};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for order {n}")]
    VertexOutOfRange { v: u64, n: u64 },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is acyclic, girth undefined")]
    Acyclic,
    #[error("graph is not bipartite (odd cycle of length {})", odd_cycle.len())]
    NotBipartite { odd_cycle: Vec<u32> },
    #[error("diameter bounded mode exhausted its budget of {used} BFS runs at bounds [{lower}, {upper}]")]
    BudgetExceeded { lower: u32, upper: u32, used: u64 },
}

/// Provenance of a vertex: geometry point or line for incidence graphs,
/// clique block and slot for compounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexLabel {
    Point(u32),
    Line(u32),
    CliqueSlot { i: u16, j: u16, k: u16, slot: u16 },
}

impl std::fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VertexLabel::Point(i) => write!(f, "point {i}"),
            VertexLabel::Line(i) => write!(f, "line {i}"),
            VertexLabel::CliqueSlot { i, j, k, slot } => {
                write!(f, "clique ({i},{j},{k}) slot {slot}")
            }
        }
    }
}

/// Immutable undirected graph in CSR form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<u32>,
    neighbors: Vec<u32>,
    labels: Option<Vec<VertexLabel>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse to one; self-loops and out-of-range endpoints
    /// are rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let nu = n as u64;
        let mut deg = vec![0u32; n];
        for &(a, b) in edges {
            if a as u64 >= nu {
                return Err(GraphError::VertexOutOfRange { v: a as u64, n: nu });
            }
            if b as u64 >= nu {
                return Err(GraphError::VertexOutOfRange { v: b as u64, n: nu });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        let mut offsets = vec![0u32; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + deg[v];
        }
        let mut neighbors = vec![0u32; offsets[n] as usize];
        let mut cursor: Vec<u32> = offsets[..n].to_vec();
        for &(a, b) in edges {
            neighbors[cursor[a as usize] as usize] = b;
            cursor[a as usize] += 1;
            neighbors[cursor[b as usize] as usize] = a;
            cursor[b as usize] += 1;
        }
        // sort and dedup each adjacency list, then recompact
        let mut out_nei = Vec::with_capacity(neighbors.len());
        let mut out_off = vec![0u32; n + 1];
        for v in 0..n {
            let seg = &mut neighbors[offsets[v] as usize..offsets[v + 1] as usize];
            seg.sort_unstable();
            let mut prev = u32::MAX;
            for &x in seg.iter() {
                if x != prev {
                    out_nei.push(x);
                    prev = x;
                }
            }
            out_off[v + 1] = out_nei.len() as u32;
        }
        Ok(Graph {
            offsets: out_off,
            neighbors: out_nei,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Graph {
        assert_eq!(labels.len(), self.order());
        self.labels = Some(labels);
        self
    }

    /// Drops the provenance labels; adjacency comparisons across formats
    /// that cannot carry labels use this.
    pub fn without_labels(mut self) -> Graph {
        self.labels = None;
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    #[inline]
    pub fn num_edges(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: u32) -> u32 {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.order() as u32).flat_map(move |v| {
            self.neighbors(v)
                .iter()
                .copied()
                .filter(move |&w| v < w)
                .map(move |w| (v, w))
        })
    }

    /// Exact hop distances from `src`; unreachable vertices hold the
    /// sentinel N (an impossible hop count).
    pub fn bfs_distances(&self, src: u32) -> Vec<u32> {
        let mut dist = vec![self.order() as u32; self.order()];
        let mut queue = Vec::with_capacity(self.order());
        self.bfs_into(src, &mut dist, &mut queue);
        dist
    }

    /// Core BFS. `dist` must be pre-filled with the sentinel; `queue` is
    /// scratch. Returns (eccentricity within the component, vertices seen).
    fn bfs_into(&self, src: u32, dist: &mut [u32], queue: &mut Vec<u32>) -> (u32, usize) {
        queue.clear();
        queue.push(src);
        dist[src as usize] = 0;
        let mut head = 0usize;
        let mut ecc = 0u32;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            let du = dist[u as usize];
            ecc = du;
            let sentinel = self.order() as u32;
            for &w in self.neighbors(u) {
                if dist[w as usize] == sentinel {
                    dist[w as usize] = du + 1;
                    queue.push(w);
                }
            }
        }
        (ecc, queue.len())
    }

    fn fresh_dist(&self) -> Vec<u32> {
        vec![self.order() as u32; self.order()]
    }

    pub fn is_connected(&self) -> bool {
        if self.order() == 0 {
            return true;
        }
        let mut dist = self.fresh_dist();
        let mut queue = Vec::new();
        let (_, seen) = self.bfs_into(0, &mut dist, &mut queue);
        seen == self.order()
    }

    /// Sizes of the BFS levels from `src` (index = distance).
    pub fn level_sizes(&self, src: u32) -> Vec<u64> {
        let dist = self.bfs_distances(src);
        let n = self.order() as u32;
        let ecc = dist.iter().filter(|&&d| d < n).max().copied().unwrap_or(0);
        let mut sizes = vec![0u64; ecc as usize + 1];
        for &d in &dist {
            if d < n {
                sizes[d as usize] += 1;
            }
        }
        sizes
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let mut histogram = BTreeMap::new();
        for v in 0..self.order() as u32 {
            *histogram.entry(self.degree(v)).or_insert(0u64) += 1;
        }
        DegreeStats {
            min: histogram.keys().next().copied().unwrap_or(0),
            max: histogram.keys().next_back().copied().unwrap_or(0),
            histogram,
        }
    }

    /// Two-coloring by BFS parity, side of vertex 0 first. Works per
    /// component; the witness on failure is a concrete odd cycle.
    pub fn bipartition(&self) -> Result<(Vec<u32>, Vec<u32>), GraphError> {
        let n = self.order();
        let mut color = vec![u8::MAX; n];
        let mut parent = vec![u32::MAX; n];
        let mut queue = Vec::with_capacity(n);
        for root in 0..n as u32 {
            if color[root as usize] != u8::MAX {
                continue;
            }
            color[root as usize] = 0;
            queue.clear();
            queue.push(root);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for &w in self.neighbors(u) {
                    if color[w as usize] == u8::MAX {
                        color[w as usize] = 1 - color[u as usize];
                        parent[w as usize] = u;
                        queue.push(w);
                    } else if color[w as usize] == color[u as usize] {
                        return Err(GraphError::NotBipartite {
                            odd_cycle: odd_cycle_witness(&parent, u, w),
                        });
                    }
                }
            }
        }
        let mut a = Vec::new();
        let mut b = Vec::new();
        for v in 0..n as u32 {
            if color[v as usize] == 0 {
                a.push(v);
            } else {
                b.push(v);
            }
        }
        Ok((a, b))
    }

    /// Diameter of a connected graph.
    ///
    /// Exact mode runs BFS from every vertex. Bounded mode is iFUB-style:
    /// a double sweep picks a high-eccentricity root, then vertices are
    /// processed by decreasing root-distance, maintaining the invariant that
    /// once the best eccentricity seen reaches twice the fringe level, every
    /// unprocessed pair is already within that bound. The returned value is
    /// exact in both modes; bounded mode reports how many BFS runs it used
    /// and fails loudly when the budget runs out.
    pub fn diameter(&self, mode: DiameterMode) -> Result<DiameterOutcome, GraphError> {
        if self.order() == 0 {
            return Err(GraphError::Disconnected);
        }
        if self.order() == 1 {
            return Ok(DiameterOutcome {
                value: 0,
                method: DiameterMethod::Exact,
                bfs_runs: 0,
            });
        }
        match mode {
            DiameterMode::Exact => self.diameter_exact(),
            DiameterMode::Bounded { budget } => self.diameter_bounded(budget),
        }
    }

    fn diameter_exact(&self) -> Result<DiameterOutcome, GraphError> {
        let n = self.order();
        let result = (0..n as u32)
            .into_par_iter()
            .map_init(
                || (self.fresh_dist(), Vec::new()),
                |(dist, queue), src| {
                    dist.fill(n as u32);
                    let (ecc, seen) = self.bfs_into(src, dist, queue);
                    (ecc, seen == n)
                },
            )
            .reduce(
                || (0u32, true),
                |(e1, c1), (e2, c2)| (e1.max(e2), c1 && c2),
            );
        if !result.1 {
            return Err(GraphError::Disconnected);
        }
        Ok(DiameterOutcome {
            value: result.0,
            method: DiameterMethod::Exact,
            bfs_runs: n as u64,
        })
    }

    fn diameter_bounded(&self, budget: u64) -> Result<DiameterOutcome, GraphError> {
        let n = self.order();
        let mut used = 0u64;
        let mut dist = self.fresh_dist();
        let mut queue = Vec::new();

        let run = |src: u32, dist: &mut Vec<u32>, queue: &mut Vec<u32>, used: &mut u64| {
            dist.fill(n as u32);
            let (ecc, seen) = self.bfs_into(src, dist, queue);
            *used += 1;
            (ecc, seen)
        };

        let (_, seen) = run(0, &mut dist, &mut queue, &mut used);
        if seen != n {
            return Err(GraphError::Disconnected);
        }
        if budget < 3 {
            return Err(GraphError::BudgetExceeded {
                lower: 0,
                upper: u32::MAX,
                used,
            });
        }
        let a = farthest(&dist, n as u32);
        let (ecc_a, _) = run(a, &mut dist, &mut queue, &mut used);
        let mut lb = ecc_a;
        // midpoint of a shortest a→b path, walked back greedily
        let b = farthest(&dist, n as u32);
        let mut cur = b;
        for _ in 0..ecc_a / 2 {
            let du = dist[cur as usize];
            cur = *self
                .neighbors(cur)
                .iter()
                .find(|&&w| dist[w as usize] + 1 == du)
                .expect("BFS predecessor exists");
        }
        let root = cur;
        let (ecc_root, _) = run(root, &mut dist, &mut queue, &mut used);
        lb = lb.max(ecc_root);
        let root_dist = dist.clone();

        // vertices grouped by root distance
        let mut levels: Vec<Vec<u32>> = vec![Vec::new(); ecc_root as usize + 1];
        for (v, &d) in root_dist.iter().enumerate() {
            levels[d as usize].push(v as u32);
        }

        for i in (1..=ecc_root as usize).rev() {
            // process the whole fringe level first; only then is 2(i−1) a
            // valid bound on every pair that remains unprocessed
            for chunk in levels[i].chunks(256) {
                if used + chunk.len() as u64 > budget {
                    return Err(GraphError::BudgetExceeded {
                        lower: lb,
                        upper: lb.max(2 * i as u32),
                        used,
                    });
                }
                let chunk_max = chunk
                    .par_iter()
                    .map_init(
                        || (self.fresh_dist(), Vec::new()),
                        |(dist, queue), &src| {
                            dist.fill(n as u32);
                            self.bfs_into(src, dist, queue).0
                        },
                    )
                    .max()
                    .unwrap_or(0);
                used += chunk.len() as u64;
                lb = lb.max(chunk_max);
            }
            if lb >= 2 * (i as u32 - 1) {
                break;
            }
        }
        Ok(DiameterOutcome {
            value: lb,
            method: DiameterMethod::Bounded,
            bfs_runs: used,
        })
    }

    /// Length of the shortest cycle, by per-source truncated BFS over all
    /// sources in parallel. Sources are processed against the best cycle
    /// found so far, so small girths terminate almost immediately.
    pub fn girth(&self) -> Result<u32, GraphError> {
        let n = self.order();
        if n == 0 {
            return Err(GraphError::Acyclic);
        }
        let best = AtomicU32::new(u32::MAX);
        (0..n as u32).into_par_iter().for_each_init(
            || (self.fresh_dist(), vec![u32::MAX; n], Vec::new()),
            |(dist, parent, queue), src| {
                let limit = best.load(Ordering::Relaxed);
                if limit == 3 {
                    return; // cannot improve
                }
                dist.fill(n as u32);
                parent.fill(u32::MAX);
                queue.clear();
                queue.push(src);
                dist[src as usize] = 0;
                let mut head = 0;
                let mut local = limit;
                while head < queue.len() {
                    let u = queue[head];
                    head += 1;
                    let du = dist[u as usize];
                    // deeper vertices cannot reveal a cycle shorter than local
                    if 2 * du >= local {
                        break;
                    }
                    for &w in self.neighbors(u) {
                        if dist[w as usize] == n as u32 {
                            dist[w as usize] = du + 1;
                            parent[w as usize] = u;
                            queue.push(w);
                        } else if parent[u as usize] != w && parent[w as usize] != u {
                            let cand = du + dist[w as usize] + 1;
                            if cand < local {
                                local = cand;
                            }
                        }
                    }
                }
                if local < limit {
                    best.fetch_min(local, Ordering::Relaxed);
                }
            },
        );
        match best.load(Ordering::Relaxed) {
            u32::MAX => Err(GraphError::Acyclic),
            g => Ok(g),
        }
    }

    /// Maximum number of internally vertex-disjoint shortest u–v paths:
    /// unit-capacity flow on the shortest-path level DAG with split vertices.
    pub fn disjoint_shortest_paths(&self, u: u32, v: u32) -> u32 {
        assert_ne!(u, v, "endpoints must differ");
        let n = self.order();
        let du = self.bfs_distances(u);
        let dv = self.bfs_distances(v);
        let d = du[v as usize];
        if d >= n as u32 {
            return 0; // unreachable
        }
        // vertices on at least one shortest path
        let mut id = vec![u32::MAX; n];
        let mut nodes = Vec::new();
        for x in 0..n as u32 {
            if du[x as usize] < n as u32 && du[x as usize] + dv[x as usize] == d {
                id[x as usize] = nodes.len() as u32;
                nodes.push(x);
            }
        }
        // flow network: x_in = 2*ix, x_out = 2*ix+1
        let mut flow = FlowNet::new(nodes.len() * 2);
        for (ix, &x) in nodes.iter().enumerate() {
            let cap = if x == u || x == v { u32::MAX } else { 1 };
            flow.add_edge(2 * ix as u32, 2 * ix as u32 + 1, cap);
            for &w in self.neighbors(x) {
                let iw = id[w as usize];
                if iw != u32::MAX && du[w as usize] == du[x as usize] + 1 {
                    flow.add_edge(2 * ix as u32 + 1, 2 * iw, 1);
                }
            }
        }
        let src = 2 * id[u as usize] + 1;
        let snk = 2 * id[v as usize];
        flow.max_flow(src, snk)
    }

    /// Full measurement pass producing a [`Certificate`].
    pub fn certify(&self, opts: &CertifyOptions) -> Result<Certificate, GraphError> {
        let start = Instant::now();
        let n = self.order() as u64;
        let mut phase_ms = Vec::new();

        let t = Instant::now();
        let stats = self.degree_stats();
        phase_ms.push(("degrees".to_string(), t.elapsed().as_millis() as u64));

        let t = Instant::now();
        let bipartite = self.bipartition();
        let (bip, sides) = match &bipartite {
            Ok((a, b)) => (true, Some((a.len() as u64, b.len() as u64))),
            Err(_) => (false, None),
        };
        phase_ms.push(("bipartition".to_string(), t.elapsed().as_millis() as u64));

        let exact = n <= opts.exact_threshold;

        let t = Instant::now();
        let girth = if exact || opts.force_girth {
            match self.girth() {
                Ok(g) => Some(g),
                Err(GraphError::Acyclic) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        phase_ms.push(("girth".to_string(), t.elapsed().as_millis() as u64));

        let t = Instant::now();
        let mode = opts.force_mode.unwrap_or(if exact {
            DiameterMode::Exact
        } else {
            DiameterMode::Bounded {
                budget: opts.bfs_budget,
            }
        });
        let diameter = self.diameter(mode)?;
        phase_ms.push(("diameter".to_string(), t.elapsed().as_millis() as u64));

        Ok(Certificate {
            order: n,
            min_degree: stats.min,
            max_degree: stats.max,
            bipartite: bip,
            side_sizes: sides,
            girth,
            diameter: diameter.value,
            diameter_method: diameter.method,
            elapsed_ms: start.elapsed().as_millis() as u64,
            phase_ms,
            diameter_bfs_runs: diameter.bfs_runs,
        })
    }
}

fn farthest(dist: &[u32], sentinel: u32) -> u32 {
    let mut best = 0u32;
    let mut arg = 0u32;
    for (v, &d) in dist.iter().enumerate() {
        if d != sentinel && d > best {
            best = d;
            arg = v as u32;
        }
    }
    arg
}

fn odd_cycle_witness(parent: &[u32], u: u32, w: u32) -> Vec<u32> {
    let path = |mut x: u32| {
        let mut p = vec![x];
        while parent[x as usize] != u32::MAX {
            x = parent[x as usize];
            p.push(x);
        }
        p
    };
    let pu = path(u);
    let pw = path(w);
    // strip the common tail above the meeting point
    let mut iu = pu.len();
    let mut iw = pw.len();
    while iu > 1 && iw > 1 && pu[iu - 2] == pw[iw - 2] {
        iu -= 1;
        iw -= 1;
    }
    let mut cycle: Vec<u32> = pu[..iu].to_vec();
    cycle.extend(pw[..iw - 1].iter().rev());
    cycle
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiameterMode {
    Exact,
    Bounded { budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiameterMethod {
    Exact,
    Bounded,
}

impl std::fmt::Display for DiameterMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiameterMethod::Exact => write!(f, "exact"),
            DiameterMethod::Bounded => write!(f, "bounded"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DiameterOutcome {
    pub value: u32,
    pub method: DiameterMethod,
    pub bfs_runs: u64,
}

#[derive(Debug, Clone)]
pub struct DegreeStats {
    pub min: u32,
    pub max: u32,
    pub histogram: BTreeMap<u32, u64>,
}

/// How `certify` measures a graph.
#[derive(Debug, Clone)]
pub struct CertifyOptions {
    /// Orders up to this get exhaustive certification: exact diameter and
    /// measured girth.
    pub exact_threshold: u64,
    /// BFS budget for bounded diameter mode above the threshold.
    pub bfs_budget: u64,
    /// Measure girth even above the exact threshold.
    pub force_girth: bool,
    /// Override the mode choice entirely.
    pub force_mode: Option<DiameterMode>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            exact_threshold: 10_000,
            bfs_budget: 10_000,
            force_girth: false,
            force_mode: None,
        }
    }
}

/// Measured properties of a graph. Serializes to the flat JSON object used
/// by the CLI: order, min_degree, max_degree, bipartite, girth, diameter,
/// diameter_method, elapsed_ms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub order: u64,
    pub min_degree: u32,
    pub max_degree: u32,
    pub bipartite: bool,
    #[serde(skip)]
    pub side_sizes: Option<(u64, u64)>,
    pub girth: Option<u32>,
    pub diameter: u32,
    pub diameter_method: DiameterMethod,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub phase_ms: Vec<(String, u64)>,
    #[serde(skip)]
    pub diameter_bfs_runs: u64,
}

/// Moore bound (Δ(Δ−1)^D − 2)/(Δ−2) on the order of a graph with maximum
/// degree Δ and diameter D.
pub fn moore_bound(delta: u32, d: u32) -> u128 {
    let (delta, d) = (delta as u128, d);
    match delta {
        0 => 1,
        1 => 2,
        2 => 2 * d as u128 + 1,
        _ => (delta * (delta - 1).pow(d) - 2) / (delta - 2),
    }
}

/// Bipartite Moore bound 2((Δ−1)^D − 1)/(Δ−2).
pub fn bipartite_moore_bound(delta: u32, d: u32) -> u128 {
    let (delta, d) = (delta as u128, d);
    match delta {
        0 => 1,
        1 => 2,
        2 => 2 * d as u128,
        _ => 2 * ((delta - 1).pow(d) - 1) / (delta - 2),
    }
}

/// Minimal unit-capacity max-flow network used by disjoint path counting.
struct FlowNet {
    head: Vec<Vec<u32>>, // edge indices per node
    to: Vec<u32>,
    cap: Vec<u32>,
}

impl FlowNet {
    fn new(n: usize) -> FlowNet {
        FlowNet {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_edge(&mut self, a: u32, b: u32, cap: u32) {
        self.head[a as usize].push(self.to.len() as u32);
        self.to.push(b);
        self.cap.push(cap);
        self.head[b as usize].push(self.to.len() as u32);
        self.to.push(a);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: u32, t: u32) -> u32 {
        let n = self.head.len();
        let mut flow = 0u32;
        loop {
            // BFS for an augmenting path
            let mut pre = vec![u32::MAX; n]; // edge used to reach node
            let mut queue = vec![s];
            let mut headi = 0;
            while headi < queue.len() && pre[t as usize] == u32::MAX {
                let u = queue[headi];
                headi += 1;
                for &e in &self.head[u as usize] {
                    let v = self.to[e as usize];
                    if self.cap[e as usize] > 0 && pre[v as usize] == u32::MAX && v != s {
                        pre[v as usize] = e;
                        queue.push(v);
                    }
                }
            }
            if pre[t as usize] == u32::MAX {
                return flow;
            }
            // augment by 1 (all path capacities are at least 1)
            let mut v = t;
            while v != s {
                let e = pre[v as usize] as usize;
                if self.cap[e] != u32::MAX {
                    self.cap[e] -= 1;
                }
                self.cap[e ^ 1] = self.cap[e ^ 1].saturating_add(1);
                v = self.to[e ^ 1];
            }
            flow += 1;
        }
    }
}
