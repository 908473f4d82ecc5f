//! Builders for the bipartite Moore incidence graphs: projective planes
//! P_q (diameter 3), generalized quadrangles Q_q (diameter 4), and
//! generalized hexagons H_q (diameter 6), all of degree q+1, plus the
//! validator that certifies a built graph against the closed-form order,
//! regularity, girth 2D and diameter D.
//!
//! Vertex numbering is points first, then lines, each side in geometry
//! enumeration order, so identical inputs rebuild byte-identical graphs.

use crate::cache::{self, CacheConfig};
use crate::field::{FieldError, FieldSpec};
use crate::geometry::{
    enumerate_projective_points, hexagon_geometry, lines_on_quadric, quadric_points, GeometryError,
    GeometryLine, ProjectivePoint, QuadraticForm,
};
use crate::graph::{
    bipartite_moore_bound, Certificate, CertifyOptions, Graph, GraphError, VertexLabel,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MooreError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("line contains a point missing from the point list")]
    UnknownPoint,
    #[error("moore validation failed: {predicate} ({details})")]
    ValidationFailed { predicate: String, details: String },
    #[error(transparent)]
    Cache(#[from] cache::CacheError),
}

/// The three families of bipartite Moore graphs this crate constructs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MooreFamily {
    /// Incidence graph of PG(2,q): diameter 3, order 2(q²+q+1).
    ProjectivePlane,
    /// Incidence graph of the parabolic quadric in PG(4,q): diameter 4,
    /// order 2(q⁴−1)/(q−1).
    GeneralizedQuadrangle,
    /// Incidence graph of the hexagon on the parabolic quadric in PG(6,q):
    /// diameter 6, order 2(q⁶−1)/(q−1).
    GeneralizedHexagon,
}

impl MooreFamily {
    pub fn diameter(self) -> u32 {
        match self {
            MooreFamily::ProjectivePlane => 3,
            MooreFamily::GeneralizedQuadrangle => 4,
            MooreFamily::GeneralizedHexagon => 6,
        }
    }

    pub fn girth(self) -> u32 {
        2 * self.diameter()
    }

    pub fn expected_order(self, q: u64) -> u64 {
        match self {
            MooreFamily::ProjectivePlane => 2 * (q * q + q + 1),
            MooreFamily::GeneralizedQuadrangle => 2 * (q.pow(4) - 1) / (q - 1),
            MooreFamily::GeneralizedHexagon => 2 * (q.pow(6) - 1) / (q - 1),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            MooreFamily::ProjectivePlane => "pp",
            MooreFamily::GeneralizedQuadrangle => "gq",
            MooreFamily::GeneralizedHexagon => "gh",
        }
    }
}

/// Bipartite incidence graph: one vertex per point (in list order), then one
/// per line; edges join a line to each of its points.
pub fn build_incidence_graph(
    points: &[ProjectivePoint],
    lines: &[GeometryLine],
) -> Result<Graph, MooreError> {
    let memberships: Vec<Vec<u32>> = lines
        .iter()
        .map(|line| {
            line.points
                .iter()
                .map(|p| points.binary_search(p).map(|i| i as u32))
                .collect::<Result<Vec<u32>, _>>()
                .map_err(|_| MooreError::UnknownPoint)
        })
        .collect::<Result<_, _>>()?;
    incidence_from_memberships(points.len(), &memberships)
}

/// Same construction from raw point-id lists; used by tests and tools that
/// have no geometry at hand.
pub fn incidence_from_memberships(
    n_points: usize,
    lines: &[Vec<u32>],
) -> Result<Graph, MooreError> {
    let np = n_points as u32;
    let mut edges = Vec::with_capacity(lines.iter().map(Vec::len).sum());
    for (li, members) in lines.iter().enumerate() {
        for &p in members {
            if p >= np {
                return Err(MooreError::UnknownPoint);
            }
            edges.push((p, np + li as u32));
        }
    }
    let mut labels: Vec<VertexLabel> = (0..np).map(VertexLabel::Point).collect();
    labels.extend((0..lines.len() as u32).map(VertexLabel::Line));
    Ok(Graph::from_edges(n_points + lines.len(), &edges)?.with_labels(labels))
}

/// Incidence graph of the projective plane PG(2,q), order 2(q²+q+1).
///
/// Lines are enumerated through their dual coordinates: the line with dual
/// point (a:b:c) consists of the points x with a·x0 + b·x1 + c·x2 = 0.
pub fn build_pq(q: u64) -> Result<Graph, MooreError> {
    let spec = FieldSpec::new(q)?;
    let points = enumerate_projective_points(2, &spec)?;
    let duals = enumerate_projective_points(2, &spec)?;
    let memberships: Vec<Vec<u32>> = duals
        .iter()
        .map(|d| {
            let dc = d.coords();
            points
                .iter()
                .enumerate()
                .filter(|(_, p)| {
                    let pc = p.coords();
                    let mut acc = crate::field::FieldElement::ZERO;
                    for i in 0..3 {
                        acc = spec.add(
                            acc,
                            spec.mul(
                                crate::field::FieldElement(dc[i]),
                                crate::field::FieldElement(pc[i]),
                            ),
                        );
                    }
                    acc.is_zero()
                })
                .map(|(i, _)| i as u32)
                .collect()
        })
        .collect();
    incidence_from_memberships(points.len(), &memberships)
}

/// Incidence graph of the generalized quadrangle on the parabolic quadric in
/// PG(4,q), order 2(q⁴−1)/(q−1).
pub fn build_qq(q: u64) -> Result<Graph, MooreError> {
    let spec = FieldSpec::new(q)?;
    let form = QuadraticForm::parabolic(4)?;
    let points = quadric_points(&form, &spec)?;
    let lines = lines_on_quadric(&form, &spec)?;
    build_incidence_graph(&points, &lines)
}

/// Incidence graph of the generalized hexagon, order 2(q⁶−1)/(q−1).
/// With a cache configured, hexagons are stored after first construction and
/// reloaded (checksum-verified) on later calls.
pub fn build_hq(q: u64, cache: Option<&CacheConfig>) -> Result<Graph, MooreError> {
    if let Some(cfg) = cache {
        let key = cache::graph_key(MooreFamily::GeneralizedHexagon.tag(), q);
        if let Some(graph) = cache::load_graph(cfg, &key)? {
            let n = graph.order() as u64;
            if n == MooreFamily::GeneralizedHexagon.expected_order(q) {
                let half = (n / 2) as u32;
                let mut labels: Vec<VertexLabel> = (0..half).map(VertexLabel::Point).collect();
                labels.extend((0..half).map(VertexLabel::Line));
                return Ok(graph.with_labels(labels));
            }
            // wrong shape: fall through and rebuild
        }
        let graph = build_hq_uncached(q)?;
        cache::store_graph(cfg, &key, &graph)?;
        return Ok(graph);
    }
    build_hq_uncached(q)
}

fn build_hq_uncached(q: u64) -> Result<Graph, MooreError> {
    let spec = FieldSpec::new(q)?;
    let (points, lines) = hexagon_geometry(&spec)?;
    // hexagon lines carry point ids implicitly via sorted point order
    let memberships: Vec<Vec<u32>> = lines
        .iter()
        .map(|line| {
            line.points
                .iter()
                .map(|p| points.binary_search(p).map(|i| i as u32))
                .collect::<Result<Vec<u32>, _>>()
                .map_err(|_| MooreError::UnknownPoint)
        })
        .collect::<Result<_, _>>()?;
    incidence_from_memberships(points.len(), &memberships)
}

/// Certifies that `g` is the bipartite Moore graph of degree q+1 and
/// diameter `d`: order matches the bipartite bound, the graph is regular,
/// bipartite with equal sides, connected, girth is 2D and diameter is D.
/// Returns the full certificate; fails on the first violated predicate.
pub fn validate_moore(
    g: &Graph,
    q: u64,
    d: u32,
    opts: &CertifyOptions,
) -> Result<Certificate, MooreError> {
    let delta = (q + 1) as u32;
    let fail = |predicate: &str, details: String| MooreError::ValidationFailed {
        predicate: predicate.to_string(),
        details,
    };
    if q < 2 {
        // the geometries behind these graphs need a field, so q = Δ−1 ≥ 2
        return Err(fail(
            "q is a prime power of at least 2",
            format!("q = {q}"),
        ));
    }
    let expected = bipartite_moore_bound(delta, d);
    if g.order() as u128 != expected {
        return Err(fail(
            "order equals bipartite Moore bound",
            format!("order {} != bound {}", g.order(), expected),
        ));
    }
    let cert = g.certify(opts)?;
    if cert.min_degree != delta || cert.max_degree != delta {
        return Err(fail(
            "regularity of degree q+1",
            format!(
                "degrees in [{}, {}], expected {delta}",
                cert.min_degree, cert.max_degree
            ),
        ));
    }
    if !cert.bipartite {
        return Err(fail("bipartite", "odd cycle found".to_string()));
    }
    if let Some((a, b)) = cert.side_sizes {
        if a != b {
            return Err(fail("equal sides", format!("sides {a} / {b}")));
        }
    }
    if let Some(girth) = cert.girth {
        if girth != 2 * d {
            return Err(fail(
                "girth equals 2D",
                format!("girth {girth}, expected {}", 2 * d),
            ));
        }
    }
    if cert.diameter != d {
        return Err(fail(
            "diameter equals D",
            format!("diameter {}, expected {d}", cert.diameter),
        ));
    }
    Ok(cert)
}

/// Expected BFS level sizes from any vertex of a bipartite Moore graph of
/// degree Δ and diameter D: 1, Δ, Δ(Δ−1), …, with the last level holding the
/// remainder of the order.
pub fn moore_level_sizes(delta: u32, d: u32) -> Vec<u64> {
    let order = bipartite_moore_bound(delta, d) as u64;
    let mut sizes = vec![1u64];
    let mut running = 1u64;
    for level in 1..d {
        let s = delta as u64 * (delta as u64 - 1).pow(level - 1);
        sizes.push(s);
        running += s;
    }
    sizes.push(order - running);
    sizes
}

/// Complete bipartite K_{Δ,Δ}: the trivial diameter-2 bipartite Moore graph,
/// used only by tests.
pub fn build_complete_bipartite(delta: u32) -> Graph {
    let mut edges = Vec::new();
    for a in 0..delta {
        for b in 0..delta {
            edges.push((a, delta + b));
        }
    }
    Graph::from_edges(2 * delta as usize, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DiameterMode;

    #[test]
    fn fano_plane_is_heawood_graph() {
        // classical oracle: the 7-point Fano incidence graph is the Heawood
        // graph: 14 vertices, 3-regular, girth 6, diameter 3
        let g = build_pq(2).unwrap();
        assert_eq!(g.order(), 14);
        let stats = g.degree_stats();
        assert_eq!((stats.min, stats.max), (3, 3));
        assert_eq!(g.girth().unwrap(), 6);
        assert_eq!(g.diameter(DiameterMode::Exact).unwrap().value, 3);
    }

    #[test]
    fn plane_orders() {
        assert_eq!(build_pq(2).unwrap().order(), 14);
        assert_eq!(build_pq(3).unwrap().order(), 26);
        assert_eq!(build_pq(4).unwrap().order(), 42);
    }

    #[test]
    fn quadrangle_orders() {
        assert_eq!(build_qq(2).unwrap().order(), 30);
        assert_eq!(build_qq(3).unwrap().order(), 80);
        assert_eq!(build_qq(4).unwrap().order(), 170);
    }

    #[test]
    fn hexagon_q2_certifies() {
        let g = build_hq(2, None).unwrap();
        assert_eq!(g.order(), 126);
        let cert = validate_moore(&g, 2, 6, &CertifyOptions::default()).unwrap();
        assert_eq!(cert.girth, Some(12));
        assert_eq!(cert.diameter, 6);
        assert_eq!(cert.side_sizes, Some((63, 63)));
    }

    #[test]
    fn hexagon_q2_level_sizes() {
        let g = build_hq(2, None).unwrap();
        let sizes = g.level_sizes(0);
        assert_eq!(sizes, vec![1, 3, 6, 12, 24, 48, 32]);
        assert_eq!(sizes, moore_level_sizes(3, 6));
    }

    #[test]
    fn quadrangle_q3_certifies() {
        let g = build_qq(3).unwrap();
        let cert = validate_moore(&g, 3, 4, &CertifyOptions::default()).unwrap();
        assert_eq!(cert.girth, Some(8));
        assert_eq!(cert.diameter, 4);
    }

    #[test]
    fn validation_rejects_non_moore() {
        let c8 = crate::graph::Graph::from_edges(
            8,
            &(0..8u32).map(|i| (i, (i + 1) % 8)).collect::<Vec<_>>(),
        )
        .unwrap();
        let err = validate_moore(&c8, 1, 4, &CertifyOptions::default()).unwrap_err();
        assert!(matches!(err, MooreError::ValidationFailed { .. }));
    }

    #[test]
    fn incidence_star_and_empty() {
        // one line with three points: the star K_{1,3}
        let g = incidence_from_memberships(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.degree(3), 3);
        // no lines at all: edgeless
        let g = incidence_from_memberships(4, &[]).unwrap();
        assert_eq!(g.num_edges(), 0);
        // unknown point
        assert!(matches!(
            incidence_from_memberships(2, &[vec![0, 5]]),
            Err(MooreError::UnknownPoint)
        ));
    }

    #[test]
    fn vertex_sides_are_points_then_lines() {
        let g = build_pq(2).unwrap();
        let labels = g.labels().unwrap();
        assert!(matches!(labels[0], VertexLabel::Point(0)));
        assert!(matches!(labels[7], VertexLabel::Line(0)));
        let (a, b) = g.bipartition().unwrap();
        assert_eq!(a, (0..7).collect::<Vec<u32>>());
        assert_eq!(b, (7..14).collect::<Vec<u32>>());
    }

    #[test]
    fn hexagon_cache_roundtrip_matches_fresh_build() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = crate::cache::CacheConfig::new(dir.path());
        let first = build_hq(2, Some(&cfg)).unwrap(); // builds and stores
        let second = build_hq(2, Some(&cfg)).unwrap(); // loads
        let fresh = build_hq(2, None).unwrap();
        assert_eq!(first, fresh);
        assert_eq!(second, fresh);
    }

    #[test]
    fn complete_bipartite_is_moore_d2() {
        let g = build_complete_bipartite(4);
        let cert = validate_moore(&g, 3, 2, &CertifyOptions::default()).unwrap();
        assert_eq!(cert.diameter, 2);
        assert_eq!(cert.girth, Some(4));
    }
}
