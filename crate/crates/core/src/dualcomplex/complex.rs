use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::config::{joins, DivisorConfiguration, Id};
use super::DualComplexError;
use crate::polycore::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub id: Id,
    /// Vertex indices, smaller first.
    pub ends: (usize, usize),
    pub genus: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub id: Option<Id>,
    /// Vertex indices, ascending.
    pub vertices: [usize; 3],
    /// Edges opposite to `vertices[2]`, `vertices[1]`, `vertices[0]`.
    pub edges: [usize; 3],
}

/// Vertex per component, edge per double curve, triangle per triple point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualComplex {
    pub vertices: Vec<Id>,
    pub edges: Vec<Edge>,
    pub triangles: Vec<Triangle>,
    pub connected: bool,
    pub euler_characteristic: i64,
    pub h1_rank: u64,
    pub h2_rank: u64,
}

/// Boundary of a complex that triangulates a disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskBoundary {
    /// Boundary vertices in cyclic order.
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

pub fn build_dual_complex(config: &DivisorConfiguration) -> Result<DualComplex, DualComplexError> {
    config.validate()?;
    let vertices: Vec<Id> = config.components.iter().map(|c| c.id.clone()).collect();
    let index: HashMap<&Id, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let edges: Vec<Edge> = config
        .double_curves
        .iter()
        .map(|d| {
            let (a, b) = (index[&d.between[0]], index[&d.between[1]]);
            Edge {
                id: d.id.clone(),
                ends: (a.min(b), a.max(b)),
                genus: d.genus,
            }
        })
        .collect();

    let mut triangles = Vec::new();
    for t in &config.triple_points {
        let mut vs = [
            index[&t.components[0]],
            index[&t.components[1]],
            index[&t.components[2]],
        ];
        vs.sort_unstable();
        let pairs = [(vs[0], vs[1]), (vs[0], vs[2]), (vs[1], vs[2])];
        let mut tri_edges = [0usize; 3];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            let candidates: Vec<usize> = match &t.curves {
                Some(curves) => curves
                    .iter()
                    .filter_map(|cid| edges.iter().position(|e| &e.id == cid))
                    .filter(|&e| edges[e].ends == (a, b))
                    .collect(),
                None => (0..edges.len())
                    .filter(|&e| edges[e].ends == (a, b))
                    .collect(),
            };
            match candidates.as_slice() {
                [e] => tri_edges[k] = *e,
                _ => {
                    let name =
                        t.id.as_ref()
                            .map_or_else(|| "unnamed".to_string(), Id::to_string);
                    return Err(DualComplexError::TriplePoint(format!(
                        "triple point {name}: {} and {} meet in several curves; list its curves",
                        vertices[a], vertices[b]
                    )));
                }
            }
        }
        triangles.push(Triangle {
            id: t.id.clone(),
            vertices: vs,
            edges: tri_edges,
        });
    }

    let n_components = count_components(vertices.len(), &edges);
    if n_components > 1 {
        return Err(DualComplexError::Disconnected {
            components: n_components,
        });
    }
    let (v, e, f) = (vertices.len(), edges.len(), triangles.len());
    let rank_d1 = v - n_components;
    let rank_d2 = boundary_rank(&edges, &triangles);
    Ok(DualComplex {
        connected: n_components == 1,
        euler_characteristic: v as i64 - e as i64 + f as i64,
        h1_rank: (e - rank_d1 - rank_d2) as u64,
        h2_rank: (f - rank_d2) as u64,
        vertices,
        edges,
        triangles,
    })
}

fn count_components(n: usize, edges: &[Edge]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for e in edges {
        let (a, b) = (find(&mut parent, e.ends.0), find(&mut parent, e.ends.1));
        parent[a] = b;
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count()
}

/// Rank over the rationals of the edge-triangle boundary matrix.
fn boundary_rank(edges: &[Edge], triangles: &[Triangle]) -> usize {
    // d[a, b, c] = [b, c] - [a, c] + [a, b] with edges oriented low to high
    let rows: Vec<Vec<Rational>> = triangles
        .iter()
        .map(|t| {
            let mut row = vec![Rational::zero(); edges.len()];
            row[t.edges[2]] += Rational::one();
            row[t.edges[1]] -= Rational::one();
            row[t.edges[0]] += Rational::one();
            row
        })
        .collect();
    rank(rows)
}

pub(crate) fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        r += 1;
    }
    r
}

impl DualComplex {
    pub fn vertex_index(&self, id: &Id) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    /// Edge indices incident to vertex `v`.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].ends.0 == v || self.edges[e].ends.1 == v)
            .collect()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e].ends;
        if a == v {
            b
        } else {
            a
        }
    }

    /// Vertex order along the 1-skeleton if it is a simple path (a point
    /// counts), ignoring triangles.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        if n == 0 || self.edges.len() != n - 1 || !self.connected {
            return None;
        }
        let mut seen_pairs = std::collections::HashSet::new();
        if !self.edges.iter().all(|e| seen_pairs.insert(e.ends)) {
            return None;
        }
        if n == 1 {
            return Some(vec![0]);
        }
        let degree = |v: usize| self.incident_edges(v).len();
        if (0..n).any(|v| degree(v) > 2) {
            return None;
        }
        let start = (0..n).find(|&v| degree(v) == 1)?;
        let mut order = vec![start];
        let mut prev_edge = None;
        while order.len() < n {
            let v = *order.last().unwrap();
            let e = self
                .incident_edges(v)
                .into_iter()
                .find(|&e| Some(e) != prev_edge)?;
            order.push(self.other_end(e, v));
            prev_edge = Some(e);
        }
        Some(order)
    }

    /// Edge joining consecutive vertices `a` and `b`, if unique.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        let mut it = (0..self.edges.len()).filter(|&e| self.edges[e].ends == key);
        let first = it.next()?;
        it.next().is_none().then_some(first)
    }

    pub fn edges_between(&self, a: usize, b: usize) -> Vec<usize> {
        let key = (a.min(b), a.max(b));
        (0..self.edges.len())
            .filter(|&e| self.edges[e].ends == key)
            .collect()
    }

    /// Decides whether the complex triangulates a closed 2-disk, returning
    /// its boundary cycle or the reason it does not.
    pub fn disk_boundary(&self) -> Result<DiskBoundary, String> {
        if !self.connected {
            return Err("not connected".into());
        }
        if self.triangles.is_empty() {
            return Err("no triangles".into());
        }
        if self.euler_characteristic != 1 {
            return Err(format!(
                "Euler characteristic {} != 1",
                self.euler_characteristic
            ));
        }
        if self.h1_rank != 0 || self.h2_rank != 0 {
            return Err("nonzero first or second homology".into());
        }
        let mut uses = vec![0usize; self.edges.len()];
        for t in &self.triangles {
            for &e in &t.edges {
                uses[e] += 1;
            }
        }
        if let Some(e) = (0..uses.len()).find(|&e| uses[e] == 0 || uses[e] > 2) {
            return Err(format!(
                "double curve {} lies on {} triple points (need 1 or 2)",
                self.edges[e].id, uses[e]
            ));
        }
        for v in 0..self.vertices.len() {
            self.check_link(v)?;
        }
        let boundary: Vec<usize> = (0..uses.len()).filter(|&e| uses[e] == 1).collect();
        // walk the boundary edges as one cycle
        let mut order_v = vec![self.edges[boundary[0]].ends.0];
        let mut order_e = vec![boundary[0]];
        let mut current = self.edges[boundary[0]].ends.1;
        while current != order_v[0] {
            let last = *order_e.last().unwrap();
            let next = boundary
                .iter()
                .copied()
                .find(|&e| {
                    e != last
                        && !order_e.contains(&e)
                        && (self.edges[e].ends.0 == current || self.edges[e].ends.1 == current)
                })
                .ok_or("boundary edges do not close up")?;
            order_v.push(current);
            order_e.push(next);
            current = self.other_end(next, current);
        }
        if order_e.len() != boundary.len() {
            return Err("boundary is not a single cycle".into());
        }
        Ok(DiskBoundary {
            vertices: order_v,
            edges: order_e,
        })
    }

    /// The link of `v` (incident edges, joined by incident triangles) must
    /// be a path or a cycle.
    fn check_link(&self, v: usize) -> Result<(), String> {
        let nodes = self.incident_edges(v);
        let name = &self.vertices[v];
        if nodes.is_empty() {
            return Err(format!("component {name} meets no other component"));
        }
        let links: Vec<(usize, usize)> = self
            .triangles
            .iter()
            .filter(|t| t.vertices.contains(&v))
            .map(|t| {
                let at_v: Vec<usize> = t
                    .edges
                    .iter()
                    .copied()
                    .filter(|&e| self.edges[e].ends.0 == v || self.edges[e].ends.1 == v)
                    .collect();
                (at_v[0], at_v[1])
            })
            .collect();
        let pos = |e: usize| nodes.iter().position(|&x| x == e).unwrap();
        let mut parent: Vec<usize> = (0..nodes.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            r
        }
        for &(a, b) in &links {
            let (ra, rb) = (find(&mut parent, pos(a)), find(&mut parent, pos(b)));
            parent[ra] = rb;
        }
        let roots = (0..nodes.len())
            .filter(|&x| find(&mut parent, x) == x)
            .count();
        if roots != 1 {
            return Err(format!("the link of {name} is disconnected"));
        }
        Ok(())
    }
}

/// Generic restriction matrix `H^2(E_i) -> H^2(D)`: one row per double
/// curve, with Vandermonde entries on the classes of its two components.
/// Its rank replaces the curve count in `b2(E) = sum b2 - rank`.
pub fn restriction_rank(config: &DivisorConfiguration) -> Option<usize> {
    let mut offsets = HashMap::new();
    let mut total = 0usize;
    for c in &config.components {
        offsets.insert(&c.id, total);
        total += c.b2? as usize;
    }
    let rows: Vec<Vec<Rational>> = config
        .double_curves
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let mut row = vec![Rational::zero(); total];
            let x = Rational::from_integer((k as i64 + 2).into());
            for (side, comp) in d.between.iter().enumerate() {
                let b2 = config.component(comp).and_then(|c| c.b2).unwrap_or(0) as usize;
                let mut power = Rational::one();
                for j in 0..b2 {
                    let v = if side == 0 {
                        power.clone()
                    } else {
                        -power.clone()
                    };
                    row[offsets[comp] + j] += v;
                    power *= &x;
                }
            }
            row
        })
        .collect();
    if rows.is_empty() {
        return Some(0);
    }
    Some(rank(rows))
}

/// True if some pair of components meets in more than one double curve.
pub fn has_multi_edges(config: &DivisorConfiguration) -> bool {
    config.double_curves.iter().enumerate().any(|(i, d)| {
        config.double_curves[i + 1..]
            .iter()
            .any(|e| joins(e, &d.between[0], &d.between[1]))
    })
}
