//! The trivalent web dual to the height-one triangulation.
//!
//! A cone with counterclockwise triangle (p₀,p₁,p₂) becomes a vertex whose
//! slot i is dual to the polygon edge pᵢ→pᵢ₊₁, with outgoing direction that
//! edge turned clockwise by a right angle. Slots are then in counterclockwise
//! order and consecutive directions have wedge 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{wall_class, CurveClass};
use crate::lattice::{cy_vector, height_one_polygon, validate_fan, Cone3, Fan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Slot {
    /// End `end` (0 or 1) of an internal edge.
    Edge { edge: usize, end: usize },
    Leg(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebVertex {
    pub cone: Cone3,
    /// Ray indices in counterclockwise order on the plane.
    pub triangle: [usize; 3],
    pub slots: [Slot; 3],
    pub directions: [[i64; 2]; 3],
}

/// An internal edge dual to a compact wall. End 0 carries the partition λ,
/// end 1 carries λᵗ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebEdge {
    pub wall: [usize; 2],
    /// (vertex, slot) of each end.
    pub ends: [(usize, usize); 2],
    pub framing: i64,
    pub class: CurveClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebLeg {
    pub wall: [usize; 2],
    pub vertex: usize,
    pub slot: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Web {
    pub num_rays: usize,
    pub vertices: Vec<WebVertex>,
    pub edges: Vec<WebEdge>,
    pub legs: Vec<WebLeg>,
}

fn wedge(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn build_web(fan: &Fan) -> Result<Web> {
    let report = validate_fan(fan);
    if !report.is_valid() {
        return Err(Error::InvalidFan(
            report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "),
        ));
    }
    if let Some((cone, det)) = report.non_smooth_cones().first() {
        return Err(Error::NotSmooth { cone: cone.0, det: det.abs() });
    }
    let cy = cy_vector(fan)?;
    let poly = height_one_polygon(fan, &cy)?;
    let mut vertices = Vec::new();
    for (ci, tri) in poly.triangles.iter().enumerate() {
        let p = tri.map(|i| poly.points[i]);
        let directions: [[i64; 2]; 3] = std::array::from_fn(|i| {
            let (a, b) = (p[i], p[(i + 1) % 3]);
            [b[1] - a[1], a[0] - b[0]]
        });
        vertices.push(WebVertex {
            cone: fan.cones()[ci],
            triangle: *tri,
            slots: [Slot::Leg(0); 3],
            directions,
        });
    }
    let mut edges = Vec::new();
    let mut legs = Vec::new();
    for w in fan.walls() {
        let locate = |ci: usize| {
            let tri = vertices[ci].triangle;
            (0..3)
                .find(|&i| {
                    let mut e = [tri[i], tri[(i + 1) % 3]];
                    e.sort_unstable();
                    e == w.rays
                })
                .unwrap()
        };
        if w.is_compact() {
            let ends = [(w.cones[0], locate(w.cones[0])), (w.cones[1], locate(w.cones[1]))];
            let k = edges.len();
            for (end, &(v, s)) in ends.iter().enumerate() {
                vertices[v].slots[s] = Slot::Edge { edge: k, end };
            }
            edges.push(WebEdge { wall: w.rays, ends, framing: 0, class: wall_class(fan, w.rays)? });
        } else {
            let (v, s) = (w.cones[0], locate(w.cones[0]));
            vertices[v].slots[s] = Slot::Leg(legs.len());
            legs.push(WebLeg { wall: w.rays, vertex: v, slot: s });
        }
    }
    let mut web = Web { num_rays: fan.num_rays(), vertices, edges, legs };
    for e in 0..web.edges.len() {
        web.edges[e].framing = web.framing_of(e);
    }
    Ok(web)
}

impl Web {
    /// Outgoing direction of edge `e` at its end 0.
    pub fn direction(&self, e: usize) -> [i64; 2] {
        let (v, s) = self.edges[e].ends[0];
        self.vertices[v].directions[s]
    }

    /// n = a ∧ b, with a and b the directions following the edge
    /// counterclockwise at end 0 and at end 1. Antisymmetric under
    /// reversing the edge.
    fn framing_of(&self, e: usize) -> i64 {
        let [(va, sa), (vb, sb)] = self.edges[e].ends;
        let a = self.vertices[va].directions[(sa + 1) % 3];
        let b = self.vertices[vb].directions[(sb + 1) % 3];
        wedge(a, b)
    }

    /// Swaps the ends of an edge (λ and λᵗ trade places).
    pub fn reverse_edge(&mut self, e: usize) {
        self.edges[e].ends.swap(0, 1);
        for (end, &(v, s)) in self.edges[e].ends.iter().enumerate() {
            self.vertices[v].slots[s] = Slot::Edge { edge: e, end };
        }
        self.edges[e].framing = self.framing_of(e);
    }

    /// Cyclically relabels the slots of a vertex by `k` positions.
    pub fn rotate_vertex(&mut self, v: usize, k: usize) {
        let vert = &mut self.vertices[v];
        vert.triangle.rotate_left(k % 3);
        vert.slots.rotate_left(k % 3);
        vert.directions.rotate_left(k % 3);
        for s in 0..3 {
            match self.vertices[v].slots[s] {
                Slot::Edge { edge, end } => self.edges[edge].ends[end] = (v, s),
                Slot::Leg(l) => self.legs[l].slot = s,
            }
        }
    }

    pub fn edge_classes(&self) -> Vec<CurveClass> {
        self.edges.iter().map(|e| e.class.clone()).collect()
    }
}
