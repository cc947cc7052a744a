//! Euclidean torus tessellations: the `{4,4}` square torus and the `{6,3}`
//! hexagonal tori in both parallelogram scalings.
//!
//! Hexagon centres live on the triangular lattice written in axial
//! coordinates `(i, j) ↦ i·e1 + j·e2` with `|e1| = |e2|` and a 60° angle
//! between them. A torus is the quotient by a sublattice spanned by two
//! integer vectors `u`, `v`, one per side of the fundamental parallelogram.
//!
//! * apothem-scaled `ξ`: sides `ξ·e1`, `ξ·e2` (side length `2ξa`);
//! * edge-scaled `λ = 3m`: sides `m(e1+e2)`, `m(2e2-e1)` (side length `λl`).

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complex::SurfaceComplex;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareTorusSpec {
    side: u32,
}

impl SquareTorusSpec {
    pub fn new(side: u32) -> Result<Self> {
        if side < 2 {
            return Err(Error::InvalidSpec(format!(
                "square torus side must be at least 2, got {side}"
            )));
        }
        Ok(Self { side })
    }

    pub fn side(&self) -> u32 {
        self.side
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HexVariant {
    /// Parallelogram side `L = 2ξa`, `a` the hexagon apothem.
    ApothemScaled,
    /// Parallelogram side `L = λl`, `l` the hexagon edge.
    EdgeScaled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexTorusSpec {
    variant: HexVariant,
    scale: u32,
}

impl HexTorusSpec {
    pub fn apothem_scaled(xi: u32) -> Result<Self> {
        if xi == 0 {
            return Err(Error::InvalidSpec("apothem scale must be positive".into()));
        }
        Ok(Self {
            variant: HexVariant::ApothemScaled,
            scale: xi,
        })
    }

    pub fn edge_scaled(lambda: u32) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::InvalidSpec("edge scale must be positive".into()));
        }
        if !lambda.is_multiple_of(3) {
            return Err(Error::Integrality { lambda });
        }
        Ok(Self {
            variant: HexVariant::EdgeScaled,
            scale: lambda,
        })
    }

    pub fn variant(&self) -> HexVariant {
        self.variant
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    fn lattice(&self) -> Sublattice {
        let s = self.scale as i64;
        match self.variant {
            HexVariant::ApothemScaled => Sublattice::new([s, 0], [0, s]),
            HexVariant::EdgeScaled => {
                let m = s / 3;
                Sublattice::new([m, m], [-m, 2 * m])
            }
        }
    }

    fn label(&self) -> String {
        match self.variant {
            HexVariant::ApothemScaled => {
                format!("{{6,3}} hexagonal torus, apothem-scaled xi={}", self.scale)
            }
            HexVariant::EdgeScaled => {
                format!("{{6,3}} hexagonal torus, edge-scaled lambda={}", self.scale)
            }
        }
    }
}

/// Integer sublattice of Z² with positively oriented basis `u`, `v`.
#[derive(Clone, Copy, Debug)]
struct Sublattice {
    u: [i64; 2],
    v: [i64; 2],
    det: i64,
}

impl Sublattice {
    fn new(u: [i64; 2], v: [i64; 2]) -> Self {
        let det = u[0] * v[1] - u[1] * v[0];
        assert!(det > 0, "sublattice basis must be positively oriented");
        Self { u, v, det }
    }

    /// Canonical representative in the half-open fundamental parallelogram.
    fn reduce(&self, x: [i64; 2]) -> [i64; 2] {
        let s = (self.v[1] * x[0] - self.v[0] * x[1]).div_euclid(self.det);
        let t = (-self.u[1] * x[0] + self.u[0] * x[1]).div_euclid(self.det);
        [
            x[0] - s * self.u[0] - t * self.v[0],
            x[1] - s * self.u[1] - t * self.v[1],
        ]
    }

    /// All coset representatives, ordered.
    fn representatives(&self) -> Vec<[i64; 2]> {
        let mut reps: Vec<[i64; 2]> = (0..self.det)
            .flat_map(|i| (0..self.det).map(move |j| [i, j]))
            .map(|x| self.reduce(x))
            .collect();
        reps.sort_unstable();
        reps.dedup();
        debug_assert_eq!(reps.len() as i64, self.det);
        reps
    }
}

pub fn build_square_torus(spec: SquareTorusSpec) -> Result<SurfaceComplex> {
    let l = spec.side() as usize;
    let vertex = |i: usize, j: usize| (i % l) + l * (j % l);
    let horizontal = |i: usize, j: usize| 2 * vertex(i, j);
    let vertical = |i: usize, j: usize| 2 * vertex(i, j) + 1;

    let mut edges = vec![[0usize; 2]; 2 * l * l];
    for j in 0..l {
        for i in 0..l {
            edges[horizontal(i, j)] = [vertex(i, j), vertex(i + 1, j)];
            edges[vertical(i, j)] = [vertex(i, j), vertex(i, j + 1)];
        }
    }
    let faces = (0..l)
        .flat_map(|j| (0..l).map(move |i| (i, j)))
        .map(|(i, j)| {
            vec![
                horizontal(i, j),
                vertical(i + 1, j),
                horizontal(i, j + 1),
                vertical(i, j),
            ]
        })
        .collect();
    SurfaceComplex::new(
        1,
        format!("{{4,4}} square torus l={l}"),
        l * l,
        edges,
        faces,
    )
}

// Neighbour offsets of a hexagon centre in cyclic order; the first three
// carry the edge directions.
const NEIGHBOURS: [[i64; 2]; 6] = [[1, 0], [0, 1], [-1, 1], [-1, 0], [0, -1], [1, -1]];

pub fn build_hex_torus(spec: HexTorusSpec) -> Result<SurfaceComplex> {
    let lattice = spec.lattice();
    let reps = lattice.representatives();
    let index: BTreeMap<[i64; 2], usize> = reps.iter().enumerate().map(|(k, &r)| (r, k)).collect();
    let face_id = |x: [i64; 2]| index[&lattice.reduce(x)];
    let add = |a: [i64; 2], b: [i64; 2]| [a[0] + b[0], a[1] + b[1]];
    let sub = |a: [i64; 2], b: [i64; 2]| [a[0] - b[0], a[1] - b[1]];

    let n = reps.len();
    // vertex A(f) = triangle {f, f+e1, f+e2}, B(f) = {f+e1, f+e2, f+e1+e2}
    let vertex_a = |x: [i64; 2]| 2 * face_id(x);
    let vertex_b = |x: [i64; 2]| 2 * face_id(x) + 1;
    // edge (f, d) joins centre f to f + NEIGHBOURS[d], d in 0..3
    let edge_id = |x: [i64; 2], d: usize| 3 * face_id(x) + d;

    let mut edges = vec![[0usize; 2]; 3 * n];
    for &f in &reps {
        edges[edge_id(f, 0)] = [vertex_a(f), vertex_b(sub(f, [0, 1]))];
        edges[edge_id(f, 1)] = [vertex_a(f), vertex_b(sub(f, [1, 0]))];
        edges[edge_id(f, 2)] = [vertex_b(sub(f, [1, 0])), vertex_a(sub(f, [1, 0]))];
    }
    let faces = reps
        .iter()
        .map(|&f| {
            vec![
                edge_id(f, 0),
                edge_id(f, 1),
                edge_id(f, 2),
                edge_id(add(f, NEIGHBOURS[3]), 0),
                edge_id(add(f, NEIGHBOURS[4]), 1),
                edge_id(add(f, NEIGHBOURS[5]), 2),
            ]
        })
        .collect();
    SurfaceComplex::new(1, spec.label(), 2 * n, edges, faces)
}

/// Area bookkeeping for a hexagonal torus with unit hexagon edge.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HexCensusReport {
    pub spec: HexTorusSpec,
    /// Side length of the fundamental parallelogram.
    pub side: f64,
    pub area_fundamental: f64,
    pub area_hexagon: f64,
    pub area_triangle: f64,
    pub predicted_faces: f64,
    pub predicted_dual_faces: f64,
    pub predicted_edges: f64,
    pub built_faces: usize,
    pub built_vertices: usize,
    pub built_edges: usize,
    pub degenerate: bool,
}

impl HexCensusReport {
    pub fn consistent(&self) -> bool {
        let close = |x: f64, n: usize| (x - n as f64).abs() < 1e-9;
        close(self.predicted_faces, self.built_faces)
            && close(self.predicted_dual_faces, self.built_vertices)
            && close(self.predicted_edges, self.built_edges)
    }
}

/// Recomputes face, dual-face and edge counts from areas and compares them
/// with the built complex.
pub fn hex_census_check(spec: HexTorusSpec) -> Result<HexCensusReport> {
    let edge = 1.0_f64;
    let apothem = edge * 3f64.sqrt() / 2.0;
    let side = match spec.variant() {
        HexVariant::ApothemScaled => 2.0 * spec.scale() as f64 * apothem,
        HexVariant::EdgeScaled => spec.scale() as f64 * edge,
    };
    let beta = PI / 3.0;
    let height = side * beta.sin();
    let area_fundamental = side * height;
    let area_hexagon = 3.0 * 3f64.sqrt() / 2.0 * edge * edge;
    let triangle_side = 2.0 * apothem;
    let area_triangle = 3f64.sqrt() / 4.0 * triangle_side * triangle_side;

    let predicted_faces = area_fundamental / area_hexagon;
    let predicted_dual_faces = area_fundamental / area_triangle;
    let predicted_edges = predicted_faces * 6.0 / 2.0;

    let c = build_hex_torus(spec)?;
    let report = HexCensusReport {
        spec,
        side,
        area_fundamental,
        area_hexagon,
        area_triangle,
        predicted_faces,
        predicted_dual_faces,
        predicted_edges,
        built_faces: c.num_faces(),
        built_vertices: c.num_vertices(),
        built_edges: c.num_edges(),
        degenerate: c.is_degenerate(),
    };
    if !report.consistent() {
        return Err(Error::Construction(format!(
            "hexagonal torus: areas predict (F, V, E) = ({:.6}, {:.6}, {:.6}) \
             but the complex has ({}, {}, {})",
            report.predicted_faces,
            report.predicted_dual_faces,
            report.predicted_edges,
            report.built_faces,
            report.built_vertices,
            report.built_edges
        )));
    }
    Ok(report)
}
