//! Finite combinatorial closed orientable surfaces.
//!
//! Vertices, edges and faces are numbered densely from zero. Edges are kept
//! by id, so parallel edges and self-loops are representable, and every face
//! is a cyclic sequence of edge ids. Orientation is not stored; it is
//! recovered on demand when the dual is built.

use std::collections::{BTreeMap, VecDeque};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceComplex {
    genus: u32,
    label: String,
    num_vertices: usize,
    edges: Vec<[usize; 2]>,
    faces: Vec<Vec<usize>>,
}

impl SurfaceComplex {
    /// Validates and normalizes a complex.
    ///
    /// Edge ends are stored in ascending order and each face cycle is
    /// replaced by its lexicographically smallest rotation or reflection.
    pub fn new(
        genus: u32,
        label: impl Into<String>,
        num_vertices: usize,
        edges: Vec<[usize; 2]>,
        faces: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ZeroGenus(genus));
        }
        let mut edges = edges;
        for (id, ends) in edges.iter_mut().enumerate() {
            for &v in ends.iter() {
                if v >= num_vertices {
                    return Err(Error::UnknownVertex {
                        edge: id,
                        vertex: v,
                    });
                }
            }
            ends.sort_unstable();
        }
        let mut slots = vec![0usize; edges.len()];
        for (fid, face) in faces.iter().enumerate() {
            if face.is_empty() {
                return Err(Error::EmptyFace { face: fid });
            }
            for &e in face {
                if e >= edges.len() {
                    return Err(Error::UnknownEdge { face: fid, edge: e });
                }
                slots[e] += 1;
            }
        }
        if let Some((edge, &count)) = slots.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(Error::EdgeSlots { edge, slots: count });
        }
        for (fid, face) in faces.iter().enumerate() {
            let k = face.len();
            for i in 0..k {
                let [a0, a1] = edges[face[i]];
                let [b0, b1] = edges[face[(i + 1) % k]];
                if !(a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1) {
                    return Err(Error::BrokenFace {
                        face: fid,
                        position: i,
                        next: (i + 1) % k,
                    });
                }
            }
        }
        let chi = num_vertices as i64 - edges.len() as i64 + faces.len() as i64;
        let expected = 2 - 2 * genus as i64;
        if chi != expected {
            return Err(Error::EulerMismatch {
                chi,
                expected,
                genus,
            });
        }
        let faces = faces.into_iter().map(normalize_cycle).collect();
        Ok(Self {
            genus,
            label: label.into(),
            num_vertices,
            edges,
            faces,
        })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_ends(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Vertex degrees, a self-loop counting twice.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices];
        for &[a, b] in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn face_sizes(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// Faces whose boundary repeats an edge.
    pub fn degenerate_faces(&self) -> Vec<usize> {
        self.faces
            .iter()
            .enumerate()
            .filter(|(_, face)| {
                let mut sorted = (*face).clone();
                sorted.sort_unstable();
                sorted.windows(2).any(|w| w[0] == w[1])
            })
            .map(|(f, _)| f)
            .collect()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degenerate_faces().is_empty()
    }

    /// The two faces bordering each edge (equal when a face meets itself).
    pub fn edge_faces(&self) -> Vec<[usize; 2]> {
        let mut out = vec![[usize::MAX; 2]; self.edges.len()];
        for (f, face) in self.faces.iter().enumerate() {
            for &e in face {
                let slot = if out[e][0] == usize::MAX { 0 } else { 1 };
                out[e][slot] = f;
            }
        }
        out
    }

    /// Regular shape `(face size, vertex degree)` if all faces and vertices agree.
    pub fn regular_type(&self) -> Option<(usize, usize)> {
        let sizes = self.face_sizes();
        let degrees = self.vertex_degrees();
        let p = *sizes.first()?;
        let q = *degrees.first()?;
        (sizes.iter().all(|&s| s == p) && degrees.iter().all(|&d| d == q)).then_some((p, q))
    }

    /// Whether the vertex–edge graph is connected.
    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.num_vertices];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Incidence lists `(neighbour, edge)` in ascending edge order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            adj[a].push((b, e));
            if a != b {
                adj[b].push((a, e));
            } else {
                adj[a].push((a, e));
            }
        }
        adj
    }

    /// The dual complex: faces become vertices, vertices become faces and
    /// every edge keeps its id.
    pub fn dual(&self) -> Result<SurfaceComplex> {
        let oriented = self.oriented_faces()?;
        let total_slots: usize = oriented.iter().map(|f| f.edges.len()).sum();

        // slot index -> (face, position)
        let mut slot_of = Vec::with_capacity(total_slots);
        let mut base = Vec::with_capacity(oriented.len());
        for (f, face) in oriented.iter().enumerate() {
            base.push(slot_of.len());
            for i in 0..face.edges.len() {
                slot_of.push((f, i));
            }
        }
        let mut twin = vec![usize::MAX; total_slots];
        let mut first_slot = vec![usize::MAX; self.edges.len()];
        for (s, &(f, i)) in slot_of.iter().enumerate() {
            let e = oriented[f].edges[i];
            if first_slot[e] == usize::MAX {
                first_slot[e] = s;
            } else {
                twin[s] = first_slot[e];
                twin[first_slot[e]] = s;
            }
        }

        // Corner after slot s: arriving through s, leaving through the next slot of the same face.
        let next_in_face = |s: usize| {
            let (f, i) = slot_of[s];
            base[f] + (i + 1) % oriented[f].edges.len()
        };
        let arrival = |s: usize| {
            let (f, i) = slot_of[s];
            oriented[f].walk[(i + 1) % oriented[f].walk.len()]
        };

        let mut corners_at = vec![Vec::new(); self.num_vertices];
        for s in 0..total_slots {
            corners_at[arrival(s)].push(s);
        }
        let mut dual_faces = Vec::with_capacity(self.num_vertices);
        let mut visited = vec![false; total_slots];
        for (v, corners) in corners_at.iter().enumerate() {
            let Some(&start) = corners.first() else {
                return Err(Error::NotASurface { vertex: v });
            };
            let mut cycle = Vec::new();
            let mut s = start;
            loop {
                if visited[s] || arrival(s) != v {
                    return Err(Error::NotASurface { vertex: v });
                }
                visited[s] = true;
                let out = next_in_face(s);
                let (f, i) = slot_of[out];
                cycle.push(oriented[f].edges[i]);
                s = twin[out];
                if s == start {
                    break;
                }
            }
            if cycle.len() != corners.len() {
                return Err(Error::NotASurface { vertex: v });
            }
            dual_faces.push(cycle);
        }

        let dual_edges = self.edge_faces();
        SurfaceComplex::new(
            self.genus,
            format!("dual of {}", self.label),
            self.faces.len(),
            dual_edges,
            dual_faces,
        )
    }

    /// Faces with vertex walks, oriented consistently across every non-loop edge.
    fn oriented_faces(&self) -> Result<Vec<OrientedFace>> {
        let mut faces = self
            .faces
            .iter()
            .enumerate()
            .map(|(f, edges)| {
                let walk = self.face_walk(f)?;
                Ok(OrientedFace {
                    edges: edges.clone(),
                    walk,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        // (face, from, to) per slot, grouped by edge
        let mut uses: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); self.edges.len()];
        for (f, face) in faces.iter().enumerate() {
            let k = face.edges.len();
            for i in 0..k {
                uses[face.edges[i]].push((f, face.walk[i], face.walk[(i + 1) % k]));
            }
        }
        // constraint graph: flip[f1] ^ flip[f2] == parity
        let mut constraints = vec![Vec::new(); faces.len()];
        for (e, u) in uses.iter().enumerate() {
            let [(f1, from1, to1), (f2, from2, _)] = [u[0], u[1]];
            if from1 == to1 {
                continue;
            }
            let same_direction = from1 == from2;
            if f1 == f2 {
                if same_direction {
                    return Err(Error::NonOrientable { edge: e });
                }
                continue;
            }
            constraints[f1].push((f2, same_direction, e));
            constraints[f2].push((f1, same_direction, e));
        }
        let mut flip: Vec<Option<bool>> = vec![None; faces.len()];
        for root in 0..faces.len() {
            if flip[root].is_some() {
                continue;
            }
            flip[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(f) = queue.pop_front() {
                let ff = flip[f].unwrap();
                for &(g, parity, e) in &constraints[f] {
                    let want = ff ^ parity;
                    match flip[g] {
                        None => {
                            flip[g] = Some(want);
                            queue.push_back(g);
                        }
                        Some(have) if have != want => return Err(Error::NonOrientable { edge: e }),
                        Some(_) => {}
                    }
                }
            }
        }
        for (face, flipped) in faces.iter_mut().zip(flip) {
            if flipped == Some(true) {
                face.reverse();
            }
        }
        Ok(faces)
    }

    /// Vertex sequence `v_0, v_1, ...` with slot `i` running from `v_i` to `v_{i+1}`.
    fn face_walk(&self, f: usize) -> Result<Vec<usize>> {
        let face = &self.faces[f];
        let k = face.len();
        let [a, b] = self.edges[face[0]];
        let mut failed_at = 0;
        for start in [a, b] {
            let mut walk = Vec::with_capacity(k);
            let mut v = start;
            let mut ok = true;
            for (i, &e) in face.iter().enumerate() {
                let [x, y] = self.edges[e];
                walk.push(v);
                v = if x == v {
                    y
                } else if y == v {
                    x
                } else {
                    ok = false;
                    failed_at = failed_at.max(i);
                    break;
                };
            }
            if ok && v == start {
                return Ok(walk);
            }
        }
        Err(Error::BrokenFace {
            face: f,
            position: failed_at.saturating_sub(1) % k,
            next: failed_at % k,
        })
    }

    /// Serializes to the JSON complex format.
    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            genus: self.genus,
            label: self.label.clone(),
            vertices: (0..self.num_vertices).collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(id, &ends)| EdgeJson { id, ends })
                .collect(),
            faces: self
                .faces
                .iter()
                .enumerate()
                .map(|(id, cycle)| FaceJson {
                    id,
                    edge_cycle: cycle.clone(),
                })
                .collect(),
        }
    }

    /// Builds a complex from the JSON format, relabelling ids densely in ascending order.
    pub fn from_json(json: ComplexJson) -> Result<Self> {
        let vertex_index = dense_index("vertex", json.vertices.iter().copied())?;
        let edge_index = dense_index("edge", json.edges.iter().map(|e| e.id))?;
        let face_index = dense_index("face", json.faces.iter().map(|f| f.id))?;

        let mut edges = vec![[0usize; 2]; edge_index.len()];
        for e in &json.edges {
            let mut ends = [0; 2];
            for (slot, v) in e.ends.iter().enumerate() {
                ends[slot] = *vertex_index.get(v).ok_or(Error::UnknownVertex {
                    edge: e.id,
                    vertex: *v,
                })?;
            }
            edges[edge_index[&e.id]] = ends;
        }
        let mut faces = vec![Vec::new(); face_index.len()];
        for f in &json.faces {
            faces[face_index[&f.id]] = f
                .edge_cycle
                .iter()
                .map(|e| {
                    edge_index.get(e).copied().ok_or(Error::UnknownEdge {
                        face: f.id,
                        edge: *e,
                    })
                })
                .collect::<Result<_>>()?;
        }
        SurfaceComplex::new(json.genus, json.label, vertex_index.len(), edges, faces)
    }
}

#[derive(Clone, Debug)]
struct OrientedFace {
    edges: Vec<usize>,
    walk: Vec<usize>,
}

impl OrientedFace {
    fn reverse(&mut self) {
        // slot i: walk[i] -> walk[i+1]; reversed slot j = k-1-i runs walk[i+1] -> walk[i]
        self.edges.reverse();
        let k = self.walk.len();
        self.walk = (0..k).map(|j| self.walk[(k - j) % k]).collect();
    }
}

fn dense_index(
    kind: &'static str,
    ids: impl Iterator<Item = usize>,
) -> Result<BTreeMap<usize, usize>> {
    let mut sorted: Vec<usize> = ids.collect();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateId { kind, id: w[0] });
    }
    Ok(sorted
        .into_iter()
        .enumerate()
        .map(|(i, id)| (id, i))
        .collect())
}

/// Lexicographically smallest rotation or reflection of a cyclic sequence.
pub fn normalize_cycle(cycle: Vec<usize>) -> Vec<usize> {
    let k = cycle.len();
    let mut best = cycle.clone();
    let reversed: Vec<usize> = cycle.iter().rev().copied().collect();
    for seq in [&cycle, &reversed] {
        for r in 0..k {
            let cand: Vec<usize> = seq[r..].iter().chain(&seq[..r]).copied().collect();
            if cand < best {
                best = cand;
            }
        }
    }
    best
}

/// On-disk JSON layout of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub genus: u32,
    pub label: String,
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeJson>,
    pub faces: Vec<FaceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub id: usize,
    pub ends: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceJson {
    pub id: usize,
    pub edge_cycle: Vec<usize>,
}

pub fn load_complex<R: Read>(source: R) -> Result<SurfaceComplex> {
    let json: ComplexJson = serde_json::from_reader(source)?;
    SurfaceComplex::from_json(json)
}

pub fn load_complex_str(source: &str) -> Result<SurfaceComplex> {
    load_complex(source.as_bytes())
}

pub fn save_complex<W: Write>(c: &SurfaceComplex, mut sink: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut sink, &c.to_json())?;
    sink.write_all(b"\n")?;
    Ok(())
}

pub fn complex_to_string(c: &SurfaceComplex) -> String {
    let mut buf = Vec::new();
    save_complex(c, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    // Single square on the torus: 1 vertex, 2 loops, 1 face a b a b.
    fn one_square_torus() -> SurfaceComplex {
        SurfaceComplex::new(1, "1x1", 1, vec![[0, 0], [0, 0]], vec![vec![0, 1, 0, 1]]).unwrap()
    }

    #[test]
    fn normalization_picks_smallest_rotation_or_reflection() {
        assert_eq!(normalize_cycle(vec![3, 1, 2]), vec![1, 2, 3]);
        assert_eq!(normalize_cycle(vec![2, 3, 1]), vec![1, 2, 3]);
        assert_eq!(normalize_cycle(vec![5, 0, 9, 4]), vec![0, 5, 4, 9]);
    }

    #[test]
    fn rejects_missing_slot() {
        let err =
            SurfaceComplex::new(1, "", 1, vec![[0, 0], [0, 0]], vec![vec![0, 1, 0]]).unwrap_err();
        assert!(matches!(err, Error::EdgeSlots { edge: 1, slots: 1 }));
    }

    #[test]
    fn rejects_unknown_references() {
        assert!(matches!(
            SurfaceComplex::new(1, "", 1, vec![[0, 3]], vec![vec![0, 0]]),
            Err(Error::UnknownVertex { edge: 0, vertex: 3 })
        ));
        assert!(matches!(
            SurfaceComplex::new(1, "", 1, vec![[0, 0]], vec![vec![0, 7]]),
            Err(Error::UnknownEdge { face: 0, edge: 7 })
        ));
    }

    #[test]
    fn rejects_euler_mismatch() {
        let err = SurfaceComplex::new(2, "", 1, vec![[0, 0], [0, 0]], vec![vec![0, 1, 0, 1]])
            .unwrap_err();
        assert!(matches!(
            err,
            Error::EulerMismatch {
                chi: 0,
                expected: -2,
                genus: 2
            }
        ));
    }

    #[test]
    fn rejects_disjoint_consecutive_edges() {
        // two disjoint edges can't be consecutive
        let err = SurfaceComplex::new(
            1,
            "",
            4,
            vec![[0, 1], [2, 3], [0, 1], [2, 3]],
            vec![vec![0, 1, 2, 3], vec![0, 1, 2, 3]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::BrokenFace { .. }));
    }

    #[test]
    fn degenerate_single_square() {
        let c = one_square_torus();
        assert_eq!(c.degenerate_faces(), vec![0]);
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn dual_of_single_square_is_single_square() {
        let c = one_square_torus();
        let d = c.dual().unwrap();
        assert_eq!(d.num_vertices(), 1);
        assert_eq!(d.num_faces(), 1);
        assert_eq!(d.face(0).len(), 4);
        assert_eq!(d.dual().unwrap().faces(), c.faces());
    }

    #[test]
    fn json_rejects_unknown_keys() {
        let text = r#"{"genus":1,"label":"","vertices":[0],"edges":[],"faces":[],"extra":1}"#;
        assert!(matches!(load_complex_str(text), Err(Error::Json(_))));
    }

    #[test]
    fn json_relabels_sparse_ids() {
        let text = r#"{"genus":1,"label":"sparse","vertices":[10],
            "edges":[{"id":7,"ends":[10,10]},{"id":3,"ends":[10,10]}],
            "faces":[{"id":42,"edge_cycle":[7,3,7,3]}]}"#;
        let c = load_complex_str(text).unwrap();
        assert_eq!(c.num_edges(), 2);
        assert_eq!(c.face(0), &[0, 1, 0, 1]);
    }

    #[test]
    fn json_rejects_duplicate_ids() {
        let text = r#"{"genus":1,"label":"","vertices":[0,0],"edges":[],"faces":[]}"#;
        assert!(matches!(
            load_complex_str(text),
            Err(Error::DuplicateId {
                kind: "vertex",
                id: 0
            })
        ));
    }
}
