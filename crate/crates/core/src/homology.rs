//! Z2 chain complex of a surface: boundary maps, Betti number, and a
//! cocycle basis that detects first-homology classes.

use std::collections::VecDeque;

use crate::complex::SurfaceComplex;
use crate::error::{Error, Result};
pub use crate::gf2::{BinaryMatrix, BitVec, RowSpace};

/// `C2 --d2--> C1 --d1--> C0` with Z2 coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexZ2 {
    /// `|E| × |F|`; column `f` is the boundary of face `f`, edge multiplicity mod 2.
    pub d2: BinaryMatrix,
    /// `|V| × |E|`; column `e` holds the endpoints of `e` (zero for a self-loop).
    pub d1: BinaryMatrix,
}

pub fn boundary_matrices(c: &SurfaceComplex) -> ChainComplexZ2 {
    let mut d2 = BinaryMatrix::zeros(c.num_edges(), c.num_faces());
    for (f, face) in c.faces().iter().enumerate() {
        for &e in face {
            d2.flip(e, f);
        }
    }
    let mut d1 = BinaryMatrix::zeros(c.num_vertices(), c.num_edges());
    for (e, &[a, b]) in c.edges().iter().enumerate() {
        d1.flip(a, e);
        d1.flip(b, e);
    }
    ChainComplexZ2 { d2, d1 }
}

impl ChainComplexZ2 {
    pub fn is_exact_pair(&self) -> bool {
        self.d1.mul(&self.d2).map(|m| m.is_zero()).unwrap_or(false)
    }

    /// `dim ker d1 - rank d2`.
    pub fn betti1(&self) -> usize {
        let kernel = self.d1.cols() - self.d1.rank();
        kernel - self.d2.rank()
    }
}

pub fn rank(m: &BinaryMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &BinaryMatrix) -> Vec<BitVec> {
    m.kernel_basis()
}

pub fn in_row_space(m: &BinaryMatrix, v: &BitVec) -> Result<bool> {
    m.in_row_space(v)
}

/// First Betti number, checked against `2·genus`.
pub fn betti1(c: &SurfaceComplex) -> Result<usize> {
    let b = boundary_matrices(c).betti1();
    let expected = 2 * c.genus() as usize;
    if b != expected {
        return Err(Error::BettiMismatch {
            betti1: b,
            expected,
        });
    }
    Ok(b)
}

/// `2g` cocycles together with `2g` cycles whose pairing with them is the identity.
#[derive(Clone, Debug)]
pub struct CocycleBasis {
    pub cocycles: Vec<BitVec>,
    /// Fundamental cycles of the leftover edges; `cycles[i]·cocycles[j] = δ_ij`.
    pub cycles: Vec<BitVec>,
    /// Edges in neither the spanning tree nor the dual spanning tree.
    pub leftover: Vec<usize>,
}

impl CocycleBasis {
    pub fn len(&self) -> usize {
        self.cocycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cocycles.is_empty()
    }

    /// `2g × 2g` matrix of intersection parities `cycles[i] · cocycles[j]`.
    pub fn pairing(&self) -> BinaryMatrix {
        let n = self.len();
        let mut m = BinaryMatrix::zeros(n, n);
        for (i, z) in self.cycles.iter().enumerate() {
            for (j, w) in self.cocycles.iter().enumerate() {
                m.set(i, j, z.dot(w));
            }
        }
        m
    }

    /// Bit `i` is the parity of `|edges ∩ cocycles[i]|`; no cycle check.
    pub fn raw_signature(&self, edges: &BitVec) -> BitVec {
        BitVec::from_indices(
            self.len(),
            (0..self.len()).filter(|&i| edges.dot(&self.cocycles[i])),
        )
    }

    /// For each edge, the mask of cocycles containing it.
    pub fn edge_masks(&self, num_edges: usize) -> Vec<u64> {
        assert!(self.len() <= 64, "signature wider than 64 bits");
        let mut masks = vec![0u64; num_edges];
        for (i, cocycle) in self.cocycles.iter().enumerate() {
            for e in cocycle.ones() {
                masks[e] |= 1 << i;
            }
        }
        masks
    }
}

/// BFS spanning tree over an incidence list; returns parent `(node, edge)` per node.
fn spanning_tree(
    nodes: usize,
    adj: &[Vec<(usize, usize)>],
    allowed: impl Fn(usize) -> bool,
) -> Option<Vec<Option<(usize, usize)>>> {
    if nodes == 0 {
        return Some(Vec::new());
    }
    let mut parent = vec![None; nodes];
    let mut seen = vec![false; nodes];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[v] {
            if !seen[w] && allowed(e) {
                seen[w] = true;
                parent[w] = Some((v, e));
                queue.push_back(w);
            }
        }
    }
    seen.iter().all(|&s| s).then_some(parent)
}

fn path_to_root(parent: &[Option<(usize, usize)>], mut v: usize, acc: &mut BitVec) {
    while let Some((p, e)) = parent[v] {
        acc.flip(e);
        v = p;
    }
}

/// Tree/co-tree construction: a BFS spanning tree of the primal graph and a
/// BFS spanning tree of the dual graph on the remaining edges leave exactly
/// `2g` edges. Each leftover edge closes a primal fundamental cycle and a
/// dual fundamental cycle; the latter, read as an edge set, is a cocycle.
pub fn cocycle_basis(c: &SurfaceComplex) -> Result<CocycleBasis> {
    let e_count = c.num_edges();
    let primal_adj = c.adjacency();
    let tree = spanning_tree(c.num_vertices(), &primal_adj, |_| true).ok_or(Error::Disconnected)?;
    let mut in_tree = vec![false; e_count];
    for &(_, e) in tree.iter().flatten() {
        in_tree[e] = true;
    }

    let edge_faces = c.edge_faces();
    let mut dual_adj = vec![Vec::new(); c.num_faces()];
    for (e, &[f, g]) in edge_faces.iter().enumerate() {
        dual_adj[f].push((g, e));
        dual_adj[g].push((f, e));
    }
    let cotree =
        spanning_tree(c.num_faces(), &dual_adj, |e| !in_tree[e]).ok_or(Error::Disconnected)?;
    let mut in_cotree = vec![false; e_count];
    for &(_, e) in cotree.iter().flatten() {
        in_cotree[e] = true;
    }

    let leftover: Vec<usize> = (0..e_count)
        .filter(|&e| !in_tree[e] && !in_cotree[e])
        .collect();
    let expected = 2 * c.genus() as usize;
    if leftover.len() != expected {
        return Err(Error::BettiMismatch {
            betti1: leftover.len(),
            expected,
        });
    }

    let mut cycles = Vec::with_capacity(expected);
    let mut cocycles = Vec::with_capacity(expected);
    for &e in &leftover {
        let [a, b] = c.edge_ends(e);
        let mut z = BitVec::from_indices(e_count, [e]);
        path_to_root(&tree, a, &mut z);
        path_to_root(&tree, b, &mut z);
        cycles.push(z);

        let [f, g] = edge_faces[e];
        let mut w = BitVec::from_indices(e_count, [e]);
        path_to_root(&cotree, f, &mut w);
        path_to_root(&cotree, g, &mut w);
        cocycles.push(w);
    }
    let basis = CocycleBasis {
        cocycles,
        cycles,
        leftover,
    };

    let chain = boundary_matrices(c);
    let face_rows = chain.d2.transpose();
    for w in &basis.cocycles {
        if !face_rows.mul_vec(w)?.is_zero() {
            return Err(Error::Construction(
                "cocycle meets a face boundary an odd number of times".into(),
            ));
        }
    }
    if basis.pairing().inverse().is_none() {
        return Err(Error::SingularPairing);
    }
    Ok(basis)
}

/// Returns the first vertex with odd degree in `edges`, if any.
pub fn odd_vertex(c: &SurfaceComplex, edges: &BitVec) -> Option<usize> {
    let mut parity = vec![false; c.num_vertices()];
    for e in edges.ones() {
        let [a, b] = c.edge_ends(e);
        parity[a] ^= true;
        parity[b] ^= true;
    }
    parity.iter().position(|&p| p)
}

/// Homology class of a cycle as its pairing with each cocycle.
pub fn homology_signature(
    c: &SurfaceComplex,
    cycle: &BitVec,
    basis: &CocycleBasis,
) -> Result<BitVec> {
    if cycle.len() != c.num_edges() {
        return Err(Error::Dimension {
            op: "homology_signature",
            expected: c.num_edges(),
            found: cycle.len(),
        });
    }
    if let Some(vertex) = odd_vertex(c, cycle) {
        return Err(Error::NotACycle { vertex });
    }
    Ok(basis.raw_signature(cycle))
}
