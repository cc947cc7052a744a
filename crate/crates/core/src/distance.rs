//! Exact `d_x` and `d_z` as shortest homologically nontrivial cycles of the
//! primal and dual graphs, plus an exhaustive kernel-enumeration oracle.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::SurfaceComplex;
use crate::error::{Error, Result};
use crate::gf2::{BitVec, RowSpace};
use crate::homology::{cocycle_basis, homology_signature};
use crate::stabilizer::CssCode;

pub const DEFAULT_ORACLE_CEILING: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    Search,
    Oracle,
    BothAgree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub d_x: usize,
    pub d_z: usize,
    pub witness_x: Vec<usize>,
    pub witness_z: Vec<usize>,
    pub method: DistanceMethod,
}

impl DistanceResult {
    pub fn d(&self) -> usize {
        self.d_x.min(self.d_z)
    }
}

/// Shortest nontrivial cycle found from one start vertex.
#[derive(Clone, Debug)]
struct Candidate {
    weight: usize,
    start: usize,
    walk: Vec<usize>,
}

/// Minimum number of edges in a cycle with nonzero homology signature, and
/// one such cycle (sorted edge ids).
///
/// Breadth-first search over `(vertex, signature)` states from every start
/// vertex; crossing an edge flips the signature bits of the cocycles that
/// contain it. The shortest closed walk returning to its start with a
/// nonzero signature has the same length as the shortest nontrivial cycle,
/// and its odd-multiplicity edges form such a cycle.
pub fn shortest_nontrivial_cycle(c: &SurfaceComplex) -> Result<(usize, Vec<usize>)> {
    let basis = cocycle_basis(c)?;
    if basis.is_empty() {
        return Err(Error::NoHomology);
    }
    let masks = basis.edge_masks(c.num_edges());
    let adj = c.adjacency();
    let sig_count = 1usize << basis.len();

    let best = (0..c.num_vertices())
        .into_par_iter()
        .filter_map(|s| search_from(s, &adj, &masks, sig_count))
        .min_by(|a, b| (a.weight, a.start, &a.walk).cmp(&(b.weight, b.start, &b.walk)))
        .ok_or(Error::NoHomology)?;

    let mut edges = BitVec::zeros(c.num_edges());
    for &e in &best.walk {
        edges.flip(e);
    }
    let witness: Vec<usize> = edges.ones().collect();
    let signature = homology_signature(c, &edges, &basis)?;
    if signature.is_zero() || witness.len() != best.weight {
        return Err(Error::Construction(format!(
            "closed walk of length {} reduced to a cycle of weight {} (signature zero: {})",
            best.weight,
            witness.len(),
            signature.is_zero()
        )));
    }
    Ok((best.weight, witness))
}

fn search_from(
    start: usize,
    adj: &[Vec<(usize, usize)>],
    masks: &[u64],
    sig_count: usize,
) -> Option<Candidate> {
    let state = |v: usize, sig: u64| v * sig_count + sig as usize;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; adj.len() * sig_count];
    let mut seen = vec![false; adj.len() * sig_count];
    let origin = state(start, 0);
    seen[origin] = true;
    let mut queue = VecDeque::from([(start, 0u64)]);
    while let Some((v, sig)) = queue.pop_front() {
        let here = state(v, sig);
        for &(w, e) in &adj[v] {
            let next_sig = sig ^ masks[e];
            let next = state(w, next_sig);
            if seen[next] {
                continue;
            }
            seen[next] = true;
            parent[next] = Some((here, e));
            if w == start && next_sig != 0 {
                let mut walk = Vec::new();
                let mut cur = next;
                while let Some((prev, edge)) = parent[cur] {
                    walk.push(edge);
                    cur = prev;
                }
                walk.reverse();
                return Some(Candidate {
                    weight: walk.len(),
                    start,
                    walk,
                });
            }
            queue.push_back((w, next_sig));
        }
    }
    None
}

/// `d_x` from the complex, `d_z` from its dual.
pub fn code_distances(c: &SurfaceComplex) -> Result<DistanceResult> {
    let (d_x, witness_x) = shortest_nontrivial_cycle(c)?;
    let dual = c.dual()?;
    let (d_z, witness_z) = shortest_nontrivial_cycle(&dual)?;
    Ok(DistanceResult {
        d_x,
        d_z,
        witness_x,
        witness_z,
        method: DistanceMethod::Search,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDistances {
    pub d_x: usize,
    pub d_z: usize,
}

/// Minimum weight over `ker(check) \ rowspace(stabilizers)` by enumerating
/// every kernel vector in Gray-code order.
fn min_logical_weight(
    check: &crate::gf2::BinaryMatrix,
    stabilizers: &crate::gf2::BinaryMatrix,
) -> Option<usize> {
    let kernel = check.kernel_basis();
    let span = RowSpace::from_matrix(stabilizers);
    let mut v = BitVec::zeros(check.cols());
    let mut best: Option<usize> = None;
    let total = 1u64 << kernel.len();
    for i in 1..total {
        v.xor_assign(&kernel[i.trailing_zeros() as usize]);
        let w = v.weight();
        if best.is_some_and(|b| w >= b) {
            continue;
        }
        if !span.contains(&v) {
            best = Some(w);
        }
    }
    best
}

pub fn oracle_distances(code: &CssCode, ceiling: usize) -> Result<OracleDistances> {
    if code.n > ceiling {
        return Err(Error::OracleCeiling { n: code.n, ceiling });
    }
    let d_x = min_logical_weight(&code.hz, &code.hx).ok_or(Error::NoHomology)?;
    let d_z = min_logical_weight(&code.hx, &code.hz).ok_or(Error::NoHomology)?;
    Ok(OracleDistances { d_x, d_z })
}

/// Search distances, cross-checked by the oracle when `n <= ceiling`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckedDistances {
    pub result: DistanceResult,
    pub oracle: Option<OracleDistances>,
}

impl CheckedDistances {
    pub fn agrees(&self) -> bool {
        self.oracle
            .is_none_or(|o| o.d_x == self.result.d_x && o.d_z == self.result.d_z)
    }
}

pub fn checked_distances(
    c: &SurfaceComplex,
    code: &CssCode,
    ceiling: usize,
) -> Result<CheckedDistances> {
    let mut result = code_distances(c)?;
    let oracle = if code.n <= ceiling {
        Some(oracle_distances(code, ceiling)?)
    } else {
        None
    };
    if let Some(o) = oracle {
        if o.d_x == result.d_x && o.d_z == result.d_z {
            result.method = DistanceMethod::BothAgree;
        }
    }
    Ok(CheckedDistances { result, oracle })
}
