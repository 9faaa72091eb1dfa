//! Weighted spin networks and their single-excitation Hamiltonian.
//!
//! Vertex ids are 1-based throughout the public API. Matrices and vectors
//! over the site space are 0-based, so vertex `v` lives at index `v - 1`.

mod builders;

use std::collections::{HashSet, VecDeque};

pub use builders::*;

use crate::error::{PstError, Result};
use crate::Scalar;

/// An exchange coupling between two distinct vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<T> {
    pub i: usize,
    pub j: usize,
    pub coupling: T,
}

/// A connected, positively weighted spin network with a reference vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinNetwork<T> {
    vertex_count: usize,
    edges: Vec<Edge<T>>,
    reference: usize,
    scale: T,
    adjacency_mode: bool,
    // 0-based neighbor lists: (neighbor index, coupling)
    adjacency: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SpinNetwork<T> {
    /// Validates and builds a network from `(i, j, J_ij)` triples.
    pub fn from_edge_list(
        n: usize,
        edges: &[(usize, usize, T)],
        reference: usize,
        scale: T,
    ) -> Result<Self> {
        if n == 0 {
            return Err(PstError::InvalidNetwork(
                "vertex count must be positive".into(),
            ));
        }
        if reference == 0 || reference > n {
            return Err(PstError::InvalidNetwork(format!(
                "reference vertex {reference} outside 1..={n}"
            )));
        }
        check_scale(scale)?;

        let mut seen = HashSet::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); n];
        let mut stored = Vec::with_capacity(edges.len());
        for (index, &(i, j, coupling)) in edges.iter().enumerate() {
            let bad = |reason: &str| PstError::InvalidEdge {
                index,
                i,
                j,
                reason: reason.to_string(),
            };
            if i == 0 || j == 0 || i > n || j > n {
                return Err(bad("vertex id out of range"));
            }
            if i == j {
                return Err(bad("self-loop"));
            }
            if !(coupling.is_finite() && coupling > T::zero()) {
                return Err(bad("coupling must be positive and finite"));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(bad("duplicate edge"));
            }
            adjacency[i - 1].push((j - 1, coupling));
            adjacency[j - 1].push((i - 1, coupling));
            stored.push(Edge { i, j, coupling });
        }

        let net = SpinNetwork {
            vertex_count: n,
            edges: stored,
            reference,
            scale,
            adjacency_mode: false,
            adjacency,
        };
        if let Some(vertex) = net.distances().iter().position(Option::is_none) {
            return Err(PstError::DisconnectedGraph {
                vertex: vertex + 1,
                reference,
            });
        }
        Ok(net)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn reference(&self) -> usize {
        self.reference
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn adjacency_mode(&self) -> bool {
        self.adjacency_mode
    }

    /// Neighbors of vertex `v` (1-based) with their couplings.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        self.adjacency[v - 1].iter().map(|&(u, c)| (u + 1, c))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v - 1].len()
    }

    pub fn with_reference(mut self, reference: usize) -> Result<Self> {
        if reference == 0 || reference > self.vertex_count {
            return Err(PstError::InvalidNetwork(format!(
                "reference vertex {reference} outside 1..={}",
                self.vertex_count
            )));
        }
        self.reference = reference;
        Ok(self)
    }

    pub fn with_scale(mut self, scale: T) -> Result<Self> {
        check_scale(scale)?;
        self.scale = scale;
        Ok(self)
    }

    /// When set, Hamiltonian entries are `λ·J` instead of `λ·J/2`.
    pub fn with_adjacency_mode(mut self, on: bool) -> Self {
        self.adjacency_mode = on;
        self
    }

    /// True when every coupling is exactly one.
    pub fn has_unit_couplings(&self) -> bool {
        self.edges.iter().all(|e| e.coupling == T::one())
    }

    /// Graph distance of every vertex (0-based index) from the reference.
    pub(crate) fn distances(&self) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count];
        let mut queue = VecDeque::new();
        dist[self.reference - 1] = Some(0);
        queue.push_back(self.reference - 1);
        while let Some(v) = queue.pop_front() {
            let next = dist[v].map(|d| d + 1);
            for &(u, _) in &self.adjacency[v] {
                if dist[u].is_none() {
                    dist[u] = next;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// The single-excitation Hamiltonian in the site basis.
    pub fn hamiltonian(&self) -> HamiltonianMatrix<T> {
        let n = self.vertex_count;
        let factor = if self.adjacency_mode {
            self.scale
        } else {
            self.scale / T::lit(2.0)
        };
        let mut entries = vec![T::zero(); n * n];
        for e in &self.edges {
            let v = factor * e.coupling;
            entries[(e.i - 1) * n + (e.j - 1)] = v;
            entries[(e.j - 1) * n + (e.i - 1)] = v;
        }
        HamiltonianMatrix { order: n, entries }
    }
}

fn check_scale<T: Scalar>(scale: T) -> Result<()> {
    if scale.is_finite() && scale > T::zero() {
        Ok(())
    } else {
        Err(PstError::InvalidNetwork(format!(
            "scale must be positive and finite, got {scale}"
        )))
    }
}

/// Dense real symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianMatrix<T> {
    order: usize,
    entries: Vec<T>,
}

impl<T: Scalar> HamiltonianMatrix<T> {
    /// Builds a matrix from row-major entries. Symmetry is checked exactly.
    pub fn from_row_major(order: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(PstError::DimensionMismatch {
                expected: order * order,
                actual: entries.len(),
            });
        }
        let m = HamiltonianMatrix { order, entries };
        if !m.is_symmetric() {
            return Err(PstError::InvalidArgument("matrix is not symmetric".into()));
        }
        Ok(m)
    }

    /// Symmetric tridiagonal matrix with the given diagonal and off-diagonal.
    pub fn tridiagonal(diagonal: &[T], off_diagonal: &[T]) -> Result<Self> {
        let n = diagonal.len();
        if off_diagonal.len() + 1 != n {
            return Err(PstError::DimensionMismatch {
                expected: n.saturating_sub(1),
                actual: off_diagonal.len(),
            });
        }
        let mut entries = vec![T::zero(); n * n];
        for (k, &a) in diagonal.iter().enumerate() {
            entries[k * n + k] = a;
        }
        for (k, &b) in off_diagonal.iter().enumerate() {
            entries[k * n + k + 1] = b;
            entries[(k + 1) * n + k] = b;
        }
        Ok(HamiltonianMatrix { order: n, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn max_abs(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, &x| acc.max(x.abs()))
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        (0..self.order)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// The `(0, 0)` entry of `self^power`.
    pub fn power_entry00(&self, power: usize) -> T {
        let mut v = vec![T::zero(); self.order];
        if self.order == 0 {
            return T::zero();
        }
        v[0] = T::one();
        for _ in 0..power {
            v = self.matvec(&v);
        }
        v[0]
    }
}
