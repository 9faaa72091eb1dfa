//! Generators for the example network families.

use super::SpinNetwork;
use crate::error::{PstError, Result};
use crate::Scalar;

/// Largest hypercube dimension accepted (4096 vertices).
pub const MAX_HYPERCUBE_DIM: usize = 12;

fn build<T: Scalar>(n: usize, edges: &[(usize, usize, T)]) -> SpinNetwork<T> {
    SpinNetwork::from_edge_list(n, edges, 1, T::one()).expect("builder produces a valid network")
}

/// The `d`-dimensional hypercube arranged in columns by Hamming weight.
///
/// Vertices are numbered column by column, so vertex 1 is the all-zero word
/// and vertex `2^d` the all-one word. Every coupling is 1.
pub fn hypercube_column<T: Scalar>(d: usize) -> Result<SpinNetwork<T>> {
    if d == 0 || d > MAX_HYPERCUBE_DIM {
        return Err(PstError::InvalidArgument(format!(
            "hypercube dimension must be in 1..={MAX_HYPERCUBE_DIM}, got {d}"
        )));
    }
    let n = 1usize << d;
    let mut words: Vec<usize> = (0..n).collect();
    words.sort_by_key(|&w| (w.count_ones(), w));
    let mut id = vec![0; n];
    for (pos, &w) in words.iter().enumerate() {
        id[w] = pos + 1;
    }
    let mut edges = Vec::with_capacity(d * n / 2);
    for w in 0..n {
        for bit in 0..d {
            let u = w | (1 << bit);
            if u != w {
                edges.push((id[w], id[u], T::one()));
            }
        }
    }
    Ok(build(n, &edges))
}

/// Eight vertices: vertex 1 and vertex 8 both joined to each of 2..=7.
pub fn w_network<T: Scalar>() -> SpinNetwork<T> {
    let mut edges = Vec::with_capacity(12);
    for v in 2..=7 {
        edges.push((1, v, T::one()));
    }
    for v in 2..=7 {
        edges.push((v, 8, T::one()));
    }
    build(8, &edges)
}

/// Seven-vertex complete binary tree with unit couplings.
pub fn binary_tree_unweighted<T: Scalar>() -> SpinNetwork<T> {
    let one = T::one();
    build(
        7,
        &[
            (1, 2, one),
            (1, 3, one),
            (2, 4, one),
            (2, 5, one),
            (3, 6, one),
            (3, 7, one),
        ],
    )
}

/// Path of `n` vertices with couplings `J_{k,k+1} = sqrt(k (n - k))`.
pub fn engineered_chain<T: Scalar>(n: usize) -> Result<SpinNetwork<T>> {
    if n < 2 {
        return Err(PstError::InvalidArgument(format!(
            "engineered chain needs at least 2 vertices, got {n}"
        )));
    }
    let edges: Vec<_> = (1..n)
        .map(|k| (k, k + 1, T::from_usize_lossy(k * (n - k)).sqrt()))
        .collect();
    Ok(build(n, &edges))
}

/// Vertex 1 attached with `J = sqrt(3)` to hub 2, which carries three unit leaves.
pub fn star_extended<T: Scalar>() -> SpinNetwork<T> {
    let one = T::one();
    build(
        5,
        &[
            (1, 2, T::lit(3.0).sqrt()),
            (2, 3, one),
            (2, 4, one),
            (2, 5, one),
        ],
    )
}

/// Six-cycle 1-2-4-6-5-3-1 with couplings that make the layer chain
/// `(sqrt(3)/2, 1, sqrt(3)/2)`.
pub fn circulant6<T: Scalar>() -> SpinNetwork<T> {
    let outer = T::lit(1.5).sqrt();
    let middle = T::lit(2.0);
    build(
        6,
        &[
            (1, 2, outer),
            (1, 3, outer),
            (2, 4, middle),
            (3, 5, middle),
            (4, 6, outer),
            (5, 6, outer),
        ],
    )
}

/// Sixteen-vertex tree: a tail 1-2 feeding a binary tree rooted at 2 with
/// three levels of branching and modulated couplings.
pub fn binary_tree_modulated<T: Scalar>() -> SpinNetwork<T> {
    let r3 = T::lit(3.0).sqrt();
    let r2 = T::lit(2.0).sqrt();
    let mut edges = vec![(1, 2, T::lit(2.0)), (2, 3, r3), (2, 4, r3)];
    for (parent, first_child) in [(3, 5), (4, 7)] {
        edges.push((parent, first_child, r3));
        edges.push((parent, first_child + 1, r3));
    }
    for parent in 5..=8 {
        let child = 9 + 2 * (parent - 5);
        edges.push((parent, child, r2));
        edges.push((parent, child + 1, r2));
    }
    build(16, &edges)
}
