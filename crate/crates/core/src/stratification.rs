//! Distance layering from the reference vertex and reduction of the
//! Hamiltonian to a tridiagonal chain on the layer vectors.

use crate::error::{PstError, Result};
use crate::network::{HamiltonianMatrix, SpinNetwork};
use crate::Scalar;

/// Relative bound on the closure residual `‖r_k‖ / ‖H φ_k‖`.
pub const CLOSURE_TOLERANCE: f64 = 1e-12;

/// Partition of the vertices by graph distance from the reference vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratification {
    layers: Vec<Vec<usize>>,
    layer_of: Vec<usize>,
}

impl Stratification {
    /// Layers `V_0, …, V_d` of 1-based vertex ids, each sorted ascending.
    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    /// Eccentricity of the reference vertex.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    /// Layer index of vertex `v` (1-based).
    pub fn layer_of(&self, v: usize) -> usize {
        self.layer_of[v - 1]
    }

    pub fn vertex_count(&self) -> usize {
        self.layer_of.len()
    }
}

/// Breadth-first layers from the network's reference vertex.
pub fn stratify<T: Scalar>(net: &SpinNetwork<T>) -> Stratification {
    let dist: Vec<usize> = net
        .distances()
        .into_iter()
        .map(|d| d.expect("validated networks are connected"))
        .collect();
    let depth = dist.iter().copied().max().unwrap_or(0);
    let mut layers = vec![Vec::new(); depth + 1];
    for (v, &d) in dist.iter().enumerate() {
        layers[d].push(v + 1);
    }
    Stratification {
        layers,
        layer_of: dist,
    }
}

/// Unit vectors uniformly supported on each layer.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerVectors<T> {
    vectors: Vec<Vec<T>>,
}

impl<T: Scalar> LayerVectors<T> {
    pub fn get(&self, k: usize) -> &[T] {
        &self.vectors[k]
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[T]> {
        self.vectors.iter().map(Vec::as_slice)
    }
}

pub fn layer_vectors<T: Scalar>(strat: &Stratification, n: usize) -> LayerVectors<T> {
    let vectors = strat
        .layers()
        .iter()
        .map(|layer| {
            let amp = T::from_usize_lossy(layer.len()).sqrt().recip();
            let mut v = vec![T::zero(); n];
            for &vertex in layer {
                v[vertex - 1] = amp;
            }
            v
        })
        .collect();
    LayerVectors { vectors }
}

/// Coefficients of the tridiagonal chain: `omega = (ω_1, …, ω_d)`,
/// `alpha = (α_1, …, α_{d+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiSequences<T> {
    omega: Vec<T>,
    alpha: Vec<T>,
    layer_sizes: Vec<usize>,
}

impl<T: Scalar> JacobiSequences<T> {
    /// Sequences for a bare chain; every layer is taken to be a single site.
    pub fn new(omega: Vec<T>, alpha: Vec<T>) -> Result<Self> {
        let layer_sizes = vec![1; alpha.len()];
        Self::with_layer_sizes(omega, alpha, layer_sizes)
    }

    pub fn with_layer_sizes(omega: Vec<T>, alpha: Vec<T>, layer_sizes: Vec<usize>) -> Result<Self> {
        if alpha.len() != omega.len() + 1 {
            return Err(PstError::DegenerateSequence(format!(
                "expected {} diagonal coefficients for {} off-diagonal ones, got {}",
                omega.len() + 1,
                omega.len(),
                alpha.len()
            )));
        }
        if layer_sizes.len() != alpha.len() || layer_sizes.contains(&0) {
            return Err(PstError::DegenerateSequence(
                "layer sizes must be positive, one per layer".into(),
            ));
        }
        if let Some((k, w)) = omega
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > T::zero()))
        {
            return Err(PstError::DegenerateSequence(format!(
                "omega_{} = {w} is not positive",
                k + 1
            )));
        }
        if alpha.iter().any(|a| !a.is_finite()) {
            return Err(PstError::DegenerateSequence("alpha must be finite".into()));
        }
        Ok(JacobiSequences {
            omega,
            alpha,
            layer_sizes,
        })
    }

    pub fn omega(&self) -> &[T] {
        &self.omega
    }

    pub fn alpha(&self) -> &[T] {
        &self.alpha
    }

    pub fn depth(&self) -> usize {
        self.omega.len()
    }

    pub fn layer_sizes(&self) -> &[usize] {
        &self.layer_sizes
    }

    /// `ω_1 ω_2 ⋯ ω_k`, the squared norm of `P_k` under the spectral measure.
    pub fn omega_product(&self, k: usize) -> T {
        self.omega[..k].iter().fold(T::one(), |acc, &w| acc * w)
    }

    /// The `(d+1)×(d+1)` tridiagonal matrix with diagonal `α` and off-diagonal `√ω`.
    pub fn quotient_matrix(&self) -> HamiltonianMatrix<T> {
        let off: Vec<T> = self.omega.iter().map(|w| w.sqrt()).collect();
        HamiltonianMatrix::tridiagonal(&self.alpha, &off).expect("lengths checked on construction")
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Projects the Hamiltonian onto the layer vectors and checks that the
/// layer span is invariant, yielding the chain coefficients.
pub fn reduce<T: Scalar>(net: &SpinNetwork<T>) -> Result<JacobiSequences<T>> {
    let strat = stratify(net);
    let phi = layer_vectors::<T>(&strat, net.vertex_count());
    let h = net.hamiltonian();
    let depth = strat.depth();
    let tol = T::tol(CLOSURE_TOLERANCE);

    let mut omega = Vec::with_capacity(depth);
    let mut alpha = Vec::with_capacity(depth + 1);
    let mut down = T::zero();
    for k in 0..=depth {
        let h_phi = h.matvec(phi.get(k));
        let a = dot(phi.get(k), &h_phi);
        let up = if k < depth {
            dot(phi.get(k + 1), &h_phi)
        } else {
            T::zero()
        };

        let mut residual = h_phi.clone();
        for (idx, r) in residual.iter_mut().enumerate() {
            *r -= a * phi.get(k)[idx];
            if k > 0 {
                *r -= down * phi.get(k - 1)[idx];
            }
            if k < depth {
                *r -= up * phi.get(k + 1)[idx];
            }
        }
        let res = norm(&residual);
        let bound = tol * norm(&h_phi);
        if res > bound {
            return Err(PstError::QuotientClosureViolation {
                layer: k,
                residual: res.as_f64(),
                bound: bound.as_f64(),
            });
        }

        alpha.push(a);
        if k < depth {
            omega.push(up * up);
        }
        down = up;
    }
    JacobiSequences::with_layer_sizes(omega, alpha, strat.sizes())
}
