//! Dense full-space reference engine: eigendecomposition of the site-basis
//! Hamiltonian by cyclic Jacobi rotations, exact single-excitation time
//! evolution and closed-walk counting.

use num_complex::Complex;

use crate::error::{PstError, Result};
use crate::network::{HamiltonianMatrix, SpinNetwork};
use crate::stratification::{layer_vectors, stratify};
use crate::Scalar;

pub const MAX_ORDER: usize = 4096;
pub const MAX_SWEEPS: usize = 100;
/// Off-diagonal Frobenius mass at which the rotation sweeps stop, relative to `‖H‖_F`.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-14;
pub const MAX_WALK_STEPS: usize = 20;

/// `H = V diag(e) Vᵀ` with eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition<T> {
    eigenvalues: Vec<T>,
    // row-major, eigenvectors in columns
    vectors: Vec<T>,
}

impl<T: Scalar> EigenDecomposition<T> {
    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Component `row` of eigenvector `col`.
    pub fn vector_entry(&self, row: usize, col: usize) -> T {
        self.vectors[row * self.order() + col]
    }

    pub fn eigenvector(&self, col: usize) -> Vec<T> {
        (0..self.order())
            .map(|r| self.vector_entry(r, col))
            .collect()
    }

    /// `e^{-iHt} source`.
    pub fn evolve(&self, source: &[T], t: T) -> Result<Vec<Complex<T>>> {
        let n = self.order();
        if source.len() != n {
            return Err(PstError::DimensionMismatch {
                expected: n,
                actual: source.len(),
            });
        }
        // coefficients in the eigenbasis, rotated by their phases
        let coeffs: Vec<Complex<T>> = (0..n)
            .map(|j| {
                let c = (0..n).fold(T::zero(), |acc, r| {
                    acc + self.vector_entry(r, j) * source[r]
                });
                Complex::from_polar(c, -self.eigenvalues[j] * t)
            })
            .collect();
        Ok((0..n)
            .map(|r| {
                coeffs
                    .iter()
                    .enumerate()
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (j, c)| {
                        acc + c * self.vector_entry(r, j)
                    })
            })
            .collect())
    }
}

/// Full eigendecomposition by cyclic Jacobi sweeps.
pub fn sym_eigen<T: Scalar>(h: &HamiltonianMatrix<T>) -> Result<EigenDecomposition<T>> {
    let n = h.order();
    if n > MAX_ORDER {
        return Err(PstError::InvalidArgument(format!(
            "matrix order {n} exceeds {MAX_ORDER}"
        )));
    }
    let mut a: Vec<T> = (0..n).flat_map(|r| h.row(r).to_vec()).collect();
    let mut v = vec![T::zero(); n * n];
    for k in 0..n {
        v[k * n + k] = T::one();
    }
    let frob = a.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
    let target = T::tol(OFF_DIAGONAL_TOLERANCE) * frob;

    let off_norm = |a: &[T]| {
        let mut s = T::zero();
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    s += a[r * n + c] * a[r * n + c];
                }
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (T::lit(2.0) * apq);
                let t = T::one().copysign(theta) / (theta.abs() + theta.hypot(T::one()));
                let c = t.hypot(T::one()).recip();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged && off_norm(&a) > target {
        return Err(PstError::ConvergenceFailure {
            sweeps: MAX_SWEEPS,
            off_norm: off_norm(&a).as_f64(),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        a[x * n + x]
            .partial_cmp(&a[y * n + y])
            .expect("finite eigenvalues")
    });
    let eigenvalues = order.iter().map(|&k| a[k * n + k]).collect();
    let mut vectors = vec![T::zero(); n * n];
    for r in 0..n {
        for (col, &k) in order.iter().enumerate() {
            vectors[r * n + col] = v[r * n + k];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        vectors,
    })
}

/// `e^{-iHt} source` with a fresh decomposition of `h`.
pub fn evolve<T: Scalar>(h: &HamiltonianMatrix<T>, source: &[T], t: T) -> Result<Vec<Complex<T>>> {
    sym_eigen(h)?.evolve(source, t)
}

/// What an amplitude is projected onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// A single site, 1-based.
    Vertex(usize),
    /// The layer vector `φ_k` of the stratification.
    Layer(usize),
}

/// Site-space evolution of one network, decomposed once and queried at many times.
#[derive(Debug, Clone)]
pub struct FullSpaceEvolution<T> {
    decomposition: EigenDecomposition<T>,
    source: Vec<T>,
    layers: Vec<Vec<T>>,
}

impl<T: Scalar> FullSpaceEvolution<T> {
    pub fn new(net: &SpinNetwork<T>) -> Result<Self> {
        let decomposition = sym_eigen(&net.hamiltonian())?;
        let n = net.vertex_count();
        let mut source = vec![T::zero(); n];
        source[net.reference() - 1] = T::one();
        let layers = layer_vectors::<T>(&stratify(net), n)
            .iter()
            .map(<[T]>::to_vec)
            .collect();
        Ok(FullSpaceEvolution {
            decomposition,
            source,
            layers,
        })
    }

    pub fn decomposition(&self) -> &EigenDecomposition<T> {
        &self.decomposition
    }

    /// `e^{-iHt}|reference⟩` in the site basis.
    pub fn state(&self, t: T) -> Vec<Complex<T>> {
        self.decomposition
            .evolve(&self.source, t)
            .expect("source matches the decomposition order")
    }

    pub fn amplitude(&self, t: T, target: Target) -> Result<Complex<T>> {
        let n = self.source.len();
        let projector: Vec<T> = match target {
            Target::Vertex(v) if (1..=n).contains(&v) => {
                let mut e = vec![T::zero(); n];
                e[v - 1] = T::one();
                e
            }
            Target::Layer(k) if k < self.layers.len() => self.layers[k].clone(),
            Target::Vertex(v) => {
                return Err(PstError::InvalidTarget(format!(
                    "vertex {v} outside 1..={n}"
                )))
            }
            Target::Layer(k) => {
                return Err(PstError::InvalidTarget(format!(
                    "layer {k} outside 0..={}",
                    self.layers.len() - 1
                )))
            }
        };
        let psi = self.state(t);
        Ok(psi
            .iter()
            .zip(&projector)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, &p)| {
                acc + a * p
            }))
    }
}

/// `⟨target| e^{-iHt} |reference⟩` computed in the full site space.
pub fn amplitude_full<T: Scalar>(net: &SpinNetwork<T>, t: T, target: Target) -> Result<Complex<T>> {
    FullSpaceEvolution::new(net)?.amplitude(t, target)
}

/// Number of closed walks of length `steps` at the reference vertex.
pub fn walk_count<T: Scalar>(net: &SpinNetwork<T>, steps: usize) -> Result<u128> {
    if !net.adjacency_mode() || !net.has_unit_couplings() {
        return Err(PstError::ModeMismatch(
            "walk counting needs an adjacency-mode network with unit couplings".into(),
        ));
    }
    if steps > MAX_WALK_STEPS {
        return Err(PstError::InvalidArgument(format!(
            "walk length {steps} exceeds {MAX_WALK_STEPS}"
        )));
    }
    let n = net.vertex_count();
    let overflow = || PstError::InvalidArgument("walk count overflows u128".into());
    let mut counts = vec![0u128; n];
    counts[net.reference() - 1] = 1;
    for _ in 0..steps {
        let mut next = vec![0u128; n];
        for v in 1..=n {
            let here = counts[v - 1];
            if here == 0 {
                continue;
            }
            for (u, _) in net.neighbors(v) {
                next[u - 1] = next[u - 1].checked_add(here).ok_or_else(overflow)?;
            }
        }
        counts = next;
    }
    Ok(counts[net.reference() - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::*;

    #[test]
    fn two_by_two_eigenvalues() {
        let h = HamiltonianMatrix::<f64>::from_row_major(2, vec![0.0, 0.5, 0.5, 0.0]).unwrap();
        let e = sym_eigen(&h).unwrap();
        assert!((e.eigenvalues()[0] + 0.5).abs() < 1e-15);
        assert!((e.eigenvalues()[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn zero_matrix() {
        let h = HamiltonianMatrix::from_row_major(3, vec![0.0; 9]).unwrap();
        let e = sym_eigen(&h).unwrap();
        assert_eq!(e.eigenvalues(), &[0.0, 0.0, 0.0]);
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3)
                    .map(|r| e.vector_entry(r, i) * e.vector_entry(r, j))
                    .sum();
                assert_eq!(dot, if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn cube_spectrum() {
        // H = A/2 on the 3-cube: eigenvalues (3 − 2w)/2 with multiplicity C(3, w).
        let h = hypercube_column::<f64>(3).unwrap().hamiltonian();
        let e = sym_eigen(&h).unwrap();
        let want = [-1.5, -0.5, -0.5, -0.5, 0.5, 0.5, 0.5, 1.5];
        for (got, want) in e.eigenvalues().iter().zip(want) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
    }

    #[test]
    fn evolution_at_zero_is_identity() {
        let net = w_network::<f64>();
        let h = net.hamiltonian();
        let mut src = vec![0.0; 8];
        src[0] = 0.6;
        src[4] = 0.8;
        let out = evolve(&h, &src, 0.0).unwrap();
        for (o, s) in out.iter().zip(&src) {
            assert!((o.re - s).abs() < 1e-12 && o.im.abs() < 1e-12);
        }
    }

    #[test]
    fn two_site_transfer() {
        let h = hypercube_column::<f64>(1).unwrap().hamiltonian();
        let out = evolve(&h, &[1.0, 0.0], std::f64::consts::PI).unwrap();
        assert!(out[1].re.abs() < 1e-12);
        assert!((out[1].im + 1.0).abs() < 1e-12);
    }

    #[test]
    fn evolution_preserves_norm() {
        let h = binary_tree_modulated::<f64>().hamiltonian();
        let mut src = vec![0.0; 16];
        src[3] = 1.0;
        for t in [0.3, 4.0, 17.5] {
            let out = evolve(&h, &src, t).unwrap();
            let norm: f64 = out.iter().map(|c| c.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let h = HamiltonianMatrix::from_row_major(2, vec![0.0; 4]).unwrap();
        assert!(matches!(
            evolve(&h, &[1.0], 1.0),
            Err(PstError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn full_amplitudes_of_examples() {
        let pi = std::f64::consts::PI;
        let a = amplitude_full(&w_network::<f64>(), pi / 3f64.sqrt(), Target::Vertex(8)).unwrap();
        assert!((a.norm() - 1.0).abs() < 1e-9);
        let a = amplitude_full(&circulant6::<f64>(), pi, Target::Vertex(6)).unwrap();
        assert!((a.norm() - 1.0).abs() < 1e-9);
        let a = amplitude_full(&star_extended::<f64>(), 0.0, Target::Vertex(1)).unwrap();
        assert!((a.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_targets() {
        let net = w_network::<f64>();
        assert!(matches!(
            amplitude_full(&net, 1.0, Target::Vertex(9)),
            Err(PstError::InvalidTarget(_))
        ));
        assert!(matches!(
            amplitude_full(&net, 1.0, Target::Layer(3)),
            Err(PstError::InvalidTarget(_))
        ));
    }

    #[test]
    fn walk_counts() {
        let net = w_network::<f64>().with_adjacency_mode(true);
        assert_eq!(walk_count(&net, 0).unwrap(), 1);
        assert_eq!(walk_count(&net, 2).unwrap(), 6);
        assert_eq!(walk_count(&net, 3).unwrap(), 0);
        // out to a middle vertex, over to 1 or 8, back through any middle vertex
        assert_eq!(walk_count(&net, 4).unwrap(), 6 * 2 * 6);
        assert!(matches!(
            walk_count(&w_network::<f64>(), 2),
            Err(PstError::ModeMismatch(_))
        ));
        assert!(walk_count(&net, MAX_WALK_STEPS + 1).is_err());
    }
}
