//! Orthogonal polynomials of a Jacobi chain, its spectral measure and the
//! Stieltjes transform.
//!
//! The measure is recovered from the tridiagonal eigenproblem: atoms are the
//! eigenvalues of the quotient matrix and the Gauss weights are the squared
//! first components of its normalized eigenvectors.

mod tridiag;

use num_complex::Complex;

use crate::error::{PstError, Result};
use crate::stratification::JacobiSequences;
use crate::Scalar;

/// Minimum distance between an evaluation point and any atom.
pub const POLE_THRESHOLD: f64 = 1e-10;

/// Monic orthogonal polynomials defined by the three-term recurrence
/// `x P_n = P_{n+1} + α_{n+1} P_n + ω_n P_{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoPolySystem<T> {
    omega: Vec<T>,
    alpha: Vec<T>,
}

impl<T: Scalar> OrthoPolySystem<T> {
    pub fn new(j: &JacobiSequences<T>) -> Self {
        OrthoPolySystem {
            omega: j.omega().to_vec(),
            alpha: j.alpha().to_vec(),
        }
    }

    /// Highest degree the system defines, `d + 1`.
    pub fn max_degree(&self) -> usize {
        self.alpha.len()
    }

    /// `P_k(x)`, `0 ≤ k ≤ d+1`.
    pub fn eval(&self, k: usize, x: T) -> T {
        assert!(
            k <= self.max_degree(),
            "degree {k} exceeds {}",
            self.max_degree()
        );
        recurrence(&self.alpha, &self.omega, k, x)
    }

    /// First associated polynomial `P_k^{(1)}(x)`, `0 ≤ k ≤ d`: the same
    /// recurrence with the coefficients shifted by one.
    pub fn eval_assoc(&self, k: usize, x: T) -> T {
        assert!(
            k < self.max_degree(),
            "degree {k} exceeds {}",
            self.max_degree() - 1
        );
        let omega = self.omega.get(1..).unwrap_or(&[]);
        recurrence(&self.alpha[1..], omega, k, x)
    }
}

fn recurrence<T: Scalar>(alpha: &[T], omega: &[T], k: usize, x: T) -> T {
    let mut prev = T::one();
    if k == 0 {
        return prev;
    }
    let mut cur = x - alpha[0];
    for n in 1..k {
        let next = (x - alpha[n]) * cur - omega[n - 1] * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Finite spectral measure `Σ A_l δ(x − x_l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralMeasure<T> {
    atoms: Vec<T>,
    weights: Vec<T>,
}

impl<T: Scalar> SpectralMeasure<T> {
    /// Builds a measure from atom/weight pairs, sorting by atom.
    pub fn new(atoms: Vec<T>, weights: Vec<T>) -> Result<Self> {
        if atoms.len() != weights.len() || atoms.is_empty() {
            return Err(PstError::InvalidArgument(
                "measure needs one positive weight per atom".into(),
            ));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > T::zero()))
            || atoms.iter().any(|x| !x.is_finite())
        {
            return Err(PstError::InvalidArgument(
                "atoms must be finite and weights positive".into(),
            ));
        }
        let mut pairs: Vec<(T, T)> = atoms.into_iter().zip(weights).collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite atoms"));
        Ok(SpectralMeasure {
            atoms: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        })
    }

    pub fn atoms(&self) -> &[T] {
        &self.atoms
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> T {
        self.weights.iter().fold(T::zero(), |acc, &w| acc + w)
    }

    /// `Σ A_l x_l^m`.
    pub fn moment(&self, m: usize) -> T {
        let m = i32::try_from(m).expect("moment order fits in i32");
        self.atoms
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * x.powi(m))
    }

    /// Partial-fraction form of the Stieltjes transform, `Σ A_l / (z − x_l)`.
    pub fn stieltjes(&self, z: Complex<T>) -> Result<Complex<T>> {
        check_pole(&self.atoms, z)?;
        Ok(self
            .atoms
            .iter()
            .zip(&self.weights)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (&x, &w)| {
                acc + Complex::new(w, T::zero()) / (z - x)
            }))
    }
}

fn check_pole<T: Scalar>(atoms: &[T], z: Complex<T>) -> Result<()> {
    let threshold = T::tol(POLE_THRESHOLD);
    for &x in atoms {
        let distance = (z - x).norm();
        if distance <= threshold {
            return Err(PstError::PoleProximity {
                atom: x.as_f64(),
                distance: distance.as_f64(),
            });
        }
    }
    Ok(())
}

/// Gauss quadrature measure of the chain: the spectral measure of the
/// quotient matrix at the first site.
pub fn gauss_measure<T: Scalar>(j: &JacobiSequences<T>) -> Result<SpectralMeasure<T>> {
    if let Some(w) = j.omega().iter().find(|w| !(**w > T::zero())) {
        return Err(PstError::DegenerateSequence(format!(
            "non-positive omega {w}"
        )));
    }
    let off: Vec<T> = j.omega().iter().map(|w| w.sqrt()).collect();
    let (atoms, first) = tridiag::eigen_first_row(j.alpha(), &off)?;
    let weights: Vec<T> = first.iter().map(|&z| z * z).collect();
    if let Some(w) = weights.iter().find(|w| !(**w > T::zero())) {
        return Err(PstError::Internal(format!(
            "eigensolver produced non-positive Gauss weight {w}"
        )));
    }
    if atoms.windows(2).any(|p| !(p[1] > p[0])) {
        return Err(PstError::Internal(
            "eigensolver produced a repeated atom".into(),
        ));
    }
    Ok(SpectralMeasure { atoms, weights })
}

/// Stieltjes transform from the finite continued fraction
/// `1 / (z − α_1 − ω_1 / (z − α_2 − ω_2 / (⋯)))`, evaluated bottom-up.
pub fn stieltjes_cf<T: Scalar>(j: &JacobiSequences<T>, z: Complex<T>) -> Result<Complex<T>> {
    let off: Vec<T> = j.omega().iter().map(|w| w.sqrt()).collect();
    let (atoms, _) = tridiag::eigen_first_row(j.alpha(), &off)?;
    check_pole(&atoms, z)?;

    let zero = Complex::new(T::zero(), T::zero());
    let depth = j.depth();
    // `None` stands for an infinite tail: the level below hit an exact zero.
    let mut level: Option<Complex<T>> = Some(z - j.alpha()[depth]);
    for k in (0..depth).rev() {
        let tail = match level {
            Some(v) if v == zero => zero - Complex::new(T::infinity(), T::zero()),
            Some(v) => Complex::new(j.omega()[k], T::zero()) / v,
            None => zero,
        };
        level = if tail.re.is_infinite() {
            None
        } else {
            Some(z - j.alpha()[k] - tail)
        };
    }
    Ok(match level {
        Some(v) => Complex::new(T::one(), T::zero()) / v,
        None => zero,
    })
}

pub fn stieltjes_pf<T: Scalar>(m: &SpectralMeasure<T>, z: Complex<T>) -> Result<Complex<T>> {
    m.stieltjes(z)
}

pub fn moments<T: Scalar>(m: &SpectralMeasure<T>, order: usize) -> T {
    m.moment(order)
}
