//! Transfer amplitudes from the spectral data, time traces, and search for
//! perfect-state-transfer times.

use num_complex::Complex;

use crate::error::{PstError, Result};
use crate::spectral::{OrthoPolySystem, SpectralMeasure};
use crate::stratification::JacobiSequences;
use crate::Scalar;

pub const DEFAULT_PST_TOLERANCE: f64 = 1e-9;
/// Minimum number of points in the coarse scan of `pst_search`.
pub const COARSE_GRID: usize = 4096;
const MAX_COARSE_GRID: usize = 1 << 22;
const MAX_DENOMINATOR: u128 = 64;

/// `f_k(t) = ⟨φ_k| e^{-iHt} |φ_0⟩` written as `Σ_l c_l e^{-i x_l t}` with
/// `c_l = A_l P_k(x_l) / sqrt(ω_1 ⋯ ω_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferAmplitude<T> {
    layer: usize,
    atoms: Vec<T>,
    coefficients: Vec<T>,
}

impl<T: Scalar> TransferAmplitude<T> {
    pub fn new(j: &JacobiSequences<T>, m: &SpectralMeasure<T>, k: usize) -> Result<Self> {
        if k > j.depth() {
            return Err(PstError::InvalidTarget(format!(
                "layer {k} outside 0..={}",
                j.depth()
            )));
        }
        if m.len() != j.depth() + 1 {
            return Err(PstError::DimensionMismatch {
                expected: j.depth() + 1,
                actual: m.len(),
            });
        }
        let polys = OrthoPolySystem::new(j);
        let norm = j.omega_product(k).sqrt();
        let coefficients = m
            .atoms()
            .iter()
            .zip(m.weights())
            .map(|(&x, &w)| w * polys.eval(k, x) / norm)
            .collect();
        Ok(TransferAmplitude {
            layer: k,
            atoms: m.atoms().to_vec(),
            coefficients,
        })
    }

    pub fn layer(&self) -> usize {
        self.layer
    }

    pub fn at(&self, t: T) -> Complex<T> {
        self.atoms
            .iter()
            .zip(&self.coefficients)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (&x, &c)| {
                acc + Complex::from_polar(c, -x * t)
            })
    }

    fn probability(&self, t: T) -> T {
        self.at(t).norm_sqr()
    }
}

/// `f_k(t)` evaluated from the Jacobi chain and its Gauss measure.
pub fn amplitude<T: Scalar>(
    j: &JacobiSequences<T>,
    m: &SpectralMeasure<T>,
    k: usize,
    t: T,
) -> Result<Complex<T>> {
    Ok(TransferAmplitude::new(j, m, k)?.at(t))
}

/// Amplitudes sampled on a uniform time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityTrace<T> {
    pub times: Vec<T>,
    pub amplitudes: Vec<Complex<T>>,
    pub target_layer: usize,
}

impl<T: Scalar> FidelityTrace<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Largest `|f|` on the grid and the time it occurs.
    pub fn peak(&self) -> Option<(T, T)> {
        self.times
            .iter()
            .zip(&self.amplitudes)
            .map(|(&t, a)| (t, a.norm()))
            .fold(None, |best, (t, v)| match best {
                Some((_, bv)) if bv >= v => best,
                _ => Some((t, v)),
            })
    }
}

pub fn trace<T: Scalar>(
    j: &JacobiSequences<T>,
    m: &SpectralMeasure<T>,
    k: usize,
    t_start: T,
    t_end: T,
    samples: usize,
) -> Result<FidelityTrace<T>> {
    if !(t_start < t_end) || !t_start.is_finite() || !t_end.is_finite() {
        return Err(PstError::InvalidWindow(format!(
            "need t_start < t_end, got [{t_start}, {t_end}]"
        )));
    }
    if samples < 2 {
        return Err(PstError::InvalidWindow(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    let f = TransferAmplitude::new(j, m, k)?;
    let step = (t_end - t_start) / T::from_usize_lossy(samples - 1);
    let times: Vec<T> = (0..samples)
        .map(|i| {
            if i + 1 == samples {
                t_end
            } else {
                t_start + step * T::from_usize_lossy(i)
            }
        })
        .collect();
    let amplitudes = times.iter().map(|&t| f.at(t)).collect();
    Ok(FidelityTrace {
        times,
        amplitudes,
        target_layer: k,
    })
}

/// Outcome of a search for transfer to the antipodal layer.
#[derive(Debug, Clone, PartialEq)]
pub struct PstCertificate<T> {
    pub time: T,
    /// `1 − |f_d(t*)|`, clamped at zero.
    pub deficit: T,
    pub achieved: bool,
    /// Only when the antipodal layer is one vertex is this vertex-to-vertex transfer.
    pub target_is_single_vertex: bool,
    pub target_layer: usize,
}

/// Maximizes `|f_d(t)|²` over `(0, t_max]`: coarse scan, golden-section
/// bracketing and parabolic polishing around each promising local maximum.
/// Among maxima whose deficits tie within `1e-12`, the earliest wins.
pub fn pst_search<T: Scalar>(
    j: &JacobiSequences<T>,
    m: &SpectralMeasure<T>,
    t_max: T,
    tolerance: T,
) -> Result<PstCertificate<T>> {
    if !(t_max > T::zero() && t_max.is_finite()) {
        return Err(PstError::InvalidWindow(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    if !(tolerance > T::zero() && tolerance <= T::lit(1e-2)) {
        return Err(PstError::InvalidArgument(format!(
            "tolerance must lie in (0, 1e-2], got {tolerance}"
        )));
    }
    let depth = j.depth();
    if depth == 0 {
        return Err(PstError::InvalidTarget(
            "single-layer network has no antipodal layer".into(),
        ));
    }
    let f = TransferAmplitude::new(j, m, depth)?;

    let spread = m.atoms()[m.len() - 1] - m.atoms()[0];
    let needed = (t_max * spread * T::lit(4.0) / T::PI())
        .ceil()
        .to_usize()
        .unwrap_or(MAX_COARSE_GRID);
    let points = needed.clamp(COARSE_GRID, MAX_COARSE_GRID);
    let h = t_max / T::from_usize_lossy(points);
    let grid: Vec<T> = (0..=points).map(|i| h * T::from_usize_lossy(i)).collect();
    let values: Vec<T> = grid.iter().map(|&t| f.probability(t)).collect();

    let best = values[1..].iter().fold(T::zero(), |acc, &v| acc.max(v));
    let slack = T::lit(1e-2);
    let mut candidates: Vec<usize> = (1..=points)
        .filter(|&i| {
            let left_ok = values[i] >= values[i - 1];
            let right_ok = i == points || values[i] >= values[i + 1];
            left_ok && right_ok && values[i] >= best - slack
        })
        .collect();
    candidates.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).expect("finite"));
    candidates.truncate(64);

    let mut refined: Vec<(T, T)> = candidates
        .iter()
        .map(|&i| {
            let lo = grid[i - 1].max(T::min_positive_value());
            let hi = if i == points { t_max } else { grid[i + 1] };
            let t = refine_peak(&f, lo, hi, grid[i]);
            (t, f.probability(t))
        })
        .collect();
    refined.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));

    let top = refined.iter().fold(T::zero(), |acc, r| acc.max(r.1));
    let tie = T::tol(1e-12);
    let (time, prob) = *refined
        .iter()
        .find(|r| r.1 >= top - tie)
        .expect("at least one candidate");
    let deficit = (T::one() - prob.sqrt()).max(T::zero());
    Ok(PstCertificate {
        time,
        deficit,
        achieved: deficit <= tolerance,
        target_is_single_vertex: j.layer_sizes()[depth] == 1,
        target_layer: depth,
    })
}

fn refine_peak<T: Scalar>(f: &TransferAmplitude<T>, lo: T, hi: T, start: T) -> T {
    let g = |t: T| f.probability(t);
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let scale = hi.abs().max(T::one());

    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    while b - a > T::tol(1e-7) * scale {
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    let mut t = [a, b, c, d, start]
        .into_iter()
        .fold((start, g(start)), |best, x| {
            let v = g(x);
            if v > best.1 {
                (x, v)
            } else {
                best
            }
        })
        .0;

    // Parabolic vertex through three symmetric samples; the flat top makes
    // direct comparison of values unreliable below ~sqrt(eps).
    let step = T::tol(1e-5) * scale;
    for _ in 0..3 {
        let (gm, g0, gp) = (g(t - step), g(t), g(t + step));
        let curvature = gp + gm - T::lit(2.0) * g0;
        if !(curvature < T::zero()) {
            break;
        }
        let next = (t - step * (gp - gm) / (T::lit(2.0) * curvature))
            .max(lo)
            .min(hi);
        if (next - t).abs() <= T::tol(1e-12) * scale {
            t = next;
            break;
        }
        if g(next) + T::tol(1e-15) < g0 {
            break;
        }
        t = next;
    }
    t.max(lo).min(hi)
}

/// Fundamental period `2π/g` when every atom gap is an integer multiple of a
/// common `g`. Gap ratios are matched by rationals with denominator ≤ 64.
pub fn commensurate_period<T: Scalar>(m: &SpectralMeasure<T>, tolerance: T) -> Option<T> {
    let gaps: Vec<T> = m.atoms().windows(2).map(|p| p[1] - p[0]).collect();
    let smallest = gaps.iter().copied().fold(T::infinity(), T::min);
    if gaps.is_empty() || !(smallest > T::zero()) {
        return None;
    }
    let mut fractions = Vec::with_capacity(gaps.len());
    for &gap in &gaps {
        let ratio = gap / smallest;
        let (p, q) = (1..=MAX_DENOMINATOR).find_map(|q| {
            let qf = T::from_u128(q)?;
            let p = (ratio * qf).round();
            ((ratio - p / qf).abs() <= tolerance * ratio.max(T::one()))
                .then(|| p.to_u128().map(|p| (p, q)))
                .flatten()
        })?;
        fractions.push((p, q));
    }
    let lcm = fractions
        .iter()
        .try_fold(1u128, |acc, &(_, q)| acc.checked_mul(q / gcd(acc, q)))?;
    let mut common = 0u128;
    for &(p, q) in &fractions {
        common = gcd(common, p.checked_mul(lcm / q)?);
    }
    let unit = smallest * T::from_u128(common)? / T::from_u128(lcm)?;
    Some(T::TAU() / unit)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Search window: the commensurate period when one exists, otherwise
/// `4π` over the smallest positive gap.
pub fn default_window<T: Scalar>(m: &SpectralMeasure<T>) -> Option<T> {
    commensurate_period(m, T::tol(1e-9)).or_else(|| {
        let smallest = m
            .atoms()
            .windows(2)
            .map(|p| p[1] - p[0])
            .filter(|g| *g > T::zero())
            .fold(T::infinity(), T::min);
        smallest
            .is_finite()
            .then(|| T::lit(4.0) * T::PI() / smallest)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::*;
    use crate::spectral::gauss_measure;
    use crate::stratification::reduce;
    use std::f64::consts::PI;

    fn pipeline(net: &SpinNetwork<f64>) -> (JacobiSequences<f64>, SpectralMeasure<f64>) {
        let j = reduce(net).unwrap();
        let m = gauss_measure(&j).unwrap();
        (j, m)
    }

    #[test]
    fn two_site_amplitude() {
        let (j, m) = pipeline(&hypercube_column(1).unwrap());
        let f = amplitude(&j, &m, 1, PI).unwrap();
        assert!(f.re.abs() < 1e-12 && (f.im + 1.0).abs() < 1e-12, "{f}");
    }

    #[test]
    fn square_amplitude_is_minus_sin_squared() {
        let (j, m) = pipeline(&hypercube_column(2).unwrap());
        let f = amplitude(&j, &m, 2, PI / 2.0).unwrap();
        assert!((f.re + 0.5).abs() < 1e-12 && f.im.abs() < 1e-12, "{f}");
    }

    #[test]
    fn amplitude_vanishes_at_zero() {
        let (j, m) = pipeline(&binary_tree_modulated());
        for k in 1..=4 {
            assert!(amplitude(&j, &m, k, 0.0).unwrap().norm() < 1e-12);
        }
        assert!((amplitude(&j, &m, 0, 0.0).unwrap().re - 1.0).abs() < 1e-12);
        assert!(amplitude(&j, &m, 5, 0.0).is_err());
    }

    #[test]
    fn w_network_transfer() {
        let (j, m) = pipeline(&w_network());
        let f = amplitude(&j, &m, 2, PI / 3f64.sqrt()).unwrap();
        assert!((f.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_grid() {
        let (j, m) = pipeline(&engineered_chain(5).unwrap());
        let tr = trace(&j, &m, 4, 0.0, 2.0 * PI, 1001).unwrap();
        assert_eq!(tr.len(), 1001);
        let (t, v) = tr.peak().unwrap();
        assert!((t - PI).abs() < 1e-12);
        assert!((v - 1.0).abs() < 1e-12);

        let tr = trace(&j, &m, 4, 0.5, 1.5, 2).unwrap();
        assert_eq!(tr.times, vec![0.5, 1.5]);

        assert!(trace(&j, &m, 4, 1.0, 1.0, 5).is_err());
        assert!(trace(&j, &m, 4, 0.0, 1.0, 1).is_err());
    }

    #[test]
    fn search_chain_and_star() {
        let (j, m) = pipeline(&engineered_chain(4).unwrap());
        let c = pst_search(&j, &m, 2.0 * PI, 1e-9).unwrap();
        assert!((c.time - PI).abs() < 1e-8, "{}", c.time);
        assert!(c.achieved && c.target_is_single_vertex);

        let (j, m) = pipeline(&star_extended());
        let window = default_window(&m).unwrap();
        let c = pst_search(&j, &m, window, 1e-9).unwrap();
        assert!(
            (c.time - (2.0f64 / 3.0).sqrt() * PI).abs() < 1e-8,
            "{}",
            c.time
        );
        assert!(c.deficit < 1e-9);
        assert!(!c.target_is_single_vertex);
    }

    #[test]
    fn search_prefers_earliest_of_equal_peaks() {
        let (j, m) = pipeline(&hypercube_column(1).unwrap());
        let c = pst_search(&j, &m, 6.0 * PI, 1e-9).unwrap();
        assert!((c.time - PI).abs() < 1e-8, "{}", c.time);
    }

    #[test]
    fn search_reports_failure_without_transfer() {
        // Uniform 4-site chain: no perfect transfer.
        let net = SpinNetwork::from_edge_list(4, &[(1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0)], 1, 1.0)
            .unwrap();
        let (j, m) = pipeline(&net);
        let window = default_window(&m).unwrap();
        let c = pst_search(&j, &m, window, 1e-9).unwrap();
        assert!(!c.achieved);
        assert!(c.deficit > 1e-3);
    }

    #[test]
    fn search_argument_errors() {
        let (j, m) = pipeline(&engineered_chain(3).unwrap());
        assert!(matches!(
            pst_search(&j, &m, 0.0, 1e-9),
            Err(PstError::InvalidWindow(_))
        ));
        assert!(pst_search(&j, &m, 1.0, 0.5).is_err());
        let single = JacobiSequences::new(vec![], vec![0.0]).unwrap();
        let sm = gauss_measure(&single).unwrap();
        assert!(pst_search(&single, &sm, 1.0, 1e-9).is_err());
    }

    #[test]
    fn periods() {
        let m = SpectralMeasure::new(vec![-1.5, -0.5, 0.5, 1.5], vec![0.125, 0.375, 0.375, 0.125])
            .unwrap();
        assert!((commensurate_period(&m, 1e-9).unwrap() - 2.0 * PI).abs() < 1e-12);

        let r3 = 3f64.sqrt();
        let m = SpectralMeasure::new(vec![-r3, 0.0, r3], vec![0.25, 0.5, 0.25]).unwrap();
        assert!((commensurate_period(&m, 1e-9).unwrap() - 2.0 * PI / r3).abs() < 1e-12);

        let m = SpectralMeasure::new(vec![0.0, 1.0, 2f64.sqrt()], vec![0.2, 0.4, 0.4]).unwrap();
        assert_eq!(commensurate_period(&m, 1e-9), None);

        // gaps 1 and 1/2 share g = 1/2
        let m = SpectralMeasure::new(vec![0.0, 1.0, 1.5], vec![0.2, 0.4, 0.4]).unwrap();
        assert!((commensurate_period(&m, 1e-9).unwrap() - 4.0 * PI).abs() < 1e-12);
    }
}
