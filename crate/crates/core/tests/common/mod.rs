#![allow(dead_code)]

use pst_core::network::{self, SpinNetwork};
use pst_core::spectral::{gauss_measure, SpectralMeasure};
use pst_core::stratification::{reduce, JacobiSequences};

/// Every example network under a readable name.
pub fn builder_networks() -> Vec<(String, SpinNetwork<f64>)> {
    let mut out = Vec::new();
    for n in 2..=8 {
        out.push((format!("chain:{n}"), network::engineered_chain(n).unwrap()));
    }
    for d in 1..=4 {
        out.push((
            format!("hypercube:{d}"),
            network::hypercube_column(d).unwrap(),
        ));
    }
    out.push(("w-network".into(), network::w_network()));
    out.push(("tree7".into(), network::binary_tree_unweighted()));
    out.push(("tree16".into(), network::binary_tree_modulated()));
    out.push(("star5".into(), network::star_extended()));
    out.push(("circulant6".into(), network::circulant6()));
    out
}

pub fn pipeline(net: &SpinNetwork<f64>) -> (JacobiSequences<f64>, SpectralMeasure<f64>) {
    let j = reduce(net).expect("builder networks reduce");
    let m = gauss_measure(&j).expect("measure exists");
    (j, m)
}

/// Closed walks of length `steps` from `start` by explicit depth-first enumeration.
pub fn enumerate_closed_walks(net: &SpinNetwork<f64>, start: usize, steps: usize) -> u64 {
    fn go(net: &SpinNetwork<f64>, at: usize, start: usize, left: usize) -> u64 {
        if left == 0 {
            return u64::from(at == start);
        }
        net.neighbors(at)
            .map(|(u, _)| go(net, u, start, left - 1))
            .sum()
    }
    go(net, start, start, steps)
}

/// `(−i sin(t/2))^n`
pub fn minus_i_sin_power(t: f64, n: usize) -> (f64, f64) {
    let s = (t / 2.0).sin().powi(n as i32);
    match n % 4 {
        0 => (s, 0.0),
        1 => (0.0, -s),
        2 => (-s, 0.0),
        _ => (0.0, s),
    }
}
