//! Human-writable TOML description of a spin network.
//!
//! ```toml
//! vertices = 5
//! edges = [[1, 2, 1.7320508075688772], [2, 3, 1], [2, 4, 1], [2, 5, 1]]
//! reference = 1        # optional, default 1
//! scale = 1.0          # optional, default 1.0
//! adjacency_mode = false  # optional
//! ```

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::network::SpinNetwork;

fn default_reference() -> usize {
    1
}

fn default_scale() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDocument {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, f64)>,
    #[serde(default = "default_reference")]
    pub reference: usize,
    #[serde(default = "default_scale")]
    pub scale: f64,
    #[serde(default)]
    pub adjacency_mode: bool,
}

impl NetworkDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("network documents always serialize")
    }

    pub fn from_network(net: &SpinNetwork<f64>) -> Self {
        NetworkDocument {
            vertices: net.vertex_count(),
            edges: net.edges().iter().map(|e| (e.i, e.j, e.coupling)).collect(),
            reference: net.reference(),
            scale: net.scale(),
            adjacency_mode: net.adjacency_mode(),
        }
    }

    pub fn to_network(&self) -> Result<SpinNetwork<f64>, CliError> {
        let net =
            SpinNetwork::from_edge_list(self.vertices, &self.edges, self.reference, self.scale)
                .map_err(|e| CliError::Parse(format!("{}: {e}", field_of(&e))))?;
        Ok(net.with_adjacency_mode(self.adjacency_mode))
    }
}

fn field_of(err: &crate::PstError) -> String {
    use crate::PstError::*;
    match err {
        InvalidEdge { index, .. } => format!("edges[{index}]"),
        DisconnectedGraph { .. } => "edges".into(),
        InvalidNetwork(msg) if msg.contains("reference") => "reference".into(),
        InvalidNetwork(msg) if msg.contains("scale") => "scale".into(),
        _ => "vertices".into(),
    }
}
