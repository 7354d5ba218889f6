//! Size guards for the exhaustive searches. Process-wide; set once at startup.

use std::sync::RwLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Vertex cap for dicut enumeration over condensation ideals.
    pub dicut_vertices: usize,
    /// Vertex cap for scanning all 2^n cuts.
    pub cut_scan_vertices: usize,
    /// Edge cap for searches over all 2^m orientations.
    pub orientation_edges: usize,
    /// Cap on edges with both directions in use for SCO decomposition.
    pub sco_free_edges: usize,
    /// Cap on support arcs for SCD decomposition.
    pub scd_support: usize,
    /// Vertex cap for the mixed-graph explorer.
    pub mixed_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            dicut_vertices: 24,
            cut_scan_vertices: 20,
            orientation_edges: 24,
            sco_free_edges: 20,
            scd_support: 20,
            mixed_vertices: 20,
        }
    }
}

static LIMITS: RwLock<Option<Limits>> = RwLock::new(None);

pub fn limits() -> Limits {
    LIMITS
        .read()
        .map(|l| l.unwrap_or_default())
        .unwrap_or_default()
}

pub fn set_limits(l: Limits) {
    if let Ok(mut g) = LIMITS.write() {
        *g = Some(l);
    }
}
