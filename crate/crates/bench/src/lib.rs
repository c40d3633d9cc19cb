//! Benchmark fixtures shared by the criterion targets.

use hgc_core::{enumerate, Flavor, HairyGraph, Parameters, Sector, Window};

/// Every basis graph of the `(2,5)` flavor-A window with the given bounds.
pub fn window_graphs(max_v: usize, max_h: usize) -> Vec<HairyGraph> {
    let p = Parameters::new(2, 5).expect("valid parameters");
    let w = Window::new(p, Flavor::A, Sector::All, max_v, max_h).expect("valid window");
    enumerate(&w).expect("enumerates").into_values().flat_map(|s| s.graphs).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixture_is_nonempty() {
        assert!(!super::window_graphs(2, 3).is_empty());
    }
}
