//! Shared workloads for the criterion benchmarks under `benches/`.

use parahoric_core::{AffineWeylElement, AffineWeylGroup};

/// A group together with every element of length at most `max_len`.
pub struct Workload {
    pub group: AffineWeylGroup,
    pub elements: Vec<AffineWeylElement>,
}

impl Workload {
    pub fn new(spec: &str, max_len: usize) -> Self {
        let group = AffineWeylGroup::preset(spec).expect("valid preset");
        let elements = group.elements_up_to_length(max_len).expect("within cap");
        Workload { group, elements }
    }

    /// Elements of length exactly `len`.
    pub fn of_length(&self, len: usize) -> Vec<&AffineWeylElement> {
        self.elements.iter().filter(|w| self.group.length(w) == len).collect()
    }
}
