use rayon::prelude::*;

use crate::group::{ClassData, FiniteGroup};

/// The class multiplication matrix of class `i`: entry `(j, m)` counts pairs
/// `(x, y) ∈ C_i × C_j` with `x·y = z_m` for the fixed representative `z_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMatrix {
    pub index: usize,
    pub k: usize,
    pub entries: Vec<u64>,
}

impl ClassMatrix {
    pub fn get(&self, j: usize, m: usize) -> u64 {
        self.entries[j * self.k + m]
    }
}

/// Class matrix for one class: for each `x ∈ C_i` and each target `z_m`,
/// `y = x⁻¹·z_m` is counted in the column of its class.
pub fn class_matrix(g: &FiniteGroup, data: &ClassData, i: usize) -> ClassMatrix {
    let k = data.len();
    let reps: Vec<u32> = data.classes().iter().map(|c| c.representative).collect();
    let mut entries = vec![0u64; k * k];
    for &x in &data.class(i).members {
        let xi = g.inverse(x);
        for (m, &z) in reps.iter().enumerate() {
            let j = data.class_of(g.mul(xi, z));
            entries[j * k + m] += 1;
        }
    }
    ClassMatrix { index: i, k, entries }
}

/// All class matrices, built in parallel over classes.
pub fn class_matrices(g: &FiniteGroup, data: &ClassData) -> Vec<ClassMatrix> {
    (0..data.len())
        .into_par_iter()
        .map(|i| class_matrix(g, data, i))
        .collect()
}
