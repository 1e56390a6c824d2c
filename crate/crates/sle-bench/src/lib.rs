//! Fixed benchmark inputs, shared by the criterion benches.

use sle_core::gen::{gen_random, GenParams};
use sle_core::reductions::{reduce_3sat, reduce_mcc, CnfFormula, MccInput};
use sle_core::Instance;

/// Seeded random instances of a given shape. Seeds whose parameters turn out
/// infeasible are skipped, so fewer than `count` may come back.
pub fn random_family(n_h: usize, m_h: usize, ell: usize, n_add: usize, m_add: usize, count: u64) -> Vec<Instance> {
    (0..count).filter_map(|seed| gen_random(&GenParams { n_h, m_h, ell, n_add, m_add, seed }).ok()).collect()
}

/// `(x1 ∨ x2 ∨ x3) ∧ (¬x1 ∨ ¬x2 ∨ x3) ∧ (x1 ∨ ¬x2 ∨ ¬x3)`.
pub fn sat_instance() -> Instance {
    let phi = CnfFormula::new(3, vec![[1, 2, 3], [-1, -2, 3], [1, -2, -3]]).expect("formula");
    reduce_3sat(&phi).expect("reduction").0
}

/// Two color classes of size two with a single cross edge.
pub fn mcc_instance() -> Instance {
    let names = ["a1", "a2", "b1", "b2"].map(String::from).to_vec();
    let inp = MccInput::new(2, names, vec![1, 1, 2, 2], vec![(1, 2)]).expect("colored graph");
    reduce_mcc(&inp).expect("reduction").0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(random_family(6, 5, 2, 2, 3, 4).len(), 4);
        assert_eq!(sat_instance().n_add(), 2);
        assert_eq!(mcc_instance().n_add(), 2);
    }
}
