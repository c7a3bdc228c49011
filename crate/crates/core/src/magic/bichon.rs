use super::model::{verify_magic, MagicModel, OrbitStructure};
use crate::error::{Error, Result};
use crate::exact::matrix::fourier_combinations;
use crate::exact::{Matrix, Scalar};

/// Block-diagonal magic unitary from finite-order unitaries U_1..U_M: block i
/// has entry (r, c) = (1/K_i) Σ_a ζ_{K_i}^{(c−r)a} U_i^a.
pub fn bichon_build<S: Scalar>(sizes: &[usize], generators: &[Matrix<S>], tol: f64) -> Result<MagicModel<S>> {
    if sizes.len() != generators.len() || sizes.is_empty() {
        return Err(Error::ShapeMismatch("one size per generator image required".into()));
    }
    let d = generators[0].rows();
    if generators.iter().any(|u| u.rows() != d || u.cols() != d) {
        return Err(Error::ShapeMismatch(format!("generator images must all be {d}x{d}")));
    }
    let n: usize = sizes.iter().sum();
    let mut entries = vec![Matrix::<S>::zeros(d, d); n * n];
    let mut start = 0;
    for (&k, u) in sizes.iter().zip(generators) {
        let powers = u.finite_order_powers(k, tol)?;
        // shifted[s] = (1/k) Σ_a ζ^{s·a} U^a
        let shifted = fourier_combinations(&powers, k, 1);
        for r in 0..k {
            for c in 0..k {
                entries[(start + r) * n + start + c] = shifted[(c + k - r) % k].clone();
            }
        }
        start += k;
    }
    let model = MagicModel::single(n, d, entries)?.with_orbits(OrbitStructure::dual(sizes));
    let report = verify_magic(&model, tol);
    if !report.pass {
        return Err(Error::Inconsistent(format!("constructed model is not magic: {:?}", report.violations[0])));
    }
    Ok(model)
}
