//! Matrix representations of enumerated permutation groups.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::group::PermGroup;

/// ρ: G → U_d given on every element, built from generator images.
#[derive(Clone, Debug)]
pub struct Representation<S> {
    group: PermGroup,
    images: Vec<Matrix<S>>,
}

impl<S: Scalar> Representation<S> {
    /// Extends `generator_images` (one per generator of `group`) to all of
    /// `group`, rejecting non-unitary images and inconsistent relations.
    pub fn from_generators(group: &PermGroup, generator_images: &[Matrix<S>], tol: f64) -> Result<Self> {
        let gens = group.generator_indices();
        if generator_images.len() != gens.len() {
            return Err(Error::NotRepresentation(format!(
                "{} images for {} generators",
                generator_images.len(),
                gens.len()
            )));
        }
        let d = generator_images.first().map_or(1, Matrix::rows);
        for m in generator_images {
            if m.rows() != d || m.cols() != d {
                return Err(Error::NotRepresentation(format!("generator images must all be {d}x{d}")));
            }
            if !m.is_unitary(tol) {
                return Err(Error::NotUnitary);
            }
        }
        let mut images: Vec<Option<Matrix<S>>> = vec![None; group.order()];
        images[0] = Some(Matrix::identity(d));
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&gi, m) in gens.iter().zip(generator_images) {
                let y = group.mul_idx(x, gi);
                let target = images[x].as_ref().expect("visited") * m;
                match &images[y] {
                    None => {
                        images[y] = Some(target);
                        queue.push_back(y);
                    }
                    Some(existing) if !existing.approx_eq(&target, tol) => {
                        return Err(Error::NotRepresentation(format!("relation violated at {}", group.element(y))));
                    }
                    Some(_) => {}
                }
            }
        }
        let images = images.into_iter().map(|m| m.expect("closure reaches every element")).collect();
        Ok(Representation { group: group.clone(), images })
    }

    /// Permutation-matrix representation of a permutation group on its points.
    pub fn permutation(group: &PermGroup) -> Self {
        let images = group
            .elements()
            .iter()
            .map(|p| {
                let n = p.degree();
                Matrix::from_fn(n, n, |r, c| if p.apply0(c) == r { S::one() } else { S::zero() })
            })
            .collect();
        Representation { group: group.clone(), images }
    }

    /// Left regular representation, basis ordered as the group's elements.
    pub fn regular(group: &PermGroup) -> Self {
        let n = group.order();
        let images = (0..n)
            .map(|x| Matrix::from_fn(n, n, |r, c| if group.mul_idx(x, c) == r { S::one() } else { S::zero() }))
            .collect();
        Representation { group: group.clone(), images }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.images[0].rows()
    }

    pub fn image(&self, idx: usize) -> &Matrix<S> {
        &self.images[idx]
    }

    pub fn images(&self) -> &[Matrix<S>] {
        &self.images
    }

    pub fn is_multiplicative(&self, tol: f64) -> bool {
        let n = self.group.order();
        (0..n).all(|a| {
            (0..n).all(|b| (&self.images[a] * &self.images[b]).approx_eq(&self.images[self.group.mul_idx(a, b)], tol))
        })
    }

    pub fn to_float(&self) -> Representation<num_complex::Complex64> {
        Representation { group: self.group.clone(), images: self.images.iter().map(Matrix::to_float).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Cyc, ExactMatrix};
    use crate::group::catalog;

    #[test]
    fn regular_and_permutation_are_representations() {
        let g = catalog::dihedral(4);
        assert!(Representation::<Cyc>::regular(&g).is_multiplicative(0.0));
        assert!(Representation::<Cyc>::permutation(&g).is_multiplicative(0.0));
        assert_eq!(Representation::<Cyc>::regular(&g).dim(), 8);
    }

    #[test]
    fn from_generators_matches_regular() {
        let g = catalog::cyclic(5);
        let reg = Representation::<Cyc>::regular(&g);
        let gi = g.generator_indices()[0];
        let built = Representation::from_generators(&g, &[reg.image(gi).clone()], 0.0).unwrap();
        for x in 0..5 {
            assert_eq!(built.image(x), reg.image(x));
        }
    }

    #[test]
    fn rejects_wrong_order() {
        let g = catalog::cyclic(5);
        let z3 = ExactMatrix::diag(&[Cyc::root_of_unity(3, 1)]);
        assert!(matches!(Representation::from_generators(&g, &[z3], 0.0), Err(Error::NotRepresentation(_))));
        let not_unitary = ExactMatrix::diag(&[Cyc::integer(2)]);
        assert_eq!(Representation::from_generators(&g, &[not_unitary], 0.0).unwrap_err(), Error::NotUnitary);
    }
}
