//! Small standard groups used by the tests, the suite, and the CLI.

use super::perm::Perm;
use super::permgroup::PermGroup;
use crate::exact::{Cyc, ExactMatrix, Matrix};

fn cyc(n: usize, cycles: &[&[usize]]) -> Perm {
    Perm::from_cycles(n, cycles).expect("catalog permutation")
}

fn group(n: usize, gens: &[Perm]) -> PermGroup {
    PermGroup::generated_by(n, gens).expect("catalog group")
}

/// S_n = ⟨(1 2 … n), (1 2)⟩.
pub fn symmetric(n: usize) -> PermGroup {
    let full: Vec<usize> = (1..=n).collect();
    if n < 2 {
        return PermGroup::trivial(n);
    }
    group(n, &[cyc(n, &[&full]), cyc(n, &[&[1, 2]])])
}

/// Z_n acting regularly on {1..n} by the cycle (1 2 … n).
pub fn cyclic(n: usize) -> PermGroup {
    let full: Vec<usize> = (1..=n).collect();
    group(n, &[cyc(n, &[&full])])
}

/// The cyclic group generated by a single cycle inside S_degree.
pub fn cyclic_in(degree: usize, cycle: &[usize]) -> PermGroup {
    group(degree, &[cyc(degree, &[cycle])])
}

/// Symmetries of the n-gon with vertices 1..n in cyclic order: the rotation
/// (1 2 … n) and the reflection fixing vertex 1.
pub fn dihedral(n: usize) -> PermGroup {
    let full: Vec<usize> = (1..=n).collect();
    let mut images = vec![1];
    images.extend((2..=n).rev());
    let refl = Perm::from_images(&images).expect("reflection");
    group(n, &[cyc(n, &[&full]), refl])
}

/// The rotation subgroup of [`dihedral`].
pub fn rotations(n: usize) -> PermGroup {
    cyclic(n)
}

/// {1, αβ, αγ, βγ} ⊂ S_6 for α = (12), β = (34), γ = (56).
pub fn klein_s6() -> PermGroup {
    group(6, &[cyc(6, &[&[1, 2], &[3, 4]]), cyc(6, &[&[1, 2], &[5, 6]])])
}

/// The regular Klein four-group {e, (12)(34), (13)(24), (14)(23)} ⊂ S_4.
pub fn klein_s4() -> PermGroup {
    group(4, &[cyc(4, &[&[1, 2], &[3, 4]]), cyc(4, &[&[1, 3], &[2, 4]])])
}

/// Z_{d_1} × … × Z_{d_r} acting on consecutive disjoint blocks, one
/// generator per factor.
pub fn abelian_product(factors: &[usize]) -> PermGroup {
    let n: usize = factors.iter().sum();
    let mut start = 1;
    let mut gens = Vec::new();
    for &d in factors {
        let block: Vec<usize> = (start..start + d).collect();
        gens.push(if d > 1 { cyc(n, &[&block]) } else { Perm::identity(n) });
        start += d;
    }
    group(n, &gens)
}

/// S_3 × Z_2 on {1..5} with generators ((12),0), ((13),0), (e,1).
pub fn s3_times_z2() -> PermGroup {
    group(5, &[cyc(5, &[&[1, 2]]), cyc(5, &[&[1, 3]]), cyc(5, &[&[4, 5]])])
}

/// S_3 generated by the transpositions (12) and (13).
pub fn s3_transpositions() -> PermGroup {
    group(3, &[cyc(3, &[&[1, 2]]), cyc(3, &[&[1, 3]])])
}

/// Permutation matrix with `M e_j = e_{σ(j)}`.
pub fn permutation_matrix(p: &Perm) -> ExactMatrix {
    let n = p.degree();
    Matrix::from_fn(n, n, |r, c| if p.apply0(c) == r { Cyc::one() } else { Cyc::zero() })
}

/// Left regular representation λ(x) e_h = e_{xh}, indexed by element order.
pub fn regular_matrix(g: &PermGroup, x: usize) -> ExactMatrix {
    let n = g.order();
    Matrix::from_fn(n, n, |r, c| if g.mul_idx(x, c) == r { Cyc::one() } else { Cyc::zero() })
}
