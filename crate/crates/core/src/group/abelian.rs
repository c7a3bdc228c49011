//! Finitely generated abelian groups in coordinates, their character
//! duals, and coordinatization of abelian permutation groups.

use std::collections::VecDeque;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::permgroup::PermGroup;
use super::smith::smith_columns;
use crate::error::{Error, Result};
use crate::exact::Cyc;

/// Z^free_rank × Z_{d_1} × … × Z_{d_r}. Elements are exponent tuples with the
/// free coordinates first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    #[serde(default)]
    free_rank: usize,
    factors: Vec<u64>,
}

pub type Element = Vec<i64>;

impl AbelianGroup {
    pub fn new(free_rank: usize, factors: Vec<u64>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::Parse("torsion factors must be at least 1".into()));
        }
        Ok(AbelianGroup { free_rank, factors })
    }

    pub fn finite(factors: Vec<u64>) -> Result<Self> {
        Self::new(0, factors)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.free_rank + self.factors.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.factors.iter().product())
    }

    /// Least common multiple of the torsion factors.
    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |acc, &d| acc.lcm(&d))
    }

    pub fn identity(&self) -> Element {
        vec![0; self.rank()]
    }

    pub fn normalize(&self, mut v: Element) -> Element {
        for (x, &d) in v[self.free_rank..].iter_mut().zip(&self.factors) {
            *x = x.rem_euclid(d as i64);
        }
        v
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Element {
        self.normalize(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &[i64]) -> Element {
        self.normalize(a.iter().map(|x| -x).collect())
    }

    pub fn is_identity(&self, a: &[i64]) -> bool {
        self.normalize(a.to_vec()).iter().all(|&x| x == 0)
    }

    /// All elements of a finite group, last coordinate varying fastest.
    pub fn elements(&self) -> Result<Vec<Element>> {
        if !self.is_finite() {
            return Err(Error::FreePartPresent);
        }
        let mut out = vec![vec![]];
        for &d in &self.factors {
            out = out
                .into_iter()
                .flat_map(|prefix: Element| {
                    (0..d as i64).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        Ok(out)
    }
}

/// A character of a finite abelian group, `χ_a(g) = Π ζ_{d_i}^{a_i g_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharacterOf {
    pub exponents: Vec<u64>,
}

impl CharacterOf {
    pub fn trivial(group: &AbelianGroup) -> Self {
        CharacterOf { exponents: vec![0; group.factors().len()] }
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }

    /// Exponent k with χ(g) = ζ_n^k, n = exponent of the group.
    pub fn eval_exponent(&self, group: &AbelianGroup, g: &[i64]) -> i64 {
        let n = group.exponent() as i64;
        self.exponents
            .iter()
            .zip(group.factors())
            .zip(&g[group.free_rank()..])
            .map(|((&a, &d), &x)| a as i64 * x * (n / d as i64))
            .sum::<i64>()
            .rem_euclid(n)
    }

    pub fn eval(&self, group: &AbelianGroup, g: &[i64]) -> Cyc {
        Cyc::root_of_unity(group.exponent() as usize, self.eval_exponent(group, g))
    }

    /// Pointwise product of characters.
    pub fn mul(&self, other: &CharacterOf, group: &AbelianGroup) -> CharacterOf {
        CharacterOf {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .zip(group.factors())
                .map(|((a, b), d)| (a + b) % d)
                .collect(),
        }
    }
}

/// All |Λ| characters of a finite abelian group.
pub fn abelian_dual(group: &AbelianGroup) -> Result<Vec<CharacterOf>> {
    if !group.is_finite() {
        return Err(Error::FreePartPresent);
    }
    Ok(group
        .elements()?
        .into_iter()
        .map(|e| CharacterOf { exponents: e.into_iter().map(|x| x as u64).collect() })
        .collect())
}

/// Breadth-first potentials in Z^M along a spanning tree of the Cayley
/// graph, and the abelianized Schreier relations from every edge.
fn schreier_relations(g: &PermGroup) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let gens = g.generator_indices();
    let m = gens.len();
    let mut potential: Vec<Option<Vec<i64>>> = vec![None; g.order()];
    potential[0] = Some(vec![0; m]);
    let mut relations = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let px = potential[x].clone().expect("visited");
        for (i, &gi) in gens.iter().enumerate() {
            let y = g.mul_idx(x, gi);
            let mut step = px.clone();
            step[i] += 1;
            match &potential[y] {
                None => {
                    potential[y] = Some(step);
                    queue.push_back(y);
                }
                Some(py) => {
                    let rel: Vec<i64> = step.iter().zip(py).map(|(a, b)| a - b).collect();
                    if rel.iter().any(|&r| r != 0) {
                        relations.push(rel);
                    }
                }
            }
        }
    }
    (potential.into_iter().map(|p| p.expect("all reached")).collect(), relations)
}

fn smith_of(relations: &[Vec<i64>], m: usize) -> (Vec<i128>, Vec<Vec<i128>>) {
    let rel128 = relations.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    smith_columns(rel128, m)
}

/// The abelianization Γ/[Γ,Γ] computed from the generators of `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    /// Nontrivial invariant factors (0 would denote a free factor).
    pub invariant_factors: Vec<u64>,
    /// Abelianized relation vectors among the generators, in Z^M.
    pub relations: Vec<Vec<i64>>,
}

impl Abelianization {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// Whether g_i ↦ e_i extends to a homomorphism onto Z_K^M.
    pub fn surjects_onto_coordinates(&self, k: u64) -> bool {
        let k = k as i64;
        self.relations.iter().all(|r| r.iter().all(|x| x.rem_euclid(k) == 0))
    }
}

pub fn abelianization(g: &PermGroup) -> Abelianization {
    let m = g.generators().len();
    let (_, relations) = schreier_relations(g);
    let (diag, _) = smith_of(&relations, m);
    Abelianization { invariant_factors: diag.into_iter().filter(|&d| d != 1).map(|d| d as u64).collect(), relations }
}

/// An abelian permutation group identified with Z_{d_1} × … × Z_{d_r}.
#[derive(Clone, Debug)]
pub struct AbelianCoordinates {
    group: AbelianGroup,
    coords: Vec<Element>,
}

impl AbelianCoordinates {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Coordinates of the element with index `idx` in the permutation group.
    pub fn coords(&self, idx: usize) -> &[i64] {
        &self.coords[idx]
    }
}

/// Invariant-factor coordinates for an abelian permutation group.
pub fn coordinatize(lambda: &PermGroup) -> Result<AbelianCoordinates> {
    if !lambda.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let m = lambda.generators().len();
    let (potential, relations) = schreier_relations(lambda);
    let (diag, q) = smith_of(&relations, m);
    let keep: Vec<usize> = (0..m).filter(|&j| diag[j] != 1).collect();
    if keep.iter().any(|&j| diag[j] == 0) {
        return Err(Error::Inconsistent("finite group produced a free factor".into()));
    }
    let factors: Vec<u64> = keep.iter().map(|&j| diag[j] as u64).collect();
    let group = AbelianGroup::finite(factors)?;
    let coords = potential
        .iter()
        .map(|e| {
            let v = keep
                .iter()
                .map(|&j| {
                    let x: i128 = e.iter().zip(&q).map(|(&a, row)| i128::from(a) * row[j]).sum();
                    x.rem_euclid(diag[j]) as i64
                })
                .collect();
            v
        })
        .collect();
    Ok(AbelianCoordinates { group, coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;
    use std::collections::HashSet;

    #[test]
    fn dual_of_z3() {
        let z3 = AbelianGroup::finite(vec![3]).unwrap();
        let dual = abelian_dual(&z3).unwrap();
        assert_eq!(dual.len(), 3);
        for chi in &dual {
            for b in 0..3 {
                assert_eq!(chi.eval(&z3, &[b]), Cyc::root_of_unity(3, chi.exponents[0] as i64 * b));
            }
        }
    }

    #[test]
    fn dual_of_klein_is_real() {
        let v = AbelianGroup::finite(vec![2, 2]).unwrap();
        let dual = abelian_dual(&v).unwrap();
        assert_eq!(dual.len(), 4);
        for chi in &dual {
            for g in v.elements().unwrap() {
                let x = chi.eval(&v, &g);
                assert!(x == Cyc::one() || x == Cyc::integer(-1));
            }
        }
    }

    #[test]
    fn dual_of_trivial_group() {
        let t = AbelianGroup::finite(vec![]).unwrap();
        assert_eq!(abelian_dual(&t).unwrap().len(), 1);
        assert_eq!(abelian_dual(&AbelianGroup::new(1, vec![]).unwrap()).unwrap_err(), Error::FreePartPresent);
    }

    #[test]
    fn orthogonality_and_closure() {
        let g = AbelianGroup::finite(vec![2, 6]).unwrap();
        let dual = abelian_dual(&g).unwrap();
        let set: HashSet<_> = dual.iter().cloned().collect();
        assert_eq!(set.len(), 12);
        for a in &dual {
            for b in &dual {
                assert!(set.contains(&a.mul(b, &g)));
            }
            let sum = g.elements().unwrap().iter().fold(Cyc::zero(), |acc, x| &acc + &a.eval(&g, x));
            let expected = if a.is_trivial() { Cyc::integer(12) } else { Cyc::zero() };
            assert_eq!(sum, expected);
        }
    }

    #[test]
    fn coordinatize_z6_generated_by_two_elements() {
        // Z_6 = <(1 2 3 4 5 6)^2, (1 2 3 4 5 6)^3>
        let r = catalog::cyclic(6).generators()[0].clone();
        let r2 = r.compose(&r);
        let r3 = r2.compose(&r);
        let g = PermGroup::generated_by(6, &[r2, r3]).unwrap();
        let c = coordinatize(&g).unwrap();
        assert_eq!(c.group().order(), Some(6));
        let distinct: HashSet<_> = (0..g.order()).map(|i| c.coords(i).to_vec()).collect();
        assert_eq!(distinct.len(), 6);
        // coordinates are additive
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(c.group().add(c.coords(a), c.coords(b)), c.coords(g.mul_idx(a, b)));
            }
        }
    }

    #[test]
    fn coordinatize_rejects_nonabelian() {
        assert_eq!(coordinatize(&catalog::symmetric(3)).unwrap_err(), Error::NotAbelian);
    }

    #[test]
    fn abelianizations() {
        let s3 = PermGroup::generated_by(
            3,
            &[
                crate::group::Perm::from_cycles(3, &[&[1, 2]]).unwrap(),
                crate::group::Perm::from_cycles(3, &[&[1, 3]]).unwrap(),
            ],
        )
        .unwrap();
        let ab = abelianization(&s3);
        assert_eq!(ab.invariant_factors, vec![2]);
        assert!(!ab.surjects_onto_coordinates(2));
        let v = catalog::abelian_product(&[2, 2]);
        let ab = abelianization(&v);
        assert_eq!(ab.order(), 4);
        assert!(ab.surjects_onto_coordinates(2));
    }
}
