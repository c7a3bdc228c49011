use std::collections::{HashMap, VecDeque};

use super::perm::Perm;
use super::table::TableGroup;
use crate::error::{Error, Result};

/// Default enumeration bound, |S_8|.
pub const DEFAULT_CAP: usize = 20160;

/// A finite permutation group, fully enumerated.
///
/// Elements are listed breadth-first from the identity, multiplying on the
/// right by the generators in the order given.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

/// Closure of `gens` inside S_degree, bounded by `cap` elements.
pub fn generate(degree: usize, gens: &[Perm], cap: usize) -> Result<PermGroup> {
    if cap == 0 {
        return Err(Error::CapExceeded { cap });
    }
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
    }
    let id = Perm::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = elements[x].compose(g);
            if index.contains_key(&y) {
                continue;
            }
            if elements.len() == cap {
                return Err(Error::CapExceeded { cap });
            }
            index.insert(y.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(y);
        }
    }
    Ok(PermGroup { degree, generators: gens.to_vec(), elements, index })
}

impl PermGroup {
    /// Convenience constructor with the default cap.
    pub fn generated_by(degree: usize, gens: &[Perm]) -> Result<Self> {
        generate(degree, gens, DEFAULT_CAP)
    }

    pub fn trivial(degree: usize) -> Self {
        generate(degree, &[], 1).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, idx: usize) -> &Perm {
        &self.elements[idx]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    /// Index of the product of two elements given by index.
    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inv_idx(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> bool {
        self.degree == g.degree && self.elements.iter().all(|x| g.contains(x))
    }

    /// Generator indices as elements of this group.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    /// Cayley table, for small groups.
    pub fn to_table(&self) -> TableGroup {
        let n = self.order();
        let table = (0..n).map(|a| (0..n).map(|b| self.mul_idx(a, b)).collect()).collect();
        TableGroup::from_table(table).expect("permutation groups have valid tables")
    }
}

/// `gHg⁻¹ = H` for every generator g of G.
pub fn is_normal(h: &PermGroup, g: &PermGroup) -> Result<bool> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup("H is not contained in G".into()));
    }
    Ok(g.generators().iter().all(|x| {
        let xi = x.inverse();
        h.generators().iter().all(|y| h.contains(&x.compose(y).compose(&xi)))
    }))
}

/// Coset representatives of G/Λ together with the quotient group.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// First element of each coset in G's enumeration order; identity first.
    pub representatives: Vec<Perm>,
    /// Coset index of each element of G, by element index.
    pub coset_of: Vec<usize>,
    pub table: TableGroup,
}

pub fn quotient_data(g: &PermGroup, lambda: &PermGroup) -> Result<Quotient> {
    if !is_normal(lambda, g)? {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut representatives = Vec::new();
    for (idx, x) in g.elements().iter().enumerate() {
        if coset_of[idx] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(x.clone());
        for l in lambda.elements() {
            coset_of[g.index[&x.compose(l)]] = c;
        }
    }
    let table = representatives
        .iter()
        .map(|a| representatives.iter().map(|b| coset_of[g.index[&a.compose(b)]]).collect())
        .collect();
    let table = TableGroup::from_table(table)?;
    Ok(Quotient { representatives, coset_of, table })
}

/// Orbits of G on {1..N}, as sorted blocks ordered by their minimum.
pub fn orbits_classical(g: &PermGroup) -> Vec<Vec<usize>> {
    let n = g.degree();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for gen in g.generators() {
        for p in 0..n {
            let (a, b) = (find(&mut parent, p), find(&mut parent, gen.apply0(p)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of_root = HashMap::new();
    for p in 0..n {
        let r = find(&mut parent, p);
        let b = *block_of_root.entry(r).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[b].push(p + 1);
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn empty_generating_set() {
        let g = generate(3, &[], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn klein_in_s6_enumeration_order() {
        let g = catalog::klein_s6();
        let names: Vec<String> = g.elements().iter().map(ToString::to_string).collect();
        assert_eq!(names, ["()", "(1 2)(3 4)", "(1 2)(5 6)", "(3 4)(5 6)"]);
    }

    #[test]
    fn s3_has_order_six() {
        let g = PermGroup::generated_by(
            3,
            &[Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap(), Perm::from_cycles(3, &[&[1, 2]]).unwrap()],
        )
        .unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn cap_and_degree_errors() {
        let s4 = [Perm::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap(), Perm::from_cycles(4, &[&[1, 2]]).unwrap()];
        assert_eq!(generate(4, &s4, 23).unwrap_err(), Error::CapExceeded { cap: 23 });
        assert_eq!(generate(4, &s4, 24).unwrap().order(), 24);
        assert_eq!(generate(5, &s4, 100).unwrap_err(), Error::DegreeMismatch { expected: 5, found: 4 });
    }

    #[test]
    fn normality() {
        let s3 = catalog::symmetric(3);
        let a3 = catalog::cyclic_in(3, &[1, 2, 3]);
        let t = PermGroup::generated_by(3, &[Perm::from_cycles(3, &[&[1, 2]]).unwrap()]).unwrap();
        assert!(is_normal(&a3, &s3).unwrap());
        assert!(!is_normal(&t, &s3).unwrap());
        let z6 = catalog::cyclic(6);
        let sub = PermGroup::generated_by(6, &[z6.generators()[0].compose(&z6.generators()[0])]).unwrap();
        assert!(is_normal(&sub, &z6).unwrap());
        assert!(matches!(is_normal(&s3, &a3), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn quotients() {
        let s3 = catalog::symmetric(3);
        let q = quotient_data(&s3, &catalog::cyclic_in(3, &[1, 2, 3])).unwrap();
        assert_eq!(q.representatives.len(), 2);
        assert!(q.representatives[0].is_identity());
        assert!(q.table.is_isomorphic_to(&TableGroup::cyclic(2)));

        let d4 = catalog::dihedral(4);
        let q = quotient_data(&d4, &catalog::cyclic(4)).unwrap();
        assert!(q.table.is_isomorphic_to(&TableGroup::cyclic(2)));

        let q = quotient_data(&d4, &d4).unwrap();
        assert_eq!(q.representatives.len(), 1);

        let t = PermGroup::generated_by(3, &[Perm::from_cycles(3, &[&[1, 2]]).unwrap()]).unwrap();
        assert_eq!(quotient_data(&s3, &t).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn orbits() {
        assert_eq!(orbits_classical(&catalog::klein_s6()), vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
        assert_eq!(orbits_classical(&catalog::dihedral(5)), vec![vec![1, 2, 3, 4, 5]]);
        assert_eq!(orbits_classical(&PermGroup::trivial(3)), vec![vec![1], vec![2], vec![3]]);
    }
}
