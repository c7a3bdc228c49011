use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A finite group given by its Cayley table. Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableGroup {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl TableGroup {
    /// Validates closure, identity at index 0, inverses, and associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let bad = |msg: &str| Err(Error::NotWellDefined(format!("not a group table: {msg}")));
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("shape");
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return bad("element 0 is not the identity");
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0) {
                Some(b) if table[b][a] == 0 => inverses[a] = b,
                _ => return bad("missing inverse"),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return bad("not associative");
                    }
                }
            }
        }
        Ok(TableGroup { table, inverses })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table).expect("cyclic table")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != 0 {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// A generating set picked greedily in index order.
    pub fn generating_set(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut span = vec![false; n];
        span[0] = true;
        for a in 1..n {
            if !span[a] {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.table[x][g];
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Extends generator images to a homomorphism into `other`, if one exists.
    pub fn extend_hom(&self, gens: &[usize], images: &[usize], other: &TableGroup) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order()];
        map[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.table[x][g];
                let target = other.table[map[x]][img];
                if map[y] == usize::MAX {
                    map[y] = target;
                    queue.push_back(y);
                } else if map[y] != target {
                    return None;
                }
            }
        }
        map.iter().all(|&m| m != usize::MAX).then_some(map)
    }

    /// Brute-force isomorphism test, intended for small groups.
    pub fn is_isomorphic_to(&self, other: &TableGroup) -> bool {
        if self.order() != other.order() {
            return false;
        }
        let mut a: Vec<usize> = (0..self.order()).map(|x| self.element_order(x)).collect();
        let mut b: Vec<usize> = (0..other.order()).map(|x| other.element_order(x)).collect();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return false;
        }
        let gens = self.generating_set();
        let mut images = Vec::with_capacity(gens.len());
        self.search_iso(&gens, &mut images, other)
    }

    fn search_iso(&self, gens: &[usize], images: &mut Vec<usize>, other: &TableGroup) -> bool {
        if images.len() == gens.len() {
            return match self.extend_hom(gens, images, other) {
                Some(map) => {
                    let mut hit = vec![false; other.order()];
                    map.iter().for_each(|&m| hit[m] = true);
                    hit.iter().all(|&h| h)
                }
                None => false,
            };
        }
        let want = self.element_order(gens[images.len()]);
        for cand in 0..other.order() {
            if other.element_order(cand) == want {
                images.push(cand);
                if self.search_iso(gens, images, other) {
                    return true;
                }
                images.pop();
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_groups() {
        assert!(TableGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(TableGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn cyclic_isomorphism() {
        let z6 = TableGroup::cyclic(6);
        assert!(z6.is_abelian());
        assert_eq!(z6.element_order(2), 3);
        assert!(z6.is_isomorphic_to(&TableGroup::cyclic(6)));
        assert!(!z6.is_isomorphic_to(&TableGroup::cyclic(5)));
    }
}
