use std::collections::VecDeque;

use super::perm::Perm;
use super::permgroup::PermGroup;
use super::table::TableGroup;
use crate::error::{Error, Result};

/// An automorphism of a [`PermGroup`], stored as a map on element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoMap {
    generator_images: Vec<Perm>,
    map: Vec<usize>,
}

/// Extends `generator_images` (one per generator of `g`) to an automorphism,
/// propagating breadth-first over products and checking consistency.
pub fn extend_automorphism(g: &PermGroup, generator_images: &[Perm]) -> Result<AutoMap> {
    if generator_images.len() != g.generators().len() {
        return Err(Error::NotWellDefined(format!(
            "{} images for {} generators",
            generator_images.len(),
            g.generators().len()
        )));
    }
    let images: Vec<usize> =
        generator_images.iter().map(|p| g.index_of(p).ok_or(Error::NotInGroup)).collect::<Result<_>>()?;
    let gens = g.generator_indices();
    let mut map = vec![usize::MAX; g.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&gi, &img) in gens.iter().zip(&images) {
            let y = g.mul_idx(x, gi);
            let target = g.mul_idx(map[x], img);
            if map[y] == usize::MAX {
                map[y] = target;
                queue.push_back(y);
            } else if map[y] != target {
                return Err(Error::NotWellDefined(format!(
                    "{} would map to both {} and {}",
                    g.element(y),
                    g.element(map[y]),
                    g.element(target)
                )));
            }
        }
    }
    let mut hit = vec![false; g.order()];
    for &m in &map {
        if hit[m] {
            return Err(Error::NotBijective);
        }
        hit[m] = true;
    }
    Ok(AutoMap { generator_images: generator_images.to_vec(), map })
}

impl AutoMap {
    pub fn identity(g: &PermGroup) -> Self {
        AutoMap { generator_images: g.generators().to_vec(), map: (0..g.order()).collect() }
    }

    /// Conjugation `x ↦ c x c⁻¹` by an element of the ambient symmetric group
    /// normalizing `g`.
    pub fn conjugation(g: &PermGroup, c: &Perm) -> Result<Self> {
        let ci = c.inverse();
        let images: Vec<Perm> = g.generators().iter().map(|x| c.compose(x).compose(&ci)).collect();
        extend_automorphism(g, &images)
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.generator_images
    }

    pub fn apply(&self, idx: usize) -> usize {
        self.map[idx]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AutoMap, g: &PermGroup) -> AutoMap {
        let map: Vec<usize> = other.map.iter().map(|&x| self.map[x]).collect();
        AutoMap { generator_images: Self::images_of(&map, g), map }
    }

    pub fn inverse(&self, g: &PermGroup) -> AutoMap {
        let mut map = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            map[y] = x;
        }
        AutoMap { generator_images: Self::images_of(&map, g), map }
    }

    pub fn power(&self, t: usize, g: &PermGroup) -> AutoMap {
        (0..t).fold(AutoMap::identity(g), |acc, _| self.compose(&acc, g))
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn order(&self, g: &PermGroup) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.compose(&p, g);
            k += 1;
        }
        k
    }

    /// Checks σ(xy) = σ(x)σ(y) on the full multiplication table.
    pub fn is_multiplicative(&self, g: &PermGroup) -> bool {
        (0..g.order()).all(|x| (0..g.order()).all(|y| self.map[g.mul_idx(x, y)] == g.mul_idx(self.map[x], self.map[y])))
    }

    fn images_of(map: &[usize], g: &PermGroup) -> Vec<Perm> {
        g.generator_indices().iter().map(|&i| g.element(map[i]).clone()).collect()
    }
}

/// L ⋊_σ Z_K with elements `(x, t)` at index `x·K + t` and product
/// `(x,t)(y,s) = (x·σ^t(y), t+s)`.
pub fn semidirect(l: &PermGroup, sigma: &AutoMap, k: usize) -> Result<TableGroup> {
    if k == 0 || !sigma.power(k, l).is_identity() {
        return Err(Error::OrderMismatch { k });
    }
    let powers: Vec<AutoMap> = (0..k).map(|t| sigma.power(t, l)).collect();
    let n = l.order() * k;
    let table = (0..n)
        .map(|a| {
            let (x, t) = (a / k, a % k);
            (0..n)
                .map(|b| {
                    let (y, s) = (b / k, b % k);
                    l.mul_idx(x, powers[t].apply(y)) * k + (t + s) % k
                })
                .collect()
        })
        .collect();
    TableGroup::from_table(table)
}
