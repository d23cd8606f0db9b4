//! Finite groups given by multiplication tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cap on the order of any group handled here (exhaustive verification is cubic in the order).
pub const MAX_GROUP_ORDER: usize = 256;

/// A finite group on the index set `0..n`; `table[a][b]` is the index of `a·b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupTable", into = "GroupTable")]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

/// Wire form: `{"table": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    pub table: Vec<Vec<usize>>,
}

impl TryFrom<GroupTable> for FiniteGroup {
    type Error = Error;
    fn try_from(t: GroupTable) -> Result<Self> {
        FiniteGroup::from_table(t.table)
    }
}

impl From<FiniteGroup> for GroupTable {
    fn from(g: FiniteGroup) -> Self {
        GroupTable { table: g.table }
    }
}

impl FiniteGroup {
    /// Validates associativity, identity and inverses exhaustively.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::GroupTooLarge {
                order: n,
                cap: MAX_GROUP_ORDER,
            });
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {a} has length {}",
                    row.len()
                )));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!(
                    "entry {x} out of range in row {a}"
                )));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverses,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(table).expect("cyclic group table")
    }

    /// Dihedral group of order `2n`; element `k + n·s` is `r^k s^s`, with `s r s = r^{-1}`.
    pub fn dihedral(n: usize) -> Self {
        let idx = |k: usize, s: usize| k % n + n * s;
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for s1 in 0..2 {
            for k1 in 0..n {
                for s2 in 0..2 {
                    for k2 in 0..n {
                        // r^k1 s^s1 r^k2 s^s2 = r^(k1 ± k2) s^(s1+s2)
                        let k = if s1 == 0 { k1 + k2 } else { k1 + n - k2 };
                        table[idx(k1, s1)][idx(k2, s2)] = idx(k, (s1 + s2) % 2);
                    }
                }
            }
        }
        Self::from_table(table).expect("dihedral group table")
    }

    /// Dicyclic group of order `4n` (quaternion group for `n = 2`):
    /// `a^k x^e` with `a^{2n} = 1`, `x^2 = a^n`, `x a x^{-1} = a^{-1}`; index `k + 2n·e`.
    pub fn dicyclic(n: usize) -> Self {
        let m = 2 * n;
        let idx = |k: usize, e: usize| k % m + m * e;
        let mut table = vec![vec![0; 2 * m]; 2 * m];
        for e1 in 0..2 {
            for k1 in 0..m {
                for e2 in 0..2 {
                    for k2 in 0..m {
                        let k = if e1 == 0 { k1 + k2 } else { k1 + m - k2 };
                        let (k, e) = if e1 + e2 == 2 {
                            (k + n, 0)
                        } else {
                            (k, e1 + e2)
                        };
                        table[idx(k1, e1)][idx(k2, e2)] = idx(k, e);
                    }
                }
            }
        }
        Self::from_table(table).expect("dicyclic group table")
    }

    pub fn quaternion() -> Self {
        Self::dicyclic(2)
    }

    pub fn klein_four() -> Self {
        Self::direct_product(&Self::cyclic(2), &Self::cyclic(2))
    }

    /// Group of permutations of `0..n` given by a generating set, closed under composition.
    /// Composition convention: `(a·b)(i) = a(b(i))`.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<(Self, Vec<Vec<usize>>)> {
        let n = generators.first().map_or(0, Vec::len);
        let id: Vec<usize> = (0..n).collect();
        let mut elements = vec![id];
        let mut i = 0;
        while i < elements.len() {
            for g in generators {
                let prod: Vec<usize> = (0..n).map(|x| g[elements[i][x]]).collect();
                if !elements.contains(&prod) {
                    elements.push(prod);
                    if elements.len() > MAX_GROUP_ORDER {
                        return Err(Error::GroupTooLarge {
                            order: elements.len(),
                            cap: MAX_GROUP_ORDER,
                        });
                    }
                }
            }
            i += 1;
        }
        let table = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        let ab: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
                        elements.iter().position(|e| *e == ab).unwrap()
                    })
                    .collect()
            })
            .collect();
        Ok((Self::from_table(table)?, elements))
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        } else {
            gens.push((0..n).collect());
        }
        Self::from_permutations(&gens).expect("symmetric group").0
    }

    pub fn alternating4() -> Self {
        let gens = vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]];
        Self::from_permutations(&gens).expect("alternating group").0
    }

    /// Direct product; element `(a, b)` has index `a * |h| + b`.
    pub fn direct_product(g: &Self, h: &Self) -> Self {
        let (n, m) = (g.order(), h.order());
        let mut table = vec![vec![0; n * m]; n * m];
        for a1 in 0..n {
            for b1 in 0..m {
                for a2 in 0..n {
                    for b2 in 0..m {
                        table[a1 * m + b1][a2 * m + b2] = g.mul(a1, a2) * m + h.mul(b1, b2);
                    }
                }
            }
        }
        Self::from_table(table).expect("direct product table")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_central(&self, z: usize) -> bool {
        self.elements().all(|a| self.mul(a, z) == self.mul(z, a))
    }

    /// Inner automorphism `x ↦ g x g^{-1}` as an index map.
    pub fn conjugation(&self, g: usize) -> Vec<usize> {
        let gi = self.inv(g);
        self.elements()
            .map(|x| self.mul(self.mul(g, x), gi))
            .collect()
    }

    /// Greedy generating set (each generator enlarges the generated subgroup).
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in self.elements() {
            if !span.contains(&a) {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Subgroup generated by `gens`, as a sorted list of elements.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                let x = self.mul(out[i], g);
                if !seen[x] {
                    seen[x] = true;
                    out.push(x);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Whether `map: self → other` is a group homomorphism.
    pub fn is_homomorphism(&self, other: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order()
            && map.iter().all(|&x| x < other.order())
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b]))
            })
    }

    /// Whether the index map is a bijective endomorphism.
    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        let mut hit = vec![false; self.order()];
        for &x in map {
            if x >= self.order() || hit[x] {
                return false;
            }
            hit[x] = true;
        }
        self.is_homomorphism(self, map)
    }

    /// All automorphisms, found by assigning generator images of matching order.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut out = Vec::new();
        let mut images = Vec::with_capacity(gens.len());
        self.extend_automorphisms(&gens, &mut images, &mut out);
        out.sort();
        out
    }

    fn extend_automorphisms(
        &self,
        gens: &[usize],
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if images.len() == gens.len() {
            if let Some(map) = self.extend_from_generators(gens, images) {
                if self.is_automorphism(&map) {
                    out.push(map);
                }
            }
            return;
        }
        let g = gens[images.len()];
        let ord = self.element_order(g);
        for x in self.elements() {
            if self.element_order(x) == ord {
                images.push(x);
                self.extend_automorphisms(gens, images, out);
                images.pop();
            }
        }
    }

    /// Extends generator images multiplicatively; `None` when the assignment is inconsistent.
    fn extend_from_generators(&self, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        map[self.identity] = self.identity;
        let mut queue = vec![self.identity];
        let mut i = 0;
        while i < queue.len() {
            let a = queue[i];
            for (&g, &img) in gens.iter().zip(images) {
                let b = self.mul(a, g);
                let fb = self.mul(map[a], img);
                if map[b] == usize::MAX {
                    map[b] = fb;
                    queue.push(b);
                } else if map[b] != fb {
                    return None;
                }
            }
            i += 1;
        }
        Some(map)
    }

    /// Composition of index maps: `(f ∘ g)(x) = f(g(x))`.
    pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
        g.iter().map(|&x| f[x]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn involutions(g: &FiniteGroup) -> usize {
        g.elements().filter(|&a| g.element_order(a) == 2).count()
    }

    #[test]
    fn standard_families() {
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert_eq!(involutions(&FiniteGroup::dihedral(4)), 5);
        assert_eq!(involutions(&FiniteGroup::quaternion()), 1);
        assert_eq!(FiniteGroup::dicyclic(3).order(), 12);
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
        assert_eq!(FiniteGroup::alternating4().order(), 12);
        assert!(!FiniteGroup::alternating4().is_abelian());
        assert!(FiniteGroup::klein_four().is_abelian());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(FiniteGroup::cyclic(12).automorphisms().len(), 4);
        assert_eq!(FiniteGroup::klein_four().automorphisms().len(), 6);
        assert_eq!(FiniteGroup::quaternion().automorphisms().len(), 24);
        assert_eq!(FiniteGroup::symmetric(3).automorphisms().len(), 6);
        assert_eq!(FiniteGroup::alternating4().automorphisms().len(), 24);
    }

    #[test]
    fn rejects_non_groups() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table(bad).is_err());
        let nonassoc = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]];
        assert!(FiniteGroup::from_table(nonassoc).is_err());
    }
}
