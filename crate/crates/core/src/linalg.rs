//! Exact sparse linear algebra over the rationals: incremental echelon forms,
//! rank and homogeneous nullspaces.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::rational::Q;

pub type SparseVec<K> = BTreeMap<K, Q>;

/// v ← v + c·w
pub fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &Q, w: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        let e = v.entry(k.clone()).or_insert_with(Q::zero);
        *e += c * x;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

/// Row echelon form built one vector at a time. Each stored row has its
/// smallest key as pivot, with pivot coefficient 1.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Remainder of v after reduction against the stored rows.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut v = v.clone();
        let mut done: SparseVec<K> = BTreeMap::new();
        // Pop the smallest key each round; if it is a pivot, eliminate it.
        while let Some((k, c)) = v.pop_first() {
            match self.rows.get(&k) {
                Some(row) => {
                    let c = -c;
                    for (kk, x) in row.iter().skip(1) {
                        let e = v.entry(kk.clone()).or_insert_with(Q::zero);
                        *e += &c * x;
                        if e.is_zero() {
                            v.remove(kk);
                        }
                    }
                }
                None => {
                    done.insert(k, c);
                }
            }
        }
        done
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts v; returns true when it was independent of the stored rows.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let mut r = self.reduce(v);
        let Some((k, p)) = r.iter().next().map(|(k, p)| (k.clone(), p.clone())) else {
            return false;
        };
        let inv = p.recip();
        for x in r.values_mut() {
            *x *= &inv;
        }
        self.rows.insert(k, r);
        true
    }

    /// Reduced rows: every pivot column is zero in the other rows.
    pub fn into_reduced(self) -> Vec<(K, SparseVec<K>)> {
        let keys: Vec<K> = self.rows.keys().cloned().collect();
        let mut rows = self.rows;
        // Back substitution from the last pivot upward.
        for i in (0..keys.len()).rev() {
            let pivot_row = rows[&keys[i]].clone();
            for key in keys.iter().take(i) {
                let row = rows.get_mut(key).unwrap();
                if let Some(c) = row.get(&keys[i]).cloned() {
                    axpy(row, &-c, &pivot_row);
                }
            }
        }
        rows.into_iter().collect()
    }
}

/// Rank of a list of sparse vectors.
pub fn rank<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of {x : Σ_j eq[j]·x_j = 0 for every equation}, over unknowns 0..n.
pub fn nullspace(equations: &[SparseVec<usize>], n: usize) -> Vec<Vec<Q>> {
    let mut e = Echelon::new();
    for eq in equations {
        e.insert(eq);
    }
    let reduced = e.into_reduced();
    let pivots: BTreeSet<usize> = reduced.iter().map(|(k, _)| *k).collect();
    let mut basis = Vec::new();
    for free in (0..n).filter(|j| !pivots.contains(j)) {
        let mut x = vec![Q::zero(); n];
        x[free] = Q::one();
        for (p, row) in &reduced {
            if let Some(c) = row.get(&free) {
                x[*p] = -c.clone();
            }
        }
        basis.push(x);
    }
    basis
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Same result space as `nullspace`, but unknowns that never share an equation
/// are solved separately. Large structure-algebra systems split into many
/// small blocks this way.
pub fn nullspace_by_components(equations: &[SparseVec<usize>], n: usize) -> Vec<Vec<Q>> {
    let mut uf = UnionFind::new(n);
    for eq in equations {
        let mut it = eq.keys();
        if let Some(&first) = it.next() {
            for &k in it {
                uf.union(first, k);
            }
        }
    }
    let mut comp_vars: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in 0..n {
        comp_vars.entry(uf.find(j)).or_default().push(j);
    }
    let mut comp_eqs: BTreeMap<usize, Vec<SparseVec<usize>>> = BTreeMap::new();
    for eq in equations {
        if let Some(&first) = eq.keys().next() {
            comp_eqs.entry(uf.find(first)).or_default().push(eq.clone());
        }
    }
    let mut basis = Vec::new();
    for (root, vars) in comp_vars {
        let local: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let eqs: Vec<SparseVec<usize>> = comp_eqs
            .get(&root)
            .map(|v| {
                v.iter()
                    .map(|eq| eq.iter().map(|(k, c)| (local[k], c.clone())).collect())
                    .collect()
            })
            .unwrap_or_default();
        for x in nullspace(&eqs, vars.len()) {
            let mut full = vec![Q::zero(); n];
            for (i, c) in x.into_iter().enumerate() {
                full[vars[i]] = c;
            }
            basis.push(full);
        }
    }
    basis
}

/// Dense square matrices used for structure-algebra brackets.
pub type Mat = Vec<Vec<Q>>;

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut c = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    c[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    c
}

pub fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn mat_to_sparse(a: &Mat) -> SparseVec<usize> {
    let n = a.first().map_or(0, |r| r.len());
    let mut v = BTreeMap::new();
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                v.insert(i * n + j, x.clone());
            }
        }
    }
    v
}

/// Prime modulus for rank lower bounds: rank mod P never exceeds rank over Q.
pub const PRIME: u64 = 2_147_483_647;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    r
}

/// x mod PRIME, or None when the denominator vanishes mod PRIME.
pub fn q_mod_prime(x: &Q) -> Option<u64> {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    let p = BigInt::from(PRIME);
    let red = |v: &BigInt| ((v % &p + &p) % &p).to_u64().unwrap();
    let d = red(x.denom());
    if d == 0 {
        return None;
    }
    Some(red(x.numer()) * pow_mod(d, PRIME - 2) % PRIME)
}

/// Echelon form over Z/PRIME with the same pivot convention as `Echelon`.
#[derive(Clone, Debug)]
pub struct ModEchelon<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, u64>>,
}

impl<K: Ord + Clone> Default for ModEchelon<K> {
    fn default() -> Self {
        ModEchelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> ModEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, v: BTreeMap<K, u64>) -> bool {
        let mut v = v;
        v.retain(|_, x| *x != 0);
        let mut done: BTreeMap<K, u64> = BTreeMap::new();
        while let Some((k, c)) = v.pop_first() {
            match self.rows.get(&k) {
                Some(row) => {
                    let f = PRIME - c;
                    for (kk, x) in row.iter().skip(1) {
                        let e = v.entry(kk.clone()).or_insert(0);
                        *e = (*e + f * x) % PRIME;
                        if *e == 0 {
                            v.remove(kk);
                        }
                    }
                }
                None => {
                    done.insert(k, c);
                }
            }
        }
        let Some((k, p)) = done.iter().next().map(|(k, p)| (k.clone(), *p)) else {
            return false;
        };
        let inv = pow_mod(p, PRIME - 2);
        for x in done.values_mut() {
            *x = *x * inv % PRIME;
        }
        self.rows.insert(k, done);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn sv(pairs: &[(usize, i64)]) -> SparseVec<usize> {
        pairs.iter().map(|&(k, c)| (k, qi(c))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let vs = vec![sv(&[(0, 1), (1, 2)]), sv(&[(0, 2), (1, 4)]), sv(&[(1, 1), (2, 1)])];
        assert_eq!(rank(&vs), 2);
        let mut e = Echelon::new();
        for v in &vs {
            e.insert(v);
        }
        assert!(e.contains(&sv(&[(0, 1), (1, 3), (2, 1)])));
        assert!(!e.contains(&sv(&[(2, 1)])));
    }

    #[test]
    fn modular_rank_matches() {
        let vs = vec![sv(&[(0, 1), (1, 2)]), sv(&[(0, 2), (1, 4)]), sv(&[(1, 1), (2, 1)])];
        let mut m = ModEchelon::new();
        for v in &vs {
            m.insert(v.iter().map(|(k, x)| (*k, q_mod_prime(x).unwrap())).collect());
        }
        assert_eq!(m.rank(), rank(&vs));
        assert_eq!(q_mod_prime(&crate::rational::q(-1, 2)), Some((PRIME - 1) / 2));
    }

    #[test]
    fn nullspace_matches_components() {
        let eqs = vec![sv(&[(0, 1), (1, -1)]), sv(&[(2, 1), (3, 1)]), sv(&[(3, 2), (4, -1)])];
        let a = nullspace(&eqs, 6);
        let b = nullspace_by_components(&eqs, 6);
        assert_eq!(a.len(), 3);
        assert_eq!(b.len(), 3);
        for x in a.iter().chain(&b) {
            for eq in &eqs {
                let s: Q = eq.iter().map(|(k, c)| c * &x[*k]).sum();
                assert!(s.is_zero());
            }
        }
    }
}
