//! Finite lattices and Boolean algebras: meet/join tables, filters, prime
//! filters, atoms, and generators for fixture families.

use std::collections::BTreeSet;

use crate::error::{CatError, Result};
use crate::poset::Poset;

/// A finite lattice. Element indices are those of the underlying poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: Poset,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    top: usize,
    bottom: usize,
    distributive: bool,
}

impl FiniteLattice {
    pub fn new(poset: Poset) -> Result<Self> {
        let n = poset.len();
        let (top, bottom) = match (poset.top(), poset.bottom()) {
            (Some(t), Some(b)) => (t, b),
            _ => return Err(CatError::AxiomViolation("a lattice needs a top and a bottom".into())),
        };
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                meet[a][b] = poset.meet(a, b).ok_or_else(|| {
                    CatError::AxiomViolation(format!("{} and {} have no meet", poset.name(a), poset.name(b)))
                })?;
                join[a][b] = poset.join(a, b).ok_or_else(|| {
                    CatError::AxiomViolation(format!("{} and {} have no join", poset.name(a), poset.name(b)))
                })?;
            }
        }
        let mut lat = FiniteLattice {
            poset,
            meet,
            join,
            top,
            bottom,
            distributive: false,
        };
        lat.distributive = lat.distributivity_witness().is_none();
        Ok(lat)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn name(&self, a: usize) -> &str {
        self.poset.name(a)
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.poset.index(name)
    }

    pub fn is_distributive(&self) -> bool {
        self.distributive
    }

    /// First `(a, b, c)` with `a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c)`.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        self.elements()
            .filter(|&a| {
                a != self.bottom
                    && !self
                        .elements()
                        .any(|c| c != a && c != self.bottom && self.leq(c, a))
            })
            .collect()
    }

    /// Non-bottom elements that are not the join of two strictly smaller ones.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        self.elements()
            .filter(|&a| {
                a != self.bottom
                    && !self.elements().any(|b| {
                        self.elements()
                            .any(|c| b != a && c != a && self.join(b, c) == a)
                    })
            })
            .collect()
    }

    pub fn complements(&self, a: usize) -> Vec<usize> {
        self.elements()
            .filter(|&b| self.meet(a, b) == self.bottom && self.join(a, b) == self.top)
            .collect()
    }

    pub fn principal_filter(&self, a: usize) -> Vec<bool> {
        self.elements().map(|b| self.leq(a, b)).collect()
    }

    /// Nonempty, upward closed and closed under binary meets.
    pub fn is_filter(&self, members: &[bool]) -> bool {
        if members.len() != self.len() || !members.iter().any(|&m| m) {
            return false;
        }
        for a in self.elements() {
            if !members[a] {
                continue;
            }
            for b in self.elements() {
                if self.leq(a, b) && !members[b] {
                    return false;
                }
                if members[b] && !members[self.meet(a, b)] {
                    return false;
                }
            }
        }
        true
    }

    /// Proper (misses the bottom) and join-prime.
    pub fn is_prime_filter(&self, members: &[bool]) -> bool {
        self.is_filter(members) && !members[self.bottom] && self.primality_witness(members).is_none()
    }

    /// First `(a, b)` with `a ∨ b` in the set but neither `a` nor `b`.
    pub fn primality_witness(&self, members: &[bool]) -> Option<(usize, usize)> {
        for a in self.elements() {
            for b in self.elements() {
                if members[self.join(a, b)] && !members[a] && !members[b] {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// The least element of a filter.
    pub fn filter_generator(&self, members: &[bool]) -> Option<usize> {
        let mut acc = self.top;
        let mut any = false;
        for a in self.elements() {
            if members[a] {
                acc = self.meet(acc, a);
                any = true;
            }
        }
        (any && members[acc]).then_some(acc)
    }

    /// Every filter; in a finite lattice these are the principal ones, in
    /// element order of their generators.
    pub fn filters(&self) -> Vec<Vec<bool>> {
        self.elements().map(|a| self.principal_filter(a)).collect()
    }

    pub fn prime_filters(&self) -> Vec<Vec<bool>> {
        self.filters()
            .into_iter()
            .filter(|f| self.is_prime_filter(f))
            .collect()
    }

    /// Every filter found by testing all subsets. Exponential; for oracles.
    pub fn filters_by_subsets(&self) -> Result<Vec<Vec<bool>>> {
        let n = self.len();
        if n > 20 {
            return Err(CatError::overflow("subset enumeration", 1u128 << n, 1 << 20));
        }
        Ok((0u64..1 << n)
            .map(|mask| (0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<bool>>())
            .filter(|s| self.is_filter(s))
            .collect())
    }

    /// Label `↑g` for a filter with generator `g`.
    pub fn filter_label(&self, members: &[bool]) -> String {
        match self.filter_generator(members) {
            Some(g) => format!("up({})", self.name(g)),
            None => {
                let names: Vec<&str> = self.elements().filter(|&a| members[a]).map(|a| self.name(a)).collect();
                format!("{{{}}}", names.join(","))
            }
        }
    }

    /// The sublattice `↓a` as its own lattice.
    pub fn down_lattice(&self, a: usize) -> Result<(FiniteLattice, Vec<usize>)> {
        let elems = self.poset.down_set(a);
        Ok((FiniteLattice::new(self.poset.restrict(&elems)?)?, elems))
    }

    /// Cartesian product, elements `(a, b)` in lexicographic order.
    pub fn product(&self, other: &FiniteLattice) -> Result<FiniteLattice> {
        let (n, m) = (self.len(), other.len());
        let mut names = Vec::with_capacity(n * m);
        for a in 0..n {
            for b in 0..m {
                names.push(format!("({},{})", self.name(a), other.name(b)));
            }
        }
        let leq = (0..n * m)
            .map(|i| {
                (0..n * m)
                    .map(|j| self.leq(i / m, j / m) && other.leq(i % m, j % m))
                    .collect()
            })
            .collect();
        FiniteLattice::new(Poset::from_leq(names, leq)?)
    }
}

/// A finite Boolean algebra: a distributive complemented lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBooleanAlgebra {
    lattice: FiniteLattice,
    complement: Vec<usize>,
    atoms: Vec<usize>,
}

impl FiniteBooleanAlgebra {
    pub fn new(lattice: FiniteLattice) -> Result<Self> {
        if let Some((a, b, c)) = lattice.distributivity_witness() {
            return Err(CatError::NotBoolean(format!(
                "not distributive at ({}, {}, {})",
                lattice.name(a),
                lattice.name(b),
                lattice.name(c)
            )));
        }
        let mut complement = Vec::with_capacity(lattice.len());
        for a in lattice.elements() {
            match lattice.complements(a).as_slice() {
                [c] => complement.push(*c),
                [] => {
                    return Err(CatError::NotBoolean(format!("{} has no complement", lattice.name(a))))
                }
                _ => {
                    return Err(CatError::NotBoolean(format!(
                        "{} has several complements",
                        lattice.name(a)
                    )))
                }
            }
        }
        let atoms = lattice.atoms();
        Ok(FiniteBooleanAlgebra {
            lattice,
            complement,
            atoms,
        })
    }

    /// The power set of the named atoms, elements ordered by bit mask and
    /// named in set notation.
    pub fn powerset<S: AsRef<str>>(atom_names: &[S]) -> Result<Self> {
        let n = atom_names.len();
        if n > 10 {
            return Err(CatError::overflow("power set", 1u128 << n, 1 << 10));
        }
        let size = 1usize << n;
        let names: Vec<String> = (0..size)
            .map(|mask| {
                let parts: Vec<&str> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| atom_names[i].as_ref())
                    .collect();
                format!("{{{}}}", parts.join(","))
            })
            .collect();
        Self::powerset_with_names(n, names)
    }

    /// The power set of an `n`-set with explicit element names indexed by mask.
    pub fn powerset_with_names(n: usize, names: Vec<String>) -> Result<Self> {
        let size = 1usize << n;
        if names.len() != size {
            return Err(CatError::Invalid(format!("need {size} names, got {}", names.len())));
        }
        let leq = (0..size)
            .map(|a| (0..size).map(|b| a & !b == 0).collect())
            .collect();
        Self::new(FiniteLattice::new(Poset::from_leq(names, leq)?)?)
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn poset(&self) -> &Poset {
        self.lattice.poset()
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn complement(&self, a: usize) -> usize {
        self.complement[a]
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.lattice.meet(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.lattice.join(a, b)
    }

    pub fn top(&self) -> usize {
        self.lattice.top()
    }

    pub fn bottom(&self) -> usize {
        self.lattice.bottom()
    }

    pub fn name(&self, a: usize) -> &str {
        self.lattice.name(a)
    }

    /// Positions (in [`Self::atoms`]) of the atoms below `a`.
    pub fn atoms_below(&self, a: usize) -> BTreeSet<usize> {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(_, &p)| self.lattice.leq(p, a))
            .map(|(i, _)| i)
            .collect()
    }

    /// The element whose atoms are exactly the given atom positions.
    pub fn element_of_atoms(&self, atoms: &BTreeSet<usize>) -> usize {
        atoms
            .iter()
            .fold(self.bottom(), |acc, &i| self.join(acc, self.atoms[i]))
    }
}

/// Every poset on `n ≤ 5` points up to isomorphism, as order matrices.
pub fn posets_up_to_iso(n: usize) -> Result<Vec<Vec<Vec<bool>>>> {
    if n > 5 {
        return Err(CatError::overflow("poset enumeration", n as u128, 5));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| !(leq[i][j] && leq[j][k]) || leq[i][k]))
        });
        if !transitive {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut bits = 0u64;
                for i in 0..n {
                    for j in 0..n {
                        if leq[i][j] {
                            bits |= 1 << (p[i] * n + p[j]);
                        }
                    }
                }
                bits
            })
            .min()
            .unwrap_or(0);
        if seen.insert(canon) {
            out.push(leq);
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// The lattice of down-sets of a finite order, ordered by inclusion.
pub fn downset_lattice(leq: &[Vec<bool>]) -> Result<FiniteLattice> {
    let n = leq.len();
    let mut sets: Vec<u32> = (0u32..1 << n)
        .filter(|&s| {
            (0..n).all(|i| s >> i & 1 == 0 || (0..n).all(|j| !leq[j][i] || s >> j & 1 == 1))
        })
        .collect();
    sets.sort_by_key(|&s| (s.count_ones(), s));
    let names = sets
        .iter()
        .map(|&s| {
            let parts: Vec<String> = (0..n).filter(|i| s >> i & 1 == 1).map(|i| i.to_string()).collect();
            format!("d{{{}}}", parts.join(","))
        })
        .collect();
    let order = sets
        .iter()
        .map(|&a| sets.iter().map(|&b| a & !b == 0).collect())
        .collect();
    FiniteLattice::new(Poset::from_leq(names, order)?)
}

/// Distributive lattices dual to every poset on at most five points; all
/// have at most 32 elements.
pub fn distributive_fixtures() -> Result<Vec<FiniteLattice>> {
    let mut out = Vec::new();
    for n in 0..=5 {
        for leq in posets_up_to_iso(n)? {
            out.push(downset_lattice(&leq)?);
        }
    }
    Ok(out)
}

/// Power-set Boolean algebras on `0..=max_atoms` atoms named `1, 2, ...`.
pub fn boolean_fixtures(max_atoms: usize) -> Result<Vec<FiniteBooleanAlgebra>> {
    (0..=max_atoms)
        .map(|n| {
            let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            FiniteBooleanAlgebra::powerset(&names)
        })
        .collect()
}

/// The chain `0 < 1 < ... < n-1` with the given names.
pub fn chain<S: AsRef<str>>(names: &[S]) -> Result<FiniteLattice> {
    let rel: Vec<(usize, usize)> = (1..names.len()).map(|i| (i - 1, i)).collect();
    let names = names.iter().map(|s| s.as_ref().to_string()).collect();
    FiniteLattice::new(Poset::from_relations(names, &rel)?)
}

/// The diamond `M3`: three pairwise incomparable atoms.
pub fn m3() -> Result<FiniteLattice> {
    let names = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    FiniteLattice::new(Poset::from_relations(
        names,
        &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
    )?)
}

/// The pentagon `N5`: `0 < a < b < 1`, `0 < c < 1`.
pub fn n5() -> Result<FiniteLattice> {
    let names = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    FiniteLattice::new(Poset::from_relations(
        names,
        &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts_match_known_sequence() {
        let counts: Vec<usize> = (0..=5).map(|n| posets_up_to_iso(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn downsets_of_antichain_are_powerset() {
        let anti = vec![vec![true, false, false], vec![false, true, false], vec![false, false, true]];
        let l = downset_lattice(&anti).unwrap();
        assert_eq!(l.len(), 8);
        assert!(l.is_distributive());
        assert!(FiniteBooleanAlgebra::new(l).is_ok());
    }

    #[test]
    fn m3_and_n5_are_not_distributive() {
        assert!(!m3().unwrap().is_distributive());
        assert!(!n5().unwrap().is_distributive());
    }

    #[test]
    fn principal_filters_are_all_filters() {
        let l = m3().unwrap();
        let mut a = l.filters();
        let mut b = l.filters_by_subsets().unwrap();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn chain_prime_filters() {
        let c = chain(&["0", "m", "1"]).unwrap();
        let primes: Vec<String> = c.prime_filters().iter().map(|f| c.filter_label(f)).collect();
        assert_eq!(primes, vec!["up(m)", "up(1)"]);
    }
}
