//! The skeletal category of finite sets. Objects are cardinals, morphisms
//! are explicit value arrays.
//!
//! The object window is `0..=cap`, but structural limits and colimits are
//! computed in all of FinSet and may land above the cap. Hom enumeration is
//! lazy in the sense that nothing is stored; it errors beyond
//! [`HOM_BOUND`] instead of truncating.

use std::collections::HashMap;

use crate::category::{Category, Cospan, Span};
use crate::error::{CatError, Result};
use crate::unionfind::UnionFind;

/// Largest hom-set (or fiberwise slice hom-set) that will be enumerated.
pub const HOM_BOUND: u128 = 1 << 20;

/// A function `map.len() -> cod`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinFn {
    pub cod: usize,
    pub map: Vec<usize>,
}

impl FinFn {
    pub fn new(cod: usize, map: Vec<usize>) -> Result<Self> {
        if let Some(&v) = map.iter().find(|&&v| v >= cod) {
            return Err(CatError::Invalid(format!("value {v} outside codomain {cod}")));
        }
        Ok(FinFn { cod, map })
    }

    pub fn identity(n: usize) -> Self {
        FinFn {
            cod: n,
            map: (0..n).collect(),
        }
    }

    pub fn dom(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FinFn) -> FinFn {
        FinFn {
            cod: self.cod,
            map: f.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// Indices mapping to `v`, ascending.
    pub fn fiber(&self, v: usize) -> Vec<usize> {
        (0..self.dom()).filter(|&i| self.map[i] == v).collect()
    }
}

/// `base^exp`, saturating.
pub(crate) fn power(base: usize, exp: usize) -> u128 {
    u32::try_from(exp)
        .ok()
        .and_then(|e| (base as u128).checked_pow(e))
        .unwrap_or(u128::MAX)
}

/// Every function `n -> m` in lexicographic order of value arrays.
pub fn all_functions(n: usize, m: usize) -> Result<Vec<FinFn>> {
    let count = power(m, n);
    if count > HOM_BOUND {
        return Err(CatError::overflow(format!("hom({n}, {m})"), count, HOM_BOUND));
    }
    let choices: Vec<Vec<usize>> = (0..n).map(|_| (0..m).collect()).collect();
    Ok(product_of_choices(&choices)
        .into_iter()
        .map(|map| FinFn { cod: m, map })
        .collect())
}

/// Cartesian product of per-position candidate lists, lexicographic.
pub(crate) fn product_of_choices(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    if choices.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    loop {
        out.push(idx.iter().zip(choices).map(|(&i, c)| c[i]).collect());
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkelFinSet {
    cap: usize,
}

impl SkelFinSet {
    pub fn new(cap: i64) -> Result<Self> {
        if cap <= 0 {
            return Err(CatError::CapExceeded(cap));
        }
        Ok(SkelFinSet { cap: cap as usize })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// The constant function `n -> m` with value `v`.
    pub fn constant(n: usize, m: usize, v: usize) -> FinFn {
        FinFn {
            cod: m,
            map: vec![v; n],
        }
    }
}

impl Category for SkelFinSet {
    type Ob = usize;
    type Mor = FinFn;

    fn objects(&self) -> Result<Vec<usize>> {
        Ok((0..=self.cap).collect())
    }
    fn hom(&self, a: &usize, b: &usize) -> Result<Vec<FinFn>> {
        all_functions(*a, *b)
    }
    fn dom(&self, f: &FinFn) -> usize {
        f.dom()
    }
    fn cod(&self, f: &FinFn) -> usize {
        f.cod
    }
    fn identity(&self, a: &usize) -> FinFn {
        FinFn::identity(*a)
    }
    fn try_compose(&self, g: &FinFn, f: &FinFn) -> Option<FinFn> {
        (f.cod == g.dom()).then(|| g.after(f))
    }
    fn enumeration_complete(&self) -> bool {
        false
    }
    fn ob_label(&self, a: &usize) -> String {
        a.to_string()
    }
    fn mor_label(&self, f: &FinFn) -> String {
        let vals: Vec<String> = f.map.iter().map(usize::to_string).collect();
        format!("{}->{}[{}]", f.dom(), f.cod, vals.join(","))
    }
    fn slice_hom(&self, p: &FinFn, q: &FinFn) -> Result<Vec<FinFn>> {
        if p.cod != q.cod {
            return Ok(Vec::new());
        }
        let choices: Vec<Vec<usize>> = p.map.iter().map(|&v| q.fiber(v)).collect();
        let count = choices
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
        if count > HOM_BOUND {
            return Err(CatError::overflow("slice hom", count, HOM_BOUND));
        }
        Ok(product_of_choices(&choices)
            .into_iter()
            .map(|map| FinFn { cod: q.dom(), map })
            .collect())
    }
    fn terminal(&self) -> Result<usize> {
        Ok(1)
    }
    fn initial(&self) -> Result<usize> {
        Ok(0)
    }
    /// Pairs `(i, j)` are encoded as `i * b + j`, so `1 × x = x` with the
    /// second projection the identity.
    fn product(&self, a: &usize, b: &usize) -> Result<Span<FinFn>> {
        let n = a * b;
        Ok(Span {
            left: FinFn {
                cod: *a,
                map: (0..n).map(|k| k / b).collect(),
            },
            right: FinFn {
                cod: *b,
                map: (0..n).map(|k| k % b).collect(),
            },
        })
    }
    /// Matching pairs in lexicographic order.
    fn pullback(&self, f: &FinFn, g: &FinFn) -> Result<Span<FinFn>> {
        if f.cod != g.cod {
            return Err(CatError::Invalid("pullback of a non-cospan".into()));
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        for i in 0..f.dom() {
            for j in 0..g.dom() {
                if f.map[i] == g.map[j] {
                    left.push(i);
                    right.push(j);
                }
            }
        }
        Ok(Span {
            left: FinFn {
                cod: f.dom(),
                map: left,
            },
            right: FinFn {
                cod: g.dom(),
                map: right,
            },
        })
    }
    fn equalizer(&self, f: &FinFn, g: &FinFn) -> Result<FinFn> {
        Ok(FinFn {
            cod: f.dom(),
            map: (0..f.dom()).filter(|&i| f.map[i] == g.map[i]).collect(),
        })
    }
    fn coproduct(&self, a: &usize, b: &usize) -> Result<Cospan<FinFn>> {
        Ok(Cospan {
            left: FinFn {
                cod: a + b,
                map: (0..*a).collect(),
            },
            right: FinFn {
                cod: a + b,
                map: (0..*b).map(|j| a + j).collect(),
            },
        })
    }
    /// Classes numbered by their least element.
    fn coequalizer(&self, f: &FinFn, g: &FinFn) -> Result<FinFn> {
        let n = f.cod;
        let mut uf = UnionFind::new(n);
        for i in 0..f.dom() {
            uf.union(f.map[i], g.map[i]);
        }
        let (labels, k) = uf.canonical_labels();
        Ok(FinFn { cod: k, map: labels })
    }
    fn mediate(&self, span: &Span<FinFn>, p: &FinFn, q: &FinFn) -> Result<FinFn> {
        let apex = span.left.dom();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        for k in 0..apex {
            if index.insert((span.left.map[k], span.right.map[k]), k).is_some() {
                return Err(CatError::NoLimit("span legs are not jointly monic".into()));
            }
        }
        let map = (0..p.dom())
            .map(|w| {
                index
                    .get(&(p.map[w], q.map[w]))
                    .copied()
                    .ok_or_else(|| CatError::NoLimit("competing cone does not factor".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinFn { cod: apex, map })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_counts() {
        assert_eq!(all_functions(3, 2).unwrap().len(), 8);
        assert_eq!(all_functions(0, 0).unwrap().len(), 1);
        assert_eq!(all_functions(2, 0).unwrap().len(), 0);
    }

    #[test]
    fn hom_bound_errors() {
        assert!(matches!(all_functions(30, 30), Err(CatError::SizeOverflow { .. })));
    }

    #[test]
    fn nonpositive_cap_rejected() {
        assert_eq!(SkelFinSet::new(0), Err(CatError::CapExceeded(0)));
    }

    #[test]
    fn one_times_x_is_x() {
        let c = SkelFinSet::new(4).unwrap();
        let s = c.product(&1, &3).unwrap();
        assert_eq!(s.right, FinFn::identity(3));
    }

    #[test]
    fn coequalizer_of_swap() {
        let c = SkelFinSet::new(4).unwrap();
        let swap = FinFn::new(2, vec![1, 0]).unwrap();
        let q = c.coequalizer(&FinFn::identity(2), &swap).unwrap();
        assert_eq!(q, FinFn::new(1, vec![0, 0]).unwrap());
    }

    #[test]
    fn slice_hom_is_fiberwise() {
        let c = SkelFinSet::new(4).unwrap();
        let p = FinFn::new(2, vec![0, 1]).unwrap();
        let q = FinFn::new(2, vec![0, 0, 1]).unwrap();
        let hs = c.slice_hom(&p, &q).unwrap();
        assert_eq!(hs.len(), 2);
        assert!(hs.iter().all(|h| q.after(h) == p));
    }
}
