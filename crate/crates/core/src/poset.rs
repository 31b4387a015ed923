//! Finite posets as thin categories. Only the order relation is stored;
//! the morphism `a -> b` is the pair `(a, b)` and exists iff `a ≤ b`.

use crate::category::{Category, Cospan, Span};
use crate::error::{CatError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<Option<usize>>>,
    join: Vec<Vec<Option<usize>>>,
    top: Option<usize>,
    bottom: Option<usize>,
}

impl Poset {
    /// The order generated by `relations` (pairs `a ≤ b`) under reflexive
    /// transitive closure. Fails on a cycle.
    pub fn from_relations(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(CatError::Parse(format!("relation ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_leq(names, leq)
    }

    /// Validates a full order matrix.
    pub fn from_leq(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = names.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(CatError::Parse("order matrix has the wrong shape".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(CatError::AxiomViolation(format!("{} ≤ {} fails", names[i], names[i])));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(CatError::AxiomViolation(format!(
                        "{} and {} are distinct but equivalent",
                        names[i], names[j]
                    )));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(CatError::AxiomViolation(format!(
                            "order is not transitive at {}, {}, {}",
                            names[i], names[j], names[k]
                        )));
                    }
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            if !seen.insert(name) {
                return Err(CatError::Parse(format!("duplicate element name {name}")));
            }
        }
        let (meet, join, bottom, top) = crate::limits::bounds_from_order(&leq);
        Ok(Poset {
            names,
            leq,
            meet,
            join,
            top,
            bottom,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn leq_matrix(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.join[a][b]
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn index_or_err(&self, name: &str) -> Result<usize> {
        self.index(name)
            .ok_or_else(|| CatError::UnknownObject(name.to_string()))
    }

    pub fn up_set(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.leq[a][b]).collect()
    }

    pub fn down_set(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.leq[b][a]).collect()
    }

    /// Covering pairs `a ⋖ b`, the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && self.leq[a][b]
                    && !(0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b])
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The induced order on `elements`, keeping their names.
    pub fn restrict(&self, elements: &[usize]) -> Result<Poset> {
        let names = elements.iter().map(|&i| self.names[i].clone()).collect();
        let leq = elements
            .iter()
            .map(|&i| elements.iter().map(|&j| self.leq[i][j]).collect())
            .collect();
        Poset::from_leq(names, leq)
    }

    /// Morphism `a -> b` when `a ≤ b`.
    pub fn arrow(&self, a: usize, b: usize) -> Option<(usize, usize)> {
        self.leq[a][b].then_some((a, b))
    }

    fn check(&self, a: usize) -> Result<()> {
        if a < self.len() {
            Ok(())
        } else {
            Err(CatError::UnknownObject(format!("#{a}")))
        }
    }
}

impl Category for Poset {
    type Ob = usize;
    type Mor = (usize, usize);

    fn objects(&self) -> Result<Vec<usize>> {
        Ok((0..self.len()).collect())
    }
    fn hom(&self, a: &usize, b: &usize) -> Result<Vec<(usize, usize)>> {
        self.check(*a)?;
        self.check(*b)?;
        Ok(self.arrow(*a, *b).into_iter().collect())
    }
    fn dom(&self, f: &(usize, usize)) -> usize {
        f.0
    }
    fn cod(&self, f: &(usize, usize)) -> usize {
        f.1
    }
    fn identity(&self, a: &usize) -> (usize, usize) {
        (*a, *a)
    }
    fn try_compose(&self, g: &(usize, usize), f: &(usize, usize)) -> Option<(usize, usize)> {
        (f.1 == g.0).then_some((f.0, g.1))
    }
    fn is_thin(&self) -> bool {
        true
    }
    fn ob_label(&self, a: &usize) -> String {
        self.names[*a].clone()
    }
    fn mor_label(&self, f: &(usize, usize)) -> String {
        format!("{}<={}", self.names[f.0], self.names[f.1])
    }
    fn slice_hom(&self, p: &(usize, usize), q: &(usize, usize)) -> Result<Vec<(usize, usize)>> {
        Ok(self.arrow(p.0, q.0).into_iter().collect())
    }
    fn terminal(&self) -> Result<usize> {
        self.top.ok_or_else(|| CatError::NoLimit("no top element".into()))
    }
    fn initial(&self) -> Result<usize> {
        self.bottom
            .ok_or_else(|| CatError::NoColimit("no bottom element".into()))
    }
    fn product(&self, a: &usize, b: &usize) -> Result<Span<(usize, usize)>> {
        let m = self.meet(*a, *b).ok_or_else(|| {
            CatError::NoLimit(format!("{} and {} have no meet", self.names[*a], self.names[*b]))
        })?;
        Ok(Span {
            left: (m, *a),
            right: (m, *b),
        })
    }
    fn pullback(&self, f: &(usize, usize), g: &(usize, usize)) -> Result<Span<(usize, usize)>> {
        if f.1 != g.1 {
            return Err(CatError::Invalid("pullback of a non-cospan".into()));
        }
        self.product(&f.0, &g.0)
    }
    fn equalizer(&self, f: &(usize, usize), _g: &(usize, usize)) -> Result<(usize, usize)> {
        Ok((f.0, f.0))
    }
    fn coproduct(&self, a: &usize, b: &usize) -> Result<Cospan<(usize, usize)>> {
        let j = self.join(*a, *b).ok_or_else(|| {
            CatError::NoColimit(format!("{} and {} have no join", self.names[*a], self.names[*b]))
        })?;
        Ok(Cospan {
            left: (*a, j),
            right: (*b, j),
        })
    }
    fn coequalizer(&self, f: &(usize, usize), _g: &(usize, usize)) -> Result<(usize, usize)> {
        Ok((f.1, f.1))
    }
    fn mediate(&self, span: &Span<(usize, usize)>, p: &(usize, usize), _q: &(usize, usize)) -> Result<(usize, usize)> {
        let apex = span.left.0;
        self.arrow(p.0, apex)
            .ok_or_else(|| CatError::NoLimit("competing cone does not factor".into()))
    }
}

/// A monotone map between finite posets, as a functor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    pub source: Poset,
    pub target: Poset,
    pub map: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: Poset, target: Poset, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(CatError::Invalid("map does not fit the posets".into()));
        }
        for a in 0..source.len() {
            for b in 0..source.len() {
                if source.leq(a, b) && !target.leq(map[a], map[b]) {
                    return Err(CatError::Invalid(format!(
                        "not monotone: {} ≤ {}",
                        source.name(a),
                        source.name(b)
                    )));
                }
            }
        }
        Ok(MonotoneMap { source, target, map })
    }

    /// Looks up images by name.
    pub fn from_names(source: Poset, target: Poset, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut map = vec![usize::MAX; source.len()];
        for (a, b) in pairs {
            map[source.index_or_err(a)?] = target.index_or_err(b)?;
        }
        if let Some(a) = map.iter().position(|&y| y == usize::MAX) {
            return Err(CatError::Invalid(format!("no image for {}", source.name(a))));
        }
        MonotoneMap::new(source, target, map)
    }

    pub fn identity(p: Poset) -> Self {
        let map = (0..p.len()).collect();
        MonotoneMap {
            source: p.clone(),
            target: p,
            map,
        }
    }
}

impl crate::category::Functor for MonotoneMap {
    type Src = Poset;
    type Tgt = Poset;
    fn source(&self) -> &Poset {
        &self.source
    }
    fn target(&self) -> &Poset {
        &self.target
    }
    fn on_ob(&self, x: &usize) -> usize {
        self.map[*x]
    }
    fn on_mor(&self, f: &(usize, usize)) -> (usize, usize) {
        (self.map[f.0], self.map[f.1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::all_morphisms;

    fn chain3() -> Poset {
        Poset::from_relations(vec!["0".into(), "m".into(), "1".into()], &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn chain_has_six_morphisms() {
        assert_eq!(all_morphisms(&chain3()).unwrap().len(), 6);
    }

    #[test]
    fn cycle_is_rejected() {
        let r = Poset::from_relations(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]);
        assert!(matches!(r, Err(CatError::AxiomViolation(_))));
    }

    #[test]
    fn product_in_chain_is_meet() {
        let c = chain3();
        let s = c.product(&1, &2).unwrap();
        assert_eq!(c.dom(&s.left), 1);
    }

    #[test]
    fn covers_of_chain() {
        assert_eq!(chain3().covers(), vec![(0, 1), (1, 2)]);
    }
}
