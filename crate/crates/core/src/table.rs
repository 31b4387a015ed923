//! Explicit finite categories given by a composition table.

use std::collections::HashMap;

use crate::category::Category;
use crate::error::{CatError, Result};
use crate::report::{Finding, Report};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMorphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

#[derive(Debug, Clone)]
pub struct TableCategory {
    objects: Vec<String>,
    morphisms: Vec<TableMorphism>,
    identities: Vec<usize>,
    table: HashMap<(usize, usize), usize>,
    homs: Vec<Vec<Vec<usize>>>,
}

impl TableCategory {
    /// Builds and validates a table category. `table[(g, f)]` is `g ∘ f`.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<TableMorphism>,
        identities: Vec<usize>,
        table: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let cat = Self::new_unchecked(objects, morphisms, identities, table)?;
        let report = check_table(&cat);
        if let Some(first) = report.failures().next() {
            return Err(CatError::AxiomViolation(first.detail.clone()));
        }
        Ok(cat)
    }

    /// Builds without checking the axioms; index ranges are still validated.
    pub fn new_unchecked(
        objects: Vec<String>,
        morphisms: Vec<TableMorphism>,
        identities: Vec<usize>,
        table: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let n = objects.len();
        if identities.len() != n {
            return Err(CatError::AxiomViolation(format!(
                "{} objects but {} identities",
                n,
                identities.len()
            )));
        }
        for m in &morphisms {
            if m.dom >= n || m.cod >= n {
                return Err(CatError::Parse(format!("morphism {} has an unknown endpoint", m.name)));
            }
        }
        for (&(g, f), &h) in &table {
            let k = morphisms.len();
            if g >= k || f >= k || h >= k {
                return Err(CatError::Parse("composition entry out of range".into()));
            }
        }
        for &i in &identities {
            if i >= morphisms.len() {
                return Err(CatError::Parse("identity index out of range".into()));
            }
        }
        let mut homs = vec![vec![Vec::new(); n]; n];
        for (i, m) in morphisms.iter().enumerate() {
            homs[m.dom][m.cod].push(i);
        }
        Ok(TableCategory {
            objects,
            morphisms,
            identities,
            table,
            homs,
        })
    }

    /// Materializes any category whose enumeration is complete.
    pub fn from_category<C: Category>(c: &C) -> Result<Self> {
        let obs = c.objects()?;
        let index: HashMap<C::Ob, usize> =
            obs.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let mut morphisms = Vec::new();
        let mut mor_index: HashMap<C::Mor, usize> = HashMap::new();
        for a in &obs {
            for b in &obs {
                for f in c.hom(a, b)? {
                    mor_index.insert(f.clone(), morphisms.len());
                    morphisms.push(TableMorphism {
                        name: c.mor_label(&f),
                        dom: index[a],
                        cod: index[b],
                    });
                }
            }
        }
        let identities = obs.iter().map(|o| mor_index[&c.identity(o)]).collect();
        let all: Vec<C::Mor> = {
            let mut v: Vec<(usize, C::Mor)> = mor_index.iter().map(|(m, &i)| (i, m.clone())).collect();
            v.sort();
            v.into_iter().map(|(_, m)| m).collect()
        };
        let mut table = HashMap::new();
        for (fi, f) in all.iter().enumerate() {
            for (gi, g) in all.iter().enumerate() {
                if c.dom(g) == c.cod(f) {
                    let h = c.compose(g, f);
                    let hi = *mor_index.get(&h).ok_or_else(|| {
                        CatError::AxiomViolation("composite leaves the enumerated window".into())
                    })?;
                    table.insert((gi, fi), hi);
                }
            }
        }
        TableCategory::new_unchecked(obs.iter().map(|o| c.ob_label(o)).collect(), morphisms, identities, table)
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[TableMorphism] {
        &self.morphisms
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// Overwrites one composite. Used to inject faults.
    pub fn set_composite(&mut self, g: usize, f: usize, h: usize) {
        self.table.insert((g, f), h);
    }

    pub fn remove_composite(&mut self, g: usize, f: usize) {
        self.table.remove(&(g, f));
    }
}

impl Category for TableCategory {
    type Ob = usize;
    type Mor = usize;

    fn objects(&self) -> Result<Vec<usize>> {
        Ok((0..self.objects.len()).collect())
    }
    fn hom(&self, a: &usize, b: &usize) -> Result<Vec<usize>> {
        self.homs
            .get(*a)
            .and_then(|r| r.get(*b))
            .cloned()
            .ok_or_else(|| CatError::UnknownObject(format!("#{a} or #{b}")))
    }
    fn dom(&self, f: &usize) -> usize {
        self.morphisms[*f].dom
    }
    fn cod(&self, f: &usize) -> usize {
        self.morphisms[*f].cod
    }
    fn identity(&self, a: &usize) -> usize {
        self.identities[*a]
    }
    fn try_compose(&self, g: &usize, f: &usize) -> Option<usize> {
        if self.morphisms[*g].dom != self.morphisms[*f].cod {
            return None;
        }
        self.table.get(&(*g, *f)).copied()
    }
    fn ob_label(&self, a: &usize) -> String {
        self.objects[*a].clone()
    }
    fn mor_label(&self, f: &usize) -> String {
        self.morphisms[*f].name.clone()
    }
}

/// Axiom check that also reports undefined composites.
pub fn check_table(c: &TableCategory) -> Report {
    let mut report = Report::new("check category");
    let k = c.morphisms.len();
    for (o, &i) in c.identities.iter().enumerate() {
        let m = &c.morphisms[i];
        if m.dom != o || m.cod != o {
            report.push(Finding::fail(
                "identity",
                format!("identity {} of {} is not an endomorphism of it", m.name, c.objects[o]),
            ));
        }
    }
    for f in 0..k {
        for g in 0..k {
            if c.morphisms[g].dom == c.morphisms[f].cod && c.try_compose(&g, &f).is_none() {
                report.push(Finding::fail(
                    "totality",
                    format!("composite {} ∘ {} is undefined", c.morphisms[g].name, c.morphisms[f].name),
                ));
            }
        }
    }
    for (&(g, f), &h) in &c.table {
        let (mg, mf, mh) = (&c.morphisms[g], &c.morphisms[f], &c.morphisms[h]);
        if mg.dom != mf.cod || mh.dom != mf.dom || mh.cod != mg.cod {
            report.push(Finding::fail(
                "dom-cod",
                format!("composite {} ∘ {} = {} has wrong endpoints", mg.name, mf.name, mh.name),
            ));
        }
    }
    if report.is_pass() {
        report.extend(crate::limits::axiom_findings(c));
    }
    report
}
