//! Textual input documents. Each document is a JSON object with a single
//! top-level key naming its kind; element identifiers are strings and every
//! table is an explicit array or map.
//!
//! ```json
//! {"poset": {"elements": ["0", "a", "1"], "leq": [["0", "a"], ["a", "1"]]}}
//! {"set-functor": {"kind": "up", "generator": "a"}}
//! ```

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::category::{all_morphisms, Category};
use crate::elementary::Adjunction;
use crate::error::{CatError, Result};
use crate::finset::{FinFn, SkelFinSet};
use crate::functor::{Filter, ProductFunctor, Representable, SetFunctor, Tabulated, Transformation};
use crate::lattice::{FiniteBooleanAlgebra, FiniteLattice};
use crate::poset::{MonotoneMap, Poset};
use crate::sheaf::SheafModel;
use crate::table::{TableCategory, TableMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum Document {
    Poset(PosetSpec),
    BooleanAlgebra(BooleanSpec),
    TableCategory(TableSpec),
    SkelFinset(FinSetSpec),
    SetFunctor(FunctorSpec),
    NatTransform(NatSpec),
    SheafModel(SheafSpec),
    Adjunction(AdjunctionSpec),
}

/// Elements plus generating relations `a ≤ b`; the order is their
/// reflexive-transitive closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

/// The powerset algebra on the named atoms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BooleanSpec {
    pub atoms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

/// `composites` lists triples `[g, f, g∘f]` by morphism name; composites
/// with an identity may be omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub composites: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinSetSpec {
    pub cap: i64,
}

/// A set-valued functor on the category it is loaded against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FunctorSpec {
    /// The principal filter above `generator`.
    Up { generator: String },
    /// Subsingleton-valued, inhabited exactly at `members`.
    Filter { members: Vec<String> },
    Representable { at: String },
    /// The inclusion of finite sets.
    Identity,
    /// `sets[x]` names the elements of `F(x)`; `functions[f]` gives the image
    /// of each element of `F(dom f)`, by name. Identities may be omitted.
    Table {
        sets: BTreeMap<String, Vec<String>>,
        functions: BTreeMap<String, Vec<String>>,
    },
}

/// `α: source ⇒ ∏ targets`. Without `components` the transformation is the
/// unique one, which exists when every target is subsingleton-valued and
/// inhabited wherever the source is. `components[x][i]` lists, per factor,
/// the label of the image of the `i`-th element of `source(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NatSpec {
    pub source: FunctorSpec,
    pub targets: Vec<FunctorSpec>,
    #[serde(default)]
    pub components: Option<BTreeMap<String, Vec<Vec<String>>>>,
}

/// A model valued in sheaves on the powerset algebra of `atoms`: one
/// component per atom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafSpec {
    pub atoms: Vec<String>,
    pub components: Vec<FunctorSpec>,
}

/// A Galois connection `left ⊣ right` between two posets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjunctionSpec {
    pub source: Box<Document>,
    pub target: Box<Document>,
    pub left: BTreeMap<String, String>,
    pub right: BTreeMap<String, String>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CatError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CatError::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Poset(_) => "poset",
            Document::BooleanAlgebra(_) => "boolean-algebra",
            Document::TableCategory(_) => "table-category",
            Document::SkelFinset(_) => "skel-finset",
            Document::SetFunctor(_) => "set-functor",
            Document::NatTransform(_) => "nat-transform",
            Document::SheafModel(_) => "sheaf-model",
            Document::Adjunction(_) => "adjunction",
        }
    }

    fn expected(&self, want: &str) -> CatError {
        CatError::Parse(format!("expected a {want} document, found {}", self.kind()))
    }

    pub fn category(&self) -> Result<LoadedCategory> {
        match self {
            Document::Poset(p) => Ok(LoadedCategory::Poset(p.build()?)),
            Document::BooleanAlgebra(b) => Ok(LoadedCategory::Poset(b.build()?.poset().clone())),
            Document::TableCategory(t) => Ok(LoadedCategory::Table(t.build()?)),
            Document::SkelFinset(s) => Ok(LoadedCategory::FinSet(SkelFinSet::new(s.cap)?)),
            _ => Err(self.expected("category")),
        }
    }

    /// Like [`Document::category`] but without validating table axioms.
    pub fn category_unchecked(&self) -> Result<LoadedCategory> {
        match self {
            Document::TableCategory(t) => Ok(LoadedCategory::Table(t.build_with(false)?)),
            _ => self.category(),
        }
    }

    pub fn poset(&self) -> Result<Poset> {
        match self.category()? {
            LoadedCategory::Poset(p) => Ok(p),
            _ => Err(self.expected("poset")),
        }
    }

    pub fn lattice(&self) -> Result<FiniteLattice> {
        FiniteLattice::new(self.poset()?)
    }

    pub fn boolean_algebra(&self) -> Result<FiniteBooleanAlgebra> {
        match self {
            Document::BooleanAlgebra(b) => b.build(),
            _ => FiniteBooleanAlgebra::new(self.lattice()?),
        }
    }

    pub fn functor_spec(&self) -> Result<&FunctorSpec> {
        match self {
            Document::SetFunctor(f) => Ok(f),
            _ => Err(self.expected("set-functor")),
        }
    }

    pub fn nat_spec(&self) -> Result<&NatSpec> {
        match self {
            Document::NatTransform(n) => Ok(n),
            _ => Err(self.expected("nat-transform")),
        }
    }

    pub fn sheaf_spec(&self) -> Result<&SheafSpec> {
        match self {
            Document::SheafModel(s) => Ok(s),
            _ => Err(self.expected("sheaf-model")),
        }
    }

    pub fn adjunction(&self) -> Result<Adjunction<MonotoneMap, MonotoneMap>> {
        match self {
            Document::Adjunction(a) => a.build(),
            _ => Err(self.expected("adjunction")),
        }
    }
}

impl PosetSpec {
    pub fn build(&self) -> Result<Poset> {
        let index: HashMap<&str, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        if index.len() != self.elements.len() {
            return Err(CatError::Parse("duplicate element name".into()));
        }
        let look = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| CatError::UnknownObject(s.to_string()))
        };
        let rel = self
            .leq
            .iter()
            .map(|(a, b)| Ok((look(a)?, look(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::from_relations(self.elements.clone(), &rel)
    }
}

impl BooleanSpec {
    pub fn build(&self) -> Result<FiniteBooleanAlgebra> {
        FiniteBooleanAlgebra::powerset(&self.atoms)
    }
}

impl TableSpec {
    pub fn build(&self) -> Result<TableCategory> {
        self.build_with(true)
    }

    /// With `checked = false` the axioms are left to
    /// [`crate::limits::check_category_axioms`].
    pub fn build_with(&self, checked: bool) -> Result<TableCategory> {
        let ob = |s: &str| {
            self.objects
                .iter()
                .position(|o| o == s)
                .ok_or_else(|| CatError::UnknownObject(s.to_string()))
        };
        let mor = |s: &str| {
            self.morphisms
                .iter()
                .position(|m| m.name == s)
                .ok_or_else(|| CatError::UnknownMorphism(s.to_string()))
        };
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| {
                Ok(TableMorphism {
                    name: m.name.clone(),
                    dom: ob(&m.dom)?,
                    cod: ob(&m.cod)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let identities = self
            .objects
            .iter()
            .map(|o| {
                let name = self
                    .identities
                    .get(o)
                    .ok_or_else(|| CatError::Parse(format!("no identity for {o}")))?;
                mor(name)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut table = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            table.insert((identities[m.cod], i), i);
            table.insert((i, identities[m.dom]), i);
        }
        for (g, f, h) in &self.composites {
            table.insert((mor(g)?, mor(f)?), mor(h)?);
        }
        if checked {
            TableCategory::new(self.objects.clone(), morphisms, identities, table)
        } else {
            TableCategory::new_unchecked(self.objects.clone(), morphisms, identities, table)
        }
    }
}

impl AdjunctionSpec {
    pub fn build(&self) -> Result<Adjunction<MonotoneMap, MonotoneMap>> {
        let (c, d) = (self.source.poset()?, self.target.poset()?);
        let map = |from: &Poset, to: &Poset, m: &BTreeMap<String, String>| -> Result<MonotoneMap> {
            let pairs: Vec<(&str, &str)> = m.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            if pairs.len() != from.len() {
                return Err(CatError::Parse(format!(
                    "map lists {} of {} elements",
                    pairs.len(),
                    from.len()
                )));
            }
            MonotoneMap::from_names(from.clone(), to.clone(), &pairs)
        };
        Adjunction::galois(map(&c, &d, &self.left)?, map(&d, &c, &self.right)?)
    }
}

/// Any of the category backends a document can describe.
#[derive(Debug, Clone)]
pub enum LoadedCategory {
    Poset(Poset),
    FinSet(SkelFinSet),
    Table(TableCategory),
}

impl LoadedCategory {
    pub fn kind(&self) -> &'static str {
        match self {
            LoadedCategory::Poset(_) => "poset",
            LoadedCategory::FinSet(_) => "skel-finset",
            LoadedCategory::Table(_) => "table-category",
        }
    }
}

/// Backends a loaded functor can live on.
pub trait Base: Category<Ob = usize> + Clone {
    /// `F(x)` for the inclusion of finite sets, when it makes sense here.
    fn inclusion_size(&self, _x: usize) -> Option<usize> {
        None
    }
    fn inclusion_apply(&self, _f: &Self::Mor, _a: usize) -> usize {
        unreachable!("inclusion functor on a backend without one")
    }
}

impl Base for Poset {}
impl Base for TableCategory {}
impl Base for SkelFinSet {
    fn inclusion_size(&self, x: usize) -> Option<usize> {
        Some(x)
    }
    fn inclusion_apply(&self, f: &FinFn, a: usize) -> usize {
        f.apply(a)
    }
}

/// Elements of a loaded functor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnyElem<M> {
    Point,
    Arrow(M),
    Index(usize),
    /// The `i`-th named element at object `x` of a tabulated functor.
    Cell(usize, usize),
}

#[derive(Debug, Clone)]
pub enum AnyKind<C: Category> {
    Filter(Filter<C>),
    Representable(Representable<C>),
    Inclusion(C),
    Tabulated(Tabulated<C>),
}

/// A functor loaded from a document, with a uniform element type.
#[derive(Debug, Clone)]
pub struct AnyFunctor<C: Category> {
    pub kind: AnyKind<C>,
}

impl<C: Base> AnyFunctor<C> {
    pub fn filter(f: Filter<C>) -> Self {
        AnyFunctor { kind: AnyKind::Filter(f) }
    }

    pub fn from_spec(c: &C, spec: &FunctorSpec) -> Result<Self> {
        let kind = match spec {
            FunctorSpec::Up { generator } => {
                let g = parse_ob(c, generator)?;
                let members = c
                    .objects()?
                    .iter()
                    .map(|x| Ok(!c.hom(&g, x)?.is_empty()))
                    .collect::<Result<Vec<_>>>()?;
                AnyKind::Filter(Filter::new(c.clone(), members)?)
            }
            FunctorSpec::Filter { members } => {
                let mut flags = vec![false; c.objects()?.len()];
                for m in members {
                    flags[parse_ob(c, m)?] = true;
                }
                AnyKind::Filter(Filter::new(c.clone(), flags)?)
            }
            FunctorSpec::Representable { at } => AnyKind::Representable(Representable::new(c.clone(), parse_ob(c, at)?)),
            FunctorSpec::Identity => {
                if c.inclusion_size(0).is_none() {
                    return Err(CatError::Parse("the identity functor needs a skel-finset base".into()));
                }
                AnyKind::Inclusion(c.clone())
            }
            FunctorSpec::Table { sets, functions } => {
                let objects = c.objects()?;
                let mut elem_sets = vec![Vec::new(); objects.len()];
                for (name, elems) in sets {
                    elem_sets[parse_ob(c, name)?] = elems.clone();
                }
                let mut tables = HashMap::new();
                for (label, images) in functions {
                    let f = parse_mor(c, label)?;
                    let cod = &elem_sets[c.cod(&f)];
                    let t = images
                        .iter()
                        .map(|e| {
                            cod.iter()
                                .position(|n| n == e)
                                .ok_or_else(|| CatError::Parse(format!("{e} is not an element at the codomain of {label}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    tables.insert(f, t);
                }
                AnyKind::Tabulated(Tabulated::new(c.clone(), elem_sets, tables)?)
            }
        };
        Ok(AnyFunctor { kind })
    }

    /// The element of `F(x)` with the given label.
    pub fn parse_elem(&self, x: usize, label: &str) -> Result<AnyElem<C::Mor>> {
        self.elements(&x)?
            .into_iter()
            .find(|e| self.elem_label(e) == label)
            .ok_or_else(|| CatError::Parse(format!("no element {label} at {}", self.source().ob_label(&x))))
    }
}

impl<C: Base> SetFunctor for AnyFunctor<C> {
    type Cat = C;
    type Elem = AnyElem<C::Mor>;

    fn source(&self) -> &C {
        match &self.kind {
            AnyKind::Filter(f) => f.source(),
            AnyKind::Representable(f) => f.source(),
            AnyKind::Inclusion(c) => c,
            AnyKind::Tabulated(f) => f.source(),
        }
    }

    fn elements(&self, x: &usize) -> Result<Vec<Self::Elem>> {
        Ok(match &self.kind {
            AnyKind::Filter(f) => f.elements(x)?.into_iter().map(|_| AnyElem::Point).collect(),
            AnyKind::Representable(f) => f.elements(x)?.into_iter().map(AnyElem::Arrow).collect(),
            AnyKind::Inclusion(c) => (0..c.inclusion_size(*x).unwrap_or(0)).map(AnyElem::Index).collect(),
            AnyKind::Tabulated(f) => f.elements(x)?.into_iter().map(|i| AnyElem::Cell(*x, i)).collect(),
        })
    }

    fn act(&self, m: &C::Mor, a: &Self::Elem) -> Self::Elem {
        match (&self.kind, a) {
            (AnyKind::Filter(_), AnyElem::Point) => AnyElem::Point,
            (AnyKind::Representable(f), AnyElem::Arrow(e)) => AnyElem::Arrow(f.act(m, e)),
            (AnyKind::Inclusion(c), AnyElem::Index(i)) => AnyElem::Index(c.inclusion_apply(m, *i)),
            (AnyKind::Tabulated(f), AnyElem::Cell(_, i)) => AnyElem::Cell(f.cat.cod(m), f.act(m, i)),
            _ => panic!("element {a:?} does not belong to this functor"),
        }
    }

    fn elem_label(&self, a: &Self::Elem) -> String {
        match (&self.kind, a) {
            (AnyKind::Representable(f), AnyElem::Arrow(e)) => f.elem_label(e),
            (AnyKind::Tabulated(f), AnyElem::Cell(x, i)) => f.sets[*x][*i].clone(),
            (_, AnyElem::Index(i)) => i.to_string(),
            _ => "*".into(),
        }
    }

    fn initial_element(&self) -> Option<(usize, Self::Elem)> {
        match &self.kind {
            AnyKind::Filter(f) => f.initial_element().map(|(x, _)| (x, AnyElem::Point)),
            AnyKind::Representable(f) => f.initial_element().map(|(x, e)| (x, AnyElem::Arrow(e))),
            AnyKind::Inclusion(_) => Some((1, AnyElem::Index(0))),
            AnyKind::Tabulated(_) => None,
        }
    }
}

/// A transformation `F ⇒ ∏ G_i` given by an explicit component table.
#[derive(Debug, Clone)]
pub struct TableTransform<C: Base> {
    pub source: AnyFunctor<C>,
    pub target: ProductFunctor<AnyFunctor<C>>,
    pub table: BTreeMap<(usize, AnyElem<C::Mor>), Vec<AnyElem<C::Mor>>>,
}

impl<C: Base> TableTransform<C> {
    pub fn from_spec(c: &C, spec: &NatSpec) -> Result<Self> {
        let source = AnyFunctor::from_spec(c, &spec.source)?;
        let factors = spec
            .targets
            .iter()
            .map(|t| AnyFunctor::from_spec(c, t))
            .collect::<Result<Vec<_>>>()?;
        let target = ProductFunctor::new(c.clone(), factors);
        let mut table = BTreeMap::new();
        for x in c.objects()? {
            let elems = source.elements(&x)?;
            let explicit = match &spec.components {
                Some(m) => m.get(&c.ob_label(&x)),
                None => None,
            };
            match explicit {
                Some(rows) => {
                    if rows.len() != elems.len() {
                        return Err(CatError::Parse(format!("component at {} has the wrong size", c.ob_label(&x))));
                    }
                    for (a, row) in elems.into_iter().zip(rows) {
                        if row.len() != target.factors.len() {
                            return Err(CatError::Parse("component row needs one label per target".into()));
                        }
                        let image = target
                            .factors
                            .iter()
                            .zip(row)
                            .map(|(g, l)| g.parse_elem(x, l))
                            .collect::<Result<Vec<_>>>()?;
                        table.insert((x, a), image);
                    }
                }
                None => {
                    if elems.is_empty() {
                        continue;
                    }
                    let image = target.elements(&x)?;
                    if image.len() != 1 {
                        return Err(CatError::Parse(format!(
                            "no canonical component at {}: target has {} elements",
                            c.ob_label(&x),
                            image.len()
                        )));
                    }
                    for a in elems {
                        table.insert((x, a), image[0].clone());
                    }
                }
            }
        }
        let t = TableTransform { source, target, table };
        let v = crate::functor::naturality_violations(&t)?;
        if let Some(first) = v.first() {
            return Err(CatError::NotNatural(first.clone()));
        }
        Ok(t)
    }
}

impl<C: Base> Transformation for TableTransform<C> {
    type Src = AnyFunctor<C>;
    type Tgt = ProductFunctor<AnyFunctor<C>>;
    fn source(&self) -> &AnyFunctor<C> {
        &self.source
    }
    fn target(&self) -> &ProductFunctor<AnyFunctor<C>> {
        &self.target
    }
    fn component(&self, x: &usize, a: &AnyElem<C::Mor>) -> Vec<AnyElem<C::Mor>> {
        self.table
            .get(&(*x, a.clone()))
            .cloned()
            .unwrap_or_else(|| panic!("no component at {x} for {a:?}"))
    }
}

pub fn sheaf_model<C: Base>(c: &C, spec: &SheafSpec) -> Result<SheafModel<AnyFunctor<C>>> {
    let algebra = FiniteBooleanAlgebra::powerset(&spec.atoms)?;
    let comps = spec
        .components
        .iter()
        .map(|f| AnyFunctor::from_spec(c, f))
        .collect::<Result<Vec<_>>>()?;
    SheafModel::new(algebra, comps)
}

pub fn parse_ob<C: Category>(c: &C, label: &str) -> Result<C::Ob> {
    c.objects()?
        .into_iter()
        .find(|x| c.ob_label(x) == label)
        .ok_or_else(|| CatError::UnknownObject(label.to_string()))
}

pub fn parse_mor<C: Category>(c: &C, label: &str) -> Result<C::Mor> {
    all_morphisms(c)?
        .into_iter()
        .find(|f| c.mor_label(f) == label)
        .ok_or_else(|| CatError::UnknownMorphism(label.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_document_round_trips() {
        let text = r#"{"poset": {"elements": ["0", "a", "1"], "leq": [["0", "a"], ["a", "1"]]}}"#;
        let doc = Document::parse(text).unwrap();
        assert_eq!(Document::parse(&doc.to_json()).unwrap(), doc);
        let p = doc.poset().unwrap();
        assert!(p.leq(0, 2));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(Document::parse(r#"{"lattice": {}}"#), Err(CatError::Parse(_))));
        assert!(matches!(
            Document::parse(r#"{"skel-finset": {"cap": 3, "extra": 1}}"#),
            Err(CatError::Parse(_))
        ));
    }

    #[test]
    fn nonpositive_cap_is_refused() {
        let doc = Document::parse(r#"{"skel-finset": {"cap": 0}}"#).unwrap();
        assert!(matches!(doc.category(), Err(CatError::CapExceeded(0))));
    }

    #[test]
    fn table_category_with_one_arrow() {
        let text = r#"{"table-category": {
            "objects": ["x", "y"],
            "morphisms": [{"name": "1x", "dom": "x", "cod": "x"},
                          {"name": "1y", "dom": "y", "cod": "y"},
                          {"name": "f", "dom": "x", "cod": "y"}],
            "identities": {"x": "1x", "y": "1y"}}}"#;
        let LoadedCategory::Table(t) = Document::parse(text).unwrap().category().unwrap() else {
            panic!("expected a table category");
        };
        assert_eq!(t.morphisms().len(), 3);
    }

    #[test]
    fn tabulated_functor_on_a_chain() {
        let p = PosetSpec {
            elements: vec!["0".into(), "1".into()],
            leq: vec![("0".into(), "1".into())],
        }
        .build()
        .unwrap();
        let spec: FunctorSpec = serde_json::from_str(
            r#"{"kind": "table", "sets": {"0": ["u"], "1": ["v", "w"]}, "functions": {"0<=1": ["w"]}}"#,
        )
        .unwrap();
        let f = AnyFunctor::from_spec(&p, &spec).unwrap();
        assert_eq!(f.elements(&1).unwrap().len(), 2);
        assert_eq!(f.act(&(0, 1), &AnyElem::Cell(0, 0)), AnyElem::Cell(1, 1));
        assert_eq!(f.elem_label(&AnyElem::Cell(1, 1)), "w");
    }
}
