//! Set-valued functors (models) and natural transformations between them.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use crate::category::{all_morphisms, Category};
use crate::error::{CatError, Result};
use crate::finset::{FinFn, SkelFinSet};
use crate::report::Finding;

pub type ObOf<F> = <<F as SetFunctor>::Cat as Category>::Ob;
pub type MorOf<F> = <<F as SetFunctor>::Cat as Category>::Mor;

/// Bound on the number of elements a product functor enumerates at one object.
pub const ELEMENT_BOUND: u128 = 1 << 20;

/// A functor `C -> Set` with finite values.
pub trait SetFunctor {
    type Cat: Category;
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn source(&self) -> &Self::Cat;
    /// The set `F(x)` in canonical order.
    fn elements(&self, x: &ObOf<Self>) -> Result<Vec<Self::Elem>>;
    /// `F(f)(a)`.
    fn act(&self, f: &MorOf<Self>, a: &Self::Elem) -> Self::Elem;

    fn elem_label(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }

    /// An initial object of the category of elements, when known cheaply.
    fn initial_element(&self) -> Option<(ObOf<Self>, Self::Elem)> {
        None
    }
}

impl<F: SetFunctor> SetFunctor for &F {
    type Cat = F::Cat;
    type Elem = F::Elem;
    fn source(&self) -> &Self::Cat {
        (**self).source()
    }
    fn elements(&self, x: &ObOf<Self>) -> Result<Vec<Self::Elem>> {
        (**self).elements(x)
    }
    fn act(&self, f: &MorOf<Self>, a: &Self::Elem) -> Self::Elem {
        (**self).act(f, a)
    }
    fn elem_label(&self, a: &Self::Elem) -> String {
        (**self).elem_label(a)
    }
    fn initial_element(&self) -> Option<(ObOf<Self>, Self::Elem)> {
        (**self).initial_element()
    }
}

impl<F: SetFunctor> SetFunctor for std::sync::Arc<F> {
    type Cat = F::Cat;
    type Elem = F::Elem;
    fn source(&self) -> &Self::Cat {
        (**self).source()
    }
    fn elements(&self, x: &ObOf<Self>) -> Result<Vec<Self::Elem>> {
        (**self).elements(x)
    }
    fn act(&self, f: &MorOf<Self>, a: &Self::Elem) -> Self::Elem {
        (**self).act(f, a)
    }
    fn elem_label(&self, a: &Self::Elem) -> String {
        (**self).elem_label(a)
    }
    fn initial_element(&self) -> Option<(ObOf<Self>, Self::Elem)> {
        (**self).initial_element()
    }
}

/// The representable `C(at, -)`.
#[derive(Debug, Clone)]
pub struct Representable<C: Category> {
    pub cat: C,
    pub at: C::Ob,
}

impl<C: Category> Representable<C> {
    pub fn new(cat: C, at: C::Ob) -> Self {
        Representable { cat, at }
    }
}

impl<C: Category> SetFunctor for Representable<C> {
    type Cat = C;
    type Elem = C::Mor;
    fn source(&self) -> &C {
        &self.cat
    }
    fn elements(&self, x: &C::Ob) -> Result<Vec<C::Mor>> {
        self.cat.hom(&self.at, x)
    }
    fn act(&self, f: &C::Mor, a: &C::Mor) -> C::Mor {
        self.cat.compose(f, a)
    }
    fn elem_label(&self, a: &C::Mor) -> String {
        self.cat.mor_label(a)
    }
    fn initial_element(&self) -> Option<(C::Ob, C::Mor)> {
        Some((self.at.clone(), self.cat.identity(&self.at)))
    }
}

/// A subsingleton-valued functor on a thin category: `F(x) = {*}` exactly
/// for the members. Lex exactly when the members form a filter.
#[derive(Debug, Clone)]
pub struct Filter<C> {
    pub cat: C,
    pub members: Vec<bool>,
}

impl<C: Category<Ob = usize>> Filter<C> {
    pub fn new(cat: C, members: Vec<bool>) -> Result<Self> {
        let n = cat.objects()?.len();
        if members.len() != n {
            return Err(CatError::Invalid(format!("filter has {} flags for {n} objects", members.len())));
        }
        Ok(Filter { cat, members })
    }

    /// The least member, if there is one.
    pub fn generator(&self) -> Option<usize> {
        let ms: Vec<usize> = (0..self.members.len()).filter(|&i| self.members[i]).collect();
        ms.iter().copied().find(|&g| {
            ms.iter()
                .all(|y| self.cat.hom(&g, y).map(|h| !h.is_empty()).unwrap_or(false))
        })
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members[x]
    }

    /// Members as a set of indices.
    pub fn member_set(&self) -> BTreeSet<usize> {
        (0..self.members.len()).filter(|&i| self.members[i]).collect()
    }
}

impl<C: Category<Ob = usize>> SetFunctor for Filter<C> {
    type Cat = C;
    type Elem = ();
    fn source(&self) -> &C {
        &self.cat
    }
    fn elements(&self, x: &usize) -> Result<Vec<()>> {
        match self.members.get(*x) {
            Some(true) => Ok(vec![()]),
            Some(false) => Ok(Vec::new()),
            None => Err(CatError::UnknownObject(format!("#{x}"))),
        }
    }
    fn act(&self, _f: &C::Mor, _a: &()) {}
    fn elem_label(&self, _a: &()) -> String {
        "*".into()
    }
    fn initial_element(&self) -> Option<(usize, ())> {
        self.generator().map(|g| (g, ()))
    }
}

/// The inclusion `FinSet -> Set`.
#[derive(Debug, Clone)]
pub struct IdentityFinSet {
    pub cat: SkelFinSet,
}

impl IdentityFinSet {
    pub fn new(cat: SkelFinSet) -> Self {
        IdentityFinSet { cat }
    }
}

impl SetFunctor for IdentityFinSet {
    type Cat = SkelFinSet;
    type Elem = usize;
    fn source(&self) -> &SkelFinSet {
        &self.cat
    }
    fn elements(&self, x: &usize) -> Result<Vec<usize>> {
        Ok((0..*x).collect())
    }
    fn act(&self, f: &FinFn, a: &usize) -> usize {
        f.apply(*a)
    }
    fn elem_label(&self, a: &usize) -> String {
        a.to_string()
    }
    fn initial_element(&self) -> Option<(usize, usize)> {
        Some((1, 0))
    }
}

/// The constant one-point functor.
#[derive(Debug, Clone)]
pub struct TerminalFunctor<C> {
    pub cat: C,
}

impl<C: Category> SetFunctor for TerminalFunctor<C> {
    type Cat = C;
    type Elem = ();
    fn source(&self) -> &C {
        &self.cat
    }
    fn elements(&self, _x: &C::Ob) -> Result<Vec<()>> {
        Ok(vec![()])
    }
    fn act(&self, _f: &C::Mor, _a: &()) {}
    fn elem_label(&self, _a: &()) -> String {
        "*".into()
    }
}

/// The pointwise product of a family of functors on one category.
#[derive(Debug, Clone)]
pub struct ProductFunctor<F: SetFunctor> {
    pub source: F::Cat,
    pub factors: Vec<F>,
}

impl<F: SetFunctor> ProductFunctor<F> {
    pub fn new(source: F::Cat, factors: Vec<F>) -> Self {
        ProductFunctor { source, factors }
    }
}

/// Cartesian product of element lists, lexicographic.
pub fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    let count = lists
        .iter()
        .fold(1u128, |acc, l| acc.saturating_mul(l.len() as u128));
    if count > ELEMENT_BOUND {
        return Err(CatError::overflow("product of element sets", count, ELEMENT_BOUND));
    }
    let choices: Vec<Vec<usize>> = lists.iter().map(|l| (0..l.len()).collect()).collect();
    Ok(crate::finset::product_of_choices(&choices)
        .into_iter()
        .map(|idx| idx.iter().zip(lists).map(|(&i, l)| l[i].clone()).collect())
        .collect())
}

impl<F: SetFunctor> SetFunctor for ProductFunctor<F> {
    type Cat = F::Cat;
    type Elem = Vec<F::Elem>;
    fn source(&self) -> &F::Cat {
        &self.source
    }
    fn elements(&self, x: &ObOf<F>) -> Result<Vec<Vec<F::Elem>>> {
        let lists = self
            .factors
            .iter()
            .map(|f| f.elements(x))
            .collect::<Result<Vec<_>>>()?;
        cartesian(&lists)
    }
    fn act(&self, f: &MorOf<F>, a: &Vec<F::Elem>) -> Vec<F::Elem> {
        self.factors
            .iter()
            .zip(a)
            .map(|(fac, e)| fac.act(f, e))
            .collect()
    }
    fn elem_label(&self, a: &Vec<F::Elem>) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .zip(a)
            .map(|(fac, e)| fac.elem_label(e))
            .collect();
        format!("({})", parts.join(","))
    }
}

/// A functor given by explicit element names and function tables on a
/// category with `usize` objects. Identities need not be listed.
#[derive(Debug, Clone)]
pub struct Tabulated<C: Category> {
    pub cat: C,
    pub sets: Vec<Vec<String>>,
    pub functions: HashMap<C::Mor, Vec<usize>>,
}

impl<C: Category<Ob = usize>> Tabulated<C> {
    /// Validates totality over the window and functoriality.
    pub fn new(cat: C, sets: Vec<Vec<String>>, functions: HashMap<C::Mor, Vec<usize>>) -> Result<Self> {
        let t = Tabulated { cat, sets, functions };
        if t.sets.len() != t.cat.objects()?.len() {
            return Err(CatError::Invalid("one element list per object is required".into()));
        }
        for f in all_morphisms(&t.cat)? {
            let (a, b) = (t.cat.dom(&f), t.cat.cod(&f));
            if f == t.cat.identity(&a) && !t.functions.contains_key(&f) {
                continue;
            }
            let table = t
                .functions
                .get(&f)
                .ok_or_else(|| CatError::Invalid(format!("no function for {}", t.cat.mor_label(&f))))?;
            if table.len() != t.sets[a].len() || table.iter().any(|&v| v >= t.sets[b].len()) {
                return Err(CatError::Invalid(format!("function for {} is ill-typed", t.cat.mor_label(&f))));
            }
        }
        let v = set_functor_violations(&t)?;
        if let Some(first) = v.first() {
            return Err(CatError::AxiomViolation(first.clone()));
        }
        Ok(t)
    }
}

impl<C: Category<Ob = usize>> SetFunctor for Tabulated<C> {
    type Cat = C;
    type Elem = usize;
    fn source(&self) -> &C {
        &self.cat
    }
    fn elements(&self, x: &usize) -> Result<Vec<usize>> {
        self.sets
            .get(*x)
            .map(|s| (0..s.len()).collect())
            .ok_or_else(|| CatError::UnknownObject(format!("#{x}")))
    }
    fn act(&self, f: &C::Mor, a: &usize) -> usize {
        match self.functions.get(f) {
            Some(t) => t[*a],
            None if *f == self.cat.identity(&self.cat.dom(f)) => *a,
            None => panic!("no function tabulated for {}", self.cat.mor_label(f)),
        }
    }
    fn elem_label(&self, a: &usize) -> String {
        // Labels are per object; the index is what identifies the element.
        a.to_string()
    }
}

/// Functoriality violations over the source window, as text.
pub fn set_functor_violations<F: SetFunctor>(f: &F) -> Result<Vec<String>> {
    let c = f.source();
    let mut out = Vec::new();
    let obs = c.objects()?;
    let mut sets: HashMap<ObOf<F>, Vec<F::Elem>> = HashMap::new();
    for x in &obs {
        sets.insert(x.clone(), f.elements(x)?);
    }
    for x in &obs {
        let id = c.identity(x);
        for a in &sets[x] {
            if f.act(&id, a) != *a {
                out.push(format!("identity of {} moves {}", c.ob_label(x), f.elem_label(a)));
            }
        }
    }
    let mors = all_morphisms(c)?;
    for g in &mors {
        let (x, y) = (c.dom(g), c.cod(g));
        for a in &sets[&x] {
            if !sets[&y].contains(&f.act(g, a)) {
                out.push(format!("{} sends {} outside its codomain", c.mor_label(g), f.elem_label(a)));
            }
        }
        for z in &obs {
            for h in c.hom(&y, z)? {
                let hg = c.compose(&h, g);
                for a in &sets[&x] {
                    if f.act(&hg, a) != f.act(&h, &f.act(g, a)) {
                        out.push(format!(
                            "composite {} ∘ {} not preserved at {}",
                            c.mor_label(&h),
                            c.mor_label(g),
                            f.elem_label(a)
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Spot-check that `F` preserves the terminal object, binary products and
/// equalizers of parallel pairs whose hom-set has at most `max_hom`
/// elements.
pub fn lex_findings<F: SetFunctor>(f: &F, max_hom: usize) -> Result<Vec<Finding>> {
    let c = f.source();
    let mut out = Vec::new();
    let one = c.terminal()?;
    if f.elements(&one)?.len() != 1 {
        out.push(Finding::fail("lex-terminal", "F(1) is not a singleton").with_witness([c.ob_label(&one)]));
        return Ok(out);
    }
    let obs = c.objects()?;
    for a in &obs {
        for b in &obs {
            let span = c.product(a, b)?;
            let apex = c.dom(&span.left);
            let els = f.elements(&apex)?;
            let image: BTreeSet<_> = els
                .iter()
                .map(|e| (f.act(&span.left, e), f.act(&span.right, e)))
                .collect();
            let expect = f.elements(a)?.len() * f.elements(b)?.len();
            if image.len() != els.len() || els.len() != expect {
                out.push(
                    Finding::fail("lex-products", "F does not preserve a binary product")
                        .with_witness([c.ob_label(a), c.ob_label(b)]),
                );
                return Ok(out);
            }
        }
    }
    for a in &obs {
        for b in &obs {
            let hs = c.hom(a, b)?;
            if hs.len() > max_hom {
                continue;
            }
            for g1 in &hs {
                for g2 in &hs {
                    let e = c.equalizer(g1, g2)?;
                    let els = f.elements(&c.dom(&e))?;
                    let image: BTreeSet<_> = els.iter().map(|x| f.act(&e, x)).collect();
                    let expect: BTreeSet<_> = f
                        .elements(a)?
                        .into_iter()
                        .filter(|x| f.act(g1, x) == f.act(g2, x))
                        .collect();
                    if image.len() != els.len() || image != expect {
                        out.push(
                            Finding::fail("lex-equalizers", "F does not preserve an equalizer")
                                .with_witness([c.mor_label(g1), c.mor_label(g2)]),
                        );
                        return Ok(out);
                    }
                }
            }
        }
    }
    out.push(Finding::pass("lex", format!("{} objects spot-checked", obs.len())));
    Ok(out)
}

/// A natural transformation between two set functors on one category.
pub trait Transformation {
    type Src: SetFunctor;
    type Tgt: SetFunctor<Cat = <Self::Src as SetFunctor>::Cat>;

    fn source(&self) -> &Self::Src;
    fn target(&self) -> &Self::Tgt;
    fn component(
        &self,
        x: &ObOf<Self::Src>,
        a: &<Self::Src as SetFunctor>::Elem,
    ) -> <Self::Tgt as SetFunctor>::Elem;
}

impl<T: Transformation> Transformation for &T {
    type Src = T::Src;
    type Tgt = T::Tgt;
    fn source(&self) -> &T::Src {
        (**self).source()
    }
    fn target(&self) -> &T::Tgt {
        (**self).target()
    }
    fn component(
        &self,
        x: &ObOf<T::Src>,
        a: &<T::Src as SetFunctor>::Elem,
    ) -> <T::Tgt as SetFunctor>::Elem {
        (**self).component(x, a)
    }
}

/// A transformation given by a component function.
pub struct NatTransform<F, G, K> {
    pub source: F,
    pub target: G,
    pub component: K,
}

impl<F, G, K> NatTransform<F, G, K>
where
    F: SetFunctor,
    G: SetFunctor<Cat = F::Cat>,
    K: Fn(&ObOf<F>, &F::Elem) -> G::Elem,
{
    pub fn new(source: F, target: G, component: K) -> Self {
        NatTransform {
            source,
            target,
            component,
        }
    }
}

impl<F, G, K> Transformation for NatTransform<F, G, K>
where
    F: SetFunctor,
    G: SetFunctor<Cat = F::Cat>,
    K: Fn(&ObOf<F>, &F::Elem) -> G::Elem,
{
    type Src = F;
    type Tgt = G;
    fn source(&self) -> &F {
        &self.source
    }
    fn target(&self) -> &G {
        &self.target
    }
    fn component(&self, x: &ObOf<F>, a: &F::Elem) -> G::Elem {
        (self.component)(x, a)
    }
}

/// The identity transformation of `F`.
pub fn identity_transform<F: SetFunctor + Clone>(
    f: F,
) -> NatTransform<F, F, impl Fn(&ObOf<F>, &F::Elem) -> F::Elem> {
    NatTransform::new(f.clone(), f, |_x: &ObOf<F>, a: &F::Elem| a.clone())
}

/// Naturality and well-typedness violations over the window.
pub fn naturality_violations<T: Transformation>(t: &T) -> Result<Vec<String>> {
    let (f, g) = (t.source(), t.target());
    let c = f.source();
    let mut out = Vec::new();
    for x in c.objects()? {
        let gx = g.elements(&x)?;
        for a in f.elements(&x)? {
            if !gx.contains(&t.component(&x, &a)) {
                out.push(format!(
                    "component at {} sends {} outside the target",
                    c.ob_label(&x),
                    f.elem_label(&a)
                ));
            }
        }
    }
    for h in all_morphisms(c)? {
        let (x, y) = (c.dom(&h), c.cod(&h));
        for a in f.elements(&x)? {
            let lhs = t.component(&y, &f.act(&h, &a));
            let rhs = g.act(&h, &t.component(&x, &a));
            if lhs != rhs {
                out.push(format!(
                    "square at {} fails for {}",
                    c.mor_label(&h),
                    f.elem_label(&a)
                ));
            }
        }
    }
    Ok(out)
}

/// Whether `F(x)` and `G(x)` are in bijection via the components, at every
/// window object.
pub fn is_pointwise_bijective<T: Transformation>(t: &T) -> Result<bool> {
    let (f, g) = (t.source(), t.target());
    for x in f.source().objects()? {
        let fx = f.elements(&x)?;
        let gx = g.elements(&x)?;
        let image: BTreeSet<_> = fx.iter().map(|a| t.component(&x, a)).collect();
        if image.len() != fx.len() || image.len() != gx.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::chain;

    #[test]
    fn representable_on_finset_counts() {
        let c = SkelFinSet::new(4).unwrap();
        let f = Representable::new(c, 2);
        assert_eq!(f.elements(&3).unwrap().len(), 9);
    }

    #[test]
    fn filter_functor_is_functorial() {
        let l = chain(&["0", "m", "1"]).unwrap();
        let f = Filter::new(l.poset().clone(), l.principal_filter(1)).unwrap();
        assert!(set_functor_violations(&f).unwrap().is_empty());
        assert_eq!(f.generator(), Some(1));
    }

    #[test]
    fn product_functor_pairs_elements() {
        let c = SkelFinSet::new(3).unwrap();
        let p = ProductFunctor::new(c.clone(), vec![IdentityFinSet::new(c.clone()), IdentityFinSet::new(c)]);
        assert_eq!(p.elements(&3).unwrap().len(), 9);
        assert!(set_functor_violations(&p).unwrap().is_empty());
    }

    #[test]
    fn broken_naturality_is_reported() {
        let c = SkelFinSet::new(2).unwrap();
        let id = IdentityFinSet::new(c);
        let t = NatTransform::new(id.clone(), id, |_x: &usize, _a: &usize| 0usize);
        assert!(!naturality_violations(&t).unwrap().is_empty());
    }
}
