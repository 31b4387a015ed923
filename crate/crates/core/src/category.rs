//! The category interface shared by every backend and every derived
//! construction.
//!
//! Objects and morphisms are plain values with structural equality. A
//! category enumerates a *window* of its objects; for finite backends the
//! window is everything, for capped ones ([`crate::finset::SkelFinSet`]) it
//! is a prefix and [`Category::enumeration_complete`] says so.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{CatError, Result};
use crate::limits;

/// A pair of morphisms with a common domain (the apex).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span<M> {
    pub left: M,
    pub right: M,
}

/// A pair of morphisms with a common codomain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cospan<M> {
    pub left: M,
    pub right: M,
}

pub trait Category {
    type Ob: Clone + Eq + Ord + Hash + Debug;
    type Mor: Clone + Eq + Ord + Hash + Debug;

    /// Objects inside the enumeration window, in canonical order.
    fn objects(&self) -> Result<Vec<Self::Ob>>;
    /// All morphisms `a -> b`, in canonical order.
    fn hom(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Vec<Self::Mor>>;
    fn dom(&self, f: &Self::Mor) -> Self::Ob;
    fn cod(&self, f: &Self::Mor) -> Self::Ob;
    fn identity(&self, a: &Self::Ob) -> Self::Mor;
    /// `g ∘ f`, or `None` when the pair is not composable or the composite
    /// is undefined.
    fn try_compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;

    /// `g ∘ f`. Panics on a non-composable pair.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!(
                "composite {} ∘ {} is undefined",
                self.mor_label(g),
                self.mor_label(f)
            )
        })
    }

    /// At most one morphism between any two objects.
    fn is_thin(&self) -> bool {
        false
    }

    /// Whether [`Category::objects`] lists every object.
    fn enumeration_complete(&self) -> bool {
        true
    }

    fn ob_label(&self, a: &Self::Ob) -> String {
        format!("{a:?}")
    }

    fn mor_label(&self, f: &Self::Mor) -> String {
        format!("{f:?}")
    }

    /// Morphisms `g: dom p -> dom q` with `q ∘ g = p`, i.e. the hom-set of
    /// the slice over the common codomain of `p` and `q`.
    fn slice_hom(&self, p: &Self::Mor, q: &Self::Mor) -> Result<Vec<Self::Mor>>
    where
        Self: Sized,
    {
        let all = self.hom(&self.dom(p), &self.dom(q))?;
        Ok(all
            .into_iter()
            .filter(|g| self.compose(q, g) == *p)
            .collect())
    }

    fn terminal(&self) -> Result<Self::Ob>
    where
        Self: Sized,
    {
        limits::search_terminal(self)
    }

    /// Product of `a` and `b`: `left: a×b -> a`, `right: a×b -> b`.
    fn product(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Span<Self::Mor>>
    where
        Self: Sized,
    {
        limits::search_product(self, a, b)
    }

    /// Pullback of the cospan `f: a -> c <- b: g`; `left` maps to `a`.
    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Span<Self::Mor>>
    where
        Self: Sized,
    {
        limits::search_pullback(self, f, g)
    }

    /// Equalizer of the parallel pair `f, g`.
    fn equalizer(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>
    where
        Self: Sized,
    {
        limits::search_equalizer(self, f, g)
    }

    fn initial(&self) -> Result<Self::Ob>
    where
        Self: Sized,
    {
        limits::search_initial(self)
    }

    /// Coproduct of `a` and `b` with injections `left: a -> a+b`, `right: b -> a+b`.
    fn coproduct(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Cospan<Self::Mor>>
    where
        Self: Sized,
    {
        limits::search_coproduct(self, a, b)
    }

    fn coequalizer(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>
    where
        Self: Sized,
    {
        limits::search_coequalizer(self, f, g)
    }

    /// The mediating morphism into a pullback (or product) span from a
    /// competing pair `p`, `q` with common domain.
    fn mediate(&self, span: &Span<Self::Mor>, p: &Self::Mor, q: &Self::Mor) -> Result<Self::Mor>
    where
        Self: Sized,
    {
        let apex = self.dom(&span.left);
        let cands = self.hom(&self.dom(p), &apex)?;
        let mut found = cands.into_iter().filter(|m| {
            self.compose(&span.left, m) == *p && self.compose(&span.right, m) == *q
        });
        let first = found.next();
        match (first, found.next()) {
            (Some(m), None) => Ok(m),
            (None, _) => Err(CatError::NoLimit(format!(
                "no mediating morphism from {} into span apex {}",
                self.ob_label(&self.dom(p)),
                self.ob_label(&apex)
            ))),
            (Some(_), Some(_)) => Err(CatError::NoLimit(format!(
                "mediating morphism into {} is not unique",
                self.ob_label(&apex)
            ))),
        }
    }
}

impl<C: Category> Category for &C {
    type Ob = C::Ob;
    type Mor = C::Mor;

    fn objects(&self) -> Result<Vec<Self::Ob>> {
        (**self).objects()
    }
    fn hom(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Vec<Self::Mor>> {
        (**self).hom(a, b)
    }
    fn dom(&self, f: &Self::Mor) -> Self::Ob {
        (**self).dom(f)
    }
    fn cod(&self, f: &Self::Mor) -> Self::Ob {
        (**self).cod(f)
    }
    fn identity(&self, a: &Self::Ob) -> Self::Mor {
        (**self).identity(a)
    }
    fn try_compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor> {
        (**self).try_compose(g, f)
    }
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor {
        (**self).compose(g, f)
    }
    fn is_thin(&self) -> bool {
        (**self).is_thin()
    }
    fn enumeration_complete(&self) -> bool {
        (**self).enumeration_complete()
    }
    fn ob_label(&self, a: &Self::Ob) -> String {
        (**self).ob_label(a)
    }
    fn mor_label(&self, f: &Self::Mor) -> String {
        (**self).mor_label(f)
    }
    fn slice_hom(&self, p: &Self::Mor, q: &Self::Mor) -> Result<Vec<Self::Mor>> {
        (**self).slice_hom(p, q)
    }
    fn terminal(&self) -> Result<Self::Ob> {
        (**self).terminal()
    }
    fn product(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Span<Self::Mor>> {
        (**self).product(a, b)
    }
    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Span<Self::Mor>> {
        (**self).pullback(f, g)
    }
    fn equalizer(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor> {
        (**self).equalizer(f, g)
    }
    fn initial(&self) -> Result<Self::Ob> {
        (**self).initial()
    }
    fn coproduct(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Cospan<Self::Mor>> {
        (**self).coproduct(a, b)
    }
    fn coequalizer(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor> {
        (**self).coequalizer(f, g)
    }
    fn mediate(&self, span: &Span<Self::Mor>, p: &Self::Mor, q: &Self::Mor) -> Result<Self::Mor> {
        (**self).mediate(span, p, q)
    }
}

/// Every morphism of the window, grouped by (domain, codomain) in object order.
pub fn all_morphisms<C: Category>(c: &C) -> Result<Vec<C::Mor>> {
    let obs = c.objects()?;
    let mut out = Vec::new();
    for a in &obs {
        for b in &obs {
            out.extend(c.hom(a, b)?);
        }
    }
    Ok(out)
}

/// Monomorphism test. Uses the kernel pair when the pullback is available,
/// otherwise checks injectivity of post-composition over the window.
pub fn is_mono<C: Category>(c: &C, f: &C::Mor) -> Result<bool> {
    if c.is_thin() {
        return Ok(true);
    }
    match c.pullback(f, f) {
        Ok(kp) => Ok(kp.left == kp.right),
        Err(_) => {
            let a = c.dom(f);
            for w in c.objects()? {
                let hs = c.hom(&w, &a)?;
                let mut seen = std::collections::HashSet::new();
                for h in &hs {
                    if !seen.insert(c.compose(f, h)) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

/// Returns an inverse of `f` if one exists.
pub fn inverse<C: Category>(c: &C, f: &C::Mor) -> Result<Option<C::Mor>> {
    let (a, b) = (c.dom(f), c.cod(f));
    for g in c.hom(&b, &a)? {
        if c.compose(&g, f) == c.identity(&a) && c.compose(f, &g) == c.identity(&b) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

pub fn is_iso<C: Category>(c: &C, f: &C::Mor) -> Result<bool> {
    Ok(inverse(c, f)?.is_some())
}

/// The unique morphism `a -> b`, if exactly one exists.
pub fn unique_hom<C: Category>(c: &C, a: &C::Ob, b: &C::Ob) -> Result<Option<C::Mor>> {
    let hs = c.hom(a, b)?;
    Ok(if hs.len() == 1 { hs.into_iter().next() } else { None })
}

/// First object `i` of the window with exactly one morphism into every
/// window object.
pub fn find_initial<C: Category>(c: &C) -> Result<Option<C::Ob>> {
    let obs = c.objects()?;
    'cand: for i in &obs {
        for x in &obs {
            if c.hom(i, x)?.len() != 1 {
                continue 'cand;
            }
        }
        return Ok(Some(i.clone()));
    }
    Ok(None)
}

/// The opposite category. Limits and colimits swap.
#[derive(Debug, Clone)]
pub struct Op<C>(pub C);

impl<C: Category> Category for Op<C> {
    type Ob = C::Ob;
    type Mor = C::Mor;

    fn objects(&self) -> Result<Vec<Self::Ob>> {
        self.0.objects()
    }
    fn hom(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Vec<Self::Mor>> {
        self.0.hom(b, a)
    }
    fn dom(&self, f: &Self::Mor) -> Self::Ob {
        self.0.cod(f)
    }
    fn cod(&self, f: &Self::Mor) -> Self::Ob {
        self.0.dom(f)
    }
    fn identity(&self, a: &Self::Ob) -> Self::Mor {
        self.0.identity(a)
    }
    fn try_compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor> {
        self.0.try_compose(f, g)
    }
    fn is_thin(&self) -> bool {
        self.0.is_thin()
    }
    fn enumeration_complete(&self) -> bool {
        self.0.enumeration_complete()
    }
    fn ob_label(&self, a: &Self::Ob) -> String {
        self.0.ob_label(a)
    }
    fn mor_label(&self, f: &Self::Mor) -> String {
        format!("{}^op", self.0.mor_label(f))
    }
}

/// A functor between two categories.
pub trait Functor {
    type Src: Category;
    type Tgt: Category;

    fn source(&self) -> &Self::Src;
    fn target(&self) -> &Self::Tgt;
    fn on_ob(&self, x: &<Self::Src as Category>::Ob) -> <Self::Tgt as Category>::Ob;
    fn on_mor(&self, f: &<Self::Src as Category>::Mor) -> <Self::Tgt as Category>::Mor;
}

/// Functoriality violations of `f` over the source window, as text.
pub fn functor_violations<F: Functor>(f: &F) -> Result<Vec<String>> {
    let src = f.source();
    let tgt = f.target();
    let mut out = Vec::new();
    let obs = src.objects()?;
    for x in &obs {
        if f.on_mor(&src.identity(x)) != tgt.identity(&f.on_ob(x)) {
            out.push(format!("identity of {} not preserved", src.ob_label(x)));
        }
    }
    let mors = all_morphisms(src)?;
    for g in &mors {
        let fg = f.on_mor(g);
        if tgt.dom(&fg) != f.on_ob(&src.dom(g)) || tgt.cod(&fg) != f.on_ob(&src.cod(g)) {
            out.push(format!("dom/cod of {} not preserved", src.mor_label(g)));
        }
    }
    for g in &mors {
        let y = src.cod(g);
        for z in &obs {
            for h in src.hom(&y, z)? {
                let lhs = f.on_mor(&src.compose(&h, g));
                let rhs = tgt.compose(&f.on_mor(&h), &f.on_mor(g));
                if lhs != rhs {
                    out.push(format!(
                        "composite {} ∘ {} not preserved",
                        src.mor_label(&h),
                        src.mor_label(g)
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Identity functor.
#[derive(Debug, Clone)]
pub struct IdentityFunctor<C>(pub C);

impl<C: Category> Functor for IdentityFunctor<C> {
    type Src = C;
    type Tgt = C;
    fn source(&self) -> &C {
        &self.0
    }
    fn target(&self) -> &C {
        &self.0
    }
    fn on_ob(&self, x: &C::Ob) -> C::Ob {
        x.clone()
    }
    fn on_mor(&self, f: &C::Mor) -> C::Mor {
        f.clone()
    }
}
