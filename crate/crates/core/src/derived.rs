//! Slices `C/x`, categories of elements `∫F`, and pullback functors
//! `f⁻¹: C/x -> C/y`.

use crate::category::{Category, Functor, Span};
use crate::error::{CatError, Result};
use crate::functor::{ObOf, SetFunctor};

/// Bound on the number of objects of a derived category's window.
pub const OBJECT_BOUND: u128 = 1 << 16;

/// A morphism of a slice: `map: dom src -> dom tgt` with `tgt ∘ map = src`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SliceMor<M> {
    pub map: M,
    pub src: M,
    pub tgt: M,
}

/// The slice `C/x`; objects are morphisms into `x`.
#[derive(Debug, Clone)]
pub struct Slice<C: Category> {
    pub base: C,
    pub over: C::Ob,
}

impl<C: Category> Slice<C> {
    pub fn new(base: C, over: C::Ob) -> Result<Self> {
        if !base.objects()?.contains(&over) {
            return Err(CatError::UnknownObject(base.ob_label(&over)));
        }
        Ok(Slice { base, over })
    }

    /// Builds a slice over an object outside the enumerated window.
    pub fn new_unchecked(base: C, over: C::Ob) -> Self {
        Slice { base, over }
    }

    pub fn arrow(&self, map: C::Mor, src: C::Mor, tgt: C::Mor) -> SliceMor<C::Mor> {
        SliceMor { map, src, tgt }
    }

    /// The terminal object `id_x`.
    pub fn top(&self) -> C::Mor {
        self.base.identity(&self.over)
    }

    /// `!⁻¹ z`: the projection `z × x -> x`.
    pub fn pullback_of_object(&self, z: &C::Ob) -> Result<C::Mor> {
        Ok(self.base.product(z, &self.over)?.right)
    }
}

impl<C: Category> Category for Slice<C> {
    type Ob = C::Mor;
    type Mor = SliceMor<C::Mor>;

    fn objects(&self) -> Result<Vec<C::Mor>> {
        let mut out = Vec::new();
        for w in self.base.objects()? {
            out.extend(self.base.hom(&w, &self.over)?);
            if out.len() as u128 > OBJECT_BOUND {
                return Err(CatError::overflow("slice objects", out.len() as u128, OBJECT_BOUND));
            }
        }
        Ok(out)
    }
    fn hom(&self, p: &C::Mor, q: &C::Mor) -> Result<Vec<Self::Mor>> {
        Ok(self
            .base
            .slice_hom(p, q)?
            .into_iter()
            .map(|g| SliceMor {
                map: g,
                src: p.clone(),
                tgt: q.clone(),
            })
            .collect())
    }
    fn dom(&self, f: &Self::Mor) -> C::Mor {
        f.src.clone()
    }
    fn cod(&self, f: &Self::Mor) -> C::Mor {
        f.tgt.clone()
    }
    fn identity(&self, p: &C::Mor) -> Self::Mor {
        SliceMor {
            map: self.base.identity(&self.base.dom(p)),
            src: p.clone(),
            tgt: p.clone(),
        }
    }
    fn try_compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor> {
        if f.tgt != g.src {
            return None;
        }
        Some(SliceMor {
            map: self.base.try_compose(&g.map, &f.map)?,
            src: f.src.clone(),
            tgt: g.tgt.clone(),
        })
    }
    fn is_thin(&self) -> bool {
        self.base.is_thin()
    }
    fn enumeration_complete(&self) -> bool {
        self.base.enumeration_complete()
    }
    fn ob_label(&self, p: &C::Mor) -> String {
        self.base.mor_label(p)
    }
    fn mor_label(&self, f: &Self::Mor) -> String {
        format!("{} over {}", self.base.mor_label(&f.map), self.base.ob_label(&self.over))
    }
    fn terminal(&self) -> Result<C::Mor> {
        Ok(self.top())
    }
    /// Pullback over `x`.
    fn product(&self, p: &C::Mor, q: &C::Mor) -> Result<Span<Self::Mor>> {
        let s = self.base.pullback(p, q)?;
        let apex = self.base.compose(p, &s.left);
        Ok(Span {
            left: SliceMor {
                map: s.left,
                src: apex.clone(),
                tgt: p.clone(),
            },
            right: SliceMor {
                map: s.right,
                src: apex,
                tgt: q.clone(),
            },
        })
    }
    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Span<Self::Mor>> {
        if f.tgt != g.tgt {
            return Err(CatError::Invalid("pullback of a non-cospan".into()));
        }
        let s = self.base.pullback(&f.map, &g.map)?;
        let apex = self.base.compose(&f.src, &s.left);
        Ok(Span {
            left: SliceMor {
                map: s.left,
                src: apex.clone(),
                tgt: f.src.clone(),
            },
            right: SliceMor {
                map: s.right,
                src: apex,
                tgt: g.src.clone(),
            },
        })
    }
    fn equalizer(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor> {
        let e = self.base.equalizer(&f.map, &g.map)?;
        Ok(SliceMor {
            src: self.base.compose(&f.src, &e),
            map: e,
            tgt: f.src.clone(),
        })
    }
    fn mediate(&self, span: &Span<Self::Mor>, p: &Self::Mor, q: &Self::Mor) -> Result<Self::Mor> {
        let base_span = Span {
            left: span.left.map.clone(),
            right: span.right.map.clone(),
        };
        let m = self.base.mediate(&base_span, &p.map, &q.map)?;
        Ok(SliceMor {
            map: m,
            src: p.src.clone(),
            tgt: span.left.src.clone(),
        })
    }
}

/// The forgetful functor `C/x -> C`.
pub struct Forget<'a, C: Category> {
    pub slice: &'a Slice<C>,
}

impl<'a, C: Category> Functor for Forget<'a, C> {
    type Src = Slice<C>;
    type Tgt = C;
    fn source(&self) -> &Slice<C> {
        self.slice
    }
    fn target(&self) -> &C {
        &self.slice.base
    }
    fn on_ob(&self, p: &C::Mor) -> C::Ob {
        self.slice.base.dom(p)
    }
    fn on_mor(&self, f: &SliceMor<C::Mor>) -> C::Mor {
        f.map.clone()
    }
}

/// The pullback functor `f⁻¹: C/x -> C/y` for `f: y -> x`, built from the
/// base category's chosen pullbacks.
pub struct PullbackFunctor<C: Category> {
    pub src: Slice<C>,
    pub tgt: Slice<C>,
    pub along: C::Mor,
}

impl<C: Category + Clone> PullbackFunctor<C> {
    pub fn new(base: C, along: C::Mor) -> Self {
        let (y, x) = (base.dom(&along), base.cod(&along));
        PullbackFunctor {
            src: Slice::new_unchecked(base.clone(), x),
            tgt: Slice::new_unchecked(base, y),
            along,
        }
    }
}

impl<C: Category> PullbackFunctor<C> {
    pub fn try_on_ob(&self, p: &C::Mor) -> Result<C::Mor> {
        Ok(self.src.base.pullback(&self.along, p)?.left)
    }

    pub fn try_on_mor(&self, g: &SliceMor<C::Mor>) -> Result<SliceMor<C::Mor>> {
        let c = &self.src.base;
        let sp = c.pullback(&self.along, &g.src)?;
        let sq = c.pullback(&self.along, &g.tgt)?;
        let m = c.mediate(&sq, &sp.left, &c.compose(&g.map, &sp.right))?;
        Ok(SliceMor {
            map: m,
            src: sp.left,
            tgt: sq.left,
        })
    }
}

impl<C: Category> Functor for PullbackFunctor<C> {
    type Src = Slice<C>;
    type Tgt = Slice<C>;
    fn source(&self) -> &Slice<C> {
        &self.src
    }
    fn target(&self) -> &Slice<C> {
        &self.tgt
    }
    fn on_ob(&self, p: &C::Mor) -> C::Mor {
        self.try_on_ob(p).expect("base category has the required pullbacks")
    }
    fn on_mor(&self, g: &SliceMor<C::Mor>) -> SliceMor<C::Mor> {
        self.try_on_mor(g)
            .expect("base category has the required pullbacks")
    }
}

/// A morphism of `∫F`: the base morphism and the element it starts from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElMor<M, E> {
    pub map: M,
    pub from: E,
}

/// The category of elements of a set functor.
pub struct Elements<F: SetFunctor> {
    pub functor: F,
}

impl<F: SetFunctor> Elements<F> {
    pub fn new(functor: F) -> Self {
        Elements { functor }
    }

    /// The object `(x, a)` must satisfy `a ∈ F(x)`.
    pub fn contains(&self, ob: &(ObOf<F>, F::Elem)) -> Result<bool> {
        Ok(self.functor.elements(&ob.0)?.contains(&ob.1))
    }
}

impl<F: SetFunctor> Category for Elements<F> {
    type Ob = (ObOf<F>, F::Elem);
    type Mor = ElMor<<F::Cat as Category>::Mor, F::Elem>;

    fn objects(&self) -> Result<Vec<Self::Ob>> {
        let mut out = Vec::new();
        for x in self.functor.source().objects()? {
            for a in self.functor.elements(&x)? {
                out.push((x.clone(), a));
            }
            if out.len() as u128 > OBJECT_BOUND {
                return Err(CatError::overflow("elements", out.len() as u128, OBJECT_BOUND));
            }
        }
        Ok(out)
    }
    fn hom(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Vec<Self::Mor>> {
        Ok(self
            .functor
            .source()
            .hom(&a.0, &b.0)?
            .into_iter()
            .filter(|f| self.functor.act(f, &a.1) == b.1)
            .map(|f| ElMor {
                map: f,
                from: a.1.clone(),
            })
            .collect())
    }
    fn dom(&self, f: &Self::Mor) -> Self::Ob {
        (self.functor.source().dom(&f.map), f.from.clone())
    }
    fn cod(&self, f: &Self::Mor) -> Self::Ob {
        (
            self.functor.source().cod(&f.map),
            self.functor.act(&f.map, &f.from),
        )
    }
    fn identity(&self, a: &Self::Ob) -> Self::Mor {
        ElMor {
            map: self.functor.source().identity(&a.0),
            from: a.1.clone(),
        }
    }
    fn try_compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor> {
        if self.cod(f) != self.dom(g) {
            return None;
        }
        Some(ElMor {
            map: self.functor.source().try_compose(&g.map, &f.map)?,
            from: f.from.clone(),
        })
    }
    fn is_thin(&self) -> bool {
        self.functor.source().is_thin()
    }
    fn enumeration_complete(&self) -> bool {
        self.functor.source().enumeration_complete()
    }
    fn ob_label(&self, a: &Self::Ob) -> String {
        format!(
            "({}, {})",
            self.functor.source().ob_label(&a.0),
            self.functor.elem_label(&a.1)
        )
    }
    fn mor_label(&self, f: &Self::Mor) -> String {
        format!(
            "{} at {}",
            self.functor.source().mor_label(&f.map),
            self.functor.elem_label(&f.from)
        )
    }
}

/// The projection `∫F -> C`.
pub struct ElementsProjection<'a, F: SetFunctor> {
    pub elements: &'a Elements<F>,
}

impl<'a, F: SetFunctor> Functor for ElementsProjection<'a, F> {
    type Src = Elements<F>;
    type Tgt = F::Cat;
    fn source(&self) -> &Elements<F> {
        self.elements
    }
    fn target(&self) -> &F::Cat {
        self.elements.functor.source()
    }
    fn on_ob(&self, a: &(ObOf<F>, F::Elem)) -> ObOf<F> {
        a.0.clone()
    }
    fn on_mor(&self, f: &ElMor<<F::Cat as Category>::Mor, F::Elem>) -> <F::Cat as Category>::Mor {
        f.map.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{all_morphisms, find_initial, functor_violations};
    use crate::finset::SkelFinSet;
    use crate::functor::{IdentityFinSet, Representable};
    use crate::poset::Poset;

    #[test]
    fn slice_of_finset_over_two() {
        let c = SkelFinSet::new(4).unwrap();
        let s = Slice::new(c, 2).unwrap();
        assert_eq!(s.objects().unwrap().len(), 1 + 2 + 4 + 8 + 16);
    }

    #[test]
    fn elements_of_identity() {
        let c = SkelFinSet::new(3).unwrap();
        let e = Elements::new(IdentityFinSet::new(c));
        assert_eq!(e.objects().unwrap().len(), 6);
    }

    #[test]
    fn representable_elements_have_initial_object() {
        let p = Poset::from_relations(vec!["0".into(), "a".into(), "1".into()], &[(0, 1), (1, 2)]).unwrap();
        let e = Elements::new(Representable::new(p, 1));
        assert_eq!(find_initial(&e).unwrap(), Some((1, (1, 1))));
    }

    #[test]
    fn pullback_functor_is_functorial() {
        let c = SkelFinSet::new(2).unwrap();
        let point = crate::finset::FinFn::new(2, vec![0]).unwrap();
        let f = PullbackFunctor::new(c, point);
        assert!(functor_violations(&f).unwrap().is_empty());
        assert!(!all_morphisms(&f.src).unwrap().is_empty());
    }
}
