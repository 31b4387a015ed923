//! The diagram category `C_F = colim_{(x,a) ∈ (∫F)^op} C/x` of a lex
//! functor `F: C -> Set`, with its morphism calculus, the cocone functor
//! `φ_F`, global sections `Γ`, the unit `η_F`, functoriality in `F`, and
//! extension of models along `φ_F`.
//!
//! Objects are pairs `(u: v -> x, a ∈ F(x))`. A morphism representative
//! lives over an object `(r, c)` of `∫F` with legs `h1: r -> x`,
//! `h2: r -> y` and a map `f` between the pullbacks `h1*u -> h2*v` over `r`.
//! When `∫F` has an initial object `(k, c0)` every representative can be
//! refined to it, and equality there is decisive; this is the normal form
//! in which `C_F ≃ C/k` is a genuine enumerable category.

use std::collections::BTreeSet;
use std::fmt::Debug;

use serde::Serialize;

use crate::category::{find_initial, Category, Functor, Span};
use crate::derived::{Elements, OBJECT_BOUND};
use crate::error::{CatError, Result};
use crate::functor::{lex_findings, SetFunctor, Transformation};
use crate::report::{Finding, Report, Verdict};

/// Default expansion depth for [`DiagramCategory::hom_equal`].
pub const DEFAULT_DEPTH: usize = 4;

/// Hom-sets of the base above this size are skipped by the lex spot-check.
const LEX_HOM_LIMIT: usize = 16;

/// An object `(u: v -> x, a)` of `C_F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DiagObj<M, E> {
    pub u: M,
    pub a: E,
}

/// A representative of a morphism of `C_F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagRep<O, M, E> {
    pub src: DiagObj<M, E>,
    pub tgt: DiagObj<M, E>,
    pub r: O,
    pub c: E,
    pub h1: M,
    pub h2: M,
    pub f: M,
}

/// Outcome of comparing two representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HomEq {
    /// Identified after the given number of expansion stages.
    Equal(usize),
    Distinct,
    /// Neither identified nor separated within the depth bound.
    Unknown(usize),
}

type Ob<C> = <C as Category>::Ob;
type Mor<C> = <C as Category>::Mor;
pub type ObjOf<C, F> = DiagObj<Mor<C>, <F as SetFunctor>::Elem>;
pub type RepOf<C, F> = DiagRep<Ob<C>, Mor<C>, <F as SetFunctor>::Elem>;

/// `C_F` for a lex functor `F` on `C`.
#[derive(Debug, Clone)]
pub struct DiagramCategory<F: SetFunctor> {
    pub functor: F,
    pub depth: usize,
    initial: Option<(Ob<F::Cat>, F::Elem)>,
}

impl<F: SetFunctor> DiagramCategory<F> {
    /// Builds `C_F` after a lex spot-check of `F`.
    pub fn build(functor: F, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(CatError::Invalid("depth bound must be positive".into()));
        }
        for finding in lex_findings(&functor, LEX_HOM_LIMIT)? {
            if finding.verdict == Verdict::Fail {
                return Err(CatError::NotLex(format!("{}: {}", finding.detail, finding.witness.join(", "))));
            }
        }
        let initial = match functor.initial_element() {
            Some(i) => Some(i),
            None => find_initial(&Elements::new(&functor)).unwrap_or(None),
        };
        Ok(DiagramCategory {
            functor,
            depth,
            initial,
        })
    }

    pub fn base(&self) -> &F::Cat {
        self.functor.source()
    }

    /// The initial object `(k, c0)` of `∫F`, when there is one.
    pub fn initial(&self) -> Option<&(Ob<F::Cat>, F::Elem)> {
        self.initial.as_ref()
    }

    pub fn has_normal_form(&self) -> bool {
        self.initial.is_some()
    }

    pub fn obj_label(&self, o: &ObjOf<F::Cat, F>) -> String {
        format!("({}, {})", self.base().mor_label(&o.u), self.functor.elem_label(&o.a))
    }

    pub fn rep_label(&self, m: &RepOf<F::Cat, F>) -> String {
        let c = self.base();
        format!(
            "[{} over ({}, {}) via {}, {}]",
            c.mor_label(&m.f),
            c.ob_label(&m.r),
            self.functor.elem_label(&m.c),
            c.mor_label(&m.h1),
            c.mor_label(&m.h2)
        )
    }

    pub fn is_object(&self, o: &ObjOf<F::Cat, F>) -> Result<bool> {
        let x = self.base().cod(&o.u);
        Ok(self.functor.elements(&x)?.contains(&o.a))
    }

    fn pb(&self, h: &Mor<F::Cat>, u: &Mor<F::Cat>) -> Result<Span<Mor<F::Cat>>> {
        self.base().pullback(h, u)
    }

    /// Validates a representative.
    pub fn check_rep(&self, m: &RepOf<F::Cat, F>) -> Result<()> {
        let c = self.base();
        let bad = |why: &str| Err(CatError::Invalid(format!("{}: {why}", self.rep_label(m))));
        if c.dom(&m.h1) != m.r || c.dom(&m.h2) != m.r {
            return bad("legs do not start at the index");
        }
        if c.cod(&m.h1) != c.cod(&m.src.u) || c.cod(&m.h2) != c.cod(&m.tgt.u) {
            return bad("legs do not end at the marked objects");
        }
        if !self.functor.elements(&m.r)?.contains(&m.c) {
            return bad("marker is not an element at the index");
        }
        if self.functor.act(&m.h1, &m.c) != m.src.a || self.functor.act(&m.h2, &m.c) != m.tgt.a {
            return bad("legs do not carry the marker to the object markers");
        }
        let p1 = self.pb(&m.h1, &m.src.u)?;
        let p2 = self.pb(&m.h2, &m.tgt.u)?;
        if c.dom(&m.f) != c.dom(&p1.left) || c.cod(&m.f) != c.dom(&p2.left) {
            return bad("map does not run between the pulled-back objects");
        }
        if c.compose(&p2.left, &m.f) != p1.left {
            return bad("triangle over the index does not commute");
        }
        Ok(())
    }

    /// The identity representative, over `(x, a)`.
    pub fn identity_rep(&self, o: &ObjOf<F::Cat, F>) -> Result<RepOf<F::Cat, F>> {
        let c = self.base();
        let x = c.cod(&o.u);
        let id = c.identity(&x);
        let p = self.pb(&id, &o.u)?;
        Ok(DiagRep {
            src: o.clone(),
            tgt: o.clone(),
            r: x,
            c: o.a.clone(),
            h1: id.clone(),
            h2: id,
            f: c.identity(&c.dom(&p.left)),
        })
    }

    /// Pulls a representative back along `t: (s, d) -> (r, c)` in `∫F`.
    pub fn refine(&self, m: &RepOf<F::Cat, F>, t: &Mor<F::Cat>, d: &F::Elem) -> Result<RepOf<F::Cat, F>> {
        let c = self.base();
        if c.cod(t) != m.r || self.functor.act(t, d) != m.c {
            return Err(CatError::Invalid("refinement is not a morphism of ∫F into the index".into()));
        }
        let (h1, h2) = (c.compose(&m.h1, t), c.compose(&m.h2, t));
        let p1 = self.pb(&m.h1, &m.src.u)?;
        let p2 = self.pb(&m.h2, &m.tgt.u)?;
        let q1 = self.pb(&h1, &m.src.u)?;
        let q2 = self.pb(&h2, &m.tgt.u)?;
        let k = c.mediate(&p1, &c.compose(t, &q1.left), &q1.right)?;
        let to_v = c.compose(&p2.right, &c.compose(&m.f, &k));
        let f = c.mediate(&q2, &q1.left, &to_v)?;
        Ok(DiagRep {
            src: m.src.clone(),
            tgt: m.tgt.clone(),
            r: c.dom(t),
            c: d.clone(),
            h1,
            h2,
            f,
        })
    }

    /// The unique `t: k -> r` with `F(t)(c0) = c`.
    fn from_initial(&self, r: &Ob<F::Cat>, c: &F::Elem) -> Result<Option<Mor<F::Cat>>> {
        let Some((k, c0)) = &self.initial else {
            return Ok(None);
        };
        let mut ts = self
            .base()
            .hom(k, r)?
            .into_iter()
            .filter(|t| self.functor.act(t, c0) == *c);
        match (ts.next(), ts.next()) {
            (Some(t), None) => Ok(Some(t)),
            _ => Err(CatError::Invalid("marked initial object is not initial".into())),
        }
    }

    /// The representative refined to the initial index, or unchanged when
    /// there is none.
    pub fn normalize(&self, m: &RepOf<F::Cat, F>) -> Result<RepOf<F::Cat, F>> {
        match self.from_initial(&m.r, &m.c)? {
            Some(t) => {
                let c0 = self.initial.as_ref().map(|i| i.1.clone()).expect("initial present");
                self.refine(m, &t, &c0)
            }
            None => Ok(m.clone()),
        }
    }

    /// The marker of `s` whose images are `c1` and `c2`.
    fn paired_marker(
        &self,
        s: &Ob<F::Cat>,
        t1: &Mor<F::Cat>,
        c1: &F::Elem,
        t2: &Mor<F::Cat>,
        c2: &F::Elem,
    ) -> Result<Option<F::Elem>> {
        let mut it = self
            .functor
            .elements(s)?
            .into_iter()
            .filter(|d| self.functor.act(t1, d) == *c1 && self.functor.act(t2, d) == *c2);
        Ok(it.next())
    }

    /// The coarsest common refinement of the indices of `m1` and `m2`: the
    /// equalizer of the two leg pairs inside `r1 × r2`, with the paired
    /// marker.
    fn common_refinement(
        &self,
        m1: &RepOf<F::Cat, F>,
        m2: &RepOf<F::Cat, F>,
    ) -> Result<Option<(Mor<F::Cat>, Mor<F::Cat>, F::Elem)>> {
        let c = self.base();
        let rr = c.product(&m1.r, &m2.r)?;
        let (x, y) = (c.cod(&m1.h1), c.cod(&m1.h2));
        let xy = c.product(&x, &y)?;
        let k1 = c.mediate(
            &xy,
            &c.compose(&m1.h1, &rr.left),
            &c.compose(&m1.h2, &rr.left),
        )?;
        let k2 = c.mediate(
            &xy,
            &c.compose(&m2.h1, &rr.right),
            &c.compose(&m2.h2, &rr.right),
        )?;
        let e = c.equalizer(&k1, &k2)?;
        let (t1, t2) = (c.compose(&rr.left, &e), c.compose(&rr.right, &e));
        let s = c.dom(&e);
        Ok(self.paired_marker(&s, &t1, &m1.c, &t2, &m2.c)?.map(|d| (t1, t2, d)))
    }

    /// Whether the separator `F̃ = extend(F, id)` tells `m1` and `m2` apart.
    fn separated(&self, m1: &RepOf<F::Cat, F>, m2: &RepOf<F::Cat, F>) -> Result<bool> {
        let c = self.base();
        let start = c.dom(&m1.src.u);
        for e in self.functor.elements(&start)? {
            if self.functor.act(&m1.src.u, &e) != m1.src.a {
                continue;
            }
            if self.act_fiber(&self.functor, |_, a| a.clone(), m1, &e)?
                != self.act_fiber(&self.functor, |_, a| a.clone(), m2, &e)?
            {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Compares two representatives of morphisms with the same source and
    /// target. Stages: syntactic (0), the coarsest common refinement (1),
    /// the initial index (2, decisive), exhaustive search of `∫F` (3,
    /// decisive when the base enumeration is complete). The separator is
    /// consulted before stage 2.
    pub fn hom_equal(&self, m1: &RepOf<F::Cat, F>, m2: &RepOf<F::Cat, F>, depth: usize) -> HomEq {
        self.try_hom_equal(m1, m2, depth).unwrap_or(HomEq::Unknown(depth))
    }

    pub fn try_hom_equal(&self, m1: &RepOf<F::Cat, F>, m2: &RepOf<F::Cat, F>, depth: usize) -> Result<HomEq> {
        if m1.src != m2.src || m1.tgt != m2.tgt {
            return Ok(HomEq::Distinct);
        }
        if m1 == m2 {
            return Ok(HomEq::Equal(0));
        }
        if depth < 1 {
            return Ok(HomEq::Unknown(depth));
        }
        if let Some((t1, t2, d)) = self.common_refinement(m1, m2)? {
            if self.refine(m1, &t1, &d)? == self.refine(m2, &t2, &d)? {
                return Ok(HomEq::Equal(1));
            }
        }
        if self.separated(m1, m2).unwrap_or(false) {
            return Ok(HomEq::Distinct);
        }
        if depth < 2 {
            return Ok(HomEq::Unknown(depth));
        }
        if self.initial.is_some() {
            return Ok(if self.normalize(m1)? == self.normalize(m2)? {
                HomEq::Equal(2)
            } else {
                HomEq::Distinct
            });
        }
        if depth < 3 {
            return Ok(HomEq::Unknown(depth));
        }
        let c = self.base();
        for s in c.objects()? {
            let to1 = c.hom(&s, &m1.r)?;
            let to2 = c.hom(&s, &m2.r)?;
            for d in self.functor.elements(&s)? {
                for t1 in to1.iter().filter(|t| self.functor.act(t, &d) == m1.c) {
                    let (a1, b1) = (c.compose(&m1.h1, t1), c.compose(&m1.h2, t1));
                    for t2 in to2.iter().filter(|t| self.functor.act(t, &d) == m2.c) {
                        if c.compose(&m2.h1, t2) != a1 || c.compose(&m2.h2, t2) != b1 {
                            continue;
                        }
                        if self.refine(m1, t1, &d)? == self.refine(m2, t2, &d)? {
                            return Ok(HomEq::Equal(3));
                        }
                    }
                }
            }
        }
        Ok(if c.enumeration_complete() {
            HomEq::Distinct
        } else {
            HomEq::Unknown(depth)
        })
    }

    /// `m2 ∘ m1`, chased to the pullback `r1 ×_y r2` with the paired marker
    /// and optionally refined further along `extra: s -> r1 ×_y r2`.
    pub fn compose_via(
        &self,
        m2: &RepOf<F::Cat, F>,
        m1: &RepOf<F::Cat, F>,
        extra: Option<(&Mor<F::Cat>, &F::Elem)>,
    ) -> Result<RepOf<F::Cat, F>> {
        if m1.tgt != m2.src {
            return Err(CatError::Invalid("representatives are not composable".into()));
        }
        let c = self.base();
        let q = c.pullback(&m1.h2, &m2.h1)?;
        let apex = c.dom(&q.left);
        let d = self
            .paired_marker(&apex, &q.left, &m1.c, &q.right, &m2.c)?
            .ok_or_else(|| CatError::NotLex("no paired marker over a pullback".into()))?;
        let (t1, t2, d) = match extra {
            Some((t, e)) => {
                if c.cod(t) != apex || self.functor.act(t, e) != d {
                    return Err(CatError::Invalid("extra refinement does not land on the chasing cone".into()));
                }
                (c.compose(&q.left, t), c.compose(&q.right, t), e.clone())
            }
            None => (q.left, q.right, d),
        };
        let a = self.refine(m1, &t1, &d)?;
        let b = self.refine(m2, &t2, &d)?;
        Ok(DiagRep {
            src: a.src,
            tgt: b.tgt,
            r: a.r,
            c: a.c,
            h1: a.h1,
            h2: b.h2,
            f: c.compose(&b.f, &a.f),
        })
    }

    /// `m2 ∘ m1` on the default chasing cone.
    pub fn compose_reps(&self, m2: &RepOf<F::Cat, F>, m1: &RepOf<F::Cat, F>) -> Result<RepOf<F::Cat, F>> {
        self.compose_via(m2, m1, None)
    }

    /// The point of `F(1)`.
    pub fn star(&self) -> Result<(Ob<F::Cat>, F::Elem)> {
        let one = self.base().terminal()?;
        let mut els = self.functor.elements(&one)?.into_iter();
        match (els.next(), els.next()) {
            (Some(p), None) => Ok((one, p)),
            _ => Err(CatError::NotLex("F(1) is not a singleton".into())),
        }
    }

    /// The terminal object `(id_1, *)`.
    pub fn terminal_obj(&self) -> Result<ObjOf<F::Cat, F>> {
        let (one, star) = self.star()?;
        Ok(DiagObj {
            u: self.base().identity(&one),
            a: star,
        })
    }

    /// `φ_F(y) = (!_y, *)`.
    pub fn phi_ob(&self, y: &Ob<F::Cat>) -> Result<ObjOf<F::Cat, F>> {
        let c = self.base();
        let (one, star) = self.star()?;
        Ok(DiagObj {
            u: c.product(y, &one)?.right,
            a: star,
        })
    }

    /// `φ_F(g)` over `(1, *)`.
    pub fn phi_mor(&self, g: &Mor<F::Cat>) -> Result<RepOf<F::Cat, F>> {
        let c = self.base();
        let (one, star) = self.star()?;
        let id1 = c.identity(&one);
        let (src, tgt) = (self.phi_ob(&c.dom(g))?, self.phi_ob(&c.cod(g))?);
        let p1 = self.pb(&id1, &src.u)?;
        let p2 = self.pb(&id1, &tgt.u)?;
        let f = c.mediate(&p2, &p1.left, &c.compose(g, &p1.right))?;
        Ok(DiagRep {
            src,
            tgt,
            r: one,
            c: star,
            h1: id1.clone(),
            h2: id1,
            f,
        })
    }

    /// The global element of `φ_F(y)` given by `g: r -> y` at `c ∈ F(r)`.
    pub fn global_element(&self, g: &Mor<F::Cat>, c_el: &F::Elem) -> Result<RepOf<F::Cat, F>> {
        let c = self.base();
        let (r, y) = (c.dom(g), c.cod(g));
        let src = self.terminal_obj()?;
        let tgt = self.phi_ob(&y)?;
        let bang = c.product(&r, &c.cod(&src.u))?.right;
        let p1 = self.pb(&bang, &src.u)?;
        let p2 = self.pb(&bang, &tgt.u)?;
        let f = c.mediate(&p2, &p1.left, &c.compose(g, &p1.left))?;
        let m = DiagRep {
            src,
            tgt,
            r,
            c: c_el.clone(),
            h1: bang.clone(),
            h2: bang,
            f,
        };
        Ok(m)
    }

    /// `η(b)` for `b ∈ F(y)`: the diagonal over `(y, b)`.
    pub fn eta(&self, y: &Ob<F::Cat>, b: &F::Elem) -> Result<RepOf<F::Cat, F>> {
        self.global_element(&self.base().identity(y), b)
    }

    /// Evaluates a global element `1 -> φ_F(y)` to `F(y)` (co-Yoneda).
    pub fn evaluate_global(&self, m: &RepOf<F::Cat, F>) -> Result<F::Elem> {
        let c = self.base();
        let p1 = self.pb(&m.h1, &m.src.u)?;
        let p2 = self.pb(&m.h2, &m.tgt.u)?;
        let section_src = c.mediate(&p1, &c.identity(&m.r), &m.h1)?;
        let s = c.compose(&p2.right, &c.compose(&m.f, &section_src));
        Ok(self.functor.act(&s, &m.c))
    }

    /// Applies a representative to an element of the fiber of `M(u)` over
    /// `σ_x(a)`, for a model `M` of `C` and `σ: F => M` given by
    /// components.
    pub fn act_fiber<M, S>(&self, model: &M, sigma: S, m: &RepOf<F::Cat, F>, e: &M::Elem) -> Result<M::Elem>
    where
        M: SetFunctor<Cat = F::Cat>,
        S: Fn(&Ob<F::Cat>, &F::Elem) -> M::Elem,
    {
        let p1 = self.pb(&m.h1, &m.src.u)?;
        let p2 = self.pb(&m.h2, &m.tgt.u)?;
        let over = sigma(&m.r, &m.c);
        let apex = self.base().dom(&p1.left);
        let mut hits = model
            .elements(&apex)?
            .into_iter()
            .filter(|p| model.act(&p1.left, p) == over && model.act(&p1.right, p) == *e);
        let p = match (hits.next(), hits.next()) {
            (Some(p), None) => p,
            _ => {
                return Err(CatError::NotLex(format!(
                    "model does not send the pullback over {} to a pullback",
                    self.base().ob_label(&m.r)
                )))
            }
        };
        Ok(model.act(&p2.right, &model.act(&m.f, &p)))
    }

    /// Every raw global element `1 -> φ_F(y)` from window indices, up to
    /// `limit` of them.
    pub fn global_elements(&self, y: &Ob<F::Cat>, limit: usize) -> Result<Vec<RepOf<F::Cat, F>>> {
        let c = self.base();
        let mut out = Vec::new();
        for r in c.objects()? {
            let cs = self.functor.elements(&r)?;
            if cs.is_empty() {
                continue;
            }
            for g in c.hom(&r, y)? {
                for ce in &cs {
                    if out.len() >= limit {
                        return Ok(out);
                    }
                    out.push(self.global_element(&g, ce)?);
                }
            }
        }
        Ok(out)
    }

    /// Objects `(w -> k, c0)`: one per object of `C/k`.
    pub fn core_objects(&self) -> Result<Vec<ObjOf<F::Cat, F>>> {
        let (k, c0) = self.require_normal_form()?;
        let c = self.base();
        let mut out = Vec::new();
        for w in c.objects()? {
            for u in c.hom(&w, k)? {
                out.push(DiagObj { u, a: c0.clone() });
            }
        }
        Ok(out)
    }

    fn require_normal_form(&self) -> Result<&(Ob<F::Cat>, F::Elem)> {
        self.initial
            .as_ref()
            .ok_or_else(|| CatError::Invalid("∫F has no initial object; C_F has no normal form".into()))
    }

    /// The core view: `C_F` restricted to the objects `(w -> k, c0)`.
    pub fn core(&self) -> CoreView<'_, F> {
        CoreView { diag: self }
    }
}

impl<F: SetFunctor> Category for DiagramCategory<F> {
    type Ob = ObjOf<F::Cat, F>;
    type Mor = RepOf<F::Cat, F>;

    fn objects(&self) -> Result<Vec<Self::Ob>> {
        let c = self.base();
        let mut out = Vec::new();
        let obs = c.objects()?;
        for x in &obs {
            let markers = self.functor.elements(x)?;
            if markers.is_empty() {
                continue;
            }
            for w in &obs {
                for u in c.hom(w, x)? {
                    for a in &markers {
                        out.push(DiagObj {
                            u: u.clone(),
                            a: a.clone(),
                        });
                    }
                }
                if out.len() as u128 > OBJECT_BOUND {
                    return Err(CatError::overflow("diagram objects", out.len() as u128, OBJECT_BOUND));
                }
            }
        }
        Ok(out)
    }

    fn hom(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Vec<Self::Mor>> {
        let (k, c0) = self.require_normal_form()?;
        let c = self.base();
        let t1 = self
            .from_initial(&c.cod(&a.u), &a.a)?
            .ok_or_else(|| CatError::UnknownObject(self.obj_label(a)))?;
        let t2 = self
            .from_initial(&c.cod(&b.u), &b.a)?
            .ok_or_else(|| CatError::UnknownObject(self.obj_label(b)))?;
        let p1 = self.pb(&t1, &a.u)?;
        let p2 = self.pb(&t2, &b.u)?;
        Ok(c
            .slice_hom(&p1.left, &p2.left)?
            .into_iter()
            .map(|f| DiagRep {
                src: a.clone(),
                tgt: b.clone(),
                r: k.clone(),
                c: c0.clone(),
                h1: t1.clone(),
                h2: t2.clone(),
                f,
            })
            .collect())
    }

    fn dom(&self, f: &Self::Mor) -> Self::Ob {
        f.src.clone()
    }

    fn cod(&self, f: &Self::Mor) -> Self::Ob {
        f.tgt.clone()
    }

    fn identity(&self, a: &Self::Ob) -> Self::Mor {
        self.identity_rep(a)
            .and_then(|m| self.normalize(&m))
            .expect("identity representative exists")
    }

    fn try_compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor> {
        if f.tgt != g.src {
            return None;
        }
        self.compose_reps(g, f).and_then(|m| self.normalize(&m)).ok()
    }

    fn is_thin(&self) -> bool {
        self.base().is_thin()
    }

    fn enumeration_complete(&self) -> bool {
        self.base().enumeration_complete()
    }

    fn ob_label(&self, a: &Self::Ob) -> String {
        self.obj_label(a)
    }

    fn mor_label(&self, f: &Self::Mor) -> String {
        self.rep_label(f)
    }
}

/// `C_F` restricted to the objects `(w -> k, c0)`; equivalent to `C_F`.
pub struct CoreView<'a, F: SetFunctor> {
    pub diag: &'a DiagramCategory<F>,
}

impl<F: SetFunctor> Clone for CoreView<'_, F> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<F: SetFunctor> Copy for CoreView<'_, F> {}

impl<F: SetFunctor> Category for CoreView<'_, F> {
    type Ob = ObjOf<F::Cat, F>;
    type Mor = RepOf<F::Cat, F>;

    fn objects(&self) -> Result<Vec<Self::Ob>> {
        self.diag.core_objects()
    }
    fn hom(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Vec<Self::Mor>> {
        self.diag.hom(a, b)
    }
    fn dom(&self, f: &Self::Mor) -> Self::Ob {
        f.src.clone()
    }
    fn cod(&self, f: &Self::Mor) -> Self::Ob {
        f.tgt.clone()
    }
    fn identity(&self, a: &Self::Ob) -> Self::Mor {
        self.diag.identity(a)
    }
    fn try_compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor> {
        self.diag.try_compose(g, f)
    }
    fn is_thin(&self) -> bool {
        self.diag.is_thin()
    }
    fn enumeration_complete(&self) -> bool {
        self.diag.enumeration_complete()
    }
    fn ob_label(&self, a: &Self::Ob) -> String {
        self.diag.obj_label(a)
    }
    fn mor_label(&self, f: &Self::Mor) -> String {
        self.diag.rep_label(f)
    }
}

/// The cocone functor `φ_F: C -> C_F` (normal form required for the
/// target's composition).
pub struct Phi<'a, F: SetFunctor> {
    pub diag: &'a DiagramCategory<F>,
}

impl<F: SetFunctor> Functor for Phi<'_, F> {
    type Src = F::Cat;
    type Tgt = DiagramCategory<F>;
    fn source(&self) -> &F::Cat {
        self.diag.base()
    }
    fn target(&self) -> &DiagramCategory<F> {
        self.diag
    }
    fn on_ob(&self, y: &Ob<F::Cat>) -> ObjOf<F::Cat, F> {
        self.diag.phi_ob(y).expect("F(1) is a singleton")
    }
    fn on_mor(&self, g: &Mor<F::Cat>) -> RepOf<F::Cat, F> {
        self.diag
            .phi_mor(g)
            .and_then(|m| self.diag.normalize(&m))
            .expect("φ is defined on every morphism")
    }
}

/// Global sections `Γ(y) = C_F(1, φ_F(y))`. With a normal form the
/// elements are normalized representatives; otherwise they are the
/// canonical representatives `η(b)` of the evaluation classes.
pub struct GlobalSections<'a, F: SetFunctor> {
    pub diag: &'a DiagramCategory<F>,
}

impl<F: SetFunctor> SetFunctor for GlobalSections<'_, F> {
    type Cat = F::Cat;
    type Elem = RepOf<F::Cat, F>;
    fn source(&self) -> &F::Cat {
        self.diag.base()
    }
    fn elements(&self, y: &Ob<F::Cat>) -> Result<Vec<Self::Elem>> {
        let d = self.diag;
        if d.has_normal_form() {
            d.hom(&d.terminal_obj()?, &d.phi_ob(y)?)
        } else {
            d.functor.elements(y)?.iter().map(|b| d.eta(y, b)).collect()
        }
    }
    fn act(&self, g: &Mor<F::Cat>, m: &Self::Elem) -> Self::Elem {
        let d = self.diag;
        let moved = d
            .phi_mor(g)
            .and_then(|p| d.compose_reps(&p, m))
            .expect("global elements compose with φ");
        if d.has_normal_form() {
            d.normalize(&moved).expect("normal form exists")
        } else {
            let b = d.evaluate_global(&moved).expect("evaluation is defined");
            d.eta(&d.base().cod(g), &b).expect("η is defined")
        }
    }
    fn elem_label(&self, m: &Self::Elem) -> String {
        self.diag.rep_label(m)
    }
}

/// `Γ` as a set functor on `C`.
pub fn gamma_global_sections<F: SetFunctor>(d: &DiagramCategory<F>) -> GlobalSections<'_, F> {
    GlobalSections { diag: d }
}

/// Verifies that `η: F => Γ ∘ φ_F` is a natural bijection. Raw global
/// elements (at most `limit` per object) are compared against `η` of their
/// evaluation with [`DiagramCategory::hom_equal`]; Unknown verdicts are
/// counted, not failed.
pub fn eta_check<F: SetFunctor>(d: &DiagramCategory<F>, limit: usize) -> Result<Report> {
    let mut r = Report::new("diagram eta");
    let c = d.base();
    let gamma = gamma_global_sections(d);
    let mut unknown = 0usize;
    let mut compared = 0usize;
    let objs = c.objects()?;
    for y in &objs {
        let fy = d.functor.elements(y)?;
        let etas: Vec<_> = fy.iter().map(|b| d.eta(y, b)).collect::<Result<_>>()?;
        let gy: BTreeSet<_> = gamma.elements(y)?.into_iter().collect();
        let image: BTreeSet<_> = if d.has_normal_form() {
            etas.iter().map(|m| d.normalize(m)).collect::<Result<_>>()?
        } else {
            etas.iter().cloned().collect()
        };
        if image.len() != fy.len() || image != gy {
            r.push(
                Finding::fail("eta-bijective", "η_y is not a bijection F(y) -> Γφ(y)")
                    .with_witness([c.ob_label(y)]),
            );
            return Ok(r);
        }
        for (i, b) in fy.iter().enumerate() {
            if d.evaluate_global(&etas[i])? != *b {
                r.push(Finding::fail("eta-evaluation", "η(b) does not evaluate to b").with_witness([d.functor.elem_label(b)]));
                return Ok(r);
            }
            for j in 0..i {
                compared += 1;
                match d.hom_equal(&etas[i], &etas[j], d.depth) {
                    HomEq::Distinct => {}
                    HomEq::Unknown(_) => unknown += 1,
                    HomEq::Equal(_) => {
                        r.push(
                            Finding::fail("eta-injective", "distinct elements give equal global sections")
                                .with_witness([d.functor.elem_label(b), d.functor.elem_label(&fy[j])]),
                        );
                        return Ok(r);
                    }
                }
            }
        }
        for g in d.global_elements(y, limit)? {
            compared += 1;
            let b = d.evaluate_global(&g)?;
            let target = &etas[fy.iter().position(|x| *x == b).ok_or_else(|| {
                CatError::Invalid("evaluation leaves F(y)".into())
            })?];
            match d.hom_equal(&g, target, d.depth) {
                HomEq::Equal(_) => {}
                HomEq::Unknown(_) => unknown += 1,
                HomEq::Distinct => {
                    r.push(
                        Finding::fail("eta-surjective", "a global element is not identified with η of its value")
                            .with_witness([d.rep_label(&g)]),
                    );
                    return Ok(r);
                }
            }
        }
    }
    let mut squares = 0usize;
    for y in &objs {
        for z in &objs {
            for g in c.hom(y, z)? {
                for b in d.functor.elements(y)? {
                    squares += 1;
                    let lhs = gamma.act(&g, &canonical(d, d.eta(y, &b)?)?);
                    let rhs = canonical(d, d.eta(z, &d.functor.act(&g, &b))?)?;
                    if lhs != rhs {
                        r.push(
                            Finding::fail("eta-natural", "η is not natural")
                                .with_witness([c.mor_label(&g), d.functor.elem_label(&b)]),
                        );
                        return Ok(r);
                    }
                }
            }
        }
    }
    r.note("comparisons", compared);
    r.note("unknown", unknown);
    r.note("naturality-squares", squares);
    if unknown > 0 {
        r.push(Finding::unknown("eta", format!("{unknown} of {compared} comparisons undecided")));
    } else {
        r.push(Finding::pass("eta", format!("{compared} comparisons, {squares} naturality squares")));
    }
    Ok(r)
}

fn canonical<F: SetFunctor>(d: &DiagramCategory<F>, m: RepOf<F::Cat, F>) -> Result<RepOf<F::Cat, F>> {
    if d.has_normal_form() {
        d.normalize(&m)
    } else {
        Ok(m)
    }
}

/// `C_α: C_F -> C_G` for `α: F => G`.
pub struct DiagramFunctor<'a, F: SetFunctor, G: SetFunctor<Cat = F::Cat>, T> {
    pub src: &'a DiagramCategory<F>,
    pub tgt: &'a DiagramCategory<G>,
    pub alpha: T,
}

/// Builds `C_α`.
pub fn diagram_functorial<'a, F, G, T>(
    src: &'a DiagramCategory<F>,
    tgt: &'a DiagramCategory<G>,
    alpha: T,
) -> DiagramFunctor<'a, F, G, T>
where
    F: SetFunctor,
    G: SetFunctor<Cat = F::Cat>,
    T: Transformation<Src = F, Tgt = G>,
{
    DiagramFunctor { src, tgt, alpha }
}

impl<F, G, T> DiagramFunctor<'_, F, G, T>
where
    F: SetFunctor,
    G: SetFunctor<Cat = F::Cat>,
    T: Transformation<Src = F, Tgt = G>,
{
    pub fn map_obj(&self, o: &ObjOf<F::Cat, F>) -> ObjOf<F::Cat, G> {
        let x = self.src.base().cod(&o.u);
        DiagObj {
            u: o.u.clone(),
            a: self.alpha.component(&x, &o.a),
        }
    }

    /// Re-marks a representative; not normalized.
    pub fn map_rep(&self, m: &RepOf<F::Cat, F>) -> RepOf<F::Cat, G> {
        DiagRep {
            src: self.map_obj(&m.src),
            tgt: self.map_obj(&m.tgt),
            r: m.r.clone(),
            c: self.alpha.component(&m.r, &m.c),
            h1: m.h1.clone(),
            h2: m.h2.clone(),
            f: m.f.clone(),
        }
    }

    /// `C_α(η_F(b))` against `η_G(α(b))` at every window object.
    pub fn gamma_findings(&self) -> Result<Vec<Finding>> {
        let c = self.src.base();
        let mut unknown = 0usize;
        let mut count = 0usize;
        for y in c.objects()? {
            for b in self.src.functor.elements(&y)? {
                count += 1;
                let lhs = self.map_rep(&self.src.eta(&y, &b)?);
                let rhs = self.tgt.eta(&y, &self.alpha.component(&y, &b))?;
                match self.tgt.hom_equal(&lhs, &rhs, self.tgt.depth) {
                    HomEq::Equal(_) => {}
                    HomEq::Unknown(_) => unknown += 1,
                    HomEq::Distinct => {
                        return Ok(vec![Finding::fail("gamma-square", "Γ(C_α) ∘ η_F differs from η_G ∘ α")
                            .with_witness([c.ob_label(&y), self.src.functor.elem_label(&b)])]);
                    }
                }
            }
        }
        Ok(vec![if unknown > 0 {
            Finding::unknown("gamma-square", format!("{unknown} of {count} undecided"))
        } else {
            Finding::pass("gamma-square", format!("{count} elements"))
        }])
    }
}

impl<F, G, T> Functor for DiagramFunctor<'_, F, G, T>
where
    F: SetFunctor,
    G: SetFunctor<Cat = F::Cat>,
    T: Transformation<Src = F, Tgt = G>,
{
    type Src = DiagramCategory<F>;
    type Tgt = DiagramCategory<G>;
    fn source(&self) -> &DiagramCategory<F> {
        self.src
    }
    fn target(&self) -> &DiagramCategory<G> {
        self.tgt
    }
    fn on_ob(&self, o: &ObjOf<F::Cat, F>) -> ObjOf<F::Cat, G> {
        self.map_obj(o)
    }
    fn on_mor(&self, m: &RepOf<F::Cat, F>) -> RepOf<F::Cat, G> {
        let mapped = self.map_rep(m);
        canonical(self.tgt, mapped).expect("target has the required pullbacks")
    }
}

/// The extension `M̃` of a model `M` along `φ_F`, given `σ: F => M`:
/// `M̃(u: v -> x, a)` is the fiber of `M(u)` over `σ_x(a)`.
pub struct ExtendedModel<'a, F: SetFunctor, T: Transformation<Src = F>> {
    pub diag: &'a DiagramCategory<F>,
    pub sigma: T,
}

/// Builds `M̃` after checking that `σ` is natural.
pub fn extend_model<F, T>(d: &DiagramCategory<F>, sigma: T) -> Result<ExtendedModel<'_, F, T>>
where
    F: SetFunctor,
    T: Transformation<Src = F>,
{
    let bad = crate::functor::naturality_violations(&sigma)?;
    if let Some(first) = bad.first() {
        return Err(CatError::NotNatural(first.clone()));
    }
    Ok(ExtendedModel { diag: d, sigma })
}

impl<'a, F, T> ExtendedModel<'a, F, T>
where
    F: SetFunctor,
    T: Transformation<Src = F>,
{
    pub fn model(&self) -> &T::Tgt {
        self.sigma.target()
    }

    /// `M̃(m)(e)`, or `NotLex` when `M` fails to send the relevant pullback
    /// to a pullback.
    pub fn try_act(
        &self,
        m: &RepOf<F::Cat, F>,
        e: &<T::Tgt as SetFunctor>::Elem,
    ) -> Result<<T::Tgt as SetFunctor>::Elem> {
        self.diag
            .act_fiber(self.model(), |x, a| self.sigma.component(x, a), m, e)
    }

    /// `M̃ ∘ φ_F ≅ M` objectwise and on morphisms, and `σ` recovered from
    /// `M̃(η(b))` at the point of `M̃(1)`.
    pub fn certify(&self) -> Result<Report> {
        let mut r = Report::new("diagram extend");
        let d = self.diag;
        let c = d.base();
        let m = self.model();
        let one = d.terminal_obj()?;
        let pts = self.elements(&one)?;
        if pts.len() != 1 {
            r.push(Finding::fail("terminal", "M̃(1) is not a singleton"));
            return Ok(r);
        }
        let pt = &pts[0];
        let objs = c.objects()?;
        for y in &objs {
            let lhs: BTreeSet<_> = self.elements(&d.phi_ob(y)?)?.into_iter().collect();
            let rhs: BTreeSet<_> = m.elements(y)?.into_iter().collect();
            if lhs != rhs {
                r.push(Finding::fail("restriction", "M̃(φ y) differs from M(y)").with_witness([c.ob_label(y)]));
                return Ok(r);
            }
        }
        let mut squares = 0usize;
        for y in &objs {
            for z in &objs {
                for g in c.hom(y, z)? {
                    let pg = d.phi_mor(&g)?;
                    for e in m.elements(y)? {
                        squares += 1;
                        if self.try_act(&pg, &e)? != m.act(&g, &e) {
                            r.push(
                                Finding::fail("restriction", "M̃(φ g) differs from M(g)")
                                    .with_witness([c.mor_label(&g)]),
                            );
                            return Ok(r);
                        }
                    }
                }
            }
        }
        let mut recovered = 0usize;
        for y in &objs {
            for b in d.functor.elements(y)? {
                recovered += 1;
                if self.try_act(&d.eta(y, &b)?, pt)? != self.sigma.component(y, &b) {
                    r.push(
                        Finding::fail("sigma", "M̃(η(b)) does not recover σ(b)")
                            .with_witness([c.ob_label(y), d.functor.elem_label(&b)]),
                    );
                    return Ok(r);
                }
            }
        }
        r.push(Finding::pass(
            "extend",
            format!("{} objects, {squares} squares, {recovered} markers", objs.len()),
        ));
        Ok(r)
    }
}

impl<F, T> SetFunctor for ExtendedModel<'_, F, T>
where
    F: SetFunctor,
    T: Transformation<Src = F>,
{
    type Cat = DiagramCategory<F>;
    type Elem = <T::Tgt as SetFunctor>::Elem;
    fn source(&self) -> &DiagramCategory<F> {
        self.diag
    }
    fn elements(&self, o: &ObjOf<F::Cat, F>) -> Result<Vec<Self::Elem>> {
        let c = self.diag.base();
        let over = self.sigma.component(&c.cod(&o.u), &o.a);
        Ok(self
            .model()
            .elements(&c.dom(&o.u))?
            .into_iter()
            .filter(|e| self.model().act(&o.u, e) == over)
            .collect())
    }
    fn act(&self, m: &RepOf<F::Cat, F>, e: &Self::Elem) -> Self::Elem {
        self.try_act(m, e).expect("model is lex")
    }
    fn elem_label(&self, e: &Self::Elem) -> String {
        self.model().elem_label(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::SkelFinSet;
    use crate::functor::{Filter, Representable};
    use crate::lattice::FiniteBooleanAlgebra;

    fn b4_up_a() -> DiagramCategory<Filter<crate::poset::Poset>> {
        let b = FiniteBooleanAlgebra::powerset(&["a", "na"]).unwrap();
        let p = b.poset().clone();
        let a = p.index("{a}").unwrap();
        let members = (0..p.len()).map(|x| p.leq(a, x)).collect();
        DiagramCategory::build(Filter::new(p, members).unwrap(), DEFAULT_DEPTH).unwrap()
    }

    #[test]
    fn b4_up_a_normal_form_is_down_a() {
        let d = b4_up_a();
        assert_eq!(d.core_objects().unwrap().len(), 2);
        assert_eq!(d.objects().unwrap().len(), 6);
    }

    #[test]
    fn refinement_to_initial_is_equal_at_depth_one() {
        let d = b4_up_a();
        let one_obj = d.terminal_obj().unwrap();
        let id = d.identity_rep(&one_obj).unwrap();
        let refined = d.normalize(&id).unwrap();
        assert_ne!(id, refined);
        assert_eq!(d.hom_equal(&id, &refined, 4), HomEq::Equal(1));
        assert_eq!(d.hom_equal(&id, &id, 4), HomEq::Equal(0));
    }

    #[test]
    fn gamma_of_representable_counts() {
        let c = SkelFinSet::new(4).unwrap();
        let d = DiagramCategory::build(Representable::new(c, 2), DEFAULT_DEPTH).unwrap();
        assert_eq!(gamma_global_sections(&d).elements(&3).unwrap().len(), 9);
    }
}
