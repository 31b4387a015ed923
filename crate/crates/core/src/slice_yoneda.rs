//! Extensions of a model along `!⁻¹: C -> C/x` and the map `δ` that reads
//! off a point of `M(x)`.
//!
//! Models here are set-valued, so `D(M(1), M(x))` is identified with
//! `M(x)` through the unique element of `M(1)`. An extension is a functor
//! `E: C/x -> Set` together with a comparison `ν_z: E(!⁻¹ z) -> M(z)`.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::category::{Category, Functor, Span};
use crate::derived::{PullbackFunctor, Slice, SliceMor};
use crate::error::{CatError, Result};
use crate::functor::{ObOf, ProductFunctor, SetFunctor};
use crate::report::{Finding, Report};

type Ob<M> = ObOf<M>;
type Mor<M> = <<M as SetFunctor>::Cat as Category>::Mor;

/// An extension of the base model `M` to the slice over `x`.
pub trait SliceExtension {
    type Base: SetFunctor;
    type Ext: SetFunctor<Cat = Slice<<Self::Base as SetFunctor>::Cat>>;

    fn base(&self) -> &Self::Base;
    fn ext(&self) -> &Self::Ext;

    /// `ν_z: E(!⁻¹ z) -> M(z)`.
    fn nu(
        &self,
        z: &Ob<Self::Base>,
        e: &<Self::Ext as SetFunctor>::Elem,
    ) -> Result<<Self::Base as SetFunctor>::Elem>;

    fn slice(&self) -> &Slice<<Self::Base as SetFunctor>::Cat> {
        self.ext().source()
    }

    /// `ν_z⁻¹(m)`, by search in `E(!⁻¹ z)`.
    fn nu_inv(
        &self,
        z: &Ob<Self::Base>,
        m: &<Self::Base as SetFunctor>::Elem,
    ) -> Result<<Self::Ext as SetFunctor>::Elem> {
        let s = self.slice();
        let obj = s.pullback_of_object(z)?;
        let mut found = None;
        for e in self.ext().elements(&obj)? {
            if self.nu(z, &e)? == *m {
                if found.is_some() {
                    return Err(CatError::Invalid("comparison ν is not injective".into()));
                }
                found = Some(e);
            }
        }
        found.ok_or_else(|| CatError::Invalid("comparison ν is not surjective".into()))
    }
}

/// The unique element of `M(1)`.
pub fn point_of_terminal<M: SetFunctor>(m: &M) -> Result<M::Elem> {
    let one = m.source().terminal()?;
    let mut els = m.elements(&one)?.into_iter();
    match (els.next(), els.next()) {
        (Some(p), None) => Ok(p),
        _ => Err(CatError::NotLex("M(1) is not a singleton".into())),
    }
}

/// The diagonal `Δ_x: !⁻¹ 1 -> !⁻¹ x` in `C/x`.
pub fn diagonal<C: Category>(s: &Slice<C>) -> Result<SliceMor<C::Mor>> {
    let c = &s.base;
    let one = c.terminal()?;
    let s1 = s.pullback_of_object(&one)?;
    let xx = c.product(&s.over, &s.over)?;
    let map = c.mediate(&xx, &s1, &s1)?;
    Ok(SliceMor {
        map,
        src: s1,
        tgt: xx.right,
    })
}

/// `δ(E) = ν_x ∘ E(Δ_x) ∘ ν_1⁻¹`, evaluated at the point of `M(1)`.
pub fn delta_of_extension<E: SliceExtension>(e: &E) -> Result<<E::Base as SetFunctor>::Elem> {
    let s = e.slice();
    let c = &s.base;
    let one = c.terminal()?;
    let star = point_of_terminal(e.base())?;
    let e1 = e.nu_inv(&one, &star)?;
    let d = diagonal(s)?;
    let moved = e.ext().act(&d, &e1);
    e.nu(&s.over, &moved)
}

/// The extension `F_a`: `F_a(h) = M(h)⁻¹(a)`.
#[derive(Debug, Clone)]
pub struct FiberExtension<M: SetFunctor> {
    pub model: M,
    pub slice: Slice<M::Cat>,
    pub point: M::Elem,
}

impl<M: SetFunctor> FiberExtension<M>
where
    M::Cat: Clone,
{
    pub fn new(model: M, x: Ob<M>, point: M::Elem) -> Result<Self> {
        if !model.elements(&x)?.contains(&point) {
            return Err(CatError::Invalid(format!("{} is not an element of M(x)", model.elem_label(&point))));
        }
        let slice = Slice::new_unchecked(model.source().clone(), x);
        Ok(FiberExtension { model, slice, point })
    }
}

impl<M: SetFunctor> SetFunctor for FiberExtension<M> {
    type Cat = Slice<M::Cat>;
    type Elem = M::Elem;
    fn source(&self) -> &Slice<M::Cat> {
        &self.slice
    }
    fn elements(&self, h: &Mor<M>) -> Result<Vec<M::Elem>> {
        let c = self.model.source();
        Ok(self
            .model
            .elements(&c.dom(h))?
            .into_iter()
            .filter(|e| self.model.act(h, e) == self.point)
            .collect())
    }
    fn act(&self, g: &SliceMor<Mor<M>>, e: &M::Elem) -> M::Elem {
        self.model.act(&g.map, e)
    }
    fn elem_label(&self, e: &M::Elem) -> String {
        self.model.elem_label(e)
    }
}

impl<M: SetFunctor> SliceExtension for FiberExtension<M> {
    type Base = M;
    type Ext = Self;
    fn base(&self) -> &M {
        &self.model
    }
    fn ext(&self) -> &Self {
        self
    }
    fn nu(&self, z: &Ob<M>, e: &M::Elem) -> Result<M::Elem> {
        let pz = self.slice.base.product(z, &self.slice.over)?.left;
        Ok(self.model.act(&pz, e))
    }
}

/// `extension_from_element`: the extension `F_a`.
pub fn extension_from_element<M: SetFunctor>(m: M, x: Ob<M>, a: M::Elem) -> Result<FiberExtension<M>>
where
    M::Cat: Clone,
{
    FiberExtension::new(m, x, a)
}

/// An extension transported along a family of bijections `σ_h` of its
/// values; isomorphic to the original by construction.
pub struct RelabeledExtension<E: SliceExtension> {
    pub inner: E,
    forward: HashMap<Mor<E::Base>, HashMap<<E::Ext as SetFunctor>::Elem, <E::Ext as SetFunctor>::Elem>>,
    backward: HashMap<Mor<E::Base>, HashMap<<E::Ext as SetFunctor>::Elem, <E::Ext as SetFunctor>::Elem>>,
}

impl<E: SliceExtension> RelabeledExtension<E> {
    /// Random bijections on the values at every window object of the slice
    /// and at every `!⁻¹ z`; identity elsewhere.
    pub fn random<R: Rng>(inner: E, rng: &mut R) -> Result<Self> {
        let s = inner.slice();
        let mut objects = s.objects()?;
        for z in s.base.objects()? {
            objects.push(s.pullback_of_object(&z)?);
        }
        let mut forward = HashMap::new();
        let mut backward = HashMap::new();
        for h in objects {
            if forward.contains_key(&h) {
                continue;
            }
            let els = inner.ext().elements(&h)?;
            let mut shuffled = els.clone();
            shuffled.shuffle(rng);
            let fw: HashMap<_, _> = els.iter().cloned().zip(shuffled.iter().cloned()).collect();
            let bw: HashMap<_, _> = shuffled.into_iter().zip(els).collect();
            forward.insert(h.clone(), fw);
            backward.insert(h, bw);
        }
        Ok(RelabeledExtension {
            inner,
            forward,
            backward,
        })
    }

    fn apply(
        table: &HashMap<Mor<E::Base>, HashMap<<E::Ext as SetFunctor>::Elem, <E::Ext as SetFunctor>::Elem>>,
        h: &Mor<E::Base>,
        e: &<E::Ext as SetFunctor>::Elem,
    ) -> <E::Ext as SetFunctor>::Elem {
        table
            .get(h)
            .and_then(|t| t.get(e))
            .cloned()
            .unwrap_or_else(|| e.clone())
    }
}

impl<E: SliceExtension> SetFunctor for RelabeledExtension<E> {
    type Cat = Slice<<E::Base as SetFunctor>::Cat>;
    type Elem = <E::Ext as SetFunctor>::Elem;
    fn source(&self) -> &Self::Cat {
        self.inner.slice()
    }
    fn elements(&self, h: &Mor<E::Base>) -> Result<Vec<Self::Elem>> {
        let mut els: Vec<Self::Elem> = self
            .inner
            .ext()
            .elements(h)?
            .iter()
            .map(|e| Self::apply(&self.forward, h, e))
            .collect();
        els.sort();
        Ok(els)
    }
    fn act(&self, g: &SliceMor<Mor<E::Base>>, e: &Self::Elem) -> Self::Elem {
        let pre = Self::apply(&self.backward, &g.src, e);
        let moved = self.inner.ext().act(g, &pre);
        Self::apply(&self.forward, &g.tgt, &moved)
    }
}

impl<E: SliceExtension> SliceExtension for RelabeledExtension<E> {
    type Base = E::Base;
    type Ext = Self;
    fn base(&self) -> &E::Base {
        self.inner.base()
    }
    fn ext(&self) -> &Self {
        self
    }
    fn nu(&self, z: &Ob<E::Base>, e: &<Self as SetFunctor>::Elem) -> Result<<E::Base as SetFunctor>::Elem> {
        let h = self.inner.slice().pullback_of_object(z)?;
        self.inner.nu(z, &Self::apply(&self.backward, &h, e))
    }
}

/// `E ∘ f⁻¹` for `f: x -> y`, an extension over `y`.
pub struct PulledExtension<E: SliceExtension>
where
    <E::Base as SetFunctor>::Cat: Clone,
{
    pub inner: E,
    pub pull: PullbackFunctor<<E::Base as SetFunctor>::Cat>,
}

impl<E: SliceExtension> PulledExtension<E>
where
    <E::Base as SetFunctor>::Cat: Clone,
{
    pub fn new(inner: E, f: Mor<E::Base>) -> Result<Self> {
        let c = inner.slice().base.clone();
        if c.dom(&f) != inner.slice().over {
            return Err(CatError::Invalid("f must start at the slice object".into()));
        }
        Ok(PulledExtension {
            pull: PullbackFunctor::new(c, f),
            inner,
        })
    }
}

impl<E: SliceExtension> SetFunctor for PulledExtension<E>
where
    <E::Base as SetFunctor>::Cat: Clone,
{
    type Cat = Slice<<E::Base as SetFunctor>::Cat>;
    type Elem = <E::Ext as SetFunctor>::Elem;
    fn source(&self) -> &Self::Cat {
        &self.pull.src
    }
    fn elements(&self, h: &Mor<E::Base>) -> Result<Vec<Self::Elem>> {
        self.inner.ext().elements(&self.pull.try_on_ob(h)?)
    }
    fn act(&self, g: &SliceMor<Mor<E::Base>>, e: &Self::Elem) -> Self::Elem {
        self.inner.ext().act(&self.pull.on_mor(g), e)
    }
}

impl<E: SliceExtension> SliceExtension for PulledExtension<E>
where
    <E::Base as SetFunctor>::Cat: Clone,
{
    type Base = E::Base;
    type Ext = Self;
    fn base(&self) -> &E::Base {
        self.inner.base()
    }
    fn ext(&self) -> &Self {
        self
    }
    fn nu(&self, z: &Ob<E::Base>, e: &<Self as SetFunctor>::Elem) -> Result<<E::Base as SetFunctor>::Elem> {
        let c = &self.pull.src.base;
        let x = &self.pull.tgt.over;
        let y = &self.pull.src.over;
        let zy = c.product(z, y)?;
        let pb = c.pullback(&self.pull.along, &zy.right)?;
        let zx = c.product(z, x)?;
        let iso = c.mediate(&zx, &c.compose(&zy.left, &pb.right), &pb.left)?;
        let g = SliceMor {
            map: iso,
            src: pb.left.clone(),
            tgt: zx.right.clone(),
        };
        self.inner.nu(z, &self.inner.ext().act(&g, e))
    }
}

/// `H ∘ E` for the lex functor `H = (-)^k` on sets.
pub struct PowerExtension<E: SliceExtension> {
    pub inner: E,
    pub base_power: ProductFunctor<E::Base>,
    pub ext_power: ProductFunctor<E::Ext>,
}

impl<E: SliceExtension> PowerExtension<E>
where
    E::Base: Clone,
    E::Ext: Clone,
    <E::Base as SetFunctor>::Cat: Clone,
{
    pub fn new(inner: E, k: usize) -> Self {
        let base_power = ProductFunctor::new(inner.base().source().clone(), vec![inner.base().clone(); k]);
        let ext_power = ProductFunctor::new(inner.slice().clone(), vec![inner.ext().clone(); k]);
        PowerExtension {
            inner,
            base_power,
            ext_power,
        }
    }
}

impl<E: SliceExtension> SliceExtension for PowerExtension<E> {
    type Base = ProductFunctor<E::Base>;
    type Ext = ProductFunctor<E::Ext>;
    fn base(&self) -> &Self::Base {
        &self.base_power
    }
    fn ext(&self) -> &Self::Ext {
        &self.ext_power
    }
    fn nu(
        &self,
        z: &Ob<E::Base>,
        e: &Vec<<E::Ext as SetFunctor>::Elem>,
    ) -> Result<Vec<<E::Base as SetFunctor>::Elem>> {
        e.iter().map(|c| self.inner.nu(z, c)).collect()
    }
}

/// Checks that `θ_h(e) = ν(E(γ_h)(e))` is a natural isomorphism `E ≅ F_a`
/// compatible with `ν`, with `a = δ(E)`. It is the only candidate, since
/// `F_a(γ_h)` is injective; that injectivity is checked too.
pub fn reconstruction_findings<E: SliceExtension>(e: &E) -> Result<Vec<Finding>>
where
    E::Base: Clone,
    <E::Base as SetFunctor>::Cat: Clone,
{
    let a = delta_of_extension(e)?;
    let s = e.slice();
    let c = &s.base;
    let x = s.over.clone();
    let fa = FiberExtension::new(e.base().clone(), x.clone(), a)?;
    let gamma = |h: &Mor<E::Base>| -> Result<SliceMor<Mor<E::Base>>> {
        let w = c.dom(h);
        let wx = c.product(&w, &x)?;
        let map = c.mediate(&wx, &c.identity(&w), h)?;
        Ok(SliceMor {
            map,
            src: h.clone(),
            tgt: wx.right,
        })
    };
    let theta = |h: &Mor<E::Base>, el: &<E::Ext as SetFunctor>::Elem| -> Result<<E::Base as SetFunctor>::Elem> {
        let g = gamma(h)?;
        e.nu(&c.dom(h), &e.ext().act(&g, el))
    };
    let objects = s.objects()?;
    let mut out = Vec::new();
    for h in &objects {
        let src = e.ext().elements(h)?;
        let tgt: BTreeSet<_> = fa.elements(h)?.into_iter().collect();
        let image: BTreeSet<_> = src.iter().map(|el| theta(h, el)).collect::<Result<_>>()?;
        if image.len() != src.len() || image != tgt {
            out.push(
                Finding::fail("theta-iso", "θ_h is not a bijection onto F_a(h)").with_witness([c.mor_label(h)]),
            );
            return Ok(out);
        }
        let g = gamma(h)?;
        let moved: BTreeSet<_> = tgt.iter().map(|v| fa.act(&g, v)).collect();
        if moved.len() != tgt.len() {
            out.push(
                Finding::fail("theta-unique", "F_a(γ_h) is not injective").with_witness([c.mor_label(h)]),
            );
            return Ok(out);
        }
    }
    let mut squares = 0usize;
    for h in &objects {
        for k in &objects {
            for g in s.hom(h, k)? {
                squares += 1;
                for el in e.ext().elements(h)? {
                    if theta(k, &e.ext().act(&g, &el))? != fa.act(&g, &theta(h, &el)?) {
                        out.push(
                            Finding::fail("theta-natural", "θ is not natural")
                                .with_witness([c.mor_label(&g.map)]),
                        );
                        return Ok(out);
                    }
                }
            }
        }
    }
    for z in c.objects()? {
        let obj = s.pullback_of_object(&z)?;
        for el in e.ext().elements(&obj)? {
            if fa.nu(&z, &theta(&obj, &el)?)? != e.nu(&z, &el)? {
                out.push(
                    Finding::fail("theta-nu", "θ does not commute with ν").with_witness([c.ob_label(&z)]),
                );
                return Ok(out);
            }
        }
    }
    out.push(Finding::pass(
        "theta",
        format!("{} slice objects, {squares} naturality squares", objects.len()),
    ));
    Ok(out)
}

/// `δ(F_a) = a` for every `a ∈ M(x)`, plus the reconstruction of each
/// `F_a` and of a randomly relabeled copy.
pub fn verify_delta_roundtrip<M, R>(m: &M, x: &Ob<M>, rng: &mut R) -> Result<Report>
where
    M: SetFunctor + Clone,
    M::Cat: Clone,
    R: Rng,
{
    let mut r = Report::new("slice roundtrip");
    let c = m.source();
    r.note("x", c.ob_label(x));
    let points = m.elements(x)?;
    r.note("extensions", points.len());
    let mut values = BTreeSet::new();
    for a in &points {
        let fa = FiberExtension::new(m.clone(), x.clone(), a.clone())?;
        let d = delta_of_extension(&fa)?;
        if d != *a {
            r.push(
                Finding::fail("delta-of-fa", "δ(F_a) differs from a")
                    .with_witness([m.elem_label(a), m.elem_label(&d)]),
            );
        }
        values.insert(d);
        for f in reconstruction_findings(&fa)? {
            if f.verdict != crate::report::Verdict::Pass {
                r.push(f);
            }
        }
        let relabeled = RelabeledExtension::random(fa, rng)?;
        let d2 = delta_of_extension(&relabeled)?;
        if d2 != *a {
            r.push(
                Finding::fail("delta-iso-invariant", "isomorphic extension has a different δ")
                    .with_witness([m.elem_label(a), m.elem_label(&d2)]),
            );
        }
        for f in reconstruction_findings(&relabeled)? {
            if f.verdict != crate::report::Verdict::Pass {
                r.push(f);
            }
        }
    }
    if values.len() != points.len() {
        r.push(Finding::fail("bijective", "δ ∘ F is not injective"));
    }
    if r.failures().next().is_none() {
        r.push(Finding::pass(
            "roundtrip",
            format!("{} points, δ ∘ F_- = id, θ reconstructed", points.len()),
        ));
    }
    Ok(r)
}

/// `δ_y(E ∘ f⁻¹) = M(f)(δ_x(E))` for every `f: x -> y` in the window and
/// every `E = F_a`.
pub fn delta_naturality_in_x<M>(m: &M, x: &Ob<M>) -> Result<Report>
where
    M: SetFunctor + Clone,
    M::Cat: Clone,
{
    let mut r = Report::new("slice naturality-x");
    let c = m.source();
    let mut count = 0usize;
    for y in c.objects()? {
        for f in c.hom(x, &y)? {
            for a in m.elements(x)? {
                count += 1;
                let fa = FiberExtension::new(m.clone(), x.clone(), a.clone())?;
                let pulled = PulledExtension::new(fa, f.clone())?;
                let lhs = delta_of_extension(&pulled)?;
                let rhs = m.act(&f, &a);
                if lhs != rhs {
                    r.push(
                        Finding::fail("naturality-x", "δ is not natural in x")
                            .with_witness([c.mor_label(&f), m.elem_label(&a)]),
                    );
                    return Ok(r);
                }
            }
        }
    }
    r.push(Finding::pass("naturality-x", format!("{count} squares")));
    Ok(r)
}

/// `δ_{HM}(H ∘ E) = H(δ_M(E))` for `H = (-)^k`, every `E = F_a`.
pub fn delta_naturality_in_m<M>(m: &M, x: &Ob<M>, powers: &[usize]) -> Result<Report>
where
    M: SetFunctor + Clone,
    M::Cat: Clone,
{
    let mut r = Report::new("slice naturality-m");
    let mut count = 0usize;
    for &k in powers {
        for a in m.elements(x)? {
            count += 1;
            let fa = FiberExtension::new(m.clone(), x.clone(), a.clone())?;
            let pe = PowerExtension::new(fa, k);
            let lhs = delta_of_extension(&pe)?;
            if lhs != vec![a.clone(); k] {
                r.push(
                    Finding::fail("naturality-m", format!("δ does not commute with (-)^{k}"))
                        .with_witness([m.elem_label(&a)]),
                );
                return Ok(r);
            }
        }
    }
    r.push(Finding::pass("naturality-m", format!("{count} squares")));
    Ok(r)
}

/// `F_a` preserves the terminal object, binary products (pullbacks over
/// `x`) and equalizers of the slice window.
pub fn fa_lex_findings<M>(fa: &FiberExtension<M>) -> Result<Vec<Finding>>
where
    M: SetFunctor,
{
    let s = &fa.slice;
    let mut out = Vec::new();
    if fa.elements(&s.top())?.len() != 1 {
        out.push(Finding::fail("terminal", "F_a(id_x) is not a singleton"));
        return Ok(out);
    }
    let objects = s.objects()?;
    let mut pairs = 0usize;
    for p in &objects {
        for q in &objects {
            pairs += 1;
            let span: Span<SliceMor<Mor<M>>> = s.product(p, q)?;
            let apex = s.dom(&span.left);
            let image: BTreeSet<_> = fa
                .elements(&apex)?
                .iter()
                .map(|e| (fa.act(&span.left, e), fa.act(&span.right, e)))
                .collect();
            let expect = fa.elements(p)?.len() * fa.elements(q)?.len();
            if image.len() != expect || fa.elements(&apex)?.len() != expect {
                out.push(
                    Finding::fail("products", "F_a does not preserve a product over x")
                        .with_witness([s.ob_label(p), s.ob_label(q)]),
                );
                return Ok(out);
            }
        }
    }
    let mut parallel = 0usize;
    for p in &objects {
        for q in &objects {
            let hs = s.hom(p, q)?;
            if hs.len() > 16 {
                continue;
            }
            for g1 in &hs {
                for g2 in &hs {
                    parallel += 1;
                    let eq = s.equalizer(g1, g2)?;
                    let src = s.dom(&eq);
                    let image: BTreeSet<_> = fa.elements(&src)?.iter().map(|e| fa.act(&eq, e)).collect();
                    let expect: BTreeSet<_> = fa
                        .elements(p)?
                        .into_iter()
                        .filter(|e| fa.act(g1, e) == fa.act(g2, e))
                        .collect();
                    if image != expect || fa.elements(&src)?.len() != expect.len() {
                        out.push(
                            Finding::fail("equalizers", "F_a does not preserve an equalizer")
                                .with_witness([s.mor_label(g1), s.mor_label(g2)]),
                        );
                        return Ok(out);
                    }
                }
            }
        }
    }
    out.push(Finding::pass(
        "lex",
        format!("{pairs} products, {parallel} parallel pairs"),
    ));
    Ok(out)
}
