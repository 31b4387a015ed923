//! Elementary natural transformations, (strong) conservativity, units of
//! adjunctions, completeness over prime filters, and the decomposition of
//! a regular functor into coherent ones.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::category::{all_morphisms, is_iso, is_mono, Category, Functor};
use crate::error::{CatError, Result};
use crate::functor::{lex_findings, NatTransform, ObOf, ProductFunctor, SetFunctor, Transformation};
use crate::lattice::FiniteLattice;
use crate::limits::{check_coherent, check_disjoint_coproducts, check_regular, factors_through, is_effective_epi};
use crate::poset::{MonotoneMap, Poset};
use crate::report::{Finding, Report, Verdict};
use crate::sheaf::{
    build_regular_model, coherent_functor_findings, regular_functor_findings, RegularModel, RestrictedRepresentable,
};

type ObIn<C> = <C as Category>::Ob;
type MorIn<C> = <C as Category>::Mor;
type MorOf<F> = <<F as SetFunctor>::Cat as Category>::Mor;

const LEX_HOM_LIMIT: usize = 16;

/// Outcome of [`is_elementary`]: the first mono, in window order, whose
/// naturality square is not a pullback.
#[derive(Debug, Clone, Serialize)]
pub struct ElementaryVerdict<M> {
    pub squares: usize,
    pub witness: Option<M>,
    /// The mono and its codomain, as labels.
    pub witness_labels: Vec<String>,
}

impl<M> ElementaryVerdict<M> {
    pub fn is_pass(&self) -> bool {
        self.witness.is_none()
    }

    pub fn finding(&self) -> Finding {
        match self.witness {
            None => Finding::pass("elementary", format!("{} squares at monos are pullbacks", self.squares)),
            Some(_) => Finding::fail("elementary", "a naturality square at a mono is not a pullback")
                .with_witness(self.witness_labels.clone()),
        }
    }
}

/// Whether the square `F(u) -> F(x)`, `G(u) -> G(x)` at `i: u -> x` is a
/// pullback of sets.
pub fn square_is_pullback<T: Transformation>(alpha: &T, i: &MorOf<T::Src>) -> Result<bool> {
    let (f, g) = (alpha.source(), alpha.target());
    let c = f.source();
    let (u, x) = (c.dom(i), c.cod(i));
    let fu = f.elements(&u)?;
    let mut pairs = 0usize;
    let gu = g.elements(&u)?;
    for b in f.elements(&x)? {
        let ab = alpha.component(&x, &b);
        pairs += gu.iter().filter(|e| g.act(i, e) == ab).count();
    }
    let image: BTreeSet<_> = fu
        .iter()
        .map(|a| (f.act(i, a), alpha.component(&u, a)))
        .collect();
    Ok(image.len() == fu.len() && fu.len() == pairs)
}

/// Every mono of the window whose naturality square fails to be a pullback.
pub fn elementary_failures<T: Transformation>(alpha: &T) -> Result<Vec<MorOf<T::Src>>> {
    let c = alpha.source().source();
    let mut out = Vec::new();
    for i in all_morphisms(c)? {
        if is_mono(c, &i)? && !square_is_pullback(alpha, &i)? {
            out.push(i);
        }
    }
    Ok(out)
}

fn require_lex<F: SetFunctor>(f: &F, which: &str) -> Result<()> {
    if let Some(bad) = lex_findings(f, LEX_HOM_LIMIT)?.into_iter().find(|x| x.verdict == Verdict::Fail) {
        return Err(CatError::NotLex(format!("{which}: {}", bad.detail)));
    }
    Ok(())
}

/// Naturality squares at monos are pullbacks, for `α: F ⇒ G` between lex
/// functors.
pub fn is_elementary<T: Transformation>(alpha: &T) -> Result<ElementaryVerdict<MorOf<T::Src>>> {
    require_lex(alpha.source(), "source")?;
    require_lex(alpha.target(), "target")?;
    let c = alpha.source().source();
    let mut squares = 0usize;
    for i in all_morphisms(c)? {
        if !is_mono(c, &i)? {
            continue;
        }
        squares += 1;
        if !square_is_pullback(alpha, &i)? {
            let labels = vec![c.mor_label(&i), c.ob_label(&c.cod(&i))];
            return Ok(ElementaryVerdict {
                squares,
                witness: Some(i),
                witness_labels: labels,
            });
        }
    }
    Ok(ElementaryVerdict {
        squares,
        witness: None,
        witness_labels: Vec::new(),
    })
}

/// Elementary transformations have injective components.
pub fn components_monic_check<T: Transformation>(alpha: &T) -> Result<Report> {
    let mut r = Report::new("elem monic");
    let v = is_elementary(alpha)?;
    r.note("elementary", v.is_pass());
    if !v.is_pass() {
        r.note("vacuous", true);
        r.push(Finding::pass("components-monic", "not elementary; nothing to check"));
        return Ok(r);
    }
    let f = alpha.source();
    let c = f.source();
    for x in c.objects()? {
        let fx = f.elements(&x)?;
        let image: BTreeSet<_> = fx.iter().map(|a| alpha.component(&x, a)).collect();
        if image.len() != fx.len() {
            r.push(
                Finding::fail("components-monic", "an elementary transformation has a non-injective component")
                    .with_witness([c.ob_label(&x)]),
            );
            return Ok(r);
        }
    }
    r.push(Finding::pass("components-monic", "all components injective"));
    Ok(r)
}

/// Which cospans `c -f-> x <-i- u` the lift condition quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftMode {
    /// `f` monic as well: conservativity.
    Mono,
    /// Any `f`: strong conservativity.
    Any,
}

/// Cospans `(f, i)` with a lift of `G f` through `G i` but no lift of `f`
/// through `i`.
pub fn lift_failures<G: Functor>(g: &G, mode: LiftMode) -> Result<Vec<(MorIn<G::Src>, MorIn<G::Src>)>> {
    let c = g.source();
    let d = g.target();
    let obs = c.objects()?;
    let mut out = Vec::new();
    for x in &obs {
        let mut into = Vec::new();
        for a in &obs {
            into.extend(c.hom(a, x)?);
        }
        let monos: Vec<_> = into
            .iter()
            .filter_map(|m| is_mono(c, m).map(|b| b.then(|| m.clone())).transpose())
            .collect::<Result<_>>()?;
        for f in &into {
            if mode == LiftMode::Mono && !is_mono(c, f)? {
                continue;
            }
            for i in &monos {
                let (gf, gi) = (g.on_mor(f), g.on_mor(i));
                let lifts_below = d
                    .hom(&d.dom(&gf), &d.dom(&gi))?
                    .iter()
                    .any(|h| d.try_compose(&gi, h).as_ref() == Some(&gf));
                if lifts_below && !factors_through(c, f, i)? {
                    out.push((f.clone(), i.clone()));
                }
            }
        }
    }
    Ok(out)
}

fn is_regular_category<C: Category>(c: &C) -> Result<bool> {
    Ok(check_regular(c)?.is_pass())
}

/// Effective epis go to effective epis.
fn preserves_effective_epis<G: Functor>(g: &G) -> Result<bool> {
    let (c, d) = (g.source(), g.target());
    for e in all_morphisms(c)? {
        if is_effective_epi(c, &e)? && !is_effective_epi(d, &g.on_mor(&e))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Conservativity in both modes; for regular `C`, `D`, `G` the two must
/// agree.
pub fn is_strongly_conservative<G: Functor>(g: &G) -> Result<Report> {
    let mut r = Report::new("elem conservative");
    let c = g.source();
    let label = |(f, i): &(MorIn<G::Src>, MorIn<G::Src>)| vec![c.mor_label(f), c.mor_label(i)];
    let mono = lift_failures(g, LiftMode::Mono)?;
    let any = lift_failures(g, LiftMode::Any)?;
    r.note("conservative", mono.is_empty());
    r.note("strongly-conservative", any.is_empty());
    r.push(match mono.first() {
        None => Finding::pass("conservative", "every mono cospan lifts"),
        Some(w) => Finding::fail("conservative", "a lift exists after G but not before").with_witness(label(w)),
    });
    r.push(match any.first() {
        None => Finding::pass("strongly-conservative", "every cospan lifts"),
        Some(w) => {
            Finding::fail("strongly-conservative", "a lift exists after G but not before").with_witness(label(w))
        }
    });
    if is_regular_category(c)? && is_regular_category(g.target())? && preserves_effective_epis(g)? {
        r.note("regular", true);
        r.push(if mono.is_empty() == any.is_empty() {
            Finding::pass("regular-modes-agree", "conservative iff strongly conservative")
        } else {
            Finding::fail("regular-modes-agree", "the two modes disagree on a regular functor")
        });
    } else {
        r.note("regular", false);
    }
    Ok(r)
}

/// `G` preserves the terminal object and pullbacks over the window.
pub fn functor_lex_findings<G: Functor>(g: &G) -> Result<Vec<Finding>> {
    let (c, d) = (g.source(), g.target());
    let one = g.on_ob(&c.terminal()?);
    for z in d.objects()? {
        if d.hom(&z, &one)?.len() != 1 {
            return Ok(vec![Finding::fail("lex-terminal", "G(1) is not terminal").with_witness([d.ob_label(&z)])]);
        }
    }
    let mors = all_morphisms(c)?;
    let mut count = 0usize;
    for f in &mors {
        for h in &mors {
            if c.cod(f) != c.cod(h) {
                continue;
            }
            count += 1;
            let pb = c.pullback(f, h)?;
            let dpb = d.pullback(&g.on_mor(f), &g.on_mor(h))?;
            let k = d.mediate(&dpb, &g.on_mor(&pb.left), &g.on_mor(&pb.right))?;
            if !is_iso(d, &k)? {
                return Ok(vec![Finding::fail("lex-pullbacks", "a pullback is not preserved")
                    .with_witness([c.mor_label(f), c.mor_label(h)])]);
            }
        }
    }
    Ok(vec![Finding::pass("lex", format!("{count} cospans"))])
}

/// `L ⊣ R` with unit `η: 1 ⇒ RL` and counit `ε: LR ⇒ 1`.
pub struct Adjunction<L: Functor, R> {
    pub left: L,
    pub right: R,
    pub unit: BTreeMap<ObIn<L::Src>, MorIn<L::Src>>,
    pub counit: BTreeMap<ObIn<L::Tgt>, MorIn<L::Tgt>>,
}

impl<L, R> Adjunction<L, R>
where
    L: Functor,
    R: Functor<Src = L::Tgt, Tgt = L::Src>,
{
    /// Checks component types, naturality, the triangle identities and
    /// lexness of `L`.
    pub fn new(
        left: L,
        right: R,
        unit: BTreeMap<ObIn<L::Src>, MorIn<L::Src>>,
        counit: BTreeMap<ObIn<L::Tgt>, MorIn<L::Tgt>>,
    ) -> Result<Self> {
        let a = Adjunction {
            left,
            right,
            unit,
            counit,
        };
        a.validate()?;
        Ok(a)
    }

    pub fn eta(&self, x: &ObIn<L::Src>) -> Result<&MorIn<L::Src>> {
        self.unit
            .get(x)
            .ok_or_else(|| CatError::Invalid(format!("no unit component at {}", self.left.source().ob_label(x))))
    }

    pub fn epsilon(&self, y: &ObIn<L::Tgt>) -> Result<&MorIn<L::Tgt>> {
        self.counit
            .get(y)
            .ok_or_else(|| CatError::Invalid(format!("no counit component at {}", self.left.target().ob_label(y))))
    }

    fn validate(&self) -> Result<()> {
        let (c, d) = (self.left.source(), self.left.target());
        let (l, r) = (&self.left, &self.right);
        for x in c.objects()? {
            let e = self.eta(&x)?;
            if c.dom(e) != x || c.cod(e) != r.on_ob(&l.on_ob(&x)) {
                return Err(CatError::Invalid(format!("unit at {} has the wrong type", c.ob_label(&x))));
            }
            let tri = d.try_compose(self.epsilon(&l.on_ob(&x))?, &l.on_mor(e));
            if tri != Some(d.identity(&l.on_ob(&x))) {
                return Err(CatError::Invalid(format!("triangle identity fails at {}", c.ob_label(&x))));
            }
        }
        for y in d.objects()? {
            let e = self.epsilon(&y)?;
            if d.cod(e) != y || d.dom(e) != l.on_ob(&r.on_ob(&y)) {
                return Err(CatError::Invalid(format!("counit at {} has the wrong type", d.ob_label(&y))));
            }
            let tri = c.try_compose(&r.on_mor(e), self.eta(&r.on_ob(&y))?);
            if tri != Some(c.identity(&r.on_ob(&y))) {
                return Err(CatError::Invalid(format!("triangle identity fails at {}", d.ob_label(&y))));
            }
        }
        for f in all_morphisms(c)? {
            let lhs = c.try_compose(&r.on_mor(&l.on_mor(&f)), self.eta(&c.dom(&f))?);
            let rhs = c.try_compose(self.eta(&c.cod(&f))?, &f);
            if lhs != rhs {
                return Err(CatError::NotNatural(format!("unit at {}", c.mor_label(&f))));
            }
        }
        for g in all_morphisms(d)? {
            let lhs = d.try_compose(self.epsilon(&d.cod(&g))?, &l.on_mor(&r.on_mor(&g)));
            let rhs = d.try_compose(&g, self.epsilon(&d.dom(&g))?);
            if lhs != rhs {
                return Err(CatError::NotNatural(format!("counit at {}", d.mor_label(&g))));
            }
        }
        if let Some(bad) = functor_lex_findings(l)?.into_iter().find(|f| f.verdict == Verdict::Fail) {
            return Err(CatError::NotLex(format!("left adjoint: {}", bad.detail)));
        }
        Ok(())
    }

    /// `η` is elementary: at every mono `i: u -> x` of `C` the square
    /// `u -> RLu`, `x -> RLx` is a pullback. Returns the first failing mono.
    pub fn unit_elementary_failure(&self) -> Result<Option<MorIn<L::Src>>> {
        let c = self.left.source();
        for i in all_morphisms(c)? {
            if !is_mono(c, &i)? {
                continue;
            }
            let (u, x) = (c.dom(&i), c.cod(&i));
            let rli = self.right.on_mor(&self.left.on_mor(&i));
            let pb = c.pullback(self.eta(&x)?, &rli)?;
            let k = c.mediate(&pb, &i, self.eta(&u)?)?;
            if !is_iso(c, &k)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn left_faithful(&self) -> Result<bool> {
        let c = self.left.source();
        let obs = c.objects()?;
        for a in &obs {
            for b in &obs {
                let hom = c.hom(a, b)?;
                let images: BTreeSet<_> = hom.iter().map(|f| self.left.on_mor(f)).collect();
                if images.len() != hom.len() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn unit_pointwise_mono(&self) -> Result<bool> {
        let c = self.left.source();
        for x in c.objects()? {
            if !is_mono(c, self.eta(&x)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl Adjunction<MonotoneMap, MonotoneMap> {
    /// A Galois connection `l ⊣ r`: `l x ≤ y` iff `x ≤ r y`.
    pub fn galois(l: MonotoneMap, r: MonotoneMap) -> Result<Self> {
        if l.source != r.target || l.target != r.source {
            return Err(CatError::Invalid("the two maps are not opposite".into()));
        }
        let (c, d) = (&l.source, &l.target);
        for x in 0..c.len() {
            for y in 0..d.len() {
                if d.leq(l.map[x], y) != c.leq(x, r.map[y]) {
                    return Err(CatError::Invalid(format!(
                        "not adjoint at {}, {}",
                        c.name(x),
                        d.name(y)
                    )));
                }
            }
        }
        let unit = (0..c.len()).map(|x| (x, (x, r.map[l.map[x]]))).collect();
        let counit = (0..d.len()).map(|y| (y, (l.map[r.map[y]], y))).collect();
        Adjunction::new(l, r, unit, counit)
    }

    pub fn identity(p: Poset) -> Result<Self> {
        Adjunction::galois(MonotoneMap::identity(p.clone()), MonotoneMap::identity(p))
    }
}

/// Every mono of `C` is the equalizer of some parallel pair.
pub fn all_monos_regular<C: Category>(c: &C) -> Result<bool> {
    let obs = c.objects()?;
    'monos: for i in all_morphisms(c)? {
        if !is_mono(c, &i)? || is_iso(c, &i)? {
            continue;
        }
        let x = c.cod(&i);
        for y in &obs {
            let hom = c.hom(&x, y)?;
            for f in &hom {
                for g in &hom {
                    if f == g {
                        continue;
                    }
                    let Ok(e) = c.equalizer(f, g) else { continue };
                    if factors_through(c, &e, &i)? && factors_through(c, &i, &e)? {
                        continue 'monos;
                    }
                }
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Evaluates faithful / conservative / strongly conservative / unit
/// elementary / unit pointwise mono and checks the implications between
/// them that hold under the hypotheses the backend satisfies.
pub fn unit_elementary_check<L, R>(a: &Adjunction<L, R>) -> Result<Report>
where
    L: Functor,
    R: Functor<Src = L::Tgt, Tgt = L::Src>,
{
    let mut r = Report::new("elem unit");
    let c = a.left.source();
    let faithful = a.left_faithful()?;
    let conservative = lift_failures(&a.left, LiftMode::Mono)?.is_empty();
    let strong = lift_failures(&a.left, LiftMode::Any)?;
    let unit_fail = a.unit_elementary_failure()?;
    let elementary = unit_fail.is_none();
    let pointwise_mono = a.unit_pointwise_mono()?;
    r.note("faithful", faithful);
    r.note("conservative", conservative);
    r.note("strongly-conservative", strong.is_empty());
    r.note("unit-elementary", elementary);
    r.note("unit-pointwise-mono", pointwise_mono);
    if let Some(i) = &unit_fail {
        r.note("unit-witness", c.mor_label(i));
    }
    r.push(if elementary == strong.is_empty() {
        Finding::pass("unit-elementary-iff-strong", "agree")
    } else {
        Finding::fail("unit-elementary-iff-strong", "unit elementarity and strong conservativity disagree")
    });
    r.push(if !elementary || pointwise_mono {
        Finding::pass("elementary-implies-monic", "holds")
    } else {
        Finding::fail("elementary-implies-monic", "elementary unit with a non-monic component")
    });
    let regular = is_regular_category(c)?
        && is_regular_category(a.left.target())?
        && preserves_effective_epis(&a.left)?;
    r.note("regular", regular);
    if regular {
        r.push(if conservative == strong.is_empty() {
            Finding::pass("conservative-iff-strong", "agree")
        } else {
            Finding::fail("conservative-iff-strong", "the two modes disagree")
        });
        let monos_regular = all_monos_regular(c)?;
        r.note("monos-regular", monos_regular);
        if monos_regular {
            let all = [faithful, conservative, strong.is_empty(), elementary, pointwise_mono];
            r.push(if all.iter().all(|&b| b == all[0]) {
                Finding::pass("five-way", "all five conditions agree")
            } else {
                Finding::fail("five-way", "the five conditions disagree")
            });
        }
    }
    Ok(r)
}

/// The comparison `F ⇒ ∏_q M_q` into the atom components of `M_F`.
pub type Comparison<'a, F> = NatTransform<
    F,
    ProductFunctor<RestrictedRepresentable<F>>,
    Box<dyn Fn(&ObOf<F>, &<F as SetFunctor>::Elem) -> Vec<crate::diagram::RepOf<<F as SetFunctor>::Cat, F>> + 'a>,
>;

/// `F ⇒ ∏ M_q` for a model built from `F`.
pub fn comparison<F: SetFunctor + Clone>(rm: &RegularModel<F>) -> Comparison<'_, F>
where
    F::Cat: Clone,
{
    let f = rm.diag.functor.clone();
    let prod = ProductFunctor::new(rm.diag.base().clone(), rm.model.components.clone());
    NatTransform::new(
        f,
        prod,
        Box::new(move |y: &ObOf<F>, b: &F::Elem| rm.comparison(y, b).expect("comparison is defined")) as Box<_>,
    )
}

/// A subsingleton functor on a thin category, nonempty exactly on
/// `members`.
#[derive(Debug, Clone)]
pub struct UpSet<C: Category> {
    pub cat: C,
    pub members: BTreeSet<C::Ob>,
}

impl<C: Category> SetFunctor for UpSet<C> {
    type Cat = C;
    type Elem = ();
    fn source(&self) -> &C {
        &self.cat
    }
    fn elements(&self, x: &C::Ob) -> Result<Vec<()>> {
        Ok(if self.members.contains(x) { vec![()] } else { Vec::new() })
    }
    fn act(&self, _f: &C::Mor, _a: &()) {}
}

/// How the coherent components were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Atoms of `B′ = Sub¬_{C_F}(1)`; needs disjoint coproducts.
    Atoms,
    /// Prime filters `↑j` containing `F`, on a thin coherent base.
    JoinPrimes,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Atoms => "atoms",
            Route::JoinPrimes => "join-primes",
        }
    }
}

pub enum Components<F: SetFunctor> {
    Atoms(RegularModel<F>),
    JoinPrimes(Vec<UpSet<F::Cat>>),
}

pub struct Decomposition<F: SetFunctor> {
    pub components: Components<F>,
    pub report: Report,
}

impl<F: SetFunctor> Decomposition<F> {
    pub fn route(&self) -> Route {
        match self.components {
            Components::Atoms(_) => Route::Atoms,
            Components::JoinPrimes(_) => Route::JoinPrimes,
        }
    }

    pub fn len(&self) -> usize {
        match &self.components {
            Components::Atoms(rm) => rm.model.components.len(),
            Components::JoinPrimes(ps) => ps.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// For each component, the objects where it is nonempty.
    pub fn supports(&self) -> Result<Vec<BTreeSet<ObOf<F>>>> {
        match &self.components {
            Components::Atoms(rm) => {
                let c = rm.diag.base();
                let obs = c.objects()?;
                rm.model
                    .components
                    .iter()
                    .map(|m| {
                        let mut s = BTreeSet::new();
                        for x in &obs {
                            if !m.elements(x)?.is_empty() {
                                s.insert(x.clone());
                            }
                        }
                        Ok(s)
                    })
                    .collect()
            }
            Components::JoinPrimes(ps) => Ok(ps.iter().map(|p| p.members.clone()).collect()),
        }
    }
}

/// Decomposition of a regular `F` into coherent functors with an
/// elementary comparison `F ⇒ ∏ M_i`. With disjoint coproducts the
/// components are the atom components of `M_F` (the atoms of the finite
/// `B′` stand in for enough ultrafilters); on a thin coherent base without
/// them, the prime filters containing `F`.
pub fn decompose_regular<F: SetFunctor + Clone>(f: F) -> Result<Decomposition<F>>
where
    F::Cat: Clone,
{
    let c = f.source();
    let coh = check_coherent(c)?;
    if let Some(bad) = coh.first_failure() {
        return Err(CatError::NotCoherent(format!(
            "{}: {} [{}]",
            bad.check,
            bad.detail,
            bad.witness.join(", ")
        )));
    }
    if let Some(bad) = regular_functor_findings(&f)?.into_iter().find(|x| x.verdict == Verdict::Fail) {
        return Err(CatError::NotRegular(bad.detail));
    }
    if check_disjoint_coproducts(c)?.is_pass() {
        return decompose_atoms(f, false);
    }
    if c.is_thin() {
        return decompose_join_primes(f);
    }
    Err(CatError::NotCoherent("no disjoint coproducts".into()))
}

/// The atoms route without the coherence and disjointness preconditions
/// on the base; for experiments on bases lacking coproducts.
pub fn decompose_experiment<F: SetFunctor + Clone>(f: F) -> Result<Decomposition<F>>
where
    F::Cat: Clone,
{
    decompose_atoms(f, true)
}

fn decompose_atoms<F: SetFunctor + Clone>(f: F, experiment: bool) -> Result<Decomposition<F>>
where
    F::Cat: Clone,
{
    let rm = build_regular_model(f, false)?;
    let mut r = Report::new("elem decompose");
    r.note("route", Route::Atoms.as_str());
    r.note("ultrafilters", "atoms of the finite Boolean algebra B′ (finite substitute for compactness)");
    if experiment {
        r.note("experiment", "base preconditions skipped");
    }
    r.note("sub1-size", rm.sub1.algebra.len());
    r.note("components", rm.model.components.len());
    {
        let alpha = comparison(&rm);
        r.push(is_elementary(&alpha)?.finding());
        r.absorb("monic", components_monic_check(&alpha)?);
    }
    for (i, m) in rm.model.components.iter().enumerate() {
        let ok = coherent_functor_findings(m)?.iter().all(|x| x.verdict == Verdict::Pass);
        let at = rm.diag.obj_label(&m.at);
        r.push(if ok {
            Finding::pass(format!("component-{i}"), format!("coherent, at {at}"))
        } else {
            Finding::fail(format!("component-{i}"), format!("not coherent, at {at}"))
        });
    }
    Ok(Decomposition {
        components: Components::Atoms(rm),
        report: r,
    })
}

fn decompose_join_primes<F: SetFunctor + Clone>(f: F) -> Result<Decomposition<F>>
where
    F::Cat: Clone,
{
    let c = f.source().clone();
    let obs = c.objects()?;
    let mut support = BTreeSet::new();
    for x in &obs {
        match f.elements(x)?.len() {
            0 => {}
            1 => {
                support.insert(x.clone());
            }
            _ => return Err(CatError::NotLex("a lex functor on a thin category is subsingleton-valued".into())),
        }
    }
    let mut r = Report::new("elem decompose");
    r.note("route", Route::JoinPrimes.as_str());
    r.note("ultrafilters", "prime filters of the finite base");
    let mut primes = Vec::new();
    for j in &obs {
        let mut members = BTreeSet::new();
        for x in &obs {
            if !c.hom(j, x)?.is_empty() {
                members.insert(x.clone());
            }
        }
        if !support.is_subset(&members) {
            continue;
        }
        let candidate = UpSet {
            cat: c.clone(),
            members,
        };
        if coherent_functor_findings(&candidate)?.iter().all(|x| x.verdict == Verdict::Pass) {
            primes.push(candidate);
        }
    }
    r.note("components", primes.len());
    {
        let n = primes.len();
        let prod = ProductFunctor::new(c.clone(), primes.clone());
        let alpha = NatTransform::new(f.clone(), prod, move |_: &ObOf<F>, _: &F::Elem| vec![(); n]);
        r.push(is_elementary(&alpha)?.finding());
        r.absorb("monic", components_monic_check(&alpha)?);
    }
    for (i, p) in primes.iter().enumerate() {
        let gens: Vec<String> = p
            .members
            .iter()
            .filter(|g| p.members.iter().all(|y| !c.hom(g, y).map(|h| h.is_empty()).unwrap_or(true)))
            .map(|g| c.ob_label(g))
            .collect();
        r.push(Finding::pass(format!("component-{i}"), format!("prime filter ↑{}", gens.join(","))));
    }
    Ok(Decomposition {
        components: Components::JoinPrimes(primes),
        report: r,
    })
}

/// On a lattice, `v ≤ u` (both below `x`) iff `M(v) ≤ M(u)` for every
/// prime filter `M`; a separating prime filter is reported when `v ≰ u`.
pub fn completeness_check(l: &FiniteLattice, x: usize, v: usize, u: usize) -> Result<Report> {
    if !l.leq(v, x) || !l.leq(u, x) {
        return Err(CatError::Invalid("v and u must be subobjects of x".into()));
    }
    let mut r = Report::new("elem complete");
    let holds = l.leq(v, u);
    let models = l.prime_filters();
    let separating = models.iter().find(|m| m[v] && !m[u]);
    r.note("holds", holds);
    r.note("models", models.len());
    if let Some(m) = separating {
        r.note("separating-model", l.filter_label(m));
    }
    r.push(if holds == separating.is_none() {
        Finding::pass("completeness", "order agrees with every prime-filter model")
    } else {
        Finding::fail("completeness", "order and models disagree").with_witness([l.name(v), l.name(u)])
    });
    Ok(r)
}

/// [`completeness_check`] for every pair `v, u` under the top, sharing
/// one enumeration of prime filters.
pub fn completeness_sweep(l: &FiniteLattice) -> Report {
    let mut r = Report::new("elem complete-sweep");
    let models = l.prime_filters();
    r.note("elements", l.len());
    r.note("models", models.len());
    for v in l.elements() {
        for u in l.elements() {
            let separated = models.iter().any(|m| m[v] && !m[u]);
            if l.leq(v, u) == separated {
                r.push(Finding::fail("completeness", "order and models disagree").with_witness([l.name(v), l.name(u)]));
                return r;
            }
        }
    }
    r.push(Finding::pass("completeness", format!("{} pairs", l.len() * l.len())));
    r
}
