//! Sheaf-valued models over a finite Boolean algebra `B`, represented
//! through `Sh(B) ≅ Set^At(B)`; global sections, the model `M_F` of a
//! regular functor, the isomorphism `ψ: B -> Sub¬(1)` and both round trips
//! of the equivalence between regular set-valued functors and coherent
//! sheaf-valued ones.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::category::{all_morphisms, Category};
use crate::diagram::{extend_model, DiagramCategory, ObjOf, RepOf, DEFAULT_DEPTH};
use crate::error::{CatError, Result};
use crate::functor::{lex_findings, NatTransform, ObOf, ProductFunctor, SetFunctor};
use crate::lattice::FiniteBooleanAlgebra;
use crate::limits::{
    check_coherent, check_disjoint_coproducts, complemented_subobjects, is_effective_epi, subobjects, union,
    ComplementedSubobjects,
};
use crate::report::{Finding, Report, Verdict};

/// Hom-sets above this size are skipped by lex spot-checks.
const LEX_HOM_LIMIT: usize = 16;

/// A model `N: C -> Sh(B)`, given by its stalks `N_p` at the atoms of `B`
/// (in the order of [`FiniteBooleanAlgebra::atoms`]).
#[derive(Debug, Clone)]
pub struct SheafModel<M> {
    pub algebra: FiniteBooleanAlgebra,
    pub components: Vec<M>,
}

impl<M: SetFunctor + Clone> SheafModel<M>
where
    M::Cat: Clone,
{
    /// Validates the component count and lexness of every component.
    pub fn new(algebra: FiniteBooleanAlgebra, components: Vec<M>) -> Result<Self> {
        if components.len() != algebra.atoms().len() {
            return Err(CatError::Invalid(format!(
                "{} components for {} atoms",
                components.len(),
                algebra.atoms().len()
            )));
        }
        for (i, m) in components.iter().enumerate() {
            if let Some(f) = first_failure(lex_findings(m, LEX_HOM_LIMIT)?) {
                return Err(CatError::NotCoherentModel(format!(
                    "component at atom {}: {}",
                    algebra.name(algebra.atoms()[i]),
                    f.detail
                )));
            }
        }
        Ok(SheafModel { algebra, components })
    }

    pub fn source(&self) -> Option<&M::Cat> {
        self.components.first().map(|m| m.source())
    }

    /// `N(x)(b) = ∏_{p ≤ b} N_p(x)`.
    pub fn value(&self, x: &ObOf<M>, b: usize) -> Result<Vec<Vec<M::Elem>>> {
        let below = self.algebra.atoms_below(b);
        let lists = below
            .iter()
            .map(|&i| self.components[i].elements(x))
            .collect::<Result<Vec<_>>>()?;
        crate::functor::cartesian(&lists)
    }

    /// `ΓN = ∏_p N_p`; needs at least one component to know the source.
    pub fn gamma(&self, source: M::Cat) -> ProductFunctor<M> {
        ProductFunctor::new(source, self.components.clone())
    }
}

/// `ΓN` for a model with a known source category.
pub fn gamma_sheaf<M: SetFunctor + Clone>(n: &SheafModel<M>, source: M::Cat) -> ProductFunctor<M>
where
    M::Cat: Clone,
{
    n.gamma(source)
}

fn first_failure(fs: Vec<Finding>) -> Option<Finding> {
    fs.into_iter().find(|f| f.verdict == Verdict::Fail)
}

/// Lex spot-check plus: every effective epi of the window goes to a
/// surjection.
pub fn regular_functor_findings<F: SetFunctor>(f: &F) -> Result<Vec<Finding>> {
    let mut out = lex_findings(f, LEX_HOM_LIMIT)?;
    if out.iter().any(|x| x.verdict == Verdict::Fail) {
        return Ok(out);
    }
    let c = f.source();
    let mut count = 0usize;
    for e in all_morphisms(c)? {
        if !is_effective_epi(c, &e)? {
            continue;
        }
        count += 1;
        let image: BTreeSet<_> = f.elements(&c.dom(&e))?.iter().map(|a| f.act(&e, a)).collect();
        if image.len() != f.elements(&c.cod(&e))?.len() {
            out.push(
                Finding::fail("effective-epis", "an effective epi is not sent to a surjection")
                    .with_witness([c.mor_label(&e)]),
            );
            return Ok(out);
        }
    }
    out.push(Finding::pass("effective-epis", format!("{count} effective epis preserved")));
    Ok(out)
}

/// Regular plus: the least subobject and binary unions of subobjects are
/// preserved, read as images in `F(x)`.
pub fn coherent_functor_findings<F: SetFunctor>(f: &F) -> Result<Vec<Finding>> {
    let mut out = regular_functor_findings(f)?;
    if out.iter().any(|x| x.verdict == Verdict::Fail) {
        return Ok(out);
    }
    let c = f.source();
    let image = |m: &<F::Cat as Category>::Mor| -> Result<BTreeSet<F::Elem>> {
        Ok(f.elements(&c.dom(m))?.iter().map(|a| f.act(m, a)).collect())
    };
    let mut pairs = 0usize;
    for x in c.objects()? {
        let lat = subobjects(c, &x)?;
        if let Some(b) = lat.bottom {
            if !image(&lat.reps[b])?.is_empty() {
                out.push(
                    Finding::fail("unions", "the least subobject has a nonempty image")
                        .with_witness([c.ob_label(&x)]),
                );
                return Ok(out);
            }
        }
        for u in 0..lat.len() {
            for v in 0..lat.len() {
                pairs += 1;
                let w = union(c, &lat, u, v)?;
                let lhs = image(&lat.reps[w])?;
                let rhs: BTreeSet<_> = image(&lat.reps[u])?.union(&image(&lat.reps[v])?).cloned().collect();
                if lhs != rhs {
                    out.push(
                        Finding::fail("unions", "a binary union is not preserved")
                            .with_witness([c.mor_label(&lat.reps[u]), c.mor_label(&lat.reps[v])]),
                    );
                    return Ok(out);
                }
            }
        }
    }
    out.push(Finding::pass("unions", format!("{pairs} pairs of subobjects")));
    Ok(out)
}

/// `ΓN` is lex and preserves effective epis.
pub fn gamma_findings<M: SetFunctor + Clone>(n: &SheafModel<M>, source: M::Cat) -> Result<Vec<Finding>>
where
    M::Cat: Clone,
{
    regular_functor_findings(&n.gamma(source))
}

/// The restricted representable `x ↦ C_F(q, φ_F x)` at an object `q` of
/// `C_F`.
pub struct RestrictedRepresentable<F: SetFunctor> {
    pub diag: Arc<DiagramCategory<F>>,
    pub at: ObjOf<F::Cat, F>,
}

impl<F: SetFunctor> Clone for RestrictedRepresentable<F> {
    fn clone(&self) -> Self {
        RestrictedRepresentable {
            diag: Arc::clone(&self.diag),
            at: self.at.clone(),
        }
    }
}

impl<F: SetFunctor> SetFunctor for RestrictedRepresentable<F> {
    type Cat = F::Cat;
    type Elem = RepOf<F::Cat, F>;
    fn source(&self) -> &F::Cat {
        self.diag.base()
    }
    fn elements(&self, x: &ObOf<F>) -> Result<Vec<Self::Elem>> {
        self.diag.hom(&self.at, &self.diag.phi_ob(x)?)
    }
    fn act(&self, g: &<F::Cat as Category>::Mor, m: &Self::Elem) -> Self::Elem {
        let d = &self.diag;
        let pg = d.phi_mor(g).expect("φ is defined");
        d.try_compose(&pg, m).expect("composable in normal form")
    }
    fn elem_label(&self, m: &Self::Elem) -> String {
        self.diag.rep_label(m)
    }
}

/// `M_F` together with the data it was built from.
pub struct RegularModel<F: SetFunctor> {
    pub diag: Arc<DiagramCategory<F>>,
    /// `Sub¬_{C_F}(1)` in the core view.
    pub sub1: ComplementedSubobjects<RepOf<F::Cat, F>>,
    pub model: SheafModel<RestrictedRepresentable<F>>,
    /// `X_q -> (id_1, *)` for each atom `q`, in atom order.
    pub atom_monos: Vec<RepOf<F::Cat, F>>,
}

impl<F: SetFunctor> RegularModel<F> {
    /// The comparison `F(y) -> ΓM_F(y)`, `b ↦ (η(b) ∘ m_q)_q`.
    pub fn comparison(&self, y: &ObOf<F>, b: &F::Elem) -> Result<Vec<RepOf<F::Cat, F>>> {
        let d = &self.diag;
        let e = d.normalize(&d.eta(y, b)?)?;
        self.atom_monos
            .iter()
            .map(|m| {
                d.try_compose(&e, m)
                    .ok_or_else(|| CatError::Invalid("restriction to an atom is undefined".into()))
            })
            .collect()
    }
}

/// Structural preconditions on `C`: coherent with disjoint coproducts.
pub fn check_lurie_base<C: Category>(c: &C) -> Result<()> {
    let coh = check_coherent(c)?;
    if let Some(f) = coh.first_failure() {
        return Err(CatError::NotCoherent(format!("{}: {}", f.check, f.detail)));
    }
    let dis = check_disjoint_coproducts(c)?;
    if let Some(f) = dis.first_failure() {
        return Err(CatError::NotCoherent(format!("{}: {}", f.check, f.detail)));
    }
    Ok(())
}

/// `M_F: C -> Sh(Sub¬_{C_F}(1))`, read atomwise as `C_F(q, φ_F -)`.
pub fn model_from_regular<F: SetFunctor>(f: F) -> Result<RegularModel<F>> {
    build_regular_model(f, true)
}

/// [`model_from_regular`], optionally skipping the checks on `C`.
pub fn build_regular_model<F: SetFunctor>(f: F, check_base: bool) -> Result<RegularModel<F>> {
    if check_base {
        check_lurie_base(f.source())?;
    }
    if let Some(bad) = first_failure(regular_functor_findings(&f)?) {
        return Err(CatError::NotRegular(format!("{}: {}", bad.detail, bad.witness.join(", "))));
    }
    let diag = Arc::new(DiagramCategory::build(f, DEFAULT_DEPTH)?);
    if !diag.has_normal_form() {
        return Err(CatError::Invalid(
            "∫F has no initial object in the window; M_F needs the normal form".into(),
        ));
    }
    let one = core_terminal(&diag)?;
    let sub1 = complemented_subobjects(&diag.core(), &one)?;
    let components = sub1
        .algebra
        .atoms()
        .iter()
        .map(|&q| RestrictedRepresentable {
            diag: Arc::clone(&diag),
            at: sub1.reps[q].src.clone(),
        })
        .collect();
    let model = SheafModel {
        algebra: sub1.algebra.clone(),
        components,
    };
    let bridge = diag
        .hom(&one, &diag.terminal_obj()?)?
        .into_iter()
        .next()
        .ok_or_else(|| CatError::Invalid("the core terminal is not terminal".into()))?;
    let atom_monos = sub1
        .algebra
        .atoms()
        .iter()
        .map(|&q| {
            diag.try_compose(&bridge, &sub1.reps[q])
                .ok_or_else(|| CatError::Invalid("atom does not map to 1".into()))
        })
        .collect::<Result<_>>()?;
    Ok(RegularModel {
        diag,
        sub1,
        model,
        atom_monos,
    })
}

/// The terminal object `(id_k, c0)` of the core view.
pub fn core_terminal<F: SetFunctor>(d: &DiagramCategory<F>) -> Result<ObjOf<F::Cat, F>> {
    let (k, c0) = d
        .initial()
        .ok_or_else(|| CatError::Invalid("no normal form".into()))?;
    Ok(crate::diagram::DiagObj {
        u: d.base().identity(k),
        a: c0.clone(),
    })
}

/// Direction one: `F ≅ Γ(M_F)` via `b ↦ (η(b) ∘ m_q)_q`, checked to be a
/// natural bijection over the window.
pub fn lurie_direction_one<F: SetFunctor>(rm: &RegularModel<F>) -> Result<Report>
where
    F::Cat: Clone,
{
    let mut r = Report::new("sheaf lurie-1");
    let d = &rm.diag;
    let c = d.base();
    r.note("sub1-size", rm.sub1.algebra.len());
    r.note("atoms", rm.model.components.len());
    let alpha = |y: &ObOf<F>, b: &F::Elem| rm.comparison(y, b);
    let gamma = rm.model.gamma(c.clone());
    let objs = c.objects()?;
    for y in &objs {
        let fy = d.functor.elements(y)?;
        let image: BTreeSet<_> = fy.iter().map(|b| alpha(y, b)).collect::<Result<_>>()?;
        let target = gamma.elements(y)?;
        if image.len() != fy.len() || image.len() != target.len() {
            r.push(
                Finding::fail("bijective", "F(y) -> ΓM_F(y) is not a bijection")
                    .with_witness([c.ob_label(y)]),
            );
            return Ok(r);
        }
    }
    let mut squares = 0usize;
    for g in all_morphisms(c)? {
        let (y, z) = (c.dom(&g), c.cod(&g));
        for b in d.functor.elements(&y)? {
            squares += 1;
            if alpha(&z, &d.functor.act(&g, &b))? != gamma.act(&g, &alpha(&y, &b)?) {
                r.push(
                    Finding::fail("natural", "F => ΓM_F is not natural")
                        .with_witness([c.mor_label(&g), d.functor.elem_label(&b)]),
                );
                return Ok(r);
            }
        }
    }
    r.push(Finding::pass(
        "lurie-1",
        format!("{} objects, {squares} squares", objs.len()),
    ));
    Ok(r)
}

/// The data of `C_{ΓN}` used by `ψ` and direction two.
pub struct GammaDiagram<M: SetFunctor> {
    pub model: SheafModel<M>,
    pub diag: DiagramCategory<ProductFunctor<M>>,
    pub sub1: ComplementedSubobjects<RepOf<M::Cat, ProductFunctor<M>>>,
}

impl<M: SetFunctor + Clone> GammaDiagram<M>
where
    M::Cat: Clone,
{
    pub fn new(model: SheafModel<M>, source: M::Cat) -> Result<Self> {
        let gamma = model.gamma(source);
        if let Some(bad) = first_failure(regular_functor_findings(&gamma)?) {
            return Err(CatError::NotCoherentModel(format!("ΓN is not regular: {}", bad.detail)));
        }
        let diag = DiagramCategory::build(gamma, DEFAULT_DEPTH)?;
        if !diag.has_normal_form() {
            return Err(CatError::Invalid("∫ΓN has no initial object in the window".into()));
        }
        let one = core_terminal(&diag)?;
        let sub1 = complemented_subobjects(&diag.core(), &one)?;
        let gd = GammaDiagram { model, diag, sub1 };
        for b in 0..gd.model.algebra.len() {
            gd.psi_forward(b)?;
        }
        Ok(gd)
    }

    /// The projection `ΓN => N_p`.
    fn projection(
        &self,
        p: usize,
    ) -> NatTransform<ProductFunctor<M>, M, impl Fn(&ObOf<M>, &Vec<M::Elem>) -> M::Elem> {
        NatTransform::new(self.diag.functor.clone(), self.model.components[p].clone(), move |_: &ObOf<M>, v: &Vec<M::Elem>| {
            v[p].clone()
        })
    }

    /// Atoms `p` with `Ñ_p(X) ≠ ∅`, where `Ñ_p` extends `N_p` along `φ`.
    pub fn support(&self, x: &ObjOf<M::Cat, ProductFunctor<M>>) -> Result<BTreeSet<usize>> {
        let c = self.diag.base();
        let mut out = BTreeSet::new();
        for p in 0..self.model.components.len() {
            let np = &self.model.components[p];
            let hit = np
                .elements(&c.dom(&x.u))?
                .iter()
                .any(|e| np.act(&x.u, e) == x.a[p]);
            if hit {
                out.insert(p);
            }
        }
        Ok(out)
    }

    /// `ψ⁻¹` on a complemented subobject of `1` in `C_{ΓN}`, as an element
    /// of `B`.
    pub fn psi_inverse(&self, x: &ObjOf<M::Cat, ProductFunctor<M>>) -> Result<usize> {
        Ok(self.model.algebra.element_of_atoms(&self.support(x)?))
    }

    /// `ψ` as a table: `psi[b]` is the index in `sub1` of `ψ(b)`.
    pub fn psi_table(&self) -> Result<Vec<usize>> {
        let b = &self.model.algebra;
        let mut table = vec![usize::MAX; b.len()];
        for (i, rep) in self.sub1.reps.iter().enumerate() {
            let e = self.psi_inverse(&rep.src)?;
            if table[e] != usize::MAX {
                return Err(CatError::Invalid(format!("ψ⁻¹ is not injective at {}", b.name(e))));
            }
            table[e] = i;
        }
        if let Some(e) = table.iter().position(|&t| t == usize::MAX) {
            return Err(CatError::Invalid(format!("ψ⁻¹ misses {}", b.name(e))));
        }
        Ok(table)
    }

    /// The forward formula: the subobject `1 ⊔ ∅ -> 1 ⊔ 1` marked with the
    /// section glued from the first injection over `b` and the second over
    /// `¬b`. In a thin base `1 ⊔ 1` is read as a complemented pair `c, ¬c`
    /// of the base with the matching stalk pattern.
    pub fn psi_forward(&self, b: usize) -> Result<ObjOf<M::Cat, ProductFunctor<M>>> {
        let c = self.diag.base();
        let alg = &self.model.algebra;
        let inside = alg.atoms_below(b);
        let one = c.terminal()?;
        let star = self.diag.star()?.1;
        if c.is_thin() {
            let init = c
                .initial()
                .map_err(|_| CatError::MissingCoproduct("no initial object".into()))?;
            let obs = c.objects()?;
            let stalks = |w: &ObOf<M>| -> Result<BTreeSet<usize>> {
                let mut s = BTreeSet::new();
                for (p, np) in self.model.components.iter().enumerate() {
                    if !np.elements(w)?.is_empty() {
                        s.insert(p);
                    }
                }
                Ok(s)
            };
            let outside: BTreeSet<usize> = (0..alg.atoms().len()).filter(|p| !inside.contains(p)).collect();
            for w in &obs {
                for v in &obs {
                    let (Ok(m), Ok(j)) = (c.product(w, v), c.coproduct(w, v)) else {
                        continue;
                    };
                    if c.dom(&m.left) != init || c.cod(&j.left) != one {
                        continue;
                    }
                    if stalks(w)? == inside && stalks(v)? == outside {
                        let u = c
                            .hom(w, &one)?
                            .into_iter()
                            .next()
                            .ok_or_else(|| CatError::MissingCoproduct("no map to 1".into()))?;
                        return Ok(crate::diagram::DiagObj { u, a: star });
                    }
                }
            }
            return Err(CatError::MissingCoproduct(format!(
                "no complemented pair with the stalk pattern of {}",
                alg.name(b)
            )));
        }
        let two = c
            .coproduct(&one, &one)
            .map_err(|e| CatError::MissingCoproduct(format!("1 ⊔ 1: {e}")))?;
        let meet = c.pullback(&two.left, &two.right)?;
        let apex = c.dom(&meet.left);
        for z in c.objects()? {
            if c.hom(&apex, &z)?.len() != 1 {
                return Err(CatError::MissingCoproduct("1 ⊔ 1 is not disjoint".into()));
            }
        }
        let mut marker = Vec::new();
        for (p, np) in self.model.components.iter().enumerate() {
            let pt = np
                .elements(&one)?
                .into_iter()
                .next()
                .ok_or_else(|| CatError::NotCoherentModel("a stalk has empty N_p(1)".into()))?;
            let inj = if inside.contains(&p) { &two.left } else { &two.right };
            marker.push(np.act(inj, &pt));
        }
        Ok(crate::diagram::DiagObj {
            u: two.left.clone(),
            a: marker,
        })
    }

    /// `ψ` is a well-defined bijection, a Boolean homomorphism, agrees
    /// with the forward formula, and `ψ⁻¹ ∘ ψ`, `ψ ∘ ψ⁻¹` are identities.
    pub fn psi_findings(&self) -> Result<Vec<Finding>> {
        let mut out = Vec::new();
        let b = &self.model.algebra;
        let s = &self.sub1.algebra;
        let table = match self.psi_table() {
            Ok(t) => t,
            Err(e) => {
                out.push(Finding::fail("psi-bijective", e.to_string()));
                return Ok(out);
            }
        };
        out.push(Finding::pass("psi-bijective", format!("{} elements", b.len())));
        let hom_ok = table[b.top()] == s.top()
            && table[b.bottom()] == s.bottom()
            && (0..b.len()).all(|x| {
                (0..b.len()).all(|y| {
                    table[b.meet(x, y)] == s.meet(table[x], table[y])
                        && table[b.join(x, y)] == s.join(table[x], table[y])
                })
            });
        out.push(if hom_ok {
            Finding::pass("psi-homomorphism", "top, bottom, meets and joins preserved")
        } else {
            Finding::fail("psi-homomorphism", "ψ is not a Boolean homomorphism")
        });
        for (e, &i) in table.iter().enumerate() {
            if self.psi_inverse(&self.sub1.reps[i].src)? != e {
                out.push(Finding::fail("psi-roundtrip", "ψ⁻¹ ∘ ψ ≠ id").with_witness([b.name(e)]));
                return Ok(out);
            }
        }
        for i in 0..self.sub1.reps.len() {
            if table[self.psi_inverse(&self.sub1.reps[i].src)?] != i {
                out.push(Finding::fail("psi-roundtrip", "ψ ∘ ψ⁻¹ ≠ id"));
                return Ok(out);
            }
        }
        out.push(Finding::pass("psi-roundtrip", "both composites are identities"));
        let core = self.diag.core();
        for e in 0..b.len() {
            let fwd = match self.psi_forward(e) {
                Ok(x) => x,
                Err(err) => {
                    out.push(Finding::fail("psi-forward", err.to_string()).with_witness([b.name(e)]));
                    return Ok(out);
                }
            };
            let rep = &self.sub1.reps[table[e]].src;
            let there = !self.diag.hom(&fwd, rep)?.is_empty() && !core.hom(rep, &fwd)?.is_empty();
            if self.psi_inverse(&fwd)? != e || !there {
                out.push(
                    Finding::fail("psi-forward", "the forward formula disagrees with ψ").with_witness([b.name(e)]),
                );
                return Ok(out);
            }
        }
        out.push(Finding::pass("psi-forward", "forward formula matches"));
        Ok(out)
    }
}

impl<M: SetFunctor + Clone> GammaDiagram<M>
where
    M::Cat: Clone,
{
    /// Direction two: `N_p ≅ C_{ΓN}(ψ(p), φ -)` for every atom `p`, with
    /// `θ⁻¹[f] = Ñ_p(f)(e)` for the unique `e ∈ Ñ_p(ψ(p))`.
    pub fn direction_two(&self) -> Result<Report> {
        let mut r = Report::new("sheaf lurie-2");
        let b = &self.model.algebra;
        r.note("atoms", b.atoms().len());
        let table = self.psi_table()?;
        let c = self.diag.base();
        let objs = c.objects()?;
        let mut squares = 0usize;
        for (p, &atom) in b.atoms().iter().enumerate() {
            let q = table[atom];
            if !self.sub1.algebra.atoms().contains(&q) {
                r.push(Finding::fail("psi-atoms", "ψ does not send an atom to an atom").with_witness([b.name(atom)]));
                return Ok(r);
            }
            let xq = self.sub1.reps[q].src.clone();
            let ext = extend_model(&self.diag, self.projection(p))?;
            let pts = ext.elements(&xq)?;
            if pts.len() != 1 {
                r.push(
                    Finding::fail("theta", "Ñ_p(ψ(p)) is not a singleton").with_witness([b.name(atom)]),
                );
                return Ok(r);
            }
            let np = &self.model.components[p];
            let theta_inv = |f: &RepOf<M::Cat, ProductFunctor<M>>| ext.try_act(f, &pts[0]);
            for y in &objs {
                let homs = self.diag.hom(&xq, &self.diag.phi_ob(y)?)?;
                let image: BTreeSet<_> = homs.iter().map(&theta_inv).collect::<Result<_>>()?;
                if image.len() != homs.len() || image.len() != np.elements(y)?.len() {
                    r.push(
                        Finding::fail("theta", "θ is not a bijection")
                            .with_witness([b.name(atom).to_string(), c.ob_label(y)]),
                    );
                    return Ok(r);
                }
            }
            for g in all_morphisms(c)? {
                let y = c.dom(&g);
                let pg = self.diag.phi_mor(&g)?;
                for f in self.diag.hom(&xq, &self.diag.phi_ob(&y)?)? {
                    squares += 1;
                    let moved = self
                        .diag
                        .try_compose(&pg, &f)
                        .ok_or_else(|| CatError::Invalid("composite undefined".into()))?;
                    if theta_inv(&moved)? != np.act(&g, &theta_inv(&f)?) {
                        r.push(
                            Finding::fail("theta", "θ is not natural").with_witness([b.name(atom).to_string(), c.mor_label(&g)]),
                        );
                        return Ok(r);
                    }
                }
            }
        }
        r.push(Finding::pass("lurie-2", format!("{} atoms, {squares} squares", b.atoms().len())));
        Ok(r)
    }
}

/// Both round trips for a regular `F`: direction one on `M_F`, then
/// direction two on `M_F` itself.
pub fn lurie_roundtrip_check<F: SetFunctor + Clone>(f: F) -> Result<Report>
where
    F::Cat: Clone,
{
    let mut r = Report::new("sheaf lurie");
    let rm = model_from_regular(f)?;
    r.absorb("direction-1", lurie_direction_one(&rm)?);
    let source = rm.diag.base().clone();
    let gd = GammaDiagram::new(rm.model.clone(), source)?;
    r.extend(gd.psi_findings()?);
    r.absorb("direction-2", gd.direction_two()?);
    Ok(r)
}

/// In `Set^At(B)` the subobjects of `1` are the subfamilies of atoms, each
/// complemented, and `b ↦ {p ≤ b}` is a Boolean isomorphism onto them.
pub fn presheaf_complemented_check(b: &FiniteBooleanAlgebra) -> Report {
    let mut r = Report::new("sheaf complemented");
    let n = b.atoms().len();
    let families: Vec<BTreeSet<usize>> = (0u64..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    let all: BTreeSet<usize> = (0..n).collect();
    let complemented = families
        .iter()
        .filter(|s| {
            let comp: BTreeSet<usize> = all.difference(s).cloned().collect();
            families.contains(&comp) && s.intersection(&comp).next().is_none()
        })
        .count();
    let image: BTreeSet<BTreeSet<usize>> = (0..b.len()).map(|e| b.atoms_below(e)).collect();
    let hom = (0..b.len()).all(|x| {
        (0..b.len()).all(|y| {
            b.atoms_below(b.meet(x, y)) == b.atoms_below(x).intersection(&b.atoms_below(y)).cloned().collect()
                && b.atoms_below(b.join(x, y)) == b.atoms_below(x).union(&b.atoms_below(y)).cloned().collect()
        })
    });
    r.note("elements", b.len());
    r.note("subobjects", families.len());
    if complemented == families.len() && image.len() == b.len() && image.len() == families.len() && hom {
        r.push(Finding::pass("complemented", format!("{} complemented subobjects of 1", families.len())));
    } else {
        r.push(Finding::fail("complemented", "Y is not an isomorphism onto Sub¬(1)"));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{b4, up_named};

    #[test]
    fn gamma_of_atom_filters_on_b4_is_up_top() {
        let b = b4();
        let p = b.poset().clone();
        let n = SheafModel::new(
            FiniteBooleanAlgebra::powerset(&["p", "q"]).unwrap(),
            vec![up_named(&p, "a").unwrap(), up_named(&p, "na").unwrap()],
        )
        .unwrap();
        let g = n.gamma(p.clone());
        let members: Vec<usize> = (0..p.len()).filter(|x| !g.elements(x).unwrap().is_empty()).collect();
        assert_eq!(members, vec![p.index("1").unwrap()]);
    }

    #[test]
    fn presheaf_check_on_small_algebras() {
        for b in crate::lattice::boolean_fixtures(3).unwrap() {
            assert!(presheaf_complemented_check(&b).is_pass());
        }
    }
}
