//! Finite limits by cone search, image factorizations, subobject lattices
//! and the exactness checkers (lex, regular, coherent, disjoint coproducts).

use std::collections::{BTreeMap, HashSet};

use rand::Rng;

use crate::category::{all_morphisms, is_iso, is_mono, Category, Cospan, Op, Span};
use crate::error::{CatError, Result};
use crate::lattice::{FiniteBooleanAlgebra, FiniteLattice};
use crate::poset::Poset;
use crate::report::{Finding, Report};

/// Upper bound on the number of cones enumerated over one apex.
pub const CONE_BOUND: u128 = 1 << 18;

/// A finite diagram: objects and arrows `(source index, target index, morphism)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram<O, M> {
    pub objects: Vec<O>,
    pub arrows: Vec<(usize, usize, M)>,
}

impl<O, M> Diagram<O, M> {
    pub fn discrete(objects: Vec<O>) -> Self {
        Diagram {
            objects,
            arrows: Vec::new(),
        }
    }
}

/// A cone: one leg from the apex to each diagram object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone<O, M> {
    pub apex: O,
    pub legs: Vec<M>,
}

/// All cones over `d` with apex `w`, in lexicographic leg order.
pub fn cones_from<C: Category>(
    c: &C,
    w: &C::Ob,
    d: &Diagram<C::Ob, C::Mor>,
) -> Result<Vec<Vec<C::Mor>>> {
    let homs: Vec<Vec<C::Mor>> = d
        .objects
        .iter()
        .map(|o| c.hom(w, o))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut legs: Vec<C::Mor> = Vec::with_capacity(d.objects.len());
    fn rec<C: Category>(
        c: &C,
        d: &Diagram<C::Ob, C::Mor>,
        homs: &[Vec<C::Mor>],
        legs: &mut Vec<C::Mor>,
        out: &mut Vec<Vec<C::Mor>>,
    ) -> Result<()> {
        let i = legs.len();
        if i == homs.len() {
            if out.len() as u128 >= CONE_BOUND {
                return Err(CatError::overflow("cone enumeration", CONE_BOUND + 1, CONE_BOUND));
            }
            out.push(legs.clone());
            return Ok(());
        }
        for h in &homs[i] {
            legs.push(h.clone());
            let ok = d.arrows.iter().all(|(s, t, m)| {
                let (s, t) = (*s, *t);
                if s.max(t) > i {
                    return true;
                }
                c.compose(m, &legs[s]) == legs[t]
            });
            if ok {
                rec(c, d, homs, legs, out)?;
            }
            legs.pop();
        }
        Ok(())
    }
    rec(c, d, &homs, &mut legs, &mut out)?;
    Ok(out)
}

/// Limit by exhaustive cone search over the window. The first universal
/// cone in object order wins.
pub fn limit<C: Category>(c: &C, d: &Diagram<C::Ob, C::Mor>) -> Result<Cone<C::Ob, C::Mor>> {
    let obs = c.objects()?;
    let mut cone_counts: Vec<Option<usize>> = vec![None; obs.len()];
    for (li, l) in obs.iter().enumerate() {
        let lcones = cones_from(c, l, d)?;
        if lcones.is_empty() {
            continue;
        }
        // A universal cone at l needs |hom(w, l)| = |cones(w)| for every w.
        let mut sizes_ok = true;
        for (wi, w) in obs.iter().enumerate() {
            let n = match cone_counts[wi] {
                Some(n) => n,
                None => {
                    let n = cones_from(c, w, d)?.len();
                    cone_counts[wi] = Some(n);
                    n
                }
            };
            if c.hom(w, l)?.len() != n {
                sizes_ok = false;
                break;
            }
        }
        let _ = li;
        if !sizes_ok {
            continue;
        }
        'lambda: for lam in lcones {
            for w in &obs {
                let mut seen = HashSet::new();
                for m in c.hom(w, l)? {
                    let image: Vec<C::Mor> = lam.iter().map(|leg| c.compose(leg, &m)).collect();
                    if !seen.insert(image) {
                        continue 'lambda;
                    }
                }
            }
            return Ok(Cone {
                apex: l.clone(),
                legs: lam,
            });
        }
    }
    Err(CatError::NoLimit(format!(
        "no universal cone over a diagram with {} objects",
        d.objects.len()
    )))
}

/// Colimit: a limit in the opposite category over the reversed diagram.
/// Legs run from the diagram objects into the apex.
pub fn colimit<C: Category>(c: &C, d: &Diagram<C::Ob, C::Mor>) -> Result<Cone<C::Ob, C::Mor>> {
    let rev = Diagram {
        objects: d.objects.clone(),
        arrows: d.arrows.iter().map(|(s, t, m)| (*t, *s, m.clone())).collect(),
    };
    limit(&Op(c), &rev).map_err(|e| match e {
        CatError::NoLimit(s) => CatError::NoColimit(s),
        other => other,
    })
}

pub fn search_terminal<C: Category>(c: &C) -> Result<C::Ob> {
    limit(c, &Diagram::discrete(Vec::new()))
        .map(|cone| cone.apex)
        .map_err(|_| CatError::NoLimit("no terminal object".into()))
}

pub fn search_initial<C: Category>(c: &C) -> Result<C::Ob> {
    colimit(c, &Diagram::discrete(Vec::new()))
        .map(|cone| cone.apex)
        .map_err(|_| CatError::NoColimit("no initial object".into()))
}

pub fn search_product<C: Category>(c: &C, a: &C::Ob, b: &C::Ob) -> Result<Span<C::Mor>> {
    let cone = limit(c, &Diagram::discrete(vec![a.clone(), b.clone()])).map_err(|_| {
        CatError::NoLimit(format!("no product of {} and {}", c.ob_label(a), c.ob_label(b)))
    })?;
    let mut legs = cone.legs.into_iter();
    Ok(Span {
        left: legs.next().expect("two legs"),
        right: legs.next().expect("two legs"),
    })
}

pub fn search_pullback<C: Category>(c: &C, f: &C::Mor, g: &C::Mor) -> Result<Span<C::Mor>> {
    if c.cod(f) != c.cod(g) {
        return Err(CatError::Invalid("pullback of a non-cospan".into()));
    }
    let d = Diagram {
        objects: vec![c.dom(f), c.dom(g), c.cod(f)],
        arrows: vec![(0, 2, f.clone()), (1, 2, g.clone())],
    };
    let cone = limit(c, &d).map_err(|_| {
        CatError::NoLimit(format!("no pullback of {} and {}", c.mor_label(f), c.mor_label(g)))
    })?;
    Ok(Span {
        left: cone.legs[0].clone(),
        right: cone.legs[1].clone(),
    })
}

pub fn search_equalizer<C: Category>(c: &C, f: &C::Mor, g: &C::Mor) -> Result<C::Mor> {
    let d = Diagram {
        objects: vec![c.dom(f), c.cod(f)],
        arrows: vec![(0, 1, f.clone()), (0, 1, g.clone())],
    };
    let cone = limit(c, &d).map_err(|_| {
        CatError::NoLimit(format!("no equalizer of {} and {}", c.mor_label(f), c.mor_label(g)))
    })?;
    Ok(cone.legs[0].clone())
}

pub fn search_coproduct<C: Category>(c: &C, a: &C::Ob, b: &C::Ob) -> Result<Cospan<C::Mor>> {
    let cone = colimit(c, &Diagram::discrete(vec![a.clone(), b.clone()])).map_err(|_| {
        CatError::NoColimit(format!("no coproduct of {} and {}", c.ob_label(a), c.ob_label(b)))
    })?;
    Ok(Cospan {
        left: cone.legs[0].clone(),
        right: cone.legs[1].clone(),
    })
}

pub fn search_coequalizer<C: Category>(c: &C, f: &C::Mor, g: &C::Mor) -> Result<C::Mor> {
    let d = Diagram {
        objects: vec![c.dom(f), c.cod(f)],
        arrows: vec![(0, 1, f.clone()), (0, 1, g.clone())],
    };
    let cone = colimit(c, &d).map_err(|_| {
        CatError::NoColimit(format!("no coequalizer of {} and {}", c.mor_label(f), c.mor_label(g)))
    })?;
    Ok(cone.legs[1].clone())
}

/// The copairing `[p, q]: a+b -> x` of `p: a -> x` and `q: b -> x`.
pub fn copair<C: Category>(c: &C, inj: &Cospan<C::Mor>, p: &C::Mor, q: &C::Mor) -> Result<C::Mor> {
    let op = Op(c);
    op.mediate(
        &Span {
            left: inj.left.clone(),
            right: inj.right.clone(),
        },
        p,
        q,
    )
    .map_err(|_| CatError::NoColimit("copairing does not exist".into()))
}

/// An effective-epi / mono factorization `f = mono ∘ epi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<M> {
    pub epi: M,
    pub mono: M,
}

/// Effective epi test: in a thin category exactly the isomorphisms,
/// otherwise `f` must be the coequalizer of its kernel pair.
pub fn is_effective_epi<C: Category>(c: &C, f: &C::Mor) -> Result<bool> {
    if c.is_thin() {
        return is_iso(c, f);
    }
    let kp = match c.pullback(f, f) {
        Ok(kp) => kp,
        Err(_) => return Ok(false),
    };
    let q = match c.coequalizer(&kp.left, &kp.right) {
        Ok(q) => q,
        Err(_) => return Ok(false),
    };
    // f factors through q; f is effective iff the comparison is an iso.
    for m in c.hom(&c.cod(&q), &c.cod(f))? {
        if c.compose(&m, &q) == *f {
            return is_iso(c, &m);
        }
    }
    Ok(false)
}

/// Image factorization through the coequalizer of the kernel pair.
pub fn factorize<C: Category>(c: &C, f: &C::Mor) -> Result<Factorization<C::Mor>> {
    if c.is_thin() {
        return Ok(Factorization {
            epi: c.identity(&c.dom(f)),
            mono: f.clone(),
        });
    }
    let kp = c
        .pullback(f, f)
        .map_err(|_| CatError::NoFactorization(format!("kernel pair of {} missing", c.mor_label(f))))?;
    let e = c
        .coequalizer(&kp.left, &kp.right)
        .map_err(|_| CatError::NoFactorization(format!("coequalizer for {} missing", c.mor_label(f))))?;
    for m in c.hom(&c.cod(&e), &c.cod(f))? {
        if c.compose(&m, &e) == *f {
            if is_mono(c, &m)? {
                return Ok(Factorization { epi: e, mono: m });
            }
            return Err(CatError::NoFactorization(format!(
                "comparison map of {} is not monic",
                c.mor_label(f)
            )));
        }
    }
    Err(CatError::NoFactorization(format!(
        "{} does not factor through its coimage",
        c.mor_label(f)
    )))
}

/// The subobjects of one object: canonical representatives (least mono of
/// each class in enumeration order) and the induced order.
#[derive(Debug, Clone)]
pub struct SubobjectLattice<O, M> {
    pub ambient: O,
    pub reps: Vec<M>,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<Option<usize>>>,
    pub join: Vec<Vec<Option<usize>>>,
    pub bottom: Option<usize>,
    pub top: Option<usize>,
}

impl<O, M> SubobjectLattice<O, M> {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Whether every pairwise meet and join exists and both bounds exist.
    pub fn is_lattice(&self) -> bool {
        self.bottom.is_some()
            && self.top.is_some()
            && self.meet.iter().flatten().all(Option::is_some)
            && self.join.iter().flatten().all(Option::is_some)
    }

    /// The lattice as a [`Poset`] named by `label`.
    pub fn to_poset(&self, label: impl Fn(&M) -> String) -> Result<Poset> {
        Poset::from_leq(self.reps.iter().map(label).collect(), self.leq.clone())
    }
}

/// `u ≤ v` as subobjects: `u` factors through `v`.
pub fn factors_through<C: Category>(c: &C, u: &C::Mor, v: &C::Mor) -> Result<bool> {
    Ok(!c.slice_hom(u, v)?.is_empty())
}

/// Enumerates the subobjects of `x` from monos out of window objects.
pub fn subobjects<C: Category>(c: &C, x: &C::Ob) -> Result<SubobjectLattice<C::Ob, C::Mor>> {
    let mut reps: Vec<C::Mor> = Vec::new();
    for w in c.objects()? {
        for m in c.hom(&w, x)? {
            if !is_mono(c, &m)? {
                continue;
            }
            let mut known = false;
            for r in &reps {
                if factors_through(c, &m, r)? && factors_through(c, r, &m)? {
                    known = true;
                    break;
                }
            }
            if !known {
                reps.push(m);
            }
        }
    }
    let n = reps.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = i == j || factors_through(c, &reps[i], &reps[j])?;
        }
    }
    let (meet, join, bottom, top) = bounds_from_order(&leq);
    Ok(SubobjectLattice {
        ambient: x.clone(),
        reps,
        leq,
        meet,
        join,
        bottom,
        top,
    })
}

type OrderTables = (
    Vec<Vec<Option<usize>>>,
    Vec<Vec<Option<usize>>>,
    Option<usize>,
    Option<usize>,
);

/// Greatest lower / least upper bounds and extremal elements of a finite order.
pub(crate) fn bounds_from_order(leq: &[Vec<bool>]) -> OrderTables {
    let n = leq.len();
    let glb = |i: usize, j: usize| -> Option<usize> {
        let lower: Vec<usize> = (0..n).filter(|&k| leq[k][i] && leq[k][j]).collect();
        lower
            .iter()
            .copied()
            .find(|&k| lower.iter().all(|&l| leq[l][k]))
    };
    let lub = |i: usize, j: usize| -> Option<usize> {
        let upper: Vec<usize> = (0..n).filter(|&k| leq[i][k] && leq[j][k]).collect();
        upper
            .iter()
            .copied()
            .find(|&k| upper.iter().all(|&l| leq[k][l]))
    };
    let mut meet = vec![vec![None; n]; n];
    let mut join = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            meet[i][j] = glb(i, j);
            join[i][j] = lub(i, j);
        }
    }
    let bottom = (0..n).find(|&k| (0..n).all(|l| leq[k][l]));
    let top = (0..n).find(|&k| (0..n).all(|l| leq[l][k]));
    (meet, join, bottom, top)
}

/// Index of the class of the mono `m` in `lat`.
pub fn class_of<C: Category>(
    c: &C,
    lat: &SubobjectLattice<C::Ob, C::Mor>,
    m: &C::Mor,
) -> Result<Option<usize>> {
    for (i, r) in lat.reps.iter().enumerate() {
        if factors_through(c, m, r)? && factors_through(c, r, m)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Union of two subobjects: image of the copairing when the coproduct of the
/// domains exists, otherwise the least upper bound in the lattice.
pub fn union<C: Category>(
    c: &C,
    lat: &SubobjectLattice<C::Ob, C::Mor>,
    u: usize,
    v: usize,
) -> Result<usize> {
    let (mu, mv) = (&lat.reps[u], &lat.reps[v]);
    if !c.is_thin() {
        if let Ok(inj) = c.coproduct(&c.dom(mu), &c.dom(mv)) {
            let cp = copair(c, &inj, mu, mv)?;
            let fac = factorize(c, &cp)?;
            return class_of(c, lat, &fac.mono)?
                .ok_or_else(|| CatError::NoUnion("image of the copairing is not enumerated".into()));
        }
    }
    lat.join[u][v].ok_or_else(|| {
        CatError::NoUnion(format!(
            "{} and {} have no least upper bound",
            c.mor_label(mu),
            c.mor_label(mv)
        ))
    })
}

/// Pulls the subobject `m` of `cod g` back along `g`.
pub fn pull_subobject<C: Category>(c: &C, g: &C::Mor, m: &C::Mor) -> Result<C::Mor> {
    Ok(c.pullback(g, m)?.left)
}

/// The complemented subobjects of `x` as a Boolean algebra; element `i`
/// of the algebra is the class `reps[i]`.
#[derive(Debug, Clone)]
pub struct ComplementedSubobjects<M> {
    pub reps: Vec<M>,
    pub algebra: FiniteBooleanAlgebra,
}

pub fn complemented_subobjects<C: Category>(
    c: &C,
    x: &C::Ob,
) -> Result<ComplementedSubobjects<C::Mor>> {
    let lat = subobjects(c, x)?;
    complemented_from_lattice(c, &lat)
}

pub fn complemented_from_lattice<C: Category>(
    c: &C,
    lat: &SubobjectLattice<C::Ob, C::Mor>,
) -> Result<ComplementedSubobjects<C::Mor>> {
    let (bot, top) = match (lat.bottom, lat.top) {
        (Some(b), Some(t)) => (b, t),
        _ => return Err(CatError::NotBoolean("subobject lattice lacks a bound".into())),
    };
    let n = lat.len();
    let mut chosen = Vec::new();
    for u in 0..n {
        let comps: Vec<usize> = (0..n)
            .filter(|&w| lat.meet[u][w] == Some(bot) && lat.join[u][w] == Some(top))
            .collect();
        match comps.len() {
            0 => {}
            1 => chosen.push(u),
            _ => {
                return Err(CatError::NotBoolean(format!(
                    "{} has {} complements",
                    c.mor_label(&lat.reps[u]),
                    comps.len()
                )))
            }
        }
    }
    for &u in &chosen {
        for &v in &chosen {
            let closed = |t: Option<usize>| t.map(|t| chosen.contains(&t)).unwrap_or(false);
            if !closed(lat.meet[u][v]) || !closed(lat.join[u][v]) {
                return Err(CatError::NotBoolean(
                    "complemented subobjects are not closed under meet and join".into(),
                ));
            }
        }
    }
    let names: Vec<String> = chosen.iter().map(|&i| c.mor_label(&lat.reps[i])).collect();
    let leq: Vec<Vec<bool>> = chosen
        .iter()
        .map(|&i| chosen.iter().map(|&j| lat.leq[i][j]).collect())
        .collect();
    let poset = Poset::from_leq(names, leq)?;
    let lattice = FiniteLattice::new(poset)?;
    let algebra = FiniteBooleanAlgebra::new(lattice)?;
    Ok(ComplementedSubobjects {
        reps: chosen.iter().map(|&i| lat.reps[i].clone()).collect(),
        algebra,
    })
}

/// Identity, dom/cod and associativity findings over the whole window.
pub fn axiom_findings<C: Category>(c: &C) -> Vec<Finding> {
    let mut out = Vec::new();
    let mors = match all_morphisms(c) {
        Ok(m) => m,
        Err(e) => return vec![Finding::fail("enumeration", e.to_string())],
    };
    let mut by_dom: BTreeMap<C::Ob, Vec<usize>> = BTreeMap::new();
    for (i, f) in mors.iter().enumerate() {
        by_dom.entry(c.dom(f)).or_default().push(i);
    }
    let mut identity_bad = 0usize;
    for f in &mors {
        let (a, b) = (c.dom(f), c.cod(f));
        let left = c.try_compose(f, &c.identity(&a));
        let right = c.try_compose(&c.identity(&b), f);
        if left.as_ref() != Some(f) || right.as_ref() != Some(f) {
            identity_bad += 1;
            out.push(
                Finding::fail("identity", format!("identity law fails at {}", c.mor_label(f)))
                    .with_witness([c.mor_label(f)]),
            );
        }
    }
    if identity_bad == 0 {
        out.push(Finding::pass("identity", format!("{} morphisms", mors.len())));
    }
    let mut triples = 0usize;
    let mut assoc_bad = 0usize;
    let empty = Vec::new();
    for f in &mors {
        for &gi in by_dom.get(&c.cod(f)).unwrap_or(&empty) {
            let g = &mors[gi];
            let gf = match c.try_compose(g, f) {
                Some(x) => x,
                None => {
                    out.push(Finding::fail(
                        "totality",
                        format!("{} ∘ {} undefined", c.mor_label(g), c.mor_label(f)),
                    ));
                    continue;
                }
            };
            if c.dom(&gf) != c.dom(f) || c.cod(&gf) != c.cod(g) {
                out.push(Finding::fail(
                    "dom-cod",
                    format!("{} ∘ {} has wrong endpoints", c.mor_label(g), c.mor_label(f)),
                ));
            }
            for &hi in by_dom.get(&c.cod(g)).unwrap_or(&empty) {
                let h = &mors[hi];
                triples += 1;
                let lhs = c.try_compose(h, &gf);
                let rhs = c.try_compose(h, g).and_then(|hg| c.try_compose(&hg, f));
                if lhs.is_none() || lhs != rhs {
                    assoc_bad += 1;
                    out.push(
                        Finding::fail(
                            "associativity",
                            format!(
                                "({} ∘ {}) ∘ {} differs from {} ∘ ({} ∘ {})",
                                c.mor_label(h),
                                c.mor_label(g),
                                c.mor_label(f),
                                c.mor_label(h),
                                c.mor_label(g),
                                c.mor_label(f)
                            ),
                        )
                        .with_witness([c.mor_label(h), c.mor_label(g), c.mor_label(f)]),
                    );
                }
            }
        }
    }
    if assoc_bad == 0 {
        out.push(Finding::pass("associativity", format!("{triples} composable triples")));
    }
    out
}

/// Exhaustive category-axiom check over the window.
pub fn check_category_axioms<C: Category>(c: &C) -> Report {
    let mut r = Report::new("check category");
    r.note("window-complete", c.enumeration_complete());
    r.extend(axiom_findings(c));
    r
}

/// Random associativity and identity probe on `samples` composable triples.
pub fn probe_category_axioms<C: Category, R: Rng>(c: &C, samples: usize, rng: &mut R) -> Result<Report> {
    let mut r = Report::new("check category");
    r.note("mode", "random-probe");
    r.note("samples", samples);
    let obs = c.objects()?;
    let mut done = 0usize;
    let mut attempts = 0usize;
    let mut bad = 0usize;
    while done < samples {
        attempts += 1;
        if attempts > samples * 100 {
            return Err(CatError::Invalid("could not sample composable triples".into()));
        }
        let pick = |rng: &mut R| obs[rng.gen_range(0..obs.len())].clone();
        let (a, b, x, y) = (pick(rng), pick(rng), pick(rng), pick(rng));
        let (fs, gs, hs) = (c.hom(&a, &b)?, c.hom(&b, &x)?, c.hom(&x, &y)?);
        if fs.is_empty() || gs.is_empty() || hs.is_empty() {
            continue;
        }
        let f = &fs[rng.gen_range(0..fs.len())];
        let g = &gs[rng.gen_range(0..gs.len())];
        let h = &hs[rng.gen_range(0..hs.len())];
        done += 1;
        let lhs = c.compose(h, &c.compose(g, f));
        let rhs = c.compose(&c.compose(h, g), f);
        let ids = c.compose(f, &c.identity(&a)) == *f && c.compose(&c.identity(&b), f) == *f;
        if lhs != rhs || !ids {
            bad += 1;
            r.push(
                Finding::fail("associativity", "random triple violates the axioms")
                    .with_witness([c.mor_label(h), c.mor_label(g), c.mor_label(f)]),
            );
        }
    }
    if bad == 0 {
        r.push(Finding::pass("associativity", format!("{done} random triples")));
    }
    Ok(r)
}

/// Lex part: terminal object, binary products, pullbacks, equalizers.
fn lex_findings<C: Category>(c: &C) -> Result<Vec<Finding>> {
    let mut out = Vec::new();
    let obs = c.objects()?;
    match c.terminal() {
        Ok(t) => out.push(Finding::pass("terminal", c.ob_label(&t))),
        Err(_) => out.push(Finding::fail("terminal", "no terminal object")),
    }
    let mut missing = Vec::new();
    for a in &obs {
        for b in &obs {
            if c.product(a, b).is_err() {
                missing.push((c.ob_label(a), c.ob_label(b)));
            }
        }
    }
    match missing.first() {
        None => out.push(Finding::pass("products", format!("{} pairs", obs.len() * obs.len()))),
        Some((a, b)) => out.push(
            Finding::fail("products", format!("{} pairs lack a product", missing.len()))
                .with_witness([a.clone(), b.clone()]),
        ),
    }
    let mors = all_morphisms(c)?;
    let mut by_cod: BTreeMap<C::Ob, Vec<&C::Mor>> = BTreeMap::new();
    for f in &mors {
        by_cod.entry(c.cod(f)).or_default().push(f);
    }
    let mut count = 0usize;
    let mut bad: Option<(String, String)> = None;
    for fs in by_cod.values() {
        for f in fs {
            for g in fs {
                count += 1;
                if bad.is_none() && c.pullback(f, g).is_err() {
                    bad = Some((c.mor_label(f), c.mor_label(g)));
                }
            }
        }
    }
    match bad {
        None => out.push(Finding::pass("pullbacks", format!("{count} cospans"))),
        Some((f, g)) => out.push(Finding::fail("pullbacks", "a cospan has no pullback").with_witness([f, g])),
    }
    let mut bad: Option<(String, String)> = None;
    let mut pairs = 0usize;
    if !c.is_thin() {
        for a in &obs {
            for b in &obs {
                let hs = c.hom(a, b)?;
                for f in &hs {
                    for g in &hs {
                        pairs += 1;
                        if bad.is_none() && c.equalizer(f, g).is_err() {
                            bad = Some((c.mor_label(f), c.mor_label(g)));
                        }
                    }
                }
            }
        }
    }
    match bad {
        None => out.push(Finding::pass("equalizers", format!("{pairs} parallel pairs"))),
        Some((f, g)) => out.push(Finding::fail("equalizers", "a parallel pair has no equalizer").with_witness([f, g])),
    }
    Ok(out)
}

/// Regular part: factorizations exist and images are stable under pullback.
fn regular_findings<C: Category>(c: &C) -> Result<Vec<Finding>> {
    if c.is_thin() {
        return Ok(vec![Finding::pass(
            "factorizations",
            "thin: effective epis are isomorphisms, f = f ∘ id is stable",
        )]);
    }
    let mors = all_morphisms(c)?;
    let obs = c.objects()?;
    let mut checked = 0usize;
    for f in &mors {
        let fac = match factorize(c, f) {
            Ok(fac) => fac,
            Err(e) => {
                return Ok(vec![Finding::fail("factorizations", e.to_string()).with_witness([c.mor_label(f)])]);
            }
        };
        let b = c.cod(f);
        for y in &obs {
            for g in c.hom(y, &b)? {
                checked += 1;
                let pf = c.pullback(&g, f)?;
                let image_of_pullback = factorize(c, &pf.left)?.mono;
                let pulled_image = pull_subobject(c, &g, &fac.mono)?;
                if !(factors_through(c, &image_of_pullback, &pulled_image)?
                    && factors_through(c, &pulled_image, &image_of_pullback)?)
                {
                    return Ok(vec![Finding::fail(
                        "factorizations",
                        "image is not stable under pullback",
                    )
                    .with_witness([c.mor_label(f), c.mor_label(&g)])]);
                }
                if is_effective_epi(c, f)? && !is_effective_epi(c, &pf.left)? {
                    return Ok(vec![Finding::fail(
                        "factorizations",
                        "effective epi is not stable under pullback",
                    )
                    .with_witness([c.mor_label(f), c.mor_label(&g)])]);
                }
            }
        }
    }
    Ok(vec![Finding::pass(
        "factorizations",
        format!("{} morphisms, {checked} base changes", mors.len()),
    )])
}

/// Coherent part: finite unions exist in every `Sub(x)` and pulling back
/// along any `g: y -> x` preserves them.
fn union_findings<C: Category>(c: &C) -> Result<Vec<Finding>> {
    let obs = c.objects()?;
    let mut lats: BTreeMap<C::Ob, SubobjectLattice<C::Ob, C::Mor>> = BTreeMap::new();
    for x in &obs {
        lats.insert(x.clone(), subobjects(c, x)?);
    }
    let mut base_changes = 0usize;
    for x in &obs {
        let lx = &lats[x];
        let Some(bot) = lx.bottom else {
            return Ok(vec![Finding::fail("unions", format!("Sub({}) has no least element", c.ob_label(x)))
                .with_witness([c.ob_label(x)])]);
        };
        let n = lx.len();
        let mut joins = vec![vec![0usize; n]; n];
        for u in 0..n {
            for v in 0..n {
                joins[u][v] = match union(c, lx, u, v) {
                    Ok(j) => j,
                    Err(_) => {
                        return Ok(vec![Finding::fail("unions", "a pair of subobjects has no union")
                            .with_witness([c.mor_label(&lx.reps[u]), c.mor_label(&lx.reps[v])])]);
                    }
                };
            }
        }
        for y in &obs {
            let ly = &lats[y];
            for g in c.hom(y, x)? {
                base_changes += 1;
                let mut pulled = Vec::with_capacity(n);
                for u in 0..n {
                    let m = pull_subobject(c, &g, &lx.reps[u])?;
                    pulled.push(class_of(c, ly, &m)?.ok_or_else(|| {
                        CatError::Invalid("pulled-back subobject outside the window".into())
                    })?);
                }
                if Some(pulled[bot]) != ly.bottom {
                    return Ok(vec![Finding::fail("unions", "empty union is not stable")
                        .with_witness([c.mor_label(&g)])]);
                }
                for u in 0..n {
                    for v in u + 1..n {
                        let lhs = pulled[joins[u][v]];
                        let rhs = union(c, ly, pulled[u], pulled[v])?;
                        if lhs != rhs {
                            return Ok(vec![Finding::fail(
                                "unions",
                                format!(
                                    "pulling back {} ∨ {} along {} differs from the union of the pullbacks",
                                    c.mor_label(&lx.reps[u]),
                                    c.mor_label(&lx.reps[v]),
                                    c.mor_label(&g)
                                ),
                            )
                            .with_witness([
                                c.mor_label(&lx.reps[u]),
                                c.mor_label(&lx.reps[v]),
                                c.mor_label(&g),
                            ])]);
                        }
                    }
                }
            }
        }
    }
    Ok(vec![Finding::pass(
        "unions",
        format!("{} objects, {base_changes} base changes", obs.len()),
    )])
}

/// Lex, regular and coherent structure by bounded exhaustive enumeration.
pub fn check_coherent<C: Category>(c: &C) -> Result<Report> {
    let mut r = Report::new("check coherent");
    r.note("objects", c.objects()?.len());
    r.note("window-complete", c.enumeration_complete());
    let lex = lex_findings(c)?;
    let lex_ok = lex.iter().all(|f| f.verdict == crate::report::Verdict::Pass);
    r.extend(lex);
    if !lex_ok {
        return Ok(r);
    }
    r.extend(regular_findings(c)?);
    r.extend(union_findings(c)?);
    Ok(r)
}

/// Finite limits over the window, plus which finite colimits exist.
pub fn check_limits<C: Category>(c: &C) -> Result<Report> {
    let mut r = Report::new("limits");
    let obs = c.objects()?;
    r.note("objects", obs.len());
    let label = |o: Result<C::Ob>| o.map(|x| c.ob_label(&x)).unwrap_or_else(|_| "none".into());
    r.note("terminal", label(c.terminal()));
    r.note("initial", label(c.initial()));
    let mut coproducts = 0usize;
    for a in &obs {
        for b in &obs {
            if c.coproduct(a, b).is_ok() {
                coproducts += 1;
            }
        }
    }
    r.note("binary-coproducts", format!("{coproducts}/{}", obs.len() * obs.len()));
    r.extend(lex_findings(c)?);
    Ok(r)
}

/// Lex and regular structure only.
pub fn check_regular<C: Category>(c: &C) -> Result<Report> {
    let mut r = Report::new("check regular");
    r.note("objects", c.objects()?.len());
    let lex = lex_findings(c)?;
    let lex_ok = lex.iter().all(|f| f.verdict == crate::report::Verdict::Pass);
    r.extend(lex);
    if lex_ok {
        r.extend(regular_findings(c)?);
    }
    Ok(r)
}

/// Disjoint, stable binary coproducts.
///
/// In a thin category a join `u ∨ v` is a coproduct whose injections meet
/// at `u ∧ v`; the check there is that every `x ≤ y` is a summand of a
/// disjoint join, i.e. has a relative complement in `[0, y]`. Non-thin
/// categories get the direct test: injections pull back to an initial
/// object and coproducts are stable under pullback.
pub fn check_disjoint_coproducts<C: Category>(c: &C) -> Result<Report> {
    let mut r = Report::new("check disjoint");
    let obs = c.objects()?;
    r.note("objects", obs.len());
    let init = match c.initial() {
        Ok(i) => i,
        Err(_) => {
            r.push(Finding::fail("initial", "no initial object"));
            return Ok(r);
        }
    };
    r.push(Finding::pass("initial", c.ob_label(&init)));
    if c.is_thin() {
        for y in &obs {
            for x in &obs {
                if c.hom(x, y)?.is_empty() {
                    continue;
                }
                let mut found = false;
                for w in &obs {
                    if c.hom(w, y)?.is_empty() {
                        continue;
                    }
                    let meet = c.product(x, w);
                    let join = c.coproduct(x, w);
                    if let (Ok(m), Ok(j)) = (meet, join) {
                        if c.dom(&m.left) == init && c.cod(&j.left) == *y {
                            found = true;
                            break;
                        }
                    }
                }
                if !found {
                    r.push(
                        Finding::fail(
                            "disjoint",
                            format!(
                                "{} ≤ {} is not a summand of a disjoint join",
                                c.ob_label(x),
                                c.ob_label(y)
                            ),
                        )
                        .with_witness([c.ob_label(x), c.ob_label(y)]),
                    );
                    return Ok(r);
                }
            }
        }
        r.push(Finding::pass("disjoint", "every x ≤ y has a relative complement"));
        return Ok(r);
    }
    let is_initial = |o: &C::Ob| -> Result<bool> {
        for z in &obs {
            if c.hom(o, z)?.len() != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut pairs = 0usize;
    for a in &obs {
        for b in &obs {
            pairs += 1;
            let inj = match c.coproduct(a, b) {
                Ok(i) => i,
                Err(_) => {
                    r.push(Finding::fail("coproducts", "missing coproduct").with_witness([c.ob_label(a), c.ob_label(b)]));
                    return Ok(r);
                }
            };
            let meet = c.pullback(&inj.left, &inj.right)?;
            if !is_initial(&c.dom(&meet.left))? {
                r.push(
                    Finding::fail("disjoint", "coproduct injections intersect")
                        .with_witness([c.ob_label(a), c.ob_label(b)]),
                );
                return Ok(r);
            }
            let sum = c.cod(&inj.left);
            for z in &obs {
                for g in c.hom(z, &sum)? {
                    let pa = c.pullback(&g, &inj.left)?;
                    let pb = c.pullback(&g, &inj.right)?;
                    let (za, zb) = (c.dom(&pa.left), c.dom(&pb.left));
                    let inj2 = c.coproduct(&za, &zb)?;
                    let cmp = copair(c, &inj2, &pa.left, &pb.left)?;
                    if !is_iso(c, &cmp)? {
                        r.push(
                            Finding::fail("stable", "coproduct is not stable under pullback")
                                .with_witness([c.ob_label(a), c.ob_label(b), c.mor_label(&g)]),
                        );
                        return Ok(r);
                    }
                }
            }
        }
    }
    r.push(Finding::pass("disjoint", format!("{pairs} pairs, injections disjoint and stable")));
    Ok(r)
}
