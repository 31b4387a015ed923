use std::collections::BTreeSet;

use cohcat::category::{functor_violations, inverse, Category, Functor};
use cohcat::derived::Slice;
use cohcat::diagram::{
    diagram_functorial, eta_check, extend_model, gamma_global_sections, DiagramCategory, HomEq, Phi,
    DEFAULT_DEPTH,
};
use cohcat::finset::SkelFinSet;
use cohcat::fixtures::{b4, finset_representable, up, up_named};
use cohcat::functor::{identity_transform, IdentityFinSet, NatTransform, Representable, SetFunctor};
use cohcat::lattice::distributive_fixtures;
use cohcat::limits::{check_category_axioms, is_effective_epi};
use cohcat::slice_yoneda::extension_from_element;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn b4_diag(g: &str) -> DiagramCategory<cohcat::functor::Filter<cohcat::poset::Poset>> {
    let b = b4();
    DiagramCategory::build(up_named(b.poset(), g).unwrap(), DEFAULT_DEPTH).unwrap()
}

#[test]
fn b4_up_a_is_equivalent_to_down_a() {
    let d = b4_diag("a");
    let core = d.core();
    let objs = core.objects().unwrap();
    let doms: BTreeSet<usize> = objs.iter().map(|o| d.base().dom(&o.u)).collect();
    let b = b4();
    let p = b.poset();
    assert_eq!(doms, [p.index("0").unwrap(), p.index("a").unwrap()].into());
    for x in &objs {
        for y in &objs {
            let expect = usize::from(p.leq(d.base().dom(&x.u), d.base().dom(&y.u)));
            assert_eq!(core.hom(x, y).unwrap().len(), expect);
        }
    }
    assert!(check_category_axioms(&core).is_pass());
    // every object of C_F is isomorphic to a core object
    for x in d.objects().unwrap() {
        let iso = objs.iter().any(|y| {
            d.hom(&x, y)
                .unwrap()
                .iter()
                .any(|m| inverse(&d, m).unwrap().is_some())
        });
        assert!(iso, "{}", d.obj_label(&x));
    }
}

#[test]
fn representable_at_terminal_gives_base() {
    let b = b4();
    let p = b.poset().clone();
    let top = p.top().unwrap();
    let d = DiagramCategory::build(Representable::new(p.clone(), top), DEFAULT_DEPTH).unwrap();
    let core = d.core();
    let objs = core.objects().unwrap();
    assert_eq!(objs.len(), p.len());
    for x in &objs {
        for y in &objs {
            let (a, b) = (p.dom(&x.u), p.dom(&y.u));
            assert_eq!(core.hom(x, y).unwrap().len(), p.hom(&a, &b).unwrap().len());
        }
    }
}

#[test]
fn finset_representable_gives_slice_over_two() {
    let f = finset_representable(3, 2).unwrap();
    let d = DiagramCategory::build(f, DEFAULT_DEPTH).unwrap();
    let slice = Slice::new(SkelFinSet::new(3).unwrap(), 2).unwrap();
    let core = d.core();
    let objs = core.objects().unwrap();
    assert_eq!(objs.len(), slice.objects().unwrap().len());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let x = objs.choose(&mut rng).unwrap();
        let y = objs.choose(&mut rng).unwrap();
        assert_eq!(
            core.hom(x, y).unwrap().len(),
            slice.hom(&x.u, &y.u).unwrap().len()
        );
    }
}

#[test]
fn global_elements_compare_by_evaluation() {
    let f = finset_representable(3, 2).unwrap();
    let d = DiagramCategory::build(f, DEFAULT_DEPTH).unwrap();
    for y in 0..=3usize {
        let ges = d.global_elements(&y, usize::MAX).unwrap();
        let values: Vec<_> = ges.iter().map(|g| d.evaluate_global(g).unwrap()).collect();
        let classes: BTreeSet<_> = values.iter().cloned().collect();
        assert_eq!(classes.len(), d.functor.elements(&y).unwrap().len());
        let step = (ges.len() / 25).max(1);
        for i in (0..ges.len()).step_by(step) {
            for j in (0..ges.len()).step_by(step) {
                let got = d.hom_equal(&ges[i], &ges[j], DEFAULT_DEPTH);
                if values[i] == values[j] {
                    assert!(matches!(got, HomEq::Equal(_)), "{got:?}");
                } else {
                    assert_eq!(got, HomEq::Distinct);
                }
            }
        }
    }
}

#[test]
fn pullback_to_initial_index_is_equal_at_depth_one() {
    let d = b4_diag("a");
    for x in d.objects().unwrap() {
        let id = d.identity_rep(&x).unwrap();
        assert_eq!(d.hom_equal(&id, &id, 0), HomEq::Equal(0));
        let n = d.normalize(&id).unwrap();
        if n != id {
            assert_eq!(d.hom_equal(&id, &n, DEFAULT_DEPTH), HomEq::Equal(1));
        }
    }
}

#[test]
fn composition_laws_on_b4() {
    let d = b4_diag("a");
    let objs = d.objects().unwrap();
    for x in &objs {
        for y in &objs {
            for m in d.hom(x, y).unwrap() {
                let l = d.compose_reps(&d.identity_rep(y).unwrap(), &m).unwrap();
                let r = d.compose_reps(&m, &d.identity_rep(x).unwrap()).unwrap();
                assert!(matches!(d.hom_equal(&l, &m, DEFAULT_DEPTH), HomEq::Equal(_)));
                assert!(matches!(d.hom_equal(&r, &m, DEFAULT_DEPTH), HomEq::Equal(_)));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut triples = 0;
    while triples < 30 {
        let path: Vec<_> = (0..4).map(|_| objs.choose(&mut rng).unwrap().clone()).collect();
        let hs: Vec<_> = (0..3).map(|i| d.hom(&path[i], &path[i + 1]).unwrap()).collect();
        if hs.iter().any(|h| h.is_empty()) {
            continue;
        }
        triples += 1;
        let (f, g, h) = (&hs[0][0], &hs[1][0], &hs[2][0]);
        let left = d.compose_reps(h, &d.compose_reps(g, f).unwrap()).unwrap();
        let right = d.compose_reps(&d.compose_reps(h, g).unwrap(), f).unwrap();
        assert!(matches!(d.hom_equal(&left, &right, DEFAULT_DEPTH), HomEq::Equal(_)));
    }
}

#[test]
fn finset_composites_match_direct_computation() {
    let f = finset_representable(3, 2).unwrap();
    let d = DiagramCategory::build(f, DEFAULT_DEPTH).unwrap();
    let c = SkelFinSet::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let r = rng.gen_range(1..=3usize);
        let y = rng.gen_range(1..=3usize);
        let z = rng.gen_range(0..=3usize);
        let g = c.hom(&r, &y).unwrap().choose(&mut rng).unwrap().clone();
        let cands = c.hom(&y, &z).unwrap();
        let Some(h) = cands.choose(&mut rng) else { continue };
        let marker = c.hom(&2, &r).unwrap().choose(&mut rng).unwrap().clone();
        let ge = d.global_element(&g, &marker).unwrap();
        let comp = d.compose_reps(&d.phi_mor(h).unwrap(), &ge).unwrap();
        let direct = c.compose(h, &c.compose(&g, &marker));
        assert_eq!(d.evaluate_global(&comp).unwrap(), direct);
        let nf = d.normalize(&comp).unwrap();
        let expect = d.normalize(&d.global_element(&c.compose(h, &g), &marker).unwrap()).unwrap();
        assert_eq!(nf, expect);
    }
}

#[test]
fn composition_is_independent_of_chasing_cone() {
    let f = finset_representable(3, 2).unwrap();
    let d = DiagramCategory::build(f, DEFAULT_DEPTH).unwrap();
    let c = SkelFinSet::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut done = 0;
    while done < 25 {
        let r = rng.gen_range(1..=3usize);
        let y = rng.gen_range(1..=3usize);
        let g = c.hom(&r, &y).unwrap().choose(&mut rng).unwrap().clone();
        let marker = c.hom(&2, &r).unwrap().choose(&mut rng).unwrap().clone();
        let m1 = d.global_element(&g, &marker).unwrap();
        let h = c.hom(&y, &2).unwrap().choose(&mut rng).unwrap().clone();
        let m2 = d.phi_mor(&h).unwrap();
        let q = c.pullback(&m1.h2, &m2.h1).unwrap();
        let apex = c.dom(&q.left);
        let d0 = d
            .functor
            .elements(&apex)
            .unwrap()
            .into_iter()
            .find(|e| c.compose(&q.left, e) == m1.c)
            .unwrap();
        // a random index over the chasing cone
        let s = rng.gen_range(2..=3usize);
        let mut options = Vec::new();
        for t in c.hom(&s, &apex).unwrap() {
            for e in c.hom(&2, &s).unwrap() {
                if c.compose(&t, &e) == d0 {
                    options.push((t.clone(), e));
                }
            }
        }
        let Some((t, e)) = options.choose(&mut rng) else { continue };
        done += 1;
        let a = d.compose_via(&m2, &m1, None).unwrap();
        let b = d.compose_via(&m2, &m1, Some((t, e))).unwrap();
        assert!(matches!(d.hom_equal(&a, &b, DEFAULT_DEPTH), HomEq::Equal(_)));
    }
}

#[test]
fn gamma_recovers_filter_on_b4() {
    let d = b4_diag("a");
    let gamma = gamma_global_sections(&d);
    for y in d.base().objects().unwrap() {
        assert_eq!(
            gamma.elements(&y).unwrap().len(),
            d.functor.elements(&y).unwrap().len()
        );
    }
    let r = eta_check(&d, 10_000).unwrap();
    assert!(r.is_pass(), "{:?}", r.findings);
    assert_eq!(r.get_note("unknown"), Some("0"));
}

#[test]
fn gamma_of_global_representable() {
    let b = b4();
    let p = b.poset().clone();
    let top = p.top().unwrap();
    let d = DiagramCategory::build(Representable::new(p.clone(), top), DEFAULT_DEPTH).unwrap();
    let gamma = gamma_global_sections(&d);
    for y in p.objects().unwrap() {
        assert_eq!(gamma.elements(&y).unwrap().len(), p.hom(&top, &y).unwrap().len());
    }
    assert!(eta_check(&d, 10_000).unwrap().is_pass());
}

#[test]
fn gamma_of_finset_representable_at_three_has_nine_elements() {
    let f = finset_representable(4, 2).unwrap();
    let d = DiagramCategory::build(f, DEFAULT_DEPTH).unwrap();
    assert_eq!(gamma_global_sections(&d).elements(&3).unwrap().len(), 9);
    let r = eta_check(&d, 300).unwrap();
    assert!(r.is_pass(), "{:?}", r.findings);
}

#[test]
fn phi_is_a_functor() {
    let d = b4_diag("a");
    assert!(functor_violations(&Phi { diag: &d }).unwrap().is_empty());
}

#[test]
fn identity_transformation_gives_identity_functor() {
    let d = b4_diag("a");
    let ca = diagram_functorial(&d, &d, identity_transform(d.functor.clone()));
    for x in d.objects().unwrap() {
        assert_eq!(ca.on_ob(&x), x);
        for y in d.objects().unwrap() {
            for m in d.hom(&x, &y).unwrap() {
                assert_eq!(ca.on_mor(&m), m);
            }
        }
    }
}

#[test]
fn filter_inclusion_induces_functor_preserving_gamma() {
    let b = b4();
    let p = b.poset().clone();
    let d1 = DiagramCategory::build(up_named(&p, "1").unwrap(), DEFAULT_DEPTH).unwrap();
    let da = DiagramCategory::build(up_named(&p, "a").unwrap(), DEFAULT_DEPTH).unwrap();
    let d0 = DiagramCategory::build(up_named(&p, "0").unwrap(), DEFAULT_DEPTH).unwrap();
    let unit = |_: &usize, _: &()| ();
    let alpha = NatTransform::new(d1.functor.clone(), da.functor.clone(), unit);
    let beta = NatTransform::new(da.functor.clone(), d0.functor.clone(), unit);
    let gamma = NatTransform::new(d1.functor.clone(), d0.functor.clone(), unit);
    let ca = diagram_functorial(&d1, &da, alpha);
    assert!(functor_violations(&ca).unwrap().is_empty());
    assert!(ca.gamma_findings().unwrap().iter().all(|f| f.verdict == cohcat::Verdict::Pass));
    let cb = diagram_functorial(&da, &d0, beta);
    let cg = diagram_functorial(&d1, &d0, gamma);
    for x in d1.objects().unwrap() {
        assert_eq!(cb.on_ob(&ca.on_ob(&x)), cg.on_ob(&x));
        for y in d1.objects().unwrap() {
            for m in d1.hom(&x, &y).unwrap() {
                let two = cb.on_mor(&ca.on_mor(&m));
                assert!(matches!(d0.hom_equal(&two, &cg.on_mor(&m), DEFAULT_DEPTH), HomEq::Equal(_)));
            }
        }
    }
}

#[test]
fn extension_along_global_representable_is_transport() {
    let b = b4();
    let p = b.poset().clone();
    let top = p.top().unwrap();
    let f = Representable::new(p.clone(), top);
    let d = DiagramCategory::build(f.clone(), DEFAULT_DEPTH).unwrap();
    let m = up_named(&p, "a").unwrap();
    let sigma = NatTransform::new(f, m.clone(), |_: &usize, _: &(usize, usize)| ());
    let ext = extend_model(&d, sigma).unwrap();
    assert!(ext.certify().unwrap().is_pass());
    for o in d.core_objects().unwrap() {
        let w = p.dom(&o.u);
        assert_eq!(ext.elements(&o).unwrap().len(), m.elements(&w).unwrap().len());
    }
}

#[test]
fn extension_of_improper_filter_on_b4() {
    let d = b4_diag("a");
    let p = d.base().clone();
    let improper = up_named(&p, "0").unwrap();
    let sigma = NatTransform::new(d.functor.clone(), improper, |_: &usize, _: &()| ());
    let ext = extend_model(&d, sigma).unwrap();
    assert!(ext.certify().unwrap().is_pass());
    for o in d.core_objects().unwrap() {
        assert_eq!(ext.elements(&o).unwrap().len(), 1);
    }
}

#[test]
fn extension_of_identity_at_a_point_is_the_fiber_extension() {
    let f = finset_representable(3, 2).unwrap();
    let c = SkelFinSet::new(3).unwrap();
    let d = DiagramCategory::build(f.clone(), DEFAULT_DEPTH).unwrap();
    for a in 0..2usize {
        let sigma = NatTransform::new(f.clone(), IdentityFinSet::new(c.clone()), move |_: &usize, h: &cohcat::finset::FinFn| h.apply(a));
        let ext = extend_model(&d, sigma).unwrap();
        assert!(ext.certify().unwrap().is_pass());
        let fa = extension_from_element(IdentityFinSet::new(c.clone()), 2, a).unwrap();
        for o in d.core_objects().unwrap() {
            assert_eq!(ext.elements(&o).unwrap(), fa.elements(&o.u).unwrap());
        }
    }
}

#[test]
fn non_natural_sigma_is_rejected() {
    let b = b4();
    let p = b.poset().clone();
    let f = Representable::new(p.clone(), p.index("a").unwrap());
    let d = DiagramCategory::build(f.clone(), DEFAULT_DEPTH).unwrap();
    let id = IdentityLike(f.clone());
    assert!(matches!(
        extend_model(&d, id),
        Err(cohcat::CatError::NotNatural(_))
    ));
}

struct IdentityLike(Representable<cohcat::poset::Poset>);

impl cohcat::functor::Transformation for IdentityLike {
    type Src = Representable<cohcat::poset::Poset>;
    type Tgt = Representable<cohcat::poset::Poset>;
    fn source(&self) -> &Self::Src {
        &self.0
    }
    fn target(&self) -> &Self::Tgt {
        &self.0
    }
    fn component(&self, x: &usize, a: &(usize, usize)) -> (usize, usize) {
        // sends everything to the identity of its codomain, which lies
        // outside C(a, x) unless x = a
        (*x, a.1)
    }
}

#[test]
fn non_lex_functor_is_rejected() {
    let b = b4();
    let p = b.poset().clone();
    let members = (0..p.len()).map(|x| p.name(x) != "0" && p.name(x) != "1").collect();
    let f = cohcat::functor::Filter::new(p, members).unwrap();
    assert!(matches!(
        DiagramCategory::build(f, DEFAULT_DEPTH),
        Err(cohcat::CatError::NotLex(_))
    ));
}

#[test]
fn effective_epis_onto_terminal_split_on_lattices() {
    for l in distributive_fixtures().unwrap().iter().filter(|l| l.len() <= 8) {
        let p = l.poset();
        for g in 0..p.len() {
            let d = DiagramCategory::build(up(p, g), DEFAULT_DEPTH).unwrap();
            let core = d.core();
            let one = core
                .objects()
                .unwrap()
                .into_iter()
                .find(|o| p.dom(&o.u) == g)
                .unwrap();
            for x in core.objects().unwrap() {
                for e in core.hom(&x, &one).unwrap() {
                    if is_effective_epi(&core, &e).unwrap() {
                        let split = core
                            .hom(&one, &x)
                            .unwrap()
                            .iter()
                            .any(|s| core.compose(&e, s) == core.identity(&one));
                        assert!(split);
                    }
                }
            }
        }
    }
}
