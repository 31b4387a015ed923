use std::collections::BTreeSet;

use cohcat::category::{Category, IdentityFunctor};
use cohcat::elementary::{
    completeness_check, completeness_sweep, components_monic_check, decompose_experiment, decompose_regular,
    elementary_failures, is_elementary, is_strongly_conservative, square_is_pullback, unit_elementary_check,
    Adjunction, Route,
};
use cohcat::finset::{FinFn, SkelFinSet};
use cohcat::fixtures::{b4, b8, c3, diamond, up, up_named};
use cohcat::functor::{identity_transform, Filter, NatTransform, ProductFunctor, Representable, SetFunctor};
use cohcat::lattice::{boolean_fixtures, chain, distributive_fixtures, FiniteLattice};
use cohcat::poset::{MonotoneMap, Poset};
use cohcat::sheaf::model_from_regular;
use cohcat::CatError;
use proptest::prelude::*;

fn members<F: SetFunctor<Cat = Poset>>(f: &F) -> BTreeSet<usize> {
    (0..f.source().len()).filter(|x| !f.elements(x).unwrap().is_empty()).collect()
}

fn filter_of(p: &Poset, flags: Vec<bool>) -> Filter<Poset> {
    Filter::new(p.clone(), flags).unwrap()
}

fn two() -> Poset {
    chain(&["0", "1"]).unwrap().poset().clone()
}

fn opt(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

#[test]
fn identity_is_elementary() {
    let b = b4();
    for g in ["0", "a", "1"] {
        let f = up_named(b.poset(), g).unwrap();
        assert!(is_elementary(&identity_transform(f)).unwrap().is_pass());
    }
}

#[test]
fn filter_into_product_of_atom_parts_is_elementary() {
    let b = b8();
    let p = b.poset().clone();
    let f = up_named(&p, "{p,q}").unwrap();
    let prod = ProductFunctor::new(p.clone(), vec![up_named(&p, "{p}").unwrap(), up_named(&p, "{q}").unwrap()]);
    let alpha = NatTransform::new(f, prod, |_: &usize, _: &()| vec![(), ()]);
    assert!(is_elementary(&alpha).unwrap().is_pass());
}

#[test]
fn filter_into_one_part_is_not_elementary() {
    let b = b8();
    let p = b.poset().clone();
    let alpha = NatTransform::new(up_named(&p, "{p,q}").unwrap(), up_named(&p, "{p}").unwrap(), |_: &usize, _: &()| ());
    let v = is_elementary(&alpha).unwrap();
    let w = v.witness.clone().expect("a counterexample");
    assert!(!square_is_pullback(&alpha, &w).unwrap());
    let named = p.arrow(p.index("{p}").unwrap(), p.index("{p,q,r}").unwrap()).unwrap();
    assert!(elementary_failures(&alpha).unwrap().contains(&named));
    assert!(!square_is_pullback(&alpha, &named).unwrap());
}

#[test]
fn elementary_iff_filter_is_the_intersection() {
    for b in boolean_fixtures(3).unwrap() {
        let l = b.lattice();
        let p = l.poset().clone();
        let filters = l.filters();
        for f in &filters {
            let sub: Vec<&Vec<bool>> = filters.iter().filter(|g| (0..p.len()).all(|x| !f[x] || g[x])).collect();
            for (i, g) in sub.iter().enumerate() {
                for h in &sub[i..] {
                    let meet: Vec<bool> = (0..p.len()).map(|x| g[x] && h[x]).collect();
                    let alpha = NatTransform::new(
                        filter_of(&p, f.clone()),
                        ProductFunctor::new(p.clone(), vec![filter_of(&p, (*g).clone()), filter_of(&p, (*h).clone())]),
                        |_: &usize, _: &()| vec![(), ()],
                    );
                    assert_eq!(is_elementary(&alpha).unwrap().is_pass(), &meet == f);
                }
            }
        }
    }
}

#[test]
fn monic_check_is_vacuous_when_not_elementary() {
    let b = b4();
    let p = b.poset().clone();
    let alpha = NatTransform::new(up_named(&p, "1").unwrap(), up_named(&p, "a").unwrap(), |_: &usize, _: &()| ());
    let r = components_monic_check(&alpha).unwrap();
    assert!(r.is_pass());
    assert_eq!(r.get_note("vacuous"), Some("true"));
}

fn precompose(c: &SkelFinSet, s: FinFn) -> impl Fn(&usize, &FinFn) -> FinFn + '_ {
    move |_: &usize, h: &FinFn| c.compose(h, &s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn elementary_transformations_are_monic(j in 1usize..=3, k in 1usize..=3, seed in proptest::collection::vec(0usize..3, 3)) {
        let c = SkelFinSet::new(3).unwrap();
        let s = FinFn::new(k, (0..j).map(|i| seed[i] % k).collect()).unwrap();
        let alpha = NatTransform::new(
            Representable::new(c.clone(), k),
            Representable::new(c.clone(), j),
            precompose(&c, s),
        );
        let elementary = is_elementary(&alpha).unwrap().is_pass();
        let r = components_monic_check(&alpha).unwrap();
        prop_assert!(r.is_pass());
        prop_assert_eq!(r.get_note("elementary"), Some(opt(elementary)));
    }
}

#[test]
fn conservativity_examples() {
    let b = b4();
    let p = b.poset().clone();
    assert!(is_strongly_conservative(&MonotoneMap::identity(p.clone())).unwrap().is_pass());
    let eval = MonotoneMap::from_names(p.clone(), two(), &[("0", "0"), ("a", "1"), ("na", "0"), ("1", "1")]).unwrap();
    let r = is_strongly_conservative(&eval).unwrap();
    assert_eq!(r.get_note("conservative"), Some("false"));
    let w = r.failures().find(|f| f.check == "conservative").unwrap();
    let text = w.witness.join(" ");
    assert!(text.contains("na") && text.contains('0'), "{text}");
    let diag = MonotoneMap::from_names(two(), p.clone(), &[("0", "0"), ("1", "1")]).unwrap();
    assert!(is_strongly_conservative(&diag).unwrap().is_pass());
}

#[test]
fn galois_eval_at_a() {
    let p = b4().poset().clone();
    let l = MonotoneMap::from_names(p.clone(), two(), &[("0", "0"), ("a", "1"), ("na", "0"), ("1", "1")]).unwrap();
    let r = MonotoneMap::from_names(two(), p.clone(), &[("0", "na"), ("1", "1")]).unwrap();
    let adj = Adjunction::galois(l, r).unwrap();
    let rep = unit_elementary_check(&adj).unwrap();
    assert!(rep.is_pass(), "{:?}", rep.first_failure());
    assert_eq!(rep.get_note("unit-elementary"), Some("false"));
    assert_eq!(rep.get_note("strongly-conservative"), Some("false"));
}

#[test]
fn galois_diagonal() {
    let p = b4().poset().clone();
    let l = MonotoneMap::from_names(two(), p.clone(), &[("0", "0"), ("1", "1")]).unwrap();
    let r = MonotoneMap::from_names(p.clone(), two(), &[("0", "0"), ("a", "0"), ("na", "0"), ("1", "1")]).unwrap();
    let adj = Adjunction::galois(l, r).unwrap();
    let rep = unit_elementary_check(&adj).unwrap();
    assert!(rep.is_pass());
    assert_eq!(rep.get_note("unit-elementary"), Some("true"));
    assert_eq!(rep.get_note("strongly-conservative"), Some("true"));
}

#[test]
fn identity_adjunctions() {
    let adj = Adjunction::identity(b4().poset().clone()).unwrap();
    let rep = unit_elementary_check(&adj).unwrap();
    for k in ["faithful", "conservative", "strongly-conservative", "unit-elementary", "unit-pointwise-mono"] {
        assert_eq!(rep.get_note(k), Some("true"), "{k}");
    }
    let c = SkelFinSet::new(2).unwrap();
    let ids = c.objects().unwrap().into_iter().map(|x| (x, c.identity(&x))).collect();
    let adj = Adjunction::new(IdentityFunctor(c.clone()), IdentityFunctor(c.clone()), ids, {
        c.objects().unwrap().into_iter().map(|x| (x, c.identity(&x))).collect()
    })
    .unwrap();
    let rep = unit_elementary_check(&adj).unwrap();
    assert!(rep.is_pass());
    assert_eq!(rep.get_note("monos-regular"), Some("true"));
    assert!(rep.findings.iter().any(|f| f.check == "five-way"));
}

fn join_preserving_maps(src: &FiniteLattice, tgt: &FiniteLattice) -> Vec<Vec<usize>> {
    let n = src.len();
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    loop {
        let ok = map[src.bottom()] == tgt.bottom()
            && (0..n).all(|a| (0..n).all(|b| map[src.join(a, b)] == tgt.join(map[a], map[b])));
        if ok {
            out.push(map.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            map[i] += 1;
            if map[i] < tgt.len() {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn galois_sweep_applicable_implications() {
    let lattices = vec![chain(&["0", "1"]).unwrap(), c3(), b4().lattice().clone()];
    let mut adjunctions = 0;
    for src in &lattices {
        for tgt in &lattices {
            for map in join_preserving_maps(src, tgt) {
                let right: Vec<usize> = (0..tgt.len())
                    .map(|y| {
                        (0..src.len())
                            .filter(|&x| tgt.leq(map[x], y))
                            .fold(src.bottom(), |acc, x| src.join(acc, x))
                    })
                    .collect();
                let l = MonotoneMap::new(src.poset().clone(), tgt.poset().clone(), map).unwrap();
                let r = MonotoneMap::new(tgt.poset().clone(), src.poset().clone(), right).unwrap();
                match Adjunction::galois(l, r) {
                    Ok(adj) => {
                        adjunctions += 1;
                        let rep = unit_elementary_check(&adj).unwrap();
                        assert!(rep.is_pass(), "{:?}", rep.first_failure());
                    }
                    Err(CatError::NotLex(_)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
    assert!(adjunctions > 5);
}

fn supports<F: SetFunctor<Cat = Poset> + Clone>(f: F) -> (BTreeSet<BTreeSet<usize>>, Route, bool) {
    let d = decompose_regular(f).unwrap();
    let s = d.supports().unwrap().into_iter().collect();
    (s, d.route(), d.report.is_pass())
}

#[test]
fn decompose_b8_up_pq() {
    let p = b8().poset().clone();
    let (got, route, pass) = supports(up_named(&p, "{p,q}").unwrap());
    assert!(pass);
    assert_eq!(route, Route::Atoms);
    let want: BTreeSet<BTreeSet<usize>> = ["{p}", "{q}"].iter().map(|g| members(&up_named(&p, g).unwrap())).collect();
    assert_eq!(got, want);
}

#[test]
fn decompose_b4_up_top() {
    let p = b4().poset().clone();
    let (got, _, pass) = supports(up_named(&p, "1").unwrap());
    assert!(pass);
    let want: BTreeSet<BTreeSet<usize>> = ["a", "na"].iter().map(|g| members(&up_named(&p, g).unwrap())).collect();
    assert_eq!(got, want);
}

#[test]
fn decompose_prime_filter_is_singleton() {
    let p = b4().poset().clone();
    let f = up_named(&p, "a").unwrap();
    let (got, _, pass) = supports(f.clone());
    assert!(pass);
    assert_eq!(got, [members(&f)].into_iter().collect());
}

#[test]
fn decompose_output_intersects_to_the_filter() {
    for l in distributive_fixtures().unwrap().iter().filter(|l| l.len() <= 16) {
        let p = l.poset().clone();
        for g in 0..p.len() {
            let f = up(&p, g);
            let (got, _, pass) = supports(f.clone());
            assert!(pass);
            let meet: BTreeSet<usize> = (0..p.len()).filter(|x| got.iter().all(|s| s.contains(x))).collect();
            assert_eq!(meet, members(&f));
            for s in &got {
                let flags: Vec<bool> = (0..p.len()).map(|x| s.contains(&x)).collect();
                assert!(l.is_prime_filter(&flags));
            }
        }
    }
}

#[test]
fn chains_use_the_join_prime_route() {
    let c = c3();
    let (got, route, pass) = supports(up_named(c.poset(), "m").unwrap());
    assert!(pass);
    assert_eq!(route, Route::JoinPrimes);
    assert_eq!(got, [members(&up_named(c.poset(), "m").unwrap())].into_iter().collect());
}

#[test]
fn diamond_is_refused() {
    let m = diamond();
    let f = up(m.poset(), m.top());
    assert!(matches!(decompose_regular(f.clone()), Err(CatError::NotCoherent(_))));
    assert!(matches!(model_from_regular(f), Err(CatError::NotCoherent(_))));
}

#[test]
fn experiment_hook_runs_without_base_checks() {
    let c = c3();
    if let Ok(d) = decompose_experiment(up_named(c.poset(), "m").unwrap()) {
        assert!(d.report.get_note("experiment").is_some());
    }
}

#[test]
fn decompose_finset_representable() {
    let c = SkelFinSet::new(3).unwrap();
    let d = decompose_regular(Representable::new(c, 2)).unwrap();
    assert!(d.report.is_pass(), "{:?}", d.report.first_failure());
    assert_eq!(d.route(), Route::Atoms);
    assert_eq!(d.len(), 2);
}

#[test]
fn completeness_examples() {
    let b = b8();
    let l = b.lattice();
    let ix = |n: &str| l.index(n).unwrap();
    let r = completeness_check(l, l.top(), ix("{p}"), ix("{p,q}")).unwrap();
    assert!(r.is_pass());
    assert_eq!(r.get_note("holds"), Some("true"));
    assert_eq!(r.get_note("models"), Some("3"));
    let r = completeness_check(l, l.top(), ix("{p}"), ix("{q}")).unwrap();
    assert!(r.is_pass());
    assert_eq!(r.get_note("holds"), Some("false"));
    assert_eq!(r.get_note("separating-model"), Some(l.filter_label(&l.principal_filter(ix("{p}"))).as_str()));
    assert!(completeness_check(l, l.top(), ix("{q}"), ix("{q}")).unwrap().is_pass());
}

#[test]
fn completeness_on_distributive_fixtures() {
    let fixtures = distributive_fixtures().unwrap();
    assert!(fixtures.iter().any(|l| l.len() == 32));
    for l in fixtures.iter().filter(|l| l.len() <= 32) {
        let r = completeness_sweep(l);
        assert!(r.is_pass(), "{:?}", r.first_failure());
    }
}
