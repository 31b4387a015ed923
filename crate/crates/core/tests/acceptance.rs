//! Acceptance criteria 1-9. Runs without the test harness so the one-line
//! verdicts always print; exits nonzero when any criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cohcat::category::{Category, IdentityFunctor};
use cohcat::diagram::{eta_check, gamma_global_sections, DiagramCategory, DEFAULT_DEPTH};
use cohcat::elementary::{
    completeness_check, components_monic_check, decompose_regular, is_elementary, unit_elementary_check, Adjunction,
};
use cohcat::finset::{all_functions, FinFn, SkelFinSet};
use cohcat::fixtures::{b4, b8, c3, up};
use cohcat::functor::{Filter, IdentityFinSet, NatTransform, Representable, SetFunctor};
use cohcat::lattice::{boolean_fixtures, chain, distributive_fixtures, m3, FiniteBooleanAlgebra, FiniteLattice};
use cohcat::limits::check_coherent;
use cohcat::poset::{MonotoneMap, Poset};
use cohcat::report::{inputs_digest, strip_timing, RunParams};
use cohcat::sheaf::{
    lurie_roundtrip_check, model_from_regular, presheaf_complemented_check, regular_functor_findings, GammaDiagram,
    SheafModel,
};
use cohcat::slice_yoneda::{delta_naturality_in_m, delta_naturality_in_x, verify_delta_roundtrip};
use cohcat::{CatError, Report, Result, Verdict};

/// Raw global elements compared per object by `eta_check`.
const ETA_LIMIT: usize = 10_000;

#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    summary: Vec<String>,
    reports: Vec<(String, Report)>,
}

impl Outcome {
    fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    fn ensure(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }

    /// Records `r` and fails unless it passes outright.
    fn report(&mut self, label: impl Into<String>, r: Result<Report>) -> Option<Report> {
        let label = label.into();
        match r {
            Ok(r) => {
                if r.verdict() != Verdict::Pass {
                    let why = r
                        .findings
                        .iter()
                        .find(|f| f.verdict != Verdict::Pass)
                        .map(|f| format!("{}: {} {:?}", f.check, f.detail, f.witness))
                        .unwrap_or_default();
                    self.fail(format!("{label}: {why}"));
                }
                self.reports.push((label, r.clone()));
                Some(r)
            }
            Err(e) => {
                self.fail(format!("{label}: {e}"));
                None
            }
        }
    }

    fn summary(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }
}

// ---------------------------------------------------------------- criterion 1

fn eta_case<F: SetFunctor + Clone>(o: &mut Outcome, label: String, f: F) {
    let d = match DiagramCategory::build(f.clone(), DEFAULT_DEPTH) {
        Ok(d) => d,
        Err(e) => return o.fail(format!("{label}: {e}")),
    };
    if let Some(r) = o.report(label.clone(), eta_check(&d, ETA_LIMIT)) {
        o.ensure(r.unknowns().count() == 0 && r.get_note("unknown") == Some("0"), || {
            format!("{label}: unknown hom verdicts")
        });
    }
    let gamma = gamma_global_sections(&d);
    let sizes = (|| -> Result<bool> {
        for y in f.source().objects()? {
            if gamma.elements(&y)?.len() != f.elements(&y)?.len() {
                return Ok(false);
            }
        }
        Ok(true)
    })();
    o.ensure(matches!(sizes, Ok(true)), || format!("{label}: |Γφ(y)| differs from |F(y)|"));
}

fn lattice_filters(o: &mut Outcome, name: &str, l: &FiniteLattice) -> Vec<Vec<bool>> {
    let filters = l.filters();
    match l.filters_by_subsets() {
        Ok(brute) => {
            let a: BTreeSet<_> = filters.iter().cloned().collect();
            let b: BTreeSet<_> = brute.into_iter().collect();
            o.ensure(a == b, || format!("{name}: filter enumeration disagrees with subset search"));
        }
        Err(e) => o.fail(format!("{name}: {e}")),
    }
    filters
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::default();
    let cases: [(&str, FiniteLattice); 3] = [("B4", b4().lattice().clone()), ("C3", c3()), ("B8", b8().lattice().clone())];
    for (name, l) in &cases {
        let filters = lattice_filters(&mut o, name, l);
        for flags in &filters {
            let f = Filter::new(l.poset().clone(), flags.clone()).expect("flags match");
            eta_case(&mut o, format!("{name} {}", l.filter_label(flags)), f);
        }
        o.summary(format!("{name}: {} filters", filters.len()));
    }
    for k in [1usize, 2] {
        match SkelFinSet::new(4) {
            Ok(c) => eta_case(&mut o, format!("FinSet(4) C({k},-)"), Representable::new(c, k)),
            Err(e) => o.fail(e.to_string()),
        }
    }
    o.summary("FinSet(4): C(1,-), C(2,-)");
    o
}

// ---------------------------------------------------------------- criterion 2

fn delta_case<M>(o: &mut Outcome, label: String, m: &M, x: &<M::Cat as Category>::Ob, expect: Option<usize>)
where
    M: SetFunctor + Clone,
    M::Cat: Clone,
{
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    if let Some(r) = o.report(format!("{label} roundtrip"), verify_delta_roundtrip(m, x, &mut rng)) {
        if let Some(n) = expect {
            let got = r.get_note("extensions").map(str::to_string);
            o.ensure(got == Some(n.to_string()), || format!("{label}: {got:?} extensions, expected {n}"));
        }
    }
    o.report(format!("{label} naturality-x"), delta_naturality_in_x(m, x));
    o.report(format!("{label} naturality-m"), delta_naturality_in_m(m, x, &[0, 1, 2, 3]));
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::default();
    match SkelFinSet::new(4) {
        Ok(c) => {
            let m = IdentityFinSet::new(c);
            for x in 1..=3usize {
                delta_case(&mut o, format!("FinSet(4) Id x={x}"), &m, &x, Some(x));
            }
        }
        Err(e) => o.fail(e.to_string()),
    }
    let b = b4();
    let p = b.poset().clone();
    let filters = lattice_filters(&mut o, "B4", b.lattice());
    let mut pairs = 0;
    for flags in &filters {
        let f = Filter::new(p.clone(), flags.clone()).expect("flags match");
        for x in 0..p.len() {
            pairs += 1;
            let expect = usize::from(flags[x]);
            delta_case(
                &mut o,
                format!("B4 {} x={}", b.lattice().filter_label(flags), p.name(x)),
                &f,
                &x,
                Some(expect),
            );
        }
    }
    o.summary(format!("FinSet(4) Id at x = 1, 2, 3; B4 {pairs} (filter, object) pairs"));
    o
}

// ---------------------------------------------------------------- criterion 3

fn psi_case(o: &mut Outcome, label: &str, b: &FiniteBooleanAlgebra, gens: &[&str], atoms: &[&str], want: &[(&str, &str)]) {
    let p = b.poset().clone();
    let comps = gens
        .iter()
        .map(|g| Ok(up(&p, p.index_or_err(g)?)))
        .collect::<Result<Vec<_>>>();
    let model = comps.and_then(|c| SheafModel::new(FiniteBooleanAlgebra::powerset(atoms)?, c));
    let gd = match model.and_then(|n| GammaDiagram::new(n, p.clone())) {
        Ok(gd) => gd,
        Err(e) => return o.fail(format!("{label}: {e}")),
    };
    let mut r = Report::new("sheaf psi");
    match gd.psi_findings() {
        Ok(fs) => r.extend(fs),
        Err(e) => return o.fail(format!("{label}: {e}")),
    }
    o.report(label.to_string(), Ok(r));
    let alg = &gd.model.algebra;
    let table = match gd.psi_table() {
        Ok(t) => t,
        Err(e) => return o.fail(format!("{label}: {e}")),
    };
    let named = |e: usize| p.name(gd.diag.base().dom(&gd.sub1.reps[table[e]].src.u)).to_string();
    for (from, to) in want {
        match alg.lattice().index(from) {
            Some(e) => {
                let got = named(e);
                o.ensure(got == *to, || format!("{label}: ψ({from}) = {got}, expected {to}"));
            }
            None => o.fail(format!("{label}: no element {from}")),
        }
    }
    // Independent homomorphism and inverse checks on the raw table.
    let s = &gd.sub1.algebra;
    let injective = table.iter().collect::<BTreeSet<_>>().len() == table.len() && table.len() == s.len();
    o.ensure(injective, || format!("{label}: ψ is not a bijection"));
    for x in 0..alg.len() {
        for y in 0..alg.len() {
            o.ensure(
                table[alg.meet(x, y)] == s.meet(table[x], table[y]) && table[alg.join(x, y)] == s.join(table[x], table[y]),
                || format!("{label}: ψ fails to preserve ∧/∨ at {}, {}", alg.name(x), alg.name(y)),
            );
        }
        let back = gd.psi_forward(x).and_then(|o| gd.psi_inverse(&o));
        o.ensure(matches!(back, Ok(v) if v == x), || format!("{label}: ψ⁻¹ψ ≠ id at {}", alg.name(x)));
    }
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::default();
    psi_case(
        &mut o,
        "B4 (up(a), up(na))",
        &b4(),
        &["a", "na"],
        &["p", "q"],
        &[("{}", "0"), ("{p}", "a"), ("{q}", "na"), ("{p,q}", "1")],
    );
    let b = b8();
    let want: Vec<(String, String)> = (0..b.len()).map(|e| (b.name(e).to_string(), b.name(e).to_string())).collect();
    let want: Vec<(&str, &str)> = want.iter().map(|(a, c)| (a.as_str(), c.as_str())).collect();
    psi_case(&mut o, "B8 atom filters", &b, &["{p}", "{q}", "{r}"], &["p", "q", "r"], &want);
    o.summary("B4 2^2 and B8 2^3 tables match");
    o
}

// ---------------------------------------------------------------- criterion 4

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::default();
    for (name, b) in [("B4", b4()), ("B8", b8())] {
        let p = b.poset().clone();
        let l = b.lattice();
        // Regular F: every subsingleton functor, classified by the checker.
        let candidates = match l.filters_by_subsets() {
            Ok(c) => c,
            Err(e) => {
                o.fail(e.to_string());
                continue;
            }
        };
        let mut regular = 0;
        for flags in candidates {
            let f = Filter::new(p.clone(), flags.clone()).expect("flags match");
            let ok = regular_functor_findings(&f).map(|fs| fs.iter().all(|x| x.verdict == Verdict::Pass));
            if !matches!(ok, Ok(true)) {
                continue;
            }
            regular += 1;
            o.report(format!("{name} F={}", l.filter_label(&flags)), lurie_roundtrip_check(f));
        }
        o.ensure(regular == b.len(), || format!("{name}: {regular} regular F, expected {}", b.len()));

        let primes = l.prime_filters();
        let (mut passed, mut refused) = (0, 0);
        for k in 1..=b.atoms().len() {
            for t in tuples(primes.len(), k) {
                let label = format!("{name} N=({})", t.iter().map(|&i| l.filter_label(&primes[i])).collect::<Vec<_>>().join(","));
                let atoms: Vec<String> = (0..k).map(|i| format!("t{i}")).collect();
                let comps: Vec<Filter<Poset>> =
                    t.iter().map(|&i| Filter::new(p.clone(), primes[i].clone()).expect("flags match")).collect();
                let repeats = t.iter().collect::<BTreeSet<_>>().len() < t.len();
                let built = FiniteBooleanAlgebra::powerset(&atoms)
                    .and_then(|alg| SheafModel::new(alg, comps))
                    .and_then(|n| GammaDiagram::new(n.clone(), p.clone()).map(|gd| (n, gd)));
                match built {
                    Ok((_, gd)) => {
                        let mut r = Report::new("sheaf lurie-n");
                        match gd.psi_findings() {
                            Ok(fs) => r.extend(fs),
                            Err(e) => o.fail(format!("{label}: {e}")),
                        }
                        match gd.direction_two() {
                            Ok(d2) => r.absorb("direction-2", d2),
                            Err(e) => o.fail(format!("{label}: {e}")),
                        }
                        o.report(label, Ok(r));
                        passed += 1;
                    }
                    Err(CatError::MissingCoproduct(_)) => {
                        refused += 1;
                        o.ensure(repeats, || format!("{label}: refused without a repeated atom"));
                        // No iso can exist: M_{ΓN} lives over a smaller algebra.
                        let gamma: Vec<bool> = (0..p.len()).map(|x| t.iter().all(|&i| primes[i][x])).collect();
                        let f = Filter::new(p.clone(), gamma).expect("flags match");
                        let smaller = model_from_regular(f).map(|rm| rm.sub1.algebra.len() < 1 << k);
                        o.ensure(matches!(smaller, Ok(true)), || format!("{label}: refused but B′ is not smaller"));
                    }
                    Err(e) => o.fail(format!("{label}: {e}")),
                }
            }
        }
        o.summary(format!(
            "{name}: {regular} regular F round-trip; {passed} prime tuples round-trip, {refused} with a repeated atom refused (no disjoint 1⊔1)"
        ));
    }
    o
}

// ---------------------------------------------------------------- criterion 5

fn criterion_5() -> Outcome {
    let mut o = Outcome::default();
    let algebras = match boolean_fixtures(5) {
        Ok(a) => a,
        Err(e) => {
            o.fail(e.to_string());
            return o;
        }
    };
    for b in &algebras {
        let label = format!("2^{}", b.atoms().len());
        o.report(label.clone(), Ok(presheaf_complemented_check(b)));
        let l = b.lattice();
        let complemented = l.elements().filter(|&a| l.complements(a).len() == 1).count();
        o.ensure(complemented == b.len() && b.len() == 1 << b.atoms().len(), || {
            format!("{label}: {complemented} complemented of {}", b.len())
        });
    }
    let sizes: Vec<String> = algebras.iter().map(|b| b.len().to_string()).collect();
    o.summary(format!("sizes {}", sizes.join(", ")));
    o
}

// ---------------------------------------------------------------- criterion 6

fn criterion_6() -> Outcome {
    let mut o = Outcome::default();
    let lattices = match distributive_fixtures() {
        Ok(l) => l,
        Err(e) => {
            o.fail(e.to_string());
            return o;
        }
    };
    let mut filters = 0;
    for (i, l) in lattices.iter().enumerate() {
        let p = l.poset().clone();
        for flags in l.filters() {
            filters += 1;
            let label = format!("D{i}(n={}) {}", l.len(), l.filter_label(&flags));
            let f = Filter::new(p.clone(), flags.clone()).expect("flags match");
            let dec = match decompose_regular(f) {
                Ok(d) => d,
                Err(e) => {
                    o.fail(format!("{label}: {e}"));
                    continue;
                }
            };
            let supports = match dec.supports() {
                Ok(s) => s,
                Err(e) => {
                    o.fail(format!("{label}: {e}"));
                    continue;
                }
            };
            let elementary = dec
                .report
                .findings
                .iter()
                .any(|x| x.check == "elementary" && x.verdict == Verdict::Pass);
            o.ensure(elementary, || format!("{label}: comparison not elementary"));
            o.report(label.clone(), Ok(dec.report));
            let mut meet: Vec<bool> = vec![true; l.len()];
            for s in &supports {
                let m: Vec<bool> = (0..l.len()).map(|x| s.contains(&x)).collect();
                let prime = is_prime_by_definition(l, &m);
                o.ensure(prime, || format!("{label}: component {s:?} is not a prime filter"));
                for x in 0..l.len() {
                    meet[x] &= m[x];
                }
            }
            o.ensure(meet == flags, || format!("{label}: intersection of components differs from F"));
        }
    }
    let m = match m3() {
        Ok(m) => m,
        Err(e) => {
            o.fail(e.to_string());
            return o;
        }
    };
    match check_coherent(m.poset()) {
        Ok(r) => {
            let witnessed = r.failures().any(|f| !f.witness.is_empty());
            o.ensure(witnessed, || "M3: check_coherent passed or gave no witness".into());
            o.reports.push(("M3 check".into(), r));
        }
        Err(e) => o.fail(format!("M3: {e}")),
    }
    let refused = decompose_regular(up(m.poset(), m.top()));
    o.ensure(matches!(refused, Err(CatError::NotCoherent(_))), || "M3: decomposition was not refused".into());
    o.summary(format!("{} lattices, {filters} filters; M3 refused NotCoherent", lattices.len()));
    o
}

/// Upward closed, meet closed, proper, inhabited, and prime, checked
/// straight from the order.
fn is_prime_by_definition(l: &FiniteLattice, m: &[bool]) -> bool {
    let n = l.len();
    let up_closed = (0..n).all(|a| (0..n).all(|b| !(m[a] && l.leq(a, b)) || m[b]));
    let meets = (0..n).all(|a| (0..n).all(|b| !(m[a] && m[b]) || m[l.meet(a, b)]));
    let prime = (0..n).all(|a| (0..n).all(|b| !m[l.join(a, b)] || m[a] || m[b]));
    up_closed && meets && prime && m[l.top()] && !m[l.bottom()]
}

// ---------------------------------------------------------------- criterion 7

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

fn criterion_7() -> Outcome {
    let mut o = Outcome::default();
    let lattices: Vec<(&str, FiniteLattice)> = vec![
        ("2", chain(&["0", "1"]).expect("chain")),
        ("C3", c3()),
        ("C4", chain(&["0", "1/3", "2/3", "1"]).expect("chain")),
        ("B4", b4().lattice().clone()),
    ];
    let mut adjunctions = 0;
    let mut refused = 0;
    for (sn, src) in &lattices {
        for (tn, tgt) in &lattices {
            for map in join_preserving_maps(src, tgt) {
                let right: Vec<usize> = (0..tgt.len())
                    .map(|y| {
                        (0..src.len())
                            .filter(|&x| tgt.leq(map[x], y))
                            .fold(src.bottom(), |acc, x| src.join(acc, x))
                    })
                    .collect();
                let names: Vec<&str> = map.iter().map(|&y| tgt.name(y)).collect();
                let label = format!("{sn}->{tn} [{}]", names.join(","));
                let built = MonotoneMap::new(src.poset().clone(), tgt.poset().clone(), map)
                    .and_then(|l| Ok((l, MonotoneMap::new(tgt.poset().clone(), src.poset().clone(), right)?)))
                    .and_then(|(l, r)| Adjunction::galois(l, r));
                match built {
                    Ok(adj) => {
                        adjunctions += 1;
                        o.report(label, unit_elementary_check(&adj));
                    }
                    // Left adjoints that fail to preserve meets are not lex.
                    Err(CatError::NotLex(_)) => refused += 1,
                    Err(e) => o.fail(format!("{label}: {e}")),
                }
            }
        }
    }
    // The two worked Galois connections with their expected evaluations.
    let p = b4().poset().clone();
    let two = chain(&["0", "1"]).expect("chain").poset().clone();
    let worked = [
        (
            "eval-at-a",
            MonotoneMap::from_names(p.clone(), two.clone(), &[("0", "0"), ("a", "1"), ("na", "0"), ("1", "1")]),
            MonotoneMap::from_names(two.clone(), p.clone(), &[("0", "na"), ("1", "1")]),
            "false",
        ),
        (
            "diagonal",
            MonotoneMap::from_names(two.clone(), p.clone(), &[("0", "0"), ("1", "1")]),
            MonotoneMap::from_names(p.clone(), two.clone(), &[("0", "0"), ("a", "0"), ("na", "0"), ("1", "1")]),
            "true",
        ),
    ];
    for (name, l, r, unit) in worked {
        let adj = l.and_then(|l| Ok((l, r?))).and_then(|(l, r)| Adjunction::galois(l, r));
        match adj {
            Ok(adj) => {
                adjunctions += 1;
                if let Some(rep) = o.report(name, unit_elementary_check(&adj)) {
                    o.ensure(rep.get_note("unit-elementary") == Some(unit), || format!("{name}: unit elementarity"));
                    o.ensure(rep.get_note("strongly-conservative") == Some(unit), || {
                        format!("{name}: strong conservativity")
                    });
                }
            }
            Err(e) => o.fail(format!("{name}: {e}")),
        }
    }
    // FinSet(2), where every mono is regular and all five must agree.
    match SkelFinSet::new(2).and_then(|c| {
        let ids = |c: &SkelFinSet| -> Result<_> { Ok(c.objects()?.into_iter().map(|x| (x, c.identity(&x))).collect()) };
        Adjunction::new(IdentityFunctor(c.clone()), IdentityFunctor(c.clone()), ids(&c)?, ids(&c)?)
    }) {
        Ok(adj) => {
            adjunctions += 1;
            if let Some(rep) = o.report("FinSet(2) identity", unit_elementary_check(&adj)) {
                o.ensure(rep.findings.iter().any(|f| f.check == "five-way"), || "FinSet(2): five-way not evaluated".into());
            }
        }
        Err(e) => o.fail(format!("FinSet(2) identity: {e}")),
    }
    o.ensure(adjunctions >= 20, || format!("only {adjunctions} adjunction fixtures"));

    let (elementary, checked) = elementary_sweep(&mut o, &lattices);
    o.summary(format!(
        "{adjunctions} adjunctions ({refused} non-lex candidates skipped); {elementary} of {checked} transformations elementary, all with injective components"
    ));
    o
}

/// Every transformation between filters on the lattice fixtures and every
/// precomposition `C(k,-) ⇒ C(j,-)` on FinSet(3); elementary ones must have
/// injective components.
fn elementary_sweep(o: &mut Outcome, lattices: &[(&str, FiniteLattice)]) -> (usize, usize) {
    let (mut elementary, mut checked) = (0, 0);
    for (name, l) in lattices {
        let p = l.poset().clone();
        for f in l.filters() {
            for g in l.filters() {
                if (0..l.len()).any(|x| f[x] && !g[x]) {
                    continue;
                }
                checked += 1;
                let (src, tgt) = (Filter::new(p.clone(), f.clone()).unwrap(), Filter::new(p.clone(), g.clone()).unwrap());
                let alpha = NatTransform::new(src, tgt, |_: &usize, _: &()| ());
                if let Ok(v) = is_elementary(&alpha) {
                    if v.is_pass() {
                        elementary += 1;
                        o.report(
                            format!("{name} {}=>{} monic", l.filter_label(&f), l.filter_label(&g)),
                            components_monic_check(&alpha),
                        );
                    }
                } else {
                    o.fail(format!("{name}: is_elementary errored"));
                }
            }
        }
    }
    let c = SkelFinSet::new(3).expect("cap");
    for j in 0..=2usize {
        for k in 0..=2usize {
            for h in all_functions(j, k).expect("small") {
                checked += 1;
                let h2 = h.clone();
                let alpha = NatTransform::new(
                    Representable::new(c.clone(), k),
                    Representable::new(c.clone(), j),
                    move |_: &usize, a: &FinFn| a.after(&h2),
                );
                match is_elementary(&alpha) {
                    Ok(v) if v.is_pass() => {
                        elementary += 1;
                        let label = format!("FinSet(3) -∘{}", c.mor_label(&h));
                        o.report(label.clone(), components_monic_check(&alpha));
                        let injective = (0..=3usize).all(|x| {
                            let els = alpha.source.elements(&x).unwrap();
                            let imgs: BTreeSet<FinFn> = els.iter().map(|a| a.after(&h)).collect();
                            imgs.len() == els.len()
                        });
                        o.ensure(injective, || format!("{label}: a component is not injective"));
                    }
                    Ok(_) => {}
                    Err(e) => o.fail(format!("FinSet(3): {e}")),
                }
            }
        }
    }
    (elementary, checked)
}

// ---------------------------------------------------------------- criterion 8

fn criterion_8() -> Outcome {
    let mut o = Outcome::default();
    let lattices = match distributive_fixtures() {
        Ok(l) => l,
        Err(e) => {
            o.fail(e.to_string());
            return o;
        }
    };
    let mut pairs = 0;
    let mut separated = 0;
    for (i, l) in lattices.iter().enumerate() {
        let mut summary = Report::new("elem complete-all");
        for v in l.elements() {
            for u in l.elements() {
                pairs += 1;
                let x = l.join(v, u);
                let label = format!("D{i} v={} u={}", l.name(v), l.name(u));
                let r = match completeness_check(l, x, v, u) {
                    Ok(r) => r,
                    Err(e) => {
                        o.fail(format!("{label}: {e}"));
                        continue;
                    }
                };
                let holds = l.leq(v, u);
                o.ensure(r.is_pass() && r.get_note("holds") == Some(if holds { "true" } else { "false" }), || {
                    format!("{label}: verdict differs from the order")
                });
                if !holds {
                    separated += 1;
                    let model = r.get_note("separating-model").and_then(|s| {
                        let g = s.strip_prefix("up(")?.strip_suffix(')')?;
                        l.index(g).map(|g| l.principal_filter(g))
                    });
                    let valid = model.is_some_and(|m| is_prime_by_definition(l, &m) && m[v] && !m[u]);
                    o.ensure(valid, || format!("{label}: separating model missing or invalid"));
                }
                summary.extend(r.findings);
            }
        }
        o.reports.push((format!("D{i}"), summary));
    }
    o.summary(format!("{} lattices, {pairs} pairs, {separated} separated by a validated prime filter", lattices.len()));
    o
}

// ---------------------------------------------------------------- driver

type Criterion = (u8, &'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 8] = [
    (1, "diagram-category unit", criterion_1),
    (2, "slice-extension equivalence", criterion_2),
    (3, "ψ isomorphism", criterion_3),
    (4, "Lurie round trips", criterion_4),
    (5, "complemented-subobject duality", criterion_5),
    (6, "filter decomposition", criterion_6),
    (7, "elementary/conservative equivalences", criterion_7),
    (8, "completeness", criterion_8),
];

fn render_all(o: &Outcome, wall_ms: u128) -> Vec<String> {
    let params = RunParams {
        cap: None,
        depth: DEFAULT_DEPTH,
        seed: 0,
    };
    o.reports
        .iter()
        .map(|(label, r)| r.render(&inputs_digest([label.as_bytes()]), &params, wall_ms))
        .collect()
}

fn run_all() -> Vec<(Outcome, u128)> {
    std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|&(_, _, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let o = f();
                    (o, t.elapsed().as_millis())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    })
}

fn main() {
    let started = Instant::now();
    let first = run_all();
    let mut all_pass = true;
    for ((n, name, _), (o, ms)) in CRITERIA.iter().zip(&first) {
        let ok = o.failures.is_empty();
        all_pass &= ok;
        println!(
            "criterion {n} [{name}]: {} ({}; {} reports; {ms} ms)",
            if ok { "PASS" } else { "FAIL" },
            o.summary.join("; "),
            o.reports.len()
        );
        for f in o.failures.iter().take(5) {
            println!("    failure: {f}");
        }
    }

    let second = run_all();
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for (((n, _, _), (a, ma)), (b, mb)) in CRITERIA.iter().zip(&first).zip(&second) {
        let (ra, rb) = (render_all(a, *ma), render_all(b, *mb));
        if ra.len() != rb.len() {
            mismatches.push(format!("criterion {n}: {} vs {} reports", ra.len(), rb.len()));
            continue;
        }
        for (x, y) in ra.iter().zip(&rb) {
            compared += 1;
            if strip_timing(x) != strip_timing(y) {
                mismatches.push(format!("criterion {n}: {}", x.lines().nth(1).unwrap_or_default()));
            }
        }
    }
    let ok9 = mismatches.is_empty() && compared > 0;
    all_pass &= ok9;
    println!(
        "criterion 9 [determinism]: {} ({compared} rendered reports byte-identical across two runs modulo wall_ms)",
        if ok9 { "PASS" } else { "FAIL" }
    );
    for m in mismatches.iter().take(5) {
        println!("    failure: {m}");
    }
    println!(
        "acceptance: {} in {} ms",
        if all_pass { "all criteria pass" } else { "FAILED" },
        started.elapsed().as_millis()
    );
    if !all_pass {
        std::process::exit(1);
    }
}
