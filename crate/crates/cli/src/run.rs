//! Command implementations. Each returns the report plus the raw bytes of
//! every input document, which feed the inputs digest.

use std::collections::BTreeSet;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cohcat::diagram::{eta_check, extend_model, gamma_global_sections, DiagramCategory, HomEq};
use cohcat::elementary::{
    completeness_check, completeness_sweep, components_monic_check, decompose_experiment, decompose_regular,
    is_elementary, is_strongly_conservative, unit_elementary_check,
};
use cohcat::format::{parse_ob, sheaf_model, AnyFunctor, Base, Document, FunctorSpec, LoadedCategory, TableTransform};
use cohcat::functor::SetFunctor;
use cohcat::limits::{check_category_axioms, check_coherent, check_disjoint_coproducts, check_limits};
use cohcat::sheaf::{gamma_findings, lurie_roundtrip_check, GammaDiagram};
use cohcat::slice_yoneda::{
    delta_naturality_in_m, delta_naturality_in_x, extension_from_element, fa_lex_findings, verify_delta_roundtrip,
};
use cohcat::{CatError, Category, Finding, Report, Result};

use crate::{CheckCmd, Cli, Command, DecomposeArgs, DiagramCmd, ElemCmd, Global, SheafCmd, SliceArgs, SliceCmd};

/// Raw global elements compared per object by `diagram homeq` and `eta`.
const GLOBAL_LIMIT: usize = 10_000;

macro_rules! on_base {
    ($cat:expr, $c:ident => $body:expr) => {
        match $cat {
            LoadedCategory::Poset($c) => $body,
            LoadedCategory::FinSet($c) => $body,
            LoadedCategory::Table($c) => $body,
        }
    };
}

struct Inputs {
    raw: Vec<Vec<u8>>,
}

impl Inputs {
    fn load(&mut self, path: &Path) -> Result<Document> {
        let bytes =
            std::fs::read(path).map_err(|e| CatError::Parse(format!("{}: {e}", path.display())))?;
        let text = std::str::from_utf8(&bytes).map_err(|e| CatError::Parse(format!("{}: {e}", path.display())))?;
        let doc = Document::parse(text).map_err(|e| CatError::Parse(format!("{}: {e}", path.display())))?;
        self.raw.push(bytes);
        Ok(doc)
    }

    fn category(&mut self, path: &Path, g: &Global) -> Result<LoadedCategory> {
        let doc = self.load(path)?;
        override_cap(doc.category()?, g)
    }
}

fn override_cap(c: LoadedCategory, g: &Global) -> Result<LoadedCategory> {
    match (c, g.cap) {
        (LoadedCategory::FinSet(_), Some(cap)) => Ok(LoadedCategory::FinSet(cohcat::finset::SkelFinSet::new(cap)?)),
        (c, _) => Ok(c),
    }
}

/// Structural refusals become failing reports and size overflows unknown
/// ones; anything else is an input error.
fn refusal(command: &str, e: CatError) -> Result<Report> {
    let mut r = Report::new(command);
    match &e {
        CatError::NotLex(_)
        | CatError::NotRegular(_)
        | CatError::NotCoherent(_)
        | CatError::NotCoherentModel(_)
        | CatError::NotNatural(_)
        | CatError::NotBoolean(_)
        | CatError::MissingCoproduct(_)
        | CatError::NoLimit(_)
        | CatError::NoColimit(_)
        | CatError::NoFactorization(_)
        | CatError::NoUnion(_) => r.push(Finding::fail("refused", e.to_string())),
        CatError::SizeOverflow { .. } => r.push(Finding::unknown("bounded", e.to_string())),
        _ => return Err(e),
    }
    Ok(r)
}

pub fn dispatch(cli: &Cli) -> Result<(Report, Vec<Vec<u8>>)> {
    let mut inputs = Inputs { raw: Vec::new() };
    let g = &cli.global;
    let (name, result) = match &cli.command {
        Command::Check(cmd) => match cmd {
            CheckCmd::Category { cat } => {
                let doc = inputs.load(cat)?;
                let c = override_cap(doc.category_unchecked()?, g)?;
                ("check category", Ok(on_base!(c, c => check_category_axioms(&c))))
            }
            CheckCmd::Coherent { cat } => {
                let c = inputs.category(cat, g)?;
                ("check coherent", on_base!(c, c => check_coherent(&c)))
            }
            CheckCmd::Disjoint { cat } => {
                let c = inputs.category(cat, g)?;
                ("check disjoint", on_base!(c, c => check_disjoint_coproducts(&c)))
            }
        },
        Command::Limits { cat } => {
            let c = inputs.category(cat, g)?;
            ("limits", on_base!(c, c => check_limits(&c)))
        }
        Command::Slice(cmd) => {
            let (mode, args) = match cmd {
                SliceCmd::Delta(a) => ("delta", a),
                SliceCmd::Fa(a) => ("fa", a),
                SliceCmd::Roundtrip(a) => ("roundtrip", a),
            };
            let name = match mode {
                "delta" => "slice delta",
                "fa" => "slice fa",
                _ => "slice roundtrip",
            };
            let c = inputs.category(&args.cat, g)?;
            let spec = inputs.load(&args.fun)?.functor_spec()?.clone();
            (name, on_base!(c, c => slice(&c, &spec, args, mode, g.seed)))
        }
        Command::Diagram(cmd) => match cmd {
            DiagramCmd::Extend { cat, nat } => {
                let c = inputs.category(cat, g)?;
                let spec = inputs.load(nat)?.nat_spec()?.clone();
                (
                    "diagram extend",
                    on_base!(c, c => {
                        TableTransform::from_spec(&c, &spec).and_then(|t| {
                            let d = DiagramCategory::build(t.source.clone(), g.depth)?;
                            let m = extend_model(&d, t)?;
                            m.certify()
                        })
                    }),
                )
            }
            DiagramCmd::Build(a) | DiagramCmd::Gamma(a) | DiagramCmd::Eta(a) | DiagramCmd::Homeq(a) => {
                let c = inputs.category(&a.cat, g)?;
                let spec = inputs.load(&a.fun)?.functor_spec()?.clone();
                let which = match cmd {
                    DiagramCmd::Build(_) => "build",
                    DiagramCmd::Gamma(_) => "gamma",
                    DiagramCmd::Eta(_) => "eta",
                    _ => "homeq",
                };
                let name = match which {
                    "build" => "diagram build",
                    "gamma" => "diagram gamma",
                    "eta" => "diagram eta",
                    _ => "diagram homeq",
                };
                (name, on_base!(c, c => diagram(&c, &spec, which, g.depth)))
            }
        },
        Command::Sheaf(cmd) => match cmd {
            SheafCmd::Atoms { alg } => ("sheaf atoms", sheaf_atoms(&inputs.load(alg)?)),
            SheafCmd::Gamma { cat, sheaf } | SheafCmd::Psi { cat, sheaf } => {
                let c = inputs.category(cat, g)?;
                let spec = inputs.load(sheaf)?.sheaf_spec()?.clone();
                let psi = matches!(cmd, SheafCmd::Psi { .. });
                let name = if psi { "sheaf psi" } else { "sheaf gamma" };
                (name, on_base!(c, c => sheaf_cmd(&c, &spec, psi)))
            }
            SheafCmd::Lurie(a) => {
                let c = inputs.category(&a.cat, g)?;
                let spec = inputs.load(&a.fun)?.functor_spec()?.clone();
                (
                    "sheaf lurie",
                    on_base!(c, c => AnyFunctor::from_spec(&c, &spec).and_then(lurie_roundtrip_check)),
                )
            }
        },
        Command::Elem(cmd) => match cmd {
            ElemCmd::Check { cat, nat } => {
                let c = inputs.category(cat, g)?;
                let spec = inputs.load(nat)?.nat_spec()?.clone();
                (
                    "elem check",
                    on_base!(c, c => TableTransform::from_spec(&c, &spec).and_then(|t| {
                        let mut r = Report::new("elem check");
                        let v = is_elementary(&t)?;
                        r.push(v.finding());
                        r.absorb("monic", components_monic_check(&t)?);
                        Ok(r)
                    })),
                )
            }
            ElemCmd::Conservative { adj } => {
                let a = inputs.load(adj)?.adjunction()?;
                let mut r = Report::new("elem conservative");
                let run = (|| {
                    r.absorb("left", is_strongly_conservative(&a.left)?);
                    r.absorb("right", is_strongly_conservative(&a.right)?);
                    Ok(r)
                })();
                ("elem conservative", run)
            }
            ElemCmd::Unit { adj } => {
                let a = inputs.load(adj)?.adjunction()?;
                ("elem unit", unit_elementary_check(&a))
            }
            ElemCmd::Decompose(a) => ("elem decompose", decompose(&mut inputs, g, a)),
            ElemCmd::Complete {
                lat,
                object,
                lower,
                upper,
            } => {
                let l = inputs.load(lat)?.lattice()?;
                let run = match (object, lower, upper) {
                    (Some(x), Some(v), Some(u)) => {
                        let ix = |s: &str| l.index(s).ok_or_else(|| CatError::UnknownObject(s.to_string()));
                        completeness_check(&l, ix(x)?, ix(v)?, ix(u)?)
                    }
                    _ => Ok(completeness_sweep(&l)),
                };
                ("elem complete", run)
            }
        },
        Command::Decompose(a) => ("elem decompose", decompose(&mut inputs, g, a)),
    };
    let report = result.or_else(|e| refusal(name, e))?;
    Ok((report, inputs.raw))
}

fn objects_of<C: Base>(c: &C, object: &Option<String>) -> Result<Vec<usize>> {
    match object {
        Some(label) => Ok(vec![parse_ob(c, label)?]),
        None => c.objects(),
    }
}

fn slice<C: Base>(c: &C, spec: &FunctorSpec, args: &SliceArgs, mode: &str, seed: u64) -> Result<Report> {
    let m = AnyFunctor::from_spec(c, spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report::new(format!("slice {mode}"));
    for x in objects_of(c, &args.object)? {
        let at = c.ob_label(&x);
        match mode {
            "fa" => {
                for a in m.elements(&x)? {
                    let label = format!("{at}.{}", m.elem_label(&a));
                    let fa = extension_from_element(m.clone(), x, a)?;
                    for mut f in fa_lex_findings(&fa)? {
                        f.check = format!("{label}.{}", f.check);
                        r.push(f);
                    }
                }
            }
            "delta" => r.absorb(&at, verify_delta_roundtrip(&m, &x, &mut rng)?),
            _ => {
                r.absorb(&at, verify_delta_roundtrip(&m, &x, &mut rng)?);
                r.absorb(&at, delta_naturality_in_x(&m, &x)?);
                r.absorb(&at, delta_naturality_in_m(&m, &x, &[0, 1, 2])?);
            }
        }
    }
    Ok(r)
}

fn diagram<C: Base>(c: &C, spec: &FunctorSpec, which: &str, depth: usize) -> Result<Report> {
    let f = AnyFunctor::from_spec(c, spec)?;
    let d = DiagramCategory::build(f.clone(), depth)?;
    match which {
        "eta" => {
            let mut r = eta_check(&d, GLOBAL_LIMIT)?;
            r.note("depth", depth);
            Ok(r)
        }
        "build" => {
            let mut r = Report::new("diagram build");
            r.note("depth", depth);
            r.note("objects", d.objects()?.len());
            r.note("normal-form", d.has_normal_form());
            if d.has_normal_form() {
                r.note("core-objects", d.core_objects()?.len());
                r.note("terminal", d.obj_label(&d.terminal_obj()?));
            }
            r.push(Finding::pass("build", "diagram category constructed"));
            Ok(r)
        }
        "gamma" => {
            let mut r = Report::new("diagram gamma");
            let gamma = gamma_global_sections(&d);
            let mut bad = Vec::new();
            for y in c.objects()? {
                let (gy, fy) = (gamma.elements(&y)?.len(), f.elements(&y)?.len());
                r.note(format!("gamma.{}", c.ob_label(&y)), format!("{gy}/{fy}"));
                if gy != fy {
                    bad.push(c.ob_label(&y));
                }
            }
            r.push(if bad.is_empty() {
                Finding::pass("gamma-table", "|Γφ(y)| = |F(y)| at every object")
            } else {
                Finding::fail("gamma-table", "Γφ differs from F").with_witness(bad)
            });
            Ok(r)
        }
        _ => homeq(&d, depth),
    }
}

/// Compares raw global elements pairwise with the bounded hom test and
/// checks the verdicts against evaluation at the marker.
fn homeq<C: Base>(d: &DiagramCategory<AnyFunctor<C>>, depth: usize) -> Result<Report> {
    let mut r = Report::new("diagram homeq");
    let c = d.base();
    let (mut equal, mut distinct, mut unknown) = (0usize, 0usize, 0usize);
    for y in c.objects()? {
        let ges = d.global_elements(&y, GLOBAL_LIMIT)?;
        let values = ges.iter().map(|m| d.evaluate_global(m)).collect::<Result<Vec<_>>>()?;
        for i in 0..ges.len() {
            for j in i + 1..ges.len() {
                let same = values[i] == values[j];
                match d.try_hom_equal(&ges[i], &ges[j], depth)? {
                    HomEq::Equal(_) if same => equal += 1,
                    HomEq::Distinct if !same => distinct += 1,
                    HomEq::Unknown(_) => unknown += 1,
                    verdict => {
                        r.push(
                            Finding::fail("homeq", format!("{verdict:?} contradicts evaluation"))
                                .with_witness([d.rep_label(&ges[i]), d.rep_label(&ges[j])]),
                        );
                        return Ok(r);
                    }
                }
            }
        }
    }
    r.note("depth", depth);
    r.note("equal", equal);
    r.note("distinct", distinct);
    r.note("unknown", unknown);
    r.push(if unknown == 0 {
        Finding::pass("homeq", "every pair decided and consistent with evaluation")
    } else {
        Finding::unknown("homeq", format!("{unknown} pairs undecided at depth {depth}"))
    });
    Ok(r)
}

fn sheaf_atoms(doc: &Document) -> Result<Report> {
    let b = doc.boolean_algebra()?;
    let l = b.lattice();
    let mut r = Report::new("sheaf atoms");
    let atoms: Vec<&str> = b.atoms().iter().map(|&a| b.name(a)).collect();
    r.note("atoms", atoms.join(" "));
    let primes: BTreeSet<String> = l.prime_filters().iter().map(|f| l.filter_label(f)).collect();
    let principal: BTreeSet<String> = b
        .atoms()
        .iter()
        .map(|&a| l.filter_label(&l.principal_filter(a)))
        .collect();
    r.note("prime-filters", primes.len());
    r.push(if primes == principal {
        Finding::pass("atoms-are-ultrafilters", format!("{} atoms, each generating a prime filter", atoms.len()))
    } else {
        Finding::fail("atoms-are-ultrafilters", "prime filters differ from atom filters")
            .with_witness(primes.symmetric_difference(&principal).cloned())
    });
    Ok(r)
}

fn sheaf_cmd<C: Base>(c: &C, spec: &cohcat::format::SheafSpec, psi: bool) -> Result<Report> {
    let n = sheaf_model(c, spec)?;
    if !psi {
        let mut r = Report::new("sheaf gamma");
        let g = n.gamma(c.clone());
        for y in c.objects()? {
            r.note(format!("gamma.{}", c.ob_label(&y)), g.elements(&y)?.len());
        }
        r.extend(gamma_findings(&n, c.clone())?);
        return Ok(r);
    }
    let gd = GammaDiagram::new(n.clone(), c.clone())?;
    let mut r = Report::new("sheaf psi");
    for e in 0..n.algebra.len() {
        let o = gd.psi_forward(e)?;
        r.note(format!("psi.{}", n.algebra.name(e)), gd.diag.obj_label(&o));
    }
    r.extend(gd.psi_findings()?);
    Ok(r)
}

fn decompose(inputs: &mut Inputs, g: &Global, a: &DecomposeArgs) -> Result<Report> {
    let c = inputs.category(&a.cat, g)?;
    let spec = inputs.load(&a.fun)?.functor_spec()?.clone();
    on_base!(c, c => {
        let f = AnyFunctor::from_spec(&c, &spec)?;
        let dec = if a.experiment { decompose_experiment(f)? } else { decompose_regular(f)? };
        let supports = dec.supports()?;
        let mut r = dec.report;
        for (i, s) in supports.iter().enumerate() {
            let names: Vec<String> = s.iter().map(|x| c.ob_label(x)).collect();
            r.note(format!("model.{i}"), format!("{{{}}}", names.join(",")));
        }
        Ok(r)
    })
}
