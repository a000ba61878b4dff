use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use invforms::lemma;
use invforms::parallel::Pool;
use invforms_core::chern_simons::{
    cs_constant, cs_form_via_integral, hopf_polynomial, is_primitive, primitive_degrees, primitive_space, rank, tau,
};
use invforms_core::poly::{invariant_polynomials, killing_poly};
use invforms_core::scalar::{ratio, unit_vector};
use invforms_core::structure::{cartan_borel_facts, full_decomposition, invariant_basis_with, pi_pullback};
use invforms_core::{catalog, ext, Caps, LieAlgebra, Representation, Sequential, SpaceTag, SymPoly, SymmetricPair};

/// Pair, total, even and odd Poincare polynomials.
type Expected = (&'static str, &'static [usize], &'static [usize], &'static [usize]);

const FOUR_PAIRS: [Expected; 4] = [
    ("sl2:cartan", &[1, 0, 1], &[1, 0, 1], &[1]),
    ("sl3:cartan", &[1, 0, 0, 0, 0, 1], &[1], &[1, 0, 0, 0, 0, 1]),
    ("su3:ad-diag(1,1,-1)", &[1, 0, 1, 0, 1], &[1, 0, 1, 0, 1], &[1]),
    ("group:su2", &[1, 0, 0, 1], &[1], &[1, 0, 0, 1]),
];

fn invariants(g: &LieAlgebra, k: usize) -> Vec<SymPoly> {
    invariant_polynomials(&Representation::adjoint(g, SpaceTag::G), k, 4).unwrap()
}

fn cs_holds(g: &LieAlgebra, f: &SymPoly) -> bool {
    let c = cs_constant(f.degree() as u32);
    let t = tau(g, f).unwrap();
    !t.is_zero() && cs_form_via_integral(g, f).unwrap() == t.scale(&c)
}

fn chern_simons_constant() -> Result<String, String> {
    if cs_constant(2) != ratio(1, 6) || cs_constant(3) != ratio(-1, 40) {
        return Err("constants differ from 1/6 and -1/40".into());
    }
    let su2 = catalog::su2();
    let su3 = catalog::su(3);
    let cubic = invariants(&su3, 3);
    if cubic.len() != 1 {
        return Err(format!("su3 has {} cubic invariants", cubic.len()));
    }
    let cases = [
        ("su2 kappa", cs_holds(&su2, &killing_poly(&su2))),
        ("su3 kappa", cs_holds(&su3, &killing_poly(&su3))),
        ("su3 cubic", cs_holds(&su3, &cubic[0])),
    ];
    match cases.iter().find(|c| !c.1) {
        Some((name, _)) => Err(format!("{name}: CS_f != c_k tau(f)")),
        None => Ok("su2 k=2 (1/6), su3 k=2 (1/6), su3 k=3 (-1/40)".into()),
    }
}

fn poincare() -> Result<String, String> {
    for (name, total, _, _) in FOUR_PAIRS {
        let p = ext::poincare_polynomial(&catalog::pair(name).unwrap());
        if p != total {
            return Err(format!("{name}: {p:?} != {total:?}"));
        }
    }
    Ok("sl2:cartan, sl3:cartan, su3:ad-diag(1,1,-1), group:su2".into())
}

fn structure_theorem() -> Result<String, String> {
    for (name, total, even, odd) in FOUR_PAIRS {
        let r = full_decomposition(&catalog::pair(name).unwrap(), name, Caps::default(), &Sequential)
            .map_err(|e| format!("{name}: {e}"))?;
        if !r.verdict() || r.degrees.iter().any(|d| !d.holds) {
            return Err(format!("{name}: verdict false"));
        }
        if r.poincare_total != total || r.poincare_even != even || r.poincare_odd != odd {
            return Err(format!(
                "{name}: {:?} = {:?} x {:?}",
                r.poincare_total, r.poincare_even, r.poincare_odd
            ));
        }
    }
    Ok("all degrees factor for the four pairs".into())
}

fn cartan_chevalley_weil() -> Result<String, String> {
    for (name, g, expected_rank) in [("su2", catalog::su2(), 1), ("su3", catalog::su(3), 2)] {
        let k = killing_poly(&g);
        let k2 = k.sym_product(&k).unwrap();
        if !tau(&g, &k2).unwrap().is_zero() {
            return Err(format!("{name}: tau(kappa^2) != 0"));
        }
        if tau(&g, &k).unwrap().is_zero() {
            return Err(format!("{name}: tau(kappa) = 0"));
        }
        let prims = primitive_space(&g, 3).unwrap();
        let dim = prims.total_dim();
        if dim != expected_rank || rank(&g) != expected_rank {
            return Err(format!("{name}: dim Prim {dim}, rank {}", rank(&g)));
        }
    }
    Ok("tau(kappa^2) = 0, tau(kappa) != 0, dim Prim = rank (1, 2)".into())
}

fn hopf() -> Result<String, String> {
    let pool = Pool::new(4).unwrap();
    for name in ["su2", "su3"] {
        let g = catalog::algebra(name).unwrap();
        let degrees = primitive_degrees(&primitive_space(&g, 4).unwrap());
        let pair = catalog::pair(&format!("group:{name}")).unwrap();
        let total: Vec<i64> = invariant_basis_with(&pair, &pool)
            .dims()
            .iter()
            .map(|&d| d as i64)
            .collect();
        let product = hopf_polynomial(&degrees);
        if product != total {
            return Err(format!("{name}: degrees {degrees:?} give {product:?}, forms {total:?}"));
        }
    }
    Ok("(1+t^3) for su2, (1+t^3)(1+t^5) for su3".into())
}

fn projector_lemma() -> Result<String, String> {
    let instances = lemma::random_instances(2024, 100, lemma::AMBIENT_DIM);
    let passed = instances
        .iter()
        .filter(|i| lemma::check(i).is_ok_and(|w| w.holds))
        .count();
    if passed != 100 {
        return Err(format!("{passed}/100"));
    }
    Ok("100/100 seeded instances in Q^8".into())
}

fn all_closed(pair: &SymmetricPair) -> bool {
    (0..=pair.m_dim()).all(|k| {
        ext::pair_invariant_forms(pair, k)
            .iter()
            .all(|w| ext::ce_differential(pair, w).unwrap().is_zero())
    })
}

fn cartan_closedness() -> Result<String, String> {
    for p in catalog::PAIRS {
        let pair = catalog::pair(p.name).unwrap();
        if !all_closed(&pair) || !all_closed(&pair.dual_pair().unwrap()) {
            return Err(format!("{}: an invariant form is not closed", p.name));
        }
    }
    // su(3) over its maximal torus is reductive but not symmetric
    let flag = SymmetricPair::reductive(&catalog::su(3), vec![unit_vector(8, 6), unit_vector(8, 7)]).unwrap();
    if flag.is_symmetric() || all_closed(&flag) {
        return Err("the non-symmetric pair has closed invariant forms".into());
    }
    Ok(format!(
        "{} catalog pairs closed; SU(3)/T counterexample not closed",
        catalog::PAIRS.len()
    ))
}

fn cartan_borel() -> Result<String, String> {
    let cp2 = catalog::pair("su3:ad-diag(1,1,-1)").unwrap();
    let r = full_decomposition(&cp2, "cp2", Caps::default(), &Sequential).unwrap();
    let dual = cp2.dual_pair().unwrap();
    let two_form = &r
        .even_generators
        .iter()
        .find(|g| g.form.degree() == 2)
        .ok_or("no CP^2 2-form")?
        .form;
    if !pi_pullback(&dual, two_form).unwrap().is_zero() {
        return Err("pi^* of the CP^2 2-form is nonzero".into());
    }
    let even: Vec<_> = r.even_generators.iter().map(|g| g.form.clone()).collect();
    let (kills, _) = cartan_borel_facts(&dual, &even, &[]).unwrap();

    let wu = catalog::pair("sl3:cartan").unwrap();
    let r = full_decomposition(&wu, "wu", Caps::default(), &Sequential).unwrap();
    let dual = wu.dual_pair().unwrap();
    let five_form = &r
        .odd_generators
        .iter()
        .find(|g| g.form.degree() == 5)
        .ok_or("no Wu 5-form")?
        .form;
    if pi_pullback(&dual, five_form).unwrap().is_zero() {
        return Err("pi^* of the Wu 5-form is zero".into());
    }
    let odd: Vec<_> = r.odd_generators.iter().map(|g| g.form.clone()).collect();
    let (_, injective) = cartan_borel_facts(&dual, &[], &odd).unwrap();
    if !kills || !injective {
        return Err(format!("kills even: {kills}, injective on odd: {injective}"));
    }
    Ok("CP^2 2-form -> 0, Wu 5-form -> nonzero".into())
}

fn primitivity() -> Result<String, String> {
    let mut count = 0;
    for name in ["su2", "su3", "su2+su2"] {
        let g = catalog::algebra(name).unwrap();
        for k in 2..=3 {
            for f in invariants(&g, k) {
                let t = tau(&g, &f).unwrap();
                if !is_primitive(&g, &t).unwrap() {
                    return Err(format!("{name}: tau of a degree {k} invariant is not primitive"));
                }
                count += 1;
            }
        }
    }
    let g = catalog::algebra("su2+su2").unwrap();
    let quad = invariants(&g, 2);
    let product = tau(&g, &quad[0]).unwrap().wedge(&tau(&g, &quad[1]).unwrap()).unwrap();
    if product.is_zero() || is_primitive(&g, &product).unwrap() {
        return Err("the decomposable 6-form on su2+su2 passes as primitive".into());
    }
    Ok(format!(
        "{count} tau generators primitive; decomposable 6-form on su2+su2 is not"
    ))
}

fn determinism() -> Result<String, String> {
    let run = |extra: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_invforms"))
            .args(["decompose", "--pair", "su3:ad-diag(1,1,-1)"])
            .args(extra)
            .output()
            .expect("binary runs");
        (out.status.code(), out.stdout)
    };
    let a = run(&[]);
    let b = run(&[]);
    let c = run(&["--jobs", "4"]);
    if a.0 != Some(0) {
        return Err(format!("exit status {:?}", a.0));
    }
    if a.1 != b.1 || a.1 != c.1 {
        return Err("reports differ".into());
    }
    Ok(format!("{} identical bytes across three runs", a.1.len()))
}

type Criterion = (&'static str, fn() -> Result<String, String>, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "Chern-Simons constant",
            chern_simons_constant,
            Some(Duration::from_secs(60)),
        ),
        ("Poincare polynomials", poincare, Some(Duration::from_secs(60))),
        ("structure theorem", structure_theorem, None),
        ("Cartan-Chevalley-Weil kernel", cartan_chevalley_weil, None),
        ("Hopf factorization", hopf, Some(Duration::from_secs(600))),
        ("projector lemma", projector_lemma, Some(Duration::from_secs(10))),
        ("Cartan closedness", cartan_closedness, None),
        ("Cartan-Borel projector facts", cartan_borel, None),
        ("primitivity", primitivity, None),
        ("determinism", determinism, None),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if elapsed > *l => Err(format!("took {elapsed:.1?}, limit {l:?}")),
            (r, _) => r,
        };
        let (word, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => {
                failed += 1;
                ("FAIL", d.clone())
            }
        };
        println!("{word} {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1);
    }
    println!("{}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
