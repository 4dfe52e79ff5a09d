//! Acceptance suite. Each criterion prints one `PASS` or `FAIL` line with its
//! runtime; the process exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::{four_slot_values, g, random_matrix};
use isozero::cover::{det_by_covers, det_cofactor, digraph_of_matrix, refine_self_loops, s_closed, s_count, EdgeKey};
use isozero::floquet::{
    closed_form_range, f_closed_form, f_coeff_symbolic, four_slot_potential, identity_check, isospectral_numeric,
    pairs_adjacent, pairs_aligned, pairs_crossed, slot_product, slot_sum, slot_triples, verify_four_slot, Potential1D,
    Quasimomentum, SeparablePotential,
};
use isozero::search::scan_candidates;
use isozero::{GaussInt, MultiPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn run(id: &str, title: &str, budget: Option<Duration>, check: fn() -> Outcome) -> bool {
    let start = Instant::now();
    let mut out = check();
    let took = start.elapsed();
    if let Some(b) = budget {
        if took > b {
            out.ok = false;
            out.detail = format!("{}; over the {:.0}s budget", out.detail, b.as_secs_f64());
        }
    }
    let verdict = if out.ok { "PASS" } else { "FAIL" };
    println!("{id} {verdict} {title}: {} [{:.2}s]", out.detail, took.as_secs_f64());
    out.ok
}

fn charpoly_identity() -> Outcome {
    for m in 2..=10 {
        let r = verify_four_slot(m).expect("m >= 2");
        if !r.equal {
            return fail(format!(
                "m = {m}: P_v = {} but P_0 = {}",
                r.p_v.to_poly(),
                r.p_0.to_poly()
            ));
        }
    }
    pass("P_v = P_0 exactly for m = 2..=10")
}

fn closed_form() -> Outcome {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for m in 2..=6 {
        let f = f_coeff_symbolic(m).expect("m >= 2");
        for k in closed_form_range(m) {
            let closed = f_closed_form(m, k).expect("k in range");
            let symbolic = &f[2 * m - k];
            checked += 1;
            if &closed != symbolic {
                mismatches.push(format!("m = {m}, k = {k}: closed form {closed} vs symbolic {symbolic}"));
            }
        }
    }
    if mismatches.is_empty() {
        pass(format!("{checked} (m, k) pairs agree for m = 2..=6, k = 2..=2m-1"))
    } else {
        fail(mismatches.join("; "))
    }
}

fn s_identity() -> Outcome {
    for m in 0..=14 {
        for p in 0..=7 {
            let (count, closed) = (s_count(m, p), s_closed(m, p));
            if count != closed {
                return fail(format!("S({m}, {p}): {count} covers, formula {closed}"));
            }
        }
    }
    for m in 2..=12 {
        for ell in 1..m {
            let r = identity_check(m, ell).expect("valid (m, ell)");
            if !r.holds() {
                return fail(format!("identity fails at m = {m}, ell = {ell}: {r:?}"));
            }
        }
    }
    pass("S(m,p) = C(m-p,p) for m <= 14, p <= 7; identity holds for m = 2..=12, 1 <= ell < m")
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x15_0ce);
    let (mut refined, mut total) = (0, 0);
    for trial in 0..240 {
        let n = rng.gen_range(1..=6);
        let m = random_matrix(&mut rng, n, 0.4, 3);
        let by_covers = det_by_covers(&digraph_of_matrix(&m));
        let cofactor = det_cofactor(&m).expect("small dimension");
        total += 1;
        if by_covers != cofactor {
            return fail(format!("trial {trial}: covers {by_covers} vs cofactor {cofactor}"));
        }
        let graph = digraph_of_matrix(&m);
        let split: BTreeMap<usize, (MultiPoly, MultiPoly)> = (1..=n)
            .filter_map(|i| graph.edge(&EdgeKey::new(i, i)).map(|e| (i, e.weight.clone())))
            .map(|(i, w)| {
                let part = MultiPoly::constant(g(rng.gen_range(-3..=3), rng.gen_range(-3..=3)));
                (i, (part.clone(), &w - &part))
            })
            .collect();
        if split.is_empty() {
            continue;
        }
        refined += 1;
        let det_refined = det_by_covers(&refine_self_loops(&graph, &split).expect("loops exist"));
        if det_refined != by_covers {
            return fail(format!(
                "trial {trial}: refined determinant {det_refined} vs {by_covers}"
            ));
        }
    }
    pass(format!(
        "{total} random matrices agree; refinement conserves the determinant on {refined} with loops"
    ))
}

fn aggregate_values() -> Outcome {
    let at = four_slot_values();
    let eval = |p: MultiPoly| p.eval_exact(&at).expect("all of v1..v4 assigned");
    let checks = [
        ("sum", slot_sum(), g(0, 0)),
        ("triples", slot_triples(), g(0, 0)),
        ("product", slot_product(), g(4, 0)),
        ("v1v2+v3v4", pairs_adjacent(), g(4, 0)),
        ("v1v3+v2v4", pairs_aligned(), g(-4, 0)),
        ("v1v4+v2v3", pairs_crossed(), g(0, 0)),
    ];
    for (name, poly, want) in checks {
        let got: GaussInt = eval(poly);
        if got != want {
            return fail(format!("{name} = {got}, expected {want}"));
        }
    }
    pass("odd system (0, 0) and even system (4, 4, -4, 0) hold exactly")
}

fn separable_grid() -> Outcome {
    let v = SeparablePotential::new(vec![four_slot_potential(3).unwrap(), Potential1D::zero(3).unwrap()]).unwrap();
    let zero = SeparablePotential::zero(&[6, 3]).unwrap();
    let grid = Quasimomentum::grid(2, 5);
    for k in &grid {
        if !isospectral_numeric(&v, &zero, k, 1e-9).unwrap() {
            return fail(format!("not isospectral at k = {:?}", k.components()));
        }
    }
    let bump = Potential1D::exact(vec![1.into(), 0.into(), 0.into(), 0.into(), 0.into(), 0.into()]).unwrap();
    let control = SeparablePotential::new(vec![bump, Potential1D::zero(3).unwrap()]).unwrap();
    if isospectral_numeric(&control, &zero, &Quasimomentum::zero(2), 1e-9).unwrap() {
        return fail("negative control (1,0,0,0,0,0) reported isospectral at k = 0");
    }
    pass(format!(
        "6Z+3Z four-slot potential matches zero at all {} grid points (tol 1e-9); control rejected",
        grid.len()
    ))
}

fn real_obstruction() -> Outcome {
    let slots = [1, 2, 3, 4];
    let real: Vec<GaussInt> = [0, 1, -1, 2, -2].into_iter().map(GaussInt::from).collect();
    let hits = scan_candidates(4, &slots, &real).expect("small scan");
    if let Some(r) = hits.iter().find(|r| !r.candidate.is_zero()) {
        return fail(format!("real palette produced {:?}", r.candidate.exact_values()));
    }
    let gaussian = [g(0, 0), g(1, 1), g(1, -1), g(-1, 1), g(-1, -1)];
    let target = [g(1, 1), g(1, -1), g(-1, 1), g(-1, -1)];
    let hits = scan_candidates(4, &slots, &gaussian).expect("small scan");
    if !hits.iter().any(|r| r.candidate.exact_values() == Some(&target[..])) {
        return fail("Gaussian palette scan missed (1+i, 1-i, -1+i, -1-i)");
    }
    let nonzero = hits.iter().filter(|r| !r.candidate.is_zero()).count();
    pass(format!(
        "no nonzero real solution in {{0, ±1, ±2}}^4; Gaussian palette yields {nonzero} nonzero solutions including the four-slot one"
    ))
}

fn parity_law() -> Outcome {
    let mut seen = 0;
    for m in 2..=6 {
        let f = f_coeff_symbolic(m).expect("m >= 2");
        for (j, poly) in f.iter().enumerate() {
            let k = 2 * m - j;
            for (mono, _) in poly.terms() {
                seen += 1;
                if mono.degree() as usize % 2 != k % 2 {
                    return fail(format!("m = {m}, k = {k}: monomial {mono} has the wrong parity"));
                }
            }
        }
    }
    pass(format!("{seen} monomials across m = 2..=6, zero exceptions"))
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        run("AC1", "four-slot charpoly identity", secs(10), charpoly_identity),
        run("AC2", "closed form of F coefficients", secs(30), closed_form),
        run("AC3", "S(m,p) and the splitting identity", secs(20), s_identity),
        run("AC4", "determinant oracle equivalence", None, oracle_equivalence),
        run("AC5", "aggregate values at the four-slot point", None, aggregate_values),
        run("AC6", "separable 2D potential on a k-grid", secs(5), separable_grid),
        run(
            "AC7",
            "real-palette obstruction and Gaussian scan",
            secs(60),
            real_obstruction,
        ),
        run("AC8", "monomial parity law", None, parity_law),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
