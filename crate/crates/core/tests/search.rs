mod common;

use common::g;
use isozero::floquet::{charpoly_exact, f_coeff_symbolic, periodic_jacobi_symbolic, Potential1D};
use isozero::search::{isospectral_system, scan_candidates, to_macaulay2, verify_candidate};
use isozero::{GaussInt, MultiPoly, VarId};

const GOLDEN_PERIOD_4: &str = "tests/golden/period4.m2";

#[test]
fn period_four_export_matches_golden_file() {
    let text = to_macaulay2(&isospectral_system(4).unwrap());
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join(GOLDEN_PERIOD_4);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let golden = std::fs::read_to_string(&path).expect("golden file present; set UPDATE_GOLDEN=1 to create it");
    assert_eq!(text, golden);
    assert_eq!(text, to_macaulay2(&isospectral_system(4).unwrap()));
}

// zero out everything but slots 1, 2, m+1, m+2, then rename v_{m+1} → v3 and
// v_{m+2} → v4
fn specialize_to_pattern(p: &MultiPoly, m: u32) -> MultiPoly {
    let keep = [1, 2, m + 1, m + 2];
    let mut out = p.clone();
    for i in (1..=2 * m).filter(|i| !keep.contains(i)) {
        out = out.substitute(VarId::v(i), &MultiPoly::zero());
    }
    out = out.substitute(VarId::v(m + 1), &MultiPoly::v(3));
    out.substitute(VarId::v(m + 2), &MultiPoly::v(4))
}

#[test]
fn general_system_specializes_to_pattern_coefficients() {
    for m in 2..=4u32 {
        let system = isospectral_system(2 * m as usize).unwrap();
        let f = f_coeff_symbolic(m as usize).unwrap();
        assert_eq!(system.equations().len(), f.len());
        for (j, (eq, want)) in system.equations().iter().zip(&f).enumerate() {
            assert_eq!(&specialize_to_pattern(eq, m), want, "m = {m}, j = {j}");
        }
    }
}

#[test]
fn equation_count_is_period() {
    for q in 3..=7 {
        assert_eq!(isospectral_system(q).unwrap().equations().len(), q);
    }
}

#[test]
fn scan_results_are_consistent_and_closed_under_conjugation() {
    let palette = [g(0, 0), g(1, 1), g(1, -1), g(-1, 1), g(-1, -1), g(0, 1), g(0, -1)];
    let hits = scan_candidates(4, &[1, 2, 3, 4], &palette).unwrap();
    assert!(hits.len() > 1);
    let found: Vec<Vec<GaussInt>> = hits
        .iter()
        .map(|r| r.candidate.exact_values().unwrap().to_vec())
        .collect();
    for r in &hits {
        assert!(r.isospectral);
        let v = r.candidate.exact_values().unwrap();
        let diag: Vec<MultiPoly> = v.iter().cloned().map(MultiPoly::constant).collect();
        let p_v = charpoly_exact(&periodic_jacobi_symbolic(&diag).unwrap());
        let p_0 = charpoly_exact(&periodic_jacobi_symbolic(&vec![MultiPoly::zero(); 4]).unwrap());
        assert_eq!(p_v, p_0);
        let conj: Vec<GaussInt> = v.iter().map(GaussInt::conj).collect();
        assert!(found.contains(&conj), "conjugate of {v:?} missing");
    }
    let mut sorted = found.clone();
    sorted.dedup();
    assert_eq!(sorted.len(), found.len());
}

#[test]
fn scan_agrees_with_direct_verification_off_solutions() {
    // a palette with no nonzero solution: every assignment verified directly
    let palette = [g(0, 0), g(1, 0), g(0, 1)];
    let hits = scan_candidates(3, &[1, 2, 3], &palette).unwrap();
    let mut direct = Vec::new();
    for a in &palette {
        for b in &palette {
            for c in &palette {
                let v = Potential1D::exact(vec![a.clone(), b.clone(), c.clone()]).unwrap();
                if verify_candidate(&v).unwrap().isospectral {
                    direct.push(v);
                }
            }
        }
    }
    let scanned: Vec<Potential1D> = hits.into_iter().map(|r| r.candidate).collect();
    assert_eq!(scanned, direct);
}

#[test]
fn verify_examples() {
    let four = Potential1D::exact(vec![g(1, 1), g(1, -1), g(-1, 1), g(-1, -1)]).unwrap();
    let r = verify_candidate(&four).unwrap();
    assert!(r.isospectral && r.residuals.values().all(|x| *x == g(0, 0)));
    assert!(verify_candidate(&Potential1D::zero(5).unwrap()).unwrap().isospectral);
}
