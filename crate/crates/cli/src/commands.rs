use std::path::Path;

use isozero::cover::{
    digraph_of_matrix, enumerate_covers, jacobi_unit, s_closed, s_count, CoverFilter, WeightedDigraph,
};
use isozero::floquet::{
    charpoly_exact, charpoly_numeric, closed_form_range, f_closed_form, f_coeff_symbolic, floquet_matrix_nd,
    four_slot_potential, identity_check, isospectral_deviation, periodic_jacobi_symbolic, verify_four_slot,
    FloquetError, IdentityReport, Potential1D, Quasimomentum, SeparablePotential,
};
use isozero::search::{
    isospectral_system, scan_candidates, to_macaulay2, verify_candidate, CandidateReport, SearchError,
};
use isozero::{ComplexF, GaussInt, MultiPoly, SquareMatrix, VarId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Cli, Command, CoversArgs, IsospectralArgs, Source};

/// Largest Jacobi size `s-table` will enumerate.
const S_TABLE_MAX_M: usize = 30;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Floquet(#[from] FloquetError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

pub struct Report {
    pub ok: bool,
    pub text: String,
    pub json: Value,
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Verify(src) => verify(src),
        Command::Charpoly(a) => charpoly(&a.source, &a.k),
        Command::Covers(a) => covers(a),
        Command::STable(a) => s_table(a.max_m, a.max_p.unwrap_or(a.max_m / 2)),
        Command::Identity(a) => identity(a.m, a.ell),
        Command::FCheck(a) => f_check(a.m),
        Command::ExportM2(a) => export_m2(a.period, a.out.as_deref()),
        Command::Scan(a) => scan(a.period, &a.slots, &a.palette),
        Command::Isospectral(a) => isospectral(a, cli.seed),
    }
}

fn read_potential(path: &Path) -> Result<SeparablePotential, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(SeparablePotential::from_json(&text)?)
}

fn read_axis(path: &Path) -> Result<Potential1D, CliError> {
    let pot = read_potential(path)?;
    match pot.axes() {
        [one] => Ok(one.clone()),
        axes => Err(CliError::Usage(format!(
            "{} has {} axes; this command needs a one-axis potential",
            path.display(),
            axes.len()
        ))),
    }
}

fn source_potential(src: &Source) -> Result<Potential1D, CliError> {
    match (src.m, &src.potential) {
        (Some(m), _) => Ok(four_slot_potential(m)?),
        (None, Some(path)) => read_axis(path),
        (None, None) => unreachable!("clap requires one source"),
    }
}

fn complex_json(z: ComplexF) -> Value {
    json!([z.re, z.im])
}

fn complex_text(z: ComplexF) -> String {
    format!("{:.12e}{:+.12e}i", z.re, z.im)
}

fn values_text(v: &Potential1D) -> String {
    match v.exact_values() {
        Some(vals) => vals.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        None => v
            .complex_values()
            .into_iter()
            .map(complex_text)
            .collect::<Vec<_>>()
            .join(", "),
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn candidate_json(r: &CandidateReport) -> Value {
    let residuals: serde_json::Map<String, Value> = r
        .residuals
        .iter()
        .map(|(j, x)| (j.to_string(), Value::String(x.to_string())))
        .collect();
    json!({
        "values": strings(r.candidate.exact_values().unwrap_or_default()),
        "residuals": residuals,
        "isospectral": r.isospectral,
    })
}

fn verify(src: &Source) -> Result<Report, CliError> {
    if let Some(m) = src.m {
        let r = verify_four_slot(m)?;
        let (p_v, p_0) = (r.p_v.coeffs(), r.p_0.coeffs());
        let mut text = format!(
            "four-slot potential m = {m}, period {}\nv = {}\n",
            2 * m,
            values_text(&four_slot_potential(m)?)
        );
        text += &format!("P_v = {}\nP_0 = {}\n", r.p_v.to_poly(), r.p_0.to_poly());
        let differing: Vec<usize> = (0..p_v.len()).filter(|&j| p_v[j] != p_0[j]).collect();
        if r.equal {
            text += "equal: true\n";
        } else {
            text += "equal: false\n";
            for &j in &differing {
                text += &format!("  l^{j}: {} vs {}\n", p_v[j], p_0[j]);
            }
        }
        return Ok(Report {
            ok: r.equal,
            text,
            json: json!({
                "m": m,
                "period": 2 * m,
                "equal": r.equal,
                "p_v": strings(p_v),
                "p_0": strings(p_0),
                "differing_powers": differing,
            }),
        });
    }
    let v = source_potential(src)?;
    let r = verify_candidate(&v)?;
    let mut text = format!("potential of period {}\nv = {}\n", v.period(), values_text(&v));
    for (j, x) in &r.residuals {
        text += &format!("F_{j} = {x}\n");
    }
    text += &format!("isospectral to zero: {}\n", r.isospectral);
    Ok(Report {
        ok: r.isospectral,
        text,
        json: candidate_json(&r),
    })
}

fn charpoly(src: &Source, k: &[f64]) -> Result<Report, CliError> {
    let v = source_potential(src)?;
    let k = if k.is_empty() { vec![0.0] } else { k.to_vec() };
    if k.len() != 1 {
        return Err(FloquetError::DimensionMismatch { axes: 1, k: k.len() }.into());
    }
    if let (Some(diag), true) = (v.diagonal_exact(), k[0] == 0.0) {
        let p = charpoly_exact(&periodic_jacobi_symbolic(&diag)?);
        let text = format!("det(D - l*I) = {}\n", p.to_poly());
        return Ok(Report {
            ok: true,
            text,
            json: json!({ "exact": true, "k": k, "coeffs": strings(p.coeffs()) }),
        });
    }
    let pot = SeparablePotential::new(vec![v])?;
    let p = charpoly_numeric(&floquet_matrix_nd(&pot, &Quasimomentum::new(k.clone())?)?)?;
    let mut text = String::new();
    for (j, c) in p.coeffs().iter().enumerate() {
        text += &format!("l^{j}: {}\n", complex_text(*c));
    }
    let coeffs: Vec<Value> = p.coeffs().iter().map(|&c| complex_json(c)).collect();
    Ok(Report {
        ok: true,
        text,
        json: json!({ "exact": false, "k": k, "coeffs": coeffs }),
    })
}

fn shifted_digraph(v: &Potential1D) -> Result<WeightedDigraph, CliError> {
    let diag = v.diagonal_exact().ok_or(FloquetError::NotExact)?;
    let d = periodic_jacobi_symbolic(&diag)?;
    let lam = MultiPoly::lambda();
    let shifted = SquareMatrix::from_fn(
        d.dim(),
        |i, j| if i == j { &d[(i, j)] - &lam } else { d[(i, j)].clone() },
    );
    Ok(digraph_of_matrix(&shifted))
}

fn covers(a: &CoversArgs) -> Result<Report, CliError> {
    let graph = match (a.jacobi, a.m, &a.potential) {
        (Some(n), _, _) => jacobi_unit(n),
        (None, Some(m), _) => shifted_digraph(&four_slot_potential(m)?)?,
        (None, None, Some(path)) => shifted_digraph(&read_axis(path)?)?,
        _ => unreachable!("clap requires one graph"),
    };
    let filter = match a.two_cycles {
        Some(p) => CoverFilter::two_cycles(p),
        None => CoverFilter::all(),
    };
    let limit = a.limit.unwrap_or(usize::MAX);
    let mut shown = Vec::new();
    let mut count: u128 = 0;
    for cover in enumerate_covers(&graph, &filter) {
        if shown.len() < limit {
            shown.push(cover.to_string());
        }
        count += 1;
    }
    let mut text = shown.iter().map(|c| format!("{c}\n")).collect::<String>();
    text += &format!("covers: {count}\n");
    Ok(Report {
        ok: true,
        text,
        json: json!({
            "vertices": graph.num_vertices(),
            "two_cycles": a.two_cycles,
            "count": count.to_string(),
            "covers": shown,
        }),
    })
}

fn s_table(max_m: usize, max_p: usize) -> Result<Report, CliError> {
    if max_m > S_TABLE_MAX_M {
        return Err(CliError::Usage(format!(
            "--max-m is limited to {S_TABLE_MAX_M}, got {max_m}"
        )));
    }
    let mut ok = true;
    let mut text = String::from("m \\ p");
    for p in 0..=max_p {
        text += &format!("\t{p}");
    }
    text.push('\n');
    let mut rows = Vec::new();
    for m in 0..=max_m {
        text += &m.to_string();
        let mut row = Vec::new();
        for p in 0..=max_p {
            let (count, closed) = (s_count(m, p), s_closed(m, p));
            if count == closed {
                text += &format!("\t{count}");
            } else {
                ok = false;
                text += &format!("\t{count}!={closed}");
            }
            row.push(json!({ "p": p, "count": count.to_string(), "closed": closed.to_string() }));
        }
        text.push('\n');
        rows.push(json!({ "m": m, "entries": row }));
    }
    text += &format!("enumeration matches C(m-p, p): {ok}\n");
    Ok(Report {
        ok,
        text,
        json: json!({ "agree": ok, "rows": rows }),
    })
}

fn identity_json(r: &IdentityReport) -> Value {
    json!({
        "m": r.m,
        "ell": r.ell,
        "lhs_count": r.lhs_count.to_string(),
        "lhs_closed": r.lhs_closed.to_string(),
        "rhs_count": r.rhs_count.to_string(),
        "rhs_closed": r.rhs_closed.to_string(),
        "with_middle": r.with_middle.to_string(),
        "without_middle": r.without_middle.to_string(),
        "holds": r.holds(),
    })
}

fn identity(m: usize, ell: Option<usize>) -> Result<Report, CliError> {
    let ells: Vec<usize> = match ell {
        Some(l) => vec![l],
        None => (1..m).collect(),
    };
    let reports = ells
        .into_iter()
        .map(|l| identity_check(m, l))
        .collect::<Result<Vec<_>, _>>()?;
    let mut text = String::new();
    for r in &reports {
        text += &format!(
            "m = {} ell = {}: S(2m-2, ell-1) = {} (formula {}), sum = {} (formula {}), covers with/without middle 2-cycle = {}/{}: {}\n",
            r.m,
            r.ell,
            r.lhs_count,
            r.lhs_closed,
            r.rhs_count,
            r.rhs_closed,
            r.with_middle,
            r.without_middle,
            if r.holds() { "holds" } else { "FAILS" }
        );
    }
    let ok = reports.iter().all(IdentityReport::holds);
    Ok(Report {
        ok,
        text,
        json: json!({ "holds": ok, "reports": reports.iter().map(identity_json).collect::<Vec<_>>() }),
    })
}

fn f_check(m: usize) -> Result<Report, CliError> {
    let f = f_coeff_symbolic(m)?;
    let at = [
        GaussInt::new(1, 1),
        GaussInt::new(1, -1),
        GaussInt::new(-1, 1),
        GaussInt::new(-1, -1),
    ]
    .into_iter()
    .enumerate()
    .map(|(i, z)| (VarId::v(i as u32 + 1), z))
    .collect();
    let mut ok = true;
    let mut text = String::new();
    let mut rows = Vec::new();
    for k in 1..=2 * m {
        let symbolic = &f[2 * m - k];
        let closed = if closed_form_range(m).contains(&k) {
            Some(f_closed_form(m, k)?)
        } else {
            None
        };
        let agrees = closed.as_ref().map(|c| c == symbolic);
        let value = symbolic.eval_exact(&at).expect("pattern uses v1..v4 only");
        let vanishes = value == GaussInt::from(0);
        ok &= vanishes && agrees != Some(false);
        let status = match agrees {
            Some(true) => "closed form agrees",
            Some(false) => "closed form DIFFERS",
            None => "no closed form",
        };
        text += &format!(
            "k = {k}: F_{} = {symbolic}\n  {status}; value at the four-slot point {value}\n",
            2 * m - k
        );
        if let (Some(false), Some(c)) = (agrees, &closed) {
            text += &format!("  closed form: {c}\n");
        }
        rows.push(json!({
            "k": k,
            "index": 2 * m - k,
            "symbolic": symbolic.to_string(),
            "closed_form": closed.as_ref().map(ToString::to_string),
            "agrees": agrees,
            "value": value.to_string(),
        }));
    }
    text += &format!("all checks pass: {ok}\n");
    Ok(Report {
        ok,
        text,
        json: json!({ "m": m, "ok": ok, "coefficients": rows }),
    })
}

fn export_m2(period: usize, out: Option<&Path>) -> Result<Report, CliError> {
    let system = isospectral_system(period)?;
    let script = to_macaulay2(&system);
    match out {
        Some(path) => {
            std::fs::write(path, &script).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            Ok(Report {
                ok: true,
                text: format!("wrote {} equations to {}\n", system.equations().len(), path.display()),
                json: json!({ "period": period, "out": path.display().to_string(), "equations": system.equations().len() }),
            })
        }
        None => Ok(Report {
            ok: true,
            json: json!({ "period": period, "script": script }),
            text: script,
        }),
    }
}

fn parse_palette(text: &str) -> Result<Vec<GaussInt>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<GaussInt>()
                .map_err(|e| CliError::Usage(format!("palette entry {s:?}: {e}")))
        })
        .collect()
}

fn scan(period: usize, slots: &[usize], palette: &str) -> Result<Report, CliError> {
    let values = parse_palette(palette)?;
    let hits = scan_candidates(period, slots, &values)?;
    let mut text = String::new();
    for r in &hits {
        text += &format!("({})\n", values_text(&r.candidate));
    }
    let nonzero = hits.iter().filter(|r| !r.candidate.is_zero()).count();
    text += &format!("solutions: {} ({nonzero} nonzero)\n", hits.len());
    Ok(Report {
        ok: true,
        text,
        json: json!({
            "period": period,
            "slots": slots,
            "palette": strings(&values),
            "solutions": hits.iter().map(candidate_json).collect::<Vec<_>>(),
        }),
    })
}

fn isospectral(a: &IsospectralArgs, seed: u64) -> Result<Report, CliError> {
    let v = read_potential(&a.potential)?;
    let w = match &a.against {
        Some(path) => read_potential(path)?,
        None => SeparablePotential::zero(&v.periods())?,
    };
    let d = v.dim();
    let points: Vec<Quasimomentum> = if !a.k.is_empty() {
        vec![Quasimomentum::new(a.k.clone())?]
    } else if let Some(n) = a.random {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| Quasimomentum::new((0..d).map(|_| rng.gen::<f64>()).collect()))
            .collect::<Result<_, _>>()?
    } else {
        Quasimomentum::grid(d, a.grid.unwrap_or(5))
    };
    let mut ok = true;
    let mut text = String::new();
    let mut rows = Vec::new();
    for k in &points {
        let dev = isospectral_deviation(&v, &w, k)?;
        let same = dev <= a.tol;
        ok &= same;
        text += &format!(
            "k = {:?}: deviation {dev:.3e} {}\n",
            k.components(),
            if same { "ok" } else { "DIFFERS" }
        );
        rows.push(json!({ "k": k.components(), "deviation": dev, "isospectral": same }));
    }
    text += &format!("isospectral at all {} points (tol {:e}): {ok}\n", points.len(), a.tol);
    Ok(Report {
        ok,
        text,
        json: json!({ "periods": v.periods(), "tol": a.tol, "isospectral": ok, "points": rows }),
    })
}
