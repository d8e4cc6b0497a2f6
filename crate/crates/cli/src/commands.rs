use std::path::Path;

use finite_algebra::{prime_power, GaloisField};
use group_graph_code::{
    code_to_lines, coset_graph, coset_spectrum, diffset_lines, galois_ring_rds, rds_cover_graph, rds_to_mubs, semifield_rds,
    singer_difference_set, tank_trap_cover, DiffSetInput, DifferenceSetKind, GgcError, GraphWithSpectrum, LinearCode,
};
use jacobi_bounds::{
    absolute_bound, annihilator_bound, flat_eal_bound, fmt_rational, mub_bound, parse_rational, real_absolute_bound, real_mub_gate,
    welch_bound, BoundMode, JacobiFamily, Rat,
};
use lineset_core::{real_doubling, Field, LineSet, LineSetError};
use mub_constructions::{alltop_mubs, spin_model_mubs, wf_mubs, MubError, MubFamily, SemifieldTable};
use num_traits::{One, Zero};
use scheme_algebra::{gram_algebra_check, scheme_from_lineset_seeded, seidel_analysis, SchemeReport};
use serde_json::Value;
use sic_constructions::{appleby_candidates, builtin_fiducial, verify_sic, wh_orbit, SicError};

use crate::report::{fmt_num, fmt_sci, Report};
use crate::summary::{fmt_angle, summarize, Summary};
use crate::{
    BoundsArgs, CliError, Command, Construct, Expectation, Export, FiducialChoice, LinesArgs, MubArgs, MubMethod, RunConfig, SchemeArgs,
    SicArgs, VerifyArgs,
};

type Res<T> = Result<T, CliError>;

pub fn dispatch(cfg: &RunConfig, cmd: &Command) -> Res<Report> {
    match cmd {
        Command::Construct { what } => match what {
            Construct::Mub(a) => construct_mub(cfg, a),
            Construct::Sic(a) => construct_sic(cfg, a),
            Construct::Lines(a) => construct_lines(cfg, a),
        },
        Command::Verify(a) => verify(cfg, a),
        Command::Bounds(a) => bounds(cfg, a),
        Command::Scheme(a) => scheme(cfg, a),
        Command::Export { what } => export(cfg, what),
    }
}

fn path_str(p: &Option<impl AsRef<Path>>) -> String {
    p.as_ref().map_or("none".into(), |p| p.as_ref().display().to_string())
}

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn read_text(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Res<()> {
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read_lineset(cfg: &RunConfig, path: &Path) -> Res<LineSet> {
    let x = match LineSet::read(path) {
        Ok(x) => x,
        Err(LineSetError::Io(m)) => return Err(CliError::Usage(m)),
        Err(e) => return Err(CliError::from_lineset(e)),
    };
    Ok(match cfg.tol {
        Some(t) => x.with_tol(t),
        None => x,
    })
}

fn mub_error(e: MubError) -> CliError {
    match e {
        MubError::LineSet(l) => CliError::Internal(l.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn sic_error(e: SicError) -> CliError {
    match e {
        SicError::UnsupportedDimension(_) | SicError::NeedOddDimension(_) | SicError::Jacobi(_) => CliError::Usage(e.to_string()),
        other => CliError::Internal(other.to_string()),
    }
}

fn ggc_error(e: GgcError) -> CliError {
    match e {
        GgcError::Parse(_) | GgcError::BadElement(_) | GgcError::RepeatedElement(_) | GgcError::BadCode(_) | GgcError::Algebra(_) => {
            CliError::Malformed(e.to_string())
        }
        GgcError::TooLarge(_) | GgcError::NotSubgroup | GgcError::DoesNotGenerate { .. } | GgcError::Hypothesis { .. } => {
            CliError::Usage(e.to_string())
        }
        other => CliError::Internal(other.to_string()),
    }
}

fn finish_construct(x: &LineSet, output: &Option<std::path::PathBuf>, r: &mut Report) -> Res<Summary> {
    let sum = summarize(x, r)?;
    if let Some(path) = output {
        x.write(path).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    r.push("written", path_str(output));
    Ok(sum)
}

fn rds_family(q: u64) -> Res<MubFamily> {
    let (p, m) = prime_power(q).ok_or_else(|| CliError::Usage(format!("{q} is not a prime power")))?;
    let inst = if p == 2 {
        galois_ring_rds(m).map_err(ggc_error)?
    } else {
        let f = GaloisField::new(p as u32, m, None).map_err(|e| CliError::Usage(e.to_string()))?;
        semifield_rds(&SemifieldTable::from_field(&f).map_err(mub_error)?).map_err(ggc_error)?
    };
    let n = inst.n.as_ref().ok_or_else(|| CliError::Internal("relative difference set without N".into()))?;
    rds_to_mubs(&inst.group, &inst.d, n).map_err(ggc_error)
}

fn construct_mub(cfg: &RunConfig, a: &MubArgs) -> Res<Report> {
    let method = match a.method {
        MubMethod::Wf => "wf",
        MubMethod::Alltop => "alltop",
        MubMethod::Spin => "spin",
        MubMethod::Rds => "rds",
    };
    let header = cfg.header(
        "construct mub",
        vec![kv("dim", a.dim), kv("method", method), kv("bases", a.bases.map_or("all".into(), |b| b.to_string())), kv("output", path_str(&a.output))],
        false,
    );
    let mut r = Report::new("construct mub", header);
    let family = match a.method {
        MubMethod::Wf => wf_mubs(a.dim).map_err(mub_error)?,
        MubMethod::Alltop => alltop_mubs(a.dim).map_err(mub_error)?,
        MubMethod::Spin => spin_model_mubs(a.dim as usize).map_err(mub_error)?,
        MubMethod::Rds => rds_family(a.dim)?,
    };
    let family = match a.bases {
        Some(0) => return Err(CliError::Usage("--bases must be positive".into())),
        Some(k) if k > family.len() => return Err(CliError::Usage(format!("the family has only {} bases", family.len()))),
        Some(k) => family.truncate(k),
        None => family,
    };
    let x = family.to_lineset(cfg.build_tol()).map_err(|e| CliError::Internal(e.to_string()))?;
    let sum = finish_construct(&x, &a.output, &mut r)?;
    if !sum.mub.as_ref().is_some_and(|m| m.unbiased) {
        return Err(CliError::Internal("constructed family is not unbiased".into()));
    }
    Ok(r)
}

fn construct_sic(cfg: &RunConfig, a: &SicArgs) -> Res<Report> {
    let fid = match a.fiducial {
        FiducialChoice::Builtin => "builtin",
        FiducialChoice::Appleby => "appleby",
    };
    let header = cfg.header("construct sic", vec![kv("dim", a.dim), kv("fiducial", fid), kv("output", path_str(&a.output))], false);
    let mut r = Report::new("construct sic", header);
    let tol = cfg.build_tol();
    let x = match a.fiducial {
        FiducialChoice::Builtin => {
            let x = wh_orbit(&builtin_fiducial(a.dim).map_err(sic_error)?, tol).map_err(sic_error)?;
            if !verify_sic(&x).map_err(sic_error)?.is_sic {
                return Err(CliError::Internal(format!("builtin orbit in dimension {} is not a SIC", a.dim)));
            }
            r.push("fiducial", "builtin");
            x
        }
        FiducialChoice::Appleby => {
            let cands = appleby_candidates(a.dim, tol).map_err(sic_error)?;
            r.push("appleby roots", cands.len());
            match cands.iter().find(|c| c.report.is_sic) {
                Some(c) => {
                    r.push("fiducial", format!("appleby {:?}", c.candidate.source));
                    wh_orbit(&c.candidate, tol).map_err(sic_error)?
                }
                None => {
                    for c in &cands {
                        r.fail(format!("candidate {:?}: max angle deviation {}", c.candidate.source, fmt_sci(c.report.max_deviation)));
                    }
                    r.fail(format!("no verified Appleby fiducial in dimension {}", a.dim));
                    return Ok(r);
                }
            }
        }
    };
    finish_construct(&x, &a.output, &mut r)?;
    Ok(r)
}

fn construct_lines(cfg: &RunConfig, a: &LinesArgs) -> Res<Report> {
    let (source, value) = if let Some(q) = a.singer {
        ("singer", q.to_string())
    } else if let Some(p) = &a.diffset {
        ("diffset", p.display().to_string())
    } else if let Some(p) = &a.code {
        ("code", p.display().to_string())
    } else {
        ("double", path_str(&a.double))
    };
    let mut rest = vec![kv("source", source), kv(source, &value)];
    if a.code.is_some() {
        rest.push(kv("variant", a.variant));
    }
    rest.push(kv("output", path_str(&a.output)));
    let mut r = Report::new("construct lines", cfg.header("construct lines", rest, a.double.is_some()));
    let tol = cfg.build_tol();
    let mut expect_tight = false;
    let x = if let Some(q) = a.singer {
        let (g, d) = singer_difference_set(q).map_err(ggc_error)?;
        push_kind(&mut r, &group_graph_code::classify_difference_set(&g, &d, None).map_err(ggc_error)?.kind);
        expect_tight = true;
        diffset_lines(&g, &d, tol).map_err(ggc_error)?
    } else if let Some(p) = &a.diffset {
        let inst = DiffSetInput::from_json(&read_text(p)?).map_err(ggc_error)?;
        push_kind(&mut r, &inst.classify().map_err(ggc_error)?.kind);
        diffset_lines(&inst.group, &inst.d, tol).map_err(ggc_error)?
    } else if let Some(p) = &a.code {
        let c = LinearCode::from_csv(&read_text(p)?).map_err(ggc_error)?;
        r.push("code", format!("{} length {} size {}", c.alphabet().label(), c.length(), c.size()));
        code_to_lines(&c, a.variant, tol).map_err(ggc_error)?
    } else {
        let src = read_lineset(cfg, a.double.as_deref().expect("clap requires a source"))?;
        let doubled = real_doubling(&src).map_err(CliError::from_lineset)?;
        r.push("doubled from", format!("{} lines in C^{}", src.len(), src.dim()));
        doubled
    };
    let sum = finish_construct(&x, &a.output, &mut r)?;
    if expect_tight && sum.relative_met != Some(true) {
        return Err(CliError::Internal("Singer lines miss the relative bound".into()));
    }
    Ok(r)
}

fn push_kind(r: &mut Report, kind: &DifferenceSetKind) {
    let text = match kind {
        DifferenceSetKind::Plain { v, k, lambda } => format!("({v},{k},{lambda}) difference set"),
        DifferenceSetKind::Relative { m, n, k, lambda } => format!("({m},{n},{k},{lambda}) relative difference set"),
        DifferenceSetKind::None => "not a difference set".into(),
    };
    r.push("difference set", text);
}

fn verify(cfg: &RunConfig, a: &VerifyArgs) -> Res<Report> {
    let expects: Vec<&str> = a
        .expect
        .iter()
        .map(|e| match e {
            Expectation::Mub => "mub",
            Expectation::Sic => "sic",
            Expectation::Equiangular => "equiangular",
            Expectation::Tight => "tight",
        })
        .collect();
    let header = cfg.header(
        "verify",
        vec![
            kv("input", a.input.display()),
            kv("expect", if expects.is_empty() { "none".into() } else { expects.join(",") }),
            kv("strength", a.strength.map_or("none".into(), |t| t.to_string())),
            kv("deep", a.deep),
        ],
        true,
    );
    let mut r = Report::new("verify", header);
    let x = read_lineset(cfg, &a.input)?;
    let sum = summarize(&x, &mut r)?;
    for e in &a.expect {
        match e {
            Expectation::Mub => match &sum.mub {
                None => r.fail("mub: no basis labels in the file"),
                Some(m) if !m.unbiased => {
                    for f in &m.failures {
                        r.fail(format!("mub: {f}"));
                    }
                }
                Some(_) => {}
            },
            Expectation::Sic => {
                let s = verify_sic(&x).map_err(sic_error)?;
                r.push("sic", s.is_sic);
                if !s.is_sic {
                    r.fail(format!(
                        "sic: {} lines (want {}), max deviation from 1/(d+1) {}",
                        s.count,
                        x.dim() * x.dim(),
                        fmt_sci(s.max_deviation)
                    ));
                }
            }
            Expectation::Equiangular => {
                if sum.s != 1 || sum.zero_present {
                    r.fail(format!("equiangular: {} distinct angles", sum.s));
                }
            }
            Expectation::Tight => {
                if sum.relative_met != Some(true) {
                    r.fail("tight: the equiangular relative bound is not met");
                }
            }
        }
    }
    if let Some(t) = a.strength {
        if sum.strength < t {
            r.fail(format!("strength: design strength {} is below {t}", sum.strength));
        }
    }
    if a.deep {
        deep_checks(cfg, &x, &sum, &mut r)?;
    }
    Ok(r)
}

fn family_for(x: &LineSet) -> Res<JacobiFamily> {
    JacobiFamily::new(x.dim() as u32).map_err(|e| CliError::Malformed(e.to_string()))
}

fn push_scheme(r: &mut Report, s: &SchemeReport, detailed: bool) {
    r.push("scheme classes", s.classes);
    r.push("scheme valencies", s.valencies.clone());
    r.push("scheme closure residual", fmt_sci(s.closure_residual));
    r.push("scheme closed", s.closed);
    r.push("scheme predicted by design strength", s.predicted_closed);
    if let Some(sp) = &s.spectral {
        r.push("scheme multiplicities", sp.multiplicities.clone());
        r.push("scheme PQ residual", fmt_sci(sp.pq_residual));
        r.push("scheme min Krein", fmt_num(sp.min_krein));
        if detailed {
            let rows = |m: &[Vec<f64>]| Value::Array(m.iter().map(|row| row.iter().map(|&v| fmt_num(v)).collect::<Vec<_>>().into()).collect());
            r.push("scheme P", rows(&sp.p));
            r.push("scheme Q", rows(&sp.q));
            r.push("scheme reconstruction residual", fmt_sci(sp.reconstruction_residual));
        }
    }
    r.push("scheme certified", s.certified());
}

fn algebra_checks(cfg: &RunConfig, x: &LineSet, sum: &Summary, r: &mut Report, detailed: bool) -> Res<SchemeReport> {
    let fam = family_for(x)?;
    let s = scheme_from_lineset_seeded(x, &fam, cfg.seed).map_err(|e| CliError::Internal(e.to_string()))?;
    push_scheme(r, &s, detailed);
    let g = gram_algebra_check(x).map_err(|e| CliError::Internal(e.to_string()))?;
    r.push("gram algebra closure residual", fmt_sci(g.closure_residual));
    r.push("gram algebra closed", g.closed);
    r.push("gram quadratic", format!("G² = {} G + {} I", fmt_num(g.quadratic.0), fmt_num(g.quadratic.1)));
    let gram_required = sum.mub.as_ref().is_some_and(|m| m.unbiased) || sum.relative_met == Some(true);
    if gram_required && !g.closed {
        r.fail(format!("gram algebra: residual {} for a set whose Gram span must close", fmt_sci(g.closure_residual)));
    }
    if x.field() == Field::Real && sum.s == 1 && !sum.zero_present {
        let sd = seidel_analysis(x).map_err(|e| CliError::Internal(e.to_string()))?;
        r.push("seidel spectrum", sd.spectrum.iter().map(|(e, m)| format!("{}^({m})", fmt_num(*e))).collect::<Vec<_>>());
        r.push("seidel two eigenvalues", sd.two_eigenvalue);
        if sd.relative_tight && sd.spectrum_matches != Some(true) {
            r.fail("seidel: relative bound is tight but the spectrum does not match");
        }
    }
    Ok(s)
}

fn deep_checks(cfg: &RunConfig, x: &LineSet, sum: &Summary, r: &mut Report) -> Res<()> {
    let s = algebra_checks(cfg, x, sum, r, false)?;
    if (s.predicted_closed || s.closed) && !s.certified() {
        r.fail(format!("scheme: closure residual {}, certification failed", fmt_sci(s.closure_residual)));
    }
    Ok(())
}

fn scheme(cfg: &RunConfig, a: &SchemeArgs) -> Res<Report> {
    let header = cfg.header("scheme", vec![kv("input", a.input.display()), kv("output", path_str(&a.output))], true);
    let mut r = Report::new("scheme", header);
    let x = read_lineset(cfg, &a.input)?;
    let mut scratch = Report::default();
    let sum = summarize(&x, &mut scratch)?;
    r.push("lines", x.len());
    r.push("dim", x.dim());
    r.push("degree set", sum.angles.iter().map(|&v| fmt_angle(v, x.tol())).collect::<Vec<_>>());
    r.push("design strength", sum.strength);
    let s = algebra_checks(cfg, &x, &sum, &mut r, true)?;
    if let Some(p) = &a.output {
        write_text(p, &s.to_json())?;
    }
    if !s.certified() {
        r.fail(format!("scheme: not a certified association scheme (closure residual {})", fmt_sci(s.closure_residual)));
    }
    Ok(r)
}

fn bounds(cfg: &RunConfig, a: &BoundsArgs) -> Res<Report> {
    let header = cfg.header(
        "bounds",
        vec![
            kv("dim", a.dim),
            kv("angles", a.angles.clone().unwrap_or_else(|| "none".into())),
            kv("real", a.real),
            kv("lines", a.lines.map_or("none".into(), |n| n.to_string())),
        ],
        false,
    );
    let mut r = Report::new("bounds", header);
    let d = a.dim;
    let fam = JacobiFamily::new(d).map_err(|e| CliError::Usage(e.to_string()))?;
    let big = |e: jacobi_bounds::JacobiError| CliError::Internal(e.to_string());
    for s in 1..=3u32 {
        r.push(format!("absolute s={s}"), absolute_bound(d, s, false).map_err(big)?.to_string());
        r.push(format!("absolute s={s} (0 ∈ A)"), absolute_bound(d, s, true).map_err(big)?.to_string());
    }
    let (lines, bases) = mub_bound(d);
    r.push("MUB", format!("{lines} lines / {bases} bases"));
    r.push("flat equiangular", flat_eal_bound(d as u64));
    if let Some(n) = a.lines {
        let w = welch_bound(d, n).map_err(|e| CliError::Usage(e.to_string()))?;
        r.push(format!("Welch ({n} lines)"), fmt_rational(&w));
    }
    if let Some(text) = &a.angles {
        let mut angles = Vec::new();
        for part in text.split(',') {
            let q = parse_rational(part).ok_or_else(|| CliError::Usage(format!("cannot parse angle '{}'", part.trim())))?;
            if q < Rat::zero() || q >= Rat::one() {
                return Err(CliError::Usage(format!("angle {} is outside [0, 1)", part.trim())));
            }
            angles.push(q);
        }
        angles.sort();
        angles.dedup();
        let mut best: Option<Rat> = None;
        for mode in [BoundMode::SdistG, BoundMode::SdistH] {
            match annihilator_bound(&fam, &angles, mode, None) {
                Ok(b) => {
                    let ok = b.applicable();
                    r.push(
                        format!("relative ({})", mode.name()),
                        format!("{}{}", fmt_rational(&b.bound), if ok { "" } else { " [hypotheses fail]" }),
                    );
                    if ok && best.as_ref().is_none_or(|x| b.bound < *x) {
                        best = Some(b.bound.clone());
                    }
                }
                Err(e) => r.push(format!("relative ({})", mode.name()), format!("not applicable: {e}")),
            }
        }
        r.push("relative", best.map_or("not applicable".into(), |b| fmt_rational(&b)));
    }
    if a.real {
        r.push("real MUB gate", real_mub_gate(d).to_string());
        for s in 1..=3u32 {
            r.push(format!("real absolute s={s}"), real_absolute_bound(d, s).map_err(big)?.to_string());
        }
    }
    Ok(r)
}

fn export(cfg: &RunConfig, what: &Export) -> Res<Report> {
    match what {
        Export::Angles { input, output } => {
            let mut r = Report::new("export angles", cfg.header("export angles", vec![kv("input", input.display()), kv("output", output.display())], true));
            let x = read_lineset(cfg, input)?;
            write_text(output, &x.angles_csv())?;
            r.push("pairs", x.len() * (x.len() - 1) / 2);
            Ok(r)
        }
        Export::Gram { input, output } => {
            let mut r = Report::new("export gram", cfg.header("export gram", vec![kv("input", input.display()), kv("output", output.display())], true));
            let x = read_lineset(cfg, input)?;
            let g = x.gram();
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Internal(e.to_string());
            w.write_record(["i", "j", "re", "im"]).map_err(io)?;
            for i in 0..x.len() {
                for j in 0..x.len() {
                    let z = g[(i, j)];
                    w.write_record([i.to_string(), j.to_string(), format!("{:.15e}", z.re), format!("{:.15e}", z.im)]).map_err(io)?;
                }
            }
            let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
            write_text(output, &String::from_utf8_lossy(&bytes))?;
            r.push("entries", x.len() * x.len());
            Ok(r)
        }
        Export::Cover { tank_trap, rds, output } => {
            let source = if *tank_trap { "tank-trap".to_string() } else { path_str(rds) };
            let mut r = Report::new("export cover", cfg.header("export cover", vec![kv("source", &source), kv("output", output.display())], false));
            let result = if *tank_trap {
                tank_trap_cover()
            } else {
                let inst = DiffSetInput::from_json(&read_text(rds.as_deref().expect("clap requires a source"))?).map_err(ggc_error)?;
                let n = inst.n.clone().ok_or_else(|| CliError::Usage("the difference-set file needs N for a cover".into()))?;
                rds_cover_graph(&inst.group, &inst.d, &n)
            };
            match result {
                Ok(g) => {
                    push_cover(&mut r, &g);
                    write_text(output, &g.graph.to_edge_list())?;
                }
                Err(e @ (GgcError::NotCover(_) | GgcError::NotDistanceRegular(_) | GgcError::NotSemiRegular(_))) => r.fail(e.to_string()),
                Err(e) => return Err(ggc_error(e)),
            }
            Ok(r)
        }
        Export::CosetGraph { code, output } => {
            let mut r = Report::new("export coset-graph", cfg.header("export coset-graph", vec![kv("code", code.display()), kv("output", output.display())], false));
            let c = LinearCode::from_csv(&read_text(code)?).map_err(ggc_error)?;
            let g = coset_graph(&c).map_err(ggc_error)?;
            let closed = coset_spectrum(&c).map_err(ggc_error)?;
            let n = g.syndromes.len();
            let mut text = String::new();
            for u in 0..n {
                for v in u..n {
                    let m = g.adjacency[(u, v)];
                    if m != 0.0 {
                        text.push_str(&format!("{u} {v} {}\n", fmt_num(m)));
                    }
                }
            }
            write_text(output, &text)?;
            r.push("vertices", n);
            r.push("spectrum", closed.iter().map(|(e, m)| format!("{e}^({m})")).collect::<Vec<_>>());
            let mut want: Vec<f64> = closed.iter().flat_map(|(&e, &m)| std::iter::repeat_n(e as f64, m)).collect();
            want.sort_by(f64::total_cmp);
            let dense = g.spectrum();
            let agree = want.len() == dense.len() && want.iter().zip(&dense).all(|(a, b)| (a - b).abs() <= 1e-8);
            r.push("closed form matches dense spectrum", agree);
            if !agree {
                r.fail("coset graph spectrum disagrees with the closed form");
            }
            Ok(r)
        }
    }
}

fn push_cover(r: &mut Report, g: &GraphWithSpectrum) {
    r.push("vertices", g.graph.order());
    r.push("edges", g.graph.edges().len());
    if let Some(a) = &g.intersection_array {
        r.push("intersection array", a.to_string());
    }
    r.push("spectrum", g.eigenvalues.iter().map(|(e, m)| format!("{}^({m})", fmt_num(*e))).collect::<Vec<_>>());
}
