//! Degree set, design strength and bound comparisons shared by `construct`
//! and `verify`.

use jacobi_bounds::{
    absolute_bound, equiangular_relative_bound, fmt_rational, mub_bound, real_absolute_bound, welch_bound, JacobiFamily, Rat,
};
use lineset_core::{design_strength, gram_degree_set, snap_rational, verify_mub, Field, LineSet, MubReport};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::report::Report;
use crate::CliError;

const STRENGTH_CAP: usize = 6;

/// Facts gathered while summarizing, reused by the certification checks.
#[derive(Clone, Debug)]
pub struct Summary {
    pub s: usize,
    pub zero_present: bool,
    pub angles: Vec<f64>,
    pub strength: usize,
    pub mub: Option<MubReport>,
    pub relative_met: Option<bool>,
}

/// Snaps `x` to a rational with denominator at most 10⁶ when they agree within
/// `tol`.
pub fn exact_angle(x: f64, tol: f64) -> Option<Rat> {
    let r = snap_rational(x, 1_000_000);
    let back = r.to_f64()?;
    ((back - x).abs() <= tol.max(1e-12)).then_some(r)
}

pub fn fmt_angle(x: f64, tol: f64) -> String {
    match exact_angle(x, tol) {
        Some(r) => fmt_rational(&r),
        None => format!("{x:.12}"),
    }
}

fn bigint_eq(b: &BigInt, n: usize) -> bool {
    b.to_usize() == Some(n)
}

pub fn summarize(x: &LineSet, report: &mut Report) -> Result<Summary, CliError> {
    let (n, d, tol) = (x.len(), x.dim(), x.tol());
    report.push("lines", n);
    report.push("dim", d);
    report.push("field", if x.field() == Field::Real { "real" } else { "complex" });
    report.push("tol", format!("{tol:e}"));
    let deg = gram_degree_set(x).map_err(CliError::from_lineset)?;
    report.push("degree set", deg.angles.iter().map(|&a| fmt_angle(a, tol)).collect::<Vec<_>>());
    report.push("degree set size", deg.s);
    report.push("angle multiplicities", deg.multiplicities.clone());

    let fam = JacobiFamily::new(d as u32).map_err(|e| CliError::Malformed(e.to_string()))?;
    let strength = if n > 1 { design_strength(x, &fam, STRENGTH_CAP).map_err(CliError::from_lineset)?.strength } else { 0 };
    report.push("design strength", if strength == STRENGTH_CAP { format!("≥{STRENGTH_CAP}") } else { strength.to_string() });
    report.push("1-design", strength >= 1);
    report.push("2-design", strength >= 2);

    if deg.s >= 1 {
        let abs = absolute_bound(d as u32, deg.s as u32, deg.zero_present).map_err(|e| CliError::Internal(e.to_string()))?;
        report.push("absolute bound", abs.to_string());
        report.push("absolute bound met", bigint_eq(&abs, n));
        if x.field() == Field::Real {
            let real = real_absolute_bound(d as u32, deg.s as u32).map_err(|e| CliError::Internal(e.to_string()))?;
            report.push("real absolute bound", real.to_string());
        }
    }

    let mut relative_met = None;
    if deg.s == 1 && !deg.zero_present {
        let alpha = deg.angles[0];
        report.push("alpha", fmt_angle(alpha, tol));
        if let Some(a) = exact_angle(alpha, tol) {
            match equiangular_relative_bound(d as u32, &a) {
                Some(b) => {
                    let met = b == Rat::from_integer(BigInt::from(n));
                    report.push("relative bound", fmt_rational(&b));
                    report.push("relative bound met", met);
                    relative_met = Some(met);
                }
                None => report.push("relative bound", "not applicable (α ≥ 1/d)"),
            }
            if let Ok(w) = welch_bound(d as u32, n as u64) {
                report.push("Welch bound", fmt_rational(&w));
                report.push("Welch bound met", w == a);
            }
        }
    }

    let mub = if x.labels().is_some() {
        let r = verify_mub(x).map_err(CliError::from_lineset)?;
        let (lines, bases) = mub_bound(d as u32);
        report.push("bases", r.count);
        report.push("unbiased", r.unbiased);
        report.push("max unbiasedness deviation", crate::report::fmt_sci(r.max_deviation));
        report.push("MUB bound", format!("{lines} lines / {bases} bases"));
        report.push("MUB bound met", r.unbiased && r.count as u64 == bases);
        Some(r)
    } else {
        None
    };

    Ok(Summary { s: deg.s, zero_present: deg.zero_present, angles: deg.angles, strength, mub, relative_met })
}
