use num_complex::Complex64;
use serde_json::{json, Map, Value};

use rank2lift::angular::{
    angle_spectrum_projections, angle_spectrum_vectors, mub_construct, verify_mub, AngleSpectrum,
};
use rank2lift::frames::{harmonic_parseval, lift_fusion_to_fusion, tight_fusion_existence, FusionFrame};
use rank2lift::geometry::{Tolerance, Vector};
use rank2lift::realify::{lift_subspace, rank2};
use rank2lift::retrieval::{
    complement_property, complex_pr_check, complex_projection_pr_check, distinguishes, edidin_check, full_spark,
    lift_vector_family, norm_retrieval_check, unimodular_related, CheckReport, ProjectionFamily, SearchOptions,
    Verdict,
};
use rank2lift::Error;

use crate::format::{vector_to_json, AnyFamily, Family, JsonScalar, Kind, Metadata};
use crate::report::ReportFile;
use crate::CliError;

/// Settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub opts: SearchOptions<f64>,
    pub width: f64,
}

impl Context {
    pub fn tol(&self) -> &Tolerance<f64> {
        &self.opts.tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckKind {
    Pr,
    Nr,
    Complement,
    Fullspark,
    Mub,
    Angles,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Pr => "pr",
            CheckKind::Nr => "nr",
            CheckKind::Complement => "complement",
            CheckKind::Fullspark => "fullspark",
            CheckKind::Mub => "mub",
            CheckKind::Angles => "angles",
        }
    }
}

fn bounds_json((a, b): (f64, f64)) -> Value {
    json!([a, b])
}

fn to_complex(v: &Vector<f64>) -> Vector<Complex64> {
    Vector::new(v.coords().iter().map(|&x| Complex64::new(x, 0.0)).collect()).expect("nonempty")
}

/// Real lift of a complex family.
pub fn lift(fam: &AnyFamily, ctx: &Context) -> Result<Family<f64>, CliError> {
    let AnyFamily::Complex(fam) = fam else {
        return Err(Error::RealInput.into());
    };
    let tol = ctx.tol();
    let mut out;
    let extra = match fam.kind {
        Kind::Vectors => {
            let vs = fam.vectors()?;
            let subs = vs
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    rank2(v, tol)
                        .map(|p| p.into_subspace())
                        .map_err(|_| Error::ZeroVector(i))
                })
                .collect::<Result<Vec<_>, _>>()?;
            out = Family::from_subspaces(&subs, None);
            json!({ "source": "vectors", "weights": vs.iter().map(|v| v.norm()).collect::<Vec<_>>() })
        }
        Kind::Subspaces => {
            let subs = fam
                .subspaces(tol)?
                .iter()
                .map(|w| lift_subspace(w, tol).map(|l| l.into_real()))
                .collect::<Result<Vec<_>, _>>()?;
            out = Family::from_subspaces(&subs, None);
            json!({ "source": "subspaces" })
        }
        Kind::Fusion => {
            let ff = FusionFrame::new(fam.subspaces(tol)?, fam.weights(), tol)?;
            let lifted = lift_fusion_to_fusion(&ff, tol)?;
            out = Family::from_subspaces(lifted.subspaces(), Some(lifted.weights()));
            json!({
                "source": "fusion",
                "input_bounds": bounds_json(ff.bounds()),
                "output_bounds": bounds_json(lifted.bounds()),
            })
        }
    };
    out.metadata = Some(Metadata {
        name: fam.metadata.as_ref().and_then(|m| m.name.clone()),
        seed: None,
        extra: Some(extra),
    });
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerateKind {
    Harmonic { m: usize, n: usize },
    Mub { p: u64 },
    TightFusion { m: usize, n: usize },
}

/// Generated family with its verification summary in `metadata.extra`.
pub fn generate(kind: GenerateKind, ctx: &Context) -> Result<AnyFamily, CliError> {
    let tol = ctx.tol();
    let meta = |name: String, extra: Value| {
        Some(Metadata {
            name: Some(name),
            seed: None,
            extra: Some(extra),
        })
    };
    Ok(match kind {
        GenerateKind::Harmonic { m, n } => {
            let f = harmonic_parseval::<f64>(m, n, tol)?;
            let flags = f.flags();
            let mut fam = Family::from_vectors(f.vectors().to_vec());
            fam.metadata = meta(
                format!("harmonic-m{m}-n{n}"),
                json!({
                    "frame_bounds": bounds_json(f.bounds()),
                    "tight": flags.tight,
                    "parseval": flags.parseval,
                    "norm_sq": n as f64 / m as f64,
                }),
            );
            AnyFamily::Complex(fam)
        }
        GenerateKind::Mub { p } => {
            let mub = mub_construct::<f64>(p, tol)?;
            let mut fam = Family {
                dim: mub.dim(),
                kind: Kind::Subspaces,
                members: mub
                    .bases()
                    .iter()
                    .map(|b| crate::format::Member {
                        weight: None,
                        basis: b.clone(),
                    })
                    .collect(),
                metadata: None,
            };
            fam.metadata = meta(
                format!("mub-p{p}"),
                json!({ "count": mub.count(), "worst_deviation": mub.worst_deviation() }),
            );
            AnyFamily::Complex(fam)
        }
        GenerateKind::TightFusion { m, n } => {
            let ff = tight_fusion_existence::<f64>(m, n, tol)?;
            let mut fam = Family::from_subspaces(ff.subspaces(), Some(ff.weights()));
            fam.metadata = meta(
                format!("tightfusion-m{m}-n{n}"),
                json!({ "bounds": bounds_json(ff.bounds()), "gap": ff.gap(), "tight": ff.is_tight(tol) }),
            );
            AnyFamily::Real(fam)
        }
    })
}

fn verdict_str(v: Verdict) -> String {
    v.as_str().to_string()
}

/// Copies a retrieval report into the report file and re-measures the
/// witness pair against `family`.
fn fill_check<S: JsonScalar>(
    report: &mut ReportFile,
    r: &CheckReport<S>,
    family: &ProjectionFamily<S>,
    tol: &Tolerance<f64>,
) -> Result<(), CliError> {
    report.verdict = Some(verdict_str(r.verdict));
    let w = &mut report.witnesses;
    if let Some((x, y)) = r.witness_pair() {
        w.insert("x".into(), vector_to_json(x));
        w.insert("y".into(), vector_to_json(y));
        let d = distinguishes(family, x, y, tol)?;
        let gap = d.gaps.iter().fold(0.0f64, |a, g| a.max(g.abs()));
        let separating = d.separating.iter().filter(|&&s| s).count();
        report.details.insert("max_measurement_gap".into(), json!(gap));
        report.details.insert("separating_indices".into(), json!(separating));
        report
            .details
            .insert("norm_difference".into(), json!((x.norm() - y.norm()).abs()));
    }
    if let Some(p) = &r.probe_x {
        w.insert("probe_x".into(), vector_to_json(p));
    }
    if let Some(p) = &r.probe_y {
        w.insert("probe_y".into(), vector_to_json(p));
    }
    if let Some(d) = r.deficient_span_dim {
        w.insert("deficient_span_dim".into(), json!(d));
    }
    if let Some(s) = &r.violating_subset {
        w.insert("violating_subset".into(), json!(s));
    }
    let d = &mut report.details;
    d.insert("samples_used".into(), json!(r.samples_used));
    d.insert("restarts_used".into(), json!(r.restarts_used));
    d.insert("residual".into(), json!(r.residual));
    if !r.notes.is_empty() {
        d.insert("notes".into(), json!(r.notes));
    }
    Ok(())
}

fn fill_complex_pr(
    report: &mut ReportFile,
    r: &CheckReport<Complex64>,
    family: &ProjectionFamily<Complex64>,
    tol: &Tolerance<f64>,
) -> Result<(), CliError> {
    fill_check(report, r, family, tol)?;
    if let Some((w, v)) = r.witness_pair() {
        report
            .details
            .insert("unimodular_related".into(), json!(unimodular_related(w, v, tol)));
    }
    Ok(())
}

fn fill_exhaustive(report: &mut ReportFile, ok: bool) {
    let v = if ok {
        Verdict::PassExhaustive
    } else {
        Verdict::CertifiedFail
    };
    report.verdict = Some(verdict_str(v));
}

fn spectrum_json(s: &AngleSpectrum<f64>) -> Value {
    json!({
        "levels": s.levels,
        "multiplicities": s.multiplicities,
        "k": s.k(),
        "cluster_width": s.cluster_width,
        "min_gap": s.min_gap,
        "warning": s.warning,
    })
}

/// Angle spectra of a family. Complex vector families also get the
/// spectrum of their lifted planes and its comparison with `2 alpha^2`.
///
/// Returns the details and a failure reason, if any.
pub fn angle_details(fam: &AnyFamily, ctx: &Context) -> Result<(Map<String, Value>, Option<String>), CliError> {
    let tol = ctx.tol();
    let mut d = Map::new();
    let mut spectra = Vec::new();
    let mut mismatch = None;
    match fam {
        AnyFamily::Real(f) if f.kind == Kind::Vectors => {
            spectra.push((
                "vector_spectrum",
                angle_spectrum_vectors(&f.vectors()?, ctx.width, tol)?,
            ));
        }
        AnyFamily::Complex(f) if f.kind == Kind::Vectors => {
            let vs = f.vectors()?;
            let vector = angle_spectrum_vectors(&vs, ctx.width, tol)?;
            let lifted = angle_spectrum_projections(&lift_vector_family(&vs, tol)?, ctx.width)?;
            let deviation = if vector.k() == lifted.k() {
                vector
                    .levels
                    .iter()
                    .zip(&lifted.levels)
                    .fold(0.0f64, |a, (al, be)| a.max((be - 2.0 * al * al).abs()))
            } else {
                f64::INFINITY
            };
            // non-finite when the level counts differ; serialized as null
            d.insert("lifted_level_deviation".into(), json!(deviation));
            if deviation > tol.eq_tol {
                mismatch = Some("lifted projection levels differ from 2 alpha^2".to_string());
            }
            spectra.push(("vector_spectrum", vector));
            spectra.push(("projection_spectrum", lifted));
        }
        AnyFamily::Real(f) => {
            spectra.push((
                "projection_spectrum",
                angle_spectrum_projections(&f.projection_family(tol)?, ctx.width)?,
            ));
        }
        AnyFamily::Complex(f) => {
            spectra.push((
                "projection_spectrum",
                angle_spectrum_projections(&f.projection_family(tol)?, ctx.width)?,
            ));
        }
    }
    let mut reason = mismatch;
    for (name, s) in &spectra {
        if let Some(w) = &s.warning {
            reason.get_or_insert_with(|| format!("{name}: {w}"));
        }
        d.insert((*name).into(), spectrum_json(s));
    }
    Ok((d, reason))
}

/// Runs one check and fills verdict, witnesses and details.
pub fn check(kind: CheckKind, fam: &AnyFamily, ctx: &Context, report: &mut ReportFile) -> Result<(), CliError> {
    let tol = ctx.tol();
    let opts = &ctx.opts;
    match (kind, fam) {
        (CheckKind::Pr, AnyFamily::Real(f)) => {
            let family = f.projection_family(tol)?;
            fill_check(report, &edidin_check(&family, opts)?, &family, tol)?;
        }
        (CheckKind::Pr, AnyFamily::Complex(f)) if f.kind == Kind::Vectors => {
            let vs = f.vectors()?;
            let r = complex_pr_check(&vs, opts)?;
            fill_complex_pr(report, &r, &ProjectionFamily::from_vectors(&vs, tol)?, tol)?;
        }
        (CheckKind::Pr, AnyFamily::Complex(f)) => {
            let subs = f.subspaces(tol)?;
            let r = complex_projection_pr_check(&subs, opts)?;
            fill_complex_pr(report, &r, &ProjectionFamily::new(subs)?, tol)?;
        }
        (CheckKind::Nr, AnyFamily::Real(f)) => {
            let family = f.projection_family(tol)?;
            fill_check(report, &norm_retrieval_check(&family, opts)?, &family, tol)?;
        }
        (CheckKind::Nr, AnyFamily::Complex(_)) => {
            return Err(CliError::Usage(
                "norm retrieval is checked on real families; run `lift` first".into(),
            ));
        }
        (CheckKind::Complement, AnyFamily::Real(f)) => {
            let vs = f.vectors()?;
            fill_check(
                report,
                &complement_property(&vs, tol)?,
                &ProjectionFamily::from_vectors(&vs, tol)?,
                tol,
            )?;
        }
        (CheckKind::Complement, AnyFamily::Complex(f)) => {
            let vs = f.vectors()?;
            fill_check(
                report,
                &complement_property(&vs, tol)?,
                &ProjectionFamily::from_vectors(&vs, tol)?,
                tol,
            )?;
        }
        (CheckKind::Fullspark, fam) => {
            let fs = match fam {
                AnyFamily::Real(f) => full_spark(&f.vectors()?, tol)?,
                AnyFamily::Complex(f) => full_spark(&f.vectors()?, tol)?,
            };
            fill_exhaustive(report, fs.full);
            if let Some(s) = fs.defective_subset {
                report.witnesses.insert("defective_subset".into(), json!(s));
            }
        }
        (CheckKind::Mub, fam) => {
            let bases: Vec<Vec<Vector<Complex64>>> = match fam {
                AnyFamily::Complex(f) if f.kind != Kind::Vectors => f.members.iter().map(|m| m.basis.clone()).collect(),
                AnyFamily::Real(f) if f.kind != Kind::Vectors => f
                    .members
                    .iter()
                    .map(|m| m.basis.iter().map(to_complex).collect())
                    .collect(),
                _ => return Err(CliError::Usage("mub check needs one subspace entry per basis".into())),
            };
            let v = verify_mub(&bases, tol)?;
            fill_exhaustive(report, v.ok);
            let d = &mut report.details;
            d.insert("bases".into(), json!(bases.len()));
            d.insert("within_deviation".into(), json!(v.within_deviation));
            d.insert("cross_deviation".into(), json!(v.cross_deviation));
            d.insert("worst_deviation".into(), json!(v.worst_deviation));
            if !v.ok {
                report
                    .witnesses
                    .insert("worst_deviation".into(), json!(v.worst_deviation));
            }
        }
        (CheckKind::Angles, fam) => {
            let (details, reason) = angle_details(fam, ctx)?;
            report.details.extend(details);
            fill_exhaustive(report, reason.is_none());
            if let Some(r) = reason {
                report.witnesses.insert("reason".into(), json!(r));
            }
        }
    }
    Ok(())
}
