use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use waveset_core::construct::{
    self, check_s1, check_s2, construct_scaling_set, s1_violation, s2_violation, verify_wavelet_set, Depths,
    TilingVerdict,
};
use waveset_core::format::{
    self, dim_window_value, interval_set_value, interval_value, rational_value, step_fn_value, Document,
};
use waveset_core::msf2d::{self, ContractingEigenvalue, Mat2};
use waveset_core::spectral::{
    self, CalderonSum, ConditionStatus, DimFnWindow, MraVerdict, SpectrumVerdict, TqVerdict,
};
use waveset_core::torus;
use waveset_core::{Error, IntervalSet, Rational, Result, StepFn};

use crate::figure::{self, FigureFormat};
use crate::report::{Report, Status};

pub fn load(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    format::parse_str(&text)
}

fn load_set(path: &Path) -> Result<IntervalSet> {
    match load(path)? {
        Document::IntervalSet(s) => Ok(s),
        other => Err(Error::Input(format!("expected an interval_set, got {}", other.kind()))),
    }
}

/// Step functions; an interval set stands for its indicator.
fn load_step(path: &Path) -> Result<StepFn> {
    match load(path)? {
        Document::StepFn(f) => Ok(f),
        Document::IntervalSet(s) => Ok(StepFn::indicator(&s)),
        other => Err(Error::Input(format!("expected a step_fn, got {}", other.kind()))),
    }
}

fn load_matrix(path: &Path) -> Result<Mat2> {
    match load(path)? {
        Document::Mat2(m) => Ok(m),
        other => Err(Error::Input(format!("expected a mat2, got {}", other.kind()))),
    }
}

fn load_lattice(arg: &str) -> Result<Mat2> {
    if arg == "id" {
        Ok(Mat2::identity())
    } else {
        load_matrix(Path::new(arg))
    }
}

fn q(v: &Rational) -> Value {
    rational_value(v)
}

pub fn verify_scaling_set(path: &Path) -> Result<Report> {
    let s = load_set(path)?;
    let s3 = torus::tiling_violation(&s);
    let (s1, s2) = (check_s1(&s), check_s2(&s));
    let mut report = Report::new("verify scaling-set", Status::Pass)
        .with("s1", json!(s1))
        .with("s2", json!(s2))
        .with("s3", json!(s3.is_none()))
        .with("measure", q(&s.measure()));
    if let Some(w) = s1_violation(&s) {
        report = report.witness(json!({"condition": "S1", "interval": interval_value(&w)}));
    }
    if let Some(w) = s2_violation(&s) {
        report = report.witness(json!({"condition": "S2", "interval": interval_value(&w)}));
    }
    if let Some((w, m)) = s3 {
        report = report.witness(json!({"condition": "S3", "interval": interval_value(&w), "multiplicity": q(&m)}));
    }
    if !report.witnesses.is_empty() {
        report.status = Status::Fail;
    }
    Ok(report)
}

pub fn verify_wavelet_set_cmd(path: &Path) -> Result<Report> {
    let w = load_set(path)?;
    let report = Report::new("verify wavelet-set", Status::Pass).with("measure", q(&w.measure()));
    Ok(match verify_wavelet_set(&w) {
        TilingVerdict::Pass => report,
        TilingVerdict::Fail(f) => {
            let mut r = report.with("failure", json!(f.kind.name())).witness(json!({
                "kind": f.kind.name(),
                "interval": interval_value(&f.witness),
                "multiplicity": f.multiplicity.as_ref().map(q),
            }));
            r.status = Status::Fail;
            r
        }
    })
}

pub fn verify_spectrum(path: &Path) -> Result<Report> {
    let g = load_step(path)?;
    match spectral::validate_scaling_spectrum(&g)? {
        SpectrumVerdict::Pass => {
            let h = spectral::psi_spectrum_from_scaling(&g)?;
            Ok(Report::new("verify spectrum", Status::Pass)
                .with("psi_spectrum", step_fn_value(&h))
                .with("psi_norm_sq", q(&h.integral())))
        }
        SpectrumVerdict::Fail { condition, witness } => {
            let mut r = Report::new("verify spectrum", Status::Fail)
                .with("condition", json!(condition.code()))
                .with("description", json!(condition.description()))
                .witness(interval_value(&witness));
            r.status = Status::Fail;
            Ok(r)
        }
    }
}

pub fn construct_scaling(path: &Path, depths: Depths) -> Result<Report> {
    let cover = load_set(path)?;
    let result = construct_scaling_set(&cover, depths)?;
    Ok(Report::new("construct scaling-set", Status::Pass)
        .with("s", interval_set_value(&result.s))
        .with("w", interval_set_value(&result.w))
        .with("transversal", interval_set_value(&result.k))
        .with("exact", json!(result.defects.is_exact()))
        .defects(&result.defects))
}

pub fn construct_rze(path: &Path, depths: Depths) -> Result<Report> {
    let g = load_step(path)?;
    let r = construct::wavelet_set_in_support(&g, depths)?;
    let verdict = verify_wavelet_set(&r.w);
    let mut report = Report::new("construct rze", Status::Pass)
        .with("s", interval_set_value(&r.s))
        .with("w", interval_set_value(&r.w))
        .with("psi_spectrum", step_fn_value(&r.psi_spectrum))
        .with("supp_psi", interval_set_value(&r.supp_psi))
        .with("contained", json!(r.contained))
        .with("outside_measure", q(&r.outside_measure))
        .with("outside_bound", q(&r.outside_bound))
        .with("w_verified", json!(verdict.is_pass()))
        .defects(&r.defects);
    if !r.contained {
        // truncated run: the set found is certified only up to the bound
        report.status = Status::Inconclusive;
        let outside = r.w.subtract(&r.supp_psi);
        report = report.witness(interval_set_value(&outside)).with(
            "note",
            json!(format!(
                "construction truncated at depth N = {}, J = {}",
                depths.n, depths.j
            )),
        );
    }
    Ok(report)
}

fn condition_value(c: &ConditionStatus) -> Value {
    match c {
        ConditionStatus::Pass => json!({"status": "pass"}),
        ConditionStatus::Fail { witness, value } => json!({
            "status": "fail",
            "witness": interval_value(witness),
            "value": value.as_ref().map(q),
        }),
        ConditionStatus::NoViolation { depth } => json!({"status": "no_violation", "depth": depth}),
    }
}

pub fn dimfun(path: &Path, depth: u32) -> Result<Report> {
    let (window, from_spectrum) = match load(path)? {
        Document::DimWindow { depth: d, dim } => (DimFnWindow::from_step(dim, d), None),
        Document::StepFn(h) => (spectral::dimension_function(&h, depth + 2), Some(h)),
        Document::IntervalSet(s) => {
            let h = StepFn::indicator(&s);
            (spectral::dimension_function(&h, depth + 2), Some(h))
        }
        other => return Err(Error::Input(format!("expected a spectrum or dim_window, got {}", other.kind()))),
    };
    let conditions = spectral::check_dimension_conditions(&window, depth)?;
    let all = [&conditions.d1, &conditions.d2, &conditions.d3, &conditions.d4];
    let mut report = Report::new("dimfun", Status::Pass)
        .with("depth", json!(depth))
        .with("dim", dim_window_value(window.depth, &window.dim))
        .with("boundary_note", json!(window.boundary_note))
        .with("d1", condition_value(&conditions.d1))
        .with("d2", condition_value(&conditions.d2))
        .with("d2_checked_measure", q(&conditions.d2_checked_measure))
        .with("d3", condition_value(&conditions.d3))
        .with("d4", condition_value(&conditions.d4));
    if let Some(h) = from_spectrum {
        let verdict = match spectral::mra_check(&h, depth) {
            MraVerdict::IsMra => json!({"verdict": "is_mra"}),
            MraVerdict::NotMra { witness, value } => {
                json!({"verdict": "not_mra", "witness": interval_value(&witness), "value": q(&value)})
            }
            MraVerdict::Inconclusive { note } => json!({"verdict": "inconclusive", "note": note}),
        };
        report = report.with("mra", verdict);
    }
    for (name, c) in ["D1", "D2", "D3", "D4"].iter().zip(all) {
        if let ConditionStatus::Fail { witness, .. } = c {
            report = report.witness(json!({"condition": name, "interval": interval_value(witness)}));
        }
    }
    if !report.witnesses.is_empty() {
        report.status = Status::Fail;
    } else if all.iter().any(|c| matches!(c, ConditionStatus::NoViolation { .. })) {
        report.status = Status::Inconclusive;
    }
    Ok(report)
}

pub fn calderon(path: &Path) -> Result<Report> {
    let h = load_step(path)?;
    let one = Rational::from_integer(1.into());
    Ok(match spectral::calderon(&h) {
        CalderonSum::Diverges { side } => Report::new("calderon", Status::Fail)
            .with("diverges", json!(true))
            .with("side", json!(side.name()))
            .witness(json!({"side": side.name(), "note": "spectrum does not vanish near 0"})),
        CalderonSum::Finite(p) => {
            let mut r = Report::new("calderon", Status::Pass)
                .with("diverges", json!(false))
                .with("min", q(&p.min()))
                .with("max", q(&p.max()))
                .with("identically_one", json!(p.is_constant(&one)))
                .with("positive", json!(p.positive.values().iter().map(q).collect::<Vec<_>>()))
                .with("positive_breaks", json!(p.positive.breaks().iter().map(q).collect::<Vec<_>>()))
                .with("negative", json!(p.negative.values().iter().map(q).collect::<Vec<_>>()))
                .with("negative_breaks", json!(p.negative.breaks().iter().map(q).collect::<Vec<_>>()));
            if let Some((w, v)) = p.deviation_from(&one) {
                r.status = Status::Fail;
                r = r.witness(json!({"interval": interval_value(&w), "value": q(&v)}));
            }
            r
        }
    })
}

pub fn tq(path: &Path, alpha: i64) -> Result<Report> {
    let psi = load_step(path)?;
    let r = spectral::tq_check(&psi, alpha)?;
    let report = Report::new("tq", Status::Pass)
        .with("alpha", json!(alpha))
        .with("t", step_fn_value(&r.t));
    Ok(match r.verdict {
        TqVerdict::Zero => report,
        TqVerdict::Nonzero { witness, value } => {
            let mut out = report.witness(json!({"interval": interval_value(&witness), "value": q(&value)}));
            out.status = Status::Fail;
            out
        }
    })
}

fn orthonormality_payload(report: Report, o: &spectral::OrthonormalityReport) -> Report {
    let failures: Vec<Value> = o
        .tq_failures
        .iter()
        .map(|(alpha, w, v)| json!({"alpha": alpha, "interval": interval_value(w), "value": q(v)}))
        .collect();
    let cal = match &o.calderon {
        CalderonSum::Diverges { side } => json!({"diverges": true, "side": side.name()}),
        CalderonSum::Finite(p) => json!({"diverges": false, "min": q(&p.min()), "max": q(&p.max())}),
    };
    report
        .with("norm_sq", q(&o.norm_sq))
        .with("calderon", cal)
        .with("alphas_checked", json!(o.alphas_checked))
        .with("tq_failures", Value::Array(failures))
        .with("orthonormal", json!(o.passes))
}

pub fn orthonormal(path: &Path) -> Result<Report> {
    let psi = load_step(path)?;
    let o = spectral::orthonormality_check(&psi)?;
    let mut report = orthonormality_payload(Report::new("orthonormal", Status::Pass), &o);
    for (alpha, w, v) in &o.tq_failures {
        report = report.witness(json!({"alpha": alpha, "interval": interval_value(w), "value": q(v)}));
    }
    if !o.passes {
        report.status = Status::Fail;
        if report.witnesses.is_empty() {
            let note = match &o.calderon {
                CalderonSum::Finite(p) => p
                    .deviation_from(&Rational::from_integer(1.into()))
                    .map(|(w, v)| json!({"calderon": interval_value(&w), "value": q(&v)})),
                CalderonSum::Diverges { side } => Some(json!({"calderon_diverges": side.name()})),
            };
            report = report.witness(note.unwrap_or_else(|| json!({"norm_sq": q(&o.norm_sq)})));
        }
    }
    Ok(report)
}

pub fn psib(b: &str) -> Result<Report> {
    let b = waveset_core::parse_rational(b)?;
    let r = spectral::psi_b_report(&b)?;
    let status = match r.consistent {
        Some(true) => Status::Pass,
        Some(false) => Status::Fail,
        None => Status::Inconclusive,
    };
    let mut report = orthonormality_payload(Report::new("psib", status), &r.orthonormality)
        .with("b", q(&r.b))
        .with("row", json!(r.row.label()))
        .with("consistent", json!(r.consistent))
        .with(
            "calderon_bounds",
            json!(r.calderon_frame_bounds.as_ref().map(|(lo, hi)| vec![q(lo), q(hi)])),
        );
    if status == Status::Inconclusive {
        report = report.witness(json!({"note": "behaviour for this b is not settled"}));
    } else if status == Status::Fail {
        report = report.witness(json!({"row": r.row.label()}));
    }
    Ok(report)
}

pub fn msf2d(matrix: &Path, lattice: &str) -> Result<Report> {
    let a = load_matrix(matrix)?;
    let p = load_lattice(lattice)?;
    let r = msf2d::wavelet_set_exists(&a, &p)?;
    let eigen = match &r.eigenvalue {
        ContractingEigenvalue::None => json!(null),
        ContractingEigenvalue::InField(l) => json!(format::quad_value(l)),
        ContractingEigenvalue::OutsideField => json!("quadratic irrational"),
    };
    let mut report = Report::new("msf2d", Status::Pass)
        .with("exists", json!(r.exists))
        .with("det", format::quad_value(&r.det))
        .with("contracting_eigenvalue", eigen)
        .with("unit_eigenvalue", json!(r.unit_eigenvalue))
        .with("complex_eigenvalues", json!(r.complex_eigenvalues));
    if let Some(z) = &r.witness {
        report.status = Status::Fail;
        report = report.witness(json!([z[0].to_string(), z[1].to_string()]));
    }
    Ok(report)
}

pub fn lce(matrix: &Path, lattice: &str, jmin: i64, jmax: i64, c: &str) -> Result<Report> {
    let a = load_matrix(matrix)?;
    let p = load_lattice(lattice)?;
    let c = waveset_core::parse_rational(c)?;
    let r = msf2d::lce_report(&a, &p, jmin, jmax, &c)?;
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| json!({"j": row.j, "count": row.count.to_string(), "ratio": q(&row.ratio)}))
        .collect();
    let mut report = Report::new("lce", Status::Pass)
        .with("rows", json!(rows))
        .with("bound", q(&r.bound))
        .with("holds", json!(r.holds))
        .with("note", json!(format!("finite-range probe over j in [{jmin}, {jmax}]")));
    if let Some(j) = r.witness {
        report.status = Status::Fail;
        report = report.witness(json!({"j": j}));
    }
    Ok(report)
}

pub fn plot(path: &Path, format: FigureFormat, out: &Path) -> Result<Report> {
    let doc = load(path)?;
    let text = figure::render(&doc, format)?;
    fs::write(out, &text).map_err(|e| Error::Input(format!("cannot write {}: {e}", out.display())))?;
    let name = match format {
        FigureFormat::Csv => "csv",
        FigureFormat::Svg => "svg",
    };
    Ok(Report::new("plot", Status::Pass)
        .with("object", json!(doc.kind()))
        .with("format", json!(name))
        .with("out", json!(out.display().to_string()))
        .with("bytes", json!(text.len())))
}
