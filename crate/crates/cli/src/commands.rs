use std::path::Path;

use serde_json::{json, Value};

use tropint::degree::{empirical_degree, SamplingBox};
use tropint::intersect::{bezout_bound, stable_intersection_2d};
use tropint::polytope::{mixed_volume_ie, mixed_volume_interp, LatticePolytope, MAX_HULL_DIM};
use tropint::tropical::{hypersurface, HypersurfaceComplex};

use crate::error::CliError;
use crate::report::{envelope, int, int_vector, int_vectors, point, rational};
use crate::svg;
use crate::system::SystemFile;

pub const DEFAULT_SAMPLES: usize = 200;

pub struct Input {
    /// File name without directories, echoed in reports.
    pub name: String,
    pub bytes: Vec<u8>,
    pub system: SystemFile,
}

impl Input {
    pub fn load(path: &Path) -> Result<Input, CliError> {
        let bytes = std::fs::read(path)?;
        let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
        Input::from_bytes(name, bytes)
    }

    pub fn from_bytes(name: String, bytes: Vec<u8>) -> Result<Input, CliError> {
        let text = std::str::from_utf8(&bytes).map_err(|e| CliError::Parse(format!("input is not UTF-8: {e}")))?;
        let system = SystemFile::parse(text)?;
        Ok(Input { name, bytes, system })
    }

    fn report(&self, mut command: Value, results: Value) -> Value {
        command["input"] = json!(self.name);
        envelope(command, &self.bytes, results)
    }
}

/// A finished command. `failure` is set when the report was produced but
/// the run must still exit nonzero.
pub struct Output {
    pub report: Value,
    pub svg: Option<String>,
    pub failure: Option<CliError>,
}

fn cap(n: usize, max: usize, what: &str) -> Result<(), CliError> {
    if n > max {
        return Err(CliError::DimensionCap(format!("{what} supports at most {max} variables, input has {n}")));
    }
    Ok(())
}

fn facets_json(h: &HypersurfaceComplex) -> Value {
    h.facets
        .iter()
        .map(|f| {
            json!({
                "base": point(&f.base),
                "directions": int_vectors(&f.directions),
                "normal": int_vector(&f.normal),
                "weight": int(&f.weight),
                "dual_edge": [int_vector(&f.dual_edge.0), int_vector(&f.dual_edge.1)],
                "vertices": f.vertices,
                "rays": int_vectors(&f.rays),
            })
        })
        .collect()
}

pub fn hypersurface_cmd(input: &Input, poly: usize, want_svg: bool) -> Result<Output, CliError> {
    let n = input.system.vars;
    cap(n, MAX_HULL_DIM, "hypersurface")?;
    if want_svg && n != 2 {
        return Err(CliError::Arity(format!("SVG output needs 2 variables, input has {n}")));
    }
    let h = hypersurface(input.system.polynomial(poly)?)?;
    let ridges = h.ridges.as_ref().map(|rs| {
        rs.iter()
            .map(|r| {
                json!({
                    "dual_face": int_vectors(&r.dual_face),
                    "facets": r.facets,
                    "vertices": r.vertices,
                    "rays": int_vectors(&r.rays),
                })
            })
            .collect::<Vec<_>>()
    });
    let results = json!({
        "ambient_dim": n,
        "vertices": h.vertices.iter().map(|v| point(v)).collect::<Vec<_>>(),
        "facets": facets_json(&h),
        "lineality": int_vectors(&h.lineality),
        "ridges": ridges,
        "balanced": h.ridges.as_ref().map(|_| true),
    });
    let command = json!({ "name": "hypersurface", "poly": poly, "svg": want_svg });
    Ok(Output {
        report: input.report(command, results),
        svg: want_svg.then(|| svg::hypersurface_svg(&h)),
        failure: None,
    })
}

pub fn mixed_volume_cmd(input: &Input, indices: &[usize]) -> Result<Output, CliError> {
    let n = input.system.vars;
    cap(n, MAX_HULL_DIM, "mixed-volume")?;
    if indices.len() != n {
        return Err(CliError::Arity(format!("expected {n} indices, got {}", indices.len())));
    }
    let polytopes: Vec<LatticePolytope> =
        indices.iter().map(|&i| Ok(input.system.polynomial(i)?.newton_polytope()?)).collect::<Result<_, CliError>>()?;
    let ie = mixed_volume_ie(&polytopes)?;
    let interp = mixed_volume_interp(&polytopes)?;
    let agree = ie == interp;
    let results = json!({
        "normalized": rational(ie.normalized()),
        "unnormalized": rational(&ie.unnormalized()),
        "normalized_inclusion_exclusion": rational(ie.normalized()),
        "normalized_interpolation": rational(interp.normalized()),
        "algorithms_agree": agree,
    });
    let command = json!({ "name": "mixed-volume", "indices": indices });
    let failure = (!agree).then(|| {
        CliError::Internal(format!("mixed volume algorithms disagree: {} vs {}", ie.normalized(), interp.normalized()))
    });
    Ok(Output { report: input.report(command, results), svg: None, failure })
}

pub fn stable_intersect_cmd(input: &Input, want_svg: bool) -> Result<Output, CliError> {
    let n = input.system.vars;
    cap(n, 2, "stable-intersect")?;
    if n != 2 {
        return Err(CliError::Arity(format!("stable-intersect needs 2 variables, input has {n}")));
    }
    if input.system.polynomials.len() != 2 {
        return Err(CliError::Arity(format!(
            "stable-intersect needs exactly 2 polynomials, input has {}",
            input.system.polynomials.len()
        )));
    }
    let h1 = hypersurface(&input.system.polynomials[0])?;
    let h2 = hypersurface(&input.system.polynomials[1])?;
    let s = stable_intersection_2d(&h1, &h2)?;
    let newton = [input.system.polynomials[0].newton_polytope()?, input.system.polynomials[1].newton_polytope()?];
    let mv = mixed_volume_ie(&newton)?.normalized().clone();
    let total = s.total();
    let matches = tropint::polytope::Rational::from_integer(total.clone()) == mv;
    let points: Vec<Value> = s
        .points
        .iter()
        .map(|p| {
            json!({
                "location": point(&p.location),
                "multiplicity": int(&p.multiplicity),
                "contributions": p.contributions.iter().map(|c| json!({
                    "facets": c.facets,
                    "normals": int_vectors(&c.normals),
                    "weights": c.weights.iter().map(int).collect::<Vec<_>>(),
                    "multiplicity": int(&c.multiplicity),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let results = json!({
        "points": points,
        "total": int(&total),
        "method": if s.transverse { "direct" } else { "perturbation" },
        "mixed_volume": rational(&mv),
        "total_matches_mixed_volume": matches,
    });
    let command = json!({ "name": "stable-intersect", "svg": want_svg });
    let failure = (!matches)
        .then(|| CliError::TheoremViolation(format!("total multiplicity {total} differs from mixed volume {mv}")));
    let picture = want_svg.then(|| svg::intersection_svg(&h1, &h2, &s.points));
    Ok(Output { report: input.report(command, results), svg: picture, failure })
}

pub fn degree_bound_cmd(input: &Input, poly: usize, samples: Option<usize>, seed: u64) -> Result<Output, CliError> {
    let n = input.system.vars;
    cap(n, 3, "degree-bound")?;
    let samples = samples.or(input.system.samples).unwrap_or(DEFAULT_SAMPLES);
    let sampling = input.system.sampling.clone().unwrap_or_default();
    let h = hypersurface(input.system.polynomial(poly)?)?;
    let r = empirical_degree(&h, samples, seed, &sampling)?;
    let results = json!({
        "support": int_vectors(&r.support),
        "diameter_bound": int(&r.diameter_bound),
        "weak_bound": r.weak_bound,
        "max_transverse_count": r.max_transverse_count,
        "samples": r.samples,
        "discarded": r.discarded,
        "histogram": r.histogram,
        "bound_satisfied": r.bound_satisfied,
        "weak_bound_satisfied": r.weak_bound_satisfied,
        "line_bound": rational(&r.line_bound),
        "line_bound_satisfied": r.line_bound_satisfied,
    });
    let SamplingBox { half_width, max_denominator } = sampling;
    let command = json!({
        "name": "degree-bound",
        "poly": poly,
        "samples": samples,
        "seed": seed,
        "box": { "half_width": half_width, "max_denominator": max_denominator },
    });
    let failure = (!r.bound_satisfied).then(|| {
        CliError::TheoremViolation(format!(
            "{} transverse points exceed the diameter bound {}",
            r.max_transverse_count, r.diameter_bound
        ))
    });
    Ok(Output { report: input.report(command, results), svg: None, failure })
}

pub fn bezout_bound_cmd(input: &Input, r: usize) -> Result<Output, CliError> {
    let n = input.system.vars;
    cap(n, MAX_HULL_DIM, "bezout-bound")?;
    let supports: Vec<_> = input.system.polynomials.iter().map(|p| p.support()).collect();
    let b = bezout_bound(&supports, r, n)?;
    let results = json!({
        "bound": rational(&b.bound),
        "witness": b.witness,
        "table": b.table.iter().map(|(s, v)| json!({ "subset": s, "value": rational(v) })).collect::<Vec<_>>(),
        "k": supports.len(),
        "n": n,
    });
    let command = json!({ "name": "bezout-bound", "codim": r });
    Ok(Output { report: input.report(command, results), svg: None, failure: None })
}
