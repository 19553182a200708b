use std::path::Path;

use pcw_core::cone::{cone_membership, cone_membership_int, dense_ray_witness, is_unscaled_pcw};
use pcw_core::covers::{
    is_cover_codeword, lift_codeword, pseudo_codeword, random_cover, CoverSpec, RNG_ALGORITHM,
};
use pcw_core::formats::{parse_int_list, parse_rational, parse_rational_list, write_alist, write_plain};
use pcw_core::gf2::{enumerate_codewords, ml_decode_bsc, syndrome, BinaryMatrix, BitVector, CodeDescription};
use pcw_core::lifting::{check_hypotheses, realize_with, verify_conclusions, RealizeOptions};
use pcw_core::tanner::{duplicate_checks, MultiGraph, TannerGraph};
use pcw_core::zeta::{bit_even_pcw_with, series_expand, enumerate_cycle_pcw_with, zeta_reciprocal_with, ZetaOptions};
use pcw_core::Error;
use serde_json::{json, Value};

/// What a command hands back to be wrapped in a report.
pub struct Outcome {
    pub parameters: Value,
    pub results: Value,
    /// A well-formed "no" answer; exits with status 1.
    pub negative: bool,
}

impl Outcome {
    fn positive(parameters: Value, results: Value) -> Self {
        Self {
            parameters,
            results,
            negative: false,
        }
    }
}

#[derive(Debug)]
pub struct CliError(pub String);

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(describe(&e))
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Error text, with the flag that lifts a capacity bound where there is one.
pub fn describe(e: &Error) -> String {
    match e {
        Error::Capacity { what, bound, .. } => {
            let flag = if *what == "code dimension" {
                Some("--max-dim")
            } else if what.starts_with("directed edge count") {
                Some("--max-directed-edges")
            } else {
                None
            };
            match flag {
                Some(flag) => format!("{e}; pass {flag} with a value above {bound} to allow it"),
                None => format!("{e}; this limit is fixed"),
            }
        }
        _ => e.to_string(),
    }
}

fn bits(s: &str) -> CliResult<BitVector> {
    Ok(s.parse::<BitVector>()?)
}

fn graph_json(g: &MultiGraph) -> Value {
    json!({
        "vertices": g.num_vertices(),
        "edges": g.edges().iter().map(|&(a, b)| [a + 1, b + 1]).collect::<Vec<_>>(),
    })
}

pub fn info(h: &BinaryMatrix) -> CliResult<Outcome> {
    let t = TannerGraph::from_parity_matrix(h);
    let code = CodeDescription::new(h.clone());
    Ok(Outcome::positive(
        json!({}),
        json!({
            "rows": h.num_rows(),
            "cols": h.num_cols(),
            "ones": h.num_ones(),
            "rank": h.rank(),
            "dimension": code.dimension,
            "bit_degrees": t.bit_degrees(),
            "check_degrees": t.check_degrees(),
            "bit_even": t.is_bit_even(),
            "cycle_code": t.is_cycle_code(),
        }),
    ))
}

pub fn codewords(h: &BinaryMatrix, max_dim: usize) -> CliResult<Outcome> {
    let words = enumerate_codewords(h, max_dim)?;
    let dimension = words.len().trailing_zeros();
    Ok(Outcome::positive(
        json!({ "max_dim": max_dim }),
        json!({
            "dimension": dimension,
            "count": words.len(),
            "codewords": words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        }),
    ))
}

pub fn decode(h: &BinaryMatrix, received: &str, max_dim: usize) -> CliResult<Outcome> {
    let y = bits(received)?;
    let d = ml_decode_bsc(h, &y, max_dim)?;
    Ok(Outcome::positive(
        json!({ "received": y.to_string(), "max_dim": max_dim }),
        json!({
            "codeword": d.codeword.to_string(),
            "distance": d.distance,
            "unique": d.unique,
        }),
    ))
}

pub fn cone_check(h: &BinaryMatrix, vector: &str) -> CliResult<Outcome> {
    let v = parse_rational_list(vector)?;
    let verdict = cone_membership(h, &v)?;
    Ok(Outcome {
        parameters: json!({ "vector": v.iter().map(|x| x.to_string()).collect::<Vec<_>>() }),
        negative: !verdict.member,
        results: serde_json::to_value(&verdict).expect("verdict serializes"),
    })
}

pub fn cone_ray(h: &BinaryMatrix, vector: &str, eps: &str) -> CliResult<Outcome> {
    let v = parse_rational_list(vector)?;
    let eps = parse_rational(eps)?;
    let parameters = json!({
        "vector": v.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "eps": eps.to_string(),
    });
    let verdict = cone_membership(h, &v)?;
    if !verdict.member {
        return Ok(Outcome {
            parameters,
            results: serde_json::to_value(&verdict).expect("verdict serializes"),
            negative: true,
        });
    }
    let w = dense_ray_witness(h, &v, &eps)?;
    Ok(Outcome::positive(
        parameters,
        json!({
            "member": true,
            "pseudo_codeword": w.p.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "alpha": w.alpha.to_string(),
            "beta": w.beta.to_string(),
        }),
    ))
}

pub fn pcw_verify(h: &BinaryMatrix, vector: &str) -> CliResult<Outcome> {
    let p = parse_int_list(vector)?;
    let is_pcw = is_unscaled_pcw(h, &p)?;
    let cone = cone_membership_int(h, &p)?;
    let parity = syndrome(h, &BitVector::from_parities(&p))?;
    Ok(Outcome {
        parameters: json!({ "vector": p }),
        results: json!({
            "pseudo_codeword": is_pcw,
            "cone_member": cone.member,
            "parity_satisfied": parity.is_zero(),
            "violations": cone.violations,
        }),
        negative: !is_pcw,
    })
}

pub fn realize(h: &BinaryMatrix, vector: &str, check_invariants: bool) -> CliResult<Outcome> {
    let p = parse_int_list(vector)?;
    let parameters = json!({ "vector": p, "check_invariants": check_invariants });
    let failures = check_hypotheses(&TannerGraph::from_parity_matrix(h), &p)?;
    if !failures.is_empty() {
        return Ok(Outcome {
            parameters,
            results: json!({ "realized": false, "failures": failures }),
            negative: true,
        });
    }
    let r = realize_with(h, &p, RealizeOptions { check_invariants })?;
    let conclusions = verify_conclusions(&r.cover, &r.paths, &p);
    let pcw = pseudo_codeword(&r.word);
    Ok(Outcome::positive(
        parameters,
        json!({
            "realized": true,
            "cover": r.cover.to_doc(),
            "word": r.word.to_string(),
            "cover_codeword": is_cover_codeword(&r.cover, &r.word)?,
            "normalized": pcw.normalized.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "paths": r.paths,
            "path_checks": {
                "ok": conclusions.ok(),
                "diagnostics": conclusions.diagnostics.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            },
        }),
    ))
}

pub fn cover_random(h: &BinaryMatrix, m: usize, seed: u64) -> CliResult<Outcome> {
    let cov = random_cover(&TannerGraph::from_parity_matrix(h), m, seed)?;
    let lifted = cov.lifted_parity_matrix();
    Ok(Outcome::positive(
        json!({ "m": m, "seed": seed, "rng": RNG_ALGORITHM }),
        json!({
            "cover": cov.to_doc(),
            "lifted_rows": lifted.num_rows(),
            "lifted_cols": lifted.num_cols(),
        }),
    ))
}

pub fn lift(h: &BinaryMatrix, codeword: &str, m: usize) -> CliResult<Outcome> {
    let c = bits(codeword)?;
    let parameters = json!({ "codeword": c.to_string(), "m": m });
    let s = syndrome(h, &c)?;
    if !s.is_zero() {
        return Ok(Outcome {
            parameters,
            results: json!({ "codeword": false, "syndrome_weight": s.weight() }),
            negative: true,
        });
    }
    let cov = CoverSpec::trivial(TannerGraph::from_parity_matrix(h), m)?;
    let w = lift_codeword(&c, m);
    let pcw = pseudo_codeword(&w);
    Ok(Outcome::positive(
        parameters,
        json!({
            "codeword": true,
            "word": w.to_string(),
            "cover_codeword": is_cover_codeword(&cov, &w)?,
            "unscaled": pcw.unscaled,
        }),
    ))
}

pub fn reduce_bit_even(h: &BinaryMatrix, out: Option<&Path>) -> CliResult<Outcome> {
    let reduced = duplicate_checks(h);
    if let Some(path) = out {
        let text = if path.extension().is_some_and(|e| e == "alist") {
            write_alist(&reduced)
        } else {
            write_plain(&reduced)
        };
        std::fs::write(path, text).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    }
    let t = TannerGraph::from_parity_matrix(&reduced);
    Ok(Outcome::positive(
        json!({ "out": out.map(|p| p.display().to_string()) }),
        json!({
            "rows": reduced.num_rows(),
            "cols": reduced.num_cols(),
            "bit_even": t.is_bit_even(),
            "matrix": write_plain(&reduced),
        }),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaGraph {
    Normal,
    Tanner,
}

pub fn zeta(h: &BinaryMatrix, graph: Option<ZetaGraph>, degree: Option<u32>, options: ZetaOptions) -> CliResult<Outcome> {
    let t = TannerGraph::from_parity_matrix(h);
    let graph = graph.unwrap_or(if t.is_cycle_code() { ZetaGraph::Normal } else { ZetaGraph::Tanner });
    let g = match graph {
        ZetaGraph::Normal => t.normal_graph()?,
        ZetaGraph::Tanner => t.as_multigraph(),
    };
    let f = zeta_reciprocal_with(&g, options)?;
    let mut results = json!({
        "graph": graph_json(&g),
        "directed_edges": g.num_directed_edges(),
        "reciprocal": f.to_string(),
        "reciprocal_terms": f,
    });
    if let Some(d) = degree {
        let s = series_expand(&f, d)?;
        results["series"] = serde_json::to_value(s.polynomial()).expect("series serializes");
        results["series_terms"] = json!(s.polynomial().num_terms());
    }
    Ok(Outcome::positive(
        json!({
            "graph": match graph { ZetaGraph::Normal => "normal", ZetaGraph::Tanner => "tanner" },
            "degree": degree,
            "max_directed_edges": options.max_directed_edges,
            "verify": options.verify,
        }),
        results,
    ))
}

pub fn enumerate(h: &BinaryMatrix, degree: u32, options: ZetaOptions) -> CliResult<Outcome> {
    let t = TannerGraph::from_parity_matrix(h);
    let (pipeline, vectors) = if t.is_cycle_code() {
        ("cycle", enumerate_cycle_pcw_with(h, degree, options)?)
    } else if t.is_bit_even() {
        ("bit-even", bit_even_pcw_with(h, degree, options)?)
    } else {
        ("bit-even-duplicated", bit_even_pcw_with(&duplicate_checks(h), degree, options)?)
    };
    let mut all_verified = true;
    for v in &vectors {
        let p: Vec<i64> = v.as_slice().iter().map(|&x| x as i64).collect();
        all_verified &= is_unscaled_pcw(h, &p)?;
    }
    Ok(Outcome::positive(
        json!({
            "degree": degree,
            "max_directed_edges": options.max_directed_edges,
            "verify": options.verify,
        }),
        json!({
            "pipeline": pipeline,
            "count": vectors.len(),
            "all_verified": all_verified,
            "pseudo_codewords": vectors,
        }),
    ))
}
