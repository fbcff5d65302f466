//! Named commands over JSON documents, producing deterministic reports.
//!
//! Each command reads the sections of a [`Document`] it needs and returns
//! named verdicts and serialized witnesses. Commands that are gates also
//! return the boolean that decides the exit status of the command-line tool.

use serde_json::{json, Map, Value};

use crate::degree_graph::{self, rho, rho_minus_1, rho_minus_g};
use crate::detloci::{self, family_vanishing_locus, vanishing_chain, VanishingLocus};
use crate::error::{Error, Result};
use crate::exactlinalg::{PolyMatrix, Rational};
use crate::genericity::{SearchOptions, Verdict};
use crate::json::{self, multidegree_key, rat_to_json, Document};
use crate::prelinked::{self, check_condition_i, images_in, is_linked_point, is_simple_point, tangent_dimension};
use crate::series::chain::{chain_adaptable, chain_global_bases};
use crate::series::eht::{check_eht_direct, check_eht_kernel, check_refined, kernel_dimension_table};
use crate::series::linked::{check_linked, forgetful_to_eht};
use crate::series::witness::{check_constrained, check_simple, Witness};
use crate::series::{eht_to_linked, TieBreak};
use crate::{fixtures, Poly};

pub const COMMANDS: &[&str] = &[
    "check-linked",
    "check-eht",
    "check-refined",
    "check-simple",
    "check-constrained",
    "check-adaptable",
    "kernel-table",
    "eht-to-linked",
    "linked-to-eht",
    "chain-bases",
    "grassmannian-check",
    "tangent-dim",
    "vanishing-locus",
    "family-locus",
    "rho",
    "fixtures",
];

pub const FIXTURE_NAMES: &[&str] = &[
    "example-A6",
    "example-bad-compare",
    "example-bad-compare-linked",
    "example-bad-compare-linked-x1",
    "chain-single-swap",
    "chain-double-swap",
    "chain-tie-swap",
    "chain-full-interior",
    "chain-non-adaptable",
    "degenerating-family",
    "diagonal-t",
];

/// Built-in fixture documents.
pub fn fixture_document(name: &str) -> Option<Document> {
    Some(match name {
        "example-A6" => {
            let (data, point) = prelinked::example_a6();
            json::prelinked_document(&data, Some(&point))
        }
        "example-bad-compare" => json::eht_document(&fixtures::bad_compare_eht()),
        "example-bad-compare-linked" => json::linked_document(&fixtures::bad_compare_linked(0)),
        "example-bad-compare-linked-x1" => json::linked_document(&fixtures::bad_compare_linked(1)),
        "chain-single-swap" => json::eht_document(&fixtures::chain_single_swap()),
        "chain-double-swap" => json::eht_document(&fixtures::chain_double_swap()),
        "chain-tie-swap" => json::eht_document(&fixtures::chain_tie_swap()),
        "chain-full-interior" => json::eht_document(&fixtures::chain_full_interior()),
        "chain-non-adaptable" => json::eht_document(&fixtures::chain_non_adaptable_interior()),
        "degenerating-family" => {
            let (fam, bases) = detloci::degenerating_family();
            json::family_document(&fam, &bases)
        }
        "diagonal-t" => json::matrix_document(&PolyMatrix::diag(&[Poly::x(), Poly::x()])),
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub budget: usize,
    /// Longest path examined by the prelinked condition; the data's default when absent.
    pub path_bound: Option<usize>,
    /// Extra rational sample points for pointwise checks.
    pub samples: usize,
    /// `(g, r, d, k)` for `rho`.
    pub rho: Option<(i64, i64, i64, i64)>,
}

impl Default for Options {
    fn default() -> Self {
        let s = SearchOptions::default();
        Options { seed: s.seed, budget: s.budget, path_bound: None, samples: 5, rho: None }
    }
}

impl Options {
    fn search(&self) -> SearchOptions {
        SearchOptions { budget: self.budget, seed: self.seed }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("seed".into(), json!(self.seed));
        m.insert("budget".into(), json!(self.budget));
        if let Some(p) = self.path_bound {
            m.insert("pathBound".into(), json!(p));
        }
        m.insert("samples".into(), json!(self.samples));
        Value::Object(m)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub verdicts: Map<String, Value>,
    pub witnesses: Map<String, Value>,
    /// `Some(false)` makes the command exit with status 1.
    pub gate: Option<bool>,
}

impl Outcome {
    fn verdict(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.verdicts.insert(key.into(), v.into());
        self
    }

    fn witness(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.witnesses.insert(key.into(), v.into());
        self
    }
}

/// The report object: command, input digest, options, verdicts, witnesses.
pub fn report_value(command: &str, digest: &str, opts: &Options, out: &Outcome) -> Value {
    json!({
        "command": command,
        "inputDigest": digest,
        "options": opts.to_json(),
        "verdicts": Value::Object(out.verdicts.clone()),
        "witnesses": Value::Object(out.witnesses.clone()),
    })
}

pub fn error_value(command: &str, digest: &str, err: &Error) -> Value {
    let kind = match err {
        Error::Schema(_) => "schema",
        Error::Precondition(_) => "precondition",
        Error::Congruence(_) => "congruence",
        Error::Internal(_) => "internal",
    };
    json!({ "command": command, "inputDigest": digest, "error": { "kind": kind, "message": err.to_string() } })
}

fn rows(v: &[Vec<Rational>]) -> Value {
    json!(json::rows_to_json(v))
}

fn witness_json(w: &Witness) -> Value {
    Value::Array(
        w.iter().map(|(m, s)| json!({ "multidegree": multidegree_key(m), "section": json::rows_to_json(&[s.clone()])[0] })).collect(),
    )
}

fn verdict_into<W>(out: &mut Outcome, key: &str, v: &Verdict<W>, wit: impl FnOnce(&W) -> Value) {
    out.verdict(key, v.label());
    if let Verdict::Found(w) = v {
        out.witness(key, wit(w));
    }
}

fn locus_json(l: &VanishingLocus) -> Value {
    let support: Vec<Value> = if l.is_whole() {
        Vec::new()
    } else {
        l.generator.rational_roots().iter().map(|t| json!({ "t": rat_to_json(t), "multiplicity": l.multiplicity(t) })).collect()
    };
    json!({
        "generator": json::poly_to_json(&l.generator),
        "whole": l.is_whole(),
        "empty": l.is_empty(),
        "rationalSupport": support,
    })
}

/// Extra sample points `2/3, 3/4, ...`, kept away from small integers.
fn extra_samples(n: usize) -> Vec<Rational> {
    (0..n).map(|i| Rational::new((i as i64 + 2).into(), (i as i64 + 3).into())).collect()
}

/// Runs `command` on `doc`. `fixtures` is not handled here: it emits a
/// document rather than a report.
pub fn run(command: &str, doc: &Document, opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    match command {
        "check-linked" => {
            let ls = json::linked_from_document(doc)?;
            let ok = check_linked(&ls)?;
            out.verdict("linked", ok).verdict("conditionI", ls.bundle.condition_i_holds());
            out.gate = Some(ok);
        }
        "check-eht" => {
            let s = json::eht_from_document(doc)?;
            let (direct, kernel) = (check_eht_direct(&s)?, check_eht_kernel(&s)?);
            out.verdict("direct", direct).verdict("kernel", kernel).verdict("agree", direct == kernel);
            out.gate = Some(direct && kernel);
        }
        "check-refined" => {
            let ok = check_refined(&json::eht_from_document(doc)?)?;
            out.verdict("refined", ok);
            out.gate = Some(ok);
        }
        "check-simple" => {
            let ls = json::linked_from_document(doc)?;
            let v = check_simple(&ls, opts.search())?;
            verdict_into(&mut out, "simple", &v, witness_json);
            out.gate = Some(v.holds());
        }
        "check-constrained" => {
            let s = json::eht_from_document(doc)?;
            let v = check_constrained(&s, opts.search())?;
            verdict_into(&mut out, "constrained", &v, witness_json);
            out.gate = Some(v.holds());
        }
        "check-adaptable" => {
            let ok = chain_adaptable(&json::eht_from_document(doc)?)?;
            out.verdict("chainAdaptable", ok);
            out.gate = Some(ok);
        }
        "kernel-table" => {
            let s = json::eht_from_document(doc)?;
            let table: Map<String, Value> =
                kernel_dimension_table(&s)?.into_iter().map(|(w, d)| (multidegree_key(&w), json!(d))).collect();
            let all_k = table.values().all(|d| d.as_u64() == Some(s.k() as u64));
            out.verdict("allEqualK", all_k).verdict("k", s.k());
            out.witness("table", Value::Object(table));
        }
        "eht-to-linked" => {
            let s = json::eht_from_document(doc)?;
            let ls = eht_to_linked(&s)?;
            let other = crate::series::eht_to_linked_with(&s, TieBreak { reverse_edges: true, drop_lowest: true })?;
            out.verdict("linked", check_linked(&ls)?).verdict("tieBreakIndependent", ls == other);
            out.witness("series", serde_json::to_value(json::linked_document(&ls)).expect("serializable"));
        }
        "linked-to-eht" => {
            let s = forgetful_to_eht(&json::linked_from_document(doc)?)?;
            out.verdict("eht", check_eht_kernel(&s)?);
            out.witness("series", serde_json::to_value(json::eht_document(&s)).expect("serializable"));
        }
        "chain-bases" => {
            let s = json::eht_from_document(doc)?;
            let cb = chain_global_bases(&s, opts.seed)?;
            let nontrivial = cb.sigma.iter().any(|p| p.iter().enumerate().any(|(j, &x)| j != x));
            out.verdict("nontrivialPermutation", nontrivial);
            out.witness("order", json!(cb.shape.order.iter().map(|&v| s.cfg().graph.vertices()[v].id.clone()).collect::<Vec<_>>()));
            out.witness("bases", Value::Array(cb.bases.iter().map(|b| rows(b)).collect()));
            out.witness("sigma", json!(cb.sigma));
            out.witness("witness", witness_json(&cb.witness));
        }
        "grassmannian-check" => {
            let (data, point) = json::prelinked_from_document(doc)?;
            let bound = opts.path_bound.unwrap_or_else(|| data.default_path_bound());
            out.verdict("conditionI", check_condition_i(&data, bound));
            match point {
                None => out.gate = Some(check_condition_i(&data, bound)),
                Some(p) => {
                    let linked = is_linked_point(&data, &p)?;
                    out.verdict("linked", linked);
                    let simple = is_simple_point(&data, &p, opts.search())?;
                    verdict_into(&mut out, "simple", &simple, |w| {
                        Value::Array(
                            w.iter()
                                .map(|(v, s)| json!({ "vertex": data.vertices[*v], "section": json::rows_to_json(&[s.clone()])[0] }))
                                .collect(),
                        )
                    });
                    let images: Map<String, Value> = (1..data.n())
                        .map(|v| (data.vertices[v].clone(), json!(json::subspace_to_json(&images_in(&data, &p, 0)[v]))))
                        .collect();
                    out.witness("imagesInFirst", Value::Object(images));
                    out.gate = Some(linked);
                }
            }
        }
        "tangent-dim" => {
            let (data, point) = json::prelinked_from_document(doc)?;
            let p = point.ok_or_else(|| Error::Schema("missing section \"point\"".into()))?;
            let r = p.spaces.first().map(|s| s.dim()).unwrap_or(0);
            out.verdict("tangentDimension", tangent_dimension(&data, &p)?).verdict("expected", r * (data.d - r));
        }
        "vanishing-locus" => {
            let f = json::matrix_from_document(doc)?;
            let chain = vanishing_chain(&f);
            let divisibility = chain.windows(2).all(|p| p[0].contains(&p[1]));
            let pts: Vec<Rational> = detloci::sample_points(&chain.iter().map(|l| l.generator.clone()).collect::<Vec<_>>())
                .into_iter()
                .chain(extra_samples(opts.samples))
                .collect();
            let pointwise = pts.iter().all(|t| {
                let dim = detloci::kernel_at_point(&f, t).dim();
                chain.iter().enumerate().all(|(k, l)| l.contains_point(t) == (dim >= k))
            });
            out.verdict("divisibilityChain", divisibility).verdict("pointwiseAgreement", pointwise);
            out.witness("loci", Value::Array(chain.iter().map(locus_json).collect()));
            out.gate = Some(divisibility && pointwise);
        }
        "family-locus" => {
            let (fam, bases) = json::family_from_document(doc)?;
            let k = fam.bundle.cfg.k;
            let mut loci = Map::new();
            for w in degree_graph::enumerate_bar_gii(&fam.bundle.cfg) {
                let l = family_vanishing_locus(&fam, &bases, &w, k)?;
                loci.insert(multidegree_key(&w), locus_json(&l));
            }
            out.verdict("k", k);
            out.witness("loci", Value::Object(loci));
        }
        "rho" => {
            let (g, r, d, k) = opts.rho.ok_or_else(|| Error::Schema("rho needs g, r, d and k".into()))?;
            out.verdict("rho", rho(g, r, d, k)).verdict("rhoMinus1", rho_minus_1(g, r, d, k)).verdict("rhoMinusG", rho_minus_g(g, r, d, k));
        }
        other => return Err(Error::Schema(format!("unknown command {other:?}"))),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(name: &str) -> Document {
        fixture_document(name).unwrap()
    }

    #[test]
    fn a6_report() {
        let out = run("grassmannian-check", &doc("example-A6"), &Options::default()).unwrap();
        assert_eq!(out.verdicts["linked"], json!(true));
        assert_eq!(out.verdicts["simple"], json!("false"));
        assert_eq!(out.gate, Some(true));
    }

    #[test]
    fn rho_formula() {
        let opts = Options { rho: Some((0, 1, 2, 2)), ..Options::default() };
        assert_eq!(run("rho", &Document::default(), &opts).unwrap().verdicts["rho"], json!(2));
    }

    #[test]
    fn every_fixture_parses() {
        for name in FIXTURE_NAMES {
            let text = json::to_canonical(&doc(name));
            assert_eq!(json::parse_document(&text).unwrap(), doc(name));
        }
        assert!(fixture_document("nope").is_none());
    }

    #[test]
    fn wrong_sections_are_schema_errors() {
        let e = run("check-linked", &doc("diagonal-t"), &Options::default()).unwrap_err();
        assert!(matches!(e, Error::Schema(_)));
    }
}
