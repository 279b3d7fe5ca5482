//! The verification suite: every claim reproduced as a named check.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohom::{ExtQ8, FreeResolution, Nullhomotopy, DEFAULT_LENGTH};
use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FiniteField};
use crate::gmod::stable::{endotrivial_report, stable_iso_witness};
use crate::gmod::truncated::{endotrivial_truncated, lifted_joker};
use crate::gmod::{
    self, builtin, module_iso, projective_cover, syzygy_n, GModule, BUILTIN_MODULES,
};
use crate::groups::FiniteGroup;
use crate::hecke::{G24Hecke, LaurentMatrix, DISPLAYED_BASIS, DISPLAYED_MATRICES};
use crate::linalg::Matrix;
use crate::morava::coaction::{is_right_action, BUILTIN_SPECS};
use crate::morava::{hensel_sqrt, q8_elements, q8_embed, CoactionSpec, Convention, O2Element};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Flagged => "flagged",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// Acceptance criterion number, 1 to 12.
    pub criterion: u8,
    pub anchor: String,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub seeds: BTreeMap<String, u64>,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    /// No check failed; flagged checks do not count as failures.
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Report> {
        Ok(serde_json::from_value(value.clone())?)
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:<7} {:>2}  {:<width$}  {}\n",
                c.status.to_string().to_uppercase(),
                c.criterion,
                c.id,
                c.details
            ));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} checks: {} pass, {} fail, {} flagged (jokerlab {})\n",
            s.total, s.pass, s.fail, s.flagged, self.version
        ));
        out
    }
}

enum Outcome {
    Pass(String),
    Fail(String),
    Flagged(String),
}

fn ensure(ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> Outcome {
    if ok {
        Outcome::Pass(pass.into())
    } else {
        Outcome::Fail(fail.into())
    }
}

/// Entrywise differences between two matrices of the same shape.
pub fn matrix_diff(expected: &Matrix, actual: &Matrix) -> Option<String> {
    if expected.rows() != actual.rows() || expected.cols() != actual.cols() {
        return Some(format!(
            "shape {}x{} vs {}x{}",
            expected.rows(),
            expected.cols(),
            actual.rows(),
            actual.cols()
        ));
    }
    let diffs: Vec<String> = (0..expected.rows())
        .flat_map(|r| (0..expected.cols()).map(move |c| (r, c)))
        .filter(|&(r, c)| expected.get(r, c) != actual.get(r, c))
        .map(|(r, c)| {
            format!(
                "({r},{c}): expected {} got {}",
                expected.get(r, c),
                actual.get(r, c)
            )
        })
        .collect();
    if diffs.is_empty() {
        None
    } else {
        Some(diffs.join("; "))
    }
}

/// Shared, lazily computed inputs for one run.
struct Context {
    cache_dir: Option<PathBuf>,
    ext: OnceLock<std::result::Result<Arc<ExtQ8>, String>>,
    hecke: OnceLock<std::result::Result<Arc<G24Hecke>, String>>,
}

impl Context {
    fn ext(&self) -> Result<Arc<ExtQ8>> {
        self.ext
            .get_or_init(|| {
                let q8 = Arc::new(FiniteGroup::q8());
                FreeResolution::cached(
                    FiniteField::f4(),
                    q8,
                    DEFAULT_LENGTH,
                    self.cache_dir.as_deref(),
                )
                .and_then(ExtQ8::from_resolution)
                .map(Arc::new)
                .map_err(|e| e.to_string())
            })
            .clone()
            .map_err(Error::Internal)
    }

    fn hecke(&self) -> Result<Arc<G24Hecke>> {
        self.hecke
            .get_or_init(|| G24Hecke::compute().map(Arc::new).map_err(|e| e.to_string()))
            .clone()
            .map_err(Error::Internal)
    }
}

type CheckFn = fn(&Context) -> Result<Outcome>;

struct CheckSpec {
    id: &'static str,
    criterion: u8,
    anchor: &'static str,
    run: CheckFn,
}

const MASSEY_PERTURBATIONS: u64 = 4;

const CHECKS: &[CheckSpec] = &[
    CheckSpec {
        id: "embed.relations",
        criterion: 1,
        anchor: "i^2 = j^2 = k^2 = -1, ij = k in O2",
        run: embed_relations,
    },
    CheckSpec {
        id: "embed.digits",
        criterion: 1,
        anchor: "i = 1+S+2w, j = 1+w^2S+2w, k = 1+wS+2w mod S^3",
        run: embed_digits,
    },
    CheckSpec {
        id: "coaction.cone-eta",
        criterion: 2,
        anchor: "cone(eta) matrices",
        run: coaction_cone_eta,
    },
    CheckSpec {
        id: "coaction.cone-nu",
        criterion: 2,
        anchor: "cone(nu) matrices",
        run: coaction_cone_nu,
    },
    CheckSpec {
        id: "coaction.three-cell",
        criterion: 2,
        anchor: "S^0 u_nu e^4 u_eta e^6 matrices",
        run: coaction_three_cell,
    },
    CheckSpec {
        id: "coaction.cone-sigma",
        criterion: 2,
        anchor: "cone(sigma): i, j act trivially",
        run: coaction_cone_sigma,
    },
    CheckSpec {
        id: "coaction.w3-transpose",
        criterion: 2,
        anchor: "three-cell matrices are transposes of the W3 matrices in the new basis",
        run: coaction_w3_transpose,
    },
    CheckSpec {
        id: "coaction.action-law",
        criterion: 3,
        anchor: "evaluated coactions are Q8-actions",
        run: coaction_action_law,
    },
    CheckSpec {
        id: "endotrivial.W5",
        criterion: 4,
        anchor: "W5 is stably invertible and self dual",
        run: endotrivial_w5,
    },
    CheckSpec {
        id: "endotrivial.M",
        criterion: 4,
        anchor: "M' and M'' are endotrivial",
        run: endotrivial_m,
    },
    CheckSpec {
        id: "endotrivial.sigma-nu",
        criterion: 4,
        anchor: "S^0 u_sigma e^8 u_nu e^12 is not stably invertible",
        run: endotrivial_sigma_nu,
    },
    CheckSpec {
        id: "endotrivial.lifted",
        criterion: 4,
        anchor: "the lifted Joker is stably invertible",
        run: endotrivial_lifted,
    },
    CheckSpec {
        id: "stable.jprime-squared",
        criterion: 5,
        anchor: "J' (x) J' = k stably",
        run: stable_jprime_squared,
    },
    CheckSpec {
        id: "stable.omega2-jprime",
        criterion: 5,
        anchor: "J'' = Omega^2 J'",
        run: stable_omega2,
    },
    CheckSpec {
        id: "stable.jprime-jdoubleprime",
        criterion: 5,
        anchor: "J' and J'' are not isomorphic",
        run: stable_j_not_iso,
    },
    CheckSpec {
        id: "stable.omega4-k",
        criterion: 5,
        anchor: "Omega^4 k = k stably",
        run: stable_omega4,
    },
    CheckSpec {
        id: "kq8.basis",
        criterion: 6,
        anchor: "1, X, Y, YX, XY, XYX, YXY, XYXY is a basis of k[Q8]",
        run: kq8_basis,
    },
    CheckSpec {
        id: "kq8.relations",
        criterion: 6,
        anchor: "X^2 = YXY, Y^2 = XYX, XYXY = norm",
        run: kq8_relations,
    },
    CheckSpec {
        id: "kq8.l-m-iso",
        criterion: 6,
        anchor: "L' = M' and L'' = M''",
        run: kq8_l_m_iso,
    },
    CheckSpec {
        id: "ext.betti",
        criterion: 7,
        anchor: "Ext of Q8 over F4",
        run: ext_betti,
    },
    CheckSpec {
        id: "ext.relations",
        criterion: 7,
        anchor: "u^2+uv+v^2 = u^3 = v^3 = u^2v+uv^2 = 0",
        run: ext_relations,
    },
    CheckSpec {
        id: "ext.generators",
        criterion: 7,
        anchor: "u(i)=1, u(j)=0, v(i)=0, v(j)=1",
        run: ext_generators,
    },
    CheckSpec {
        id: "massey.contains",
        criterion: 8,
        anchor: "<a1, a1^2, a1> contains (u+wv)^2",
        run: massey_contains,
    },
    CheckSpec {
        id: "massey.indeterminacy",
        criterion: 8,
        anchor: "indeterminacy k{u^2+wv^2}",
        run: massey_indeterminacy,
    },
    CheckSpec {
        id: "massey.stability",
        criterion: 8,
        anchor: "representative independent of nullhomotopies",
        run: massey_stability,
    },
    CheckSpec {
        id: "massey.display",
        criterion: 8,
        anchor: "closing display k{u+wv}+(u^2+w^2v^2)",
        run: massey_display,
    },
    CheckSpec {
        id: "hecke.basis",
        criterion: 9,
        anchor: "the 8 elements form a basis",
        run: hecke_basis,
    },
    CheckSpec {
        id: "hecke.matrices",
        criterion: 9,
        anchor: "action matrices on z0, z4, z6",
        run: hecke_matrices,
    },
    CheckSpec {
        id: "hecke.duplicates",
        criterion: 9,
        anchor: "fifth = sixth and seventh = eighth displayed matrices",
        run: hecke_duplicates,
    },
    CheckSpec {
        id: "hecke.associative",
        criterion: 9,
        anchor: "Hecke product is associative",
        run: hecke_associative,
    },
    CheckSpec {
        id: "hecke.double-coset",
        criterion: 9,
        anchor: "nH * m = sum h n h^-1 m",
        run: hecke_double_coset,
    },
    CheckSpec {
        id: "g24.simples",
        criterion: 10,
        anchor: "three simple F4[G24]-modules with 8-dimensional covers",
        run: g24_simples,
    },
    CheckSpec {
        id: "g24.idempotents",
        criterion: 10,
        anchor: "lifted idempotents",
        run: g24_idempotents,
    },
    CheckSpec {
        id: "padic.hensel",
        criterion: 11,
        anchor: "sqrt(-7) = 5 mod 8",
        run: padic_hensel,
    },
    CheckSpec {
        id: "padic.teichmuller",
        criterion: 11,
        anchor: "g = sum a_r S^r",
        run: padic_teichmuller,
    },
    CheckSpec {
        id: "props.field-laws",
        criterion: 12,
        anchor: "field axioms",
        run: props_field_laws,
    },
    CheckSpec {
        id: "props.module-laws",
        criterion: 12,
        anchor: "module axioms",
        run: props_module_laws,
    },
    CheckSpec {
        id: "props.resolution",
        criterion: 12,
        anchor: "resolution exactness and minimality",
        run: props_resolution,
    },
    CheckSpec {
        id: "props.hecke-closure",
        criterion: 12,
        anchor: "Hecke products stay in the span of the basis",
        run: props_hecke_closure,
    },
];

/// All check ids in report order.
pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.id).collect()
}

/// Runs the checks whose id starts with `filter`.
pub fn verify_paper(filter: Option<&str>) -> Report {
    verify_paper_with(filter, None)
}

/// As `verify_paper`, reading and writing resolutions under `cache_dir`.
pub fn verify_paper_with(filter: Option<&str>, cache_dir: Option<&Path>) -> Report {
    let ctx = Context {
        cache_dir: cache_dir.map(Path::to_path_buf),
        ext: OnceLock::new(),
        hecke: OnceLock::new(),
    };
    let selected: Vec<&CheckSpec> = CHECKS
        .iter()
        .filter(|c| filter.is_none_or(|f| c.id.starts_with(f)))
        .collect();
    let mut checks: Vec<Check> = selected
        .par_iter()
        .map(|spec| {
            let (status, details) = match (spec.run)(&ctx) {
                Ok(Outcome::Pass(d)) => (Status::Pass, d),
                Ok(Outcome::Fail(d)) => (Status::Fail, d),
                Ok(Outcome::Flagged(d)) => (Status::Flagged, d),
                Err(e) => (Status::Fail, format!("error: {e}")),
            };
            Check {
                id: spec.id.to_string(),
                criterion: spec.criterion,
                anchor: spec.anchor.to_string(),
                status,
                details,
            }
        })
        .collect();
    let order: BTreeMap<&str, usize> = CHECKS.iter().enumerate().map(|(i, c)| (c.id, i)).collect();
    checks.sort_by_key(|c| order[c.id.as_str()]);
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    let summary = Summary {
        total: checks.len(),
        pass: count(Status::Pass),
        fail: count(Status::Fail),
        flagged: count(Status::Flagged),
    };
    let seeds = BTreeMap::from([
        ("decompose".to_string(), gmod::structure::DEFAULT_SEED),
        ("massey-perturbations".to_string(), MASSEY_PERTURBATIONS),
    ]);
    Report {
        version: crate::VERSION.to_string(),
        seeds,
        checks,
        summary,
    }
}

fn inline(m: &Matrix) -> String {
    m.to_text().trim().replace('\n', "; ")
}

fn f4() -> FiniteField {
    FiniteField::f4()
}

fn w() -> FieldElement {
    f4().omega().expect("F4 has w")
}

fn m(text: &str) -> Result<Matrix> {
    Matrix::parse_text(f4(), text)
}

const I: usize = 2;
const J: usize = 4;

fn embed_relations(_: &Context) -> Result<Outcome> {
    let p = 8;
    let (i, j, k) = q8_embed(p)?;
    let minus = O2Element::one(p).neg();
    let ok = i.mul(&i) == minus && j.mul(&j) == minus && k.mul(&k) == minus && i.mul(&j) == k;
    Ok(ensure(
        ok,
        "exact at precision 2^8",
        "a quaternion relation fails at precision 2^8",
    ))
}

fn embed_digits(_: &Context) -> Result<Outcome> {
    let (i, j, k) = q8_embed(8)?;
    let w = w();
    let one = f4().one();
    let expected = [vec![one, one, w], vec![one, w * w, w], vec![one, w, w]];
    let got: Vec<Vec<FieldElement>> = [i, j, k]
        .iter()
        .map(|g| g.teichmuller_digits(3).map(|d| d.residues()))
        .collect::<Result<_>>()?;
    Ok(ensure(
        got == expected,
        "digits (1,1,w), (1,w2,w), (1,w,w)",
        format!("digits {got:?}"),
    ))
}

fn compare_generators(spec: &str, i_text: &str, j_text: &str) -> Result<Outcome> {
    let mats = CoactionSpec::builtin(spec)?.q8_matrices(Convention::Right)?;
    let mut diffs = Vec::new();
    for (name, idx, text) in [("i", I, i_text), ("j", J, j_text)] {
        if let Some(d) = matrix_diff(&m(text)?, &mats[idx]) {
            diffs.push(format!("{name}: {d}"));
        }
    }
    Ok(ensure(
        diffs.is_empty(),
        format!("i = [{}], j = [{}]", inline(&mats[I]), inline(&mats[J])),
        diffs.join(" | "),
    ))
}

fn coaction_cone_eta(_: &Context) -> Result<Outcome> {
    compare_generators("cone-eta", "1 1; 0 1", "1 w2; 0 1")
}

fn coaction_cone_nu(_: &Context) -> Result<Outcome> {
    compare_generators("cone-nu", "1 1; 0 1", "1 w; 0 1")
}

fn coaction_three_cell(_: &Context) -> Result<Outcome> {
    compare_generators("nu-eta", "1 1 w; 0 1 1; 0 0 1", "1 w w; 0 1 w2; 0 0 1")
}

fn coaction_cone_sigma(_: &Context) -> Result<Outcome> {
    let mats = CoactionSpec::builtin("cone-sigma")?.q8_matrices(Convention::Right)?;
    Ok(ensure(
        mats.iter().all(Matrix::is_identity),
        "all eight matrices are the identity",
        "some element acts nontrivially",
    ))
}

/// Rewrites W3 in the basis w1+w2, w2+w^2 w3, w3 and compares both with the
/// displayed matrices and with the transposed three-cell matrices.
pub fn w3_new_basis_diff(w3: &GModule, three_cell: &[Matrix]) -> Result<Option<String>> {
    let p = m("1 0 0; 1 1 0; 0 w2 1")?;
    let new = w3.in_basis(&p)?;
    let mut diffs = Vec::new();
    for (name, idx, text) in [
        ("i", I, "1 0 0; 1 1 0; w 1 1"),
        ("j", J, "1 0 0; w 1 0; w w2 1"),
    ] {
        if let Some(d) = matrix_diff(&m(text)?, new.rho(idx)) {
            diffs.push(format!("W3 {name}: {d}"));
        }
        if let Some(d) = matrix_diff(&new.rho(idx).transpose(), &three_cell[idx]) {
            diffs.push(format!("transpose {name}: {d}"));
        }
    }
    Ok((!diffs.is_empty()).then(|| diffs.join(" | ")))
}

fn coaction_w3_transpose(_: &Context) -> Result<Outcome> {
    let three = CoactionSpec::builtin("nu-eta")?.q8_matrices(Convention::Right)?;
    Ok(match w3_new_basis_diff(&builtin("W3")?, &three)? {
        None => Outcome::Pass(
            "new-basis W3 matrices match; three-cell matrices are their transposes".into(),
        ),
        Some(d) => Outcome::Fail(d),
    })
}

fn coaction_action_law(_: &Context) -> Result<Outcome> {
    let group = FiniteGroup::q8();
    let mut evaluated = 0;
    for name in BUILTIN_SPECS {
        let spec = CoactionSpec::builtin(name)?;
        let sets: Vec<Vec<Matrix>> = if spec.unknown_count() == 0 {
            vec![spec.q8_matrices(Convention::Right)?]
        } else {
            spec.complete()?.into_iter().map(|c| c.matrices).collect()
        };
        for mats in sets {
            if !is_right_action(&group, &mats) {
                return Ok(Outcome::Fail(format!("{name} fails M(gh) = M(h)M(g)")));
            }
            evaluated += 1;
        }
    }
    Ok(Outcome::Pass(format!(
        "{evaluated} evaluated coactions, 64 pairs each"
    )))
}

fn endotrivial_w5(_: &Context) -> Result<Outcome> {
    let w5 = builtin("W5")?;
    let report = endotrivial_report(&w5)?;
    let self_dual = module_iso(&w5, &w5.dual())?.is_some();
    Ok(ensure(
        report.endotrivial && self_dual,
        "endotrivial by both methods; W5 = W5*",
        format!("endotrivial {}, self dual {self_dual}", report.endotrivial),
    ))
}

fn endotrivial_m(_: &Context) -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut ok = true;
    for name in ["Mprime", "Mdoubleprime"] {
        let r = endotrivial_report(&builtin(name)?)?;
        ok &= r.endotrivial && r.direct == Some(true);
        parts.push(format!(
            "{name}: direct {:?}, restriction {}",
            r.direct, r.restriction
        ));
    }
    Ok(ensure(ok, parts.join("; "), parts.join("; ")))
}

fn endotrivial_sigma_nu(_: &Context) -> Result<Outcome> {
    let completions = CoactionSpec::builtin("sigma-nu")?.complete()?;
    for c in &completions {
        if !c.center_trivial {
            return Ok(Outcome::Fail(format!(
                "completion {:?} has nontrivial centre action",
                c.values
            )));
        }
        if gmod::endotrivial(&c.spec.left_module()?)? {
            return Ok(Outcome::Fail(format!(
                "completion {:?} is endotrivial",
                c.values
            )));
        }
    }
    Ok(Outcome::Pass(format!(
        "{} completions, all with trivial centre, none endotrivial",
        completions.len()
    )))
}

fn endotrivial_lifted(_: &Context) -> Result<Outcome> {
    let lifted = lifted_joker(8)?;
    let ok = endotrivial_truncated(&lifted)?;
    let iso = module_iso(&lifted.reduce()?, &builtin("W5")?.dual())?.is_some()
        || module_iso(&lifted.reduce()?, &builtin("W5")?)?.is_some();
    Ok(ensure(
        ok && lifted.rank() == 5,
        format!("rank 5 over Z4/2^8, endotrivial; reduction isomorphic to W5: {iso}"),
        format!("rank {}, endotrivial {ok}", lifted.rank()),
    ))
}

fn witness_outcome(m: &GModule, n: &GModule, what: &str) -> Result<Outcome> {
    match stable_iso_witness(m, n)? {
        None => Ok(Outcome::Fail(format!("{what}: not stably isomorphic"))),
        Some((sm, sn, x)) => {
            let ok = x.is_invertible() && sm.remainder.is_homomorphism(&sn.remainder, &x);
            Ok(ensure(
                ok,
                format!(
                    "{what}: free ranks {} and {}, witness on {}-dimensional remainders intertwines",
                    sm.free_rank,
                    sn.free_rank,
                    sm.remainder.dim()
                ),
                format!("{what}: witness is not an intertwiner"),
            ))
        }
    }
}

fn stable_jprime_squared(_: &Context) -> Result<Outcome> {
    let j = builtin("Jprime")?;
    witness_outcome(&j.tensor(&j)?, &builtin("k")?, "J' (x) J' ~ k")
}

fn stable_omega2(_: &Context) -> Result<Outcome> {
    witness_outcome(
        &syzygy_n(&builtin("Jprime")?, 2)?,
        &builtin("Jdoubleprime")?,
        "Omega^2 J' ~ J''",
    )
}

fn stable_j_not_iso(_: &Context) -> Result<Outcome> {
    let iso = module_iso(&builtin("Jprime")?, &builtin("Jdoubleprime")?)?;
    Ok(ensure(
        iso.is_none(),
        "no isomorphism J' -> J''",
        "found an isomorphism J' -> J''",
    ))
}

fn stable_omega4(_: &Context) -> Result<Outcome> {
    let k = builtin("k")?;
    witness_outcome(&syzygy_n(&k, 4)?, &k, "Omega^4 k ~ k")
}

fn kq8_basis(_: &Context) -> Result<Outcome> {
    let cols: Vec<Matrix> = gmod::builtin::XY_BASIS_WORDS
        .iter()
        .map(|w| Matrix::column_vector(f4(), &gmod::builtin::xy_word(w)))
        .collect();
    let refs: Vec<&Matrix> = cols.iter().collect();
    let rank = Matrix::hstack(&refs)?.rank();
    Ok(ensure(
        rank == 8,
        "the 8 words have rank 8",
        format!("rank {rank}"),
    ))
}

fn kq8_relations(_: &Context) -> Result<Outcome> {
    use gmod::builtin::xy_word;
    let norm = gmod::algebra::norm(f4(), &FiniteGroup::q8());
    let rels = [
        ("X^2 = YXY", xy_word("XX") == xy_word("YXY")),
        ("Y^2 = XYX", xy_word("YY") == xy_word("XYX")),
        ("XYXY = norm", xy_word("XYXY") == norm),
    ];
    let failed: Vec<&str> = rels.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    Ok(ensure(
        failed.is_empty(),
        "all three relations hold",
        failed.join(", "),
    ))
}

fn kq8_l_m_iso(_: &Context) -> Result<Outcome> {
    let mut parts = Vec::new();
    for (l, mname) in [("Lprime", "Mprime"), ("Ldoubleprime", "Mdoubleprime")] {
        let (a, b) = (builtin(l)?, builtin(mname)?);
        match module_iso(&a, &b)? {
            Some(x) if x.is_invertible() && a.is_homomorphism(&b, &x) => {
                parts.push(format!("{l} -> {mname}: [{}]", inline(&x)))
            }
            _ => return Ok(Outcome::Fail(format!("{l} and {mname} are not isomorphic"))),
        }
    }
    Ok(Outcome::Pass(parts.join("; ")))
}

fn ext_betti(ctx: &Context) -> Result<Outcome> {
    let ext = ctx.ext()?;
    let ranks = ext.resolution.ranks().to_vec();
    let expected = vec![1, 2, 2, 1, 1, 2, 2, 1, 1];
    Ok(ensure(
        ranks == expected,
        format!("Betti numbers {ranks:?}"),
        format!("Betti numbers {ranks:?}, expected {expected:?}"),
    ))
}

fn ext_relations(ctx: &Context) -> Result<Outcome> {
    let e = ctx.ext()?;
    let (u, v) = (&e.u, &e.v);
    let quad = e
        .product(&[u, u])?
        .add(&e.product(&[u, v])?)?
        .add(&e.product(&[v, v])?)?;
    let cubic = e.product(&[u, u, v])?.add(&e.product(&[u, v, v])?)?;
    let rels = [
        ("u^2+uv+v^2", quad.is_zero()),
        ("u^3", e.product(&[u, u, u])?.is_zero()),
        ("v^3", e.product(&[v, v, v])?.is_zero()),
        ("u^2v+uv^2", cubic.is_zero()),
        (
            "(u+wv)(u+w^2v)",
            e.cup(&e.alpha1_squared()?, &e.alpha1()?)?.is_zero(),
        ),
        ("u^2 != 0", !e.product(&[u, u])?.is_zero()),
    ];
    let failed: Vec<&str> = rels.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    Ok(ensure(
        failed.is_empty(),
        "all relations hold, u^2 is nonzero",
        failed.join(", "),
    ))
}

fn ext_generators(ctx: &Context) -> Result<Outcome> {
    let e = ctx.ext()?;
    let g = e.resolution.group();
    let u = e.resolution.hom_identification(&e.u)?;
    let v = e.resolution.hom_identification(&e.v)?;
    let (i, j) = (g.element("i").expect("i"), g.element("j").expect("j"));
    let (zero, one) = (f4().zero(), f4().one());
    let ok = u[i] == one && u[j] == zero && v[i] == zero && v[j] == one;
    Ok(ensure(
        ok,
        "values match",
        format!("u(i)={} u(j)={} v(i)={} v(j)={}", u[i], u[j], v[i], v[j]),
    ))
}

fn massey_parts(
    e: &ExtQ8,
) -> Result<(
    crate::cohom::MasseyProduct,
    crate::cohom::CohomClass,
    crate::cohom::CohomClass,
)> {
    let w = w();
    let (a, b) = (e.alpha1()?, e.alpha1_squared()?);
    let uu = e.cup(&e.u, &e.u)?;
    let vv = e.cup(&e.v, &e.v)?;
    let bracket = e.resolution.massey(&a, &b, &a, Nullhomotopy::Minimal)?;
    Ok((bracket, uu.add(&vv.scale(w * w))?, uu.add(&vv.scale(w))?))
}

fn span_equals(
    basis: &[crate::cohom::CohomClass],
    target: &crate::cohom::CohomClass,
) -> Result<bool> {
    if basis.len() != 1 {
        return Ok(false);
    }
    Ok(f4().units().any(|c| basis[0] == target.scale(c)))
}

fn massey_contains(ctx: &Context) -> Result<Outcome> {
    let e = ctx.ext()?;
    let (bracket, square, _) = massey_parts(&e)?;
    Ok(ensure(
        bracket.contains(&square)?,
        "defined; contains u^2+w^2v^2",
        "bracket does not contain u^2+w^2v^2",
    ))
}

fn massey_indeterminacy(ctx: &Context) -> Result<Outcome> {
    let e = ctx.ext()?;
    let (bracket, _, indet) = massey_parts(&e)?;
    Ok(ensure(
        span_equals(&bracket.indeterminacy, &indet)?,
        "a Ext^1 + Ext^1 a = span{u^2+wv^2}",
        format!(
            "indeterminacy has dimension {}",
            bracket.indeterminacy.len()
        ),
    ))
}

fn massey_stability(ctx: &Context) -> Result<Outcome> {
    let e = ctx.ext()?;
    let (bracket, _, _) = massey_parts(&e)?;
    let (a, b) = (e.alpha1()?, e.alpha1_squared()?);
    for seed in 0..MASSEY_PERTURBATIONS {
        let other = e
            .resolution
            .massey(&a, &b, &a, Nullhomotopy::Perturbed(seed))?;
        if !bracket.contains(&other.representative)? {
            return Ok(Outcome::Fail(format!(
                "perturbation {seed} leaves the coset"
            )));
        }
    }
    Ok(Outcome::Pass(format!(
        "{MASSEY_PERTURBATIONS} perturbed nullhomotopies give the same coset"
    )))
}

fn massey_display(ctx: &Context) -> Result<Outcome> {
    let e = ctx.ext()?;
    let (bracket, square, indet) = massey_parts(&e)?;
    let companion = e.resolution.massey(
        &e.alpha1_squared()?,
        &e.alpha1()?,
        &e.alpha1_squared()?,
        Nullhomotopy::Minimal,
    )?;
    let companion_ok =
        companion.contains(&indet)? && span_equals(&companion.indeterminacy, &square)?;
    let main_ok = bracket.contains(&square)? && span_equals(&bracket.indeterminacy, &indet)?;
    if !(main_ok && companion_ok) {
        return Ok(Outcome::Fail(
            "computed brackets disagree with the stated values".into(),
        ));
    }
    Ok(Outcome::Flagged(
        "computed <a1,a1^2,a1> = k{u^2+wv^2} + (u^2+w^2v^2) and <a1^2,a1,a1^2> = k{u^2+w^2v^2} + (u^2+wv^2) in Ext^2; \
         the display writes the spans as k{u+wv} and k{u+w^2v}, which lie in Ext^1"
            .into(),
    ))
}

fn hecke_basis(ctx: &Context) -> Result<Outcome> {
    let h = ctx.hecke()?;
    let labels = h.basis_labels();
    let expected: Vec<String> = DISPLAYED_BASIS.iter().map(|s| s.to_string()).collect();
    Ok(ensure(
        labels == expected,
        labels.join(" ; "),
        format!("computed {labels:?}"),
    ))
}

fn laurent(text: &str) -> Result<LaurentMatrix> {
    LaurentMatrix::parse_text(f4(), text)
}

fn hecke_matrices(ctx: &Context) -> Result<Outcome> {
    let h = ctx.hecke()?;
    let mut diffs = Vec::new();
    for (k, (got, text)) in h.matrices.iter().zip(DISPLAYED_MATRICES).enumerate() {
        if *got != laurent(text)? {
            diffs.push(format!(
                "matrix {}: computed [{}], displayed [{text}]",
                k + 1,
                got.to_text()
            ));
        }
    }
    Ok(ensure(
        diffs.is_empty(),
        "all 8 matrices match entrywise",
        diffs.join(" | "),
    ))
}

fn hecke_duplicates(ctx: &Context) -> Result<Outcome> {
    let h = ctx.hecke()?;
    let m = &h.matrices;
    let mut notes = Vec::new();
    for (a, b) in [(4, 5), (6, 7)] {
        let displayed_equal = laurent(DISPLAYED_MATRICES[a])? == laurent(DISPLAYED_MATRICES[b])?;
        notes.push(format!(
            "matrices {} and {}: computed [{}] and [{}] ({}), displayed {}",
            a + 1,
            b + 1,
            m[a].to_text(),
            m[b].to_text(),
            if m[a] == m[b] { "equal" } else { "different" },
            if displayed_equal {
                "equal"
            } else {
                "different"
            },
        ));
    }
    Ok(Outcome::Flagged(format!(
        "{}; distinct basis elements act identically on z0, z4, z6",
        notes.join("; ")
    )))
}

fn hecke_associative(ctx: &Context) -> Result<Outcome> {
    let h = ctx.hecke()?;
    let alg = &h.algebra;
    let basis = &h.basis;
    let products: Vec<Vec<_>> = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| alg.mul(&a.element, &b.element))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let n = basis.len();
    let failures: usize = (0..n * n * n)
        .into_par_iter()
        .map(|t| {
            let (x, y, z) = (t / (n * n), (t / n) % n, t % n);
            let left = alg.mul(&products[x][y], &basis[z].element);
            let right = alg.mul(&basis[x].element, &products[y][z]);
            match (left, right) {
                (Ok(l), Ok(r)) if l == r => 0,
                _ => 1,
            }
        })
        .sum();
    let unit = alg.unit();
    let unit_ok = basis.iter().all(|b| {
        alg.mul(&unit, &b.element).is_ok_and(|x| x == b.element)
            && alg.mul(&b.element, &unit).is_ok_and(|x| x == b.element)
    });
    Ok(ensure(
        failures == 0 && unit_ok,
        format!("{} triples associative; 1H is a two-sided unit", n * n * n),
        format!("{failures} non-associative triples, unit ok: {unit_ok}"),
    ))
}

fn hecke_double_coset(ctx: &Context) -> Result<Outcome> {
    let h = ctx.hecke()?;
    let alg = &h.algebra;
    let group = Arc::clone(h.module.action().group());
    let sub = alg.subgroup().clone();
    let complement = crate::groups::GroupExt::subgroup(&group, 0..8)?;
    let mut compared = 0;
    for n in 0..8 {
        let mut conj: Vec<usize> = sub.members().iter().map(|&x| group.conj(x, n)).collect();
        conj.sort_unstable();
        conj.dedup();
        let orbit_sum = conj.iter().fold(alg.zero(), |acc, &c| {
            alg.add(&acc, &alg.term(crate::hecke::Laurent::one(f4()), c))
        });
        for m in &h.fixed_basis {
            let lhs = h.module.double_coset_act(&sub, &complement, n, m)?;
            let rhs = h.module.hecke_act(alg, &orbit_sum, m)?;
            if lhs != rhs {
                return Ok(Outcome::Fail(format!(
                    "n = {} differs on a basis vector",
                    group.element_name(n)
                )));
            }
            compared += 1;
        }
    }
    Ok(Outcome::Pass(format!(
        "{compared} comparisons over n in Q8 and z0, z4, z6"
    )))
}

fn g24_simples(_: &Context) -> Result<Outcome> {
    let simples = gmod::g24::simple_modules()?;
    let dims: Vec<usize> = simples.iter().map(GModule::dim).collect();
    let covers: Vec<usize> = simples
        .iter()
        .map(|s| projective_cover(s).map(|p| p.projective.dim()))
        .collect::<Result<_>>()?;
    let mut distinct = true;
    for a in 0..simples.len() {
        for b in a + 1..simples.len() {
            distinct &= module_iso(&simples[a], &simples[b])?.is_none();
        }
    }
    Ok(ensure(
        dims == [1, 1, 1] && covers == [8, 8, 8] && distinct,
        "3 pairwise non-isomorphic 1-dimensional simples, covers of dimension 8",
        format!("simple dims {dims:?}, cover dims {covers:?}, distinct {distinct}"),
    ))
}

fn g24_idempotents(_: &Context) -> Result<Outcome> {
    let data = gmod::g24::lifted_idempotents()?;
    let g = FiniteGroup::g24();
    let idem = data
        .idempotents
        .iter()
        .all(|e| gmod::algebra::mul(&g, e, e) == *e);
    Ok(ensure(
        idem && data.idempotents.len() == 3,
        format!(
            "3 orthogonal idempotents summing to 1, squarings {:?}",
            data.iterations
        ),
        "lifted idempotents are not exact",
    ))
}

fn padic_hensel(_: &Context) -> Result<Outcome> {
    let p = 8;
    let r = hensel_sqrt(-7, 5, p)?;
    let modulus = 1i128 << p;
    let sq = ((r as i128) * (r as i128) + 7).rem_euclid(modulus);
    Ok(ensure(
        r % 8 == 5 && sq == 0,
        format!("sqrt(-7) = {r} mod 2^{p}, {} mod 16", r % 16),
        format!("root {r}, r^2 + 7 = {sq} mod 2^{p}"),
    ))
}

fn padic_teichmuller(_: &Context) -> Result<Outcome> {
    let p = 8;
    let n = 2 * p as usize - 1;
    for (idx, g) in q8_elements(p)?.iter().enumerate() {
        let d = g.teichmuller_digits(n)?;
        if !d.are_teichmuller() || !d.reconstruct(p).eq_mod_s(g, n as u32) {
            return Ok(Outcome::Fail(format!(
                "element {} fails",
                FiniteGroup::q8().element_name(idx)
            )));
        }
    }
    Ok(Outcome::Pass(format!(
        "all 8 elements, {n} digits at precision 2^{p}"
    )))
}

fn props_field_laws(_: &Context) -> Result<Outcome> {
    let fields = [
        FiniteField::f2(),
        FiniteField::f4(),
        FiniteField::new(3, 0b1011)?,
        FiniteField::new(4, 0b10011)?,
    ];
    for f in fields {
        let els: Vec<FieldElement> = f.elements().collect();
        for &a in &els {
            if !a.is_zero() && a * a.inverse()? != f.one() {
                return Ok(Outcome::Fail(format!("{a} has no inverse in {}", f.name())));
            }
            for &b in &els {
                if a + b != b + a || a * b != b * a {
                    return Ok(Outcome::Fail(format!(
                        "commutativity fails in {}",
                        f.name()
                    )));
                }
                for &c in &els {
                    if (a + b) + c != a + (b + c)
                        || (a * b) * c != a * (b * c)
                        || a * (b + c) != a * b + a * c
                    {
                        return Ok(Outcome::Fail(format!(
                            "a law fails at ({a}, {b}, {c}) in {}",
                            f.name()
                        )));
                    }
                }
            }
        }
    }
    Ok(Outcome::Pass("F2, F4, F8, F16 exhaustively".into()))
}

fn props_module_laws(_: &Context) -> Result<Outcome> {
    for name in BUILTIN_MODULES {
        let m = builtin(name)?;
        m.verify()?;
        m.dual().verify()?;
        if m.tensor(&m)?.dim() != m.dim() * m.dim() {
            return Ok(Outcome::Fail(format!(
                "{name}: tensor has the wrong dimension"
            )));
        }
    }
    for j in 0..3 {
        gmod::g24::character_module(j)?.verify()?;
    }
    Ok(Outcome::Pass(format!(
        "{} named modules, their duals and squares; 3 G24 characters",
        BUILTIN_MODULES.len()
    )))
}

fn props_resolution(ctx: &Context) -> Result<Outcome> {
    let e = ctx.ext()?;
    e.resolution.check()?;
    let n = e.resolution.ranks().len();
    let periodic =
        (0..n.saturating_sub(4)).all(|s| e.resolution.ranks()[s] == e.resolution.ranks()[s + 4]);
    Ok(ensure(
        periodic,
        format!(
            "d^2 = 0, exact and minimal through degree {}; period 4",
            n - 1
        ),
        "Betti numbers are not 4-periodic",
    ))
}

fn props_hecke_closure(ctx: &Context) -> Result<Outcome> {
    let h = ctx.hecke()?;
    let alg = &h.algebra;
    let mut count = 0;
    for a in &h.basis {
        for b in &h.basis {
            let p = alg.mul(&a.element, &b.element)?;
            alg.coordinates(&h.basis, &p)?;
            let pm = h.module.hecke_matrix(alg, &p, &h.fixed_basis)?;
            let ab = h.matrices[h
                .basis
                .iter()
                .position(|x| x.element == a.element)
                .expect("in basis")]
            .mul(
                &h.matrices[h
                    .basis
                    .iter()
                    .position(|x| x.element == b.element)
                    .expect("in basis")],
            );
            if pm != ab {
                return Ok(Outcome::Fail("action is not multiplicative".into()));
            }
            count += 1;
        }
    }
    Ok(Outcome::Pass(format!(
        "{count} products H-fixed, in the span, and acting multiplicatively"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q8() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::q8())
    }

    #[test]
    fn full_run_is_clean() {
        let r = verify_paper(None);
        print!("{}", r.to_text());
        assert_eq!(r.summary.fail, 0);
        assert_eq!(r.summary.flagged, 2);
    }

    #[test]
    fn ids_are_unique() {
        let mut ids = check_ids();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn filter_selects_prefix() {
        let r = verify_paper(Some("hecke"));
        assert_eq!(r.checks.len(), 5);
        assert!(r.checks.iter().all(|c| c.id.starts_with("hecke")));
        assert_eq!(r.summary.flagged, 1);
    }

    #[test]
    fn swapped_omega_is_reported_entrywise() {
        let three = CoactionSpec::builtin("nu-eta")
            .unwrap()
            .q8_matrices(Convention::Right)
            .unwrap();
        let i = m("1 0 0; 1 1 0; 0 1 1").unwrap();
        let j = m("1 0 0; w2 1 0; 0 w 1").unwrap();
        let sabotaged = GModule::from_generators(f4(), q8(), &[i, j]).unwrap();
        let diff = w3_new_basis_diff(&sabotaged, &three).unwrap().unwrap();
        assert!(diff.contains("expected w got w2"), "{diff}");
    }
}
