//! Coaction formulas over the function algebra on O2^x and their evaluation
//! to action matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FiniteField};
use crate::gmod::GModule;
use crate::groups::FiniteGroup;
use crate::linalg::Matrix;

use super::o2::{q8_elements, O2Element};
use super::DEFAULT_PRECISION;

/// Largest number of unknown scalars `complete` will enumerate (4^8 cases).
pub const MAX_UNKNOWNS: usize = 8;

/// A monomial in the digit functions alpha_0, alpha_1, ...
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Known(FieldElement),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub monomial: Monomial,
    pub u_power: i32,
    pub target: usize,
    pub coefficient: Coefficient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoactionBasis {
    pub name: String,
    pub degree: i32,
    pub terms: Vec<Term>,
}

/// psi(x_s) = sum of coefficient * monomial * u^k (x) x_t over the terms of
/// each basis element x_s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoactionSpec {
    pub basis: Vec<CoactionBasis>,
}

/// Which side the evaluated matrices act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// Matrix columns are images of the basis under the right action; the
    /// assignment satisfies M(gh) = M(h) M(g).
    Right,
    /// Transposes of the right-action matrices: the adjoint left action.
    Left,
}

#[derive(Clone, Debug)]
pub struct Completion {
    pub values: Vec<FieldElement>,
    pub spec: CoactionSpec,
    pub matrices: Vec<Matrix>,
    pub center_trivial: bool,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    alpha: String,
    #[serde(default)]
    u_power: i32,
    target: String,
    #[serde(default = "one_string")]
    coefficient: String,
}

fn one_string() -> String {
    "1".into()
}

#[derive(Serialize, Deserialize)]
struct BasisJson {
    source: String,
    degree: i32,
    terms: Vec<TermJson>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn new(exps: &[u32]) -> Self {
        let mut exps = exps.to_vec();
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { exps }
    }

    pub fn alpha(k: usize, e: u32) -> Self {
        let mut exps = vec![0; k + 1];
        exps[k] = e;
        Self::new(&exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Highest digit index that occurs.
    pub fn depth(&self) -> usize {
        self.exps.len()
    }

    /// A power of alpha_0 alone.
    pub fn alpha0_power(&self) -> Option<u32> {
        match self.exps.as_slice() {
            [] => Some(0),
            [e] => Some(*e),
            _ => None,
        }
    }

    pub fn evaluate(&self, digits: &[FieldElement]) -> FieldElement {
        let f4 = FiniteField::f4();
        self.exps
            .iter()
            .enumerate()
            .fold(f4.one(), |acc, (k, &e)| acc * digits[k].pow(e as u64))
    }

    /// Parses `1` or a product like `a0^2 a1`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "1" || t.is_empty() {
            return Ok(Self::one());
        }
        let mut exps: Vec<u32> = Vec::new();
        for factor in t.split(|c: char| c.is_whitespace() || c == '*') {
            if factor.is_empty() {
                continue;
            }
            let (base, e) = match factor.split_once('^') {
                Some((b, e)) => (
                    b,
                    e.parse::<u32>()
                        .map_err(|_| Error::MalformedSpec(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            let k: usize = base
                .strip_prefix('a')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::MalformedSpec(format!("bad factor `{factor}`")))?;
            if exps.len() <= k {
                exps.resize(k + 1, 0);
            }
            exps[k] += e;
        }
        Ok(Self::new(&exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                if e == 1 {
                    format!("a{k}")
                } else {
                    format!("a{k}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl Term {
    pub fn known(monomial: Monomial, target: usize, c: FieldElement) -> Self {
        Term {
            monomial,
            u_power: 0,
            target,
            coefficient: Coefficient::Known(c),
        }
    }

    pub fn unknown(monomial: Monomial, target: usize) -> Self {
        Term {
            monomial,
            u_power: 0,
            target,
            coefficient: Coefficient::Unknown,
        }
    }

    pub fn with_u(mut self, k: i32) -> Self {
        self.u_power = k;
        self
    }
}

impl CoactionSpec {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn names(&self) -> Vec<&str> {
        self.basis.iter().map(|b| b.name.as_str()).collect()
    }

    pub fn unknown_count(&self) -> usize {
        self.basis
            .iter()
            .flat_map(|b| &b.terms)
            .filter(|t| t.coefficient == Coefficient::Unknown)
            .count()
    }

    /// Checks triangularity and that each diagonal term is a pure alpha_0
    /// power with a known coefficient.
    pub fn validate(&self) -> Result<()> {
        for (s, b) in self.basis.iter().enumerate() {
            let mut diagonal = 0;
            for t in &b.terms {
                if t.target > s {
                    return Err(Error::MalformedSpec(format!(
                        "{} has a term on the later basis element {}",
                        b.name, self.basis[t.target].name
                    )));
                }
                if t.target == s {
                    diagonal += 1;
                    if t.monomial.alpha0_power().is_none() {
                        return Err(Error::MalformedSpec(format!(
                            "diagonal term of {} is {}, not a power of a0",
                            b.name, t.monomial
                        )));
                    }
                    if t.coefficient == Coefficient::Unknown {
                        return Err(Error::MalformedSpec(format!(
                            "diagonal coefficient of {} is unknown",
                            b.name
                        )));
                    }
                }
            }
            if diagonal != 1 {
                return Err(Error::MalformedSpec(format!(
                    "{} has {diagonal} diagonal terms",
                    b.name
                )));
            }
        }
        Ok(())
    }

    /// Basis elements whose diagonal a0-power disagrees with the degree
    /// (x_{2k} should carry a0^e with e = k mod 3).
    pub fn degree_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (s, b) in self.basis.iter().enumerate() {
            for t in b.terms.iter().filter(|t| t.target == s) {
                if let Some(e) = t.monomial.alpha0_power() {
                    let k = b.degree.div_euclid(2).rem_euclid(3) as u32;
                    if e % 3 != k {
                        out.push(format!(
                            "{} in degree {} has diagonal a0^{e}, expected a0^{k} mod 3",
                            b.name, b.degree
                        ));
                    }
                }
            }
        }
        out
    }

    fn depth(&self) -> usize {
        self.basis
            .iter()
            .flat_map(|b| &b.terms)
            .map(|t| t.monomial.depth())
            .max()
            .unwrap_or(0)
            .max(1)
    }

    /// The action matrix of `g`; entry (t, s) is the evaluated coefficient
    /// of x_t in psi(x_s). u-powers are dropped (bar-basis normalization).
    pub fn matrix(&self, g: &O2Element, convention: Convention) -> Result<Matrix> {
        self.validate()?;
        if self.unknown_count() > 0 {
            return Err(Error::MalformedSpec(
                "spec has unknown coefficients; complete it first".into(),
            ));
        }
        let digits = g.teichmuller_digits(self.depth())?.residues();
        Ok(self.matrix_from_digits(&digits, &[], convention))
    }

    fn matrix_from_digits(
        &self,
        digits: &[FieldElement],
        unknowns: &[FieldElement],
        convention: Convention,
    ) -> Matrix {
        let f4 = FiniteField::f4();
        let n = self.dim();
        let mut m = Matrix::zeros(f4, n, n);
        let mut next = 0;
        for (s, b) in self.basis.iter().enumerate() {
            for t in &b.terms {
                let c = match t.coefficient {
                    Coefficient::Known(c) => c,
                    Coefficient::Unknown => {
                        next += 1;
                        unknowns[next - 1]
                    }
                };
                let v = m.get(t.target, s) + c * t.monomial.evaluate(digits);
                m.set(t.target, s, v);
            }
        }
        match convention {
            Convention::Right => m,
            Convention::Left => m.transpose(),
        }
    }

    /// Matrices for the eight elements of Q8 in group order.
    pub fn q8_matrices(&self, convention: Convention) -> Result<Vec<Matrix>> {
        q8_elements(DEFAULT_PRECISION)?
            .iter()
            .map(|g| self.matrix(g, convention))
            .collect()
    }

    /// Enumerates all values of the unknown coefficients for which the
    /// evaluated matrices form a right action of Q8. Sorted by the values.
    pub fn complete(&self) -> Result<Vec<Completion>> {
        self.validate()?;
        let u = self.unknown_count();
        if u > MAX_UNKNOWNS {
            return Err(Error::MalformedSpec(format!(
                "{u} unknowns exceed the enumeration limit {MAX_UNKNOWNS}"
            )));
        }
        let q8 = FiniteGroup::q8();
        let f4 = FiniteField::f4();
        let depth = self.depth();
        let digits: Vec<Vec<FieldElement>> = q8_elements(DEFAULT_PRECISION)?
            .iter()
            .map(|g| g.teichmuller_digits(depth).map(|d| d.residues()))
            .collect::<Result<_>>()?;
        let total = 1usize << (2 * u);
        let mut found: Vec<Completion> = (0..total)
            .into_par_iter()
            .filter_map(|code| {
                let values: Vec<FieldElement> = (0..u)
                    .map(|p| f4.element(((code >> (2 * p)) & 3) as u8))
                    .collect();
                let mats: Vec<Matrix> = digits
                    .iter()
                    .map(|d| self.matrix_from_digits(d, &values, Convention::Right))
                    .collect();
                if !is_right_action(&q8, &mats) {
                    return None;
                }
                let center_trivial = mats[1].is_identity();
                Some(Completion {
                    spec: self.fill(&values),
                    values,
                    matrices: mats,
                    center_trivial,
                })
            })
            .collect();
        found.sort_by_key(|c| c.values.iter().map(|v| v.bits()).collect::<Vec<_>>());
        if found.is_empty() {
            return Err(Error::NoCompletion);
        }
        Ok(found)
    }

    fn fill(&self, values: &[FieldElement]) -> CoactionSpec {
        let mut next = 0;
        let mut out = self.clone();
        for b in &mut out.basis {
            for t in &mut b.terms {
                if t.coefficient == Coefficient::Unknown {
                    t.coefficient = Coefficient::Known(values[next]);
                    next += 1;
                }
            }
        }
        out
    }

    /// The adjoint left F4[Q8]-module: rho(g) = M(g)^T.
    pub fn left_module(&self) -> Result<GModule> {
        let mats = self.q8_matrices(Convention::Left)?;
        GModule::from_table(FiniteField::f4(), Arc::new(FiniteGroup::q8()), mats)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<BasisJson> = self
            .basis
            .iter()
            .map(|b| BasisJson {
                source: b.name.clone(),
                degree: b.degree,
                terms: b
                    .terms
                    .iter()
                    .map(|t| TermJson {
                        alpha: t.monomial.to_string(),
                        u_power: t.u_power,
                        target: self.basis[t.target].name.clone(),
                        coefficient: match t.coefficient {
                            Coefficient::Known(c) => c.to_string(),
                            Coefficient::Unknown => "*".into(),
                        },
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_value(rows).expect("spec serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let rows: Vec<BasisJson> = serde_json::from_value(value.clone())
            .map_err(|e| Error::MalformedSpec(e.to_string()))?;
        let index: BTreeMap<String, usize> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.source.clone(), i))
            .collect();
        if index.len() != rows.len() {
            return Err(Error::MalformedSpec("duplicate basis names".into()));
        }
        let f4 = FiniteField::f4();
        let mut basis = Vec::new();
        for r in rows {
            let mut terms = Vec::new();
            for t in r.terms {
                let target = *index.get(&t.target).ok_or_else(|| {
                    Error::MalformedSpec(format!("unknown target `{}`", t.target))
                })?;
                let coefficient = if t.coefficient.trim() == "*" {
                    Coefficient::Unknown
                } else {
                    Coefficient::Known(f4.parse_element(&t.coefficient)?)
                };
                terms.push(Term {
                    monomial: Monomial::parse(&t.alpha)?,
                    u_power: t.u_power,
                    target,
                    coefficient,
                });
            }
            basis.push(CoactionBasis {
                name: r.source,
                degree: r.degree,
                terms,
            });
        }
        let spec = CoactionSpec { basis };
        spec.validate()?;
        Ok(spec)
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let f4 = FiniteField::f4();
        let one = f4.one();
        let a = Monomial::alpha;
        let k = |m: Monomial, t: usize| Term::known(m, t, one);
        let basis = |name: &str, degree: i32, terms: Vec<Term>| CoactionBasis {
            name: name.into(),
            degree,
            terms,
        };
        let x0 = || basis("x0", 0, vec![k(Monomial::one(), 0)]);
        let spec = match name {
            "cone-eta" => vec![
                x0(),
                basis("x2", 2, vec![k(a(1, 1), 0).with_u(1), k(a(0, 1), 1)]),
            ],
            "cone-nu" => vec![
                x0(),
                basis("x4", 4, vec![k(a(1, 2), 0).with_u(2), k(a(0, 2), 1)]),
            ],
            "nu-eta" => vec![
                basis("z0", 0, vec![k(Monomial::one(), 0)]),
                basis("z4", 4, vec![k(a(1, 2), 0).with_u(2), k(a(0, 2), 1)]),
                basis(
                    "z6",
                    6,
                    vec![
                        k(a(2, 1), 0).with_u(3),
                        k(Monomial::new(&[2, 1]), 1).with_u(1),
                        k(Monomial::one(), 2),
                    ],
                ),
            ],
            "cone-sigma" => vec![
                x0(),
                basis(
                    "x8",
                    8,
                    vec![
                        k(a(1, 4), 0).with_u(4),
                        k(a(1, 1), 0).with_u(4),
                        k(a(0, 1), 1),
                    ],
                ),
            ],
            "sigma-nu" => {
                // The unknown z0-coefficient of z12 is a combination of the
                // degree-12 monomials t1^6, t1^3 t2, t2^2, v2 t1^3, v2 t2, v2^2.
                let slots = [
                    a(1, 6),
                    Monomial::new(&[0, 3, 1]),
                    a(2, 2),
                    a(1, 3),
                    a(2, 1),
                    Monomial::one(),
                ];
                let mut z12 = slots
                    .into_iter()
                    .map(|m| Term::unknown(m, 0).with_u(6))
                    .collect::<Vec<_>>();
                z12.push(k(a(1, 2), 1).with_u(2));
                z12.push(k(a(0, 2), 2));
                vec![
                    basis("z0", 0, vec![k(Monomial::one(), 0)]),
                    basis("z8", 8, vec![k(a(0, 1), 1)]),
                    basis("z12", 12, z12),
                ]
            }
            other => {
                return Err(Error::UnknownName {
                    kind: "coaction spec",
                    name: other.into(),
                    valid: BUILTIN_SPECS.iter().map(|s| s.to_string()).collect(),
                })
            }
        };
        Ok(CoactionSpec { basis: spec })
    }
}

pub const BUILTIN_SPECS: [&str; 5] = ["cone-eta", "cone-nu", "nu-eta", "cone-sigma", "sigma-nu"];

/// M(gh) = M(h) M(g) for all pairs.
pub fn is_right_action(group: &FiniteGroup, mats: &[Matrix]) -> bool {
    let n = group.order();
    mats.len() == n
        && mats[group.identity()].is_identity()
        && (0..n).all(|g| (0..n).all(|h| mats[h].mul_unchecked(&mats[g]) == mats[group.mul(g, h)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Matrix {
        Matrix::parse_text(FiniteField::f4(), s).unwrap()
    }

    #[test]
    fn cone_eta_and_nu() {
        let eta = CoactionSpec::builtin("cone-eta")
            .unwrap()
            .q8_matrices(Convention::Right)
            .unwrap();
        assert_eq!(eta[2], m("1 1; 0 1"));
        assert_eq!(eta[4], m("1 w2; 0 1"));
        let nu = CoactionSpec::builtin("cone-nu")
            .unwrap()
            .q8_matrices(Convention::Right)
            .unwrap();
        assert_eq!(nu[2], m("1 1; 0 1"));
        assert_eq!(nu[4], m("1 w; 0 1"));
    }

    #[test]
    fn three_cell() {
        let spec = CoactionSpec::builtin("nu-eta").unwrap();
        let r = spec.q8_matrices(Convention::Right).unwrap();
        assert_eq!(r[2], m("1 1 w; 0 1 1; 0 0 1"));
        assert_eq!(r[4], m("1 w w; 0 1 w2; 0 0 1"));
        assert!(is_right_action(&FiniteGroup::q8(), &r));
        assert!(spec.degree_warnings().is_empty());
    }

    #[test]
    fn cone_sigma_trivial() {
        let r = CoactionSpec::builtin("cone-sigma")
            .unwrap()
            .q8_matrices(Convention::Right)
            .unwrap();
        assert!(r.iter().all(|x| x.is_identity()));
    }

    #[test]
    fn monomial_parse_round_trip() {
        for s in ["1", "a0^2 a1", "a1^3 a2", "a2"] {
            assert_eq!(Monomial::parse(s).unwrap().to_string(), s);
        }
        assert!(Monomial::parse("b1").is_err());
    }

    #[test]
    fn json_round_trip() {
        for name in BUILTIN_SPECS {
            let spec = CoactionSpec::builtin(name).unwrap();
            assert_eq!(CoactionSpec::from_json(&spec.to_json()).unwrap(), spec);
        }
    }

    #[test]
    fn complete_fully_specified_is_itself() {
        let spec = CoactionSpec::builtin("nu-eta").unwrap();
        let c = spec.complete().unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].spec, spec);
    }
}
