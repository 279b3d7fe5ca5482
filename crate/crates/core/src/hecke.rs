//! Skew group rings A<G> over A = k[u, u^-1] and skew Hecke algebras
//! A^H{H\G/H}, with their actions on H-fixed points.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FiniteField};
use crate::groups::{FiniteGroup, GroupExt, Subgroup};
use crate::linalg::Matrix;

/// A Laurent polynomial sum c_e u^e; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent {
    field: FiniteField,
    terms: BTreeMap<i64, FieldElement>,
}

impl Laurent {
    pub fn zero(field: FiniteField) -> Self {
        Laurent {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: FiniteField) -> Self {
        Self::monomial(field.one(), 0)
    }

    pub fn monomial(c: FieldElement, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Laurent {
            field: c.field(),
            terms,
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial(c, 0)
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, FieldElement)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    /// The single term of a monomial, if it is one.
    pub fn as_monomial(&self) -> Option<(FieldElement, i64)> {
        match self.terms.len() {
            1 => self.terms.iter().next().map(|(e, c)| (*c, *e)),
            _ => None,
        }
    }

    /// The constant, when this lies in k.
    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&0).copied(),
            _ => None,
        }
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            let v = terms.get(e).copied().unwrap_or(self.field.zero()) + *c;
            if v.is_zero() {
                terms.remove(e);
            } else {
                terms.insert(*e, v);
            }
        }
        Laurent {
            field: self.field,
            terms,
        }
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut acc = Laurent::zero(self.field);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                acc = acc.add(&Laurent::monomial(*c1 * *c2, e1 + e2));
            }
        }
        acc
    }

    pub fn scale(&self, c: FieldElement) -> Laurent {
        self.mul(&Laurent::constant(c))
    }

    pub fn shift(&self, k: i64) -> Laurent {
        Laurent {
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (e + k, *c)).collect(),
        }
    }

    /// Parses sums such as `w*u^3 + u^-1 + 1`.
    pub fn parse(field: FiniteField, s: &str) -> Result<Laurent> {
        let mut acc = Laurent::zero(field);
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in '{s}'")));
            }
            let (coeff, mono) = match term.find('u') {
                None => (term, None),
                Some(0) => ("1", Some(term)),
                Some(p) => (term[..p].trim_end_matches('*').trim(), Some(&term[p..])),
            };
            let c = field.parse_element(coeff)?;
            let e = match mono {
                None => 0,
                Some("u") => 1,
                Some(m) => m
                    .strip_prefix("u^")
                    .and_then(|x| x.parse::<i64>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad monomial '{m}'")))?,
            };
            acc = acc.add(&Laurent::monomial(c, e));
        }
        Ok(acc)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono = match e {
                    0 => String::new(),
                    1 => "u".to_string(),
                    _ => format!("u^{e}"),
                };
                match (c.is_one(), mono.is_empty()) {
                    (_, true) => c.to_string(),
                    (true, false) => mono,
                    (false, false) => format!("{c}*{mono}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Matrix with Laurent entries.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Laurent>,
}

impl LaurentMatrix {
    pub fn zeros(field: FiniteField, rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            data: vec![Laurent::zero(field); rows * cols],
        }
    }

    pub fn identity(field: FiniteField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Laurent::one(field));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Laurent {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Laurent) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, o: &LaurentMatrix) -> LaurentMatrix {
        let field = self
            .data
            .first()
            .or(o.data.first())
            .map(|x| x.field)
            .unwrap_or(FiniteField::f4());
        let mut out = Self::zeros(field, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Laurent::zero(field);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(&Laurent) -> Laurent) -> LaurentMatrix {
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Text form: rows separated by `;`, entries by spaces.
    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("; ")
    }

    pub fn parse_text(field: FiniteField, text: &str) -> Result<LaurentMatrix> {
        let rows: Vec<Vec<Laurent>> = text
            .split([';', '\n'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| {
                r.split_whitespace()
                    .map(|t| Laurent::parse(field, t))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("ragged matrix".into()));
        }
        Ok(LaurentMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_text())
    }
}

/// G acting on A = k[u, u^-1] by u -> chi(g) u, composed with Frobenius on
/// k for the flagged elements.
#[derive(Clone, Debug)]
pub struct GradedAlgebraAction {
    field: FiniteField,
    group: Arc<FiniteGroup>,
    chi: Vec<FieldElement>,
    frobenius: Vec<bool>,
}

impl GradedAlgebraAction {
    /// Checks that g -> (chi(g), frobenius(g)) is an action:
    /// chi(gh) = chi(g) F_g(chi(h)) and F_{gh} = F_g F_h.
    pub fn new(
        field: FiniteField,
        group: Arc<FiniteGroup>,
        chi: Vec<FieldElement>,
        frobenius: Vec<bool>,
    ) -> Result<Self> {
        let n = group.order();
        if chi.len() != n || frobenius.len() != n {
            return Err(Error::DimensionMismatch(
                "one scalar per group element".into(),
            ));
        }
        let action = GradedAlgebraAction {
            field,
            group,
            chi,
            frobenius,
        };
        for g in 0..n {
            if action.chi[g].is_zero() {
                return Err(Error::InconsistentAction("chi takes the value 0".into()));
            }
            for h in 0..n {
                let gh = action.group.mul(g, h);
                let twisted = action.chi[g] * action.apply_field(g, action.chi[h]);
                if action.chi[gh] != twisted
                    || action.frobenius[gh] != (action.frobenius[g] ^ action.frobenius[h])
                {
                    return Err(Error::InconsistentAction(format!(
                        "twist data fails at ({}, {})",
                        action.group.element_name(g),
                        action.group.element_name(h)
                    )));
                }
            }
        }
        Ok(action)
    }

    pub fn trivial(field: FiniteField, group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        GradedAlgebraAction {
            field,
            group,
            chi: vec![field.one(); n],
            frobenius: vec![false; n],
        }
    }

    /// The opposite of G24 acting on F4[u, u^-1]: Q8 trivially and
    /// w . u = w u.
    pub fn g24_op() -> Result<Self> {
        let f4 = FiniteField::f4();
        let w = f4.omega().expect("F4 has w");
        let group = Arc::new(FiniteGroup::g24().opposite());
        let chi = (0..group.order()).map(|g| w.pow((g / 8) as u64)).collect();
        Self::new(f4, group, chi, vec![false; 24])
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn chi(&self, g: usize) -> FieldElement {
        self.chi[g]
    }

    pub fn has_frobenius(&self) -> bool {
        self.frobenius.iter().any(|&f| f)
    }

    fn apply_field(&self, g: usize, c: FieldElement) -> FieldElement {
        if self.frobenius[g] {
            c.frobenius()
        } else {
            c
        }
    }

    /// g . a.
    pub fn act(&self, g: usize, a: &Laurent) -> Laurent {
        let chi = self.chi[g];
        a.terms().fold(Laurent::zero(self.field), |acc, (e, c)| {
            let s = if e >= 0 {
                chi.pow(e as u64)
            } else {
                chi.inverse().expect("unit").pow((-e) as u64)
            };
            acc.add(&Laurent::monomial(self.apply_field(g, c) * s, e))
        })
    }

    /// Exponents e with u^e fixed by every element of `members`: a
    /// multiple of the returned period.
    fn period(&self, members: &[usize]) -> i64 {
        (1..=self.field.order() as i64)
            .find(|&d| members.iter().all(|&h| self.chi[h].pow(d as u64).is_one()))
            .unwrap_or(1)
    }
}

/// An element sum a_g g of the skew group ring A<G>.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewElement {
    pub coeffs: Vec<Laurent>,
}

impl SkewElement {
    pub fn zero(action: &GradedAlgebraAction) -> Self {
        SkewElement {
            coeffs: vec![Laurent::zero(action.field); action.group.order()],
        }
    }

    pub fn term(action: &GradedAlgebraAction, a: Laurent, g: usize) -> Self {
        let mut s = Self::zero(action);
        s.coeffs[g] = a;
        s
    }
}

/// (a g)(b h) = a (g . b) gh.
pub fn skew_product(
    action: &GradedAlgebraAction,
    x: &SkewElement,
    y: &SkewElement,
) -> Result<SkewElement> {
    let n = action.group.order();
    if x.coeffs.len() != n || y.coeffs.len() != n {
        return Err(Error::ModuleMismatch);
    }
    let mut out = SkewElement::zero(action);
    for g in 0..n {
        if x.coeffs[g].is_zero() {
            continue;
        }
        for h in 0..n {
            if y.coeffs[h].is_zero() {
                continue;
            }
            let gh = action.group.mul(g, h);
            let term = x.coeffs[g].mul(&action.act(g, &y.coeffs[h]));
            out.coeffs[gh] = out.coeffs[gh].add(&term);
        }
    }
    Ok(out)
}

/// An element sum a_x xH of A{G/H}, one coefficient per coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    pub coeffs: Vec<Laurent>,
}

/// A^H{H\G/H} for an action of G on A and a subgroup H.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    action: GradedAlgebraAction,
    subgroup: Subgroup,
    cosets: Vec<Vec<usize>>,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
}

/// One basis element with its orbit data.
#[derive(Clone, Debug)]
pub struct HeckeBasisElement {
    pub element: HeckeElement,
    /// The least coset representative in the orbit.
    pub orbit_rep: usize,
    pub exponent: i64,
}

impl HeckeAlgebra {
    /// Uses the least element of each coset as its representative.
    pub fn new(action: GradedAlgebraAction, subgroup: Subgroup) -> Result<Self> {
        if **subgroup.parent() != *action.group {
            return Err(Error::NotSubgroup("subgroup of a different group".into()));
        }
        let cosets = action.group.left_cosets(&subgroup);
        let reps = cosets.iter().map(|c| c[0]).collect();
        Self::with_representatives(action, subgroup, reps)
    }

    /// Uses the given coset representatives (one per coset, any order of
    /// cosets matching `left_cosets`).
    pub fn with_representatives(
        action: GradedAlgebraAction,
        subgroup: Subgroup,
        reps: Vec<usize>,
    ) -> Result<Self> {
        let group = Arc::clone(&action.group);
        let cosets = group.left_cosets(&subgroup);
        if reps.len() != cosets.len() {
            return Err(Error::DimensionMismatch(
                "one representative per coset".into(),
            ));
        }
        let mut coset_of = vec![usize::MAX; group.order()];
        for (i, c) in cosets.iter().enumerate() {
            if !c.contains(&reps[i]) {
                return Err(Error::NotSubgroup(format!(
                    "{} does not lie in coset {i}",
                    group.element_name(reps[i])
                )));
            }
            for &g in c {
                coset_of[g] = i;
            }
        }
        Ok(HeckeAlgebra {
            action,
            subgroup,
            cosets,
            reps,
            coset_of,
        })
    }

    pub fn action(&self) -> &GradedAlgebraAction {
        &self.action
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn coset_count(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    /// Index of the coset gH.
    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    pub fn zero(&self) -> HeckeElement {
        HeckeElement {
            coeffs: vec![Laurent::zero(self.action.field); self.reps.len()],
        }
    }

    /// 1H.
    pub fn unit(&self) -> HeckeElement {
        let mut e = self.zero();
        e.coeffs[self.coset_of(self.action.group.identity())] = Laurent::one(self.action.field);
        e
    }

    /// a xH for a group element x.
    pub fn term(&self, a: Laurent, x: usize) -> HeckeElement {
        let mut e = self.zero();
        e.coeffs[self.coset_of(x)] = a;
        e
    }

    pub fn add(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        HeckeElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x.add(y))
                .collect(),
        }
    }

    /// h . a_x = a_{hx} for all h in H.
    pub fn is_fixed(&self, a: &HeckeElement) -> bool {
        self.subgroup.members().iter().all(|&h| {
            (0..self.reps.len()).all(|i| {
                let hx = self.coset_of(self.action.group.mul(h, self.reps[i]));
                self.action.act(h, &a.coeffs[i]) == a.coeffs[hx]
            })
        })
    }

    /// alpha * beta = sum_{x,y} a_x (x . b_y) (xy)H.
    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
        if !self.is_fixed(a) || !self.is_fixed(b) {
            return Err(Error::NotFixed);
        }
        let mut out = self.zero();
        for (i, &x) in self.reps.iter().enumerate() {
            if a.coeffs[i].is_zero() {
                continue;
            }
            for (j, &y) in self.reps.iter().enumerate() {
                if b.coeffs[j].is_zero() {
                    continue;
                }
                let xy = self.coset_of(self.action.group.mul(x, y));
                let term = a.coeffs[i].mul(&self.action.act(x, &b.coeffs[j]));
                out.coeffs[xy] = out.coeffs[xy].add(&term);
            }
        }
        if !self.is_fixed(&out) {
            return Err(Error::Internal("product is not H-fixed".into()));
        }
        Ok(out)
    }

    /// Orbits of H on G/H (double cosets), as coset indices, ordered by
    /// their least representative.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.reps.len()];
        let mut order: Vec<usize> = (0..self.reps.len()).collect();
        order.sort_by_key(|&i| self.cosets[i][0]);
        let mut out = Vec::new();
        for i in order {
            if seen[i] {
                continue;
            }
            let mut orbit = Vec::new();
            for &h in self.subgroup.members() {
                let c = self.coset_of(self.action.group.mul(h, self.reps[i]));
                if !seen[c] {
                    seen[c] = true;
                    orbit.push(c);
                }
            }
            out.push(orbit);
        }
        out
    }

    fn exponent_key(e: i64) -> (i64, bool) {
        (e.abs(), e < 0)
    }

    /// A basis over A^H, ordered by exponent (0, 1, -1, ...) and then by
    /// orbit representative.
    pub fn basis(&self) -> Result<Vec<HeckeBasisElement>> {
        if self.action.has_frobenius() {
            return Err(Error::InconsistentAction(
                "Hecke bases are only computed for k-linear actions".into(),
            ));
        }
        let group = &self.action.group;
        let d = self.action.period(self.subgroup.members());
        let mut out = Vec::new();
        for orbit in self.orbits() {
            let x = self.reps[orbit[0]];
            let least = self.cosets[orbit[0]][0];
            let stab: Vec<usize> = self
                .subgroup
                .members()
                .iter()
                .copied()
                .filter(|&h| self.coset_of(group.mul(h, x)) == orbit[0])
                .collect();
            let dx = self.action.period(&stab);
            let half = d / 2;
            let exps = (0..d / dx).map(|t| {
                let e = t * dx;
                if e > half {
                    e - d
                } else {
                    e
                }
            });
            for e in exps {
                let mut elem = self.zero();
                let mono = Laurent::one(self.action.field).shift(e);
                for &h in self.subgroup.members() {
                    let c = self.coset_of(group.mul(h, x));
                    if elem.coeffs[c].is_zero() {
                        // Moving the coefficient to representative h x of the
                        // same coset changes nothing: u^e is H_x-fixed.
                        elem.coeffs[c] = self.action.act(h, &mono);
                    }
                }
                if !self.is_fixed(&elem) {
                    return Err(Error::Internal("basis element is not H-fixed".into()));
                }
                out.push(HeckeBasisElement {
                    element: elem,
                    orbit_rep: least,
                    exponent: e,
                });
            }
        }
        out.sort_by_key(|b| (Self::exponent_key(b.exponent), b.orbit_rep));
        Ok(out)
    }

    /// Coordinates over A^H in `basis`, verified by reconstruction.
    pub fn coordinates(
        &self,
        basis: &[HeckeBasisElement],
        a: &HeckeElement,
    ) -> Result<Vec<Laurent>> {
        if !self.is_fixed(a) {
            return Err(Error::NotFixed);
        }
        let field = self.action.field;
        let d = self.action.period(self.subgroup.members());
        let mut coords = vec![Laurent::zero(field); basis.len()];
        for (idx, b) in basis.iter().enumerate() {
            let c = (0..self.reps.len())
                .find(|&i| !b.element.coeffs[i].is_zero())
                .ok_or_else(|| Error::Internal("empty basis element".into()))?;
            let lead = b.element.coeffs[c]
                .as_monomial()
                .ok_or_else(|| Error::Internal("basis coefficient is not a monomial".into()))?;
            let part = a.coeffs[c]
                .terms()
                .filter(|(e, _)| (e - lead.1).rem_euclid(d) == 0)
                .fold(Laurent::zero(field), |acc, (e, x)| {
                    acc.add(&Laurent::monomial(x, e))
                });
            let inv = lead.0.inverse()?;
            coords[idx] = part.shift(-lead.1).scale(inv);
        }
        let rebuilt = basis.iter().zip(&coords).fold(self.zero(), |acc, (b, c)| {
            let scaled = HeckeElement {
                coeffs: b.element.coeffs.iter().map(|x| x.mul(c)).collect(),
            };
            self.add(&acc, &scaled)
        });
        if rebuilt != *a {
            return Err(Error::Internal(
                "element is not in the span of the basis".into(),
            ));
        }
        Ok(coords)
    }

    /// Human-readable form, e.g. `u*iH + w2*u*jH`.
    pub fn display(&self, a: &HeckeElement) -> String {
        let group = &self.action.group;
        let parts: Vec<String> = a
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let name = group.element_name(self.reps[i]);
                if c.as_constant().is_some_and(|x| x.is_one()) {
                    format!("{name}H")
                } else if c.as_monomial().is_some() {
                    format!("{c}*{name}H")
                } else {
                    format!("({c})*{name}H")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// A free graded A-module with a semilinear left G-action,
/// rho(gh) = rho(g) (g . rho(h)).
#[derive(Clone, Debug)]
pub struct GradedGModule {
    action: GradedAlgebraAction,
    names: Vec<String>,
    degrees: Vec<i64>,
    rho: Vec<LaurentMatrix>,
}

/// Degree of u.
pub const U_DEGREE: i64 = 2;

impl GradedGModule {
    /// Builds the full table from generator matrices and checks the
    /// twisted product rule, the identity, and homogeneity.
    pub fn from_generators(
        action: GradedAlgebraAction,
        names: Vec<String>,
        degrees: Vec<i64>,
        gens: &[LaurentMatrix],
    ) -> Result<Self> {
        let group = Arc::clone(&action.group);
        let n = names.len();
        if degrees.len() != n || gens.len() != group.generators().len() {
            return Err(Error::DimensionMismatch(
                "names, degrees and generators disagree".into(),
            ));
        }
        let field = action.field;
        let mut table: Vec<Option<LaurentMatrix>> = vec![None; group.order()];
        table[group.identity()] = Some(LaurentMatrix::identity(field, n));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(h) = queue.pop_front() {
            for (gi, &g) in group.generators().iter().enumerate() {
                let gh = group.mul(g, h);
                if table[gh].is_none() {
                    let rho_h = table[h].as_ref().expect("visited");
                    table[gh] = Some(gens[gi].mul(&rho_h.map(|a| action.act(g, a))));
                    queue.push_back(gh);
                }
            }
        }
        let rho = table
            .into_iter()
            .map(|m| m.ok_or_else(|| Error::NotAGroup("generators do not generate".into())))
            .collect::<Result<Vec<_>>>()?;
        let module = GradedGModule {
            action,
            names,
            degrees,
            rho,
        };
        module.verify()?;
        Ok(module)
    }

    pub fn verify(&self) -> Result<()> {
        let group = &self.action.group;
        for g in 0..group.order() {
            for h in 0..group.order() {
                let lhs = &self.rho[group.mul(g, h)];
                let rhs = self.rho[g].mul(&self.rho[h].map(|a| self.action.act(g, a)));
                if *lhs != rhs {
                    return Err(Error::InconsistentAction(format!(
                        "rho({}{}) differs from rho({}) g(rho({}))",
                        group.element_name(g),
                        group.element_name(h),
                        group.element_name(g),
                        group.element_name(h)
                    )));
                }
            }
            for r in 0..self.dim() {
                for c in 0..self.dim() {
                    for (e, _) in self.rho[g].get(r, c).terms() {
                        if self.degrees[r] + U_DEGREE * e != self.degrees[c] {
                            return Err(Error::InconsistentAction(format!(
                                "rho({}) is not homogeneous at ({r}, {c})",
                                group.element_name(g)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn action(&self) -> &GradedAlgebraAction {
        &self.action
    }

    pub fn rho(&self, g: usize) -> &LaurentMatrix {
        &self.rho[g]
    }

    /// g . m for a coordinate vector m.
    pub fn act(&self, g: usize, m: &[Laurent]) -> Vec<Laurent> {
        let field = self.action.field;
        (0..self.dim())
            .map(|r| {
                (0..self.dim()).fold(Laurent::zero(field), |acc, c| {
                    acc.add(&self.rho[g].get(r, c).mul(&self.action.act(g, &m[c])))
                })
            })
            .collect()
    }

    pub fn is_fixed(&self, h: &Subgroup, m: &[Laurent]) -> bool {
        h.members().iter().all(|&g| self.act(g, m) == m)
    }

    /// alpha * m = sum_x a_x (x . m) on an H-fixed vector.
    pub fn hecke_act(
        &self,
        alg: &HeckeAlgebra,
        a: &HeckeElement,
        m: &[Laurent],
    ) -> Result<Vec<Laurent>> {
        if **alg.subgroup.parent() != *self.action.group {
            return Err(Error::ModuleMismatch);
        }
        if !self.is_fixed(&alg.subgroup, m) || !alg.is_fixed(a) {
            return Err(Error::NotFixed);
        }
        let field = self.action.field;
        let mut out = vec![Laurent::zero(field); self.dim()];
        for (i, &x) in alg.reps.iter().enumerate() {
            if a.coeffs[i].is_zero() {
                continue;
            }
            let xm = self.act(x, m);
            for (o, v) in out.iter_mut().zip(&xm) {
                *o = o.add(&a.coeffs[i].mul(v));
            }
        }
        if !self.is_fixed(&alg.subgroup, &out) {
            return Err(Error::Internal("Hecke action left the fixed points".into()));
        }
        Ok(out)
    }

    /// nH * m = sum over the H-conjugates c of n of c . m, for n in a
    /// normal complement `complement` of H.
    pub fn double_coset_act(
        &self,
        h: &Subgroup,
        complement: &Subgroup,
        n: usize,
        m: &[Laurent],
    ) -> Result<Vec<Laurent>> {
        if !complement.contains(n) {
            return Err(Error::NotInComplement);
        }
        if !self.is_fixed(h, m) {
            return Err(Error::NotFixed);
        }
        let group = &self.action.group;
        let mut conjugates: Vec<usize> = h.members().iter().map(|&x| group.conj(x, n)).collect();
        conjugates.sort_unstable();
        conjugates.dedup();
        let field = self.action.field;
        let mut out = vec![Laurent::zero(field); self.dim()];
        for c in conjugates {
            for (o, v) in out.iter_mut().zip(self.act(c, m)) {
                *o = o.add(&v);
            }
        }
        Ok(out)
    }

    /// Matrix of alpha on the given H-fixed vectors, which must span a
    /// coordinate-aligned basis (column k is alpha * basis[k]).
    pub fn hecke_matrix(
        &self,
        alg: &HeckeAlgebra,
        a: &HeckeElement,
        basis: &[Vec<Laurent>],
    ) -> Result<LaurentMatrix> {
        let mut m = LaurentMatrix::zeros(self.action.field, basis.len(), basis.len());
        for (k, b) in basis.iter().enumerate() {
            let image = self.hecke_act(alg, a, b)?;
            for (r, v) in image.into_iter().enumerate() {
                m.set(r, k, v);
            }
        }
        Ok(m)
    }

    /// Restriction to a subgroup acting trivially on A, rewritten in the
    /// basis u^{-deg/2} z so that all entries become constants.
    pub fn normalized_restriction(&self, members: &[usize]) -> Result<Vec<Matrix>> {
        let field = self.action.field;
        if self.degrees.iter().any(|d| d % U_DEGREE != 0) {
            return Err(Error::InconsistentAction(
                "odd degrees cannot be normalized".into(),
            ));
        }
        members
            .iter()
            .map(|&g| {
                if !self.action.chi(g).is_one() || self.action.frobenius[g] {
                    return Err(Error::InconsistentAction(format!(
                        "{} acts nontrivially on A",
                        self.action.group.element_name(g)
                    )));
                }
                let mut out = Matrix::zeros(field, self.dim(), self.dim());
                for r in 0..self.dim() {
                    for c in 0..self.dim() {
                        let shift = (self.degrees[r] - self.degrees[c]) / U_DEGREE;
                        let v = self.rho[g].get(r, c).shift(shift);
                        let k = v.as_constant().ok_or_else(|| {
                            Error::Internal("normalized entry is not constant".into())
                        })?;
                        out.set(r, c, k);
                    }
                }
                Ok(out)
            })
            .collect()
    }
}

/// The G24 action on z0, z4, z6 read as a left action of G24^op.
pub fn g24_three_cell() -> Result<GradedGModule> {
    let action = GradedAlgebraAction::g24_op()?;
    let f4 = action.field;
    let group = Arc::clone(&action.group);
    let parse = |s: &str| LaurentMatrix::parse_text(f4, s);
    let i = parse("1 u^2 w*u^3; 0 1 u; 0 0 1")?;
    let j = parse("1 w*u^2 w*u^3; 0 1 w2*u; 0 0 1")?;
    let w = LaurentMatrix::identity(f4, 3);
    let gens: Vec<LaurentMatrix> = group
        .generators()
        .iter()
        .map(|&g| match group.element_name(g) {
            "i" => Ok(i.clone()),
            "j" => Ok(j.clone()),
            "w" => Ok(w.clone()),
            other => Err(Error::Internal(format!("unexpected generator {other}"))),
        })
        .collect::<Result<_>>()?;
    GradedGModule::from_generators(
        action,
        vec!["z0".into(), "z4".into(), "z6".into()],
        vec![0, 4, 6],
        &gens,
    )
}

/// The subgroup generated by w in G24^op.
pub fn c3_in(group: &Arc<FiniteGroup>) -> Result<Subgroup> {
    let w = group.element("w").ok_or_else(|| Error::UnknownName {
        kind: "group element",
        name: "w".into(),
        valid: group.names().to_vec(),
    })?;
    Ok(group.generated_subgroup(&[w]))
}

/// The eight matrices displayed for the basis of the G24/C3 Hecke algebra.
pub const DISPLAYED_MATRICES: [&str; 8] = [
    "1 0 0; 0 1 0; 0 0 1",
    "1 0 u^3; 0 1 0; 0 0 1",
    "1 0 w*u^3; 0 1 0; 0 0 1",
    "1 0 w2*u^3; 0 1 0; 0 0 1",
    "0 u^3 0; 0 0 0; 0 0 0",
    "0 u^3 0; 0 0 0; 0 0 0",
    "0 0 0; 0 0 1; 0 0 0",
    "0 0 0; 0 0 1; 0 0 0",
];

/// The displayed basis, as sums over cosets of Q8 representatives.
pub const DISPLAYED_BASIS: [&str; 8] = [
    "1H",
    "-1H",
    "iH + jH + kH",
    "-iH + -jH + -kH",
    "u*iH + w2*u*jH + w*u*kH",
    "u*-iH + w2*u*-jH + w*u*-kH",
    "u^-1*iH + w*u^-1*jH + w2*u^-1*kH",
    "u^-1*-iH + w*u^-1*-jH + w2*u^-1*-kH",
];

/// Result of the G24 / C3 computation.
#[derive(Clone, Debug)]
pub struct G24Hecke {
    pub algebra: HeckeAlgebra,
    pub module: GradedGModule,
    pub basis: Vec<HeckeBasisElement>,
    pub fixed_basis: Vec<Vec<Laurent>>,
    pub matrices: Vec<LaurentMatrix>,
}

impl G24Hecke {
    pub fn compute() -> Result<Self> {
        let module = g24_three_cell()?;
        let action = module.action().clone();
        let group = Arc::clone(action.group());
        let h = c3_in(&group)?;
        let algebra = HeckeAlgebra::new(action, h)?;
        let basis = algebra.basis()?;
        let f4 = module.action().field();
        let fixed_basis: Vec<Vec<Laurent>> = (0..3)
            .map(|k| {
                let mut v = vec![Laurent::zero(f4); 3];
                v[k] = Laurent::one(f4);
                v
            })
            .collect();
        let matrices = basis
            .iter()
            .map(|b| module.hecke_matrix(&algebra, &b.element, &fixed_basis))
            .collect::<Result<_>>()?;
        Ok(G24Hecke {
            algebra,
            module,
            basis,
            fixed_basis,
            matrices,
        })
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.basis
            .iter()
            .map(|b| self.algebra.display(&b.element))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": "G24",
            "subgroup": "C3",
            "fixed_basis": self.module.names(),
            "basis": self.basis_labels(),
            "matrices": self.matrices.iter().map(LaurentMatrix::to_text).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_text() {
        let f4 = FiniteField::f4();
        let a = Laurent::parse(f4, "w*u^3+u^-1+1").unwrap();
        assert_eq!(Laurent::parse(f4, &a.to_string()).unwrap(), a);
        assert_eq!(a.add(&a), Laurent::zero(f4));
    }

    #[test]
    fn twist_appears_once() {
        let action = GradedAlgebraAction::g24_op().unwrap();
        let f4 = action.field();
        let w = action.group().element("w").unwrap();
        let u = Laurent::monomial(f4.one(), 1);
        let x = SkewElement::term(&action, u.clone(), w);
        let sq = skew_product(&action, &x, &x).unwrap();
        let w2 = action.group().mul(w, w);
        assert_eq!(sq.coeffs[w2], Laurent::monomial(f4.omega().unwrap(), 2));
    }

    #[test]
    fn basis_matches_display() {
        let g = G24Hecke::compute().unwrap();
        assert_eq!(g.basis_labels(), DISPLAYED_BASIS.to_vec());
    }

    #[test]
    fn matrices_match_display() {
        let g = G24Hecke::compute().unwrap();
        let f4 = FiniteField::f4();
        for (m, text) in g.matrices.iter().zip(DISPLAYED_MATRICES) {
            assert_eq!(*m, LaurentMatrix::parse_text(f4, text).unwrap());
        }
    }

    fn product_table(alg: &HeckeAlgebra, basis: &[HeckeBasisElement]) -> Vec<Vec<Vec<Laurent>>> {
        basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        alg.coordinates(basis, &alg.mul(&a.element, &b.element).unwrap())
                            .unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn associative_on_basis() {
        let g = G24Hecke::compute().unwrap();
        let alg = &g.algebra;
        for a in &g.basis {
            for b in &g.basis {
                let ab = alg.mul(&a.element, &b.element).unwrap();
                for c in &g.basis {
                    let bc = alg.mul(&b.element, &c.element).unwrap();
                    assert_eq!(
                        alg.mul(&ab, &c.element).unwrap(),
                        alg.mul(&a.element, &bc).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn action_respects_product() {
        let g = G24Hecke::compute().unwrap();
        for (a, ma) in g.basis.iter().zip(&g.matrices) {
            for (b, mb) in g.basis.iter().zip(&g.matrices) {
                let ab = g.algebra.mul(&a.element, &b.element).unwrap();
                let mab = g
                    .module
                    .hecke_matrix(&g.algebra, &ab, &g.fixed_basis)
                    .unwrap();
                assert_eq!(mab, ma.mul(mb));
            }
        }
    }

    #[test]
    fn double_cosets_agree_with_hecke_action() {
        let g = G24Hecke::compute().unwrap();
        let group = Arc::clone(g.module.action().group());
        let q8 = group.subgroup(0..8).unwrap();
        let h = g.algebra.subgroup().clone();
        for n in 0..8 {
            let mut conj: Vec<usize> = h.members().iter().map(|&x| group.conj(x, n)).collect();
            conj.sort_unstable();
            conj.dedup();
            let orbit_sum = conj.iter().fold(g.algebra.zero(), |acc, &c| {
                g.algebra
                    .add(&acc, &g.algebra.term(Laurent::one(FiniteField::f4()), c))
            });
            for m in &g.fixed_basis {
                assert_eq!(
                    g.module.double_coset_act(&h, &q8, n, m).unwrap(),
                    g.module.hecke_act(&g.algebra, &orbit_sum, m).unwrap()
                );
            }
        }
        let w = group.element("w").unwrap();
        assert!(matches!(
            g.module.double_coset_act(&h, &q8, w, &g.fixed_basis[0]),
            Err(Error::NotInComplement)
        ));
    }

    #[test]
    fn representatives_do_not_matter() {
        let g = G24Hecke::compute().unwrap();
        let group = Arc::clone(g.module.action().group());
        let h = g.algebra.subgroup().clone();
        let reps = group
            .left_cosets(&h)
            .iter()
            .map(|c| *c.last().unwrap())
            .collect();
        let other = HeckeAlgebra::with_representatives(g.module.action().clone(), h, reps).unwrap();
        assert_eq!(
            product_table(&g.algebra, &g.basis),
            product_table(&other, &g.basis)
        );
        for (b, m) in g.basis.iter().zip(&g.matrices) {
            assert_eq!(other.mul(&b.element, &other.unit()).unwrap(), b.element);
            assert_eq!(
                g.module
                    .hecke_matrix(&other, &b.element, &g.fixed_basis)
                    .unwrap(),
                *m
            );
        }
    }

    #[test]
    fn normal_subgroup_gives_quotient_group() {
        let f4 = FiniteField::f4();
        let q8 = Arc::new(FiniteGroup::q8());
        let z = q8.center();
        let alg = HeckeAlgebra::new(GradedAlgebraAction::trivial(f4, Arc::clone(&q8)), z).unwrap();
        let basis = alg.basis().unwrap();
        assert_eq!(basis.len(), 4);
        for x in 0..8 {
            for y in 0..8 {
                let one = Laurent::one(f4);
                let p = alg
                    .mul(&alg.term(one.clone(), x), &alg.term(one.clone(), y))
                    .unwrap();
                assert_eq!(p, alg.term(one, q8.mul(x, y)));
            }
        }
    }

    #[test]
    fn q8_restriction_is_the_coaction() {
        use crate::morava::{CoactionSpec, Convention};
        let module = g24_three_cell().unwrap();
        let ours = module
            .normalized_restriction(&(0..8).collect::<Vec<_>>())
            .unwrap();
        let theirs = CoactionSpec::builtin("nu-eta")
            .unwrap()
            .q8_matrices(Convention::Right)
            .unwrap();
        assert_eq!(ours, theirs);
    }

    #[test]
    fn frobenius_actions_have_no_basis() {
        let f4 = FiniteField::f4();
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let action =
            GradedAlgebraAction::new(f4, Arc::clone(&c2), vec![f4.one(); 2], vec![false, true])
                .unwrap();
        let alg = HeckeAlgebra::new(action, c2.trivial_subgroup()).unwrap();
        assert!(alg.basis().is_err());
    }

    #[test]
    fn unit_law() {
        let g = G24Hecke::compute().unwrap();
        let one = g.algebra.unit();
        for b in &g.basis {
            assert_eq!(g.algebra.mul(&one, &b.element).unwrap(), b.element);
            assert_eq!(g.algebra.mul(&b.element, &one).unwrap(), b.element);
        }
    }
}
