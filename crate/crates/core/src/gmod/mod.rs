//! Finite-dimensional left modules over group algebras k[G].

pub mod builtin;
pub mod g24;
pub mod stable;
pub mod structure;
pub mod truncated;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FiniteField};
use crate::groups::{FiniteGroup, GroupExt, Subgroup};
use crate::linalg::Matrix;

pub use builtin::{builtin, BUILTIN_MODULES};
pub use stable::{endotrivial, module_iso, stable_iso, strip_free, Decomposition, StripFree};
pub use structure::{decompose, projective_cover, syzygy, syzygy_n, ProjectiveCover};

/// A left k[G]-module: one invertible matrix per group element.
#[derive(Clone, Debug)]
pub struct GModule {
    field: FiniteField,
    group: Arc<FiniteGroup>,
    dim: usize,
    rho: Vec<Matrix>,
}

/// A k[G]-linear map, `matrix * rho_src(g) = rho_tgt(g) * matrix`.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: GModule,
    pub target: GModule,
    pub matrix: Matrix,
}

/// An element of the group algebra, coefficients indexed by group element.
pub type AlgebraElement = Vec<FieldElement>;

#[derive(Serialize, Deserialize)]
struct ModuleFile {
    field: String,
    group: String,
    generators: std::collections::BTreeMap<String, String>,
}

impl GModule {
    /// Builds a module from the full table of matrices, checking
    /// rho(g) rho(h) = rho(gh) for every pair.
    pub fn from_table(
        field: FiniteField,
        group: Arc<FiniteGroup>,
        rho: Vec<Matrix>,
    ) -> Result<Self> {
        let n = group.order();
        if rho.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for a group of order {n}",
                rho.len()
            )));
        }
        let dim = rho[0].rows();
        for m in &rho {
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(
                    "action matrices differ in size".into(),
                ));
            }
        }
        let module = GModule {
            field,
            group,
            dim,
            rho,
        };
        module.check_action()?;
        Ok(module)
    }

    /// Extends an assignment on the generators of the group along the
    /// multiplication table. Defining relations are checked first so a
    /// failure names the violated relation.
    pub fn from_generators(
        field: FiniteField,
        group: Arc<FiniteGroup>,
        gens: &[Matrix],
    ) -> Result<Self> {
        if gens.len() != group.generators().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        let dim = gens.first().map_or(0, |m| m.rows());
        for m in gens {
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(
                    "generator matrices differ in size".into(),
                ));
            }
        }
        let word = |w: &[usize]| {
            w.iter().fold(Matrix::identity(field, dim), |acc, &p| {
                acc.mul_unchecked(&gens[p])
            })
        };
        for rel in group.relations() {
            if word(&rel.lhs) != word(&rel.rhs) {
                return Err(Error::InconsistentAction(rel.name.clone()));
            }
        }
        let rho: Vec<Matrix> = group.words().iter().map(|w| word(w)).collect();
        let module = GModule {
            field,
            group,
            dim,
            rho,
        };
        module.check_action()?;
        Ok(module)
    }

    fn check_action(&self) -> Result<()> {
        let g = &self.group;
        if !self.rho[g.identity()].is_identity() {
            return Err(Error::InconsistentAction("1 acts as the identity".into()));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if self.rho[a].mul_unchecked(&self.rho[b]) != self.rho[g.mul(a, b)] {
                    return Err(Error::InconsistentAction(format!(
                        "{} * {} = {}",
                        g.element_name(a),
                        g.element_name(b),
                        g.element_name(g.mul(a, b))
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks the action law again; used by property tests.
    pub fn verify(&self) -> Result<()> {
        self.check_action()
    }

    pub fn trivial(field: FiniteField, group: Arc<FiniteGroup>, dim: usize) -> Self {
        let rho = vec![Matrix::identity(field, dim); group.order()];
        GModule {
            field,
            group,
            dim,
            rho,
        }
    }

    /// k[G] acting on itself by left multiplication, basis the group elements.
    pub fn regular(field: FiniteField, group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let rho = (0..n)
            .map(|x| {
                let mut m = Matrix::zeros(field, n, n);
                for h in 0..n {
                    m.set(group.mul(x, h), h, field.one());
                }
                m
            })
            .collect();
        GModule {
            field,
            group,
            dim: n,
            rho,
        }
    }

    pub fn zero(field: FiniteField, group: Arc<FiniteGroup>) -> Self {
        Self::trivial(field, group, 0)
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self, g: usize) -> &Matrix {
        &self.rho[g]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.rho
    }

    /// Matrices of the group generators.
    pub fn generator_matrices(&self) -> Vec<Matrix> {
        self.group
            .generators()
            .iter()
            .map(|&g| self.rho[g].clone())
            .collect()
    }

    fn same_context(&self, other: &GModule) -> Result<()> {
        if self.field != other.field || *self.group != *other.group {
            return Err(Error::ModuleMismatch);
        }
        Ok(())
    }

    /// Conjugates the action to p rho(g) p^-1, where p sends old coordinates
    /// to new coordinates.
    pub fn change_basis(&self, p: &Matrix) -> Result<GModule> {
        let inv = p.inverse()?;
        if p.rows() != self.dim {
            return Err(Error::DimensionMismatch(
                "change of basis has the wrong size".into(),
            ));
        }
        let rho = self
            .rho
            .iter()
            .map(|m| p.mul_unchecked(m).mul_unchecked(&inv))
            .collect();
        Ok(GModule {
            field: self.field,
            group: Arc::clone(&self.group),
            dim: self.dim,
            rho,
        })
    }

    /// Rewrites the action in a new basis given by the columns of `basis`
    /// (old coordinates of the new basis vectors).
    pub fn in_basis(&self, basis: &Matrix) -> Result<GModule> {
        self.change_basis(&basis.inverse()?)
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        self.same_context(other)?;
        let d = self.dim + other.dim;
        let rho = self
            .rho
            .iter()
            .zip(&other.rho)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(self.field, d, d);
                for r in 0..self.dim {
                    for c in 0..self.dim {
                        m.set_bits(r, c, a.bits(r, c));
                    }
                }
                for r in 0..other.dim {
                    for c in 0..other.dim {
                        m.set_bits(self.dim + r, self.dim + c, b.bits(r, c));
                    }
                }
                m
            })
            .collect();
        Ok(GModule {
            field: self.field,
            group: Arc::clone(&self.group),
            dim: d,
            rho,
        })
    }

    /// Diagonal action on the tensor product.
    pub fn tensor(&self, other: &GModule) -> Result<GModule> {
        self.same_context(other)?;
        let rho = self
            .rho
            .iter()
            .zip(&other.rho)
            .map(|(a, b)| a.kronecker(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(GModule {
            field: self.field,
            group: Arc::clone(&self.group),
            dim: self.dim * other.dim,
            rho,
        })
    }

    /// Contragredient action rho(g^-1)^T.
    pub fn dual(&self) -> GModule {
        let rho = (0..self.group.order())
            .map(|g| self.rho[self.group.inv(g)].transpose())
            .collect();
        GModule {
            field: self.field,
            group: Arc::clone(&self.group),
            dim: self.dim,
            rho,
        }
    }

    /// Hom(m, n) = m* (x) n with the conjugation action.
    pub fn hom_module(&self, other: &GModule) -> Result<GModule> {
        self.dual().tensor(other)
    }

    /// Restriction to a subgroup, as a module over the subgroup in its own
    /// right (indices follow the sorted member list).
    pub fn restrict(&self, h: &Subgroup) -> Result<GModule> {
        if **h.parent() != *self.group {
            return Err(Error::NotSubgroup("subgroup of a different group".into()));
        }
        let (sub, members) = h.as_group();
        let rho = members.iter().map(|&g| self.rho[g].clone()).collect();
        Ok(GModule {
            field: self.field,
            group: Arc::new(sub),
            dim: self.dim,
            rho,
        })
    }

    /// Restriction to the subgroup given as a standalone group together
    /// with its embedding into this module's group.
    pub fn restrict_along(&self, sub: Arc<FiniteGroup>, embedding: &[usize]) -> Result<GModule> {
        let rho = embedding.iter().map(|&g| self.rho[g].clone()).collect();
        GModule::from_table(self.field, sub, rho)
    }

    /// Action matrix of an algebra element sum a_g g.
    pub fn act(&self, a: &[FieldElement]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for (g, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add_unchecked(&self.rho[g].scale(*c));
            }
        }
        m
    }

    /// The norm element sum_g g acting on the module.
    pub fn norm_matrix(&self) -> Matrix {
        let one = vec![self.field.one(); self.group.order()];
        self.act(&one)
    }

    pub fn is_trivial(&self) -> bool {
        self.rho.iter().all(|m| m.is_identity())
    }

    /// Fixed vectors M^G, as the columns of a matrix.
    pub fn fixed_points(&self) -> Matrix {
        let gens = self.group.generators();
        if gens.is_empty() || self.dim == 0 {
            return Matrix::identity(self.field, self.dim);
        }
        let id = Matrix::identity(self.field, self.dim);
        let blocks: Vec<Matrix> = gens
            .iter()
            .map(|&g| self.rho[g].add_unchecked(&id))
            .collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        Matrix::vstack(&refs).expect("same width").kernel_matrix()
    }

    /// Socle of a module over a p-group in characteristic p: the fixed points.
    pub fn socle(&self) -> Matrix {
        self.fixed_points()
    }

    /// The radical I(P) M where P is the normal Sylow 2-subgroup; this is the
    /// Jacobson radical of M whenever that subgroup is normal.
    pub fn radical(&self) -> Matrix {
        let p = self.group.sylow_subgroup(2);
        let id = Matrix::identity(self.field, self.dim);
        let blocks: Vec<Matrix> = p
            .members()
            .iter()
            .filter(|&&g| g != self.group.identity())
            .map(|&g| self.rho[g].add_unchecked(&id))
            .collect();
        if blocks.is_empty() || self.dim == 0 {
            return Matrix::zeros(self.field, self.dim, 0);
        }
        let refs: Vec<&Matrix> = blocks.iter().collect();
        Matrix::hstack(&refs).expect("same height").column_space()
    }

    /// Smallest submodule containing the given columns, as a basis.
    pub fn span_closure(&self, vectors: &Matrix) -> Matrix {
        let mut basis = vectors.column_space();
        loop {
            let mut parts = vec![basis.clone()];
            for &g in self.group.generators() {
                parts.push(self.rho[g].mul_unchecked(&basis));
            }
            let refs: Vec<&Matrix> = parts.iter().collect();
            let next = Matrix::hstack(&refs).expect("same height").column_space();
            if next.cols() == basis.cols() {
                return basis;
            }
            basis = next;
        }
    }

    /// The submodule spanned by the (independent, invariant) columns of
    /// `basis`, in that basis.
    pub fn submodule(&self, basis: &Matrix) -> Result<GModule> {
        let k = basis.cols();
        if k == 0 {
            return Ok(GModule::zero(self.field, Arc::clone(&self.group)));
        }
        if basis.rank() != k {
            return Err(Error::DimensionMismatch(
                "submodule basis is dependent".into(),
            ));
        }
        let rho = self
            .rho
            .iter()
            .map(|m| {
                basis
                    .solve(&m.mul_unchecked(basis))?
                    .ok_or_else(|| Error::NotSubgroup("subspace is not invariant".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GModule {
            field: self.field,
            group: Arc::clone(&self.group),
            dim: k,
            rho,
        })
    }

    /// The quotient by an invariant subspace, with the projection matrix.
    /// The quotient basis is the image of the standard vectors that extend
    /// `basis` to a basis of the whole space.
    pub fn quotient(&self, basis: &Matrix) -> Result<(GModule, Matrix)> {
        let k = basis.cols();
        let full = if k == 0 {
            Matrix::identity(self.field, self.dim)
        } else {
            basis.extend_to_basis()
        };
        let inv = full.inverse()?;
        let q = self.dim - k;
        let proj = inv.submatrix(k..self.dim, 0..self.dim);
        let comp = full.submatrix(0..self.dim, k..self.dim);
        let rho = self
            .rho
            .iter()
            .map(|m| proj.mul_unchecked(&m.mul_unchecked(&comp)))
            .collect();
        let module = GModule {
            field: self.field,
            group: Arc::clone(&self.group),
            dim: q,
            rho,
        };
        if k > 0 {
            self.submodule(basis)?;
        }
        Ok((module, proj))
    }

    /// The left ideal k[G] a_1 + ... + k[G] a_r as a submodule of the
    /// regular module, with its basis in group coordinates.
    pub fn left_ideal(
        field: FiniteField,
        group: Arc<FiniteGroup>,
        gens: &[AlgebraElement],
    ) -> Result<(GModule, Matrix)> {
        let reg = GModule::regular(field, Arc::clone(&group));
        let cols: Vec<Matrix> = gens
            .iter()
            .map(|a| Matrix::column_vector(field, a))
            .collect();
        let refs: Vec<&Matrix> = cols.iter().collect();
        let span = reg.span_closure(&Matrix::hstack(&refs)?);
        Ok((reg.submodule(&span)?, span))
    }

    /// Basis of Hom_{kG}(self, other) as matrices of shape other.dim x self.dim.
    pub fn hom_space(&self, other: &GModule) -> Result<Vec<Matrix>> {
        self.same_context(other)?;
        let (m, n) = (self.dim, other.dim);
        if m == 0 || n == 0 {
            return Ok(Vec::new());
        }
        // Row-major vec(X): vec(B X) - vec(X A) = (B (x) I - I (x) A^T) vec(X).
        let id_m = Matrix::identity(self.field, m);
        let id_n = Matrix::identity(self.field, n);
        let mut blocks = Vec::new();
        for &g in self.group.generators() {
            let left = other.rho[g].kronecker(&id_m)?;
            let right = id_n.kronecker(&self.rho[g].transpose())?;
            blocks.push(left.add_unchecked(&right));
        }
        if blocks.is_empty() {
            blocks.push(Matrix::zeros(self.field, 1, n * m));
        }
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let kernel = Matrix::vstack(&refs)?.kernel_matrix();
        Ok((0..kernel.cols())
            .map(|c| {
                let col = kernel.column(c);
                Matrix::from_bits(self.field, n, m, col.raw())
            })
            .collect())
    }

    pub fn is_homomorphism(&self, other: &GModule, f: &Matrix) -> bool {
        f.rows() == other.dim
            && f.cols() == self.dim
            && (0..self.group.order())
                .all(|g| f.mul_unchecked(&self.rho[g]) == other.rho[g].mul_unchecked(f))
    }

    /// Reads the JSON module-definition format
    /// `{field, group, generators: {name: matrix-text}}`.
    pub fn from_json(value: &serde_json::Value) -> Result<GModule> {
        let file: ModuleFile = serde_json::from_value(value.clone())?;
        let field = FiniteField::from_name(&file.field)?;
        let group = Arc::new(FiniteGroup::by_name(&file.group)?);
        let mut gens = Vec::new();
        for &g in group.generators() {
            let name = group.element_name(g);
            let text = file
                .generators
                .get(name)
                .ok_or_else(|| Error::Parse(format!("missing matrix for generator `{name}`")))?;
            gens.push(Matrix::parse_text(field, text)?);
        }
        for key in file.generators.keys() {
            let known = group
                .generators()
                .iter()
                .any(|&g| group.element_name(g) == key);
            if !known {
                return Err(Error::Parse(format!(
                    "`{key}` is not a generator of {}",
                    group.name()
                )));
            }
        }
        GModule::from_generators(field, group, &gens)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let generators = self
            .group
            .generators()
            .iter()
            .map(|&g| {
                (
                    self.group.element_name(g).to_string(),
                    self.rho[g].to_text(),
                )
            })
            .collect();
        serde_json::to_value(ModuleFile {
            field: self.field.name(),
            group: self.group.name().to_ascii_lowercase(),
            generators,
        })
        .expect("module serializes")
    }
}

impl ModuleMap {
    pub fn new(source: GModule, target: GModule, matrix: Matrix) -> Result<Self> {
        if !source.is_homomorphism(&target, &matrix) {
            return Err(Error::InconsistentAction(
                "map does not intertwine the actions".into(),
            ));
        }
        Ok(ModuleMap {
            source,
            target,
            matrix,
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.is_invertible()
    }
}

/// Group algebra arithmetic on coefficient vectors.
pub mod algebra {
    use super::*;

    pub fn zero(field: FiniteField, group: &FiniteGroup) -> AlgebraElement {
        vec![field.zero(); group.order()]
    }

    pub fn basis_element(field: FiniteField, group: &FiniteGroup, g: usize) -> AlgebraElement {
        let mut a = zero(field, group);
        a[g] = field.one();
        a
    }

    pub fn one(field: FiniteField, group: &FiniteGroup) -> AlgebraElement {
        basis_element(field, group, group.identity())
    }

    pub fn add(a: &[FieldElement], b: &[FieldElement]) -> AlgebraElement {
        a.iter().zip(b).map(|(x, y)| *x + *y).collect()
    }

    pub fn scale(a: &[FieldElement], c: FieldElement) -> AlgebraElement {
        a.iter().map(|x| *x * c).collect()
    }

    pub fn mul(group: &FiniteGroup, a: &[FieldElement], b: &[FieldElement]) -> AlgebraElement {
        let field = a[0].field();
        let mut out = zero(field, group);
        for (g, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (h, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    let gh = group.mul(g, h);
                    out[gh] += *x * *y;
                }
            }
        }
        out
    }

    pub fn is_zero(a: &[FieldElement]) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    /// sum of c_g g with the coefficients given by element name.
    pub fn from_terms(
        field: FiniteField,
        group: &FiniteGroup,
        terms: &[(FieldElement, &str)],
    ) -> Result<AlgebraElement> {
        let mut a = zero(field, group);
        for (c, name) in terms {
            let g = group
                .element(name)
                .ok_or_else(|| Error::Parse(format!("no element `{name}` in {}", group.name())))?;
            a[g] += *c;
        }
        Ok(a)
    }

    /// The norm element sum_g g.
    pub fn norm(field: FiniteField, group: &FiniteGroup) -> AlgebraElement {
        vec![field.one(); group.order()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FiniteField {
        FiniteField::f4()
    }

    fn q8() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::q8())
    }

    fn m(s: &str) -> Matrix {
        Matrix::parse_text(f4(), s).unwrap()
    }

    #[test]
    fn w3_from_generators() {
        let w3 = GModule::from_generators(
            f4(),
            q8(),
            &[m("1 0 0; 1 1 0; 0 1 1"), m("1 0 0; w 1 0; 0 w2 1")],
        );
        assert!(w3.is_ok());
        let k = GModule::from_generators(f4(), q8(), &[m("1"), m("1")]).unwrap();
        assert!(k.is_trivial());
    }

    #[test]
    fn violated_relation_is_named() {
        let err =
            GModule::from_generators(f4(), q8(), &[m("0 1; 1 0"), m("w 0; 0 w")]).unwrap_err();
        match err {
            Error::InconsistentAction(rel) => assert_eq!(rel, "i^2 = j^2"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn dual_and_tensor_units() {
        let w3 = builtin("W3").unwrap();
        let dd = w3.dual().dual();
        assert_eq!(dd.matrices(), w3.matrices());
        let k = GModule::trivial(f4(), q8(), 1);
        let t = k.tensor(&w3).unwrap();
        assert_eq!(t.matrices(), w3.matrices());
    }

    #[test]
    fn change_basis_round_trip() {
        let w3 = builtin("W3").unwrap();
        let p = m("1 w 0; 0 1 w2; w 0 1");
        let back = w3
            .change_basis(&p)
            .unwrap()
            .change_basis(&p.inverse().unwrap())
            .unwrap();
        assert_eq!(back.matrices(), w3.matrices());
        let same = w3.change_basis(&Matrix::identity(f4(), 3)).unwrap();
        assert_eq!(same.matrices(), w3.matrices());
    }

    #[test]
    fn hom_space_of_regular_is_regular() {
        let reg = GModule::regular(f4(), q8());
        let end = reg.hom_space(&reg).unwrap();
        assert_eq!(end.len(), 8);
        for f in &end {
            assert!(reg.is_homomorphism(&reg, f));
        }
    }

    #[test]
    fn json_round_trip() {
        let w3 = builtin("W3").unwrap();
        let back = GModule::from_json(&w3.to_json()).unwrap();
        assert_eq!(back.matrices(), w3.matrices());
    }

    #[test]
    fn restriction_to_center() {
        let q = q8();
        let w5 = builtin("W5").unwrap();
        let z = q.center();
        let r = w5.restrict(&z).unwrap();
        assert_eq!(r.group().order(), 2);
        assert!(!r.rho(1).is_identity());
        let t = w5.restrict(&q.trivial_subgroup()).unwrap();
        assert!(t.is_trivial());
    }
}
