//! Minimal free resolutions of k over k[G] for 2-groups G, Ext classes, cup
//! products by chain-map lifting, and triple Massey products.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FiniteField};
use crate::gmod::GModule;
use crate::groups::FiniteGroup;
use crate::linalg::Matrix;

/// Two periods of the Q8 cohomology.
pub const DEFAULT_LENGTH: usize = 8;

pub const CACHE_ENV: &str = "JOKERLAB_CACHE_DIR";

/// A class in Ext^s(k, k): a functional on the generators of P_s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomClass {
    pub degree: usize,
    pub coeffs: Vec<FieldElement>,
}

impl CohomClass {
    pub fn new(degree: usize, coeffs: Vec<FieldElement>) -> Self {
        CohomClass { degree, coeffs }
    }

    pub fn zero(field: FiniteField, degree: usize, rank: usize) -> Self {
        CohomClass::new(degree, vec![field.zero(); rank])
    }

    pub fn basis(field: FiniteField, degree: usize, rank: usize, i: usize) -> Self {
        let mut c = Self::zero(field, degree, rank);
        c.coeffs[i] = field.one();
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &CohomClass) -> Result<CohomClass> {
        if self.degree != o.degree || self.coeffs.len() != o.coeffs.len() {
            return Err(Error::DimensionMismatch(format!(
                "classes of degree {} and {}",
                self.degree, o.degree
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| *a + *b)
            .collect();
        Ok(CohomClass::new(self.degree, coeffs))
    }

    pub fn scale(&self, c: FieldElement) -> CohomClass {
        CohomClass::new(self.degree, self.coeffs.iter().map(|a| *a * c).collect())
    }

    fn column(&self, field: FiniteField) -> Matrix {
        Matrix::column_vector(field, &self.coeffs)
    }
}

/// How the free choices in a nullhomotopy are made.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nullhomotopy {
    /// Zero in the lowest component, least-pivot solutions elsewhere.
    Minimal,
    /// A seeded random lowest component.
    Perturbed(u64),
}

/// A triple Massey product: one representative plus the indeterminacy.
#[derive(Clone, Debug)]
pub struct MasseyProduct {
    pub representative: CohomClass,
    /// Basis of a Ext + Ext c.
    pub indeterminacy: Vec<CohomClass>,
}

impl MasseyProduct {
    pub fn contains(&self, x: &CohomClass) -> Result<bool> {
        let diff = x.add(&self.representative)?;
        in_class_span(&self.indeterminacy, &diff)
    }
}

fn in_class_span(span: &[CohomClass], x: &CohomClass) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    if span.is_empty() {
        return Ok(false);
    }
    let field = x.coeffs[0].field();
    let cols: Vec<Matrix> = span.iter().map(|c| c.column(field)).collect();
    let refs: Vec<&Matrix> = cols.iter().collect();
    Ok(Matrix::hstack(&refs)?.solve(&x.column(field))?.is_some())
}

/// A minimal resolution P_n -> ... -> P_0 -> k with P_s = k[G]^{b_s}.
///
/// Vectors in P_s are indexed by (r, g) -> r |G| + g, meaning
/// sum c_{r,g} g e_r. `differentials[s]` is d_s as a field matrix for
/// s >= 1, and `differentials[0]` is the augmentation.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    field: FiniteField,
    group: Arc<FiniteGroup>,
    ranks: Vec<usize>,
    differentials: Vec<Matrix>,
    left: Vec<Matrix>,
}

#[derive(Serialize, Deserialize)]
struct CachedMatrix {
    rows: usize,
    cols: usize,
    entries: String,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: String,
    group: String,
    field: String,
    length: usize,
    ranks: Vec<usize>,
    differentials: Vec<CachedMatrix>,
}

impl FreeResolution {
    /// Computes a minimal resolution of the trivial module to stage `length`.
    pub fn minimal(field: FiniteField, group: Arc<FiniteGroup>, length: usize) -> Result<Self> {
        if !group.is_p_group(2) {
            return Err(Error::NotTwoGroup(group.order()));
        }
        let n = group.order();
        let left = GModule::regular(field, Arc::clone(&group))
            .matrices()
            .to_vec();
        let mut res = FreeResolution {
            field,
            group,
            ranks: vec![1],
            differentials: vec![Matrix::from_rows(field, &[vec![field.one(); n]])?],
            left,
        };
        for s in 1..=length {
            res.extend_one(s)?;
        }
        res.check()?;
        Ok(res)
    }

    fn extend_one(&mut self, s: usize) -> Result<()> {
        let field = self.field;
        let prev_rank = self.ranks[s - 1];
        let kernel = self.differentials[s - 1].kernel_matrix();
        let mut gens: Vec<Matrix> = Vec::new();
        if kernel.cols() > 0 {
            let id = Matrix::identity(field, prev_rank * self.group.order());
            let mut parts = Vec::new();
            for &g in self.group.generators() {
                parts.push(
                    self.left_mult(prev_rank, g)
                        .add_unchecked(&id)
                        .mul_unchecked(&kernel),
                );
            }
            let mut span = if parts.is_empty() {
                Matrix::zeros(field, kernel.rows(), 0)
            } else {
                let refs: Vec<&Matrix> = parts.iter().collect();
                Matrix::hstack(&refs)?.column_space()
            };
            for c in 0..kernel.cols() {
                let v = kernel.column(c);
                let both = Matrix::hstack(&[&span, &v])?;
                if both.rank() > span.rank() {
                    span = both;
                    gens.push(v);
                }
            }
        }
        let images = if gens.is_empty() {
            Matrix::zeros(field, prev_rank * self.group.order(), 0)
        } else {
            let refs: Vec<&Matrix> = gens.iter().collect();
            Matrix::hstack(&refs)?
        };
        let d = self.expand(&images, prev_rank);
        self.ranks.push(gens.len());
        self.differentials.push(d);
        Ok(())
    }

    /// Left multiplication by g on P with the given rank.
    fn left_mult(&self, rank: usize, g: usize) -> Matrix {
        Matrix::identity(self.field, rank)
            .kronecker(&self.left[g])
            .expect("same field")
    }

    /// The k[G]-linear map with the given generator images, as a field
    /// matrix: column (r, g) is g times image r.
    fn expand(&self, images: &Matrix, target_rank: usize) -> Matrix {
        let n = self.group.order();
        let blocks: Vec<Matrix> = (0..images.cols())
            .map(|r| {
                let col = images.column(r);
                let cols: Vec<Matrix> = (0..n)
                    .map(|g| self.left_mult(target_rank, g).mul_unchecked(&col))
                    .collect();
                let refs: Vec<&Matrix> = cols.iter().collect();
                Matrix::hstack(&refs).expect("same height")
            })
            .collect();
        if blocks.is_empty() {
            return Matrix::zeros(self.field, target_rank * n, 0);
        }
        let refs: Vec<&Matrix> = blocks.iter().collect();
        Matrix::hstack(&refs).expect("same height")
    }

    fn generator_index(&self, r: usize) -> usize {
        r * self.group.order() + self.group.identity()
    }

    /// Checks d d = 0, exactness, and minimality at every stage.
    pub fn check(&self) -> Result<()> {
        let n = self.group.order();
        for s in 1..self.differentials.len() {
            let d = &self.differentials[s];
            let prev = &self.differentials[s - 1];
            if d.rows() != self.ranks[s - 1] * n || d.cols() != self.ranks[s] * n {
                return Err(Error::Internal(format!("d_{s} has the wrong shape")));
            }
            if !prev.mul_unchecked(d).is_zero() {
                return Err(Error::Internal(format!("d_{} d_{s} != 0", s - 1)));
            }
            if d.rank() != prev.kernel_matrix().cols() {
                return Err(Error::Internal(format!("not exact at P_{}", s - 1)));
            }
            // Minimality: augmenting every coordinate of every image gives 0.
            let aug = Matrix::identity(self.field, self.ranks[s - 1])
                .kronecker(&self.differentials[0])?;
            if !aug.mul_unchecked(d).is_zero() {
                return Err(Error::Internal(format!("d_{s} is not minimal")));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Betti numbers b_0, ..., b_n.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// d_s for s >= 1; d_0 is the augmentation.
    pub fn differential(&self, s: usize) -> &Matrix {
        &self.differentials[s]
    }

    fn need(&self, needed: usize) -> Result<()> {
        if needed > self.length() {
            return Err(Error::InsufficientLength {
                needed,
                have: self.length(),
            });
        }
        Ok(())
    }

    fn check_class(&self, c: &CohomClass) -> Result<()> {
        self.need(c.degree)?;
        if c.coeffs.len() != self.ranks[c.degree]
            || c.coeffs.iter().any(|x| x.field() != self.field)
        {
            return Err(Error::DimensionMismatch(format!(
                "class of degree {} needs {} coefficients over {}",
                c.degree,
                self.ranks[c.degree],
                self.field.name()
            )));
        }
        Ok(())
    }

    /// Basis of Ext^s.
    pub fn ext_basis(&self, s: usize) -> Result<Vec<CohomClass>> {
        self.need(s)?;
        Ok((0..self.ranks[s])
            .map(|i| CohomClass::basis(self.field, s, self.ranks[s], i))
            .collect())
    }

    /// The cocycle P_s -> k of a class, as a row over all (r, g).
    fn functional(&self, c: &CohomClass) -> Matrix {
        let n = self.group.order();
        let mut row = Matrix::zeros(self.field, 1, c.coeffs.len() * n);
        for (r, a) in c.coeffs.iter().enumerate() {
            for g in 0..n {
                row.set(0, r * n + g, *a);
            }
        }
        row
    }

    fn class_of(&self, degree: usize, row: &Matrix) -> CohomClass {
        let coeffs = (0..self.ranks[degree])
            .map(|t| row.get(0, self.generator_index(t)))
            .collect();
        CohomClass::new(degree, coeffs)
    }

    /// Solves d_s X = Y generator by generator; Y has b_{s-1}|G| rows and
    /// `source_rank` |G| columns and is a module map.
    fn lift_through(&self, s: usize, y: &Matrix, source_rank: usize) -> Result<Matrix> {
        let mut images = Vec::new();
        for t in 0..source_rank {
            let target = y.column(self.generator_index(t));
            let x = self.differentials[s]
                .solve(&target)?
                .ok_or_else(|| Error::Internal(format!("no lift through d_{s}")))?;
            images.push(x);
        }
        if images.is_empty() {
            return Ok(Matrix::zeros(
                self.field,
                self.ranks[s] * self.group.order(),
                0,
            ));
        }
        let refs: Vec<&Matrix> = images.iter().collect();
        Ok(self.expand(&Matrix::hstack(&refs)?, self.ranks[s]))
    }

    /// A chain map lifting c: components C_s : P_{deg c + s} -> P_s for
    /// s = 0..=upto.
    pub fn lift_chain_map(&self, c: &CohomClass, upto: usize) -> Result<Vec<Matrix>> {
        self.check_class(c)?;
        let q = c.degree;
        self.need(q + upto)?;
        let n = self.group.order();
        let mut images = Matrix::zeros(self.field, n, self.ranks[q]);
        for (t, a) in c.coeffs.iter().enumerate() {
            images.set(self.group.identity(), t, *a);
        }
        let mut maps = vec![self.expand(&images, 1)];
        for s in 1..=upto {
            let y = maps[s - 1].mul_unchecked(&self.differentials[q + s]);
            maps.push(self.lift_through(s, &y, self.ranks[q + s])?);
        }
        Ok(maps)
    }

    /// The Yoneda product a b, computed as a composed with the lift of b.
    pub fn cup(&self, a: &CohomClass, b: &CohomClass) -> Result<CohomClass> {
        self.check_class(a)?;
        self.check_class(b)?;
        let p = a.degree;
        self.need(p + b.degree)?;
        let lift = self.lift_chain_map(b, p)?;
        let row = self.functional(a).mul_unchecked(&lift[p]);
        Ok(self.class_of(p + b.degree, &row))
    }

    /// Components H_0..=H_upto with F_s = d_{s+1} H_{s+1} + H_s d_{s+n},
    /// H_s : P_{s+n-1} -> P_s, for a chain map F of degree n whose class
    /// vanishes.
    fn nullhomotopy(&self, f: &[Matrix], n: usize, upto: usize, h0: Matrix) -> Result<Vec<Matrix>> {
        let mut h = vec![h0];
        for s in 0..upto {
            let y = f[s].add_unchecked(&h[s].mul_unchecked(&self.differentials[s + n]));
            h.push(self.lift_through(s + 1, &y, self.ranks[s + n])?);
        }
        Ok(h)
    }

    fn lowest_component(&self, source_rank: usize, choice: Nullhomotopy, salt: u64) -> Matrix {
        let n = self.group.order();
        let mut images = Matrix::zeros(self.field, n, source_rank);
        if let Nullhomotopy::Perturbed(seed) = choice {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
            let q = self.field.order();
            for r in 0..n {
                for c in 0..source_rank {
                    images.set(r, c, self.field.element(rng.gen_range(0..q) as u8));
                }
            }
        }
        self.expand(&images, 1)
    }

    /// The Massey product <a, b, c>, defined when ab = 0 and bc = 0.
    pub fn massey(
        &self,
        a: &CohomClass,
        b: &CohomClass,
        c: &CohomClass,
        choice: Nullhomotopy,
    ) -> Result<MasseyProduct> {
        let (p, q, r) = (a.degree, b.degree, c.degree);
        if p == 0 || q == 0 || r == 0 {
            return Err(Error::MasseyUndefined(
                "entries must have positive degree".into(),
            ));
        }
        self.need(p + q + r - 1)?;
        if !self.cup(a, b)?.is_zero() {
            return Err(Error::MasseyUndefined("first product is nonzero".into()));
        }
        if !self.cup(b, c)?.is_zero() {
            return Err(Error::MasseyUndefined("second product is nonzero".into()));
        }
        let degree = p + q + r - 1;
        let lift_c = self.lift_chain_map(c, p + q - 1)?;
        let lift_b = self.lift_chain_map(b, p - 1)?;
        let f_bc: Vec<Matrix> = (0..p)
            .map(|s| lift_b[s].mul_unchecked(&lift_c[q + s]))
            .collect();
        let h0 = self.lowest_component(self.ranks[q + r - 1], choice, 0x6263);
        let h_bc = self.nullhomotopy(&f_bc, q + r, p, h0)?;
        let h_ab0 = self.lowest_component(self.ranks[p + q - 1], choice, 0x6162);
        let first = self.functional(a).mul_unchecked(&h_bc[p]);
        let second = self.differentials[0]
            .mul_unchecked(&h_ab0)
            .mul_unchecked(&lift_c[p + q - 1]);
        let representative = self.class_of(degree, &first.add_unchecked(&second));

        let mut spanning = Vec::new();
        for e in self.ext_basis(q + r - 1)? {
            spanning.push(self.cup(a, &e)?);
        }
        for e in self.ext_basis(p + q - 1)? {
            spanning.push(self.cup(&e, c)?);
        }
        Ok(MasseyProduct {
            representative,
            indeterminacy: self.reduce_span(degree, &spanning)?,
        })
    }

    fn reduce_span(&self, degree: usize, classes: &[CohomClass]) -> Result<Vec<CohomClass>> {
        if classes.is_empty() {
            return Ok(Vec::new());
        }
        let cols: Vec<Matrix> = classes.iter().map(|c| c.column(self.field)).collect();
        let refs: Vec<&Matrix> = cols.iter().collect();
        let basis = Matrix::hstack(&refs)?.column_space();
        Ok(basis
            .columns()
            .into_iter()
            .map(|col| CohomClass::new(degree, col.to_vec()))
            .collect())
    }

    /// The homomorphism G -> k+ of a degree-1 class: phi(g) = c(x_g) where
    /// d_1 x_g = (g - 1) e_0.
    pub fn hom_identification(&self, c: &CohomClass) -> Result<Vec<FieldElement>> {
        self.check_class(c)?;
        if c.degree != 1 {
            return Err(Error::DimensionMismatch(format!(
                "degree {} is not 1",
                c.degree
            )));
        }
        let n = self.group.order();
        let row = self.functional(c);
        (0..n)
            .map(|g| {
                let mut y = Matrix::zeros(self.field, n, 1);
                if g != self.group.identity() {
                    y.set(g, 0, self.field.one());
                    y.set(self.group.identity(), 0, self.field.one());
                }
                let x = self.differentials[1]
                    .solve(&y)?
                    .ok_or_else(|| Error::Internal("augmentation ideal not hit".into()))?;
                Ok(row.mul_unchecked(&x).get(0, 0))
            })
            .collect()
    }

    /// The degree-1 class with prescribed values on the named elements.
    pub fn class_with_values(&self, values: &[(&str, FieldElement)]) -> Result<CohomClass> {
        let basis = self.ext_basis(1)?;
        let homs: Vec<Vec<FieldElement>> = basis
            .iter()
            .map(|c| self.hom_identification(c))
            .collect::<Result<_>>()?;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (name, v) in values {
            let g = self.group.element(name).ok_or_else(|| Error::UnknownName {
                kind: "group element",
                name: name.to_string(),
                valid: self.group.names().to_vec(),
            })?;
            rows.push(homs.iter().map(|h| h[g]).collect::<Vec<_>>());
            rhs.push(vec![*v]);
        }
        let m = Matrix::from_rows(self.field, &rows)?;
        let x = m
            .solve(&Matrix::from_rows(self.field, &rhs)?)?
            .ok_or_else(|| Error::Internal("no class with the prescribed values".into()))?;
        Ok(CohomClass::new(1, x.to_vec()))
    }

    fn to_cache(&self) -> CacheFile {
        CacheFile {
            version: crate::VERSION.to_string(),
            group: self.group.name().to_ascii_lowercase(),
            field: self.field.name(),
            length: self.length(),
            ranks: self.ranks.clone(),
            differentials: self
                .differentials
                .iter()
                .map(|d| CachedMatrix {
                    rows: d.rows(),
                    cols: d.cols(),
                    entries: d.to_text(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_cache()).expect("serialisable")
    }

    /// Rebuilds a resolution from its JSON form and re-checks every
    /// invariant.
    pub fn from_json(
        field: FiniteField,
        group: Arc<FiniteGroup>,
        value: &serde_json::Value,
    ) -> Result<Self> {
        let file: CacheFile = serde_json::from_value(value.clone())?;
        if file.field != field.name() || file.group != group.name().to_ascii_lowercase() {
            return Err(Error::Parse("resolution is for a different algebra".into()));
        }
        if file.ranks.len() != file.differentials.len() {
            return Err(Error::Parse("ranks and differentials disagree".into()));
        }
        let differentials = file
            .differentials
            .iter()
            .map(|m| {
                if m.rows == 0 || m.cols == 0 {
                    return Ok(Matrix::zeros(field, m.rows, m.cols));
                }
                let d = Matrix::parse_text(field, &m.entries)?;
                if d.rows() != m.rows || d.cols() != m.cols {
                    return Err(Error::Parse("matrix shape mismatch".into()));
                }
                Ok(d)
            })
            .collect::<Result<Vec<_>>>()?;
        let left = GModule::regular(field, Arc::clone(&group))
            .matrices()
            .to_vec();
        let res = FreeResolution {
            field,
            group,
            ranks: file.ranks,
            differentials,
            left,
        };
        res.check()?;
        Ok(res)
    }

    pub fn cache_path(
        dir: &Path,
        group: &FiniteGroup,
        field: FiniteField,
        length: usize,
    ) -> PathBuf {
        dir.join(format!(
            "resolution-{}-{}-{}-v{}.json",
            group.name().to_ascii_lowercase(),
            field.name(),
            length,
            crate::VERSION
        ))
    }

    /// Loads a cached resolution when valid, otherwise computes and stores it.
    pub fn cached(
        field: FiniteField,
        group: Arc<FiniteGroup>,
        length: usize,
        dir: Option<&Path>,
    ) -> Result<Self> {
        let Some(dir) = dir else {
            return Self::minimal(field, group, length);
        };
        let path = Self::cache_path(dir, &group, field, length);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(value) = serde_json::from_str::<serde_json::Value>(&text) {
                if let Ok(res) = Self::from_json(field, Arc::clone(&group), &value) {
                    if res.length() == length {
                        return Ok(res);
                    }
                }
            }
        }
        let res = Self::minimal(field, group, length)?;
        fs::create_dir_all(dir)?;
        fs::write(&path, serde_json::to_string_pretty(&res.to_json())?)?;
        Ok(res)
    }
}

/// Ext over k[Q8] with the named generators.
#[derive(Clone, Debug)]
pub struct ExtQ8 {
    pub resolution: FreeResolution,
    /// u(i) = 1, u(j) = 0.
    pub u: CohomClass,
    /// v(i) = 0, v(j) = 1.
    pub v: CohomClass,
    /// Dual to the generator of P_4.
    pub w: CohomClass,
}

impl ExtQ8 {
    pub fn new(field: FiniteField, length: usize) -> Result<Self> {
        Self::from_resolution(FreeResolution::minimal(
            field,
            Arc::new(FiniteGroup::q8()),
            length.max(4),
        )?)
    }

    pub fn from_resolution(resolution: FreeResolution) -> Result<Self> {
        let field = resolution.field();
        let (zero, one) = (field.zero(), field.one());
        let u = resolution.class_with_values(&[("i", one), ("j", zero)])?;
        let v = resolution.class_with_values(&[("i", zero), ("j", one)])?;
        resolution.need(4)?;
        if resolution.ranks()[4] != 1 {
            return Err(Error::Internal("Ext^4 is not one-dimensional".into()));
        }
        let w = CohomClass::basis(field, 4, 1, 0);
        Ok(ExtQ8 {
            resolution,
            u,
            v,
            w,
        })
    }

    pub fn one(&self) -> CohomClass {
        CohomClass::basis(self.resolution.field(), 0, 1, 0)
    }

    /// x u + y v.
    pub fn degree_one(&self, x: FieldElement, y: FieldElement) -> CohomClass {
        self.u.scale(x).add(&self.v.scale(y)).expect("same degree")
    }

    /// alpha_1 = u + w^2 v (needs w in k).
    pub fn alpha1(&self) -> Result<CohomClass> {
        let w = self.omega()?;
        Ok(self.degree_one(self.resolution.field().one(), w * w))
    }

    /// alpha_1^2 = u + w v.
    pub fn alpha1_squared(&self) -> Result<CohomClass> {
        let w = self.omega()?;
        Ok(self.degree_one(self.resolution.field().one(), w))
    }

    fn omega(&self) -> Result<FieldElement> {
        self.resolution.field().omega().ok_or_else(|| {
            Error::InvalidField("the field has no primitive cube root of unity".into())
        })
    }

    pub fn cup(&self, a: &CohomClass, b: &CohomClass) -> Result<CohomClass> {
        self.resolution.cup(a, b)
    }

    /// A product of classes, left to right.
    pub fn product(&self, factors: &[&CohomClass]) -> Result<CohomClass> {
        factors
            .iter()
            .try_fold(self.one(), |acc, f| self.resolution.cup(&acc, f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext() -> ExtQ8 {
        ExtQ8::new(FiniteField::f4(), DEFAULT_LENGTH).unwrap()
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(ext().resolution.ranks(), &[1, 2, 2, 1, 1, 2, 2, 1, 1]);
    }

    #[test]
    fn generator_values() {
        let e = ext();
        let q = e.resolution.group().clone();
        let u = e.resolution.hom_identification(&e.u).unwrap();
        let f4 = FiniteField::f4();
        assert_eq!(u[q.element("i").unwrap()], f4.one());
        assert_eq!(u[q.element("j").unwrap()], f4.zero());
        assert_eq!(u[q.element("-1").unwrap()], f4.zero());
    }

    #[test]
    fn presentation_relations() {
        let e = ext();
        let (u, v) = (&e.u, &e.v);
        let rel = e
            .product(&[u, u])
            .unwrap()
            .add(&e.product(&[u, v]).unwrap())
            .unwrap()
            .add(&e.product(&[v, v]).unwrap())
            .unwrap();
        assert!(rel.is_zero());
        assert!(e.product(&[u, u, u]).unwrap().is_zero());
        assert!(e.product(&[v, v, v]).unwrap().is_zero());
        assert!(!e.product(&[u, u]).unwrap().is_zero());
    }

    #[test]
    fn unit_and_commutativity() {
        let e = ext();
        assert_eq!(e.cup(&e.one(), &e.u).unwrap(), e.u);
        assert_eq!(e.cup(&e.u, &e.v).unwrap(), e.cup(&e.v, &e.u).unwrap());
    }

    #[test]
    fn massey_with_zero_middle() {
        let e = ext();
        let zero = CohomClass::zero(FiniteField::f4(), 1, 2);
        let m = e
            .resolution
            .massey(&e.u, &zero, &e.u, Nullhomotopy::Minimal)
            .unwrap();
        assert!(m
            .contains(&CohomClass::zero(FiniteField::f4(), 2, 2))
            .unwrap());
    }

    #[test]
    fn massey_undefined_when_product_nonzero() {
        let e = ext();
        let r = e.resolution.massey(&e.u, &e.u, &e.u, Nullhomotopy::Minimal);
        assert!(matches!(r, Err(Error::MasseyUndefined(_))));
    }

    #[test]
    fn alpha_bracket() {
        let e = ext();
        let f4 = FiniteField::f4();
        let w = f4.omega().unwrap();
        let (a, b) = (e.alpha1().unwrap(), e.alpha1_squared().unwrap());
        let uu = e.cup(&e.u, &e.u).unwrap();
        let vv = e.cup(&e.v, &e.v).unwrap();
        let expected = uu.add(&vv.scale(w * w)).unwrap();
        let indet = uu.add(&vv.scale(w)).unwrap();
        let m = e
            .resolution
            .massey(&a, &b, &a, Nullhomotopy::Minimal)
            .unwrap();
        assert!(m.contains(&expected).unwrap());
        assert_eq!(m.indeterminacy.len(), 1);
        assert!(in_class_span(&m.indeterminacy, &indet).unwrap());
        for seed in 0..4 {
            let other = e
                .resolution
                .massey(&a, &b, &a, Nullhomotopy::Perturbed(seed))
                .unwrap();
            assert!(m.contains(&other.representative).unwrap());
        }
        let companion = e
            .resolution
            .massey(&b, &a, &b, Nullhomotopy::Minimal)
            .unwrap();
        assert!(companion.contains(&uu.add(&vv.scale(w)).unwrap()).unwrap());
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("jokerlab-cohom-{}", std::process::id()));
        let q8 = Arc::new(FiniteGroup::q8());
        let a = FreeResolution::cached(FiniteField::f4(), Arc::clone(&q8), 4, Some(&dir)).unwrap();
        let b = FreeResolution::cached(FiniteField::f4(), q8, 4, Some(&dir)).unwrap();
        assert_eq!(a.ranks(), b.ranks());
        fs::remove_dir_all(dir).ok();
    }
}
