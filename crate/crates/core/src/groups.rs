//! Finite groups stored as full multiplication tables.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    relations: Vec<Relation>,
}

/// A defining relation `lhs = rhs` between words in the generators, stored
/// as generator positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

impl Relation {
    fn new(name: &str, lhs: &[usize], rhs: &[usize]) -> Self {
        Relation {
            name: name.to_string(),
            lhs: lhs.to_vec(),
            rhs: rhs.to_vec(),
        }
    }
}

/// A subgroup, stored as sorted member indices of its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
}

/// One class `HxH`, with the least member as representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub representative: usize,
    pub members: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
}

/// Units of the Hurwitz order used as Q8: (sign, basis) with basis 0..4 = 1,i,j,k.
fn quat_mul(a: (bool, usize), b: (bool, usize)) -> (bool, usize) {
    // Sign flip and basis for products of basis units.
    const T: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let (s, c) = T[a.1][b.1];
    (a.0 ^ b.0 ^ s, c)
}

fn q8_index(u: (bool, usize)) -> usize {
    2 * u.1 + usize::from(u.0)
}

fn q8_unit(idx: usize) -> (bool, usize) {
    (idx % 2 == 1, idx / 2)
}

/// The cyclic automorphism i -> j -> k -> i of Q8, on indices.
fn q8_rotate(idx: usize) -> usize {
    let (s, b) = q8_unit(idx);
    let b2 = if b == 0 { 0 } else { b % 3 + 1 };
    q8_index((s, b2))
}

impl FiniteGroup {
    /// Builds a group from a Cayley table, verifying the group axioms.
    pub fn from_table(name: &str, names: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n * n {
            return Err(Error::NotAGroup(format!(
                "table of size {} for {n} elements",
                table.len()
            )));
        }
        if table.iter().any(|&x| x >= n) {
            return Err(Error::NotAGroup("table entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        let mut inverses = vec![0; n];
        for x in 0..n {
            inverses[x] = (0..n)
                .find(|&y| table[x * n + y] == identity && table[y * n + x] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("{} has no inverse", names[x])))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let mut g = FiniteGroup {
            name: name.to_string(),
            names,
            table,
            identity,
            inverses,
            generators: Vec::new(),
            relations: Vec::new(),
        };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    fn with_generators(mut self, gens: Vec<usize>) -> Self {
        self.generators = gens;
        self
    }

    fn with_relations(mut self, relations: Vec<Relation>) -> Self {
        debug_assert!(relations
            .iter()
            .all(|r| self.eval_word(&r.lhs) == self.eval_word(&r.rhs)));
        self.relations = relations;
        self
    }

    /// Q8 with elements ordered 1, -1, i, -i, j, -j, k, -k; generators i, j.
    pub fn q8() -> Self {
        let mut names = Vec::new();
        for b in ["1", "i", "j", "k"] {
            names.push(b.to_string());
            names.push(format!("-{b}"));
        }
        let mut table = vec![0; 64];
        for a in 0..8 {
            for b in 0..8 {
                table[a * 8 + b] = q8_index(quat_mul(q8_unit(a), q8_unit(b)));
            }
        }
        FiniteGroup::from_table("Q8", names, table)
            .expect("quaternion table is a group")
            .with_generators(vec![2, 4])
            .with_relations(vec![
                Relation::new("i^4 = 1", &[0, 0, 0, 0], &[]),
                Relation::new("i^2 = j^2", &[0, 0], &[1, 1]),
                Relation::new("j i = i^3 j", &[1, 0], &[0, 0, 0, 1]),
            ])
    }

    /// G24 = C3 x| Q8 with element q*w^a at index 8a + q, where w acts on Q8
    /// by w i w^-1 = j, w j w^-1 = k, w k w^-1 = i. Generators i, j, w.
    pub fn g24() -> Self {
        let q8 = FiniteGroup::q8();
        let mut names = Vec::new();
        for a in 0..3 {
            for q in 0..8 {
                let qn = &q8.names[q];
                names.push(match (a, qn.as_str()) {
                    (0, _) => qn.clone(),
                    (_, "1") => ["", "w", "w2"][a].to_string(),
                    (_, "-1") => format!("-{}", ["", "w", "w2"][a]),
                    _ => format!("{qn}{}", ["", "w", "w2"][a]),
                });
            }
        }
        let rot = |q: usize, times: usize| (0..times).fold(q, |x, _| q8_rotate(x));
        let mut table = vec![0; 24 * 24];
        for x in 0..24 {
            let (a, q1) = (x / 8, x % 8);
            for y in 0..24 {
                let (b, q2) = (y / 8, y % 8);
                let q = q8.mul(q1, rot(q2, a));
                table[x * 24 + y] = ((a + b) % 3) * 8 + q;
            }
        }
        FiniteGroup::from_table("G24", names, table)
            .expect("semidirect product table is a group")
            .with_generators(vec![2, 4, 8])
            .with_relations(vec![
                Relation::new("i^4 = 1", &[0, 0, 0, 0], &[]),
                Relation::new("i^2 = j^2", &[0, 0], &[1, 1]),
                Relation::new("j i = i^3 j", &[1, 0], &[0, 0, 0, 1]),
                Relation::new("w^3 = 1", &[2, 2, 2], &[]),
                Relation::new("w i = j w", &[2, 0], &[1, 2]),
                Relation::new("w j = i j w", &[2, 1], &[0, 1, 2]),
            ])
    }

    /// Cyclic group of order n, elements named by exponents of `g`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g{e}"),
            })
            .collect();
        let table = (0..n * n).map(|x| (x / n + x % n) % n).collect();
        FiniteGroup::from_table(&format!("C{n}"), names, table)
            .expect("cyclic table is a group")
            .with_generators(if n > 1 { vec![1] } else { vec![] })
            .with_relations(if n > 1 {
                vec![Relation::new(&format!("g^{n} = 1"), &vec![0; n], &[])]
            } else {
                vec![]
            })
    }

    pub fn c3() -> Self {
        Self::cyclic(3)
    }

    /// The Klein four-group {1, a, b, ab}.
    pub fn klein() -> Self {
        let names = ["1", "a", "b", "ab"].map(String::from).to_vec();
        let table = (0..16).map(|x| (x / 4) ^ (x % 4)).collect();
        FiniteGroup::from_table("V4", names, table)
            .expect("Klein table is a group")
            .with_generators(vec![1, 2])
            .with_relations(vec![
                Relation::new("a^2 = 1", &[0, 0], &[]),
                Relation::new("b^2 = 1", &[1, 1], &[]),
                Relation::new("a b = b a", &[0, 1], &[1, 0]),
            ])
    }

    /// Looks up a group by command-line name.
    pub fn by_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "q8" => Ok(Self::q8()),
            "g24" => Ok(Self::g24()),
            "c3" => Ok(Self::c3()),
            "c2" => Ok(Self::cyclic(2)),
            "v4" | "klein" => Ok(Self::klein()),
            other => Err(Error::UnknownName {
                kind: "group",
                name: other.to_string(),
                valid: ["q8", "g24", "c3", "c2", "v4"].map(String::from).to_vec(),
            }),
        }
    }

    /// The opposite group: same elements, product reversed.
    pub fn opposite(&self) -> Self {
        let n = self.order();
        let table = (0..n * n).map(|x| self.mul(x % n, x / n)).collect();
        FiniteGroup {
            name: format!("{}^op", self.name),
            names: self.names.clone(),
            table,
            identity: self.identity,
            inverses: self.inverses.clone(),
            generators: self.generators.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    name: format!("({})^op", r.name),
                    lhs: r.lhs.iter().rev().copied().collect(),
                    rhs: r.rhs.iter().rev().copied().collect(),
                })
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Product of the generators at the given positions, left to right.
    pub fn eval_word(&self, word: &[usize]) -> usize {
        word.iter()
            .fold(self.identity, |acc, &p| self.mul(acc, self.generators[p]))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    /// g h g^-1
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_p_group(&self, p: usize) -> bool {
        let mut n = self.order();
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Expresses every element as a word in the generators (breadth first),
    /// returned as generator positions; the identity maps to the empty word.
    pub fn words(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[self.identity] = Some(Vec::new());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                if words[y].is_none() {
                    let mut w = words[x].clone().expect("visited");
                    w.push(gi);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words
            .into_iter()
            .map(|w| w.expect("generators generate the group"))
            .collect()
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = BTreeSet::from([self.identity]);
        for x in 0..self.order() {
            if !span.contains(&x) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// The subgroup generated by `gens`, as a sorted member set.
    pub fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.order();
        let table = (0..n)
            .map(|a| (0..n).map(|b| self.mul(a, b)).collect())
            .collect();
        serde_json::to_value(GroupJson {
            order: n,
            names: self.names.clone(),
            table,
        })
        .expect("group serializes")
    }

    pub fn from_json(name: &str, value: &serde_json::Value) -> Result<Self> {
        let g: GroupJson = serde_json::from_value(value.clone())?;
        if g.table.len() != g.order || g.names.len() != g.order {
            return Err(Error::NotAGroup("order does not match table".into()));
        }
        let flat = g.table.into_iter().flatten().collect();
        FiniteGroup::from_table(name, g.names, flat)
    }
}

/// Shared-group helpers that hand out [`Subgroup`] values.
pub trait GroupExt {
    fn subgroup(&self, members: impl IntoIterator<Item = usize>) -> Result<Subgroup>;
    fn generated_subgroup(&self, gens: &[usize]) -> Subgroup;
    fn trivial_subgroup(&self) -> Subgroup;
    fn whole(&self) -> Subgroup;
    fn center(&self) -> Subgroup;
    fn double_cosets(&self, h: &Subgroup) -> Vec<DoubleCoset>;
    fn left_cosets(&self, h: &Subgroup) -> Vec<Vec<usize>>;
    fn elementary_abelian_subgroups(&self, p: usize) -> Vec<Subgroup>;
    fn sylow_subgroup(&self, p: usize) -> Subgroup;
}

impl GroupExt for Arc<FiniteGroup> {
    fn subgroup(&self, members: impl IntoIterator<Item = usize>) -> Result<Subgroup> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if set.iter().any(|&x| x >= self.order()) {
            return Err(Error::NotSubgroup("member out of range".into()));
        }
        if !set.contains(&self.identity()) {
            return Err(Error::NotSubgroup("missing identity".into()));
        }
        for &a in &set {
            if !set.contains(&self.inv(a)) {
                return Err(Error::NotSubgroup(format!(
                    "not closed under inverse at {}",
                    self.element_name(a)
                )));
            }
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!(
                        "not closed under product at ({}, {})",
                        self.element_name(a),
                        self.element_name(b)
                    )));
                }
            }
        }
        Ok(Subgroup {
            parent: Arc::clone(self),
            members: set.into_iter().collect(),
        })
    }

    fn generated_subgroup(&self, gens: &[usize]) -> Subgroup {
        Subgroup {
            parent: Arc::clone(self),
            members: self.closure(gens).into_iter().collect(),
        }
    }

    fn trivial_subgroup(&self) -> Subgroup {
        self.generated_subgroup(&[])
    }

    fn whole(&self) -> Subgroup {
        Subgroup {
            parent: Arc::clone(self),
            members: (0..self.order()).collect(),
        }
    }

    fn center(&self) -> Subgroup {
        let n = self.order();
        let members = (0..n)
            .filter(|&z| (0..n).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect();
        Subgroup {
            parent: Arc::clone(self),
            members,
        }
    }

    fn double_cosets(&self, h: &Subgroup) -> Vec<DoubleCoset> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut members = BTreeSet::new();
            for &a in &h.members {
                for &b in &h.members {
                    members.insert(self.mul(self.mul(a, x), b));
                }
            }
            for &m in &members {
                seen[m] = true;
            }
            out.push(DoubleCoset {
                representative: x,
                members: members.into_iter().collect(),
            });
        }
        out
    }

    fn left_cosets(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let coset: Vec<usize> = h.members.iter().map(|&m| self.mul(x, m)).collect();
            let mut sorted = coset.clone();
            sorted.sort_unstable();
            for &m in &sorted {
                seen[m] = true;
            }
            out.push(sorted);
        }
        out
    }

    fn elementary_abelian_subgroups(&self, p: usize) -> Vec<Subgroup> {
        let n = self.order();
        let elems: Vec<usize> = (0..n).filter(|&x| self.element_order(x) == p).collect();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
        for &x in &elems {
            let s: Vec<usize> = self.closure(&[x]).into_iter().collect();
            if found.insert(s.clone()) {
                queue.push_back(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            for &y in &elems {
                if s.contains(&y) || !s.iter().all(|&a| self.mul(a, y) == self.mul(y, a)) {
                    continue;
                }
                let mut gens = s.clone();
                gens.push(y);
                let t: Vec<usize> = self.closure(&gens).into_iter().collect();
                if found.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        let mut subs: Vec<Vec<usize>> = found.into_iter().collect();
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        subs.into_iter()
            .map(|members| Subgroup {
                parent: Arc::clone(self),
                members,
            })
            .collect()
    }

    fn sylow_subgroup(&self, p: usize) -> Subgroup {
        let mut target = 1;
        while self.order().is_multiple_of(target * p) {
            target *= p;
        }
        let pelems: Vec<usize> = (0..self.order())
            .filter(|&x| {
                let o = self.element_order(x);
                let mut m = o;
                while m.is_multiple_of(p) {
                    m /= p;
                }
                m == 1
            })
            .collect();
        // Greedy growth inside the p-elements finds a Sylow subgroup in every
        // group used here (the Sylow subgroup is normal or the group is small).
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for &x in &pelems {
            if span.contains(&x) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let t = self.closure(&trial);
            if target % t.len() == 0 {
                gens = trial;
                span = t;
            }
        }
        Subgroup {
            parent: Arc::clone(self),
            members: span.into_iter().collect(),
        }
    }
}

impl Subgroup {
    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        (0..g.order()).all(|x| self.members.iter().all(|&h| self.contains(g.conj(x, h))))
    }

    /// The subgroup as a group in its own right; the returned map sends each
    /// local index to the parent index.
    pub fn as_group(&self) -> (FiniteGroup, Vec<usize>) {
        let g = &self.parent;
        let pos: HashMap<usize, usize> = self
            .members
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i))
            .collect();
        let n = self.members.len();
        let mut table = vec![0; n * n];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                table[i * n + j] = pos[&g.mul(a, b)];
            }
        }
        let names = self
            .members
            .iter()
            .map(|&m| g.element_name(m).to_string())
            .collect();
        let sub = FiniteGroup::from_table(&format!("{}-sub{n}", g.name()), names, table)
            .expect("closed subset of a group is a group");
        (sub, self.members.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(g: &FiniteGroup, n: &str) -> usize {
        g.element(n).unwrap()
    }

    #[test]
    fn q8_laws() {
        let q = FiniteGroup::q8();
        let (i, j, k) = (idx(&q, "i"), idx(&q, "j"), idx(&q, "k"));
        let m1 = idx(&q, "-1");
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), idx(&q, "-k"));
        for x in [i, j, k] {
            assert_eq!(q.mul(x, x), m1);
        }
        assert_eq!(q.pow(i, 4), q.identity());
        let q = Arc::new(q);
        assert_eq!(q.center().members(), &[0, 1]);
    }

    #[test]
    fn g24_structure() {
        let g = Arc::new(FiniteGroup::g24());
        assert_eq!(g.order(), 24);
        let w = idx(&g, "w");
        assert_eq!(g.conj(w, idx(&g, "i")), idx(&g, "j"));
        assert_eq!(g.conj(w, idx(&g, "j")), idx(&g, "k"));
        assert_eq!(g.conj(w, idx(&g, "k")), idx(&g, "i"));
        let syl = g.sylow_subgroup(2);
        assert_eq!(syl.members(), &(0..8).collect::<Vec<_>>()[..]);
        assert!(syl.is_normal());
        assert_eq!(g.element_order(w), 3);
    }

    #[test]
    fn double_coset_examples() {
        let g = Arc::new(FiniteGroup::g24());
        let trivial = g.trivial_subgroup();
        assert_eq!(g.double_cosets(&trivial).len(), 24);
        let c3 = g.generated_subgroup(&[8]);
        assert_eq!(c3.members(), &[0, 8, 16]);
        let dc = g.double_cosets(&c3);
        let reps: Vec<&str> = dc
            .iter()
            .map(|d| g.element_name(d.representative))
            .collect();
        assert_eq!(reps, vec!["1", "-1", "i", "-i"]);
        let mut all: Vec<usize> = dc.iter().flat_map(|d| d.members.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..24).collect::<Vec<_>>());

        let q = Arc::new(FiniteGroup::q8());
        let z = q.center();
        let dq = q.double_cosets(&z);
        assert_eq!(dq.len(), 4);
        assert_eq!(
            dq.iter().map(|d| d.members.clone()).collect::<Vec<_>>(),
            q.left_cosets(&z)
        );
    }

    #[test]
    fn elementary_abelian_examples() {
        let q = Arc::new(FiniteGroup::q8());
        let e = q.elementary_abelian_subgroups(2);
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].members(), &[0, 1]);
        let c3 = Arc::new(FiniteGroup::c3());
        assert!(c3.elementary_abelian_subgroups(2).is_empty());
        let v = Arc::new(FiniteGroup::klein());
        let e = v.elementary_abelian_subgroups(2);
        assert_eq!(e.len(), 4);
        assert_eq!(e.last().unwrap().order(), 4);
    }

    #[test]
    fn bad_table_rejected() {
        let names = ["1", "a", "b"].map(String::from).to_vec();
        let table = vec![0, 1, 2, 1, 0, 0, 2, 0, 0];
        assert!(FiniteGroup::from_table("bad", names, table).is_err());
    }

    #[test]
    fn opposite_reverses_products() {
        let g = FiniteGroup::g24();
        let op = g.opposite();
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(op.mul(a, b), g.mul(b, a));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::q8();
        let back = FiniteGroup::from_json("Q8", &g.to_json()).unwrap();
        assert_eq!(back.order(), 8);
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(back.mul(a, b), g.mul(a, b));
            }
        }
    }
}
