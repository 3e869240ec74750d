//! Linear forms `Σ s_k a_k + s` over integer-indexed unknowns, and systems of
//! such forms constrained to vanish.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::{Echelon, SparseMatrix, SparseRow};
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SymbolicValue {
    terms: BTreeMap<i64, Scalar>,
    constant: Scalar,
}

impl SymbolicValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unknown(k: i64) -> Self {
        Self::term(k, Scalar::one())
    }

    pub fn term(k: i64, s: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(k, &s);
        v
    }

    pub fn constant(s: Scalar) -> Self {
        SymbolicValue {
            terms: BTreeMap::new(),
            constant: s,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(k, s)| (*k, s))
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.constant
    }

    pub fn unknowns(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: i64, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_default();
        *e += s;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, other: &SymbolicValue, s: &Scalar) {
        for (k, v) in &other.terms {
            self.add_term(*k, &(v * s));
        }
        self.constant += &other.constant * s;
    }

    pub fn scaled(&self, s: &Scalar) -> SymbolicValue {
        let mut out = SymbolicValue::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn add(&self, other: &SymbolicValue) -> SymbolicValue {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &SymbolicValue) -> SymbolicValue {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    /// Value under an assignment; unassigned unknowns count as zero.
    pub fn evaluate(&self, values: &BTreeMap<i64, Scalar>) -> Scalar {
        self.terms
            .iter()
            .fold(self.constant.clone(), |acc, (k, s)| acc + values.get(k).map_or_else(Scalar::zero, |v| v * s))
    }

    /// Replaces unknowns by forms.
    pub fn substitute(&self, solved: &BTreeMap<i64, SymbolicValue>) -> SymbolicValue {
        let mut out = SymbolicValue::constant(self.constant.clone());
        for (k, s) in &self.terms {
            match solved.get(k) {
                Some(v) => out.add_scaled(v, s),
                None => out.add_term(*k, s),
            }
        }
        out
    }
}

pub fn unknown_label(k: i64) -> String {
    let s = k.to_string();
    if s.len() == 1 {
        format!("a_{s}")
    } else {
        format!("a_{{{s}}}")
    }
}

fn coefficient_prefix(s: &Scalar) -> String {
    if s.is_one() {
        String::new()
    } else if s.is_integer() {
        s.to_string()
    } else {
        format!("({})", scalar::render(s))
    }
}

impl fmt::Display for SymbolicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let sign = |f: &mut fmt::Formatter<'_>, negative: bool, first: &mut bool| -> fmt::Result {
            let r = match (*first, negative) {
                (true, true) => write!(f, "-"),
                (true, false) => Ok(()),
                (false, true) => write!(f, " - "),
                (false, false) => write!(f, " + "),
            };
            *first = false;
            r
        };
        for (k, s) in &self.terms {
            sign(f, s.is_negative(), &mut first)?;
            write!(f, "{}{}", coefficient_prefix(&s.abs()), unknown_label(*k))?;
        }
        if !self.constant.is_zero() {
            sign(f, self.constant.is_negative(), &mut first)?;
            write!(f, "{}", scalar::render(&self.constant.abs()))?;
        }
        Ok(())
    }
}

/// Which step of the argument produced a cell value or relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Tag {
    /// The normalization conditions.
    Normalization,
    /// Cells fixed at the start: row 2 holds the unknowns.
    Seed,
    /// The cocycle equation with `k = 1`.
    KOne,
    /// The cocycle equation with `k = 2`.
    KTwo,
    /// `k = 2` with `i = -2`.
    KTwoAtMinusTwo,
    /// `k = 2` with `i = -3`.
    KTwoAtMinusThree,
    /// `c_{i,i} = 0`.
    Diagonal,
    /// Two derivations of the same cell.
    Antisymmetry,
    /// Supplied by the caller.
    Assumed,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Normalization => "norm",
            Tag::Seed => "seed",
            Tag::KOne => "k=1",
            Tag::KTwo => "k=2",
            Tag::KTwoAtMinusTwo => "k=2,i=-2",
            Tag::KTwoAtMinusThree => "k=2,i=-3",
            Tag::Diagonal => "diag",
            Tag::Antisymmetry => "antisym",
            Tag::Assumed => "assumed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub form: SymbolicValue,
    pub tag: Tag,
    pub source: String,
}

/// Solved form of a relation system: pivot unknowns expressed through the
/// free ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub consistent: bool,
    pub solved: BTreeMap<i64, SymbolicValue>,
    pub free: Vec<i64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationSet {
    pub relations: Vec<Relation>,
}

impl RelationSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, form: SymbolicValue, tag: Tag, source: impl Into<String>) {
        self.relations.push(Relation {
            form,
            tag,
            source: source.into(),
        });
    }

    pub fn extend(&mut self, other: &RelationSet) {
        self.relations.extend(other.relations.iter().cloned());
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn with_tags(&self, tags: &[Tag]) -> RelationSet {
        RelationSet {
            relations: self.relations.iter().filter(|r| tags.contains(&r.tag)).cloned().collect(),
        }
    }

    pub fn without_tags(&self, tags: &[Tag]) -> RelationSet {
        RelationSet {
            relations: self.relations.iter().filter(|r| !tags.contains(&r.tag)).cloned().collect(),
        }
    }

    pub fn unknowns(&self) -> BTreeSet<i64> {
        self.relations.iter().flat_map(|r| r.form.unknowns()).collect()
    }

    /// Columns in descending unknown order, so that pivots land on the
    /// highest-indexed unknowns.
    fn system(&self, extra: &BTreeSet<i64>) -> (Vec<i64>, SparseMatrix, Vec<Scalar>) {
        let mut cols: Vec<i64> = self.unknowns().union(extra).copied().collect();
        cols.reverse();
        let pos: BTreeMap<i64, usize> = cols.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let rows: Vec<SparseRow> = self
            .relations
            .iter()
            .map(|r| r.form.terms().map(|(k, s)| (pos[&k], s.clone())).collect())
            .collect();
        let rhs = self.relations.iter().map(|r| -r.form.constant_term().clone()).collect();
        (cols.clone(), SparseMatrix::from_rows(cols.len(), rows), rhs)
    }

    pub fn solve(&self) -> Solution {
        self.solve_over(&BTreeSet::new())
    }

    /// Like [`RelationSet::solve`], also listing unknowns in `extra` that
    /// occur in no relation as free.
    pub fn solve_over(&self, extra: &BTreeSet<i64>) -> Solution {
        let (cols, m, rhs) = self.system(extra);
        let ech = Echelon::reduce(&m, Some(&rhs));
        let mut solved = BTreeMap::new();
        let pivots: BTreeSet<usize> = ech.pivot_columns().into_iter().collect();
        for (pc, row, b) in ech.rows() {
            let mut v = SymbolicValue::constant(b.clone());
            for (c, s) in row {
                if c != pc {
                    v.add_term(cols[*c], &-s.clone());
                }
            }
            solved.insert(cols[*pc], v);
        }
        let mut free: Vec<i64> = (0..cols.len()).filter(|c| !pivots.contains(c)).map(|c| cols[c]).collect();
        free.sort();
        Solution {
            consistent: ech.is_consistent(),
            solved,
            free,
        }
    }

    /// Whether `form = 0` follows from the relations.
    pub fn implies(&self, form: &SymbolicValue) -> bool {
        let sol = self.solve();
        sol.consistent && form.substitute(&sol.solved).is_zero()
    }
}
