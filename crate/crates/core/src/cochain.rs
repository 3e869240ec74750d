//! Chevalley–Eilenberg cochains on a finite window of generators.
//!
//! A `q`-cochain is stored on strictly increasing tuples `i_1 < ... < i_q`;
//! other orderings follow by antisymmetry and repeated arguments give zero.
//! Values are [`Element`]s: for adjoint coefficients they live in the algebra,
//! for trivial coefficients the one-dimensional module is recorded on the
//! [`Gen::Central`] slot.
//!
//! A term `c(e_{i_1}, ..., e_{i_q}) ∋ s * g` has weight `deg g - (i_1 + ... + i_q)`.
//! Every cochain carries the set of weights it may use and the set of tuples
//! (its *domain*) on which its value is known. A fresh cochain knows every
//! tuple whose possible output generators lie in the window; a derived cochain
//! such as `δc` knows only the tuples whose computation never left the known
//! data.
//!
//! Sign convention: `δ` is the negative of the textbook differential
//!
//! ```text
//! δc(x_1..x_n) = -Σ_s (-1)^s [x_s, c(..x̂_s..)] - Σ_{s<t} (-1)^{s+t} c([x_s,x_t], ..x̂_s..x̂_t..)
//! ```
//!
//! (indices from 0). With this choice the weight-0 2-cocycle equation reads
//!
//! ```text
//! (j-i)c_{i+j,k} + (k-j)c_{j+k,i} + (i-k)c_{k+i,j}
//!   + (j-i+k)c_{k,j} + (j-i-k)c_{k,i} - (i+j-k)c_{i,j} = 0
//! ```
//!
//! and for diagonal 1-cochains `δb(e_{-2}, e_2) = 4(b_0 - b_2 - b_{-2}) e_0`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::lie::{Element, Gen, GradedLieAlgebra};
use crate::linalg::SparseMatrix;
use crate::scalar::{self, Scalar};
use crate::window::{Window, WindowError};

pub type Tuple = Vec<Gen>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Adjoint,
    Trivial,
}

impl Coefficients {
    pub fn as_str(self) -> &'static str {
        match self {
            Coefficients::Adjoint => "adjoint",
            Coefficients::Trivial => "trivial",
        }
    }
}

impl std::str::FromStr for Coefficients {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "adjoint" => Ok(Coefficients::Adjoint),
            "trivial" => Ok(Coefficients::Trivial),
            _ => Err(format!("unknown coefficients {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CochainError {
    #[error("generator {0} lies outside window {1}")]
    OutOfWindow(Gen, Window),
    #[error("value at {} is not known on this window", render_tuple(.0))]
    NotInDomain(Tuple),
    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("differential of a degree-{0} cochain is not supported")]
    UnsupportedDegree(usize),
    #[error("term {gen} at {} has weight {weight}, outside the declared weights", render_tuple(.tuple))]
    WeightMismatch { tuple: Tuple, gen: Gen, weight: i64 },
    #[error("{} is not a value slot for these coefficients", .0)]
    BadValue(Gen),
    #[error("not alternating at {}: {detail}", render_tuple(.tuple))]
    NotAlternating { tuple: Tuple, detail: String },
    #[error("cochains are incompatible: {0}")]
    Incompatible(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Window(#[from] WindowError),
}

pub fn render_tuple(t: &[Gen]) -> String {
    let labels: Vec<String> = t.iter().map(|g| g.label()).collect();
    format!("({})", labels.join(","))
}

/// Sorts `t` in place and returns the permutation sign, or `None` when an
/// argument repeats.
pub fn canonicalize(t: &mut [Gen]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

fn tuple_degree(t: &[Gen]) -> i64 {
    t.iter().map(|g| g.degree()).sum()
}

/// All strictly increasing `q`-tuples drawn from `gens`, in lexicographic order.
pub fn increasing_tuples(gens: &[Gen], q: usize) -> Vec<Tuple> {
    fn rec(gens: &[Gen], q: usize, start: usize, cur: &mut Tuple, out: &mut Vec<Tuple>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..gens.len() {
            cur.push(gens[i]);
            rec(gens, q, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(gens, q, 0, &mut Vec::with_capacity(q), &mut out);
    out
}

/// Generators that a weight-`d` value at `tuple` may use.
pub fn value_slots(alg: &GradedLieAlgebra, coeffs: Coefficients, window: &Window, tuple: &[Gen], d: i64) -> Vec<Gen> {
    let target = tuple_degree(tuple) + d;
    match coeffs {
        Coefficients::Trivial => {
            if target == 0 {
                vec![Gen::Central]
            } else {
                vec![]
            }
        }
        Coefficients::Adjoint => {
            let mut out = Vec::new();
            if alg.contains(Gen::Indexed(target), window) {
                out.push(Gen::Indexed(target));
            }
            if alg.has_central() && target == 0 {
                out.push(Gen::Central);
            }
            out
        }
    }
}

/// Whether every generator a value at `tuple` could reach stays in `window`.
fn outputs_fit(alg: &GradedLieAlgebra, coeffs: Coefficients, window: &Window, tuple: &[Gen], weights: &BTreeSet<i64>) -> bool {
    match coeffs {
        Coefficients::Trivial => true,
        Coefficients::Adjoint => weights.iter().all(|d| {
            let target = tuple_degree(tuple) + d;
            !alg.has_index(target) || window.contains(target)
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    coefficients: Coefficients,
    window: Window,
    weights: BTreeSet<i64>,
    domain: BTreeSet<Tuple>,
    entries: BTreeMap<Tuple, Element>,
}

impl Cochain {
    /// The zero cochain knowing every tuple of the window whose outputs fit.
    pub fn zero(
        alg: &GradedLieAlgebra,
        degree: usize,
        weights: impl IntoIterator<Item = i64>,
        window: Window,
        coefficients: Coefficients,
    ) -> Cochain {
        let weights: BTreeSet<i64> = weights.into_iter().collect();
        let domain = increasing_tuples(&alg.gens(&window), degree)
            .into_iter()
            .filter(|t| outputs_fit(alg, coefficients, &window, t, &weights))
            .collect();
        Cochain {
            degree,
            coefficients,
            window,
            weights,
            domain,
            entries: BTreeMap::new(),
        }
    }

    /// A cochain with an explicit domain. Values are trusted to be alternating
    /// and within the declared weights.
    pub(crate) fn from_parts(
        degree: usize,
        coefficients: Coefficients,
        window: Window,
        weights: BTreeSet<i64>,
        domain: BTreeSet<Tuple>,
        entries: BTreeMap<Tuple, Element>,
    ) -> Cochain {
        Cochain {
            degree,
            coefficients,
            window,
            weights,
            domain,
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn homogeneous(alg: &GradedLieAlgebra, degree: usize, weight: i64, window: Window, coefficients: Coefficients) -> Cochain {
        Cochain::zero(alg, degree, [weight], window, coefficients)
    }

    /// Builds a cochain from a function on ordered tuples, checking that it is
    /// alternating on the whole domain.
    pub fn from_fn(
        alg: &GradedLieAlgebra,
        degree: usize,
        weights: impl IntoIterator<Item = i64>,
        window: Window,
        coefficients: Coefficients,
        f: impl Fn(&[Gen]) -> Element,
    ) -> Result<Cochain, CochainError> {
        let mut c = Cochain::zero(alg, degree, weights, window, coefficients);
        let gens = alg.gens(&window);
        for t in c.domain.clone() {
            let v = f(&t);
            if degree >= 2 {
                // every transposition of neighbours must flip the sign
                for k in 0..degree - 1 {
                    let mut s = t.clone();
                    s.swap(k, k + 1);
                    if !f(&s).add(&v).is_zero() {
                        return Err(CochainError::NotAlternating {
                            tuple: s,
                            detail: "swapping two arguments does not negate the value".into(),
                        });
                    }
                }
            }
            c.insert_canonical(alg, t, v)?;
        }
        if degree >= 2 {
            for &g in &gens {
                let mut t = vec![g; degree];
                if let Some(slot) = t.get_mut(degree - 1) {
                    *slot = g;
                }
                if !f(&t).is_zero() {
                    return Err(CochainError::NotAlternating {
                        tuple: t,
                        detail: "nonzero on a repeated argument".into(),
                    });
                }
            }
        }
        Ok(c)
    }

    /// Random sparse cochain: each known tuple gets a value with probability
    /// `density`, integer coefficients in `-bound..=bound`.
    pub fn random(
        alg: &GradedLieAlgebra,
        degree: usize,
        weights: impl IntoIterator<Item = i64>,
        window: Window,
        coefficients: Coefficients,
        rng: &mut impl Rng,
        density: f64,
        bound: i64,
    ) -> Cochain {
        let mut c = Cochain::zero(alg, degree, weights, window, coefficients);
        let tuples: Vec<Tuple> = c.domain.iter().cloned().collect();
        for t in tuples {
            if !rng.gen_bool(density) {
                continue;
            }
            let mut v = Element::zero();
            for &d in &c.weights.clone() {
                for g in value_slots(alg, coefficients, &window, &t, d) {
                    v.add_term(g, &scalar::int(rng.gen_range(-bound..=bound)));
                }
            }
            c.entries_insert(t, v);
        }
        c
    }

    fn entries_insert(&mut self, t: Tuple, v: Element) {
        if v.is_zero() {
            self.entries.remove(&t);
        } else {
            self.entries.insert(t, v);
        }
    }

    fn check_value(&self, alg: &GradedLieAlgebra, t: &[Gen], v: &Element) -> Result<(), CochainError> {
        for g in v.gens() {
            let weight = g.degree() - tuple_degree(t);
            if !self.weights.contains(&weight) {
                return Err(CochainError::WeightMismatch {
                    tuple: t.to_vec(),
                    gen: g,
                    weight,
                });
            }
            let ok = match self.coefficients {
                Coefficients::Trivial => g == Gen::Central,
                Coefficients::Adjoint => alg.contains(g, &self.window),
            };
            if !ok {
                return Err(CochainError::BadValue(g));
            }
        }
        Ok(())
    }

    fn insert_canonical(&mut self, alg: &GradedLieAlgebra, t: Tuple, v: Element) -> Result<(), CochainError> {
        if !self.domain.contains(&t) {
            return Err(CochainError::NotInDomain(t));
        }
        self.check_value(alg, &t, &v)?;
        self.entries_insert(t, v);
        Ok(())
    }

    /// Sets the value at `tuple` (any order; the stored value is adjusted by
    /// the permutation sign).
    pub fn set(&mut self, alg: &GradedLieAlgebra, tuple: &[Gen], value: Element) -> Result<(), CochainError> {
        self.check_arity(tuple)?;
        let mut t = tuple.to_vec();
        match canonicalize(&mut t) {
            Some(sign) => self.insert_canonical(alg, t, value.scaled(&scalar::int(sign))),
            None if value.is_zero() => Ok(()),
            None => Err(CochainError::NotAlternating {
                tuple: tuple.to_vec(),
                detail: "nonzero on a repeated argument".into(),
            }),
        }
    }

    /// Sets the single-weight value `s * g` where `g` is the unique indexed
    /// (adjoint) or trivial output slot at `tuple`.
    pub fn set_scalar(&mut self, alg: &GradedLieAlgebra, tuple: &[Gen], s: Scalar) -> Result<(), CochainError> {
        let d = self.single_weight().ok_or_else(|| CochainError::Incompatible("set_scalar needs a single weight".into()))?;
        let target = tuple_degree(tuple) + d;
        let g = match self.coefficients {
            Coefficients::Trivial => Gen::Central,
            Coefficients::Adjoint => Gen::Indexed(target),
        };
        self.set(alg, tuple, Element::term(g, s))
    }

    fn check_arity(&self, tuple: &[Gen]) -> Result<(), CochainError> {
        if tuple.len() != self.degree {
            return Err(CochainError::Arity {
                expected: self.degree,
                got: tuple.len(),
            });
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn weights(&self) -> &BTreeSet<i64> {
        &self.weights
    }

    pub fn single_weight(&self) -> Option<i64> {
        (self.weights.len() == 1).then(|| *self.weights.first().unwrap())
    }

    pub fn domain(&self) -> &BTreeSet<Tuple> {
        &self.domain
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Tuple, &Element)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Value at a canonical (strictly increasing) tuple of the domain.
    pub fn get(&self, t: &[Gen]) -> Option<&Element> {
        self.entries.get(t)
    }

    /// The scalar at the unique single-weight slot of `tuple` (canonical order).
    pub fn scalar_at(&self, tuple: &[Gen]) -> Scalar {
        let d = self.single_weight().expect("scalar_at needs a single weight");
        let g = match self.coefficients {
            Coefficients::Trivial => Gen::Central,
            Coefficients::Adjoint => Gen::Indexed(tuple_degree(tuple) + d),
        };
        self.entries.get(tuple).map_or_else(Scalar::zero, |e| e.coeff(g))
    }

    /// `c(x_1, ..., x_q)` for arguments in any order.
    pub fn evaluate(&self, alg: &GradedLieAlgebra, tuple: &[Gen]) -> Result<Element, CochainError> {
        self.check_arity(tuple)?;
        for &g in tuple {
            if !alg.contains(g, &self.window) {
                return Err(CochainError::OutOfWindow(g, self.window));
            }
        }
        let mut t = tuple.to_vec();
        let Some(sign) = canonicalize(&mut t) else {
            return Ok(Element::zero());
        };
        if !self.domain.contains(&t) {
            return Err(CochainError::NotInDomain(t));
        }
        Ok(self.entries.get(&t).map_or_else(Element::zero, |v| v.scaled(&scalar::int(sign))))
    }

    /// `self + s * other` on the common domain.
    pub fn add_scaled(&self, other: &Cochain, s: &Scalar) -> Result<Cochain, CochainError> {
        if self.degree != other.degree || self.coefficients != other.coefficients {
            return Err(CochainError::Incompatible("degree or coefficients differ".into()));
        }
        let domain: BTreeSet<Tuple> = self.domain.intersection(&other.domain).cloned().collect();
        let mut entries = BTreeMap::new();
        for t in &domain {
            let mut v = self.entries.get(t).cloned().unwrap_or_default();
            if let Some(o) = other.entries.get(t) {
                v.add_scaled(o, s);
            }
            if !v.is_zero() {
                entries.insert(t.clone(), v);
            }
        }
        Ok(Cochain {
            degree: self.degree,
            coefficients: self.coefficients,
            window: self.window,
            weights: self.weights.union(&other.weights).copied().collect(),
            domain,
            entries,
        })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.add_scaled(other, &scalar::int(-1))
    }

    pub fn scaled(&self, s: &Scalar) -> Cochain {
        let mut c = self.clone();
        c.entries = c
            .entries
            .into_iter()
            .map(|(t, v)| (t, v.scaled(s)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        c
    }

    /// Forgets everything outside `core`: tuples must have all arguments in
    /// `core`, and (adjoint) all possible outputs in `core` as well.
    pub fn restrict(&self, alg: &GradedLieAlgebra, core: &Window) -> Cochain {
        let keep = |t: &Tuple| {
            t.iter().all(|g| alg.contains(*g, core)) && outputs_fit(alg, self.coefficients, core, t, &self.weights)
        };
        Cochain {
            degree: self.degree,
            coefficients: self.coefficients,
            window: self.window,
            weights: self.weights.clone(),
            domain: self.domain.iter().filter(|t| keep(t)).cloned().collect(),
            entries: self.entries.iter().filter(|(t, _)| keep(t)).map(|(t, v)| (t.clone(), v.clone())).collect(),
        }
    }

    /// Restricts the domain to a subset.
    pub fn with_domain(&self, domain: &BTreeSet<Tuple>) -> Cochain {
        let domain: BTreeSet<Tuple> = self.domain.intersection(domain).cloned().collect();
        Cochain {
            entries: self.entries.iter().filter(|(t, _)| domain.contains(*t)).map(|(t, v)| (t.clone(), v.clone())).collect(),
            domain,
            ..self.clone()
        }
    }

    /// Whether every tuple of the core (see [`Cochain::restrict`]) is known.
    pub fn covers(&self, alg: &GradedLieAlgebra, core: &Window) -> bool {
        let full = Cochain::zero(alg, self.degree, self.weights.iter().copied(), self.window, self.coefficients).restrict(alg, core);
        full.domain.is_subset(&self.domain)
    }

    /// Widens the declared weight set (domain unchanged).
    pub fn with_weights(&self, weights: impl IntoIterator<Item = i64>) -> Cochain {
        let mut c = self.clone();
        c.weights.extend(weights);
        c
    }

    /// Weights that actually occur among the entries.
    pub fn occurring_weights(&self) -> BTreeSet<i64> {
        self.entries
            .iter()
            .flat_map(|(t, v)| v.gens().map(move |g| g.degree() - tuple_degree(t)))
            .collect()
    }
}

/// Splits a cochain by weight. The components share the input's domain and
/// sum back to it exactly.
pub fn weight_components(c: &Cochain) -> BTreeMap<i64, Cochain> {
    let mut out: BTreeMap<i64, Cochain> = BTreeMap::new();
    for (t, v) in &c.entries {
        for (g, s) in v.terms() {
            let d = g.degree() - tuple_degree(t);
            let comp = out.entry(d).or_insert_with(|| Cochain {
                degree: c.degree,
                coefficients: c.coefficients,
                window: c.window,
                weights: BTreeSet::from([d]),
                domain: c.domain.clone(),
                entries: BTreeMap::new(),
            });
            let e = comp.entries.entry(t.clone()).or_default();
            e.add_term(g, s);
        }
    }
    out
}

/// One term of `δc(U)`: `coef * c(input)` or, with an action generator `x`,
/// `coef * [x, c(input)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StencilTerm {
    pub coef: Scalar,
    pub input: Tuple,
    pub action: Option<Gen>,
}

/// Expansion of `δc` at the increasing tuple `out` into values of `c`.
pub fn stencil(alg: &GradedLieAlgebra, coeffs: Coefficients, out: &[Gen]) -> Vec<StencilTerm> {
    let n = out.len();
    let mut terms = Vec::new();
    let parity = |k: usize| if k % 2 == 0 { 1 } else { -1 };
    if coeffs == Coefficients::Adjoint {
        for s in 0..n {
            let input: Tuple = out.iter().enumerate().filter(|(k, _)| *k != s).map(|(_, g)| *g).collect();
            terms.push(StencilTerm {
                coef: scalar::int(-parity(s)),
                input,
                action: Some(out[s]),
            });
        }
    }
    for s in 0..n {
        for t in s + 1..n {
            let rest: Vec<Gen> = out.iter().enumerate().filter(|(k, _)| *k != s && *k != t).map(|(_, g)| *g).collect();
            for (g, beta) in alg.bracket(out[s], out[t]).terms() {
                let mut input = Vec::with_capacity(n - 1);
                input.push(g);
                input.extend_from_slice(&rest);
                let Some(sign) = canonicalize(&mut input) else { continue };
                terms.push(StencilTerm {
                    coef: beta * scalar::int(-parity(s + t) * sign),
                    input,
                    action: None,
                });
            }
        }
    }
    terms
}

fn stencil_is_interior(terms: &[StencilTerm], domain: &BTreeSet<Tuple>) -> bool {
    terms.iter().all(|term| term.coef.is_zero() || domain.contains(&term.input))
}

/// `δc` together with the output tuples that had to be skipped because they
/// needed data outside the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialResult {
    pub cochain: Cochain,
    pub omitted: Vec<Tuple>,
}

pub fn differential(alg: &GradedLieAlgebra, c: &Cochain) -> Result<DifferentialResult, CochainError> {
    if c.degree > 3 {
        return Err(CochainError::UnsupportedDegree(c.degree));
    }
    let gens = alg.gens(&c.window);
    let mut domain = BTreeSet::new();
    let mut entries = BTreeMap::new();
    let mut omitted = Vec::new();
    for out in increasing_tuples(&gens, c.degree + 1) {
        let terms = stencil(alg, c.coefficients, &out);
        if !stencil_is_interior(&terms, &c.domain) || !outputs_fit(alg, c.coefficients, &c.window, &out, &c.weights) {
            omitted.push(out);
            continue;
        }
        let mut v = Element::zero();
        for term in &terms {
            let Some(val) = c.entries.get(&term.input) else { continue };
            match term.action {
                Some(x) => v.add_scaled(&alg.ad(x, val), &term.coef),
                None => v.add_scaled(val, &term.coef),
            }
        }
        if !v.is_zero() {
            entries.insert(out.clone(), v);
        }
        domain.insert(out);
    }
    Ok(DifferentialResult {
        cochain: Cochain {
            degree: c.degree + 1,
            coefficients: c.coefficients,
            window: c.window,
            weights: c.weights.clone(),
            domain,
            entries,
        },
        omitted,
    })
}

/// The differential with the action terms dropped; only the bracket terms
/// survive.
pub fn trivial_coefficient_differential(alg: &GradedLieAlgebra, c: &Cochain) -> Result<DifferentialResult, CochainError> {
    if c.coefficients != Coefficients::Trivial {
        return Err(CochainError::Incompatible("expected trivial coefficients".into()));
    }
    differential(alg, c)
}

/// Ordered coordinates `(tuple, value generator)` of a single-weight cochain
/// space, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainBasis {
    pub degree: usize,
    pub weights: BTreeSet<i64>,
    pub window: Window,
    pub coefficients: Coefficients,
    pub items: Vec<(Tuple, Gen)>,
    pub domain: BTreeSet<Tuple>,
    index: HashMap<(Tuple, Gen), usize>,
}

impl CochainBasis {
    pub fn new(
        alg: &GradedLieAlgebra,
        degree: usize,
        weights: impl IntoIterator<Item = i64>,
        window: Window,
        coefficients: Coefficients,
    ) -> CochainBasis {
        let template = Cochain::zero(alg, degree, weights, window, coefficients);
        let mut items = Vec::new();
        for t in &template.domain {
            let mut slots: Vec<Gen> = template
                .weights
                .iter()
                .flat_map(|&d| value_slots(alg, coefficients, &window, t, d))
                .collect();
            slots.sort();
            slots.dedup();
            items.extend(slots.into_iter().map(|g| (t.clone(), g)));
        }
        let index = items.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        CochainBasis {
            degree,
            weights: template.weights,
            window,
            coefficients,
            items,
            domain: template.domain,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.items.len()
    }

    pub fn position(&self, tuple: &[Gen], g: Gen) -> Option<usize> {
        self.index.get(&(tuple.to_vec(), g)).copied()
    }

    pub fn zero_cochain(&self) -> Cochain {
        Cochain {
            degree: self.degree,
            coefficients: self.coefficients,
            window: self.window,
            weights: self.weights.clone(),
            domain: self.domain.clone(),
            entries: BTreeMap::new(),
        }
    }

    pub fn to_vector(&self, c: &Cochain) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (t, e) in c.entries() {
            for (g, s) in e.terms() {
                if let Some(i) = self.position(t, g) {
                    v[i] = s.clone();
                }
            }
        }
        v
    }

    pub fn from_vector(&self, v: &[Scalar]) -> Cochain {
        let mut c = self.zero_cochain();
        for (i, s) in v.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let (t, g) = &self.items[i];
            c.entries.entry(t.clone()).or_default().add_term(*g, s);
        }
        c.entries.retain(|_, e| !e.is_zero());
        c
    }
}

/// The matrix of `δ` on the coordinates of `basis`, restricted to interior
/// output tuples. Rows are `(output tuple, output generator)`.
#[derive(Debug, Clone)]
pub struct DifferentialMatrix {
    pub matrix: SparseMatrix,
    pub rows: Vec<(Tuple, Gen)>,
    pub omitted: usize,
}

pub fn differential_matrix(alg: &GradedLieAlgebra, basis: &CochainBasis) -> DifferentialMatrix {
    let gens = alg.gens(&basis.window);
    let mut row_index: HashMap<(Tuple, Gen), usize> = HashMap::new();
    let mut rows: Vec<(Tuple, Gen)> = Vec::new();
    let mut data: Vec<BTreeMap<usize, Scalar>> = Vec::new();
    let mut omitted = 0;
    // slots per input tuple
    let mut slots: HashMap<&Tuple, Vec<(Gen, usize)>> = HashMap::new();
    for (i, (t, g)) in basis.items.iter().enumerate() {
        slots.entry(t).or_default().push((*g, i));
    }
    for out in increasing_tuples(&gens, basis.degree + 1) {
        let terms = stencil(alg, basis.coefficients, &out);
        if !stencil_is_interior(&terms, &basis.domain) || !outputs_fit(alg, basis.coefficients, &basis.window, &out, &basis.weights) {
            omitted += 1;
            continue;
        }
        let mut add = |h: Gen, col: usize, v: Scalar| {
            let key = (out.clone(), h);
            let r = *row_index.entry(key.clone()).or_insert_with(|| {
                rows.push(key);
                data.push(BTreeMap::new());
                rows.len() - 1
            });
            *data[r].entry(col).or_insert_with(Scalar::zero) += v;
        };
        for term in &terms {
            let Some(cols) = slots.get(&term.input) else { continue };
            for &(g, col) in cols {
                match term.action {
                    Some(x) => {
                        for (h, gamma) in alg.bracket(x, g).terms() {
                            add(h, col, &term.coef * gamma);
                        }
                    }
                    None => add(g, col, term.coef.clone()),
                }
            }
        }
    }
    DifferentialMatrix {
        matrix: SparseMatrix::from_rows(basis.dim(), data),
        rows,
        omitted,
    }
}

impl Cochain {
    /// Text form:
    ///
    /// ```text
    /// cochain
    /// degree: 2
    /// weights: 0
    /// window: -4:4
    /// coefficients: adjoint
    /// (2,3) -> 5
    /// (1,4) -> 5:1, c:1/2
    /// ```
    ///
    /// A bare scalar stands for the single-weight slot (`e_{i+j+d}`, or the
    /// trivial module); otherwise terms are `k:p/q` with `c` for central.
    pub fn to_text(&self) -> String {
        let mut s = self.header_text();
        for (t, v) in &self.entries {
            let _ = writeln!(s, "{} -> {}", render_tuple(t), self.render_value(t, v));
        }
        s
    }

    /// Text form that also records the domain: a `domain: listed` header
    /// line, then every known tuple, zeros included.
    pub fn to_text_listed(&self) -> String {
        let mut s = self.header_text();
        s.push_str("domain: listed\n");
        let zero = Element::zero();
        for t in &self.domain {
            let v = self.entries.get(t).unwrap_or(&zero);
            let _ = writeln!(s, "{} -> {}", render_tuple(t), self.render_value(t, v));
        }
        s
    }

    fn header_text(&self) -> String {
        let mut s = String::from("cochain\n");
        let weights: Vec<String> = self.weights.iter().map(i64::to_string).collect();
        let _ = writeln!(s, "degree: {}", self.degree);
        let _ = writeln!(s, "weights: {}", weights.join(","));
        let _ = writeln!(s, "window: {}", self.window);
        let _ = writeln!(s, "coefficients: {}", self.coefficients.as_str());
        s
    }

    fn render_value(&self, t: &[Gen], v: &Element) -> String {
        if v.is_zero() {
            return "0".into();
        }
        if let Some(d) = self.single_weight() {
            let slot = match self.coefficients {
                Coefficients::Trivial => Gen::Central,
                Coefficients::Adjoint => Gen::Indexed(tuple_degree(t) + d),
            };
            if v.len() == 1 && v.gens().next() == Some(slot) {
                return scalar::render(&v.coeff(slot));
            }
        }
        let parts: Vec<String> = v.terms().map(|(g, s)| format!("{}:{}", g.label(), scalar::render(s))).collect();
        parts.join(", ")
    }

    pub fn parse(alg: &GradedLieAlgebra, text: &str) -> Result<Cochain, CochainError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let perr = |line: usize, msg: &str| CochainError::Parse { line, msg: msg.to_string() };
        match lines.next() {
            Some((_, "cochain")) => {}
            Some((line, _)) => return Err(perr(line, "expected 'cochain'")),
            None => return Err(perr(0, "empty document")),
        }
        let mut header = BTreeMap::new();
        for key in ["degree", "weights", "window", "coefficients"] {
            let (line, l) = lines.next().ok_or_else(|| perr(0, "truncated header"))?;
            let (k, v) = l.split_once(':').ok_or_else(|| perr(line, "expected 'key: value'"))?;
            if k.trim() != key {
                return Err(perr(line, &format!("expected header field {key:?}")));
            }
            header.insert(key, (line, v.trim().to_string()));
        }
        let (line, deg) = &header["degree"];
        let degree: usize = deg.parse().map_err(|_| perr(*line, "bad degree"))?;
        let (line, ws) = &header["weights"];
        let weights: Vec<i64> = ws
            .split(',')
            .map(|w| w.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| perr(*line, "bad weights"))?;
        let (_, win) = &header["window"];
        let window: Window = win.parse()?;
        let (line, co) = &header["coefficients"];
        let coefficients: Coefficients = co.parse().map_err(|e: String| perr(*line, &e))?;
        let mut c = Cochain::zero(alg, degree, weights, window, coefficients);
        let mut lines = lines.peekable();
        let listed = match lines.peek() {
            Some((line, l)) if l.starts_with("domain:") => {
                if l["domain:".len()..].trim() != "listed" {
                    return Err(perr(*line, "expected 'domain: listed'"));
                }
                lines.next();
                c.domain.clear();
                true
            }
            _ => false,
        };
        let mut seen = BTreeSet::new();
        for (line, l) in lines {
            let (lhs, rhs) = l.split_once("->").ok_or_else(|| perr(line, "expected '(tuple) -> value'"))?;
            let lhs = lhs.trim();
            let inner = lhs
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .ok_or_else(|| perr(line, "tuple must be parenthesized"))?;
            let tuple: Tuple = if inner.trim().is_empty() {
                vec![]
            } else {
                inner
                    .split(',')
                    .map(|x| Gen::parse_label(x.trim()))
                    .collect::<Option<_>>()
                    .ok_or_else(|| perr(line, "bad generator in tuple"))?
            };
            if tuple.len() != degree {
                return Err(perr(line, "tuple length differs from degree"));
            }
            let mut canon = tuple.clone();
            if canonicalize(&mut canon).is_none() {
                return Err(perr(line, "repeated argument"));
            }
            if !seen.insert(canon) {
                return Err(perr(line, "duplicate tuple"));
            }
            let rhs = rhs.trim();
            let value = if rhs == "0" {
                Element::zero()
            } else if !rhs.contains(':') {
                let s = scalar::parse(rhs).map_err(|e| perr(line, &e.to_string()))?;
                let d = c.single_weight().ok_or_else(|| perr(line, "bare scalar needs a single weight"))?;
                let g = match coefficients {
                    Coefficients::Trivial => Gen::Central,
                    Coefficients::Adjoint => Gen::Indexed(tuple_degree(&tuple) + d),
                };
                Element::term(g, s)
            } else {
                let mut v = Element::zero();
                for term in rhs.split(',') {
                    let (g, s) = term.trim().split_once(':').ok_or_else(|| perr(line, "term must be k:p/q"))?;
                    let g = Gen::parse_label(g.trim()).ok_or_else(|| perr(line, "bad target generator"))?;
                    let s = scalar::parse(s.trim()).map_err(|e| perr(line, &e.to_string()))?;
                    v.add_term(g, &s);
                }
                v
            };
            if listed {
                let mut canon = tuple.clone();
                let _ = canonicalize(&mut canon);
                if !canon.iter().all(|g| alg.contains(*g, &window)) {
                    return Err(perr(line, "tuple leaves the window"));
                }
                c.domain.insert(canon.clone());
                c.entries.remove(&canon);
            }
            c.set(alg, &tuple, value).map_err(|e| perr(line, &e.to_string()))?;
        }
        Ok(c)
    }
}
