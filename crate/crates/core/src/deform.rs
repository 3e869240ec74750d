//! Formal deformations over `K[t]/(t^{N+1})`, checked and trivialized order
//! by order.
//!
//! A deformed bracket is `μ_0 + t μ_1 + ... + t^N μ_N` with `μ_0` the bracket
//! of the underlying algebra. Higher layers are 2-cochains known on part of a
//! window; a missing layer is identically zero. Equivalences
//! `φ = id + t φ_1 + ... + t^N φ_N` are global linear maps, zero wherever no
//! image is recorded.
//!
//! `conjugate(μ, φ)(x, y) = φ⁻¹ μ(φx, φy)`. Its first-order layer for the
//! trivial deformation is `[φ_1 x, y] + [x, φ_1 y] - φ_1[x, y] = -δφ_1`, so
//! a layer `μ_s = δb` is removed by conjugating with `id + t^s b`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::One;
use rand::Rng;

use crate::cochain::{self, differential, weight_components, Cochain, CochainError, Coefficients, Tuple};
use crate::cohomology::{solve_coboundary, CohomologyError};
use crate::lie::{Element, Gen, GradedLieAlgebra};
use crate::scalar::Scalar;
use crate::window::Window;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeformError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("boundary: {0}")]
    Boundary(String),
    #[error("Jacobi identity fails at order {order} on ({}, {}, {})", .triple.0, .triple.1, .triple.2)]
    JacobiUnclean { order: usize, triple: (Gen, Gen, Gen) },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

impl From<CohomologyError> for DeformError {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::Cochain(c) => DeformError::Cochain(c),
            CohomologyError::Config(m) => DeformError::Boundary(m),
            other => DeformError::Boundary(other.to_string()),
        }
    }
}

/// `K[t]/(t^{N+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncatedBase {
    pub order: usize,
}

/// A linear map given by the images of generators; unlisted generators map
/// to zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearMap {
    images: BTreeMap<Gen, Element>,
}

impl LinearMap {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_cochain(c: &Cochain) -> Self {
        assert_eq!(c.degree(), 1, "a linear map comes from a 1-cochain");
        LinearMap {
            images: c.entries().map(|(t, v)| (t[0], v.clone())).collect(),
        }
    }

    pub fn image(&self, g: Gen) -> Element {
        self.images.get(&g).cloned().unwrap_or_default()
    }

    pub fn images(&self) -> impl Iterator<Item = (&Gen, &Element)> {
        self.images.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, u: &Element) -> Element {
        let mut out = Element::zero();
        for (g, s) in u.terms() {
            if let Some(v) = self.images.get(&g) {
                out.add_scaled(v, s);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        let images = other
            .images
            .iter()
            .map(|(g, v)| (*g, self.apply(v)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        LinearMap { images }
    }

    pub fn add_scaled(&mut self, other: &LinearMap, s: &Scalar) {
        for (g, v) in &other.images {
            let e = self.images.entry(*g).or_default();
            e.add_scaled(v, s);
            if e.is_zero() {
                self.images.remove(g);
            }
        }
    }

    /// The map as a 1-cochain on the smallest window holding every argument
    /// and image.
    pub fn to_cochain(&self, alg: &GradedLieAlgebra) -> Cochain {
        let indices: Vec<i64> = self
            .images
            .iter()
            .flat_map(|(g, v)| std::iter::once(*g).chain(v.gens()))
            .filter_map(Gen::index)
            .collect();
        let window = Window {
            lo: indices.iter().copied().min().unwrap_or(0),
            hi: indices.iter().copied().max().unwrap_or(0),
        };
        let weights = self
            .images
            .iter()
            .flat_map(|(g, v)| v.gens().map(move |h| h.degree() - g.degree()))
            .collect::<BTreeSet<_>>();
        let domain = alg.gens(&window).into_iter().map(|g| vec![g]).collect();
        let entries = self.images.iter().map(|(g, v)| (vec![*g], v.clone())).collect();
        Cochain::from_parts(1, Coefficients::Adjoint, window, weights, domain, entries)
    }
}

/// `id + t φ_1 + ... + t^N φ_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub base: TruncatedBase,
    /// `layers[s - 1] = φ_s`.
    pub layers: Vec<LinearMap>,
}

impl Equivalence {
    pub fn identity(order: usize) -> Self {
        Equivalence {
            base: TruncatedBase { order },
            layers: vec![LinearMap::zero(); order],
        }
    }

    /// `id + t^s b`.
    pub fn single(order: usize, s: usize, b: LinearMap) -> Self {
        let mut e = Self::identity(order);
        e.layers[s - 1] = b;
        e
    }

    /// Random layers of the given weights on `window`, integer coefficients in
    /// `-bound..=bound`.
    pub fn random(
        alg: &GradedLieAlgebra,
        order: usize,
        window: Window,
        weights: &[i64],
        rng: &mut impl Rng,
        density: f64,
        bound: i64,
    ) -> Self {
        let layers = (0..order)
            .map(|_| {
                let c = Cochain::random(alg, 1, weights.iter().copied(), window, Coefficients::Adjoint, rng, density, bound);
                LinearMap::from_cochain(&c)
            })
            .collect();
        Equivalence {
            base: TruncatedBase { order },
            layers,
        }
    }

    pub fn order(&self) -> usize {
        self.base.order
    }

    /// Layer `s` with `φ_0 = id` left implicit.
    fn layer(&self, s: usize) -> &LinearMap {
        &self.layers[s - 1]
    }

    /// `φ(u)` as a series `u_0, ..., u_N` for a constant `u`.
    pub fn apply_series(&self, u: &Element) -> Vec<Element> {
        let mut out = vec![u.clone()];
        out.extend(self.layers.iter().map(|m| m.apply(u)));
        out
    }

    /// Applies the equivalence to a series, truncating at order `N`.
    pub fn apply_to(&self, w: &[Element]) -> Vec<Element> {
        let n = self.order();
        (0..=n)
            .map(|s| {
                let mut acc = w[s].clone();
                for a in 1..=s {
                    acc.add_scaled(&self.layer(a).apply(&w[s - a]), &Scalar::one());
                }
                acc
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Equivalence) -> Result<Equivalence, DeformError> {
        if self.order() != other.order() {
            return Err(DeformError::Config("equivalences over different bases".into()));
        }
        let n = self.order();
        let layers = (1..=n)
            .map(|s| {
                let mut m = self.layer(s).clone();
                m.add_scaled(other.layer(s), &Scalar::one());
                for a in 1..s {
                    m.add_scaled(&self.layer(a).compose(other.layer(s - a)), &Scalar::one());
                }
                m
            })
            .collect();
        Ok(Equivalence { base: self.base, layers })
    }

    /// `ψ_s = -Σ_{a=1..s} φ_a ∘ ψ_{s-a}` with `ψ_0 = id`.
    pub fn inverse(&self) -> Equivalence {
        let n = self.order();
        let mut inv: Vec<LinearMap> = Vec::with_capacity(n);
        for s in 1..=n {
            let mut m = LinearMap::zero();
            m.add_scaled(self.layer(s), &-Scalar::one());
            for a in 1..s {
                m.add_scaled(&self.layer(a).compose(&inv[s - a - 1]), &-Scalar::one());
            }
            inv.push(m);
        }
        Equivalence {
            base: self.base,
            layers: inv,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.layers.iter().all(LinearMap::is_zero)
    }
}

#[derive(Debug, Clone)]
pub struct DeformedBracket {
    pub base: TruncatedBase,
    pub algebra: GradedLieAlgebra,
    pub window: Window,
    /// `layers[s - 1] = μ_s`; `None` is the zero layer.
    pub layers: Vec<Option<Cochain>>,
}

impl DeformedBracket {
    pub fn trivial(algebra: &GradedLieAlgebra, order: usize, window: Window) -> Self {
        DeformedBracket {
            base: TruncatedBase { order },
            algebra: algebra.clone(),
            window,
            layers: vec![None; order],
        }
    }

    pub fn new(algebra: &GradedLieAlgebra, window: Window, layers: Vec<Option<Cochain>>) -> Result<Self, DeformError> {
        for c in layers.iter().flatten() {
            if c.degree() != 2 || c.coefficients() != Coefficients::Adjoint {
                return Err(DeformError::Config("layers must be adjoint 2-cochains".into()));
            }
        }
        Ok(DeformedBracket {
            base: TruncatedBase { order: layers.len() },
            algebra: algebra.clone(),
            window,
            layers,
        })
    }

    pub fn order(&self) -> usize {
        self.base.order
    }

    /// `μ_s`, materialized as a cochain (zero layers become the zero cochain
    /// on the window).
    pub fn layer(&self, s: usize) -> Cochain {
        match &self.layers[s - 1] {
            Some(c) => c.clone(),
            None => Cochain::homogeneous(&self.algebra, 2, 0, self.window, Coefficients::Adjoint),
        }
    }

    /// `μ_s(u, v)`, or `None` where the layer is unknown.
    fn mu(&self, s: usize, u: &Element, v: &Element) -> Option<Element> {
        if s == 0 {
            return Some(self.algebra.bracket_elements(u, v));
        }
        let Some(c) = &self.layers[s - 1] else {
            return Some(Element::zero());
        };
        let mut out = Element::zero();
        for (g, a) in u.terms() {
            for (h, b) in v.terms() {
                let val = c.evaluate(&self.algebra, &[g, h]).ok()?;
                out.add_scaled(&val, &(a * b));
            }
        }
        Some(out)
    }

    /// `Σ_{a+b+c=s} μ_a(u_b, v_c)` for `s = 0..=N`; entries past the first
    /// unknown order are `None`.
    fn bracket_series(&self, u: &[Element], v: &[Element]) -> Vec<Option<Element>> {
        let n = self.order();
        let mut out = Vec::with_capacity(n + 1);
        for s in 0..=n {
            let mut acc = Element::zero();
            let mut known = true;
            'outer: for a in 0..=s {
                for b in 0..=s - a {
                    let c = s - a - b;
                    match self.mu(a, &u[b], &v[c]) {
                        Some(x) => acc.add_scaled(&x, &Scalar::one()),
                        None => {
                            known = false;
                            break 'outer;
                        }
                    }
                }
            }
            if !known {
                out.extend(std::iter::repeat(None).take(n + 1 - s));
                break;
            }
            out.push(Some(acc));
        }
        out
    }

    fn pairs(&self) -> Vec<(Gen, Gen)> {
        let gens = self.algebra.gens(&self.window);
        let mut out = Vec::new();
        for (a, &x) in gens.iter().enumerate() {
            for &y in &gens[a + 1..] {
                out.push((x, y));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("deformation\n");
        let _ = writeln!(s, "algebra: {}", self.algebra.name());
        let _ = writeln!(s, "order: {}", self.order());
        let _ = writeln!(s, "window: {}", self.window);
        for (i, layer) in self.layers.iter().enumerate() {
            if let Some(c) = layer {
                let _ = writeln!(s, "layer {}", i + 1);
                s.push_str(&c.to_text_listed());
                s.push_str("end\n");
            }
        }
        s
    }

    /// Parses the format written by [`DeformedBracket::to_text`]: a header
    /// with algebra name, order and window, then `layer s` blocks holding a
    /// cochain document and closed by `end`. Missing layers are zero.
    pub fn parse(alg: &GradedLieAlgebra, text: &str) -> Result<DeformedBracket, DeformError> {
        let perr = |line: usize, msg: &str| DeformError::Parse { line, msg: msg.to_string() };
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let mut it = lines.into_iter().peekable();
        match it.next() {
            Some((_, "deformation")) => {}
            Some((line, _)) => return Err(perr(line, "expected 'deformation'")),
            None => return Err(perr(0, "empty document")),
        }
        let mut header = BTreeMap::new();
        for key in ["algebra", "order", "window"] {
            let (line, l) = it.next().ok_or_else(|| perr(0, "truncated header"))?;
            let (k, v) = l.split_once(':').ok_or_else(|| perr(line, "expected 'key: value'"))?;
            if k.trim() != key {
                return Err(perr(line, &format!("expected header field {key:?}")));
            }
            header.insert(key, (line, v.trim().to_string()));
        }
        let (line, name) = &header["algebra"];
        if name != alg.name() {
            return Err(perr(*line, &format!("document is for algebra {name:?}, not {:?}", alg.name())));
        }
        let (line, ord) = &header["order"];
        let order: usize = ord.parse().map_err(|_| perr(*line, "bad order"))?;
        let (line, win) = &header["window"];
        let window: Window = win.parse().map_err(|_| perr(*line, "bad window"))?;
        let mut layers: Vec<Option<Cochain>> = vec![None; order];
        while let Some((line, l)) = it.next() {
            let s: usize = l
                .strip_prefix("layer ")
                .and_then(|x| x.trim().parse().ok())
                .ok_or_else(|| perr(line, "expected 'layer s'"))?;
            if s == 0 || s > order {
                return Err(perr(line, "layer index out of range"));
            }
            if layers[s - 1].is_some() {
                return Err(perr(line, "duplicate layer"));
            }
            let mut body = String::new();
            let mut closed = false;
            let first = line + 1;
            for (_, l) in it.by_ref() {
                if l == "end" {
                    closed = true;
                    break;
                }
                body.push_str(l);
                body.push('\n');
            }
            if !closed {
                return Err(perr(line, "layer without 'end'"));
            }
            let c = Cochain::parse(alg, &body).map_err(|e| match e {
                CochainError::Parse { line, msg } => perr(first + line - 1, &msg),
                other => perr(first, &other.to_string()),
            })?;
            if c.window() != window || c.degree() != 2 || c.coefficients() != Coefficients::Adjoint {
                return Err(perr(line, "layer must be an adjoint 2-cochain on the document window"));
            }
            layers[s - 1] = Some(c);
        }
        DeformedBracket::new(alg, window, layers)
    }
}

/// First failure of the Jacobi identity at one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderDefect {
    pub order: usize,
    pub triples_checked: usize,
    pub first: Option<((Gen, Gen, Gen), Element)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectReport {
    pub orders: Vec<OrderDefect>,
}

impl DefectReport {
    pub fn is_clean(&self) -> bool {
        self.orders.iter().all(|o| o.first.is_none())
    }

    pub fn first_unclean(&self) -> Option<&OrderDefect> {
        self.orders.iter().find(|o| o.first.is_some())
    }
}

/// The Jacobi identity of `μ_0 + Σ t^s μ_s`, order by order (order 0 is the
/// underlying algebra). Triples that need unknown layer values are skipped.
/// At order 1 the defect at `(x, y, z)` equals `δμ_1(x, y, z)`.
pub fn jacobi_defect(d: &DeformedBracket) -> DefectReport {
    let gens = d.algebra.gens(&d.window);
    let n = d.order();
    let mut orders: Vec<OrderDefect> = (0..=n)
        .map(|order| OrderDefect {
            order,
            triples_checked: 0,
            first: None,
        })
        .collect();
    let zero_series = |x: Gen| {
        let mut v = vec![Element::zero(); n + 1];
        v[0] = Element::basis(x);
        v
    };
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            for c in b + 1..gens.len() {
                let (x, y, z) = (gens[a], gens[b], gens[c]);
                // J_s = Σ_cyc Σ_{p+q=s} μ_p(μ_q(x,y), z)
                let mut total: Vec<Option<Element>> = vec![Some(Element::zero()); n + 1];
                for (p, q, r) in [(x, y, z), (y, z, x), (z, x, y)] {
                    let inner = d.bracket_series(&zero_series(p), &zero_series(q));
                    let zr = zero_series(r);
                    for s in 0..=n {
                        let mut acc = Element::zero();
                        let mut known = true;
                        for p_ord in 0..=s {
                            let Some(iq) = &inner[s - p_ord] else {
                                known = false;
                                break;
                            };
                            match d.mu(p_ord, iq, &zr[0]) {
                                Some(v) => acc.add_scaled(&v, &Scalar::one()),
                                None => {
                                    known = false;
                                    break;
                                }
                            }
                        }
                        total[s] = match (&total[s], known) {
                            (Some(t), true) => Some(t.add(&acc)),
                            _ => None,
                        };
                    }
                }
                for (s, t) in total.into_iter().enumerate() {
                    let Some(t) = t else { continue };
                    let od = &mut orders[s];
                    od.triples_checked += 1;
                    if od.first.is_none() && !t.is_zero() {
                        od.first = Some(((x, y, z), t));
                    }
                }
            }
        }
    }
    DefectReport { orders }
}

#[derive(Debug, Clone)]
pub struct Infinitesimal {
    pub mu1: Cochain,
    pub is_cocycle: bool,
    /// First tuple where `δμ_1` is nonzero.
    pub violation: Option<Tuple>,
    pub components: BTreeMap<i64, Cochain>,
    /// A primitive on the core when `μ_1` is a coboundary there.
    pub primitive: Option<Cochain>,
}

/// The first-order layer with its cocycle verdict and, on the window shrunk
/// by `margin`, a primitive if one exists.
pub fn infinitesimal(d: &DeformedBracket, margin: i64) -> Result<Infinitesimal, DeformError> {
    if d.order() < 1 {
        return Err(DeformError::Config("order must be at least 1".into()));
    }
    let mu1 = d.layer(1);
    let dmu = differential(&d.algebra, &mu1)?.cochain;
    let violation = dmu.entries().next().map(|(t, _)| t.clone());
    let core = d
        .window
        .shrink(margin)
        .ok_or_else(|| DeformError::Boundary(format!("window {} is too small for margin {margin}", d.window)))?;
    let primitive = if violation.is_none() {
        solve_coboundary(&d.algebra, &mu1, &core)?
    } else {
        None
    };
    Ok(Infinitesimal {
        components: weight_components(&mu1),
        is_cocycle: violation.is_none(),
        violation,
        mu1,
        primitive,
    })
}

/// `φ⁻¹ μ(φx, φy)` through order `N`. Tuples needing unknown layer values, or
/// whose value leaves the window, are dropped from the affected layers.
pub fn conjugate(d: &DeformedBracket, e: &Equivalence) -> Result<DeformedBracket, DeformError> {
    if d.order() != e.order() {
        return Err(DeformError::Config(format!(
            "deformation has order {} but the equivalence has order {}",
            d.order(),
            e.order()
        )));
    }
    let n = d.order();
    let inv = e.inverse();
    let mut domains: Vec<BTreeSet<Tuple>> = vec![BTreeSet::new(); n];
    let mut entries: Vec<BTreeMap<Tuple, Element>> = vec![BTreeMap::new(); n];
    for (x, y) in d.pairs() {
        let u = e.apply_series(&Element::basis(x));
        let v = e.apply_series(&Element::basis(y));
        let w = d.bracket_series(&u, &v);
        let known = w.iter().take_while(|s| s.is_some()).count();
        let w: Vec<Element> = w.into_iter().map(Option::unwrap_or_default).collect();
        let r = inv.apply_to(&w);
        for s in 1..=n {
            if s >= known {
                break;
            }
            if r[s].gens().all(|g| d.algebra.contains(g, &d.window)) {
                domains[s - 1].insert(vec![x, y]);
                entries[s - 1].insert(vec![x, y], r[s].clone());
            }
        }
    }
    let layers = (0..n)
        .map(|i| {
            let entries = std::mem::take(&mut entries[i]);
            let weights: BTreeSet<i64> = entries
                .iter()
                .flat_map(|(t, v)| {
                    let deg: i64 = t.iter().map(|g| g.degree()).sum();
                    v.gens().map(move |g| g.degree() - deg)
                })
                .collect();
            let weights = if weights.is_empty() { BTreeSet::from([0]) } else { weights };
            Some(Cochain::from_parts(
                2,
                Coefficients::Adjoint,
                d.window,
                weights,
                std::mem::take(&mut domains[i]),
                entries,
            ))
        })
        .collect();
    Ok(DeformedBracket {
        base: d.base,
        algebra: d.algebra.clone(),
        window: d.window,
        layers,
    })
}

#[derive(Debug, Clone)]
pub enum Trivialization {
    /// Conjugating by `equivalence` makes every layer vanish on `core`.
    Trivialized {
        equivalence: Equivalence,
        conjugated: DeformedBracket,
        core: Window,
        verified: bool,
    },
    /// The layer at `order` is a cocycle on the core without a primitive.
    Obstructed { order: usize, representative: Cochain, core: Window },
}

impl Trivialization {
    pub fn is_trivialized(&self) -> bool {
        matches!(self, Trivialization::Trivialized { verified: true, .. })
    }
}

/// Removes the layers one order at a time. Order `s` is solved on the window
/// shrunk by `s * margin`, since each conjugation spoils the layers near the
/// edge of the region where the previous ones were killed.
pub fn trivialize(d: &DeformedBracket, margin: i64) -> Result<Trivialization, DeformError> {
    if let Some(bad) = jacobi_defect(d).first_unclean() {
        let (triple, _) = bad.first.clone().expect("unclean order has a defect");
        return Err(DeformError::JacobiUnclean { order: bad.order, triple });
    }
    let n = d.order();
    let core_at = |s: usize| {
        d.window
            .shrink(margin * s as i64)
            .ok_or_else(|| DeformError::Boundary(format!("window {} is too small for {s} steps of margin {margin}", d.window)))
    };
    let final_core = core_at(n)?;
    let mut current = d.clone();
    let mut total = Equivalence::identity(n);
    for s in 1..=n {
        let core = core_at(s)?;
        let layer = current.layer(s);
        if layer.restrict(&d.algebra, &core).is_zero() && layer.covers(&d.algebra, &core) {
            continue;
        }
        let Some(b) = solve_coboundary(&d.algebra, &layer, &core)? else {
            return Ok(Trivialization::Obstructed {
                order: s,
                representative: layer.restrict(&d.algebra, &core),
                core,
            });
        };
        let step = Equivalence::single(n, s, LinearMap::from_cochain(&b));
        current = conjugate(&current, &step)?;
        total = total.compose(&step)?;
    }
    let verified = (1..=n).all(|s| {
        let l = current.layer(s);
        l.restrict(&d.algebra, &final_core).is_zero() && l.covers(&d.algebra, &final_core)
    });
    Ok(Trivialization::Trivialized {
        equivalence: total,
        conjugated: current,
        core: final_core,
        verified,
    })
}

/// Whether two deformations agree on every tuple of `core` known to both.
pub fn agree_on(a: &DeformedBracket, b: &DeformedBracket, core: &Window) -> bool {
    a.order() == b.order()
        && (1..=a.order()).all(|s| {
            let (x, y) = (a.layer(s).restrict(&a.algebra, core), b.layer(s).restrict(&b.algebra, core));
            let common: BTreeSet<Tuple> = x.domain().intersection(y.domain()).cloned().collect();
            x.with_domain(&common).sub(&y.with_domain(&common)).map_or(false, |z| z.is_zero())
        })
}

/// Layer `μ_s` restricted to `core` is known everywhere and zero.
pub fn layer_vanishes(d: &DeformedBracket, s: usize, core: &Window) -> bool {
    let l = d.layer(s);
    l.restrict(&d.algebra, core).is_zero() && l.covers(&d.algebra, core)
}

/// Renders a triple for diagnostics.
pub fn render_triple(t: &(Gen, Gen, Gen)) -> String {
    cochain::render_tuple(&[t.0, t.1, t.2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{load_algebra, make_virasoro, make_witt};
    use crate::scalar;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn order_one_defect_is_the_differential() {
        let w = make_witt();
        let win = Window::symmetric(5);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mu1 = Cochain::random(&w, 2, [0, 1], win, Coefficients::Adjoint, &mut rng, 0.5, 3);
        let d = DeformedBracket::new(&w, win, vec![Some(mu1.clone())]).unwrap();
        let rep = jacobi_defect(&d);
        assert!(rep.orders[0].first.is_none());
        let (triple, defect) = rep.orders[1].first.clone().expect("random layer is not a cocycle");
        let dmu = differential(&w, &mu1).unwrap().cochain;
        assert_eq!(dmu.evaluate(&w, &[triple.0, triple.1, triple.2]).unwrap(), defect);
    }

    #[test]
    fn virasoro_over_trivial_base() {
        let d = DeformedBracket::trivial(&make_virasoro(), 0, Window::symmetric(6));
        assert!(jacobi_defect(&d).is_clean());
    }

    #[test]
    fn first_order_conjugation_is_minus_differential() {
        let w = make_witt();
        let win = Window::symmetric(6);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let e = Equivalence::random(&w, 1, win, &[-1, 0, 2], &mut rng, 1.0, 3);
        let d = conjugate(&DeformedBracket::trivial(&w, 1, win), &e).unwrap();
        let b = e.layers[0].to_cochain(&w);
        let db = differential(&w, &b).unwrap().cochain;
        let mu1 = d.layer(1);
        let mut compared = 0;
        for t in mu1.domain() {
            if db.domain().contains(t) {
                assert_eq!(mu1.evaluate(&w, t).unwrap(), db.evaluate(&w, t).unwrap().neg());
                compared += 1;
            }
        }
        assert!(compared > 20);
    }

    #[test]
    fn conjugation_is_a_group_action() {
        let w = make_witt();
        let win = Window::symmetric(7);
        let core = win.shrink(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let phi = Equivalence::random(&w, 2, win, &[-1, 1], &mut rng, 0.8, 2);
        let psi = Equivalence::random(&w, 2, win, &[0, 1], &mut rng, 0.8, 2);
        let d = conjugate(&DeformedBracket::trivial(&w, 2, win), &phi).unwrap();

        let back = conjugate(&d, &phi.inverse()).unwrap();
        assert!((1..=2).all(|s| back.layer(s).restrict(&w, &core).is_zero()));

        let two_steps = conjugate(&conjugate(&d, &phi).unwrap(), &psi).unwrap();
        let one_step = conjugate(&d, &phi.compose(&psi).unwrap()).unwrap();
        assert!(agree_on(&two_steps, &one_step, &core));

        let same = conjugate(&d, &Equivalence::identity(2)).unwrap();
        assert!(agree_on(&same, &d, &win));
        assert!(phi.compose(&phi.inverse()).unwrap().is_identity());
    }

    #[test]
    fn trivializes_random_conjugate() {
        let w = make_witt();
        let win = Window::symmetric(10);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let phi = Equivalence::random(&w, 2, win, &[-1, 0, 1], &mut rng, 0.7, 2);
        let d = conjugate(&DeformedBracket::trivial(&w, 2, win), &phi).unwrap();
        let out = trivialize(&d, 2).unwrap();
        assert!(out.is_trivialized(), "{out:?}");
    }

    #[test]
    fn rejects_non_cocycle() {
        let w = make_witt();
        let win = Window::symmetric(6);
        let mut mu1 = Cochain::homogeneous(&w, 2, 0, win, Coefficients::Adjoint);
        mu1.set_scalar(&w, &[Gen::Indexed(1), Gen::Indexed(2)], scalar::int(1)).unwrap();
        let d = DeformedBracket::new(&w, win, vec![Some(mu1)]).unwrap();
        assert!(matches!(trivialize(&d, 2), Err(DeformError::JacobiUnclean { order: 1, .. })));
        let inf = infinitesimal(&d, 2).unwrap();
        assert!(!inf.is_cocycle);
    }

    #[test]
    fn abelian_plane_is_obstructed() {
        let alg = load_algebra("name: abelian2\ngraded: true\ncentral: false\nbasis: 0 1\n").unwrap();
        let win = alg.natural_window().unwrap();
        let mut mu1 = Cochain::homogeneous(&alg, 2, 0, win, Coefficients::Adjoint);
        mu1.set_scalar(&alg, &[Gen::Indexed(0), Gen::Indexed(1)], scalar::int(1)).unwrap();
        let d = DeformedBracket::new(&alg, win, vec![Some(mu1)]).unwrap();
        assert!(jacobi_defect(&d).is_clean());
        match trivialize(&d, 0).unwrap() {
            Trivialization::Obstructed { order, representative, .. } => {
                assert_eq!(order, 1);
                assert_eq!(representative.nnz(), 1);
            }
            other => panic!("expected an obstruction, got {other:?}"),
        }
    }

    #[test]
    fn text_round_trip() {
        let w = make_witt();
        let win = Window::symmetric(4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mu2 = Cochain::random(&w, 2, [1], win, Coefficients::Adjoint, &mut rng, 0.3, 3);
        let d = DeformedBracket::new(&w, win, vec![None, Some(mu2)]).unwrap();
        let back = DeformedBracket::parse(&w, &d.to_text()).unwrap();
        assert_eq!(back.layers, d.layers);
        assert!(DeformedBracket::parse(&make_virasoro(), &d.to_text()).is_err());

        let phi = Equivalence::random(&w, 2, win, &[-1, 1], &mut rng, 0.5, 2);
        let c = conjugate(&DeformedBracket::trivial(&w, 2, win), &phi).unwrap();
        let back = DeformedBracket::parse(&w, &c.to_text()).unwrap();
        assert_eq!(back.layers, c.layers);
    }
}
