//! Windowed cohomology `H^q_d` and the constructive steps of the rigidity
//! argument: killing every nonzero weight, then normalizing weight 0.
//!
//! Cocycles are computed on the whole window from the interior equations.
//! A class survives only if its restriction to the core (the window shrunk by
//! the margin) is not the restriction of a coboundary. Coboundaries are
//! generated by cochains on the window widened by `|d|`, which covers every
//! value a core coordinate of `δb` depends on; their core restrictions are
//! therefore exact, and only cocycles carry truncation effects.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cochain::{
    self, differential, differential_matrix, Cochain, CochainBasis, CochainError, Coefficients, Tuple,
};
use crate::lie::{make_witt, Element, Gen, GradedLieAlgebra};
use crate::linalg::{rank_of_vectors, to_sparse, Echelon, SparseMatrix, SparseRow};
use crate::scalar::{self, Scalar};
use crate::window::Window;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("not a cocycle: δc is nonzero at {}", cochain::render_tuple(.0))]
    NotCocycle(Tuple),
    #[error("window too small to determine b_{0}")]
    Boundary(i64),
    #[error("expected weight 0, found weight {0}")]
    NotWeightZero(i64),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub algebra: String,
    pub degree: usize,
    pub weight: i64,
    pub coefficients: Coefficients,
    pub window: Window,
    pub margin: i64,
    pub core: Window,
    /// Dimension of the interior cocycle space on the whole window.
    pub kernel_dim: usize,
    /// Rank of cocycles plus coboundaries restricted to the core.
    pub dim_cocycles: usize,
    /// Rank of coboundaries restricted to the core.
    pub dim_coboundaries: usize,
    pub dim_stable: usize,
    pub omitted_tuples: usize,
    #[serde(skip)]
    pub representatives: Vec<Cochain>,
    pub stabilization: Vec<(Window, usize)>,
}

fn core_of(alg: &GradedLieAlgebra, window: &Window, margin: i64) -> Result<Window, CohomologyError> {
    if margin < 0 {
        return Err(CohomologyError::Config("margin must be nonnegative".into()));
    }
    if margin < 2 && !alg.is_finite() {
        return Err(CohomologyError::Config(format!("margin {margin} is below the minimum of 2")));
    }
    window
        .shrink(margin)
        .ok_or_else(|| CohomologyError::Config(format!("window {window} is too small for margin {margin}")))
}

fn widen(w: &Window, by: i64) -> Window {
    Window { lo: w.lo - by, hi: w.hi + by }
}

fn is_core_item(alg: &GradedLieAlgebra, core: &Window, coeffs: Coefficients, tuple: &[Gen], g: Gen) -> bool {
    tuple.iter().all(|x| alg.contains(*x, core)) && (coeffs == Coefficients::Trivial || alg.contains(g, core))
}

/// Coordinates of `basis` lying in the core, in basis order.
fn core_coordinates(alg: &GradedLieAlgebra, basis: &CochainBasis, core: &Window) -> Vec<usize> {
    basis
        .items
        .iter()
        .enumerate()
        .filter(|(_, (t, g))| is_core_item(alg, core, basis.coefficients, t, *g))
        .map(|(i, _)| i)
        .collect()
}

fn restrict_vector(v: &[Scalar], coords: &[usize]) -> SparseRow {
    coords
        .iter()
        .enumerate()
        .filter(|(_, &i)| !v[i].is_zero())
        .map(|(k, &i)| (k, v[i].clone()))
        .collect()
}

/// Core restrictions of `δb` for `b` ranging over a basis of weight-`d`
/// `(q-1)`-cochains on the widened window. Indexed by position in `coords`.
fn coboundary_core_vectors(
    alg: &GradedLieAlgebra,
    target: &CochainBasis,
    coords: &[usize],
    d: i64,
) -> Result<Vec<SparseRow>, CohomologyError> {
    if target.degree == 0 {
        return Ok(Vec::new());
    }
    let wide = widen(&target.window, d.abs());
    let source = CochainBasis::new(alg, target.degree - 1, [d], wide, target.coefficients);
    let dm = differential_matrix(alg, &source);
    let mut row_of = BTreeMap::new();
    for (r, key) in dm.rows.iter().enumerate() {
        row_of.insert(key.clone(), r);
    }
    let mut columns: Vec<SparseRow> = vec![SparseRow::new(); source.dim()];
    for (k, &i) in coords.iter().enumerate() {
        let key = &target.items[i];
        match row_of.get(key) {
            Some(&r) => {
                for (col, v) in dm.matrix.row(r) {
                    columns[*col].insert(k, v.clone());
                }
            }
            None => {
                // A core coordinate whose coboundary stencil left the widened
                // window would make the core comparison meaningless.
                if !dm_output_is_zero(alg, &source, key) {
                    return Err(CohomologyError::Config(format!(
                        "coboundary at {} is not computable; increase the window",
                        cochain::render_tuple(&key.0)
                    )));
                }
            }
        }
    }
    Ok(columns.into_iter().filter(|c| !c.is_empty()).collect())
}

/// Whether `key` is absent from the δ-matrix rows because every coboundary
/// vanishes there (as opposed to being omitted at the boundary).
fn dm_output_is_zero(alg: &GradedLieAlgebra, source: &CochainBasis, key: &(Tuple, Gen)) -> bool {
    let terms = cochain::stencil(alg, source.coefficients, &key.0);
    terms.iter().all(|t| t.coef.is_zero() || source.domain.contains(&t.input))
}

/// Vectors in `candidates` (with their indices) that are independent modulo
/// `base`, chosen greedily in order.
fn independent_modulo(n: usize, base: &[SparseRow], candidates: &[SparseRow]) -> Vec<usize> {
    let mut rows: Vec<SparseRow> = base.to_vec();
    let mut chosen = Vec::new();
    let mut echelon = Echelon::reduce(&SparseMatrix::from_rows(n, rows.clone()), None);
    for (i, v) in candidates.iter().enumerate() {
        if !echelon.reduce_vector(v).is_empty() {
            chosen.push(i);
            rows.push(v.clone());
            echelon = Echelon::reduce(&SparseMatrix::from_rows(n, rows.clone()), None);
        }
    }
    chosen
}

/// Scales `c` so that its first nonzero value on a core coordinate (basis
/// order) is 1.
fn normalize_on_core(basis: &CochainBasis, coords: &[usize], v: &[Scalar]) -> Cochain {
    let lead = coords.iter().map(|&i| &v[i]).find(|x| !x.is_zero()).cloned().unwrap_or_else(Scalar::one);
    let inv = lead.recip();
    let scaled: Vec<Scalar> = v.iter().map(|x| x * &inv).collect();
    basis.from_vector(&scaled)
}

/// A basis of the interior cocycles of weight `d` on the window.
pub fn cocycle_basis(
    alg: &GradedLieAlgebra,
    q: usize,
    d: i64,
    window: Window,
    coeffs: Coefficients,
) -> Result<Vec<Cochain>, CohomologyError> {
    if q > 2 {
        return Err(CochainError::UnsupportedDegree(q).into());
    }
    let basis = CochainBasis::new(alg, q, [d], window, coeffs);
    let dm = differential_matrix(alg, &basis);
    Ok(dm.matrix.kernel_basis().iter().map(|v| basis.from_vector(v)).collect())
}

pub fn cohomology_dim(alg: &GradedLieAlgebra, q: usize, d: i64, window: Window, margin: i64) -> Result<CohomologyReport, CohomologyError> {
    cohomology_dim_with(alg, q, d, window, margin, Coefficients::Adjoint)
}

pub fn cohomology_dim_with(
    alg: &GradedLieAlgebra,
    q: usize,
    d: i64,
    window: Window,
    margin: i64,
    coeffs: Coefficients,
) -> Result<CohomologyReport, CohomologyError> {
    if q > 2 {
        return Err(CochainError::UnsupportedDegree(q).into());
    }
    let core = core_of(alg, &window, margin)?;
    let basis = CochainBasis::new(alg, q, [d], window, coeffs);
    let dm = differential_matrix(alg, &basis);
    let kernel = dm.matrix.kernel_basis();
    let coords = core_coordinates(alg, &basis, &core);
    let z_core: Vec<SparseRow> = kernel.iter().map(|v| restrict_vector(v, &coords)).collect();
    let b_core = coboundary_core_vectors(alg, &basis, &coords, d)?;
    let n = coords.len();
    let dim_coboundaries = rank_of_vectors(n, &b_core);
    let mut all = b_core.clone();
    all.extend(z_core.iter().cloned());
    let dim_cocycles = rank_of_vectors(n, &all);
    let dim_stable = dim_cocycles - dim_coboundaries;
    let representatives = if dim_stable == 0 {
        Vec::new()
    } else {
        independent_modulo(n, &b_core, &z_core)
            .into_iter()
            .map(|i| normalize_on_core(&basis, &coords, &kernel[i]))
            .collect()
    };
    Ok(CohomologyReport {
        algebra: alg.name().to_string(),
        degree: q,
        weight: d,
        coefficients: coeffs,
        window,
        margin,
        core,
        kernel_dim: kernel.len(),
        dim_cocycles,
        dim_coboundaries,
        dim_stable,
        omitted_tuples: dm.omitted,
        representatives,
        stabilization: vec![(window, dim_stable)],
    })
}

/// `dim_stable` on each of `windows` with a fixed margin.
pub fn stabilization_series(
    alg: &GradedLieAlgebra,
    q: usize,
    d: i64,
    windows: &[Window],
    margin: i64,
    coeffs: Coefficients,
) -> Result<Vec<(Window, usize)>, CohomologyError> {
    windows
        .iter()
        .map(|w| cohomology_dim_with(alg, q, d, *w, margin, coeffs).map(|r| (*w, r.dim_stable)))
        .collect()
}

/// Weight-0 second cohomology of the Witt algebra with trivial coefficients.
/// Representatives are normalized by [`normalize_central_representative`].
pub fn central_extension_dim(window: Window, margin: i64) -> Result<CohomologyReport, CohomologyError> {
    let witt = make_witt();
    let mut report = cohomology_dim_with(&witt, 2, 0, window, margin, Coefficients::Trivial)?;
    report.representatives = report
        .representatives
        .iter()
        .map(|r| normalize_central_representative(&witt, r))
        .collect::<Result<_, _>>()?;
    Ok(report)
}

/// Removes the coboundary direction `(m - n) δ_{n,-m}` so that the value at
/// `(e_{-1}, e_1)` vanishes, then scales the value at `(e_{-2}, e_2)` to 1.
pub fn normalize_central_representative(alg: &GradedLieAlgebra, r: &Cochain) -> Result<Cochain, CohomologyError> {
    let at = |c: &Cochain, n: i64| -> Result<Scalar, CohomologyError> {
        Ok(c.evaluate(alg, &[Gen::Indexed(-n), Gen::Indexed(n)])?.coeff(Gen::Central))
    };
    let coboundary = Cochain::from_fn(alg, 2, [0], r.window(), Coefficients::Trivial, |t| {
        let (n, m) = (t[0].degree(), t[1].degree());
        if n + m == 0 {
            Element::term(Gen::Central, scalar::int(m - n))
        } else {
            Element::zero()
        }
    })?;
    let lambda = at(r, 1)? / scalar::int(2);
    let shifted = r.add_scaled(&coboundary, &-lambda)?;
    let lead = at(&shifted, 2)?;
    if lead.is_zero() {
        return Ok(shifted);
    }
    Ok(shifted.scaled(&lead.recip()))
}

/// The first tuple at which `δc` is nonzero.
pub fn cocycle_violation(alg: &GradedLieAlgebra, c: &Cochain) -> Result<Option<Tuple>, CohomologyError> {
    let dc = differential(alg, c)?.cochain;
    let first = dc.entries().next().map(|(t, _)| t.clone());
    Ok(first)
}

fn require_cocycle(alg: &GradedLieAlgebra, c: &Cochain) -> Result<(), CohomologyError> {
    match cocycle_violation(alg, c)? {
        Some(t) => Err(CohomologyError::NotCocycle(t)),
        None => Ok(()),
    }
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub b: Cochain,
    pub residual: Cochain,
}

/// Kills every nonzero weight of a 2-cocycle with
/// `b(e_i) = Σ_{d≠0} c_{i,0;d}/d · e_{i+d}`, returning `b` and `c - δb`.
pub fn reduce_to_weight_zero(alg: &GradedLieAlgebra, c: &Cochain) -> Result<Reduction, CohomologyError> {
    if c.degree() != 2 || c.coefficients() != Coefficients::Adjoint {
        return Err(CohomologyError::Config("expected an adjoint 2-cochain".into()));
    }
    require_cocycle(alg, c)?;
    let nonzero: BTreeSet<i64> = c.weights().iter().copied().filter(|d| *d != 0).collect();
    let mut b = Cochain::zero(alg, 1, nonzero.iter().copied(), c.window(), Coefficients::Adjoint);
    let e0 = Gen::Indexed(0);
    let known: Vec<Tuple> = b.domain().iter().cloned().collect();
    for t in known {
        let x = t[0];
        if x == e0 {
            continue;
        }
        let Ok(v) = c.evaluate(alg, &[x, e0]) else { continue };
        let mut bv = Element::zero();
        for (g, s) in v.terms() {
            let d = g.degree() - x.degree();
            if d != 0 {
                bv.add_term(g, &(s / scalar::int(d)));
            }
        }
        b.set(alg, &t, bv)?;
    }
    let db = differential(alg, &b)?.cochain;
    let residual = c.with_weights(nonzero.iter().copied()).sub(&db)?;
    Ok(Reduction { b, residual })
}

#[derive(Debug, Clone)]
pub struct Normalization {
    pub b: Cochain,
    pub c_norm: Cochain,
}

/// Subtracts the unique diagonal coboundary with `b_1 = 0` that makes
/// `c(e_i, e_1) = 0` for all `i` and `c(e_{-2}, e_2) = 0`.
pub fn normalize_weight_zero(alg: &GradedLieAlgebra, c: &Cochain) -> Result<Normalization, CohomologyError> {
    if c.degree() != 2 || c.coefficients() != Coefficients::Adjoint {
        return Err(CohomologyError::Config("expected an adjoint 2-cochain".into()));
    }
    if let Some(d) = c.weights().iter().find(|d| **d != 0) {
        if c.occurring_weights().contains(d) {
            return Err(CohomologyError::NotWeightZero(*d));
        }
    }
    require_cocycle(alg, c)?;
    let w = c.window();
    if !(w.contains(-2) && w.contains(2)) {
        return Err(CohomologyError::Boundary(if w.contains(-2) { 2 } else { -2 }));
    }
    let e = Gen::Indexed;
    // c_{i,1}: coefficient of e_{i+1} in c(e_i, e_1)
    let col1 = |i: i64, needed_for: i64| -> Result<Scalar, CohomologyError> {
        c.evaluate(alg, &[e(i), e(1)])
            .map(|v| v.coeff(e(i + 1)))
            .map_err(|_| CohomologyError::Boundary(needed_for))
    };
    let mut bv: BTreeMap<i64, Scalar> = BTreeMap::new();
    bv.insert(1, Scalar::zero());
    bv.insert(0, -col1(0, 0)?);
    for i in (w.lo..0).rev() {
        let next = bv[&(i + 1)].clone();
        bv.insert(i, next - col1(i, i)? / scalar::int(1 - i));
    }
    let c22 = c
        .evaluate(alg, &[e(-2), e(2)])
        .map(|v| v.coeff(e(0)))
        .map_err(|_| CohomologyError::Boundary(2))?;
    bv.insert(2, &bv[&0] - &bv[&-2] - c22 / scalar::int(4));
    for i in 2..w.hi {
        let cur = bv[&i].clone();
        bv.insert(i + 1, cur + col1(i, i + 1)? / scalar::int(1 - i));
    }
    let b = Cochain::from_fn(alg, 1, [0], w, Coefficients::Adjoint, |t| {
        Element::term(t[0], bv.get(&t[0].degree()).cloned().unwrap_or_default())
    })?;
    let db = differential(alg, &b)?.cochain;
    let c_norm = c.sub(&db)?;
    Ok(Normalization { b, c_norm })
}

/// Whether `c` satisfies the normalization conditions on all known tuples.
pub fn is_normalized(alg: &GradedLieAlgebra, c: &Cochain) -> bool {
    let e = Gen::Indexed;
    c.window().indices().all(|i| match c.evaluate(alg, &[e(i), e(1)]) {
        Ok(v) => v.is_zero(),
        Err(_) => true,
    }) && c.evaluate(alg, &[e(-2), e(2)]).map_or(true, |v| v.is_zero())
}

/// Dimension, restricted to the core, of the weight-0 interior cocycles that
/// also satisfy the normalization conditions, computed by a direct kernel.
pub fn normalized_cocycle_dim(alg: &GradedLieAlgebra, window: Window, margin: i64) -> Result<usize, CohomologyError> {
    let core = core_of(alg, &window, margin)?;
    let basis = CochainBasis::new(alg, 2, [0], window, Coefficients::Adjoint);
    let mut m = differential_matrix(alg, &basis).matrix;
    let e = Gen::Indexed;
    let mut pin = |t: Tuple, g: Gen| {
        let mut t = t;
        if cochain::canonicalize(&mut t).is_some() {
            if let Some(i) = basis.position(&t, g) {
                m.push_row(SparseRow::from([(i, scalar::one())]));
            }
        }
    };
    for i in window.indices() {
        pin(vec![e(i), e(1)], e(i + 1));
    }
    pin(vec![e(-2), e(2)], e(0));
    let coords = core_coordinates(alg, &basis, &core);
    let z: Vec<SparseRow> = m.kernel_basis().iter().map(|v| restrict_vector(v, &coords)).collect();
    Ok(rank_of_vectors(coords.len(), &z))
}

/// Solves `δb = c` on the core, weight by weight, with `b` on the window
/// widened by the largest weight. Returns `None` when no primitive exists.
pub fn solve_coboundary(alg: &GradedLieAlgebra, c: &Cochain, core: &Window) -> Result<Option<Cochain>, CohomologyError> {
    if c.degree() == 0 {
        return Err(CohomologyError::Config("a 0-cochain has no primitive".into()));
    }
    let coeffs = c.coefficients();
    let reach = c.weights().iter().map(|d| d.abs()).max().unwrap_or(0);
    let wide = widen(&c.window(), reach);
    let mut b = Cochain::zero(alg, c.degree() - 1, c.weights().iter().copied(), wide, coeffs);
    let comps = cochain::weight_components(c);
    let target_basis_window = c.window();
    for &d in c.weights() {
        let target = CochainBasis::new(alg, c.degree(), [d], target_basis_window, coeffs);
        let coords = core_coordinates(alg, &target, core);
        let mut rhs = Vec::with_capacity(coords.len());
        for &i in &coords {
            let (t, g) = &target.items[i];
            if !c.domain().contains(t) {
                return Err(CohomologyError::Config(format!("cochain is unknown at core tuple {}", cochain::render_tuple(t))));
            }
            rhs.push(comps.get(&d).map_or_else(Scalar::zero, |comp| comp.get(t).map_or_else(Scalar::zero, |v| v.coeff(*g))));
        }
        if rhs.iter().all(Scalar::is_zero) {
            continue;
        }
        let source = CochainBasis::new(alg, c.degree() - 1, [d], widen(&target_basis_window, d.abs()), coeffs);
        let dm = differential_matrix(alg, &source);
        let row_of: BTreeMap<&(Tuple, Gen), usize> = dm.rows.iter().enumerate().map(|(r, k)| (k, r)).collect();
        let mut rows = Vec::with_capacity(coords.len());
        for &i in &coords {
            let key = &target.items[i];
            rows.push(row_of.get(key).map_or_else(SparseRow::new, |&r| dm.matrix.row(r).clone()));
        }
        let m = SparseMatrix::from_rows(source.dim(), rows);
        let Some(x) = m.solve_affine(&rhs) else { return Ok(None) };
        for (t, v) in source.from_vector(&x).entries() {
            let cur = b.evaluate(alg, t).unwrap_or_default();
            b.set(alg, t, cur.add(v))?;
        }
    }
    Ok(Some(b))
}

/// Sparse coordinates of a single-weight cochain in `basis`.
pub fn coordinates(basis: &CochainBasis, c: &Cochain) -> SparseRow {
    to_sparse(&basis.to_vector(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{make_virasoro, make_witt};
    use crate::scalar::int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn center_and_derivations() {
        let w = make_witt();
        let r = cohomology_dim(&w, 0, 0, Window::symmetric(8), 2).unwrap();
        assert_eq!((r.kernel_dim, r.dim_stable), (0, 0));
        let v = make_virasoro();
        let r = cohomology_dim(&v, 0, 0, Window::symmetric(8), 2).unwrap();
        assert_eq!(r.dim_stable, 1, "the central element spans the center");
        // all derivations of Witt are inner
        for d in [-2, 0, 3] {
            assert_eq!(cohomology_dim(&w, 1, d, Window::symmetric(8), 2).unwrap().dim_stable, 0);
        }
    }

    #[test]
    fn small_window_rigidity() {
        let w = make_witt();
        for d in [-1, 0, 2] {
            let r = cohomology_dim(&w, 2, d, Window::symmetric(8), 3).unwrap();
            assert_eq!(r.dim_stable, 0, "d = {d}: {r:?}");
            assert!(r.dim_coboundaries <= r.dim_cocycles);
        }
    }

    #[test]
    fn configuration_errors() {
        let w = make_witt();
        assert!(matches!(cohomology_dim(&w, 2, 0, Window::symmetric(3), 4), Err(CohomologyError::Config(_))));
        assert!(matches!(cohomology_dim(&w, 2, 0, Window::symmetric(8), 1), Err(CohomologyError::Config(_))));
        assert!(cohomology_dim(&w, 3, 0, Window::symmetric(8), 2).is_err());
    }

    #[test]
    fn central_extension_is_cubic() {
        let r = central_extension_dim(Window::symmetric(10), 3).unwrap();
        assert_eq!(r.dim_stable, 1);
        let w = make_witt();
        let rep = &r.representatives[0];
        for n in -7..=7i64 {
            let v = rep.evaluate(&w, &[Gen::Indexed(-n), Gen::Indexed(n)]).unwrap().coeff(Gen::Central);
            assert_eq!(v, scalar::ratio(n * n * n - n, 6), "n = {n}");
        }
        let r1 = cohomology_dim_with(&w, 2, 1, Window::symmetric(10), 3, Coefficients::Trivial).unwrap();
        assert_eq!(r1.dim_stable, 0);
    }

    fn random_combination(basis: &[Cochain], rng: &mut impl Rng) -> Cochain {
        let mut c = basis[0].scaled(&Scalar::zero());
        for b in basis {
            c = c.add_scaled(b, &int(rng.gen_range(-3..=3))).unwrap();
        }
        c
    }

    #[test]
    fn normalization_kills_diagonal_coboundaries() {
        let w = make_witt();
        let win = Window::symmetric(8);
        let b0 = Cochain::from_fn(&w, 1, [0], win, Coefficients::Adjoint, |t| {
            let i = t[0].degree();
            Element::term(t[0], if i == 1 { Scalar::zero() } else { int(i * i - 2 * i + 5) })
        })
        .unwrap();
        let c = differential(&w, &b0).unwrap().cochain;
        let n = normalize_weight_zero(&w, &c).unwrap();
        assert!(n.c_norm.is_zero());
        assert_eq!(n.b.entries().collect::<Vec<_>>(), b0.entries().collect::<Vec<_>>());
    }

    #[test]
    fn normalization_of_random_cocycles() {
        let w = make_witt();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let basis = cocycle_basis(&w, 2, 0, Window::symmetric(8), Coefficients::Adjoint).unwrap();
        for _ in 0..5 {
            let c = random_combination(&basis, &mut rng);
            let n = normalize_weight_zero(&w, &c).unwrap();
            assert!(is_normalized(&w, &n.c_norm));
            let again = normalize_weight_zero(&w, &n.c_norm).unwrap();
            assert!(again.b.is_zero());
            assert_eq!(again.c_norm.entries().collect::<Vec<_>>(), n.c_norm.entries().collect::<Vec<_>>());
        }
    }

    #[test]
    fn normalization_rejects_bad_input() {
        let w = make_witt();
        let mut c = Cochain::homogeneous(&w, 2, 0, Window::symmetric(6), Coefficients::Adjoint);
        c.set_scalar(&w, &[Gen::Indexed(2), Gen::Indexed(3)], int(1)).unwrap();
        assert!(matches!(normalize_weight_zero(&w, &c), Err(CohomologyError::NotCocycle(_))));
        let tiny = Cochain::homogeneous(&w, 2, 0, Window::new(-1, 4).unwrap(), Coefficients::Adjoint);
        assert!(matches!(normalize_weight_zero(&w, &tiny), Err(CohomologyError::Boundary(-2))));
    }

    #[test]
    fn weight_reduction_of_coboundary() {
        let w = make_witt();
        let win = Window::symmetric(10);
        let core = win.shrink(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in [-2, 1, 3] {
            let b0 = Cochain::random(&w, 1, [d], win, Coefficients::Adjoint, &mut rng, 1.0, 4);
            let c = differential(&w, &b0).unwrap().cochain;
            let red = reduce_to_weight_zero(&w, &c).unwrap();
            let res = red.residual.restrict(&w, &core);
            assert!(res.is_zero(), "d = {d}");
            assert!(res.covers(&w, &core));
        }
        let pure = cocycle_basis(&w, 2, 0, Window::symmetric(6), Coefficients::Adjoint).unwrap().remove(0);
        let red = reduce_to_weight_zero(&w, &pure).unwrap();
        assert!(red.b.is_zero());
        assert_eq!(red.residual.entries().collect::<Vec<_>>(), pure.entries().collect::<Vec<_>>());
    }

    #[test]
    fn primitives_exist_for_coboundaries() {
        let w = make_witt();
        let win = Window::symmetric(8);
        let core = win.shrink(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let b0 = Cochain::random(&w, 1, [-1, 0, 2], win, Coefficients::Adjoint, &mut rng, 1.0, 3);
        let c = differential(&w, &b0).unwrap().cochain;
        let b = solve_coboundary(&w, &c, &core).unwrap().unwrap();
        let db = differential(&w, &b).unwrap().cochain;
        let diff = db.sub(&c).unwrap().restrict(&w, &core);
        assert!(diff.is_zero());
        assert!(diff.covers(&w, &core));
    }
}
