//! Z-graded Lie algebras given by structure constants.
//!
//! The Witt algebra has basis `e_n` (`n` in Z) with `[e_n, e_m] = (m - n) e_{n+m}`.
//! Its central extension, the Virasoro algebra, adds a central generator `c`
//! and the term `(m^3 - m)/12 * delta_{n,-m} c`. Brackets are evaluated
//! lazily from the rule, so windows of any size cost nothing up front.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::scalar::{self, Scalar};
use crate::window::Window;

/// A basis vector: either `e_n` or the central generator. Central sorts after
/// every indexed generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gen {
    Indexed(i64),
    Central,
}

impl Gen {
    pub fn degree(self) -> i64 {
        match self {
            Gen::Indexed(n) => n,
            Gen::Central => 0,
        }
    }

    pub fn index(self) -> Option<i64> {
        match self {
            Gen::Indexed(n) => Some(n),
            Gen::Central => None,
        }
    }

    /// `n` for `e_n`, `c` for the central generator.
    pub fn label(self) -> String {
        match self {
            Gen::Indexed(n) => n.to_string(),
            Gen::Central => "c".to_string(),
        }
    }

    pub fn parse_label(s: &str) -> Option<Gen> {
        match s {
            "c" => Some(Gen::Central),
            _ => s.parse().ok().map(Gen::Indexed),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Indexed(n) => write!(f, "e_{n}"),
            Gen::Central => write!(f, "c"),
        }
    }
}

/// A finite linear combination of generators.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Element {
    terms: BTreeMap<Gen, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(g: Gen) -> Self {
        Element::term(g, scalar::one())
    }

    pub fn term(g: Gen, s: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(g, &s);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: Gen) -> Scalar {
        self.terms.get(&g).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Gen, &Scalar)> {
        self.terms.iter().map(|(g, s)| (*g, s))
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, g: Gen, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        let entry = self.terms.entry(g).or_insert_with(Scalar::zero);
        *entry += s;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &Element, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (g, v) in &other.terms {
            self.add_term(*g, &(v * s));
        }
    }

    pub fn scaled(&self, s: &Scalar) -> Element {
        let mut e = Element::zero();
        e.add_scaled(self, s);
        e
    }

    pub fn neg(&self) -> Element {
        self.scaled(&scalar::int(-1))
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(other, &scalar::int(-1));
        e
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(other, &scalar::one());
        e
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(g, s)| format!("{}*{}", scalar::render(s), g)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub type BracketFn = Arc<dyn Fn(Gen, Gen) -> Element + Send + Sync>;

#[derive(Clone)]
enum BracketRule {
    Witt,
    Virasoro,
    /// Entries keyed by `(x, y)` with `x < y`.
    Table(HashMap<(Gen, Gen), Element>),
    Custom(BracketFn),
}

#[derive(Clone)]
pub struct GradedLieAlgebra {
    name: String,
    has_central: bool,
    graded: bool,
    /// Indices that exist; `None` means every integer.
    basis: Option<BTreeSet<i64>>,
    rule: BracketRule,
}

impl fmt::Debug for GradedLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedLieAlgebra")
            .field("name", &self.name)
            .field("has_central", &self.has_central)
            .field("graded", &self.graded)
            .field("basis", &self.basis)
            .finish()
    }
}

pub fn make_witt() -> GradedLieAlgebra {
    GradedLieAlgebra {
        name: "witt".into(),
        has_central: false,
        graded: true,
        basis: None,
        rule: BracketRule::Witt,
    }
}

pub fn make_virasoro() -> GradedLieAlgebra {
    GradedLieAlgebra {
        name: "virasoro".into(),
        has_central: true,
        graded: true,
        basis: None,
        rule: BracketRule::Virasoro,
    }
}

fn witt_bracket(n: i64, m: i64) -> Element {
    Element::term(Gen::Indexed(n + m), scalar::int(m - n))
}

impl GradedLieAlgebra {
    /// An algebra from an arbitrary rule. The rule is trusted; use
    /// [`check_jacobi`] and [`GradedLieAlgebra::axiom_violations`] to audit it.
    pub fn from_fn(name: &str, has_central: bool, basis: Option<BTreeSet<i64>>, rule: BracketFn) -> Self {
        GradedLieAlgebra {
            name: name.into(),
            has_central,
            graded: true,
            basis,
            rule: BracketRule::Custom(rule),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn has_central(&self) -> bool {
        self.has_central
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn basis(&self) -> Option<&BTreeSet<i64>> {
        self.basis.as_ref()
    }

    pub fn is_finite(&self) -> bool {
        self.basis.is_some()
    }

    /// The smallest window holding every basis index, for finite algebras.
    pub fn natural_window(&self) -> Option<Window> {
        let b = self.basis.as_ref()?;
        Some(Window {
            lo: *b.first()?,
            hi: *b.last()?,
        })
    }

    pub fn has_index(&self, n: i64) -> bool {
        self.basis.as_ref().map_or(true, |b| b.contains(&n))
    }

    /// Whether `g` is a generator living on `window`.
    pub fn contains(&self, g: Gen, window: &Window) -> bool {
        match g {
            Gen::Indexed(n) => window.contains(n) && self.has_index(n),
            Gen::Central => self.has_central,
        }
    }

    /// Canonical basis enumeration: indexed generators ascending, then central.
    pub fn gens(&self, window: &Window) -> Vec<Gen> {
        let mut out: Vec<Gen> = window.indices().filter(|&n| self.has_index(n)).map(Gen::Indexed).collect();
        if self.has_central {
            out.push(Gen::Central);
        }
        out
    }

    pub fn bracket(&self, x: Gen, y: Gen) -> Element {
        match &self.rule {
            BracketRule::Witt => match (x, y) {
                (Gen::Indexed(n), Gen::Indexed(m)) => witt_bracket(n, m),
                _ => Element::zero(),
            },
            BracketRule::Virasoro => match (x, y) {
                (Gen::Indexed(n), Gen::Indexed(m)) => {
                    let mut e = witt_bracket(n, m);
                    if n == -m {
                        e.add_term(Gen::Central, &scalar::ratio(m * m * m - m, 12));
                    }
                    e
                }
                _ => Element::zero(),
            },
            BracketRule::Table(t) => {
                if x == y {
                    Element::zero()
                } else if x < y {
                    t.get(&(x, y)).cloned().unwrap_or_default()
                } else {
                    t.get(&(y, x)).map(Element::neg).unwrap_or_default()
                }
            }
            BracketRule::Custom(f) => f(x, y),
        }
    }

    pub fn bracket_elements(&self, u: &Element, v: &Element) -> Element {
        let mut out = Element::zero();
        for (x, a) in u.terms() {
            for (y, b) in v.terms() {
                out.add_scaled(&self.bracket(x, y), &(a * b));
            }
        }
        out
    }

    /// `[x, v]` for a generator `x`.
    pub fn ad(&self, x: Gen, v: &Element) -> Element {
        let mut out = Element::zero();
        for (y, b) in v.terms() {
            out.add_scaled(&self.bracket(x, y), b);
        }
        out
    }

    /// Antisymmetry and (for graded algebras) grading violations on the window.
    pub fn axiom_violations(&self, window: &Window) -> Vec<String> {
        let gens = self.gens(window);
        let mut out = Vec::new();
        for &x in &gens {
            for &y in &gens {
                let xy = self.bracket(x, y);
                if !xy.add(&self.bracket(y, x)).is_zero() {
                    out.push(format!("antisymmetry fails at ({x}, {y})"));
                }
                if self.graded {
                    for g in xy.gens() {
                        let ok = match g {
                            Gen::Central => x.degree() + y.degree() == 0 && x != Gen::Central && y != Gen::Central,
                            Gen::Indexed(k) => k == x.degree() + y.degree(),
                        };
                        if !ok {
                            out.push(format!("grading fails at ({x}, {y}): term {g}"));
                        }
                    }
                }
            }
        }
        out
    }

    /// Serializes the brackets of all basis pairs `i < j` with `i, j` in
    /// `window` to the structure-constants document format.
    pub fn to_document(&self, window: &Window) -> String {
        let gens: Vec<Gen> = self.gens(window).into_iter().filter(|g| *g != Gen::Central).collect();
        let mut records = Vec::new();
        let mut basis: BTreeSet<i64> = gens.iter().filter_map(|g| g.index()).collect();
        for (a, &x) in gens.iter().enumerate() {
            for &y in &gens[a + 1..] {
                let e = self.bracket(x, y);
                if e.is_zero() {
                    continue;
                }
                basis.extend(e.gens().filter_map(Gen::index));
                let rhs: Vec<String> = e.terms().map(|(g, s)| format!("{}:{}", g.label(), scalar::render(s))).collect();
                records.push(format!("{} {} -> {}", x.label(), y.label(), rhs.join(", ")));
            }
        }
        let mut doc = String::new();
        doc.push_str(&format!("name: {}\n", self.name));
        doc.push_str(&format!("graded: {}\n", self.graded));
        doc.push_str(&format!("central: {}\n", self.has_central));
        let b: Vec<String> = basis.iter().map(i64::to_string).collect();
        doc.push_str(&format!("basis: {}\n", b.join(" ")));
        for r in records {
            doc.push_str(&r);
            doc.push('\n');
        }
        doc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate pair ({i}, {j})")]
    DuplicatePair { line: usize, i: String, j: String },
    #[error("line {line}: coefficient {text:?} is not a rational p/q")]
    BadCoefficient { line: usize, text: String },
    #[error("line {line}: term {target} in [{i}, {j}] violates the grading")]
    Grading { line: usize, i: String, j: String, target: String },
    #[error("line {line}: generator {gen} is not declared in the basis")]
    UnknownGenerator { line: usize, gen: String },
    #[error("missing header field {0:?}")]
    MissingHeader(&'static str),
}

fn parse_bool(line: usize, v: &str) -> Result<bool, AlgebraError> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(AlgebraError::Syntax {
            line,
            msg: format!("expected true or false, got {v:?}"),
        }),
    }
}

/// Parses a structure-constants document.
///
/// ```text
/// # comment
/// name: aff2
/// graded: true
/// central: false
/// basis: 0 1
/// 0 1 -> 1:1
/// ```
///
/// Header fields come first, in any order. Each record `i j -> k:p/q, ...`
/// gives `[e_i, e_j]` for `i < j`; the central generator is written `c` and
/// may only appear as a target. Unlisted pairs bracket to zero.
pub fn load_algebra(doc: &str) -> Result<GradedLieAlgebra, AlgebraError> {
    let mut name = None;
    let mut graded: Option<bool> = None;
    let mut central: Option<bool> = None;
    let mut basis: Option<BTreeSet<i64>> = None;
    let mut table: HashMap<(Gen, Gen), Element> = HashMap::new();
    let mut seen_record = false;

    for (idx, raw) in doc.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let syntax = |msg: &str| AlgebraError::Syntax { line, msg: msg.to_string() };
        if let Some((lhs, rhs)) = text.split_once("->") {
            seen_record = true;
            let (Some(graded), Some(central), Some(basis)) = (graded, central, basis.as_ref()) else {
                return Err(syntax("record before the header is complete"));
            };
            let parts: Vec<&str> = lhs.split_whitespace().collect();
            let [i, j] = parts.as_slice() else {
                return Err(syntax("expected two generator indices before '->'"));
            };
            let gi: i64 = i.parse().map_err(|_| syntax("left index must be an integer"))?;
            let gj: i64 = j.parse().map_err(|_| syntax("right index must be an integer"))?;
            for g in [gi, gj] {
                if !basis.contains(&g) {
                    return Err(AlgebraError::UnknownGenerator { line, gen: g.to_string() });
                }
            }
            if gi >= gj {
                return Err(syntax("records must list pairs with i < j"));
            }
            let key = (Gen::Indexed(gi), Gen::Indexed(gj));
            if table.contains_key(&key) {
                return Err(AlgebraError::DuplicatePair {
                    line,
                    i: gi.to_string(),
                    j: gj.to_string(),
                });
            }
            let mut value = Element::zero();
            let rhs = rhs.trim();
            if rhs.is_empty() {
                return Err(syntax("empty bracket value"));
            }
            for term in rhs.split(',') {
                let term = term.trim();
                let (target, coeff) = term.split_once(':').ok_or_else(|| syntax("term must look like k:p/q"))?;
                let target = target.trim();
                let g = Gen::parse_label(target).ok_or_else(|| syntax("bad target generator"))?;
                match g {
                    Gen::Central if !central => {
                        return Err(AlgebraError::UnknownGenerator { line, gen: "c".into() });
                    }
                    Gen::Indexed(k) if !basis.contains(&k) => {
                        return Err(AlgebraError::UnknownGenerator { line, gen: k.to_string() });
                    }
                    _ => {}
                }
                let s = scalar::parse(coeff.trim()).map_err(|_| AlgebraError::BadCoefficient {
                    line,
                    text: coeff.trim().to_string(),
                })?;
                if graded && !s.is_zero() && g.degree() != gi + gj {
                    return Err(AlgebraError::Grading {
                        line,
                        i: gi.to_string(),
                        j: gj.to_string(),
                        target: target.to_string(),
                    });
                }
                value.add_term(g, &s);
            }
            table.insert(key, value);
            continue;
        }
        let (key, value) = text.split_once(':').ok_or_else(|| syntax("expected 'key: value' or a record"))?;
        if seen_record {
            return Err(syntax("header field after records"));
        }
        let value = value.trim();
        match key.trim() {
            "name" if !value.is_empty() => name = Some(value.to_string()),
            "graded" => graded = Some(parse_bool(line, value)?),
            "central" => central = Some(parse_bool(line, value)?),
            "basis" => {
                let mut set = BTreeSet::new();
                for tok in value.split_whitespace() {
                    let n: i64 = tok.parse().map_err(|_| syntax("basis entries must be integers"))?;
                    if !set.insert(n) {
                        return Err(syntax("repeated basis index"));
                    }
                }
                if set.is_empty() {
                    return Err(syntax("empty basis"));
                }
                basis = Some(set);
            }
            other => return Err(syntax(&format!("unknown header field {other:?}"))),
        }
    }
    Ok(GradedLieAlgebra {
        name: name.ok_or(AlgebraError::MissingHeader("name"))?,
        has_central: central.ok_or(AlgebraError::MissingHeader("central"))?,
        graded: graded.ok_or(AlgebraError::MissingHeader("graded"))?,
        basis: Some(basis.ok_or(AlgebraError::MissingHeader("basis"))?),
        rule: BracketRule::Table(table),
    })
}

/// One basis triple where the Jacobi identity fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiDefect {
    pub triple: (Gen, Gen, Gen),
    pub defect: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    pub window: Window,
    pub triples_checked: usize,
    pub defects: Vec<JacobiDefect>,
}

impl JacobiReport {
    pub fn is_clean(&self) -> bool {
        self.defects.is_empty()
    }
}

pub fn jacobiator(alg: &GradedLieAlgebra, x: Gen, y: Gen, z: Gen) -> Element {
    let mut j = alg.bracket_elements(&alg.bracket(x, y), &Element::basis(z));
    j.add_scaled(&alg.bracket_elements(&alg.bracket(y, z), &Element::basis(x)), &scalar::one());
    j.add_scaled(&alg.bracket_elements(&alg.bracket(z, x), &Element::basis(y)), &scalar::one());
    j
}

/// Evaluates `[[x,y],z] + [[y,z],x] + [[z,x],y]` on every triple `x < y < z`
/// of window generators.
pub fn check_jacobi(alg: &GradedLieAlgebra, window: &Window) -> JacobiReport {
    let gens = alg.gens(window);
    let mut defects = Vec::new();
    let mut checked = 0;
    for (a, &x) in gens.iter().enumerate() {
        for (b, &y) in gens.iter().enumerate().skip(a + 1) {
            for &z in &gens[b + 1..] {
                checked += 1;
                let j = jacobiator(alg, x, y, z);
                if !j.is_zero() {
                    defects.push(JacobiDefect { triple: (x, y, z), defect: j });
                }
            }
        }
    }
    JacobiReport {
        window: *window,
        triples_checked: checked,
        defects,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn e(n: i64) -> Gen {
        Gen::Indexed(n)
    }

    #[test]
    fn witt_examples() {
        let w = make_witt();
        assert_eq!(w.bracket(e(2), e(3)), Element::basis(e(5)));
        assert!(w.bracket(e(4), e(4)).is_zero());
        assert_eq!(w.bracket(e(5), e(0)), Element::term(e(5), int(-5)));
    }

    #[test]
    fn virasoro_examples() {
        let v = make_virasoro();
        assert_eq!(v.bracket(e(1), e(-1)), Element::term(e(0), int(-2)));
        let mut expected = Element::term(e(0), int(-4));
        expected.add_term(Gen::Central, &ratio(-1, 2));
        assert_eq!(v.bracket(e(2), e(-2)), expected);
        assert!(v.bracket(e(3), Gen::Central).is_zero());
        assert!(v.bracket(Gen::Central, e(-7)).is_zero());
    }

    #[test]
    fn builtin_axioms_hold() {
        for alg in [make_witt(), make_virasoro()] {
            assert!(alg.axiom_violations(&Window::symmetric(8)).is_empty(), "{}", alg.name());
        }
    }

    #[test]
    fn canonical_gens_put_central_last() {
        let g = make_virasoro().gens(&Window::symmetric(1));
        assert_eq!(g, vec![e(-1), e(0), e(1), Gen::Central]);
    }

    #[test]
    fn jacobi_spot_check() {
        // [[e1,e2],e3] = [e3, e3]*... computed by hand: [e1,e2]=e3, [e3,e3]=0;
        // [e2,e3]=e5, [e5,e1]=-4e6; [e3,e1]=-2e4, [-2e4,e2]=4e6.
        let w = make_witt();
        assert!(jacobiator(&w, e(1), e(2), e(3)).is_zero());
        assert!(check_jacobi(&w, &Window::symmetric(6)).is_clean());
        assert!(check_jacobi(&make_virasoro(), &Window::symmetric(6)).is_clean());
    }

    #[test]
    fn corrupted_bracket_is_detected() {
        let witt = make_witt();
        let bad = GradedLieAlgebra::from_fn(
            "bad",
            false,
            None,
            Arc::new(move |x, y| {
                let mut b = witt.bracket(x, y);
                if (x, y) == (e(1), e(2)) {
                    b.add_term(e(3), &int(1));
                } else if (x, y) == (e(2), e(1)) {
                    b.add_term(e(3), &int(-1));
                }
                b
            }),
        );
        let report = check_jacobi(&bad, &Window::symmetric(4));
        assert!(!report.is_clean());
        for d in &report.defects {
            let (x, y, z) = d.triple;
            assert!([x, y, z].contains(&e(1)) || [x, y, z].contains(&e(2)) || [x, y, z].contains(&e(3)));
        }
        assert!(report
            .defects
            .iter()
            .any(|d| [d.triple.0, d.triple.1, d.triple.2].contains(&e(1)) && [d.triple.0, d.triple.1, d.triple.2].contains(&e(2))));
    }

    #[test]
    fn load_smallest_nonabelian() {
        let doc = "# [x, y] = y\nname: aff\ngraded: true\ncentral: false\nbasis: 0 1\n0 1 -> 1:1\n";
        let alg = load_algebra(doc).unwrap();
        assert_eq!(alg.bracket(e(0), e(1)), Element::basis(e(1)));
        assert_eq!(alg.bracket(e(1), e(0)), Element::term(e(1), int(-1)));
        assert!(alg.bracket(e(0), e(0)).is_zero());
        assert!(check_jacobi(&alg, &alg.natural_window().unwrap()).is_clean());
    }

    #[test]
    fn load_rejects_bad_documents() {
        let head = "name: t\ngraded: true\ncentral: false\nbasis: 0 1 2 3\n";
        let dup = format!("{head}1 2 -> 3:1\n1 2 -> 3:2\n");
        assert!(matches!(load_algebra(&dup), Err(AlgebraError::DuplicatePair { line: 6, .. })));
        let coeff = format!("{head}1 2 -> 3:0.5\n");
        assert!(matches!(load_algebra(&coeff), Err(AlgebraError::BadCoefficient { .. })));
        let grading = format!("{head}1 2 -> 2:1\n");
        assert!(matches!(load_algebra(&grading), Err(AlgebraError::Grading { .. })));
        let ungraded = "name: t\ngraded: false\ncentral: false\nbasis: 0 1 2 3\n1 2 -> 2:1\n";
        assert!(load_algebra(ungraded).is_ok());
        let garbage = format!("{head}1 2 -> 3:1 junk\n");
        assert!(load_algebra(&garbage).is_err());
        let trailing = format!("{head}1 2 -> 3:1\nstray\n");
        assert!(load_algebra(&trailing).is_err());
        let order = format!("{head}2 1 -> 3:1\n");
        assert!(load_algebra(&order).is_err());
        assert!(matches!(
            load_algebra("graded: true\ncentral: false\nbasis: 0\n"),
            Err(AlgebraError::MissingHeader("name"))
        ));
        let central = format!("{head}1 2 -> c:1\n");
        assert!(matches!(load_algebra(&central), Err(AlgebraError::UnknownGenerator { .. })));
    }

    #[test]
    fn witt_document_round_trip() {
        let witt = make_witt();
        let w3 = Window::symmetric(3);
        let doc = witt.to_document(&w3);
        let loaded = load_algebra(&doc).unwrap();
        for x in w3.indices() {
            for y in w3.indices() {
                assert_eq!(loaded.bracket(e(x), e(y)), witt.bracket(e(x), e(y)), "({x},{y})");
            }
        }
        assert_eq!(loaded.to_document(&w3), doc);
    }

    #[test]
    fn virasoro_document_keeps_central_terms() {
        let vir = make_virasoro();
        let w = Window::symmetric(3);
        let loaded = load_algebra(&vir.to_document(&w)).unwrap();
        assert_eq!(loaded.bracket(e(-3), e(3)), vir.bracket(e(-3), e(3)));
    }
}
