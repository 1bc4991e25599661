//! Grade chains, conjunctors and their residua.
//!
//! Grades of the chain `L_n = {0, 1/n, ..., 1}` are stored as integer indices
//! `0..=n`; all arithmetic is exact and decimals appear only at I/O
//! boundaries. Each conjunctor family implements [`Conjunctor`] and is
//! registered by kind name in a [`ConjunctorRegistry`], so a frame
//! descriptor can pick families at load time. Whatever the family, the
//! resulting [`AdjointTriple`] is materialized as lookup tables and verified
//! against the adjoint property before it is handed out.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

/// A grade index on a [`GradeChain`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Grade(pub u16);

impl Grade {
    pub const BOTTOM: Grade = Grade(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradeError {
    #[error("grade chain needs at least one step")]
    ZeroGranularity,
    #[error("`{value}` is not a point of the grade chain 0, 1/{n}, ..., 1")]
    OffGrid { value: String, n: u16 },
    #[error("`{0}` is not a grade (expected a decimal or a \"k/n\" string)")]
    Malformed(String),
}

/// The finite chain `{0, 1/n, ..., 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GradeChain {
    n: u16,
}

impl GradeChain {
    pub fn new(n: u16) -> Result<Self, GradeError> {
        if n == 0 {
            return Err(GradeError::ZeroGranularity);
        }
        Ok(Self { n })
    }

    pub fn granularity(self) -> u16 {
        self.n
    }

    /// Number of grades, `n + 1`.
    pub fn size(self) -> usize {
        self.n as usize + 1
    }

    pub fn bottom(self) -> Grade {
        Grade(0)
    }

    pub fn top(self) -> Grade {
        Grade(self.n)
    }

    pub fn grades(self) -> impl DoubleEndedIterator<Item = Grade> + Clone {
        (0..=self.n).map(Grade)
    }

    pub fn contains(self, g: Grade) -> bool {
        g.0 <= self.n
    }

    /// Reduced fraction: `"0"`, `"1"`, `"2/5"`.
    pub fn render(self, g: Grade) -> String {
        let (k, n) = (u32::from(g.0), u32::from(self.n));
        if k == 0 {
            return "0".into();
        }
        let d = gcd(k, n);
        if d == n {
            return (k / n).to_string();
        }
        format!("{}/{}", k / d, n / d)
    }

    /// Exact decimal (`"0.4"`, `"1"`, `"0.25"`) when the grade has a
    /// terminating expansion, otherwise the reduced fraction.
    pub fn render_decimal(self, g: Grade) -> String {
        let (k, n) = (u64::from(g.0), u64::from(self.n));
        let d = gcd(k as u32, n as u32).max(1) as u64;
        let (mut num, den) = (k / d, n / d);
        if den == 1 {
            return num.to_string();
        }
        let mut rest = den;
        let (mut twos, mut fives) = (0u32, 0u32);
        while rest % 2 == 0 {
            rest /= 2;
            twos += 1;
        }
        while rest % 5 == 0 {
            rest /= 5;
            fives += 1;
        }
        if rest != 1 {
            return self.render(g);
        }
        let digits = twos.max(fives);
        num *= 10u64.pow(digits) / den;
        let s = format!("{num:0>width$}", width = digits as usize + 1);
        let (int, frac) = s.split_at(s.len() - digits as usize);
        format!("{int}.{}", frac.trim_end_matches('0'))
    }

    /// Decimal rendering, e.g. `0.4`.
    pub fn to_f64(self, g: Grade) -> f64 {
        f64::from(g.0) / f64::from(self.n)
    }

    /// Parses `"k/m"` or an exact decimal such as `"0.4"`.
    pub fn parse_str(self, s: &str) -> Result<Grade, GradeError> {
        let s = s.trim();
        let (num, den) = if let Some((p, q)) = s.split_once('/') {
            let p: u128 = p
                .trim()
                .parse()
                .map_err(|_| GradeError::Malformed(s.into()))?;
            let q: u128 = q
                .trim()
                .parse()
                .map_err(|_| GradeError::Malformed(s.into()))?;
            if q == 0 {
                return Err(GradeError::Malformed(s.into()));
            }
            (p, q)
        } else {
            parse_decimal(s).ok_or_else(|| GradeError::Malformed(s.into()))?
        };
        let scaled = num * u128::from(self.n);
        if scaled % den != 0 || scaled / den > u128::from(self.n) {
            return Err(GradeError::OffGrid {
                value: s.into(),
                n: self.n,
            });
        }
        Ok(Grade((scaled / den) as u16))
    }

    /// Parses a JSON number or string.
    pub fn parse_value(self, v: &Value) -> Result<Grade, GradeError> {
        match v {
            Value::Number(num) => self.parse_str(&num.to_string()),
            Value::String(s) => self.parse_str(s),
            other => Err(GradeError::Malformed(other.to_string())),
        }
    }
}

/// Exact decimal as `(numerator, 10^digits)`; rejects signs and exponents
/// beyond what serde_json prints for short decimals.
fn parse_decimal(s: &str) -> Option<(u128, u128)> {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let mut num: u128 = if digits.is_empty() {
        0
    } else {
        digits.parse().ok()?
    };
    let mut scale = frac.len() as i32 - exp;
    while scale < 0 {
        num = num.checked_mul(10)?;
        scale += 1;
    }
    if scale > 30 {
        return None;
    }
    Some((num, 10u128.pow(scale as u32)))
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResiduationError {
    #[error(transparent)]
    Grade(#[from] GradeError),
    #[error("conjunctor is not order-preserving: {a:?} ⪯ {b:?} but {a:?} ↦ {fa:?} exceeds {b:?} ↦ {fb:?}")]
    NotMonotone {
        a: (Grade, Grade),
        b: (Grade, Grade),
        fa: Grade,
        fb: Grade,
    },
    #[error(
        "no residuum value for z = {z:?}, fixed argument {fixed:?}: the candidate set is empty"
    )]
    NoMaximum { z: Grade, fixed: Grade },
    #[error("conjunctor table must be {expected}x{expected}")]
    TableShape { expected: usize },
    #[error("conjunctor kind `{0}` is not registered")]
    UnknownKind(String),
    #[error("conjunctor `{0}` needs a table")]
    MissingTable(String),
    #[error("tables violate the adjoint property at {0}")]
    NotAdjoint(Counterexample),
    #[error("duplicate conjunctor name `{0}`")]
    DuplicateName(String),
}

/// A grid point `(x, y, z)` where the three-way adjoint equivalence breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counterexample {
    pub x: Grade,
    pub y: Grade,
    pub z: Grade,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x={}, y={}, z={})", self.x.0, self.y.0, self.z.0)
    }
}

/// A conjunctor family on a grade chain.
///
/// Implementations provide the conjunction; residua default to the
/// exhaustive max-scan and may be overridden with closed forms.
pub trait Conjunctor: fmt::Debug + Send + Sync {
    fn kind(&self) -> &str;

    fn conj(&self, chain: GradeChain, x: Grade, y: Grade) -> Grade;

    /// `(res_left, res_right)` as row-major tables: `res_left[z][y]` and
    /// `res_right[z][x]`.
    fn residua(&self, chain: GradeChain) -> Result<(Vec<Grade>, Vec<Grade>), ResiduationError> {
        residuum_from_conjunctor(chain, &conj_table(self, chain))
    }
}

fn conj_table<C: Conjunctor + ?Sized>(c: &C, chain: GradeChain) -> Vec<Grade> {
    let mut table = Vec::with_capacity(chain.size() * chain.size());
    for x in chain.grades() {
        for y in chain.grades() {
            table.push(c.conj(chain, x, y));
        }
    }
    table
}

/// Gödel: `min`, with `z ↙ y = 1` if `y ⪯ z` and `z` otherwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct Godel;

impl Conjunctor for Godel {
    fn kind(&self) -> &str {
        "godel"
    }

    fn conj(&self, _: GradeChain, x: Grade, y: Grade) -> Grade {
        x.min(y)
    }

    fn residua(&self, chain: GradeChain) -> Result<(Vec<Grade>, Vec<Grade>), ResiduationError> {
        let table = closed_form(chain, |z, y| if y <= z { chain.top() } else { z });
        Ok((table.clone(), table))
    }
}

/// Łukasiewicz: `max(0, x + y - 1)`, with `z ↙ y = min(1, 1 - y + z)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Lukasiewicz;

impl Conjunctor for Lukasiewicz {
    fn kind(&self) -> &str {
        "lukasiewicz"
    }

    fn conj(&self, chain: GradeChain, x: Grade, y: Grade) -> Grade {
        Grade((x.0 + y.0).saturating_sub(chain.n))
    }

    fn residua(&self, chain: GradeChain) -> Result<(Vec<Grade>, Vec<Grade>), ResiduationError> {
        let n = chain.n;
        let table = closed_form(chain, |z, y| Grade((n - y.0 + z.0).min(n)));
        Ok((table.clone(), table))
    }
}

/// Discretized product: `⌈n·xy⌉/n`, i.e. `⌈k·l/n⌉` on indices. Residua come
/// from the max-scan.
#[derive(Debug, Clone, Copy, Default)]
pub struct Product;

impl Conjunctor for Product {
    fn kind(&self) -> &str {
        "product"
    }

    fn conj(&self, chain: GradeChain, x: Grade, y: Grade) -> Grade {
        let n = u32::from(chain.n);
        Grade((u32::from(x.0) * u32::from(y.0)).div_ceil(n) as u16)
    }
}

/// A conjunctor given by an explicit `(n+1)×(n+1)` table, checked for
/// monotonicity on construction.
#[derive(Debug, Clone)]
pub struct TableConjunctor {
    size: usize,
    table: Vec<Grade>,
}

impl TableConjunctor {
    pub fn new(chain: GradeChain, rows: Vec<Vec<Grade>>) -> Result<Self, ResiduationError> {
        let size = chain.size();
        if rows.len() != size || rows.iter().any(|r| r.len() != size) {
            return Err(ResiduationError::TableShape { expected: size });
        }
        let table: Vec<Grade> = rows.into_iter().flatten().collect();
        if let Some(g) = table.iter().find(|g| !chain.contains(**g)) {
            return Err(GradeError::OffGrid {
                value: g.0.to_string(),
                n: chain.n,
            }
            .into());
        }
        check_monotone(chain, &table)?;
        Ok(Self { size, table })
    }
}

impl Conjunctor for TableConjunctor {
    fn kind(&self) -> &str {
        "table"
    }

    fn conj(&self, _: GradeChain, x: Grade, y: Grade) -> Grade {
        self.table[x.index() * self.size + y.index()]
    }
}

fn closed_form(chain: GradeChain, f: impl Fn(Grade, Grade) -> Grade) -> Vec<Grade> {
    let mut table = Vec::with_capacity(chain.size() * chain.size());
    for z in chain.grades() {
        for w in chain.grades() {
            table.push(f(z, w));
        }
    }
    table
}

fn check_monotone(chain: GradeChain, conj: &[Grade]) -> Result<(), ResiduationError> {
    let s = chain.size();
    for x in 0..s {
        for y in 0..s {
            let here = conj[x * s + y];
            let steps = [(x + 1, y), (x, y + 1)];
            for (nx, ny) in steps {
                if nx < s && ny < s && conj[nx * s + ny] < here {
                    return Err(ResiduationError::NotMonotone {
                        a: (Grade(x as u16), Grade(y as u16)),
                        b: (Grade(nx as u16), Grade(ny as u16)),
                        fa: here,
                        fb: conj[nx * s + ny],
                    });
                }
            }
        }
    }
    Ok(())
}

/// Residua of a conjunction table by exhaustive max-scan:
/// `z ↙ y = max{x | x & y ⪯ z}` and `z ↖ x = max{y | x & y ⪯ z}`.
pub fn residuum_from_conjunctor(
    chain: GradeChain,
    conj: &[Grade],
) -> Result<(Vec<Grade>, Vec<Grade>), ResiduationError> {
    let s = chain.size();
    if conj.len() != s * s {
        return Err(ResiduationError::TableShape { expected: s });
    }
    check_monotone(chain, conj)?;
    let mut left = Vec::with_capacity(s * s);
    let mut right = Vec::with_capacity(s * s);
    for z in chain.grades() {
        for w in chain.grades() {
            let l = chain
                .grades()
                .rev()
                .find(|x| conj[x.index() * s + w.index()] <= z)
                .ok_or(ResiduationError::NoMaximum { z, fixed: w })?;
            let r = chain
                .grades()
                .rev()
                .find(|y| conj[w.index() * s + y.index()] <= z)
                .ok_or(ResiduationError::NoMaximum { z, fixed: w })?;
            left.push(l);
            right.push(r);
        }
    }
    Ok((left, right))
}

/// Exhaustive check of `x ⪯ z↙y ⇔ x&y ⪯ z ⇔ y ⪯ z↖x` over the grid.
pub fn verify_adjoint(
    chain: GradeChain,
    conj: &[Grade],
    res_left: &[Grade],
    res_right: &[Grade],
) -> Result<(), Counterexample> {
    let s = chain.size();
    for x in chain.grades() {
        for y in chain.grades() {
            for z in chain.grades() {
                let middle = conj[x.index() * s + y.index()] <= z;
                let left = x <= res_left[z.index() * s + y.index()];
                let right = y <= res_right[z.index() * s + x.index()];
                if left != middle || right != middle {
                    return Err(Counterexample { x, y, z });
                }
            }
        }
    }
    Ok(())
}

/// Which of the seven standard adjoint-triple properties failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyViolation {
    pub clause: u8,
    pub description: &'static str,
    pub witness: Vec<Grade>,
}

/// Built-in conjunctor families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BuiltinKind {
    Godel,
    Lukasiewicz,
    Product,
}

impl BuiltinKind {
    pub const ALL: [BuiltinKind; 3] = [
        BuiltinKind::Godel,
        BuiltinKind::Lukasiewicz,
        BuiltinKind::Product,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinKind::Godel => "godel",
            BuiltinKind::Lukasiewicz => "lukasiewicz",
            BuiltinKind::Product => "product",
        }
    }

    pub fn conjunctor(self) -> Box<dyn Conjunctor> {
        match self {
            BuiltinKind::Godel => Box::new(Godel),
            BuiltinKind::Lukasiewicz => Box::new(Lukasiewicz),
            BuiltinKind::Product => Box::new(Product),
        }
    }
}

/// A verified adjoint triple `(&, ↙, ↖)` on one grade chain, as tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointTriple {
    name: String,
    kind: String,
    chain: GradeChain,
    conj: Vec<Grade>,
    res_left: Vec<Grade>,
    res_right: Vec<Grade>,
    zero_divisor: Option<(Grade, Grade)>,
    boundary_both_args: bool,
}

impl AdjointTriple {
    /// Materializes a conjunctor and its residua, then verifies adjointness.
    pub fn from_conjunctor(
        name: impl Into<String>,
        chain: GradeChain,
        conjunctor: &dyn Conjunctor,
    ) -> Result<Self, ResiduationError> {
        let conj = conj_table(conjunctor, chain);
        let (left, right) = conjunctor.residua(chain)?;
        Self::from_tables(name, conjunctor.kind(), chain, conj, left, right)
    }

    /// Wraps explicit tables after verifying the adjoint property.
    pub fn from_tables(
        name: impl Into<String>,
        kind: impl Into<String>,
        chain: GradeChain,
        conj: Vec<Grade>,
        res_left: Vec<Grade>,
        res_right: Vec<Grade>,
    ) -> Result<Self, ResiduationError> {
        let s = chain.size();
        if [conj.len(), res_left.len(), res_right.len()]
            .iter()
            .any(|&l| l != s * s)
        {
            return Err(ResiduationError::TableShape { expected: s });
        }
        verify_adjoint(chain, &conj, &res_left, &res_right)
            .map_err(ResiduationError::NotAdjoint)?;
        let zero_divisor = scan_zero_divisors(chain, &conj);
        let top = chain.top();
        let boundary_both_args = chain.grades().all(|x| {
            conj[x.index() * s + top.index()] == x && conj[top.index() * s + x.index()] == x
        });
        Ok(Self {
            name: name.into(),
            kind: kind.into(),
            chain,
            conj,
            res_left,
            res_right,
            zero_divisor,
            boundary_both_args,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    pub fn chain(&self) -> GradeChain {
        self.chain
    }

    #[inline]
    pub fn conj(&self, x: Grade, y: Grade) -> Grade {
        self.conj[x.index() * self.chain.size() + y.index()]
    }

    /// `z ↙ y`
    #[inline]
    pub fn res_left(&self, z: Grade, y: Grade) -> Grade {
        self.res_left[z.index() * self.chain.size() + y.index()]
    }

    /// `z ↖ x`
    #[inline]
    pub fn res_right(&self, z: Grade, x: Grade) -> Grade {
        self.res_right[z.index() * self.chain.size() + x.index()]
    }

    pub fn conj_table(&self) -> &[Grade] {
        &self.conj
    }

    /// A pair of non-bottom grades whose conjunction is bottom, if any.
    pub fn zero_divisor(&self) -> Option<(Grade, Grade)> {
        self.zero_divisor
    }

    pub fn has_zero_divisors(&self) -> bool {
        self.zero_divisor.is_some()
    }

    /// `x & ⊤ = ⊤ & x = x` for every grade.
    pub fn satisfies_boundary(&self) -> bool {
        self.boundary_both_args
    }

    pub fn verify_adjoint(&self) -> Result<(), Counterexample> {
        verify_adjoint(self.chain, &self.conj, &self.res_left, &self.res_right)
    }

    /// Checks the seven standard consequences of adjointness: monotonicity
    /// of `&`, mixed monotonicity of the residua, the four boundary laws for
    /// bottom and top, and the two max characterizations.
    pub fn check_properties(&self) -> Result<(), PropertyViolation> {
        let c = self.chain;
        let (bot, top) = (c.bottom(), c.top());
        let fail = |clause, description, witness: Vec<Grade>| {
            Err(PropertyViolation {
                clause,
                description,
                witness,
            })
        };
        for a in c.grades() {
            for b in c.grades().filter(|&b| a <= b) {
                for w in c.grades() {
                    if self.conj(a, w) > self.conj(b, w) || self.conj(w, a) > self.conj(w, b) {
                        return fail(1, "& is order-preserving in both arguments", vec![a, b, w]);
                    }
                    let first = self.res_left(a, w) > self.res_left(b, w)
                        || self.res_right(a, w) > self.res_right(b, w);
                    let second = self.res_left(w, a) < self.res_left(w, b)
                        || self.res_right(w, a) < self.res_right(w, b);
                    if first || second {
                        return fail(
                            2,
                            "residua are monotone in the first and antitone in the second argument",
                            vec![a, b, w],
                        );
                    }
                }
            }
        }
        for v in c.grades() {
            if self.conj(bot, v) != bot || self.res_left(top, v) != top {
                return fail(3, "⊥ & y = ⊥ and ⊤ ↙ y = ⊤", vec![v]);
            }
            if self.conj(v, bot) != bot || self.res_right(top, v) != top {
                return fail(4, "x & ⊥ = ⊥ and ⊤ ↖ x = ⊤", vec![v]);
            }
            if self.res_right(v, bot) != top || self.res_left(v, bot) != top {
                return fail(5, "z ↖ ⊥ = ⊤ and z ↙ ⊥ = ⊤", vec![v]);
            }
        }
        for z in c.grades() {
            for w in c.grades() {
                let max_left = c.grades().filter(|&x| self.conj(x, w) <= z).max();
                if max_left != Some(self.res_left(z, w)) {
                    return fail(6, "z ↙ y = max{x | x & y ⪯ z}", vec![z, w]);
                }
                let max_right = c.grades().filter(|&y| self.conj(w, y) <= z).max();
                if max_right != Some(self.res_right(z, w)) {
                    return fail(7, "z ↖ x = max{y | x & y ⪯ z}", vec![z, w]);
                }
            }
        }
        Ok(())
    }
}

fn scan_zero_divisors(chain: GradeChain, conj: &[Grade]) -> Option<(Grade, Grade)> {
    let s = chain.size();
    chain
        .grades()
        .skip(1)
        .flat_map(|x| chain.grades().skip(1).map(move |y| (x, y)))
        .find(|(x, y)| conj[x.index() * s + y.index()] == Grade::BOTTOM)
}

/// First pair of non-bottom grades `(x, y)` with `x & y = ⊥`.
pub fn has_zero_divisors(triple: &AdjointTriple) -> Option<(Grade, Grade)> {
    triple.zero_divisor()
}

/// One of the built-in discretized t-norm triples.
pub fn builtin_triple(chain: GradeChain, kind: BuiltinKind) -> AdjointTriple {
    AdjointTriple::from_conjunctor(kind.name(), chain, kind.conjunctor().as_ref())
        .expect("built-in conjunctors are adjoint on every chain")
}

/// JSON description of one frame conjunctor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjunctorSpec {
    pub name: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<Value>>>,
}

/// JSON description of a multi-adjoint frame on one chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameSpec {
    pub grades: u16,
    pub conjunctors: Vec<ConjunctorSpec>,
}

type Factory = dyn Fn(GradeChain, &ConjunctorSpec) -> Result<Box<dyn Conjunctor>, ResiduationError>
    + Send
    + Sync;

/// Conjunctor families by kind name.
#[derive(Clone)]
pub struct ConjunctorRegistry {
    factories: HashMap<String, Arc<Factory>>,
}

impl fmt::Debug for ConjunctorRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConjunctorRegistry")
            .field("kinds", &self.kinds())
            .finish()
    }
}

impl Default for ConjunctorRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl ConjunctorRegistry {
    pub fn empty() -> Self {
        Self {
            factories: HashMap::new(),
        }
    }

    /// Gödel, Łukasiewicz, product and explicit tables.
    pub fn with_builtins() -> Self {
        let mut reg = Self::empty();
        for kind in BuiltinKind::ALL {
            reg.register(kind.name(), move |_, _| Ok(kind.conjunctor()));
        }
        reg.register("table", |chain, spec| {
            let rows = spec
                .table
                .as_ref()
                .ok_or_else(|| ResiduationError::MissingTable(spec.name.clone()))?;
            let rows = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| chain.parse_value(v))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Box::new(TableConjunctor::new(chain, rows)?))
        });
        reg
    }

    /// Registers (or replaces) a family under `kind`.
    pub fn register<F>(&mut self, kind: &str, factory: F)
    where
        F: Fn(GradeChain, &ConjunctorSpec) -> Result<Box<dyn Conjunctor>, ResiduationError>
            + Send
            + Sync
            + 'static,
    {
        self.factories.insert(kind.to_owned(), Arc::new(factory));
    }

    pub fn kinds(&self) -> Vec<&str> {
        let mut kinds: Vec<&str> = self.factories.keys().map(String::as_str).collect();
        kinds.sort_unstable();
        kinds
    }

    pub fn build(
        &self,
        chain: GradeChain,
        spec: &ConjunctorSpec,
    ) -> Result<AdjointTriple, ResiduationError> {
        let factory = self
            .factories
            .get(&spec.kind)
            .ok_or_else(|| ResiduationError::UnknownKind(spec.kind.clone()))?;
        let conjunctor = factory(chain, spec)?;
        AdjointTriple::from_conjunctor(spec.name.clone(), chain, conjunctor.as_ref())
    }
}

/// A grade chain with named adjoint triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    chain: GradeChain,
    triples: Vec<AdjointTriple>,
}

impl Frame {
    pub fn new(chain: GradeChain, triples: Vec<AdjointTriple>) -> Result<Self, ResiduationError> {
        for (i, t) in triples.iter().enumerate() {
            if triples[..i].iter().any(|u| u.name() == t.name()) {
                return Err(ResiduationError::DuplicateName(t.name().to_owned()));
            }
        }
        Ok(Self { chain, triples })
    }

    pub fn from_spec(
        spec: &FrameSpec,
        registry: &ConjunctorRegistry,
    ) -> Result<Self, ResiduationError> {
        let chain = GradeChain::new(spec.grades)?;
        let triples = spec
            .conjunctors
            .iter()
            .map(|c| registry.build(chain, c))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(chain, triples)
    }

    pub fn chain(&self) -> GradeChain {
        self.chain
    }

    pub fn triples(&self) -> &[AdjointTriple] {
        &self.triples
    }

    pub fn triple(&self, i: usize) -> &AdjointTriple {
        &self.triples[i]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.triples.iter().position(|t| t.name() == name)
    }
}
