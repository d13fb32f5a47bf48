//! Truncated Laurent series in `q` with exact rational coefficients.
//!
//! Exponents live on a lattice `(1/D)*Z` for a fixed positive integer `D`
//! (the default `D = 1` gives ordinary integer exponents).  A [`QSeries`]
//! stores its nonzero coefficients keyed by the integer numerator of each
//! exponent together with a truncation order: coefficients at exponents
//! `>= order` are unknown, everything below is exact.  A [`Poly`] is an
//! exact Laurent polynomial on the same lattice, with no truncation.
//!
//! Truncation orders propagate through arithmetic so that every stored
//! coefficient of a result is guaranteed correct.  For multiplication the
//! order of `f*g` is `min(f.order + val(g), g.order + val(f), f.order +
//! g.order)` where `val` is the lowest exponent; inversion of a series with
//! valuation `v` costs `2v` of truncation.

use num::rational::Ratio;
use num::{BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exact coefficient type.
pub type Coeff = BigRational;

/// Exact exponent value, independent of any lattice.
pub type Exp = Ratio<i64>;

/// Errors from kernel and higher-level series operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("lattice mismatch: 1/{0} vs 1/{1}")]
    LatticeMismatch(u32, u32),
    #[error("exponent {0} does not lie on the lattice (1/{1})*Z")]
    OffLattice(Exp, u32),
    #[error("series is zero to its truncation order and cannot be inverted")]
    NotInvertible,
    #[error("pole: {0}")]
    Pole(String),
    #[error("coefficient at exponent {0} is at or beyond the truncation order {1}")]
    BeyondTruncation(Exp, Exp),
    #[error("comparison order {0} exceeds the available truncation {1}")]
    OrderUnavailable(Exp, Exp),
    #[error("degenerate Pochhammer: factor {0} vanishes identically")]
    DegeneratePochhammer(String),
    #[error("theta function {0} vanishes identically")]
    ThetaZero(String),
    #[error("sum does not converge as a formal series: {0}")]
    NonConvergent(String),
    #[error("rescale factor {0} must be positive")]
    BadRescale(Exp),
    #[error("{0}")]
    Domain(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("unknown identity group `{0}`")]
    UnknownGroup(String),
    #[error("unknown Bailey pair `{0}`")]
    UnknownPair(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Convert an exact exponent to its integer numerator on lattice `1/d`.
pub fn exp_num(e: Exp, d: u32) -> Result<i64> {
    let scaled = e * Exp::from_integer(d as i64);
    if scaled.is_integer() {
        Ok(scaled.to_integer())
    } else {
        Err(Error::OffLattice(e, d))
    }
}

fn num_exp(num: i64, d: u32) -> Exp {
    Exp::new(num, d as i64)
}

pub fn coeff_int(n: i64) -> Coeff {
    Coeff::from_integer(n.into())
}

pub fn coeff_ratio(n: i64, d: i64) -> Coeff {
    Coeff::new(n.into(), d.into())
}

/// A nonzero monomial `c * q^e`, used for function arguments and parameter
/// bindings.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamValue {
    pub coeff: Coeff,
    pub exp: Exp,
}

impl ParamValue {
    pub fn new(coeff: Coeff, exp: Exp) -> Self {
        assert!(!coeff.is_zero(), "parameter coefficient must be nonzero");
        ParamValue { coeff, exp }
    }

    pub fn from_int(c: i64) -> Self {
        ParamValue::new(coeff_int(c), Exp::zero())
    }

    /// `c * q^(n/d)`
    pub fn monomial(c: i64, n: i64, d: i64) -> Self {
        ParamValue::new(coeff_int(c), Exp::new(n, d))
    }

    pub fn qpow(n: i64) -> Self {
        ParamValue::new(Coeff::one(), Exp::from_integer(n))
    }

    pub fn inv(&self) -> Self {
        ParamValue::new(Coeff::one() / &self.coeff, -self.exp)
    }

    pub fn pow(&self, k: i64) -> Self {
        let mut c = Coeff::one();
        let base = if k >= 0 {
            self.coeff.clone()
        } else {
            Coeff::one() / &self.coeff
        };
        for _ in 0..k.unsigned_abs() {
            c *= &base;
        }
        ParamValue::new(c, self.exp * Exp::from_integer(k))
    }

    pub fn mul(&self, other: &ParamValue) -> Self {
        ParamValue::new(&self.coeff * &other.coeff, self.exp + other.exp)
    }

    pub fn neg(&self) -> Self {
        ParamValue::new(-self.coeff.clone(), self.exp)
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.exp.is_zero()
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp.is_zero() {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff.is_one() {
            write!(f, "{}", fmt_qpow(self.exp))
        } else if self.coeff == -Coeff::one() {
            write!(f, "-{}", fmt_qpow(self.exp))
        } else {
            write!(f, "{}*{}", self.coeff, fmt_qpow(self.exp))
        }
    }
}

/// Format `q^e` for display: `q`, `q^3`, `q^(-1)`, `q^(1/2)`.
pub fn fmt_qpow(e: Exp) -> String {
    if e.is_one() {
        "q".to_string()
    } else if e.is_integer() && !e.is_negative() {
        format!("q^{}", e.to_integer())
    } else {
        format!("q^({})", e)
    }
}

/// First point where two series disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub exp: Exp,
    pub lhs: Coeff,
    pub rhs: Coeff,
}

// ---------------------------------------------------------------------------
// QSeries
// ---------------------------------------------------------------------------

/// Truncated Laurent series on the exponent lattice `(1/lattice)*Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    lattice: u32,
    /// Nonzero coefficients keyed by exponent numerator; all keys < order.
    terms: BTreeMap<i64, Coeff>,
    /// Truncation order as a lattice numerator.
    order: i64,
}

impl QSeries {
    pub fn zero(lattice: u32, order: i64) -> Self {
        assert!(lattice > 0);
        QSeries {
            lattice,
            terms: BTreeMap::new(),
            order,
        }
    }

    pub fn one(lattice: u32, order: i64) -> Self {
        Self::monomial_num(lattice, Coeff::one(), 0, order)
    }

    /// `c * q^(num/lattice) + O(q^(order/lattice))`
    pub fn monomial_num(lattice: u32, c: Coeff, num: i64, order: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() && num < order {
            terms.insert(num, c);
        }
        QSeries {
            lattice,
            terms,
            order,
        }
    }

    pub fn monomial(lattice: u32, c: Coeff, e: Exp, order: i64) -> Result<Self> {
        Ok(Self::monomial_num(lattice, c, exp_num(e, lattice)?, order))
    }

    pub fn constant(lattice: u32, c: Coeff, order: i64) -> Self {
        Self::monomial_num(lattice, c, 0, order)
    }

    pub fn from_num_terms(
        lattice: u32,
        it: impl IntoIterator<Item = (i64, Coeff)>,
        order: i64,
    ) -> Self {
        let mut s = Self::zero(lattice, order);
        for (num, c) in it {
            s.add_term_num(num, c);
        }
        s
    }

    pub fn lattice(&self) -> u32 {
        self.lattice
    }

    /// Truncation order as a lattice numerator.
    pub fn order_num(&self) -> i64 {
        self.order
    }

    pub fn order(&self) -> Exp {
        num_exp(self.order, self.lattice)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest exponent numerator among stored terms.
    pub fn valuation_num(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn terms_num(&self) -> impl Iterator<Item = (i64, &Coeff)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Add `c*q^(num/lattice)` in place; silently drops exponents >= order.
    pub fn add_term_num(&mut self, num: i64, c: Coeff) {
        if c.is_zero() || num >= self.order {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(num) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_term(&mut self, e: Exp, c: Coeff) -> Result<()> {
        let num = exp_num(e, self.lattice)?;
        self.add_term_num(num, c);
        Ok(())
    }

    /// Exact coefficient at exponent `e`; errors at or beyond the order.
    pub fn coefficient(&self, e: Exp) -> Result<Coeff> {
        let num = exp_num(e, self.lattice)?;
        if num >= self.order {
            return Err(Error::BeyondTruncation(e, self.order()));
        }
        Ok(self.terms.get(&num).cloned().unwrap_or_else(Coeff::zero))
    }

    pub fn coefficient_num(&self, num: i64) -> Result<Coeff> {
        self.coefficient(num_exp(num, self.lattice))
    }

    fn check_lattice(&self, other: &QSeries) -> Result<()> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch(self.lattice, other.lattice));
        }
        Ok(())
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            lattice: self.lattice,
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
            order: self.order,
        }
    }

    pub fn add(&self, other: &QSeries) -> Result<QSeries> {
        self.check_lattice(other)?;
        let order = self.order.min(other.order);
        let mut out = QSeries::zero(self.lattice, order);
        for (k, v) in &self.terms {
            out.add_term_num(*k, v.clone());
        }
        for (k, v) in &other.terms {
            out.add_term_num(*k, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QSeries) -> Result<QSeries> {
        self.add(&other.neg())
    }

    /// Multiply, propagating the truncation window: unknown tails of one
    /// factor meet the lowest exponent of the other.
    pub fn mul(&self, other: &QSeries) -> Result<QSeries> {
        self.check_lattice(other)?;
        let mut order = self.order.saturating_add(other.order);
        if let Some(v) = self.valuation_num() {
            order = order.min(other.order.saturating_add(v));
        }
        if let Some(v) = other.valuation_num() {
            order = order.min(self.order.saturating_add(v));
        }
        let mut out = QSeries::zero(self.lattice, order);
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ka, ca) in &small.terms {
            for (kb, cb) in &large.terms {
                let k = ka + kb;
                if k >= order {
                    break;
                }
                out.add_term_num(k, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiply by the exact monomial `c * q^(num/lattice)`; shifts the
    /// truncation order exactly.
    pub fn mul_monomial_num(&self, c: &Coeff, num: i64) -> QSeries {
        if c.is_zero() {
            return QSeries::zero(self.lattice, self.order.saturating_add(num));
        }
        QSeries {
            lattice: self.lattice,
            terms: self.terms.iter().map(|(k, v)| (k + num, c * v)).collect(),
            order: self.order.saturating_add(num),
        }
    }

    /// Multiply by the exact binomial `1 - c*q^(num/lattice)` with `num != 0`
    /// or a constant binomial; exact in the truncation order.
    pub fn mul_binomial_num(&self, c: &Coeff, num: i64) -> QSeries {
        let order = if num >= 0 {
            self.order
        } else {
            self.order.saturating_add(num)
        };
        let mut out = QSeries {
            lattice: self.lattice,
            terms: self.terms.clone(),
            order,
        };
        out.terms.retain(|k, _| *k < order);
        for (k, v) in &self.terms {
            out.add_term_num(k + num, -(c * v));
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> QSeries {
        if c.is_zero() {
            return QSeries::zero(self.lattice, self.order);
        }
        QSeries {
            lattice: self.lattice,
            terms: self.terms.iter().map(|(k, v)| (*k, c * v)).collect(),
            order: self.order,
        }
    }

    /// Multiplicative inverse.  A series with valuation `v` known to order
    /// `N` determines its inverse to order `N - 2v`.
    pub fn invert(&self) -> Result<QSeries> {
        let v = self.valuation_num().ok_or(Error::NotInvertible)?;
        let len = (self.order - v).max(0) as usize;
        let mut a: Vec<Coeff> = vec![Coeff::zero(); len];
        for (k, c) in &self.terms {
            a[(k - v) as usize] = c.clone();
        }
        let lead_inv = Coeff::one() / &a[0];
        let mut b: Vec<Coeff> = Vec::with_capacity(len);
        for j in 0..len {
            if j == 0 {
                b.push(lead_inv.clone());
                continue;
            }
            let mut acc = Coeff::zero();
            for i in 1..=j {
                if !a[i].is_zero() && !b[j - i].is_zero() {
                    acc += &a[i] * &b[j - i];
                }
            }
            b.push(-(&lead_inv * acc));
        }
        let order = self.order - 2 * v;
        Ok(QSeries::from_num_terms(
            self.lattice,
            b.into_iter().enumerate().map(|(j, c)| (j as i64 - v, c)),
            order,
        ))
    }

    pub fn div(&self, other: &QSeries) -> Result<QSeries> {
        self.mul(&other.invert()?)
    }

    /// Integer power, with negative powers via inversion.
    pub fn pow(&self, k: i64) -> Result<QSeries> {
        if k == 0 {
            return Ok(QSeries::one(self.lattice, self.order));
        }
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut acc: Option<QSeries> = None;
        let mut sq = base;
        let mut n = k.unsigned_abs();
        loop {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq)?,
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            sq = sq.mul(&sq)?;
        }
        Ok(acc.unwrap())
    }

    /// Substitute `q -> q^r` for positive rational `r`; every rescaled
    /// exponent must stay on the lattice.
    pub fn rescale(&self, r: Exp) -> Result<QSeries> {
        if !r.is_positive() {
            return Err(Error::BadRescale(r));
        }
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let e = Exp::from_integer(*k) * r;
            if !e.is_integer() {
                return Err(Error::OffLattice(
                    num_exp(*k, self.lattice) * r,
                    self.lattice,
                ));
            }
            terms.insert(e.to_integer(), c.clone());
        }
        let scaled = Exp::from_integer(self.order) * r;
        let order = if scaled.is_integer() {
            scaled.to_integer()
        } else {
            scaled.ceil().to_integer()
        };
        Ok(QSeries {
            lattice: self.lattice,
            terms,
            order,
        })
    }

    /// Refine the exponent lattice from `1/D` to `1/(D*k)`.
    pub fn refine_lattice(&self, k: u32) -> QSeries {
        assert!(k > 0);
        QSeries {
            lattice: self.lattice * k,
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n * k as i64, c.clone()))
                .collect(),
            order: self.order * k as i64,
        }
    }

    /// Keep only terms whose exponent numerator is `t (mod m)`.
    pub fn dissect(&self, m: i64, t: i64) -> QSeries {
        assert!(m > 0);
        QSeries {
            lattice: self.lattice,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.rem_euclid(m) == t.rem_euclid(m))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
            order: self.order,
        }
    }

    /// Scale each term by a weight chosen by exponent numerator mod `m`.
    pub fn dissect_weighted(&self, m: i64, weights: &[Coeff]) -> QSeries {
        assert!(m > 0 && weights.len() == m as usize);
        let mut out = QSeries::zero(self.lattice, self.order);
        for (k, c) in &self.terms {
            let w = &weights[k.rem_euclid(m) as usize];
            out.add_term_num(*k, w * c);
        }
        out
    }

    /// Forget knowledge above `order_num` (which may not exceed the current
    /// order).
    pub fn truncate_num(&self, order_num: i64) -> QSeries {
        let order = self.order.min(order_num);
        QSeries {
            lattice: self.lattice,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| **k < order)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
            order,
        }
    }

    /// Compare up to (excluding) `order_num`; errors if either side is not
    /// known that far.
    pub fn compare_num(
        &self,
        other: &QSeries,
        order_num: i64,
    ) -> Result<std::result::Result<(), Mismatch>> {
        self.check_lattice(other)?;
        let avail = self.order.min(other.order);
        if order_num > avail {
            return Err(Error::OrderUnavailable(
                num_exp(order_num, self.lattice),
                num_exp(avail, self.lattice),
            ));
        }
        let mut keys: Vec<i64> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .filter(|k| *k < order_num)
            .collect();
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            let l = self.terms.get(&k).cloned().unwrap_or_else(Coeff::zero);
            let r = other.terms.get(&k).cloned().unwrap_or_else(Coeff::zero);
            if l != r {
                return Ok(Err(Mismatch {
                    exp: num_exp(k, self.lattice),
                    lhs: l,
                    rhs: r,
                }));
            }
        }
        Ok(Ok(()))
    }

    pub fn equal_to_order(&self, other: &QSeries, order_num: i64) -> Result<bool> {
        Ok(self.compare_num(other, order_num)?.is_ok())
    }
}

/// Expansion of `1/(1 - u*q^(k/lattice))` to the given order.
///
/// For `k > 0` this is the geometric series `sum_{j>=0} u^j q^(jk)`; for
/// `k = 0` it is the constant `1/(1-u)` (a pole when `u = 1`); for `k < 0`
/// it is rewritten as `-sum_{j>=1} u^(-j) q^(-jk)`, which has only positive
/// exponents when `u` is a constant.
pub fn geometric_factor(lattice: u32, u: &Coeff, k: i64, order: i64) -> Result<QSeries> {
    assert!(!u.is_zero());
    let mut out = QSeries::zero(lattice, order);
    if k == 0 {
        if u.is_one() {
            return Err(Error::Pole("1/(1-u) with u = 1".into()));
        }
        out.add_term_num(0, Coeff::one() / (Coeff::one() - u));
        return Ok(out);
    }
    if k > 0 {
        let mut pow = Coeff::one();
        let mut e = 0i64;
        while e < order {
            out.add_term_num(e, pow.clone());
            pow *= u;
            e += k;
        }
    } else {
        let uinv = Coeff::one() / u;
        let mut pow = uinv.clone();
        let mut e = -k;
        while e < order {
            out.add_term_num(e, -pow.clone());
            pow *= &uinv;
            e += -k;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Poly
// ---------------------------------------------------------------------------

/// Exact Laurent polynomial on the lattice `(1/lattice)*Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    lattice: u32,
    terms: BTreeMap<i64, Coeff>,
}

impl Poly {
    pub fn zero(lattice: u32) -> Self {
        Poly {
            lattice,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(lattice: u32) -> Self {
        Self::monomial_num(lattice, Coeff::one(), 0)
    }

    pub fn monomial_num(lattice: u32, c: Coeff, num: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(num, c);
        }
        Poly { lattice, terms }
    }

    pub fn constant(lattice: u32, c: Coeff) -> Self {
        Self::monomial_num(lattice, c, 0)
    }

    pub fn lattice(&self) -> u32 {
        self.lattice
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms_num(&self) -> impl Iterator<Item = (i64, &Coeff)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    /// Lowest and highest exponent numerators.
    pub fn low_num(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn degree_num(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coefficient_num(&self, num: i64) -> Coeff {
        self.terms.get(&num).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add_term_num(&mut self, num: i64, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(num) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_lattice(&self, other: &Poly) -> Result<()> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch(self.lattice, other.lattice));
        }
        Ok(())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            lattice: self.lattice,
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_lattice(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term_num(*k, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_lattice(other)?;
        let mut out = Poly::zero(self.lattice);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out.add_term_num(ka + kb, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiply by `1 - c*q^(num/lattice)`.
    pub fn mul_binomial_num(&self, c: &Coeff, num: i64) -> Poly {
        let mut out = self.clone();
        for (k, v) in &self.terms {
            out.add_term_num(k + num, -(c * v));
        }
        out
    }

    pub fn mul_monomial_num(&self, c: &Coeff, num: i64) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.lattice);
        }
        Poly {
            lattice: self.lattice,
            terms: self.terms.iter().map(|(k, v)| (k + num, c * v)).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        self.mul_monomial_num(c, 0)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.lattice);
        for _ in 0..k {
            acc = acc.mul(self).expect("same lattice");
        }
        acc
    }

    /// View as a truncated series with the given order.
    pub fn to_series(&self, order: i64) -> QSeries {
        QSeries::from_num_terms(
            self.lattice,
            self.terms.iter().map(|(k, c)| (*k, c.clone())),
            order,
        )
    }

    /// Substitute `q -> q^r`; exponents must stay on the lattice.
    pub fn rescale(&self, r: Exp) -> Result<Poly> {
        if !r.is_positive() {
            return Err(Error::BadRescale(r));
        }
        let mut out = Poly::zero(self.lattice);
        for (k, c) in &self.terms {
            let e = Exp::from_integer(*k) * r;
            if !e.is_integer() {
                return Err(Error::OffLattice(
                    num_exp(*k, self.lattice) * r,
                    self.lattice,
                ));
            }
            out.add_term_num(e.to_integer(), c.clone());
        }
        Ok(out)
    }
}

/// Reciprocal polynomial `q^deg * p(1/q)`.
///
/// `1 + 2q` maps to `q + 2`; `q^(-1) + 1` maps to `1 + q`; a palindromic
/// polynomial is fixed.
pub fn reciprocal_polynomial(p: &Poly) -> Poly {
    let d = match p.degree_num() {
        Some(d) => d,
        None => return p.clone(),
    };
    Poly {
        lattice: p.lattice,
        terms: p.terms.iter().map(|(k, c)| (d - k, c.clone())).collect(),
    }
}

// ---------------------------------------------------------------------------
// Display
// ---------------------------------------------------------------------------

fn fmt_terms(
    f: &mut fmt::Formatter<'_>,
    lattice: u32,
    terms: &BTreeMap<i64, Coeff>,
    tail: Option<i64>,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        let neg = c.is_negative();
        let mag = if neg { -c.clone() } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let e = num_exp(*k, lattice);
        if e.is_zero() {
            write!(f, "{}", mag)?;
        } else if mag.is_one() {
            write!(f, "{}", fmt_qpow(e))?;
        } else {
            write!(f, "{}*{}", mag, fmt_qpow(e))?;
        }
    }
    if let Some(order) = tail {
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({})", fmt_qpow(num_exp(order, lattice)))?;
    } else if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.lattice, &self.terms, Some(self.order))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.lattice, &self.terms, None)
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, order: i64) -> QSeries {
        QSeries::monomial_num(1, Coeff::one(), n, order)
    }

    #[test]
    fn monomial_and_display() {
        let s = q(2, 10).scale(&coeff_int(3));
        assert_eq!(s.to_string(), "3*q^2 + O(q^10)");
        let z = QSeries::zero(1, 5);
        assert_eq!(z.to_string(), "0 + O(q^5)");
        let m = QSeries::monomial_num(2, coeff_ratio(-1, 2), -1, 8);
        assert_eq!(m.to_string(), "-1/2*q^(-1/2) + O(q^4)");
    }

    #[test]
    fn mul_window_rule() {
        // f = q + O(q^5), g = 1 + O(q^3): fg known to min(5+0, 3+1, 8) = 4.
        let f = q(1, 5);
        let g = QSeries::one(1, 3);
        let p = f.mul(&g).unwrap();
        assert_eq!(p.order_num(), 4);
        assert_eq!(p.coefficient_num(1).unwrap(), Coeff::one());
        // both factors zero: order adds
        let z1 = QSeries::zero(1, 3);
        let z2 = QSeries::zero(1, 4);
        assert_eq!(z1.mul(&z2).unwrap().order_num(), 7);
    }

    #[test]
    fn invert_roundtrip() {
        // f = q^2 - q^3 + 2 q^5 + O(q^9), valuation 2
        let mut f = QSeries::zero(1, 9);
        f.add_term_num(2, coeff_int(1));
        f.add_term_num(3, coeff_int(-1));
        f.add_term_num(5, coeff_int(2));
        let g = f.invert().unwrap();
        assert_eq!(g.order_num(), 9 - 4);
        let prod = f.mul(&g).unwrap();
        assert!(prod.equal_to_order(&QSeries::one(1, prod.order_num()), prod.order_num()).unwrap());
    }

    #[test]
    fn geometric_factor_contract() {
        // u=2, e=-1: 1/(1-2 q^-1) = -q/2 - q^2/4 - q^3/8 - ...
        let g = geometric_factor(1, &coeff_int(2), -1, 5).unwrap();
        assert_eq!(g.coefficient_num(1).unwrap(), coeff_ratio(-1, 2));
        assert_eq!(g.coefficient_num(2).unwrap(), coeff_ratio(-1, 4));
        assert_eq!(g.coefficient_num(3).unwrap(), coeff_ratio(-1, 8));
        // (1 - u q^e) * geometric_factor = 1
        for (u, e) in [(coeff_int(2), 3), (coeff_ratio(1, 2), -2), (coeff_int(-3), 0)] {
            let g = geometric_factor(1, &u, e, 12).unwrap();
            let prod = g.mul_binomial_num(&u, e);
            let o = prod.order_num();
            assert!(prod.equal_to_order(&QSeries::one(1, o), o).unwrap(), "u={u} e={e}");
        }
        assert!(matches!(
            geometric_factor(1, &Coeff::one(), 0, 5),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn rescale_and_refine() {
        let mut f = QSeries::zero(1, 10);
        f.add_term_num(1, coeff_int(1));
        f.add_term_num(4, coeff_int(5));
        let g = f.rescale(Exp::from_integer(3)).unwrap();
        assert_eq!(g.coefficient_num(12).unwrap(), coeff_int(5));
        assert_eq!(g.order_num(), 30);
        assert!(f.rescale(Exp::new(1, 2)).is_err()); // q^1 -> q^(1/2) off-lattice
        let fine = f.refine_lattice(2);
        assert_eq!(fine.lattice(), 2);
        let h = fine.rescale(Exp::new(1, 2)).unwrap();
        assert_eq!(h.coefficient(Exp::new(1, 2)).unwrap(), coeff_int(1));
        assert_eq!(h.order_num(), 10);
    }

    #[test]
    fn dissect_partition() {
        let mut f = QSeries::zero(1, 9);
        for k in -2..9 {
            f.add_term_num(k, coeff_int(k + 10));
        }
        let mut sum = QSeries::zero(1, 9);
        for t in 0..3 {
            sum = sum.add(&f.dissect(3, t)).unwrap();
        }
        assert_eq!(sum, f);
        // negative numerators classify by euclidean residue
        let d = f.dissect(3, 1);
        assert_eq!(d.coefficient_num(-2).unwrap(), coeff_int(8));
    }

    #[test]
    fn compare_reports_first_mismatch() {
        let mut f = QSeries::zero(1, 8);
        f.add_term_num(0, coeff_int(1));
        let mut g = f.clone();
        g.add_term_num(5, coeff_int(3));
        let m = f.compare_num(&g, 8).unwrap().unwrap_err();
        assert_eq!(m.exp, Exp::from_integer(5));
        assert_eq!(m.lhs, coeff_int(0));
        assert_eq!(m.rhs, coeff_int(3));
        assert!(f.compare_num(&g, 9).is_err());
    }

    #[test]
    fn poly_reciprocal() {
        let mut p = Poly::zero(1);
        p.add_term_num(0, coeff_int(1));
        p.add_term_num(1, coeff_int(2));
        let r = reciprocal_polynomial(&p);
        assert_eq!(r.to_string(), "2 + q");
        let mut l = Poly::zero(1);
        l.add_term_num(-1, coeff_int(1));
        l.add_term_num(0, coeff_int(1));
        assert_eq!(reciprocal_polynomial(&l).to_string(), "1 + q");
        // palindromic fixed point
        let mut pal = Poly::zero(1);
        pal.add_term_num(0, coeff_int(1));
        pal.add_term_num(1, coeff_int(7));
        pal.add_term_num(2, coeff_int(1));
        assert_eq!(reciprocal_polynomial(&pal), pal);
    }

    #[test]
    fn pow_negative() {
        let mut f = QSeries::one(1, 10);
        f.add_term_num(1, coeff_int(-1)); // 1 - q
        let g = f.pow(-2).unwrap();
        // 1/(1-q)^2 = 1 + 2q + 3q^2 + ...
        assert_eq!(g.coefficient_num(3).unwrap(), coeff_int(4));
    }
}
