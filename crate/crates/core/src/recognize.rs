//! Recognition of truncated q-series as theta quotients.
//!
//! [`theta_recognize`] searches for products `c * q^sigma * prod J_{a,m}^e`
//! that reproduce the input exactly to its truncation order, in the spirit of
//! the `prodmake`/`etamake` utilities of Garvan's Maple q-series package.
//! Beyond pure quotients it also reports "quotient times partial theta"
//! matches: the input divided by a small candidate quotient is accepted when
//! its coefficients lie in `{-1, 0, +1}` and are supported on at most two
//! signed quadratic progressions `n -> a2*n^2 + a1*n + a0` (fit through the
//! first three support points of each sign class and certified against every
//! remaining coefficient).
//!
//! All results are certified by exact arithmetic before being reported, and
//! the output ordering is deterministic (lexicographic on the factorization
//! encoding), so runs are reproducible regardless of search order.

use crate::dual::{fmt_npoly, fmt_rat};
use crate::qfuncs::{theta_cap_j, theta_cap_j_eta, ThetaKind};
use crate::series::{coeff_int, exp_num, fmt_qpow, Coeff, Exp, QSeries, Result};
use num::{One, Zero};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// Cap on (atom, exponent) trials per deepening sweep of the pure search.
const NODE_BUDGET: usize = 2_000_000;

/// Search limits for [`theta_recognize`].
#[derive(Debug, Clone)]
pub struct RecognizerBounds {
    /// Largest allowed modulus `m` in `J_m` / `J_{a,m}` factors.
    pub max_modulus: i64,
    /// Largest number of distinct factors in a quotient.
    pub max_factors: usize,
    /// Largest allowed |exponent| on a single factor.
    pub max_exponent: i32,
    /// Largest modulus tried for the quotient part of a
    /// quotient-times-partial-theta match (at most two factors, exponents
    /// limited to +-1).
    pub residual_max_modulus: i64,
}

impl Default for RecognizerBounds {
    fn default() -> Self {
        RecognizerBounds {
            max_modulus: 30,
            max_factors: 4,
            max_exponent: 2,
            residual_max_modulus: 8,
        }
    }
}

/// One factor of a recognized quotient: `Eta(m)` is `J_m = (q^m; q^m)_inf`
/// and `Theta(a, m)` is `J_{a,m} = (q^a; q^m)_inf (q^(m-a); q^m)_inf
/// (q^m; q^m)_inf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThetaAtom {
    Eta(Exp),
    Theta(Exp, Exp),
}

impl fmt::Display for ThetaAtom {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let plain = |e: &Exp| -> String {
            if e.is_integer() {
                e.numer().to_string()
            } else {
                format!("{}/{}", e.numer(), e.denom())
            }
        };
        match self {
            ThetaAtom::Eta(m) => write!(out, "Jm({})", plain(m)),
            ThetaAtom::Theta(a, m) => write!(out, "J({},{})", plain(a), plain(m)),
        }
    }
}

/// One signed quadratic progression `sign * sum(n>=0) q^(a2 n^2 + a1 n + a0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Progression {
    pub sign: i32,
    pub a2: Exp,
    pub a1: Exp,
    pub a0: Exp,
}

impl fmt::Display for Progression {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "sum(n>=0) q^({})", fmt_npoly(self.a2, self.a1, self.a0))
    }
}

/// A certified match: `coeff * q^power * prod factors` and, when `residual`
/// is present, times the sum of the listed progressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    lattice: u32,
    pub coeff: Coeff,
    pub power: Exp,
    pub factors: Vec<(ThetaAtom, i32)>,
    pub residual: Option<Vec<Progression>>,
}

impl Factorization {
    pub fn is_pure_quotient(&self) -> bool {
        self.residual.is_none()
    }

    /// Rebuild the series this factorization denotes, to the given order.
    pub fn to_series(&self, order: i64) -> Result<QSeries> {
        let lat = self.lattice;
        let sigma = exp_num(self.power, lat)?;
        let atom_order = order - sigma.min(0) + 8;
        let mut acc = QSeries::monomial_num(lat, self.coeff.clone(), sigma, order);
        for (atom, e) in &self.factors {
            let base = atom_series(lat, atom, atom_order)?;
            acc = acc.mul(&base.pow(i64::from(*e))?)?;
        }
        if let Some(progs) = &self.residual {
            acc = acc.mul(&reconstruct_progressions(lat, progs, atom_order)?)?;
        }
        Ok(acc.truncate_num(order))
    }

    fn sort_key(&self) -> (u8, Vec<(Exp, Exp, u8, i32)>, Exp, Coeff) {
        let factors = self
            .factors
            .iter()
            .map(|(atom, e)| match atom {
                ThetaAtom::Eta(m) => (*m, Exp::zero(), 0u8, *e),
                ThetaAtom::Theta(a, m) => (*m, *a, 1u8, *e),
            })
            .collect();
        (
            u8::from(self.residual.is_some()),
            factors,
            self.power,
            self.coeff.clone(),
        )
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut head: Vec<String> = Vec::new();
        if self.coeff != Coeff::one() {
            head.push(fmt_rat(&self.coeff));
        }
        if !self.power.is_zero() {
            head.push(fmt_qpow(self.power));
        }
        let mut den: Vec<String> = Vec::new();
        for (atom, e) in &self.factors {
            let body = if e.abs() == 1 {
                atom.to_string()
            } else {
                format!("{atom}^{}", e.abs())
            };
            if *e > 0 {
                head.push(body);
            } else {
                den.push(body);
            }
        }
        let mut text = if head.is_empty() {
            if den.is_empty() && self.residual.is_some() {
                String::new()
            } else {
                "1".into()
            }
        } else {
            head.join(" * ")
        };
        if !den.is_empty() {
            if den.len() == 1 {
                text.push_str(&format!(" / {}", den[0]));
            } else {
                text.push_str(&format!(" / ({})", den.join(" * ")));
            }
        }
        if let Some(progs) = &self.residual {
            let mut sum = String::new();
            for (i, p) in progs.iter().enumerate() {
                if i == 0 {
                    if p.sign < 0 {
                        sum.push('-');
                    }
                } else if p.sign < 0 {
                    sum.push_str(" - ");
                } else {
                    sum.push_str(" + ");
                }
                sum.push_str(&p.to_string());
            }
            if text.is_empty() {
                text = sum;
            } else {
                text.push_str(&format!(" * ({sum})"));
            }
        }
        out.write_str(&text)
    }
}

// ---------------------------------------------------------------------------
// Atom series and patterns (internal grid: exponent numerators)
// ---------------------------------------------------------------------------

fn atom_series(lattice: u32, atom: &ThetaAtom, order: i64) -> Result<QSeries> {
    match atom {
        ThetaAtom::Eta(m) => theta_cap_j_eta(lattice, *m, order),
        ThetaAtom::Theta(a, m) => theta_cap_j(lattice, *a, *m, ThetaKind::Plain, order),
    }
}

fn atom_public(lattice: u32, m: i64, a: i64) -> ThetaAtom {
    let lat = i64::from(lattice);
    if a == 0 {
        ThetaAtom::Eta(Exp::new(m, lat))
    } else {
        ThetaAtom::Theta(Exp::new(a, lat), Exp::new(m, lat))
    }
}

/// Subtract `e` copies of the atom's product-exponent pattern from `b`
/// (entries indexed by exponent numerator; `b[0]` unused).  `Eta(m)`
/// contributes 1 at every multiple of `m`; `Theta(a, m)` contributes 1 at
/// `n = a, m - a, 0 (mod m)`, which doubles up at `a = m/2`.
fn apply_atom(b: &mut [i64], m: i64, a: i64, e: i64) {
    let top = b.len() as i64 - 1;
    let mut walk = |start: i64| {
        let mut p = start;
        while p <= top {
            b[p as usize] -= e;
            p += m;
        }
    };
    if a == 0 {
        walk(m);
    } else {
        walk(a);
        walk(m - a);
        walk(m);
    }
}

// ---------------------------------------------------------------------------
// Product expansion (prodmake): f~ = prod (1 - x^m)^(e_m) over the grid
// ---------------------------------------------------------------------------

/// Exponents `e_m` with `f~ = prod_m (1 - x^m)^(e_m)`, where `x = q^(1/D)`
/// and `f~` is normalized (constant term 1).  Uses the logarithmic-derivative
/// recurrence `L_k = k a_k - sum_{j<k} a_j L_{k-j}`, `m e_m = -(L_m +
/// sum_{d|m, d<m} d e_d)`.  Returns `None` when some `e_m` is not an integer,
/// i.e. the input is not a quotient of such products at all.
fn prodmake(ftilde: &QSeries) -> Option<Vec<i64>> {
    let top = ftilde.order_num() - 1;
    if top < 1 {
        return None;
    }
    let k = top as usize;
    let mut a = vec![Coeff::zero(); k + 1];
    for (num, c) in ftilde.terms_num() {
        if (0..=top).contains(&num) {
            a[num as usize] = c.clone();
        }
    }
    if !a[0].is_one() {
        return None;
    }
    let mut l = vec![Coeff::zero(); k + 1];
    for i in 1..=k {
        let mut s = coeff_int(i as i64) * a[i].clone();
        for j in 1..i {
            s -= a[j].clone() * l[i - j].clone();
        }
        l[i] = s;
    }
    let mut e = vec![0i64; k + 1];
    for m in 1..=k {
        let mut s = l[m].clone();
        for d in 1..m {
            if m % d == 0 {
                s += coeff_int((d as i64) * e[d]);
            }
        }
        let em = -(s / coeff_int(m as i64));
        if !em.is_integer() {
            return None;
        }
        e[m] = i64::try_from(em.to_integer()).ok()?;
        if e[m].abs() > 1_000_000 {
            return None;
        }
    }
    Some(e)
}

// ---------------------------------------------------------------------------
// Pure-quotient search
// ---------------------------------------------------------------------------

struct PureSearch {
    grid_max: i64,
    max_exponent: i32,
    b: Vec<i64>,
    factors: Vec<(i64, i64, i32)>, // (m, a, exponent)
    found: BTreeSet<Vec<(i64, i64, i32)>>,
    budget: usize,
    limit: usize,
}

impl PureSearch {
    /// Iterative deepening on the factor count, so every decomposition with
    /// few factors is enumerated before the (much larger) deep sweeps can
    /// exhaust the node budget.
    fn run(&mut self, max_factors: usize) {
        for limit in 0..=max_factors {
            self.limit = limit;
            self.budget = NODE_BUDGET;
            self.dfs(1, 0);
        }
    }

    /// Peel the exponent vector from its smallest nonzero position upward.
    /// Every atom whose first support index exceeds the current position is
    /// zero there, so that position must be cleared by atoms whose first
    /// index equals it exactly; this is what keeps the search sharp.
    /// `min_m` canonicalizes runs of atoms applied at one position to
    /// ascending modulus, cutting permutations of the same choice.
    fn dfs(&mut self, lo: usize, min_m: i64) {
        let mut pos = lo;
        while pos < self.b.len() && self.b[pos] == 0 {
            pos += 1;
        }
        if pos == self.b.len() {
            let mut key = self.factors.clone();
            key.sort_unstable();
            self.found.insert(key);
            return;
        }
        let slots = self.limit - self.factors.len();
        if slots == 0 {
            return;
        }
        let n = pos as i64;
        if n > self.grid_max {
            return;
        }
        let v = self.b[pos];
        // each remaining atom moves this position by at most 2*max_exponent
        if v.abs() > 2 * i64::from(self.max_exponent) * slots as i64 {
            return;
        }
        let min_m = if pos == lo { min_m } else { 0 };
        let mut atoms: Vec<(i64, i64, i64)> = vec![(n, 0, 1)];
        let mut m = 2 * n;
        while m <= self.grid_max {
            atoms.push((m, n, if m == 2 * n { 2 } else { 1 }));
            m += 1;
        }
        for (m, a, contrib) in atoms {
            if m < min_m {
                continue;
            }
            if self.factors.iter().any(|&(fm, fa, _)| fm == m && fa == a) {
                continue;
            }
            // exact-zeroing exponent first; a last remaining slot can only
            // ever succeed by zeroing the position outright
            let zeroing = if v % contrib == 0 { v / contrib } else { 0 };
            let mut exps: Vec<i32> = Vec::new();
            if zeroing != 0 && zeroing.abs() <= i64::from(self.max_exponent) {
                exps.push(zeroing as i32);
            }
            if slots > 1 {
                for mag in 1..=self.max_exponent {
                    for e in [mag, -mag] {
                        if i64::from(e) != zeroing {
                            exps.push(e);
                        }
                    }
                }
            }
            for e in exps {
                if self.budget == 0 {
                    return;
                }
                self.budget -= 1;
                apply_atom(&mut self.b, m, a, i64::from(e));
                self.factors.push((m, a, e));
                self.dfs(pos, m + 1);
                self.factors.pop();
                apply_atom(&mut self.b, m, a, -i64::from(e));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Residual fitting
// ---------------------------------------------------------------------------

/// Fit `a2 n^2 + a1 n + a0` through the first three support points (given as
/// exponent numerators, ascending) and return the rational coefficients.
fn fit_progression(support: &[i64], lattice: u32) -> Option<(Exp, Exp, Exp)> {
    let lat = i64::from(lattice);
    let (s0, s1, s2) = (support[0], support[1], support[2]);
    let a2 = Exp::new(s2 - 2 * s1 + s0, 2 * lat);
    if a2 <= Exp::zero() {
        return None;
    }
    let a1 = Exp::new(s1 - s0, lat) - a2;
    let a0 = Exp::new(s0, lat);
    Some((a2, a1, a0))
}

/// Sum of the progressions as a series, with every term below `order`.
fn reconstruct_progressions(
    lattice: u32,
    progs: &[Progression],
    order: i64,
) -> Result<QSeries> {
    let mut out = QSeries::zero(lattice, order);
    for p in progs {
        let mut n = 0i64;
        loop {
            let nn = Exp::from_integer(n);
            let expv = p.a2 * nn * nn + p.a1 * nn + p.a0;
            let num = exp_num(expv, lattice)?;
            if num < order {
                out.add_term_num(num, coeff_int(i64::from(p.sign)));
            } else {
                // past the parabola vertex the exponents only grow
                let past_vertex = Exp::from_integer(2 * n) * p.a2 + p.a1 > Exp::zero();
                if past_vertex {
                    break;
                }
            }
            n += 1;
            if n > 100_000 {
                break;
            }
        }
    }
    Ok(out)
}

/// Try one candidate quotient for a quotient-times-partial-theta match.
fn try_residual(
    f: &QSeries,
    qfac: &[(i64, i64, i32)],
    cache: &mut AtomCache,
) -> Result<Option<Factorization>> {
    let lattice = f.lattice();
    let mut r = f.clone();
    for &(m, a, e) in qfac {
        // dividing f by atom^e means multiplying by atom^(-e)
        r = r.mul(cache.get(m, a, e > 0)?)?;
    }
    let mut plus: Vec<i64> = Vec::new();
    let mut minus: Vec<i64> = Vec::new();
    for (num, c) in r.terms_num() {
        if c.is_one() {
            plus.push(num);
        } else if (-c.clone()).is_one() {
            minus.push(num);
        } else {
            return Ok(None);
        }
    }
    if plus.len() + minus.len() < 3 {
        return Ok(None);
    }
    let mut progs: Vec<Progression> = Vec::new();
    for (support, sign) in [(&plus, 1i32), (&minus, -1i32)] {
        if support.is_empty() {
            continue;
        }
        if support.len() < 3 {
            return Ok(None);
        }
        match fit_progression(support, lattice) {
            Some((a2, a1, a0)) => progs.push(Progression { sign, a2, a1, a0 }),
            None => return Ok(None),
        }
    }
    let recon = match reconstruct_progressions(lattice, &progs, r.order_num()) {
        Ok(s) => s,
        Err(_) => return Ok(None),
    };
    if !r.sub(&recon)?.is_zero() {
        return Ok(None);
    }
    progs.sort_by_key(|p| (p.a0, p.a1, p.sign));
    Ok(Some(Factorization {
        lattice,
        coeff: Coeff::one(),
        power: Exp::zero(),
        factors: qfac
            .iter()
            .map(|&(m, a, e)| (atom_public(lattice, m, a), e))
            .collect(),
        residual: Some(progs),
    }))
}

struct AtomCache {
    lattice: u32,
    order: i64,
    store: HashMap<(i64, i64, bool), QSeries>,
}

impl AtomCache {
    fn get(&mut self, m: i64, a: i64, inverse: bool) -> Result<&QSeries> {
        if !self.store.contains_key(&(m, a, inverse)) {
            let atom = atom_public(self.lattice, m, a);
            let series = atom_series(self.lattice, &atom, self.order)?;
            let series = if inverse { series.invert()? } else { series };
            self.store.insert((m, a, inverse), series);
        }
        Ok(&self.store[&(m, a, inverse)])
    }
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// All certified factorizations of `f` within `bounds`, pure quotients
/// first, in a deterministic order.  An empty list means no match.
pub fn theta_recognize(f: &QSeries, bounds: &RecognizerBounds) -> Vec<Factorization> {
    match recognize_inner(f, bounds) {
        Ok(v) => v,
        Err(_) => Vec::new(),
    }
}

fn recognize_inner(f: &QSeries, bounds: &RecognizerBounds) -> Result<Vec<Factorization>> {
    let Some(sigma) = f.valuation_num() else {
        return Ok(Vec::new());
    };
    let lattice = f.lattice();
    let lat = i64::from(lattice);
    let coeff = f.coefficient_num(sigma)?;
    let mut cache = AtomCache {
        lattice,
        order: f.order_num() + sigma.abs() + 8,
        store: HashMap::new(),
    };
    let mut results: Vec<Factorization> = Vec::new();

    // pure quotients: prodmake the normalized series, then peel its exponent
    // vector into atoms
    let ftilde = f.mul_monomial_num(&coeff.recip(), -sigma);
    if let Some(evec) = prodmake(&ftilde) {
        let mut search = PureSearch {
            grid_max: bounds.max_modulus * lat,
            max_exponent: bounds.max_exponent,
            b: evec,
            factors: Vec::new(),
            found: BTreeSet::new(),
            budget: NODE_BUDGET,
            limit: 0,
        };
        search.run(bounds.max_factors);
        for key in search.found {
            let candidate = Factorization {
                lattice,
                coeff: coeff.clone(),
                power: Exp::new(sigma, lat),
                factors: key
                    .iter()
                    .map(|&(m, a, e)| (atom_public(lattice, m, a), e))
                    .collect(),
                residual: None,
            };
            let series = match candidate.to_series(f.order_num()) {
                Ok(s) => s,
                Err(_) => continue,
            };
            if f.equal_to_order(&series, f.order_num())? {
                results.push(candidate);
            }
        }
    }

    // quotient-times-partial-theta matches over small quotients
    let gmax = bounds.residual_max_modulus * lat;
    let mut atoms: Vec<(i64, i64)> = Vec::new();
    for m in 1..=gmax {
        atoms.push((m, 0));
        for a in 1..=m / 2 {
            atoms.push((m, a));
        }
    }
    atoms.sort_unstable();
    let mut quotients: Vec<Vec<(i64, i64, i32)>> = vec![Vec::new()];
    for (i, &(m, a)) in atoms.iter().enumerate() {
        for e in [1, -1] {
            quotients.push(vec![(m, a, e)]);
        }
        for &(m2, a2) in atoms.iter().skip(i + 1) {
            for e in [1, -1] {
                for e2 in [1, -1] {
                    quotients.push(vec![(m, a, e), (m2, a2, e2)]);
                }
            }
        }
    }
    for qfac in &quotients {
        if let Some(found) = try_residual(f, qfac, &mut cache)? {
            results.push(found);
        }
    }

    results.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    results.dedup();
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfuncs::partial_theta;
    use crate::series::{coeff_ratio, ParamValue};

    fn ex(n: i64) -> Exp {
        Exp::from_integer(n)
    }

    fn quotient(coeff: Coeff, sigma: i64, factors: &[(i64, i64, i32)]) -> Factorization {
        Factorization {
            lattice: 1,
            coeff,
            power: ex(sigma),
            factors: factors
                .iter()
                .map(|&(m, a, e)| (atom_public(1, m, a), e))
                .collect(),
            residual: None,
        }
    }

    #[test]
    fn recovers_each_constructed_quotient() {
        let cases: Vec<(Coeff, i64, Vec<(i64, i64, i32)>)> = vec![
            (Coeff::one(), 0, vec![(1, 0, -1), (2, 1, 2)]),
            (Coeff::one(), 0, vec![(2, 1, -1), (4, 0, 1)]),
            (Coeff::one(), 0, vec![(5, 0, 2), (5, 1, -2), (5, 2, 1)]),
            (Coeff::one(), 0, vec![(1, 0, -1), (7, 3, 2)]),
            (Coeff::one(), 1, vec![(1, 0, -1), (7, 1, 2)]),
            (Coeff::one(), 0, vec![(1, 0, -1), (7, 2, 2)]),
            (Coeff::one(), 0, vec![(2, 0, 2), (4, 0, -1), (4, 1, -1)]),
            (Coeff::one(), 0, vec![(1, 0, 1), (2, 0, 1)]),
            (Coeff::one(), 0, vec![(11, 2, -1), (11, 5, 1)]),
            (coeff_ratio(3, 2), -2, vec![(13, 6, 2)]),
        ];
        let bounds = RecognizerBounds::default();
        for (coeff, sigma, factors) in cases {
            let target = quotient(coeff, sigma, &factors);
            let input = target.to_series(48).unwrap();
            let results = theta_recognize(&input, &bounds);
            assert!(
                results.iter().any(|r| *r == target),
                "constructed quotient not recovered: {target}, got {:?}",
                results.iter().map(|r| r.to_string()).collect::<Vec<_>>()
            );
            for r in &results {
                let back = r.to_series(48).unwrap();
                assert!(input.sub(&back).unwrap().is_zero(), "uncertified: {r}");
            }
        }
    }

    #[test]
    fn squares_series_has_no_pure_quotient_match() {
        let mut f = QSeries::zero(1, 46);
        let mut n = 0;
        while n * n < 46 {
            f.add_term_num(n * n, Coeff::one());
            n += 1;
        }
        let results = theta_recognize(&f, &RecognizerBounds::default());
        assert!(!results.is_empty());
        assert!(results.iter().all(|r| r.residual.is_some()));
        let bare = results
            .iter()
            .find(|r| r.factors.is_empty())
            .expect("progression fit without any quotient factor");
        assert_eq!(
            bare.residual.as_ref().unwrap(),
            &vec![Progression { sign: 1, a2: ex(1), a1: ex(0), a0: ex(0) }]
        );
        assert_eq!(bare.to_string(), "sum(n>=0) q^(n^2)");
    }

    #[test]
    fn recognizes_quotient_times_partial_theta() {
        // q * (J_4 / J_{1,2}) * (sum q^(3n^2+2n) - q * sum q^(3n^2+4n+1))
        let quot = theta_cap_j_eta(1, ex(4), 56)
            .unwrap()
            .mul(&theta_cap_j(1, ex(1), ex(2), ThetaKind::Plain, 56).unwrap().invert().unwrap())
            .unwrap();
        let pt_a = partial_theta(1, &ParamValue::new(-Coeff::one(), ex(-1)), ex(6), 56).unwrap();
        let pt_b = partial_theta(1, &ParamValue::new(-Coeff::one(), ex(1)), ex(6), 56).unwrap();
        let inner = pt_a
            .mul_monomial_num(&Coeff::one(), 1)
            .sub(&pt_b.mul_monomial_num(&Coeff::one(), 2))
            .unwrap();
        let f = quot.mul(&inner).unwrap().truncate_num(48);

        let results = theta_recognize(&f, &RecognizerBounds::default());
        assert!(results.iter().all(|r| r.residual.is_some()));
        let hit = results
            .iter()
            .find(|r| {
                r.factors
                    == vec![
                        (ThetaAtom::Theta(ex(1), ex(2)), -1),
                        (ThetaAtom::Eta(ex(4)), 1),
                    ]
            })
            .expect("J_4/J_{1,2} quotient not reported");
        assert_eq!(
            hit.residual.as_ref().unwrap(),
            &vec![
                Progression { sign: 1, a2: ex(3), a1: ex(2), a0: ex(1) },
                Progression { sign: -1, a2: ex(3), a1: ex(4), a0: ex(2) },
            ]
        );
        let back = hit.to_series(41).unwrap();
        assert!(f.equal_to_order(&back, 41).unwrap());
        assert_eq!(
            hit.to_string(),
            "Jm(4) / J(1,2) * (sum(n>=0) q^(3*n^2 + 2*n + 1) - sum(n>=0) q^(3*n^2 + 4*n + 2))"
        );
    }

    #[test]
    fn splits_alternating_progression_by_sign() {
        // sum (-1)^n q^(2n(n+1)) = sum q^(8k^2+4k) - sum q^(8k^2+12k+4)
        let f = partial_theta(1, &ParamValue::new(Coeff::one(), ex(0)), ex(4), 90).unwrap();
        let results = theta_recognize(&f, &RecognizerBounds::default());
        let bare = results
            .iter()
            .find(|r| r.factors.is_empty() && r.residual.is_some())
            .expect("bare progression fit");
        assert_eq!(
            bare.residual.as_ref().unwrap(),
            &vec![
                Progression { sign: 1, a2: ex(8), a1: ex(4), a0: ex(0) },
                Progression { sign: -1, a2: ex(8), a1: ex(12), a0: ex(4) },
            ]
        );
    }

    #[test]
    fn constant_and_zero_inputs() {
        let five = QSeries::constant(1, coeff_int(5), 30);
        let results = theta_recognize(&five, &RecognizerBounds::default());
        assert!(results
            .iter()
            .any(|r| r.factors.is_empty() && r.residual.is_none() && r.coeff == coeff_int(5)));
        assert!(theta_recognize(&QSeries::zero(1, 30), &RecognizerBounds::default()).is_empty());
    }

    #[test]
    fn bounds_cut_off_large_moduli() {
        let target = quotient(Coeff::one(), 0, &[(2, 1, -1), (4, 0, 1)]);
        let input = target.to_series(48).unwrap();
        let bounds = RecognizerBounds {
            max_modulus: 3,
            residual_max_modulus: 3,
            ..RecognizerBounds::default()
        };
        let results = theta_recognize(&input, &bounds);
        assert!(results.iter().all(|r| r.residual.is_some()));
        for r in &results {
            for (atom, _) in &r.factors {
                let m = match atom {
                    ThetaAtom::Eta(m) | ThetaAtom::Theta(_, m) => *m,
                };
                assert!(m <= ex(3));
            }
        }
    }

    #[test]
    fn output_is_deterministic_and_sorted() {
        let target = quotient(Coeff::one(), 0, &[(1, 0, -1), (2, 1, 2)]);
        let input = target.to_series(44).unwrap();
        let bounds = RecognizerBounds::default();
        let first = theta_recognize(&input, &bounds);
        let second = theta_recognize(&input, &bounds);
        assert_eq!(first, second);
        assert!(!first.is_empty());
        let keys: Vec<_> = first.iter().map(Factorization::sort_key).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        // equivalent rewritings are certified too: J_{1,2}^2/J_1 = J_1 J_{1,2}/J_2
        assert!(first
            .iter()
            .any(|r| r.factors
                == vec![
                    (ThetaAtom::Eta(ex(1)), 1),
                    (ThetaAtom::Eta(ex(2)), -1),
                    (ThetaAtom::Theta(ex(1), ex(2)), 1),
                ]));
    }
}
