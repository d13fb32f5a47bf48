//! Shared machinery for corpus record builders: sample plans, stall-based
//! summation, the common-denominator Eulerian summer, Cesàro regularization
//! for conditionally convergent alternating sums, and the cube-root-of-unity
//! extractors used by the order-ten records.

use num::One;

use std::cell::RefCell;
use std::sync::Arc;

use crate::qfuncs::{appell_m, partial_theta, theta_cap_j, theta_j, with_padding, ThetaKind};
use crate::series::{
    coeff_int, coeff_ratio, exp_num, Coeff, Error, Exp, ParamValue, Poly, QSeries, Result,
};

use super::{Builder, Sample};

/// `J_(1,2)^2 / (2 j(-x;q))`, the theta correction that accompanies
/// `m(x,q,-1)` in the Lost Notebook evaluations.
pub(crate) fn half_theta_correction(x: &ParamValue, o: i64) -> Result<QSeries> {
    let x = x.clone();
    with_padding(o, move |w| {
        let j12 = theta_cap_j(1, ei(1), ei(2), ThetaKind::Plain, w)?;
        let den = theta_j(1, &x.neg(), ei(1), w)?;
        Ok(j12.pow(2)?.div(&den)?.scale(&coeff_ratio(1, 2)))
    })
}

pub(crate) fn ei(n: i64) -> Exp {
    Exp::from_integer(n)
}

/// `c * q^e` with an integer coefficient.
pub(crate) fn pv(c: i64, e: i64) -> ParamValue {
    ParamValue::monomial(c, e, 1)
}

/// `(cn/cd) * q^e`.
pub(crate) fn pvr(cn: i64, cd: i64, e: i64) -> ParamValue {
    ParamValue::new(coeff_ratio(cn, cd), ei(e))
}

pub(crate) fn builder<F>(f: F) -> Builder
where
    F: Fn(&Sample, i64) -> Result<QSeries> + Send + Sync + 'static,
{
    Arc::new(f)
}

/// The frozen specialization points: five constants and two points off the
/// constant lattice (`2q`, `3q^2`), so parametric checks also exercise
/// `q`-dependent bindings.
pub(crate) fn standard_points() -> Vec<ParamValue> {
    vec![
        pv(2, 0),
        pv(3, 0),
        pv(5, 0),
        pv(-2, 0),
        pvr(1, 2, 0),
        pv(2, 1),
        pv(3, 2),
    ]
}

/// One sample per standard point binding `name`, minus excluded points
/// (poles of the identity being recorded).
pub(crate) fn samples_for(name: &str, exclude: impl Fn(&ParamValue) -> bool) -> Vec<Sample> {
    standard_points()
        .into_iter()
        .filter(|p| !exclude(p))
        .map(|p| Sample::point(name, p))
        .collect()
}

/// Samples binding two named points per entry.
pub(crate) fn pair_samples(
    n1: &str,
    n2: &str,
    pts: &[(ParamValue, ParamValue)],
) -> Vec<Sample> {
    pts.iter()
        .map(|(a, b)| Sample::point(n1, a.clone()).with_point(n2, b.clone()))
        .collect()
}

/// `sum_{n >= n0} term(n)`, truncated at order numerator `order`: terms are
/// requested in increasing order of `n` (exactly once each, so `term` may
/// carry running state) until three consecutive terms contribute nothing
/// below the truncation.  Errors as non-convergent if the stall never comes.
pub(crate) fn sum_terms(
    lattice: u32,
    order: i64,
    n0: i64,
    mut term: impl FnMut(i64) -> Result<QSeries>,
) -> Result<QSeries> {
    let mut acc = QSeries::zero(lattice, order);
    let mut stall = 0;
    let mut n = n0;
    let cap = n0 + 8 * order.max(1) + 64;
    while stall < 3 {
        if n > cap {
            return Err(Error::NonConvergent(format!(
                "summation index reached {cap} with terms still contributing"
            )));
        }
        let t = term(n)?;
        if t.valuation_num().is_some_and(|v| v < order) {
            acc = acc.add(&t.truncate_num(order))?;
            stall = 0;
        } else {
            stall += 1;
        }
        n += 1;
    }
    Ok(acc)
}

/// `sum_{n >= n0} numer(n) / (b_{n0} b_{n0+1} ... b_n)` where
/// `b_k = extend(k)` are the denominator factors entering at index `k`
/// (exact Laurent binomial products with unit constant term).  The sum is
/// accumulated over the running common denominator — `T <- T*b + numer`,
/// `D <- D*b` — and divided once at the end, so each step costs a short
/// polynomial multiply instead of a series inversion.  Both closures are
/// called exactly once per index, in increasing order.
pub(crate) fn eulerian_sum(
    lattice: u32,
    order: i64,
    n0: i64,
    mut numer: impl FnMut(i64) -> Result<QSeries>,
    mut extend: impl FnMut(i64) -> Result<Poly>,
) -> Result<QSeries> {
    let mut t = QSeries::zero(lattice, order);
    let mut d = QSeries::one(lattice, order);
    let mut stall = 0;
    let mut n = n0;
    let cap = n0 + 8 * order.max(1) + 64;
    while stall < 3 {
        if n > cap {
            return Err(Error::NonConvergent(format!(
                "summation index reached {cap} with numerators still contributing"
            )));
        }
        let b = extend(n)?;
        let is_unit = b.degree_num() == Some(0) && b.low_num() == Some(0)
            && b.coefficient_num(0).is_one();
        if !is_unit {
            let bs = b.to_series(order);
            t = t.mul(&bs)?;
            d = d.mul(&bs)?;
        }
        let add = numer(n)?;
        if add.valuation_num().is_some_and(|v| v < order) {
            t = t.add(&add.truncate_num(order))?;
            stall = 0;
        } else {
            stall += 1;
        }
        n += 1;
    }
    t.div(&d)
}

/// Regularized `sum_{n >= 0} (-1)^n u_n` for `u_n` converging
/// coefficientwise to `u_inf`: the Cesàro/Abel value
/// `u_inf/2 + sum_{n >= 0} (-1)^n (u_n - u_inf)`, whose tail terminates
/// because the differences vanish below the truncation.
pub(crate) fn cesaro_alternating(
    order: i64,
    u_inf: &QSeries,
    mut u: impl FnMut(i64) -> Result<QSeries>,
) -> Result<QSeries> {
    let mut acc = u_inf.scale(&coeff_ratio(1, 2));
    let mut stall = 0;
    let mut n = 0;
    let cap = 8 * order.max(1) + 64;
    while stall < 3 {
        if n > cap {
            return Err(Error::NonConvergent(format!(
                "alternating tail still moving at index {cap}"
            )));
        }
        let diff = u(n)?.sub(u_inf)?;
        if diff.valuation_num().is_some_and(|v| v < order) {
            let signed = if n % 2 == 0 { diff } else { diff.neg() };
            acc = acc.add(&signed.truncate_num(order))?;
            stall = 0;
        } else {
            stall += 1;
        }
        n += 1;
    }
    Ok(acc)
}

/// Keep the exponents of `f` congruent to `k mod 3` with weight `w[k]`,
/// then read the result as a series in `q^(1/3)` evaluated back at `q`
/// (exponent numerator `k` becomes the exponent `k/3` on lattice 3).  This
/// is the omega-combination extractor behind the cube-root-of-unity
/// identities: applied to the lattice-1 expansion of `F`, weight vectors
/// like `[0, 1, -1]` realize sums such as
/// `(F(w q^(1/3)) - F(w^2 q^(1/3))) / (w - w^2)` for `w = e^(2 pi i/3)`.
pub(crate) fn cube_root_weighted(f: &QSeries, w: [i64; 3]) -> Result<QSeries> {
    let weights: Vec<Coeff> = w.iter().map(|&c| coeff_int(c)).collect();
    f.dissect_weighted(3, &weights)
        .refine_lattice(3)
        .rescale(Exp::new(1, 3))
}

/// `f(q^3)` on lattice 3: exponent numerator `k` becomes value `3k`.
pub(crate) fn cube_arg(f: &QSeries) -> Result<QSeries> {
    f.refine_lattice(3).rescale(Exp::from_integer(3))
}

/// The exact Laurent binomial `1 - v * q^extra` (`extra` in numerator
/// units) as a polynomial on `lattice`.
pub(crate) fn one_minus(lattice: u32, v: &ParamValue, extra: i64) -> Result<Poly> {
    let e = exp_num(v.exp, lattice)?;
    let mut p = Poly::one(lattice);
    p.add_term_num(e + extra, -v.coeff.clone());
    Ok(p)
}

/// Multiply `f` by an exact Laurent polynomial, keeping as much of `f`'s
/// truncation window as the polynomial's valuation allows.
pub(crate) fn mul_poly(f: &QSeries, p: &Poly) -> Result<QSeries> {
    let span = p.degree_num().unwrap_or(0) - p.low_num().unwrap_or(0);
    f.mul(&p.to_series(f.order_num().saturating_add(span.abs() + 1)))
}

/// `(1 + x^(-1)) * f`, where `mk` builds `f` at an order compensated for
/// the inverse power's negative exponent.
pub(crate) fn one_plus_inv_times(
    lattice: u32,
    x: &ParamValue,
    o: i64,
    mk: impl FnOnce(i64) -> Result<QSeries>,
) -> Result<QSeries> {
    let xi = x.inv();
    let e = exp_num(xi.exp, lattice)?;
    let f = mk(o - e.min(0))?;
    let mut p = Poly::one(lattice);
    p.add_term_num(e, xi.coeff.clone());
    mul_poly(&f, &p)
}

/// `constant + sum_i c_i q^(e_i) m(x_i, q^base, z_i)` with monomial
/// `x_i = xc q^xe`, `z_i = zc q^ze`: the workhorse shape of Appell-Lerch
/// evaluations. Entries are `(c, e, (xc, xe), (zc, ze))`.
pub(crate) fn m_combo(
    o: i64,
    base: i64,
    constant: i64,
    entries: &[(i64, i64, (i64, i64), (i64, i64))],
) -> Result<QSeries> {
    with_padding(o, |w| {
        let mut acc = QSeries::constant(1, coeff_int(constant), w);
        for &(c, e, (xc, xe), (zc, ze)) in entries {
            let x = ParamValue::monomial(xc, xe, 1);
            let z = ParamValue::monomial(zc, ze, 1);
            let m = appell_m(1, &x, ei(base), &z, w + e.abs() + 1)?;
            acc = acc.add(&m.mul_monomial_num(&coeff_int(c), e).truncate_num(w))?;
        }
        Ok(acc)
    })
}

/// `constant + sum_i c_i q^(e_i) pt(xc_i q^(xe_i); q^base)` where `pt` is
/// the one-sided partial theta `sum_(n>=0) (-1)^n x^n q^(base*n(n+1)/2)`.
/// Entries are `(c, e, (xc, xe))`.
pub(crate) fn pt_combo(
    o: i64,
    base: i64,
    constant: i64,
    entries: &[(i64, i64, (i64, i64))],
) -> Result<QSeries> {
    let mut acc = QSeries::constant(1, coeff_int(constant), o);
    for &(c, e, (xc, xe)) in entries {
        let x = ParamValue::monomial(xc, xe, 1);
        let p = partial_theta(1, &x, ei(base), o + e.abs() + 1)?;
        acc = acc.add(&p.mul_monomial_num(&coeff_int(c), e).truncate_num(o))?;
    }
    Ok(acc)
}

/// `sum_(n>=0) mono(n) * (q)_n / (q)_(2n+mu)` for `mu in {0,1}`: the common
/// fifth/seventh order Eulerian shape after writing `(q^(n+1);q)_(n+mu)` as
/// a quotient of complete Pochhammers. `mono(n)` lists `(c, e)` monomials.
pub(crate) fn balanced_poch_sum(
    o: i64,
    mu: i64,
    mono: impl Fn(i64) -> Vec<(Coeff, i64)>,
) -> Result<QSeries> {
    let num = RefCell::new(QSeries::one(1, o));
    eulerian_sum(
        1,
        o,
        0,
        |n| {
            if n > 0 {
                let up = num.borrow().mul_binomial_num(&Coeff::one(), n);
                *num.borrow_mut() = up;
            }
            let mut t = QSeries::zero(1, o);
            for (c, e) in mono(n) {
                t = t.add(&num.borrow().mul_monomial_num(&c, e).truncate_num(o))?;
            }
            Ok(t)
        },
        |n| {
            let mut p = Poly::one(1);
            if mu == 0 {
                if n > 0 {
                    p = p
                        .mul_binomial_num(&Coeff::one(), 2 * n - 1)
                        .mul_binomial_num(&Coeff::one(), 2 * n);
                }
            } else if n == 0 {
                p = p.mul_binomial_num(&Coeff::one(), 1);
            } else {
                p = p
                    .mul_binomial_num(&Coeff::one(), 2 * n)
                    .mul_binomial_num(&Coeff::one(), 2 * n + 1);
            }
            Ok(p)
        },
    )
}

/// `sum_(n>=0) mono(n) / (-q;q)_(2n+mu)` for `mu in {0,1}`; `mono(n)` lists
/// `(c, e)` monomials.
pub(crate) fn neg_poch_sum(
    o: i64,
    mu: i64,
    mono: impl Fn(i64) -> Vec<(Coeff, i64)>,
) -> Result<QSeries> {
    eulerian_sum(
        1,
        o,
        0,
        |n| {
            let mut t = QSeries::zero(1, o);
            for (c, e) in mono(n) {
                t.add_term_num(e, c);
            }
            Ok(t)
        },
        |n| {
            let mut p = Poly::one(1);
            if mu == 0 {
                if n > 0 {
                    p = p
                        .mul_binomial_num(&-Coeff::one(), 2 * n - 1)
                        .mul_binomial_num(&-Coeff::one(), 2 * n);
                }
            } else if n == 0 {
                p = p.mul_binomial_num(&-Coeff::one(), 1);
            } else {
                p = p
                    .mul_binomial_num(&-Coeff::one(), 2 * n)
                    .mul_binomial_num(&-Coeff::one(), 2 * n + 1);
            }
            Ok(p)
        },
    )
}
