//! G7 — the Entry 6.3.x family from Andrews-Berndt Part II (Ramanujan's
//! Lost Notebook): six partial-theta expansions of Eulerian series with
//! symmetric parameter pairs `(-aq, -q/a)`, their `q -> 1/q` duals of both
//! types, Hecke-type double-sum forms, and the two bilateral `5.4.x`
//! partial-theta companions.
//!
//! Every record is sampled over the standard specialization points for
//! `a`. The "second type" duals arise from inverting `q` in the *tail*
//! sums (numerator Pochhammers); those carry the `dual-second-type` tag.

use num::One;

use std::cell::RefCell;

use crate::qfuncs::{
    appell_m, hecke_f, partial_theta, pochhammer_inf, theta_cap_j, theta_cap_j_eta, theta_j,
    universal_g, with_padding, ThetaKind,
};
use crate::series::{coeff_int, coeff_ratio, exp_num, Coeff, ParamValue, Poly, QSeries, Result};

use super::build::{
    builder, cesaro_alternating, ei, eulerian_sum, half_theta_correction, mul_poly, one_minus,
    pv, samples_for, sum_terms,
};
use super::{g1, IdentityRecord, Sample, Status};

fn sign(n: i64) -> Coeff {
    if n.rem_euclid(2) == 1 {
        -Coeff::one()
    } else {
        Coeff::one()
    }
}

/// `1 + a` as an exact Laurent polynomial.
fn one_plus(a: &ParamValue) -> Result<Poly> {
    one_minus(1, &a.neg(), 0)
}

/// `(1 + a q^k)(1 + q^k / a)` as an exact Laurent polynomial.
fn sym_pair(a: &ParamValue, k: i64) -> Result<Poly> {
    one_minus(1, &a.neg(), k)?.mul(&one_minus(1, &a.inv().neg(), k)?)
}

/// `(1 - a q^k)(1 - q^k / a)`.
fn sym_pair_pos(a: &ParamValue, k: i64) -> Result<Poly> {
    one_minus(1, a, k)?.mul(&one_minus(1, &a.inv(), k)?)
}

/// `sum_(n>=0) mono(n) * P_n / D_n` where `P_n` multiplies in
/// `num_step(k)` for `1 <= k <= n` and `D_n` accumulates `den_step(k)`
/// for `0 <= k <= n`; `mono(n)` is a single monomial `(c, e)`.
fn product_sum(
    o: i64,
    mono: impl Fn(i64) -> (Coeff, i64),
    num_step: impl Fn(i64) -> Result<Option<Poly>>,
    den_step: impl Fn(i64) -> Result<Poly>,
) -> Result<QSeries> {
    let running = RefCell::new(QSeries::one(1, o));
    eulerian_sum(
        1,
        o,
        0,
        |n| {
            if n > 0 {
                if let Some(p) = num_step(n)? {
                    let up = mul_poly(&running.borrow(), &p)?;
                    *running.borrow_mut() = up;
                }
            }
            let (c, e) = mono(n);
            Ok(running.borrow().mul_monomial_num(&c, e))
        },
        den_step,
    )
}

/// `(1 + 1/a) * build(w)` with the working order padded until the product
/// is exact to `o`.
fn prefixed(a: &ParamValue, o: i64, build: impl Fn(i64) -> Result<QSeries>) -> Result<QSeries> {
    let p = one_minus(1, &a.inv().neg(), 0)?;
    with_padding(o, |w| mul_poly(&build(w)?, &p))
}

/// `sum_(n>=0) a^(alpha n + beta) q^(base_exp(n)) (1 - a^gamma q^(gap(n)))`
/// — the recurring gapped partial-theta shape of the 6.3.x right sides.
fn gapped_theta(
    o: i64,
    a: &ParamValue,
    alpha: i64,
    beta: i64,
    base_exp: impl Fn(i64) -> i64,
    gamma: i64,
    gap: impl Fn(i64) -> i64,
) -> Result<QSeries> {
    sum_terms(1, o, 0, |n| {
        let lead = a.pow(alpha * n + beta);
        let el = exp_num(lead.exp, 1)?;
        let mut t = QSeries::monomial_num(1, lead.coeff.clone(), base_exp(n) + el, o);
        let tail = lead.mul(&a.pow(gamma));
        let et = exp_num(tail.exp, 1)?;
        t.add_term_num(base_exp(n) + gap(n) + et, -tail.coeff.clone());
        Ok(t)
    })
}

/// `sum_(n>=0) (-1)^n (a^n + a^(-n-1)) q^(expo(n))`.
fn pm_power_theta(a: &ParamValue, o: i64, expo: impl Fn(i64) -> i64) -> Result<QSeries> {
    sum_terms(1, o, 0, |n| {
        let s = sign(n);
        let hi = a.pow(n);
        let lo = a.pow(-n - 1);
        let mut t = QSeries::zero(1, o);
        t.add_term_num(expo(n) + exp_num(hi.exp, 1)?, s.clone() * &hi.coeff);
        t.add_term_num(expo(n) + exp_num(lo.exp, 1)?, s * &lo.coeff);
        Ok(t)
    })
}

/// `c * a^(apow) * q^e * m(x, q^(base), z)` summed over `terms`, sharing
/// one padded working order.
struct MTerm {
    c: i64,
    apow: i64,
    e: i64,
    base: i64,
    x: ParamValue,
    z: ParamValue,
}

fn m_terms(a: &ParamValue, o: i64, terms: &[MTerm]) -> Result<QSeries> {
    with_padding(o, |w| {
        let mut acc = QSeries::zero(1, w);
        for t in terms {
            let m = appell_m(1, &t.x, ei(t.base), &t.z, w + t.e.abs() + 4)?;
            let lead = a.pow(t.apow);
            let e = t.e + exp_num(lead.exp, 1)?;
            acc = acc.add(
                &m.mul_monomial_num(&(coeff_int(t.c) * &lead.coeff), e)
                    .truncate_num(w),
            )?;
        }
        Ok(acc)
    })
}

/// `c * a^(apow) q^e f_(3,3,2)(-q^(xe), -a^2 q^(ye), q^4)` summed over
/// `terms`, divided by `(q)_inf`.
fn f332_combo(a: &ParamValue, o: i64, terms: &[(i64, i64, i64, i64, i64)]) -> Result<QSeries> {
    with_padding(o, |w| {
        let j1 = theta_cap_j_eta(1, ei(1), w)?;
        let mut acc = QSeries::zero(1, w);
        for &(c, apow, e, xe, ye) in terms {
            let y = a.pow(2).mul(&pv(-1, ye));
            let f = hecke_f(1, (3, 3, 2), &pv(-1, xe), &y, ei(4), w)?;
            let lead = a.pow(apow);
            let shift = e + exp_num(lead.exp, 1)?;
            acc = acc.add(
                &f.mul_monomial_num(&(coeff_int(c) * &lead.coeff), shift)
                    .truncate_num(w),
            )?;
        }
        acc.div(&j1)
    })
}

// ---------------------------------------------------------------------------
// Left sides (the `f(a)` tail sums are shared with the functional-equation
// group, so they are visible to the sibling modules).
// ---------------------------------------------------------------------------

/// `sum q^n / ((-aq)_n (-q/a)_n)`.
fn lhs_632(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        product_sum(
            w,
            |n| (Coeff::one(), n),
            |_| Ok(None),
            |n| if n == 0 { Ok(Poly::one(1)) } else { sym_pair(a, n) },
        )
    })
}

/// `sum q^(n^2) / ((-aq)_n (-q/a)_n)`.
fn lhs_632_dual(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        product_sum(
            w,
            |n| (Coeff::one(), n * n),
            |_| Ok(None),
            |n| if n == 0 { Ok(Poly::one(1)) } else { sym_pair(a, n) },
        )
    })
}

/// `(1 + 1/a) sum_(n>=0) q^(n+1) (-q/a)_n (-aq)_n` — the tail sum whose
/// functional equation drives the 6.3.2 second-type dual.
pub(super) fn tail_632(a: &ParamValue, o: i64) -> Result<QSeries> {
    prefixed(a, o, |w| {
        product_sum(
            w,
            |n| (Coeff::one(), n + 1),
            |n| sym_pair(a, n).map(Some),
            |_| Ok(Poly::one(1)),
        )
    })
}

/// `sum q^(2n+1) / ((-aq;q^2)_(n+1) (-q/a;q^2)_(n+1))`.
fn lhs_634(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        product_sum(
            w,
            |n| (Coeff::one(), 2 * n + 1),
            |_| Ok(None),
            |n| sym_pair(a, 2 * n + 1),
        )
    })
}

/// `sum q^(2n^2+2n+1) / ((-aq;q^2)_(n+1) (-q/a;q^2)_(n+1))`.
fn lhs_634_dual(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        product_sum(
            w,
            |n| (Coeff::one(), 2 * n * n + 2 * n + 1),
            |_| Ok(None),
            |n| sym_pair(a, 2 * n + 1),
        )
    })
}

/// `sum_(n>=0) q^(2n+1) (-aq;q^2)_n (-q/a;q^2)_n` (no prefactor).
pub(super) fn f_634(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        product_sum(
            w,
            |n| (Coeff::one(), 2 * n + 1),
            |n| sym_pair(a, 2 * n - 1).map(Some),
            |_| Ok(Poly::one(1)),
        )
    })
}

/// `(1+1/a) sum (q;q^2)_n q^(2n+1) / ((-aq;q^2)_(n+1) (-q/a;q^2)_(n+1))`.
fn lhs_636(a: &ParamValue, o: i64) -> Result<QSeries> {
    prefixed(a, o, |w| {
        product_sum(
            w,
            |n| (Coeff::one(), 2 * n + 1),
            |n| Ok(Some(Poly::one(1).mul_binomial_num(&Coeff::one(), 2 * n - 1))),
            |n| sym_pair(a, 2 * n + 1),
        )
    })
}

/// `(1+1/a) sum (-1)^n (q;q^2)_n q^((n+1)^2) / ((-aq;q^2)_(n+1) (-q/a;q^2)_(n+1))`.
fn lhs_636_dual(a: &ParamValue, o: i64) -> Result<QSeries> {
    prefixed(a, o, |w| {
        product_sum(
            w,
            |n| (sign(n), (n + 1) * (n + 1)),
            |n| Ok(Some(Poly::one(1).mul_binomial_num(&Coeff::one(), 2 * n - 1))),
            |n| sym_pair(a, 2 * n + 1),
        )
    })
}

/// `(1+1/a) sum q^(2n+1) (-aq;q^2)_n (-q/a;q^2)_n / (q;q^2)_(n+1)`.
pub(super) fn f_636(a: &ParamValue, o: i64) -> Result<QSeries> {
    prefixed(a, o, |w| {
        product_sum(
            w,
            |n| (Coeff::one(), 2 * n + 1),
            |n| sym_pair(a, 2 * n - 1).map(Some),
            |n| Ok(Poly::one(1).mul_binomial_num(&Coeff::one(), 2 * n + 1)),
        )
    })
}

/// `(1+1/a) sum (-q)_(2n) q^(2n+1) / ((aq;q^2)_(n+1) (q/a;q^2)_(n+1))`.
fn lhs_637(a: &ParamValue, o: i64) -> Result<QSeries> {
    prefixed(a, o, |w| {
        product_sum(
            w,
            |n| (Coeff::one(), 2 * n + 1),
            |n| {
                Ok(Some(
                    Poly::one(1)
                        .mul_binomial_num(&-Coeff::one(), 2 * n - 1)
                        .mul_binomial_num(&-Coeff::one(), 2 * n),
                ))
            },
            |n| sym_pair_pos(a, 2 * n + 1),
        )
    })
}

fn neg_poch_odd_step(n: i64) -> Result<Poly> {
    Ok(if n == 0 {
        Poly::one(1).mul_binomial_num(&-Coeff::one(), 1)
    } else {
        Poly::one(1)
            .mul_binomial_num(&-Coeff::one(), 2 * n)
            .mul_binomial_num(&-Coeff::one(), 2 * n + 1)
    })
}

/// `(1+1/a) sum (aq;q^2)_n (q/a;q^2)_n q^(2n+1) / (-q)_(2n+1)`.
pub(super) fn f_637(a: &ParamValue, o: i64) -> Result<QSeries> {
    prefixed(a, o, |w| {
        product_sum(
            w,
            |n| (Coeff::one(), 2 * n + 1),
            |n| sym_pair_pos(a, 2 * n - 1).map(Some),
            neg_poch_odd_step,
        )
    })
}

/// `(1+1/a) sum (aq;q^2)_n (q/a;q^2)_n q^n / (-q)_(2n+1)`.
fn lhs_544(a: &ParamValue, o: i64) -> Result<QSeries> {
    prefixed(a, o, |w| {
        product_sum(
            w,
            |n| (Coeff::one(), n),
            |n| sym_pair_pos(a, 2 * n - 1).map(Some),
            neg_poch_odd_step,
        )
    })
}

/// `sum (q;q^2)_n q^(2n) / ((-aq^2;q^2)_n (-q^2/a;q^2)_n)`.
fn lhs_639(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        product_sum(
            w,
            |n| (Coeff::one(), 2 * n),
            |n| Ok(Some(Poly::one(1).mul_binomial_num(&Coeff::one(), 2 * n - 1))),
            |n| if n == 0 { Ok(Poly::one(1)) } else { sym_pair(a, 2 * n) },
        )
    })
}

/// `(1+1/a) sum q^(2n+2) (-aq^2;q^2)_n (-q^2/a;q^2)_n / (q;q^2)_(n+1)`.
pub(super) fn f_639(a: &ParamValue, o: i64) -> Result<QSeries> {
    prefixed(a, o, |w| {
        product_sum(
            w,
            |n| (Coeff::one(), 2 * n + 2),
            |n| sym_pair(a, 2 * n).map(Some),
            |n| Ok(Poly::one(1).mul_binomial_num(&Coeff::one(), 2 * n + 1)),
        )
    })
}

/// `sum (q;q^2)_n q^n / ((-aq)_n (-q/a)_n)`.
fn lhs_6311(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        product_sum(
            w,
            |n| (Coeff::one(), n),
            |n| Ok(Some(Poly::one(1).mul_binomial_num(&Coeff::one(), 2 * n - 1))),
            |n| if n == 0 { Ok(Poly::one(1)) } else { sym_pair(a, n) },
        )
    })
}

/// `(1+1/a) sum (-aq)_n (-q/a)_n q^(n+1) / (q;q^2)_(n+1)`.
pub(super) fn f_6311(a: &ParamValue, o: i64) -> Result<QSeries> {
    prefixed(a, o, |w| {
        product_sum(
            w,
            |n| (Coeff::one(), n + 1),
            |n| sym_pair(a, n).map(Some),
            |n| Ok(Poly::one(1).mul_binomial_num(&Coeff::one(), 2 * n + 1)),
        )
    })
}

/// Regularized `(1+1/a) sum* (-1)^n (-aq)_n (-q/a)_n / (q;q^2)_(n+1)`.
fn lhs_543(a: &ParamValue, o: i64) -> Result<QSeries> {
    let p = one_minus(1, &a.inv().neg(), 0)?;
    with_padding(o, |w| {
        let u_inf = {
            let top1 = pochhammer_inf(1, &a.mul(&pv(-1, 1)), ei(1), w)?;
            let top2 = pochhammer_inf(1, &a.inv().mul(&pv(-1, 1)), ei(1), w)?;
            let bot = pochhammer_inf(1, &pv(1, 1), ei(2), w)?;
            top1.mul(&top2)?.div(&bot)?
        };
        let num = RefCell::new(QSeries::one(1, w));
        let den = RefCell::new(QSeries::one(1, w));
        let s = cesaro_alternating(w, &u_inf, |n| {
            if n > 0 {
                let up = mul_poly(&num.borrow(), &sym_pair(a, n)?)?;
                *num.borrow_mut() = up;
            }
            let dup = den.borrow().mul_binomial_num(&Coeff::one(), 2 * n + 1);
            *den.borrow_mut() = dup;
            num.borrow().div(&den.borrow())
        })?;
        mul_poly(&s, &p)
    })
}

// ---------------------------------------------------------------------------
// Right sides
// ---------------------------------------------------------------------------

/// `J_1 = (q)_inf`, `J_2 = (q^2;q^2)_inf`, `J_4` likewise.
fn jm(m: i64, w: i64) -> Result<QSeries> {
    theta_cap_j_eta(1, ei(m), w)
}

fn rhs_632(a: &ParamValue, o: i64) -> Result<QSeries> {
    let p = one_plus(a)?;
    with_padding(o, |w| {
        let s1 = gapped_theta(w, a, 3, 0, |n| n * (3 * n + 1) / 2, 2, |n| 2 * n + 1)?;
        let quot = jm(1, w)?.div(&theta_j(1, &a.neg(), ei(1), w)?)?;
        let pt = partial_theta(1, &a.pow(2), ei(1), w + exp_num(a.exp, 1)?.abs() + 1)?;
        let lead = a.pow(1);
        let s2 = quot
            .mul(&pt.mul_monomial_num(&lead.coeff, exp_num(lead.exp, 1)?).truncate_num(w))?;
        mul_poly(&s1.sub(&s2)?, &p)
    })
}

fn rhs_632_dual(a: &ParamValue, o: i64) -> Result<QSeries> {
    let p = one_plus(a)?;
    with_padding(o, |w| {
        let g = universal_g(1, &a.neg(), ei(1), w + exp_num(a.exp, 1)?.abs() + 1)?;
        let ag = g
            .mul_monomial_num(&a.coeff, exp_num(a.exp, 1)?)
            .truncate_num(w);
        mul_poly(&QSeries::one(1, w).sub(&ag)?, &p)
    })
}

fn rhs_632_dual_m(a: &ParamValue, o: i64) -> Result<QSeries> {
    let p = one_plus(a)?;
    with_padding(o, |w| {
        let combo = m_terms(
            a,
            w,
            &[
                MTerm {
                    c: -1,
                    apow: 0,
                    e: 0,
                    base: 3,
                    x: a.pow(-3).mul(&pv(-1, 2)),
                    z: a.pow(2),
                },
                MTerm {
                    c: 1,
                    apow: -1,
                    e: 0,
                    base: 3,
                    x: a.pow(-3).mul(&pv(-1, 1)),
                    z: a.pow(2),
                },
            ],
        )?;
        mul_poly(&QSeries::one(1, w).add(&combo)?, &p)
    })
}

fn rhs_632_second_b(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let g = universal_g(1, &a.neg(), ei(1), w + exp_num(a.exp, 1)?.abs() + 1)?;
        let ag = g
            .mul_monomial_num(&a.coeff, exp_num(a.exp, 1)?)
            .truncate_num(w);
        let quot = theta_j(1, &a.neg(), ei(1), w)?.div(&jm(1, w)?)?;
        let m = appell_m(1, &a.pow(2), ei(1), &a.inv().neg(), w + 4)?.truncate_num(w);
        ag.sub(&QSeries::one(1, w))?.add(&quot.mul(&m)?)
    })
}

fn rhs_632_second_a(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let g = universal_g(1, &a.neg(), ei(1), w + exp_num(a.exp, 1)?.abs() + 1)?;
        let ag = g
            .mul_monomial_num(&a.coeff, exp_num(a.exp, 1)?)
            .truncate_num(w);
        let quot = theta_j(1, &a.neg(), ei(1), w)?.div(&jm(1, w)?)?;
        let m = appell_m(1, &a.pow(2), ei(1), &pv(-1, 0), w + 4)?.truncate_num(w);
        let theta = {
            let ja = theta_j(1, a, ei(1), w)?;
            let jqa2 = theta_j(1, &a.pow(2).mul(&pv(1, 1)), ei(2), w)?;
            let ja4 = theta_j(1, &a.pow(4), ei(2), w)?;
            ja.pow(3)?
                .mul(&jqa2)?
                .div(&jm(2, w)?.pow(2)?)?
                .div(&ja4)?
                .scale(&coeff_ratio(1, 2))
        };
        ag.sub(&QSeries::one(1, w))?.add(&quot.mul(&m)?)?.add(&theta)
    })
}

fn rhs_632_hecke(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let f = hecke_f(1, (3, 2, 1), &pv(1, 6), &a.mul(&pv(-1, 3)), ei(1), w)?;
        let lead = a.pow(1);
        f.mul_monomial_num(&lead.coeff, 3 + exp_num(lead.exp, 1)?)
            .truncate_num(w)
            .div(&jm(1, w)?)
    })
}

fn rhs_634(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let s1 = gapped_theta(w, a, 3, 1, |n| 3 * n * n + 2 * n, 1, |n| 2 * n + 1)?;
        let quot = jm(2, w)?.div(&theta_j(1, &a.mul(&pv(-1, 1)), ei(2), w)?)?;
        let pt = partial_theta(1, &a.pow(2), ei(2), w + exp_num(a.exp, 1)?.abs() + 1)?;
        let lead = a.pow(1);
        let s2 = quot
            .mul(&pt.mul_monomial_num(&lead.coeff, exp_num(lead.exp, 1)?).truncate_num(w))?;
        s1.sub(&s2)
    })
}

fn rhs_634_dual(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let g = universal_g(1, &a.mul(&pv(-1, 1)), ei(2), w + 2)?;
        Ok(g.mul_monomial_num(&Coeff::one(), 1).truncate_num(w))
    })
}

fn rhs_634_second_a(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let head = rhs_634_dual(a, w)?.neg();
        let quot = theta_j(1, &a.mul(&pv(-1, 1)), ei(2), w)?.div(&jm(2, w)?)?;
        let m = appell_m(1, &a.pow(2), ei(2), &pv(-1, 0), w + 4)?.truncate_num(w);
        let am = quot
            .mul(&m)?
            .mul_monomial_num(&a.coeff, exp_num(a.exp, 1)?)
            .truncate_num(w);
        let theta = {
            let jaq = theta_j(1, &a.mul(&pv(1, 1)), ei(2), w)?;
            let ja2 = theta_j(1, &a.pow(2), ei(4), w)?;
            let ja4 = theta_j(1, &a.pow(4), ei(4), w)?;
            jaq.pow(3)?
                .mul(&ja2)?
                .div(&jm(4, w)?.pow(2)?)?
                .div(&ja4)?
                .scale(&coeff_ratio(1, 2))
                .mul_monomial_num(&a.coeff, exp_num(a.exp, 1)?)
                .truncate_num(w)
        };
        head.add(&am)?.sub(&theta)
    })
}

fn rhs_634_second_b(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let head = rhs_634_dual(a, w)?.neg();
        let quot = theta_j(1, &a.mul(&pv(-1, 1)), ei(2), w)?.div(&jm(2, w)?)?;
        let z = a.inv().mul(&pv(-1, 1));
        let m = appell_m(1, &a.pow(2), ei(2), &z, w + 4)?.truncate_num(w);
        let am = quot
            .mul(&m)?
            .mul_monomial_num(&a.coeff, exp_num(a.exp, 1)?)
            .truncate_num(w);
        head.add(&am)
    })
}

fn rhs_634_hecke(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let f = hecke_f(1, (3, 2, 1), &pv(1, 6), &a.mul(&pv(-1, 3)), ei(2), w)?;
        f.mul_monomial_num(&Coeff::one(), 1)
            .truncate_num(w)
            .div(&jm(2, w)?)
    })
}

fn rhs_636(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let s1 = partial_theta(1, a, ei(1), w + exp_num(a.exp, 1)?.abs() + 1)?.truncate_num(w);
        let quot = jm(1, w)?.div(&theta_j(1, &a.mul(&pv(-1, 1)), ei(2), w)?)?;
        let s2 = gapped_theta(w, a, 3, 0, |n| n * (3 * n + 1), 2, |n| 4 * n + 2)?;
        s1.sub(&quot.mul(&s2)?)
    })
}

fn rhs_636_dual(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let m = appell_m(1, a, ei(1), &pv(-1, 0), w + 4)?.truncate_num(w);
        m.sub(&half_theta_correction(a, w)?)
    })
}

fn rhs_636_second(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let m = appell_m(1, a, ei(1), &pv(-1, 0), w + 4)?.truncate_num(w);
        let quot = theta_j(1, &a.mul(&pv(-1, 1)), ei(2), w)?.div(&jm(1, w)?)?;
        let g = universal_g(1, &a.neg(), ei(2), w + exp_num(a.exp, 1)?.abs() + 1)?;
        let ag = g
            .mul_monomial_num(&a.coeff, exp_num(a.exp, 1)?)
            .truncate_num(w);
        let mid = quot.mul(&QSeries::one(1, w).sub(&ag)?)?;
        m.neg().add(&mid)?.sub(&half_theta_correction(a, w)?)
    })
}

fn rhs_636_hecke(a: &ParamValue, o: i64) -> Result<QSeries> {
    f332_combo(
        a,
        o,
        &[
            (-1, 0, 7, 19, 16),
            (1, 0, 1, 11, 8),
            (1, 1, 4, 17, 12),
            (-1, 1, 14, 25, 20),
        ],
    )
}

fn rhs_637(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let pad = exp_num(a.exp, 1)?.abs() + 1;
        let s1 = partial_theta(1, a, ei(2), w + pad)?.truncate_num(w);
        let s2 = partial_theta(1, a, ei(1), w + pad)?.truncate_num(w);
        let quot = theta_cap_j(1, ei(1), ei(4), ThetaKind::Bar, w)?
            .div(&theta_j(1, &a.mul(&pv(1, 1)), ei(2), w)?)?;
        quot.mul(&s2)?.sub(&s1)
    })
}

fn rhs_637_second(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let m2 = appell_m(1, a, ei(2), &pv(-1, 0), w + 4)?
            .truncate_num(w)
            .scale(&coeff_int(2));
        let jaq = theta_j(1, &a.mul(&pv(1, 1)), ei(2), w)?;
        let jbar = theta_cap_j(1, ei(1), ei(4), ThetaKind::Bar, w)?;
        let m1 = appell_m(1, a, ei(1), &pv(-1, 0), w + 4)?.truncate_num(w);
        let mid = jaq.div(&jbar)?.mul(&m1)?;
        let theta = {
            let j1 = jm(1, w)?;
            let j2 = jm(2, w)?;
            let jna = theta_j(1, &a.neg(), ei(1), w)?;
            j1.pow(5)?
                .div(&j2.pow(4)?)?
                .mul(&jaq)?
                .div(&jna)?
                .scale(&coeff_ratio(1, 2))
        };
        m2.sub(&mid)?.sub(&theta)
    })
}

fn rhs_637_hecke(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let f = hecke_f(1, (2, 2, 1), &a.mul(&pv(1, 3)), &pv(-1, 2), ei(1), w)?;
        let jbar = theta_cap_j(1, ei(1), ei(4), ThetaKind::Bar, w)?;
        f.mul_monomial_num(&Coeff::one(), 1).truncate_num(w).div(&jbar)
    })
}

fn rhs_639(a: &ParamValue, o: i64) -> Result<QSeries> {
    let p = one_plus(a)?;
    with_padding(o, |w| {
        let s1 = partial_theta(1, a, ei(1), w + exp_num(a.exp, 1)?.abs() + 1)?.truncate_num(w);
        let quot = jm(1, w)?.div(&theta_j(1, &a.neg(), ei(2), w)?)?;
        let s2 = gapped_theta(w, a, 3, 0, |n| 3 * n * n + 2 * n, 1, |n| 2 * n + 1)?;
        let lead = a.pow(1);
        let tail = quot
            .mul(&s2)?
            .mul_monomial_num(&lead.coeff, exp_num(lead.exp, 1)?)
            .truncate_num(w);
        mul_poly(&s1.sub(&tail)?, &p)
    })
}

fn rhs_639_dual(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let m = appell_m(1, a, ei(1), &pv(-1, 0), w + 4)?.truncate_num(w);
        m.add(&half_theta_correction(a, w)?)
    })
}

fn rhs_639_second(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let m = appell_m(1, a, ei(1), &pv(-1, 0), w + 4)?.truncate_num(w);
        let ea = exp_num(a.exp, 1)?;
        let quot = theta_j(1, &a.neg(), ei(2), w)?.div(&jm(1, w)?)?;
        let g = universal_g(1, &a.mul(&pv(-1, 1)), ei(2), w + ea.abs() + 2)?;
        let scaled = g
            .mul_monomial_num(&(Coeff::one() / &a.coeff), 1 - ea)
            .truncate_num(w);
        let mid = quot.mul(&scaled)?;
        let theta = {
            let ja = theta_j(1, a, ei(1), w)?;
            let j12 = theta_cap_j(1, ei(1), ei(2), ThetaKind::Plain, w)?;
            let ja2 = theta_j(1, &a.pow(2), ei(2), w)?;
            ja.mul(&j12)?.div(&ja2)?.scale(&coeff_ratio(1, 2))
        };
        m.neg().add(&mid)?.add(&theta)
    })
}

fn rhs_639_hecke(a: &ParamValue, o: i64) -> Result<QSeries> {
    f332_combo(
        a,
        o,
        &[
            (1, 1, 6, 19, 14),
            (-1, 0, 5, 17, 14),
            (-1, 1, 11, 23, 18),
            (1, 0, 2, 13, 10),
        ],
    )
}

fn rhs_6311(a: &ParamValue, o: i64) -> Result<QSeries> {
    let p = one_plus(a)?;
    with_padding(o, |w| {
        let pad = exp_num(a.exp, 1)?.abs() + 1;
        let s1 = partial_theta(1, a, ei(1), w + pad)?.truncate_num(w);
        let quot = theta_cap_j(1, ei(1), ei(2), ThetaKind::Plain, w)?
            .div(&theta_j(1, &a.neg(), ei(1), w)?)?;
        let s2 = partial_theta(1, &a.pow(2), ei(2), w + 2 * pad)?.truncate_num(w);
        let lead = a.pow(1);
        let tail = quot
            .mul(&s2)?
            .mul_monomial_num(&lead.coeff, exp_num(lead.exp, 1)?)
            .truncate_num(w);
        mul_poly(&s1.sub(&tail)?, &p)
    })
}

fn rhs_6311_second(a: &ParamValue, o: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let m1 = appell_m(1, a, ei(1), &pv(-1, 0), w + 4)?.truncate_num(w);
        let j12 = theta_cap_j(1, ei(1), ei(2), ThetaKind::Plain, w)?;
        let quot = theta_j(1, &a.neg(), ei(1), w)?.div(&j12)?;
        let m2 = appell_m(1, &a.pow(2), ei(2), &pv(-1, 0), w + 4)?.truncate_num(w);
        let theta = {
            let ja = theta_j(1, a, ei(1), w)?;
            let jqa2 = theta_j(1, &a.pow(2).mul(&pv(1, 1)), ei(2), w)?;
            let ja4 = theta_j(1, &a.pow(4), ei(4), w)?;
            let lead = a.pow(1);
            jm(4, w)?
                .pow(3)?
                .div(&jm(2, w)?.pow(3)?)?
                .mul(&ja)?
                .mul(&jqa2)?
                .div(&ja4)?
                .mul_monomial_num(&lead.coeff, exp_num(lead.exp, 1)?)
                .truncate_num(w)
        };
        m1.neg().add(&quot.mul(&m2)?)?.sub(&theta)
    })
}

fn rhs_543(a: &ParamValue, o: i64) -> Result<QSeries> {
    Ok(pm_power_theta(a, o, |n| n * (n + 1) / 2)?.scale(&coeff_ratio(1, 2)))
}

fn rhs_544(a: &ParamValue, o: i64) -> Result<QSeries> {
    pm_power_theta(a, o, |n| n * (n + 1))
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

struct Spec {
    id: &'static str,
    source: &'static str,
    tags: Vec<&'static str>,
    status: Status,
    order: i64,
    lhs: super::Builder,
    rhs: super::Builder,
}

fn rec(s: Spec) -> IdentityRecord {
    IdentityRecord {
        id: s.id.into(),
        source: s.source.into(),
        group: 7,
        tags: s.tags,
        status: s.status,
        lattice: 1,
        default_order: s.order,
        samples: samples_for("a", |_| false),
        lhs: s.lhs,
        rhs: s.rhs,
        alt: vec![],
        dual_of: None,
    }
}

fn param(s: &Sample) -> Result<ParamValue> {
    s.get_point("a").cloned()
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut v = Vec::new();

    // ---- Entry 6.3.2 family --------------------------------------------
    v.push(rec(Spec {
        id: "ABII-6.3.2",
        source: "Andrews-Berndt Part II, Entry 6.3.2: partial theta expansion of sum q^n/((-aq)_n(-q/a)_n)",
        tags: vec![],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| lhs_632(&param(s)?, o)),
        rhs: builder(|s, o| rhs_632(&param(s)?, o)),
    }));
    let mut r = rec(Spec {
        id: "ABII-6.3.2-dual",
        source: "q -> 1/q dual of Entry 6.3.2: the universal mock theta function g(-a,q)",
        tags: vec![],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| lhs_632_dual(&param(s)?, o)),
        rhs: builder(|s, o| rhs_632_dual(&param(s)?, o)),
    });
    r.alt = vec![(
        "appell-combination".into(),
        builder(|s, o| rhs_632_dual_m(&param(s)?, o)),
    )];
    v.push(r);
    v.push(rec(Spec {
        id: "ABII-6.3.2-2ndDualB",
        source: "second-type dual of Entry 6.3.2: tail sum f(a) via g, a theta quotient, and m(a^2,q,-1/a)",
        tags: vec!["dual-second-type"],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| tail_632(&param(s)?, o)),
        rhs: builder(|s, o| rhs_632_second_b(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-6.3.2-2ndDualA",
        source: "second-type dual of Entry 6.3.2 split through m(a^2,q,-1) plus an explicit theta term",
        tags: vec!["dual-second-type"],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| tail_632(&param(s)?, o)),
        rhs: builder(|s, o| rhs_632_second_a(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-6.3.2-hecke",
        source: "Hecke-type double sum form of the 6.3.2 tail (Lovejoy): 1 + f(a) = a q^3 f_(3,2,1)(q^6,-aq^3,q)/J_1",
        tags: vec![],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| {
            let a = param(s)?;
            tail_632(&a, o)?.add(&QSeries::one(1, o))
        }),
        rhs: builder(|s, o| rhs_632_hecke(&param(s)?, o)),
    }));

    // ---- Entry 6.3.4 family --------------------------------------------
    v.push(rec(Spec {
        id: "ABII-6.3.4",
        source: "Andrews-Berndt Part II, Entry 6.3.4: partial theta expansion of sum q^(2n+1)/((-aq;q^2)_(n+1)(-q/a;q^2)_(n+1))",
        tags: vec![],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| lhs_634(&param(s)?, o)),
        rhs: builder(|s, o| rhs_634(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-6.3.4-dual",
        source: "q -> 1/q dual of Entry 6.3.4: q g(-aq, q^2)",
        tags: vec![],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| lhs_634_dual(&param(s)?, o)),
        rhs: builder(|s, o| rhs_634_dual(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-6.3.4-2ndDualA",
        source: "second-type dual of Entry 6.3.4 split through m(a^2,q^2,-1) plus an explicit theta term",
        tags: vec!["dual-second-type"],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| f_634(&param(s)?, o)),
        rhs: builder(|s, o| rhs_634_second_a(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-6.3.4-2ndDualB",
        source: "second-type dual of Entry 6.3.4 via m(a^2,q^2,-q/a)",
        tags: vec!["dual-second-type"],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| f_634(&param(s)?, o)),
        rhs: builder(|s, o| rhs_634_second_b(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-6.3.4-hecke",
        source: "Hecke-type double sum form of the 6.3.4 tail (Lovejoy): f(a) = q f_(3,2,1)(q^6,-aq^3,q^2)/J_2",
        tags: vec![],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| f_634(&param(s)?, o)),
        rhs: builder(|s, o| rhs_634_hecke(&param(s)?, o)),
    }));

    // ---- Entry 6.3.6 family --------------------------------------------
    v.push(rec(Spec {
        id: "ABII-6.3.6",
        source: "Andrews-Berndt Part II, Entry 6.3.6: partial theta expansion of the (q;q^2)_n-weighted symmetric sum",
        tags: vec![],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| lhs_636(&param(s)?, o)),
        rhs: builder(|s, o| rhs_636(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-6.3.6-dual",
        source: "q -> 1/q dual of Entry 6.3.6: m(a,q,-1) minus the half theta correction (the Lost Notebook page 5 identity with x = a)",
        tags: vec![],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| lhs_636_dual(&param(s)?, o)),
        rhs: builder(|s, o| rhs_636_dual(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-6.3.6-dualtypeII",
        source: "second-type dual of Entry 6.3.6 (no short proof known; checked numerically)",
        tags: vec!["dual-second-type"],
        status: Status::NumericOnly,
        order: 50,
        lhs: builder(|s, o| f_636(&param(s)?, o)),
        rhs: builder(|s, o| rhs_636_second(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-6.3.6-hecke332",
        source: "Hecke-type f_(3,3,2) form of the 6.3.6 tail sum",
        tags: vec![],
        status: Status::Sampled,
        order: 40,
        lhs: builder(|s, o| f_636(&param(s)?, o)),
        rhs: builder(|s, o| rhs_636_hecke(&param(s)?, o)),
    }));

    // ---- Entry 6.3.7 family --------------------------------------------
    v.push(rec(Spec {
        id: "ABII-6.3.7",
        source: "Andrews-Berndt Part II, Entry 6.3.7: partial theta expansion of the (-q)_(2n)-weighted sum",
        tags: vec![],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| lhs_637(&param(s)?, o)),
        rhs: builder(|s, o| rhs_637(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-6.3.7-dualtypeII",
        source: "second-type dual of Entry 6.3.7: two Appell-Lerch terms and a theta quotient",
        tags: vec!["dual-second-type"],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| f_637(&param(s)?, o)),
        rhs: builder(|s, o| rhs_637_second(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-6.3.7-hecke221",
        source: "Hecke-type f_(2,2,1) form of the 6.3.7 tail: f(a) = q f_(2,2,1)(aq^3,-q^2,q)/Jbar_(1,4)",
        tags: vec![],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| f_637(&param(s)?, o)),
        rhs: builder(|s, o| rhs_637_hecke(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-5.4.4",
        source: "Andrews-Berndt Part II, Entry 5.4.4: the 6.3.7-type sum at weight q^n is a bilateral partial theta",
        tags: vec![],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| lhs_544(&param(s)?, o)),
        rhs: builder(|s, o| rhs_544(&param(s)?, o)),
    }));

    // ---- Entry 6.3.9 family --------------------------------------------
    v.push(rec(Spec {
        id: "ABII-6.3.9",
        source: "Andrews-Berndt Part II, Entry 6.3.9: partial theta expansion of the (q;q^2)_n-weighted sum with (-aq^2;q^2)_n denominators",
        tags: vec![],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| lhs_639(&param(s)?, o)),
        rhs: builder(|s, o| rhs_639(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-6.3.9-dual",
        source: "q -> 1/q dual of Entry 6.3.9: m(a,q,-1) plus the half theta correction (Lost Notebook page 5 shape)",
        tags: vec![],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| g1::rln2_lhs(&param(s)?, o)),
        rhs: builder(|s, o| rhs_639_dual(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-6.3.9-dualtypeII",
        source: "second-type dual of Entry 6.3.9 (no short proof known; checked numerically)",
        tags: vec!["dual-second-type"],
        status: Status::NumericOnly,
        order: 50,
        lhs: builder(|s, o| f_639(&param(s)?, o)),
        rhs: builder(|s, o| rhs_639_second(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-6.3.9-hecke332",
        source: "Hecke-type f_(3,3,2) form of the 6.3.9 tail sum",
        tags: vec![],
        status: Status::Sampled,
        order: 40,
        lhs: builder(|s, o| f_639(&param(s)?, o)),
        rhs: builder(|s, o| rhs_639_hecke(&param(s)?, o)),
    }));

    // ---- Entry 6.3.11 family -------------------------------------------
    v.push(rec(Spec {
        id: "ABII-6.3.11",
        source: "Andrews-Berndt Part II, Entry 6.3.11: partial theta expansion of the (q;q^2)_n-weighted sum with (-aq)_n denominators",
        tags: vec![],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| lhs_6311(&param(s)?, o)),
        rhs: builder(|s, o| rhs_6311(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-6.3.11-dualtypeII",
        source: "second-type dual of Entry 6.3.11: m(a,q,-1), m(a^2,q^2,-1), and an eta-weighted theta term",
        tags: vec!["dual-second-type"],
        status: Status::Sampled,
        order: 50,
        lhs: builder(|s, o| f_6311(&param(s)?, o)),
        rhs: builder(|s, o| rhs_6311_second(&param(s)?, o)),
    }));
    v.push(rec(Spec {
        id: "ABII-5.4.3",
        source: "Andrews-Berndt Part II, Entry 5.4.3: regularized alternating 6.3.11-type sum equals half a bilateral partial theta",
        tags: vec!["starred"],
        status: Status::Sampled,
        order: 40,
        lhs: builder(|s, o| lhs_543(&param(s)?, o)),
        rhs: builder(|s, o| rhs_543(&param(s)?, o)),
    }));

    v
}
