//! G9 — functional equations for the 6.3.x tail sums `f(a)`: each Entry's
//! tail satisfies a first-order `a -> qa` (or `a -> q^2 a`) recurrence
//! whose inhomogeneous term is a single theta quotient. These drive the
//! second-type duals and are verified here directly on lattice samples.

use num::One;

use crate::qfuncs::{theta_cap_j, theta_cap_j_eta, theta_j, with_padding, ThetaKind};
use crate::series::{coeff_int, exp_num, Coeff, ParamValue, QSeries, Result};

use super::build::{builder, ei, mul_poly, one_minus, pv, samples_for};
use super::g7::{f_6311, f_634, f_636, f_637, f_639, tail_632};
use super::{Builder, IdentityRecord, Sample, Status};

fn shifted(a: &ParamValue, k: i64) -> ParamValue {
    a.mul(&pv(1, k))
}

/// Coefficient and integer exponent of the monomial `a^apow * q^e`.
fn mono_of(a: &ParamValue, apow: i64, e: i64) -> Result<(Coeff, i64)> {
    let p = a.pow(apow);
    Ok((p.coeff.clone(), e + exp_num(p.exp, 1)?))
}

type Tail = fn(&ParamValue, i64) -> Result<QSeries>;

/// `f(q^step a) + poly-part - c a^apow q^e f(a)` where the poly part is
/// `konst + sum of signed monomials (c', apow', e')` and `fcoef` is
/// `(c, apow, e)`.
fn recurrence_lhs(
    f: Tail,
    a: &ParamValue,
    o: i64,
    step: i64,
    konst: i64,
    monomials: &[(i64, i64, i64)],
    fcoef: (i64, i64, i64),
) -> Result<QSeries> {
    with_padding(o, |w| {
        let t1 = f(&shifted(a, step), w)?;
        let mut head = QSeries::zero(1, w);
        head.add_term_num(0, coeff_int(konst));
        for &(c, apow, e) in monomials {
            let (cc, ee) = mono_of(a, apow, e)?;
            head.add_term_num(ee, coeff_int(c) * &cc);
        }
        let (fc, fe) = mono_of(a, fcoef.1, fcoef.2)?;
        let t3 = f(a, w + fe.abs() + 1)?
            .mul_monomial_num(&(coeff_int(fcoef.0) * &fc), fe)
            .truncate_num(w);
        t1.add(&head)?.sub(&t3)
    })
}

fn j1(w: i64) -> Result<QSeries> {
    theta_cap_j_eta(1, ei(1), w)
}

fn records_spec() -> Vec<(&'static str, &'static str, Builder, Builder)> {
    vec![
        (
            "ABII-6.3.2-func-A",
            "forward a -> qa recurrence for the 6.3.2 tail sum, inhomogeneity (1-a^2 q) j(-a;q)/(a J_1)",
            builder(|s, o| {
                let a = s.get_point("a")?.clone();
                recurrence_lhs(tail_632, &a, o, 1, 1, &[(-1, 2, 1)], (1, 3, 1))
            }),
            builder(|s, o| {
                let a = s.get_point("a")?.clone();
                with_padding(o, |w| {
                    let (ci, ee) = mono_of(&a, -1, 0)?;
                    let quot = theta_j(1, &a.neg(), ei(1), w + ee.abs() + 1)?
                        .div(&j1(w + ee.abs() + 1)?)?;
                    Ok(mul_poly(&quot, &one_minus(1, &a.pow(2), 1)?)?
                        .mul_monomial_num(&ci, ee)
                        .truncate_num(w))
                })
            }),
        ),
        (
            "ABII-6.3.2-func-B",
            "backward form of the 6.3.2 tail recurrence, solved for f(a)",
            builder(|s, o| {
                let a = s.get_point("a")?.clone();
                tail_632(&a, o)
            }),
            builder(|s, o| {
                let a = s.get_point("a")?.clone();
                with_padding(o, |w| {
                    let (ci, ei3) = mono_of(&a, -3, -1)?;
                    let (cj, ej) = mono_of(&a, -4, -1)?;
                    let (cb, eb) = mono_of(&a, -1, 0)?;
                    let mut head = QSeries::zero(1, w);
                    head.add_term_num(ei3, ci.clone());
                    head.add_term_num(eb, -cb);
                    let pad = ej.abs().max(ei3.abs()) + 1;
                    let quot = theta_j(1, &a.neg(), ei(1), w + pad)?.div(&j1(w + pad)?)?;
                    let jpart = mul_poly(&quot, &one_minus(1, &a.pow(2), 1)?)?
                        .mul_monomial_num(&cj, ej)
                        .truncate_num(w);
                    let fpart = tail_632(&shifted(&a, 1), w + pad)?
                        .mul_monomial_num(&ci, ei3)
                        .truncate_num(w);
                    head.sub(&jpart)?.add(&fpart)
                })
            }),
        ),
        (
            "ABII-6.3.4-func",
            "a -> q^2 a recurrence for the 6.3.4 tail sum, inhomogeneity q (1-a^2 q^2) j(-aq;q^2)/J_2",
            builder(|s, o| {
                let a = s.get_point("a")?.clone();
                recurrence_lhs(f_634, &a, o, 2, 0, &[(1, 1, 2), (-1, 2, 3)], (1, 3, 3))
            }),
            builder(|s, o| {
                let a = s.get_point("a")?.clone();
                with_padding(o, |w| {
                    let quot = theta_j(1, &a.mul(&pv(-1, 1)), ei(2), w)?
                        .div(&theta_cap_j_eta(1, ei(2), w)?)?;
                    Ok(mul_poly(&quot, &one_minus(1, &a.pow(2), 2)?)?
                        .mul_monomial_num(&Coeff::one(), 1)
                        .truncate_num(w))
                })
            }),
        ),
        (
            "ABII-6.3.6-func",
            "a -> q^2 a recurrence for the 6.3.6 tail sum, inhomogeneity (1-a^2 q^2) j(-aq;q^2)/(aq J_1)",
            builder(|s, o| {
                let a = s.get_point("a")?.clone();
                recurrence_lhs(f_636, &a, o, 2, 1, &[(-1, 1, 1)], (1, 2, 1))
            }),
            builder(|s, o| {
                let a = s.get_point("a")?.clone();
                with_padding(o, |w| {
                    let (ci, ee) = mono_of(&a, -1, -1)?;
                    let quot = theta_j(1, &a.mul(&pv(-1, 1)), ei(2), w + ee.abs() + 1)?
                        .div(&j1(w + ee.abs() + 1)?)?;
                    Ok(mul_poly(&quot, &one_minus(1, &a.pow(2), 2)?)?
                        .mul_monomial_num(&ci, ee)
                        .truncate_num(w))
                })
            }),
        ),
        (
            "ABII-6.3.7-func",
            "a -> q^2 a recurrence for the 6.3.7 tail sum, inhomogeneity (1-aq) j(aq;q^2)/(aq Jbar_(1,4))",
            builder(|s, o| {
                let a = s.get_point("a")?.clone();
                recurrence_lhs(f_637, &a, o, 2, -2, &[], (-1, 1, 0))
            }),
            builder(|s, o| {
                let a = s.get_point("a")?.clone();
                with_padding(o, |w| {
                    let (ci, ee) = mono_of(&a, -1, -1)?;
                    let quot = theta_j(1, &a.mul(&pv(1, 1)), ei(2), w + ee.abs() + 1)?
                        .div(&theta_cap_j(1, ei(1), ei(4), ThetaKind::Bar, w + ee.abs() + 1)?)?;
                    Ok(mul_poly(&quot, &one_minus(1, &a, 1)?)?
                        .mul_monomial_num(&ci, ee)
                        .truncate_num(w))
                })
            }),
        ),
        (
            "ABII-6.3.9-func",
            "a -> q^2 a recurrence for the 6.3.9 tail sum, inhomogeneity (1-aq) j(-a;q^2)/(a J_1)",
            builder(|s, o| {
                let a = s.get_point("a")?.clone();
                recurrence_lhs(f_639, &a, o, 2, 1, &[(-1, 1, 1)], (1, 2, 1))
            }),
            builder(|s, o| {
                let a = s.get_point("a")?.clone();
                with_padding(o, |w| {
                    let (ci, ee) = mono_of(&a, -1, 0)?;
                    let quot = theta_j(1, &a.neg(), ei(2), w + ee.abs() + 1)?
                        .div(&j1(w + ee.abs() + 1)?)?;
                    Ok(mul_poly(&quot, &one_minus(1, &a, 1)?)?
                        .mul_monomial_num(&ci, ee)
                        .truncate_num(w))
                })
            }),
        ),
        (
            "ABII-6.3.11-func",
            "a -> qa recurrence for the 6.3.11 tail sum, inhomogeneity j(-a;q)/(a J_(1,2))",
            builder(|s, o| {
                let a = s.get_point("a")?.clone();
                recurrence_lhs(f_6311, &a, o, 1, 1, &[], (-1, 1, 0))
            }),
            builder(|s, o| {
                let a = s.get_point("a")?.clone();
                with_padding(o, |w| {
                    let (ci, ee) = mono_of(&a, -1, 0)?;
                    let quot = theta_j(1, &a.neg(), ei(1), w + ee.abs() + 1)?
                        .div(&theta_cap_j(1, ei(1), ei(2), ThetaKind::Plain, w + ee.abs() + 1)?)?;
                    Ok(quot.mul_monomial_num(&ci, ee).truncate_num(w))
                })
            }),
        ),
    ]
}

fn sample_plan() -> Vec<Sample> {
    samples_for("a", |_| false)
}

pub(super) fn records() -> Vec<IdentityRecord> {
    records_spec()
        .into_iter()
        .map(|(id, source, lhs, rhs)| IdentityRecord {
            id: id.into(),
            source: source.into(),
            group: 9,
            tags: vec!["functional-equation"],
            status: Status::Sampled,
            lattice: 1,
            default_order: 40,
            samples: sample_plan(),
            lhs,
            rhs,
            alt: vec![],
            dual_of: None,
        })
        .collect()
}
