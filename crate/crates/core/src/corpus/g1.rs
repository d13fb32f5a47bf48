//! G1 — Lost Notebook Eulerian series evaluated as Appell–Lerch sums, the
//! starred-sum regularization, and the bilateral Eulerian transforms.

use num::One;

use std::cell::RefCell;

use crate::qfuncs::{
    appell_m, pochhammer_inf, starred_sum, theta_cap_j, theta_j, with_padding,
    ThetaKind,
};
use crate::series::{coeff_int, coeff_ratio, exp_num, geometric_factor, Coeff, ParamValue, Poly, QSeries, Result};

use super::build::{
    builder, ei, eulerian_sum, half_theta_correction, one_plus_inv_times, pair_samples, pv,
    samples_for, sum_terms,
};
use super::{IdentityRecord, Sample, Status};

fn sign(n: i64) -> Coeff {
    if n.rem_euclid(2) == 1 {
        -Coeff::one()
    } else {
        Coeff::one()
    }
}

/// `sum_{n>=0} (-1)^n q^(n^2) (q;q^2)_n / ((-x;q^2)_{n+1} (-q^2/x;q^2)_n)`,
/// the common left side of the three `RLNid2` evaluations (and of the
/// Entry 6.3.9 dual).
pub(super) fn rln2_lhs(x: &ParamValue, o: i64) -> Result<QSeries> {
    let ex = exp_num(x.exp, 1)?;
    let num = RefCell::new(QSeries::one(1, o));
    eulerian_sum(
        1,
        o,
        0,
        |n| {
            if n > 0 {
                let up = num.borrow().mul_binomial_num(&Coeff::one(), 2 * n - 1);
                *num.borrow_mut() = up;
            }
            Ok(num.borrow().mul_monomial_num(&sign(n), n * n))
        },
        |n| {
            if n == 0 {
                // (-x; q^2)_1 = 1 + x
                let mut p = Poly::one(1);
                p.add_term_num(ex, x.coeff.clone());
                Ok(p)
            } else {
                let mut p = Poly::one(1);
                p.add_term_num(ex + 2 * n, x.coeff.clone());
                let mut r = Poly::one(1);
                r.add_term_num(2 * n - ex, Coeff::one() / &x.coeff);
                p.mul(&r)
            }
        },
    )
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut v = Vec::new();

    v.push(IdentityRecord {
        id: "RLNid1".into(),
        source: "Ramanujan's Lost Notebook (cf. Andrews-Mortenson): odd-even Eulerian series as -m(x,q^2,q)".into(),
        group: 1,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: {
            let mut s = samples_for("x", |_| false);
            s.push(Sample::point("x", pv(-1, 1)));
            s
        },
        lhs: builder(|s, o| {
            let x = s.get_point("x")?.clone();
            let ex = exp_num(x.exp, 1)?;
            one_plus_inv_times(1, &x, o, |w| {
                let num = RefCell::new(QSeries::one(1, w));
                eulerian_sum(
                    1,
                    w,
                    0,
                    |n| {
                        if n > 0 {
                            let up = num
                                .borrow()
                                .mul_binomial_num(&-Coeff::one(), 2 * n - 1)
                                .mul_binomial_num(&-Coeff::one(), 2 * n);
                            *num.borrow_mut() = up;
                        }
                        Ok(num.borrow().mul_monomial_num(&Coeff::one(), n + 1))
                    },
                    |n| {
                        let mut p = Poly::one(1);
                        p.add_term_num(ex + 2 * n + 1, -x.coeff.clone());
                        let mut r = Poly::one(1);
                        r.add_term_num(2 * n + 1 - ex, -(Coeff::one() / &x.coeff));
                        p.mul(&r)
                    },
                )
            })
        }),
        rhs: builder(|s, o| {
            Ok(appell_m(1, s.get_point("x")?, ei(2), &pv(1, 1), o)?.neg())
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "RLNid2.a".into(),
        source: "Ramanujan's Lost Notebook (cf. Andrews-Mortenson): m(x,q,-1) plus half a theta quotient".into(),
        group: 1,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: samples_for("x", |_| false),
        lhs: builder(|s, o| rln2_lhs(s.get_point("x")?, o)),
        rhs: builder(|s, o| {
            let x = s.get_point("x")?;
            appell_m(1, x, ei(1), &pv(-1, 0), o)?.add(&half_theta_correction(x, o)?)
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "RLNid2.b".into(),
        source: "Ramanujan's Lost Notebook: the square-root-argument form 2m(x,q,-1) - m(x,q,sqrt(-q/x))".into(),
        group: 1,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: {
            let mut out = Vec::new();
            for c in [pv(2, 0), pv(3, 0), pvr_half()] {
                for k in [0i64, 1] {
                    out.push(Sample::point("c", c.clone()).with_int("k", k));
                }
            }
            out
        },
        lhs: builder(|s, o| {
            let x = rln2b_x(s)?;
            rln2_lhs(&x, o)
        }),
        rhs: builder(|s, o| {
            let c = s.get_point("c")?;
            let k = s.get_int("k")?;
            let x = rln2b_x(s)?;
            // z = c^(-1) q^(-k) satisfies z^2 = -q/x for x = -c^2 q^(2k+1)
            let z = ParamValue::new(Coeff::one() / &c.coeff, ei(-k));
            let two_m = appell_m(1, &x, ei(1), &pv(-1, 0), o)?.scale(&coeff_int(2));
            two_m.sub(&appell_m(1, &x, ei(1), &z, o)?)
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "RLNid2.c".into(),
        source: "Ramanujan's Lost Notebook: base-q^4 splitting m(-qx^2,q^4,-1/q) - (x/q) m(-x^2/q,q^4,-q)".into(),
        group: 1,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: samples_for("x", |_| false),
        lhs: builder(|s, o| rln2_lhs(s.get_point("x")?, o)),
        rhs: builder(|s, o| {
            let x = s.get_point("x")?;
            let ex = exp_num(x.exp, 1)?;
            let shift = ex - 1;
            let w = o - shift.min(0);
            let first = appell_m(1, &x.pow(2).neg().mul(&pv(1, 1)), ei(4), &pv(-1, -1), w)?;
            let second = appell_m(1, &x.pow(2).neg().mul(&pv(1, -1)), ei(4), &pv(-1, 1), w)?
                .mul_monomial_num(&x.coeff, shift);
            first.sub(&second)
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "RLNid3".into(),
        source: "Ramanujan's Lost Notebook: regularized alternating Eulerian series equals m(x,q,-1)".into(),
        group: 1,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: samples_for("x", |_| false),
        lhs: builder(|s, o| starred_sum(1, s.get_point("x")?, o)),
        rhs: builder(|s, o| appell_m(1, s.get_point("x")?, ei(1), &pv(-1, 0), o)),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "sumstar-def".into(),
        source: "Andrews-Berndt, Lost Notebook Part I, Section 12.3 convention: Cesaro value of the divergent alternating series".into(),
        group: 1,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 40,
        samples: samples_for("x", |_| false),
        lhs: builder(|s, o| {
            let x = s.get_point("x")?.clone();
            let ex = exp_num(x.exp, 1)?;
            with_padding(o, move |w| {
                let u_inf = pochhammer_inf(1, &pv(1, 1), ei(2), w)?.div(
                    &pochhammer_inf(1, &x.neg(), ei(1), w)?
                        .mul(&pochhammer_inf(1, &x.inv().neg().mul(&pv(1, 1)), ei(1), w)?)?,
                )?;
                let num = RefCell::new(QSeries::one(1, w));
                let den = RefCell::new({
                    let mut d = QSeries::one(1, w);
                    d.add_term_num(ex, x.coeff.clone());
                    d
                });
                super::build::cesaro_alternating(w, &u_inf, |n| {
                    if n > 0 {
                        let nn = num.borrow().mul_binomial_num(&Coeff::one(), 2 * n - 1);
                        *num.borrow_mut() = nn;
                        let dd = den
                            .borrow()
                            .mul_binomial_num(&-x.coeff.clone(), n + ex)
                            .mul_binomial_num(&-(Coeff::one() / &x.coeff), n - ex);
                        *den.borrow_mut() = dd;
                    }
                    num.borrow().div(&den.borrow())
                })
            })
        }),
        rhs: builder(|s, o| starred_sum(1, s.get_point("x")?, o)),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "RLNid4".into(),
        source: "Ramanujan's Lost Notebook (cf. Andrews-Mortenson): m(x,q,-1) minus half a theta quotient".into(),
        group: 1,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: samples_for("x", |_| false),
        lhs: builder(|s, o| {
            let x = s.get_point("x")?.clone();
            let ex = exp_num(x.exp, 1)?;
            one_plus_inv_times(1, &x, o, |w| {
                let num = RefCell::new(QSeries::one(1, w));
                eulerian_sum(
                    1,
                    w,
                    0,
                    |n| {
                        if n > 0 {
                            let up = num.borrow().mul_binomial_num(&Coeff::one(), 2 * n - 1);
                            *num.borrow_mut() = up;
                        }
                        Ok(num.borrow().mul_monomial_num(&sign(n), (n + 1) * (n + 1)))
                    },
                    |n| {
                        let mut p = Poly::one(1);
                        p.add_term_num(ex + 2 * n + 1, x.coeff.clone());
                        let mut r = Poly::one(1);
                        r.add_term_num(2 * n + 1 - ex, Coeff::one() / &x.coeff);
                        p.mul(&r)
                    },
                )
            })
        }),
        rhs: builder(|s, o| {
            let x = s.get_point("x")?;
            appell_m(1, x, ei(1), &pv(-1, 0), o)?.sub(&half_theta_correction(x, o)?)
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "RLNid5".into(),
        source: "Ramanujan's Lost Notebook (cf. Andrews-Mortenson): base-q^4 Eulerian series as m(x,q^2,q) plus a theta quotient".into(),
        group: 1,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: samples_for("x", |_| false),
        lhs: builder(|s, o| {
            let x = s.get_point("x")?.clone();
            let ex = exp_num(x.exp, 1)?;
            let num = RefCell::new(QSeries::one(1, o));
            eulerian_sum(
                1,
                o,
                0,
                |n| {
                    if n > 0 {
                        let up = num.borrow().mul_binomial_num(&Coeff::one(), 4 * n - 2);
                        *num.borrow_mut() = up;
                    }
                    Ok(num.borrow().mul_monomial_num(&sign(n), 2 * n * n))
                },
                |n| {
                    if n == 0 {
                        let mut p = Poly::one(1);
                        p.add_term_num(ex, x.coeff.clone());
                        Ok(p)
                    } else {
                        let mut p = Poly::one(1);
                        p.add_term_num(ex + 4 * n, x.coeff.clone());
                        let mut r = Poly::one(1);
                        r.add_term_num(4 * n - ex, Coeff::one() / &x.coeff);
                        p.mul(&r)
                    }
                },
            )
        }),
        rhs: builder(|s, o| {
            let x = s.get_point("x")?.clone();
            let m = appell_m(1, &x, ei(2), &pv(1, 1), o)?;
            let corr = with_padding(o, move |w| {
                let jbar14 = theta_cap_j(1, ei(1), ei(4), ThetaKind::Bar, w)?;
                let num = jbar14
                    .pow(2)?
                    .mul(&theta_j(1, &x.neg().mul(&pv(1, 2)), ei(4), w)?)?;
                let den = theta_j(1, &x.neg(), ei(4), w)?
                    .mul(&theta_j(1, &x.mul(&pv(1, 1)), ei(2), w)?)?;
                num.div(&den)
            })?;
            m.add(&corr)
        }),
        alt: vec![],
        dual_of: None,
    });

    let ab_pairs = vec![
        (pv(2, 0), pv(3, 0)),
        (pv(3, 0), pv(5, 0)),
        (pv(5, 0), pv(2, 0)),
        (pv(-2, 0), pv(3, 0)),
        (pvr_half(), pv(3, 0)),
        (pv(2, 1), pv(3, 0)),
        (pv(2, 0), pv(3, 2)),
    ];

    v.push(IdentityRecord {
        id: "bilateral-appell".into(),
        source: "bilateral Eulerian transform (cf. Andrews-Berndt Part II, Section 3.4)".into(),
        group: 1,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 40,
        samples: pair_samples("a", "b", &ab_pairs),
        lhs: builder(|s, o| {
            Ok(crate::qfuncs::bilateral_m_sum(1, s.get_point("a")?, s.get_point("b")?, o)?.0)
        }),
        rhs: builder(|s, o| {
            Ok(crate::qfuncs::bilateral_m_sum(1, s.get_point("a")?, s.get_point("b")?, o)?.1)
        }),
        alt: vec![(
            "appell-form".into(),
            builder(|s, o| {
                let a = s.get_point("a")?.clone();
                let b = s.get_point("b")?.clone();
                with_padding(o, move |w| {
                    let num = pochhammer_inf(1, &a.neg().mul(&pv(1, 1)), ei(1), w)?
                        .mul(&theta_j(1, &b.neg(), ei(1), w)?)?
                        .mul(&appell_m(1, &a.mul(&b.inv()), ei(1), &b.neg(), w)?)?;
                    let den = pochhammer_inf(1, &pv(1, 1), ei(1), w)?
                        .mul(&pochhammer_inf(1, &b.inv().neg().mul(&pv(1, 1)), ei(1), w)?)?;
                    let eb = exp_num(b.exp, 1)?;
                    Ok(num
                        .div(&den)?
                        .mul_monomial_num(&(Coeff::one() / &b.coeff), -eb))
                })
            }),
        )],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "ABII-3.4.7".into(),
        source: "Andrews-Berndt, Lost Notebook Part II, Entry 3.4.7".into(),
        group: 1,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 40,
        samples: pair_samples("a", "b", &ab_pairs),
        lhs: builder(|s, o| {
            let a = s.get_point("a")?.clone();
            let b = s.get_point("b")?.clone();
            let ea = exp_num(a.exp, 1)?;
            let eb = exp_num(b.exp, 1)?;
            let w = o + (ea.abs() + eb.abs() + 2) * 4;
            let piece1 = eulerian_sum(
                1,
                w,
                0,
                |n| {
                    let c = crate::qfuncs::rat_pow(&a.coeff, -n - 1)
                        * crate::qfuncs::rat_pow(&b.coeff, -n);
                    Ok(QSeries::monomial_num(
                        1,
                        c,
                        n * n - (n + 1) * ea - n * eb,
                        w,
                    ))
                },
                |n| {
                    if n == 0 {
                        let mut p = Poly::one(1);
                        p.add_term_num(-ea, Coeff::one() / &a.coeff);
                        Ok(p)
                    } else {
                        let mut p = Poly::one(1);
                        p.add_term_num(n - ea, Coeff::one() / &a.coeff);
                        let mut r = Poly::one(1);
                        r.add_term_num(n - eb, Coeff::one() / &b.coeff);
                        p.mul(&r)
                    }
                },
            )?;
            let run = RefCell::new(QSeries::one(1, w));
            let piece2 = sum_terms(1, w, 1, |n| {
                let up = if n == 1 {
                    // (-aq;q)_0 (-b;q)_1 = 1 + b
                    let mut d = QSeries::one(1, w);
                    d.add_term_num(eb, b.coeff.clone());
                    d
                } else {
                    run.borrow()
                        .mul_binomial_num(&-a.coeff.clone(), ea + n - 1)
                        .mul_binomial_num(&-b.coeff.clone(), eb + n - 1)
                };
                *run.borrow_mut() = up;
                Ok(run.borrow().mul_monomial_num(&Coeff::one(), n))
            })?;
            Ok(piece1.add(&piece2)?.truncate_num(o))
        }),
        rhs: builder(|s, o| {
            let a = s.get_point("a")?.clone();
            let b = s.get_point("b")?.clone();
            with_padding(o, move |w| {
                let ea = exp_num(a.exp, 1)?;
                let eb = exp_num(b.exp, 1)?;
                let s1 = sum_terms(1, w, 0, |n| {
                    let g = geometric_factor(1, &-a.coeff.clone(), ea + n, w)?;
                    Ok(g.mul_monomial_num(
                        &crate::qfuncs::rat_pow(&b.coeff, n),
                        n * (n + 1) / 2 + n * eb,
                    ))
                })?;
                let s2 = sum_terms(1, w, 1, |n| {
                    let g = geometric_factor(1, &-(Coeff::one() / &a.coeff), n - ea, w)?;
                    Ok(g.mul_monomial_num(
                        &crate::qfuncs::rat_pow(&b.coeff, -n),
                        n * (n + 1) / 2 - n * eb,
                    ))
                })?;
                let bracket = s1.add(&s2.mul_monomial_num(&(Coeff::one() / &a.coeff), -ea))?;
                let pre = pochhammer_inf(1, &a.neg().mul(&pv(1, 1)), ei(1), w)?.div(
                    &pochhammer_inf(1, &pv(1, 1), ei(1), w)?
                        .mul(&pochhammer_inf(1, &b.inv().neg().mul(&pv(1, 1)), ei(1), w)?)?,
                )?;
                pre.mul(&bracket)
            })
        }),
        alt: vec![],
        dual_of: None,
    });

    v
}

fn pvr_half() -> ParamValue {
    ParamValue::new(coeff_ratio(1, 2), ei(0))
}

/// `x = -c^2 q^(2k+1)` from an `RLNid2.b` sample.
fn rln2b_x(s: &Sample) -> Result<ParamValue> {
    let c = s.get_point("c")?;
    let k = s.get_int("k")?;
    Ok(c.pow(2).neg().mul(&pv(1, 2 * k + 1)))
}
