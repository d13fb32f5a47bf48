//! G5 — the seventh order mock theta functions `F0`, `F1`, `F2`
//! (Ramanujan; evaluations as in Hickerson 1988): universal-mock-theta and
//! Appell-Lerch forms at base `q^21`, and the `q -> 1/q` duals, which are
//! four-term combinations of partial thetas at base `q^21`.

use num::{One, Zero};

use crate::dual::{EulerianDescriptor, FactorSpec, SumRange};
use crate::qfuncs::{theta_cap_j, theta_cap_j_eta, universal_g, with_padding, ThetaKind};
use crate::series::{Coeff, Exp, QSeries, Result};

use super::build::{balanced_poch_sum, builder, ei, m_combo, pt_combo, pv};
use super::{DualWitness, IdentityRecord, Sample, Status};

fn one(e: i64) -> Vec<(Coeff, i64)> {
    vec![(Coeff::one(), e)]
}

fn signed(n: i64, e: i64) -> Vec<(Coeff, i64)> {
    let c = if n % 2 == 0 {
        Coeff::one()
    } else {
        -Coeff::one()
    };
    vec![(c, e)]
}

/// `J_(a,7)^2 / J_1`, optionally shifted by `q^e`.
fn seventh_theta_quotient(o: i64, a: i64, e: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let ja = theta_cap_j(1, ei(a), ei(7), ThetaKind::Plain, w)?;
        let j1 = theta_cap_j_eta(1, ei(1), w)?;
        Ok(ja.pow(2)?.div(&j1)?.mul_monomial_num(&Coeff::one(), e))
    })
}

/// `2 q^e g(q^a, q^7) + c * J_(b,7)^2 q^d / J_1`.
fn seventh_g_form(o: i64, e: i64, a: i64, c: i64, b: i64, d: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let g = universal_g(1, &pv(1, a), ei(7), w)?;
        let theta = seventh_theta_quotient(w, b, d)?;
        g.mul_monomial_num(&Coeff::from_integer(2.into()), e)
            .truncate_num(w)
            .add(&theta.scale(&Coeff::from_integer(c.into())))
    })
}

fn f0_descriptor() -> EulerianDescriptor {
    EulerianDescriptor::new(1)
        .qpoly(ei(1), Exp::zero(), Exp::zero())
        .den(FactorSpec::new(Coeff::one(), ei(1), ei(1), ei(1), 1, 0))
}

fn f1_descriptor() -> EulerianDescriptor {
    EulerianDescriptor::new(1)
        .range(SumRange::From(1))
        .qpoly(ei(1), Exp::zero(), Exp::zero())
        .den(FactorSpec::new(Coeff::one(), ei(1), ei(0), ei(1), 1, 0))
}

fn f2_descriptor() -> EulerianDescriptor {
    EulerianDescriptor::new(1)
        .qpoly(ei(1), ei(1), Exp::zero())
        .den(FactorSpec::new(Coeff::one(), ei(1), ei(1), ei(1), 1, 1))
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let fixed = vec![Sample::fixed()];
    let mut v = Vec::new();

    v.push(IdentityRecord {
        id: "mock-F0-7th".into(),
        source: "seventh order mock theta F0 = sum q^(n^2)/(q^(n+1))_n: universal mock theta evaluation (Hickerson 1988)".into(),
        group: 5,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 50,
        samples: fixed.clone(),
        lhs: builder(|_, o| balanced_poch_sum(o, 0, |n| one(n * n))),
        rhs: builder(|_, o| {
            with_padding(o, |w| {
                QSeries::constant(1, Coeff::from_integer(2.into()), w)
                    .add(&seventh_g_form(w, 1, 1, -1, 3, 0)?)
            })
        }),
        alt: vec![(
            "appell-combination".into(),
            builder(|_, o| {
                m_combo(
                    o,
                    21,
                    0,
                    &[
                        (1, 0, (1, 10), (1, 9)),
                        (1, 0, (1, 10), (1, -9)),
                        (-1, -1, (1, 4), (1, 9)),
                        (-1, -1, (1, 4), (1, -9)),
                    ],
                )
            }),
        )],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "mock-F1-7th".into(),
        source: "seventh order mock theta F1 = sum_(n>=1) q^(n^2)/(q^n)_n: universal mock theta evaluation (Hickerson 1988)".into(),
        group: 5,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 50,
        samples: fixed.clone(),
        lhs: builder(|_, o| balanced_poch_sum(o, 1, |n| one((n + 1) * (n + 1)))),
        rhs: builder(|_, o| seventh_g_form(o, 2, 2, 1, 1, 1)),
        alt: vec![(
            "appell-combination".into(),
            builder(|_, o| {
                m_combo(
                    o,
                    21,
                    0,
                    &[
                        (-1, 0, (1, 8), (1, 3)),
                        (-1, 0, (1, 8), (1, -3)),
                        (-1, -2, (1, 1), (1, 3)),
                        (-1, -2, (1, 1), (1, -3)),
                    ],
                )
            }),
        )],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "mock-F2-7th".into(),
        source: "seventh order mock theta F2 = sum q^(n(n+1))/(q^(n+1))_(n+1): universal mock theta evaluation (Hickerson 1988)".into(),
        group: 5,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 50,
        samples: fixed.clone(),
        lhs: builder(|_, o| balanced_poch_sum(o, 1, |n| one(n * n + n))),
        rhs: builder(|_, o| seventh_g_form(o, 2, 3, 1, 2, 0)),
        alt: vec![(
            "appell-combination".into(),
            builder(|_, o| {
                m_combo(
                    o,
                    21,
                    0,
                    &[
                        (-1, -1, (1, 5), (1, 6)),
                        (-1, -1, (1, 5), (1, -6)),
                        (-1, -2, (1, 2), (1, 6)),
                        (-1, -2, (1, 2), (1, -6)),
                    ],
                )
            }),
        )],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "mock-F0-7th-dual".into(),
        source: "q -> 1/q dual of F0: partial thetas at base q^21".into(),
        group: 5,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 40,
        samples: fixed.clone(),
        lhs: builder(|_, o| balanced_poch_sum(o, 0, |n| signed(n, n * (n + 1) / 2))),
        rhs: builder(|_, o| {
            pt_combo(
                o,
                21,
                0,
                &[
                    (1, 0, (1, -10)),
                    (1, 10, (1, 10)),
                    (-1, 1, (1, -4)),
                    (-1, 5, (1, 4)),
                ],
            )
        }),
        alt: vec![],
        dual_of: Some(DualWitness {
            descriptor: f0_descriptor(),
            offset: 0,
        }),
    });

    v.push(IdentityRecord {
        id: "mock-F1-7th-dual".into(),
        source: "q -> 1/q dual of F1: partial thetas at base q^21".into(),
        group: 5,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 40,
        samples: fixed.clone(),
        lhs: builder(|_, o| balanced_poch_sum(o, 1, |n| signed(n + 1, n * (n + 1) / 2))),
        rhs: builder(|_, o| {
            pt_combo(
                o,
                21,
                0,
                &[
                    (-1, 0, (1, -8)),
                    (-1, 8, (1, 8)),
                    (-1, 2, (1, -1)),
                    (-1, 3, (1, 1)),
                ],
            )
        }),
        alt: vec![],
        dual_of: Some(DualWitness {
            descriptor: f1_descriptor(),
            offset: 0,
        }),
    });

    v.push(IdentityRecord {
        id: "mock-F2-7th-dual".into(),
        source: "q -> 1/q dual of F2: partial thetas at base q^21".into(),
        group: 5,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 40,
        samples: fixed,
        lhs: builder(|_, o| {
            balanced_poch_sum(o, 1, |n| signed(n + 1, (n + 1) * (n + 2) / 2))
        }),
        rhs: builder(|_, o| {
            pt_combo(
                o,
                21,
                0,
                &[
                    (-1, 1, (1, -5)),
                    (-1, 6, (1, 5)),
                    (-1, 2, (1, -2)),
                    (-1, 4, (1, 2)),
                ],
            )
        }),
        alt: vec![],
        dual_of: Some(DualWitness {
            descriptor: f2_descriptor(),
            offset: 0,
        }),
    });

    v
}
