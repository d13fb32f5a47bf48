//! G4 — the fifth order mock theta functions `chi0`, `chi1` (Ramanujan;
//! evaluations as in Hickerson 1988 and Hickerson-Mortenson): two Eulerian
//! forms each, universal-mock-theta and Appell-Lerch evaluations, and the
//! `q -> 1/q` duals of both forms, which collapse to partial thetas.

use num::{One, Zero};

use crate::dual::{EulerianDescriptor, FactorSpec};
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

/// `chi0 = sum_{n>=0} q^n / (q^(n+1);q)_n`.
fn chi0_first(o: i64) -> Result<QSeries> {
    balanced_poch_sum(o, 0, |n| one(n))
}

/// `chi0 = 1 + sum_{n>=0} q^(2n+1) / (q^(n+1);q)_(n+1)`.
fn chi0_second(o: i64) -> Result<QSeries> {
    let s = balanced_poch_sum(o, 1, |n| one(2 * n + 1))?;
    s.add(&QSeries::one(1, o))
}

/// `chi1 = sum_{n>=0} q^n / (q^(n+1);q)_(n+1)`.
fn chi1_first(o: i64) -> Result<QSeries> {
    balanced_poch_sum(o, 1, |n| one(n))
}

/// `chi1 = 1 + sum_{n>=0} q^(2n+1)(1+q^n) / (q^(n+1);q)_(n+1)`.
fn chi1_second(o: i64) -> Result<QSeries> {
    let s = balanced_poch_sum(o, 1, |n| {
        vec![(Coeff::one(), 2 * n + 1), (Coeff::one(), 3 * n + 1)]
    })?;
    s.add(&QSeries::one(1, o))
}

/// `J_5^2 J_(a,5) / J_(b,5)^2`.
fn fifth_theta_quotient(o: i64, a: i64, b: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let j5 = theta_cap_j_eta(1, ei(5), w)?;
        let ja = theta_cap_j(1, ei(a), ei(5), ThetaKind::Plain, w)?;
        let jb = theta_cap_j(1, ei(b), ei(5), ThetaKind::Plain, w)?;
        j5.pow(2)?.mul(&ja)?.div(&jb.pow(2)?)
    })
}

fn chi0_descriptor_first() -> EulerianDescriptor {
    EulerianDescriptor::new(1)
        .qpoly(Exp::zero(), ei(1), Exp::zero())
        .den(FactorSpec::new(Coeff::one(), ei(1), ei(1), ei(1), 1, 0))
}

fn chi0_descriptor_second() -> EulerianDescriptor {
    EulerianDescriptor::new(1)
        .qpoly(Exp::zero(), ei(2), ei(1))
        .den(FactorSpec::new(Coeff::one(), ei(1), ei(1), ei(1), 1, 1))
}

fn chi1_descriptor_first() -> EulerianDescriptor {
    EulerianDescriptor::new(1)
        .qpoly(Exp::zero(), ei(1), Exp::zero())
        .den(FactorSpec::new(Coeff::one(), ei(1), ei(1), ei(1), 1, 1))
}

fn chi1_descriptor_second() -> EulerianDescriptor {
    EulerianDescriptor::new(1)
        .qpoly(Exp::zero(), ei(2), ei(1))
        .num(FactorSpec::new(-Coeff::one(), ei(1), ei(0), ei(1), 0, 1))
        .den(FactorSpec::new(Coeff::one(), ei(1), ei(1), ei(1), 1, 1))
}

/// The recurring four-term partial-theta block
/// `pt(q^-7) + q^7 pt(q^7) + q pt(q^-2) + q^3 pt(q^2)` at base `q^15`.
const CHI0_PT: [(i64, i64, (i64, i64)); 4] =
    [(1, 0, (1, -7)), (1, 7, (1, 7)), (1, 1, (1, -2)), (1, 3, (1, 2))];

/// `q pt(q^-4) + q^5 pt(q^4) + q^2 pt(q^-1) + q^3 pt(q)` at base `q^15`.
const CHI1_PT: [(i64, i64, (i64, i64)); 4] =
    [(1, 1, (1, -4)), (1, 5, (1, 4)), (1, 2, (1, -1)), (1, 3, (1, 1))];

fn negated(entries: &[(i64, i64, (i64, i64))]) -> Vec<(i64, i64, (i64, i64))> {
    entries.iter().map(|&(c, e, x)| (-c, e, x)).collect()
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let fixed = vec![Sample::fixed()];
    let mut v = Vec::new();

    v.push(IdentityRecord {
        id: "mock-chi0-5th".into(),
        source: "fifth order mock theta chi0: Eulerian forms and the universal mock theta evaluation (Hickerson 1988)".into(),
        group: 4,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 50,
        samples: fixed.clone(),
        lhs: builder(|_, o| chi0_first(o)),
        rhs: builder(|_, o| {
            with_padding(o, |w| {
                let g = universal_g(1, &pv(1, 1), ei(5), w)?;
                let head = QSeries::constant(1, Coeff::from_integer(2.into()), w)
                    .add(&g.mul_monomial_num(&Coeff::from_integer(3.into()), 1).truncate_num(w))?;
                head.sub(&fifth_theta_quotient(w, 2, 1)?)
            })
        }),
        alt: vec![("second-eulerian-form".into(), builder(|_, o| chi0_second(o)))],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "mock-chi0-5th.m-form".into(),
        source: "fifth order chi0 as a combination of Appell-Lerch m-functions at base q^15".into(),
        group: 4,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 50,
        samples: fixed.clone(),
        lhs: builder(|_, o| chi0_first(o)),
        rhs: builder(|_, o| {
            m_combo(
                o,
                15,
                2,
                &[
                    (-2, 0, (1, 7), (1, 12)),
                    (-1, 0, (1, 7), (1, 9)),
                    (-2, -1, (1, 2), (1, 12)),
                    (-1, -1, (1, 2), (1, 9)),
                ],
            )
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "mock-chi1-5th".into(),
        source: "fifth order mock theta chi1: Eulerian forms and the universal mock theta evaluation (Hickerson 1988)".into(),
        group: 4,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 50,
        samples: fixed.clone(),
        lhs: builder(|_, o| chi1_first(o)),
        rhs: builder(|_, o| {
            with_padding(o, |w| {
                let g = universal_g(1, &pv(1, 2), ei(5), w)?;
                g.mul_monomial_num(&Coeff::from_integer(3.into()), 1)
                    .truncate_num(w)
                    .add(&fifth_theta_quotient(w, 1, 2)?)
            })
        }),
        alt: vec![("second-eulerian-form".into(), builder(|_, o| chi1_second(o)))],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "mock-chi1-5th.m-form".into(),
        source: "fifth order chi1 as a combination of Appell-Lerch m-functions at base q^15".into(),
        group: 4,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 50,
        samples: fixed.clone(),
        lhs: builder(|_, o| chi1_first(o)),
        rhs: builder(|_, o| {
            m_combo(
                o,
                15,
                0,
                &[
                    (-2, -1, (1, 4), (1, -6)),
                    (-1, -1, (1, 4), (1, 3)),
                    (-2, -2, (1, 1), (1, 6)),
                    (-1, -2, (1, 1), (1, -3)),
                ],
            )
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "mock-chi0-5th-dualA".into(),
        source: "q -> 1/q dual of chi0's first Eulerian form: four partial thetas at base q^15".into(),
        group: 4,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 40,
        samples: fixed.clone(),
        lhs: builder(|_, o| balanced_poch_sum(o, 0, |n| signed(n, (3 * n * n - n) / 2))),
        rhs: builder(|_, o| pt_combo(o, 15, 2, &negated(&CHI0_PT))),
        alt: vec![],
        dual_of: Some(DualWitness {
            descriptor: chi0_descriptor_first(),
            offset: 0,
        }),
    });

    v.push(IdentityRecord {
        id: "mock-chi0-5th-dualB".into(),
        source: "q -> 1/q dual of chi0's second Eulerian form".into(),
        group: 4,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 40,
        samples: fixed.clone(),
        lhs: builder(|_, o| {
            let s = balanced_poch_sum(o, 1, |n| signed(n + 1, (3 * n * n + n) / 2))?;
            s.add(&QSeries::one(1, o))
        }),
        rhs: builder(|_, o| pt_combo(o, 15, 1, &negated(&CHI0_PT))),
        alt: vec![],
        dual_of: Some(DualWitness {
            descriptor: chi0_descriptor_second(),
            offset: 1,
        }),
    });

    v.push(IdentityRecord {
        id: "mock-chi1-5th-dualA".into(),
        source: "q -> 1/q dual of chi1's first Eulerian form: four partial thetas at base q^15".into(),
        group: 4,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 40,
        samples: fixed.clone(),
        lhs: builder(|_, o| {
            balanced_poch_sum(o, 1, |n| signed(n + 1, 3 * n * (n + 1) / 2 + 1))
        }),
        rhs: builder(|_, o| pt_combo(o, 15, 0, &negated(&CHI1_PT))),
        alt: vec![],
        dual_of: Some(DualWitness {
            descriptor: chi1_descriptor_first(),
            offset: 0,
        }),
    });

    v.push(IdentityRecord {
        id: "mock-chi1-5th-dualB".into(),
        source: "q -> 1/q dual of chi1's second Eulerian form (no short proof known; checked numerically)".into(),
        group: 4,
        tags: vec![],
        status: Status::NumericOnly,
        lattice: 1,
        default_order: 40,
        samples: fixed,
        lhs: builder(|_, o| {
            let s = balanced_poch_sum(o, 1, |n| {
                let c = if (n + 1) % 2 == 0 {
                    Coeff::one()
                } else {
                    -Coeff::one()
                };
                vec![
                    (c.clone(), (3 * n * n - n) / 2),
                    (c, (3 * n * n - n) / 2 + n),
                ]
            })?;
            s.add(&QSeries::one(1, o))
        }),
        rhs: builder(|_, o| pt_combo(o, 15, -1, &negated(&CHI1_PT))),
        alt: vec![],
        dual_of: Some(DualWitness {
            descriptor: chi1_descriptor_second(),
            offset: 1,
        }),
    });

    v
}
