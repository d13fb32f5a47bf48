//! G3 — the Ramanujan/Andrews pair `psibar0`, `psibar1` (Lost Notebook,
//! cf. Andrews-Berndt Part II Entries 6.5.1-6.5.2): partial-theta
//! expansions of `sum q^n/(-q)_(2n)` and `sum q^n/(-q)_(2n+1)`, plus the
//! universal-mock-theta and Appell-Lerch evaluations of the originals.

use num::{One, Zero};

use crate::dual::{EulerianDescriptor, FactorSpec};
use crate::qfuncs::{theta_cap_j, theta_cap_j_eta, universal_g, with_padding, ThetaKind};
use crate::series::{Coeff, Exp, QSeries, Result};

use super::build::{builder, ei, m_combo, neg_poch_sum, pv, sum_terms};
use super::{DualWitness, IdentityRecord, Sample, Status};

/// `sum_{n>=0} q^(a2 n^2 + a1 n + a0) / (-q;q)_(2n+mu)` for `mu in {0,1}`.
fn over_poch_neg_q(o: i64, a2: i64, a1: i64, a0: i64, mu: i64) -> Result<QSeries> {
    neg_poch_sum(o, mu, |n| {
        vec![(Coeff::one(), a2 * n * n + a1 * n + a0)]
    })
}

/// `sum_{n>=0} q^(base(n)) (1 - q^(gap(n)))` with both exponents affine or
/// quadratic in `n` — the shape of the partial-theta sides here.
fn theta_pair_sum(
    o: i64,
    base: impl Fn(i64) -> i64,
    gap: impl Fn(i64) -> i64,
) -> Result<QSeries> {
    sum_terms(1, o, 0, |n| {
        let mut t = QSeries::monomial_num(1, Coeff::one(), base(n), o);
        t.add_term_num(base(n) + gap(n), -Coeff::one());
        Ok(t)
    })
}

fn psibar0_descriptor() -> EulerianDescriptor {
    EulerianDescriptor::new(1)
        .qpoly(ei(2), Exp::zero(), Exp::zero())
        .den(FactorSpec::new(-Coeff::one(), Exp::zero(), ei(1), ei(1), 2, 0))
}

fn q_psibar1_descriptor() -> EulerianDescriptor {
    EulerianDescriptor::new(1)
        .qpoly(ei(2), ei(2), ei(1))
        .den(FactorSpec::new(-Coeff::one(), Exp::zero(), ei(1), ei(1), 2, 1))
}

/// `J_(1,2) * jbar(q^a; q^8) / J_2`, the theta correction in both
/// evaluations.
fn theta_correction(o: i64, a: i64) -> Result<QSeries> {
    with_padding(o, |w| {
        let j12 = theta_cap_j(1, ei(1), ei(2), ThetaKind::Plain, w)?;
        let jbar = theta_cap_j(1, ei(a), ei(8), ThetaKind::Bar, w)?;
        let j2 = theta_cap_j_eta(1, ei(2), w)?;
        j12.mul(&jbar)?.div(&j2)
    })
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let fixed = vec![Sample::fixed()];
    let mut v = Vec::new();

    v.push(IdentityRecord {
        id: "ABII-6.5.1A".into(),
        source: "Andrews-Berndt Part II, Entry 6.5.1 (first identity); dual of psibar0".into(),
        group: 3,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 50,
        samples: fixed.clone(),
        lhs: builder(|_, o| over_poch_neg_q(o, 0, 1, 0, 0)),
        rhs: builder(|_, o| {
            let s1 = theta_pair_sum(o, |n| 12 * n * n + n, |n| 22 * n + 11)?;
            let s2 = theta_pair_sum(o, |n| 12 * n * n + 7 * n + 1, |n| 10 * n + 5)?;
            s1.add(&s2)
        }),
        alt: vec![],
        dual_of: Some(DualWitness {
            descriptor: psibar0_descriptor(),
            offset: 0,
        }),
    });

    v.push(IdentityRecord {
        id: "ABII-6.5.1B".into(),
        source: "Andrews-Berndt Part II, Entry 6.5.1 (second identity); dual of q*psibar1".into(),
        group: 3,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 50,
        samples: fixed.clone(),
        lhs: builder(|_, o| over_poch_neg_q(o, 0, 1, 0, 1)),
        rhs: builder(|_, o| {
            let s1 = theta_pair_sum(o, |n| 12 * n * n + 5 * n, |n| 14 * n + 7)?;
            let s2 = theta_pair_sum(o, |n| 12 * n * n + 11 * n + 2, |n| 2 * n + 1)?;
            s1.add(&s2)
        }),
        alt: vec![],
        dual_of: Some(DualWitness {
            descriptor: q_psibar1_descriptor(),
            offset: 0,
        }),
    });

    v.push(IdentityRecord {
        id: "Andrews-psi0".into(),
        source: "psibar0 = sum q^(2n^2)/(-q)_(2n): universal mock theta g and Appell-Lerch forms (Hickerson-Mortenson style)".into(),
        group: 3,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 50,
        samples: fixed.clone(),
        lhs: builder(|_, o| over_poch_neg_q(o, 2, 0, 0, 0)),
        rhs: builder(|_, o| {
            with_padding(o, |w| {
                let g = universal_g(1, &pv(-1, 1), ei(8), w)?;
                let two = QSeries::constant(1, Coeff::from_integer(2.into()), w);
                two.sub(&g.mul_monomial_num(&Coeff::from_integer(2.into()), 1))?
                    .sub(&theta_correction(w, 3)?)
            })
        }),
        alt: vec![(
            "appell-combination".into(),
            builder(|_, o| {
                m_combo(
                    o,
                    24,
                    0,
                    &[
                        (1, 0, (-1, 11), (1, 4)),
                        (1, 0, (-1, 11), (1, 22)),
                        (1, -1, (-1, 5), (1, 4)),
                        (1, -1, (-1, 5), (1, 10)),
                    ],
                )
            }),
        )],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "Andrews-psi1".into(),
        source: "q*psibar1 = sum q^(2n^2+2n+1)/(-q)_(2n+1): universal mock theta g and Appell-Lerch forms".into(),
        group: 3,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 50,
        samples: fixed,
        lhs: builder(|_, o| over_poch_neg_q(o, 2, 2, 1, 1)),
        rhs: builder(|_, o| {
            with_padding(o, |w| {
                let g = universal_g(1, &pv(-1, 3), ei(8), w + 3)?;
                g.mul_monomial_num(&Coeff::from_integer(2.into()), 3)
                    .truncate_num(w)
                    .add(&theta_correction(w, 1)?.mul_monomial_num(&Coeff::one(), 1))
            })
        }),
        alt: vec![(
            "appell-combination".into(),
            builder(|_, o| {
                m_combo(
                    o,
                    24,
                    0,
                    &[
                        (1, 0, (-1, 7), (1, 8)),
                        (1, 0, (-1, 7), (1, 16)),
                        (-1, -3, (-1, -1), (1, 8)),
                        (-1, -3, (-1, -1), (1, 16)),
                    ],
                )
            }),
        )],
        dual_of: None,
    });

    v
}
