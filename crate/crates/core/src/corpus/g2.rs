//! G2 — the second order mock theta function `B(q)`: its two Eulerian
//! forms, the Appell–Lerch evaluation, and the `q -> 1/q` duals of both
//! forms (which differ by an explicit theta-weighted partial-theta term).

use num::{One, Zero};

use std::cell::RefCell;

use crate::dual::{EulerianDescriptor, FactorSpec};
use crate::qfuncs::{appell_m, partial_theta, theta_cap_j, theta_cap_j_eta, ThetaKind};
use crate::series::{Coeff, Exp, QSeries, Result};

use super::build::{builder, ei, eulerian_sum, pv};
use super::{DualWitness, IdentityRecord, Sample, Status};

/// `B(q) = sum_{n>=0} q^n (-q;q^2)_n / (q;q^2)_{n+1}`.
fn b_form1(o: i64) -> Result<QSeries> {
    let num = RefCell::new(QSeries::one(1, o));
    eulerian_sum(
        1,
        o,
        0,
        |n| {
            if n > 0 {
                let up = num.borrow().mul_binomial_num(&-Coeff::one(), 2 * n - 1);
                *num.borrow_mut() = up;
            }
            Ok(num.borrow().mul_monomial_num(&Coeff::one(), n))
        },
        |n| Ok(crate::series::Poly::one(1).mul_binomial_num(&Coeff::one(), 2 * n + 1)),
    )
}

/// `B(q) = sum_{n>=0} q^(n^2+n) (-q^2;q^2)_n / (q;q^2)_{n+1}^2`.
fn b_form2(o: i64) -> Result<QSeries> {
    let num = RefCell::new(QSeries::one(1, o));
    eulerian_sum(
        1,
        o,
        0,
        |n| {
            if n > 0 {
                let up = num.borrow().mul_binomial_num(&-Coeff::one(), 2 * n);
                *num.borrow_mut() = up;
            }
            Ok(num.borrow().mul_monomial_num(&Coeff::one(), n * n + n))
        },
        |n| {
            Ok(crate::series::Poly::one(1)
                .mul_binomial_num(&Coeff::one(), 2 * n + 1)
                .mul_binomial_num(&Coeff::one(), 2 * n + 1))
        },
    )
}

/// Dual of the first form:
/// `sum_{n>=0} (-1)^(n+1) q^(n+1) (-q;q^2)_n / (q;q^2)_{n+1}`.
fn b_dual1(o: i64) -> Result<QSeries> {
    let num = RefCell::new(QSeries::one(1, o));
    eulerian_sum(
        1,
        o,
        0,
        |n| {
            if n > 0 {
                let up = num.borrow().mul_binomial_num(&-Coeff::one(), 2 * n - 1);
                *num.borrow_mut() = up;
            }
            let c = if n % 2 == 0 {
                -Coeff::one()
            } else {
                Coeff::one()
            };
            Ok(num.borrow().mul_monomial_num(&c, n + 1))
        },
        |n| Ok(crate::series::Poly::one(1).mul_binomial_num(&Coeff::one(), 2 * n + 1)),
    )
}

/// Dual of the second form:
/// `sum_{n>=0} q^(2n+2) (-q^2;q^2)_n / (q;q^2)_{n+1}^2`.
fn b_dual2(o: i64) -> Result<QSeries> {
    let num = RefCell::new(QSeries::one(1, o));
    eulerian_sum(
        1,
        o,
        0,
        |n| {
            if n > 0 {
                let up = num.borrow().mul_binomial_num(&-Coeff::one(), 2 * n);
                *num.borrow_mut() = up;
            }
            Ok(num.borrow().mul_monomial_num(&Coeff::one(), 2 * n + 2))
        },
        |n| {
            Ok(crate::series::Poly::one(1)
                .mul_binomial_num(&Coeff::one(), 2 * n + 1)
                .mul_binomial_num(&Coeff::one(), 2 * n + 1))
        },
    )
}

fn b_form1_descriptor() -> EulerianDescriptor {
    EulerianDescriptor::new(1)
        .qpoly(Exp::zero(), ei(1), Exp::zero())
        .num(FactorSpec::new(-Coeff::one(), Exp::zero(), ei(1), ei(2), 1, 0))
        .den(FactorSpec::new(Coeff::one(), Exp::zero(), ei(1), ei(2), 1, 1))
}

fn b_form2_descriptor() -> EulerianDescriptor {
    EulerianDescriptor::new(1)
        .qpoly(ei(1), ei(1), Exp::zero())
        .num(FactorSpec::new(-Coeff::one(), Exp::zero(), ei(2), ei(2), 1, 0))
        .den(FactorSpec::new(Coeff::one(), Exp::zero(), ei(1), ei(2), 1, 1))
        .den(FactorSpec::new(Coeff::one(), Exp::zero(), ei(1), ei(2), 1, 1))
}

/// `-q sum_{n>=0} (-1)^n q^(2n(n+1))`, the pure partial-theta part of the
/// duals (base `q^4` partial theta at argument 1).
fn neg_q_partial_theta4(o: i64) -> Result<QSeries> {
    Ok(partial_theta(1, &pv(1, 0), ei(4), o - 1)?.mul_monomial_num(&-Coeff::one(), 1))
}

/// `q (J_4/J_(1,2)) (pt(-1/q; q^6) - q pt(-q; q^6))`: the mixed theta term
/// separating the two duals.
fn mixed_theta_term(o: i64) -> Result<QSeries> {
    crate::qfuncs::with_padding(o, |w| {
        let j4 = theta_cap_j_eta(1, ei(4), w)?;
        let j12 = theta_cap_j(1, ei(1), ei(2), ThetaKind::Plain, w)?;
        let low = partial_theta(1, &pv(-1, -1), ei(6), w)?;
        let high = partial_theta(1, &pv(-1, 1), ei(6), w)?.mul_monomial_num(&Coeff::one(), 1);
        let bracket = low.sub(&high)?;
        Ok(j4
            .div(&j12)?
            .mul(&bracket)?
            .mul_monomial_num(&Coeff::one(), 1))
    })
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let fixed = vec![Sample::fixed()];
    let mut v = Vec::new();

    v.push(IdentityRecord {
        id: "B.forms-equal".into(),
        source: "second order mock theta B(q) (cf. Hickerson-Mortenson Section 4): two Eulerian forms".into(),
        group: 2,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 60,
        samples: fixed.clone(),
        lhs: builder(|_, o| b_form1(o)),
        rhs: builder(|_, o| b_form2(o)),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "B.appell-form".into(),
        source: "second order mock theta B(q): Appell-Lerch value -q^(-1) m(1,q^4,q^3)".into(),
        group: 2,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 60,
        samples: fixed.clone(),
        lhs: builder(|_, o| b_form1(o)),
        rhs: builder(|_, o| {
            Ok(appell_m(1, &pv(1, 0), ei(4), &pv(1, 3), o + 1)?
                .mul_monomial_num(&-Coeff::one(), -1))
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "B-first".into(),
        source: "q -> 1/q dual of B(q)'s first Eulerian form: a pure partial theta".into(),
        group: 2,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 50,
        samples: fixed.clone(),
        lhs: builder(|_, o| b_dual1(o)),
        rhs: builder(|_, o| neg_q_partial_theta4(o)),
        alt: vec![],
        dual_of: Some(DualWitness {
            descriptor: b_form1_descriptor(),
            offset: 0,
        }),
    });

    v.push(IdentityRecord {
        id: "B-second".into(),
        source: "q -> 1/q dual of B(q)'s second Eulerian form: partial theta plus a mixed term"
            .into(),
        group: 2,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 50,
        samples: fixed.clone(),
        lhs: builder(|_, o| b_dual2(o)),
        rhs: builder(|_, o| neg_q_partial_theta4(o)?.add(&mixed_theta_term(o)?)),
        alt: vec![],
        dual_of: Some(DualWitness {
            descriptor: b_form2_descriptor(),
            offset: 0,
        }),
    });

    v.push(IdentityRecord {
        id: "B.dual-mixed-term".into(),
        source: "difference of the two B(q) duals is the mixed theta term alone".into(),
        group: 2,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: 50,
        samples: fixed,
        lhs: builder(|_, o| b_dual2(o)?.sub(&b_dual1(o)?)),
        rhs: builder(|_, o| mixed_theta_term(o)),
        alt: vec![],
        dual_of: None,
    });

    v
}
