//! G6 — the tenth order mock theta functions `phi`, `psi`, `X`, `chi`
//! (Ramanujan; Appell-Lerch evaluations as in Choi's work and
//! Hickerson-Mortenson): their `q -> 1/q` partial-theta duals, the exact
//! cube-root-of-unity relations satisfied by those duals, and the
//! analogous omega-combinations of the originals, which are *not* zero but
//! explicit theta quotients on the `q^(1/3)` lattice.

use num::{One, Zero};

use crate::dual::{EulerianDescriptor, FactorSpec};
use crate::qfuncs::{pochhammer_inf, theta_cap_j, with_padding, ThetaKind};
use crate::series::{Coeff, Exp, ParamValue, Poly, QSeries, Result};

use super::build::{
    builder, cube_arg, cube_root_weighted, ei, eulerian_sum, m_combo, neg_poch_sum, pt_combo, pv,
};
use super::{DualWitness, IdentityRecord, Sample, Status};

fn signed(n: i64, e: i64) -> Vec<(Coeff, i64)> {
    let c = if n % 2 == 0 {
        Coeff::one()
    } else {
        -Coeff::one()
    };
    vec![(c, e)]
}

/// `sum_(n>=0) mono(n) / (q;q^2)_(n+1)`.
fn odd_poch_sum(o: i64, mono: impl Fn(i64) -> Vec<(Coeff, i64)>) -> Result<QSeries> {
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
        |n| Ok(Poly::one(1).mul_binomial_num(&Coeff::one(), 2 * n + 1)),
    )
}

fn phi_original(o: i64) -> Result<QSeries> {
    odd_poch_sum(o, |n| vec![(Coeff::one(), n * (n + 1) / 2)])
}

fn psi_original(o: i64) -> Result<QSeries> {
    odd_poch_sum(o, |n| vec![(Coeff::one(), (n + 1) * (n + 2) / 2)])
}

fn x_original(o: i64) -> Result<QSeries> {
    neg_poch_sum(o, 0, |n| signed(n, n * n))
}

fn chi_original(o: i64) -> Result<QSeries> {
    neg_poch_sum(o, 1, |n| signed(n, (n + 1) * (n + 1)))
}

/// The `q -> 1/q` duals, written directly as partial-theta combinations.
fn phi_dual_series(o: i64) -> Result<QSeries> {
    pt_combo(o, 10, 0, &[(-1, 1, (1, -1)), (-1, 2, (1, 1))])
}

fn psi_dual_series(o: i64) -> Result<QSeries> {
    pt_combo(o, 10, 0, &[(-1, 0, (1, -3)), (-1, 3, (1, 3))])
}

fn x_dual_series(o: i64) -> Result<QSeries> {
    pt_combo(o, 5, 0, &[(1, 0, (-1, -2)), (-1, 2, (-1, 2))])
}

fn chi_dual_series(o: i64) -> Result<QSeries> {
    pt_combo(o, 5, 0, &[(1, 0, (-1, -1)), (-1, 1, (-1, 1))])
}

fn phi_descriptor() -> EulerianDescriptor {
    EulerianDescriptor::new(1)
        .qpoly(Exp::new(1, 2), Exp::new(1, 2), Exp::zero())
        .den(FactorSpec::new(Coeff::one(), Exp::zero(), ei(1), ei(2), 1, 1))
}

fn psi_descriptor() -> EulerianDescriptor {
    EulerianDescriptor::new(1)
        .qpoly(Exp::new(1, 2), Exp::new(3, 2), ei(1))
        .den(FactorSpec::new(Coeff::one(), Exp::zero(), ei(1), ei(2), 1, 1))
}

fn x_descriptor() -> EulerianDescriptor {
    EulerianDescriptor::new(1)
        .qpoly(ei(1), Exp::zero(), Exp::zero())
        .signed()
        .den(FactorSpec::new(-Coeff::one(), Exp::zero(), ei(1), ei(1), 2, 0))
}

fn chi_descriptor() -> EulerianDescriptor {
    EulerianDescriptor::new(1)
        .qpoly(ei(1), ei(2), ei(1))
        .signed()
        .den(FactorSpec::new(-Coeff::one(), Exp::zero(), ei(1), ei(1), 2, 1))
}

/// `c q^(e/3) * F(q^3)` on lattice 3, truncated to numerator order `o`:
/// the `f(q^3)` leg of the omega-combination identities. `build` receives
/// the lattice-1 order it must reach.
fn shifted_cube_arg(
    o: i64,
    c: i64,
    e: i64,
    build: impl Fn(i64) -> Result<QSeries>,
) -> Result<QSeries> {
    let m = (o + 2 - e).div_euclid(9) + 1;
    let f = build(m)?;
    Ok(cube_arg(&f)?
        .mul_monomial_num(&Coeff::from_integer(c.into()), e)
        .truncate_num(o))
}

/// `R = j(q^(1/3); q^(2/3}) / j(q; q^2)` on lattice 3 — the theta quotient
/// which, multiplied by classical thetas, gives the omega-combinations of
/// the first two tenth order functions.
fn r_quotient(w: i64) -> Result<QSeries> {
    let num = theta_cap_j(3, Exp::new(1, 3), Exp::new(2, 3), ThetaKind::Plain, w)?;
    let den = theta_cap_j(3, ei(1), ei(2), ThetaKind::Plain, w)?;
    num.div(&den)
}

/// `psi(q^(1/3)) / psi(q)` on lattice 3, where
/// `psi(q) = sum_(n>=0) q^(n(n+1)/2) = (q^2;q^2)_inf^2 / (q;q)_inf` — the
/// theta quotient appearing in the third and fourth omega-combinations.
/// It equals the quotient of the *bilateral* sums
/// `sum_(n in Z) q^(n(n+1)/6) / sum_(n in Z) q^(n(n+1)/2)` (each bilateral
/// sum is twice the one-sided one, so the factors of two cancel).
fn psi_ratio(w: i64) -> Result<QSeries> {
    let two_thirds = ParamValue::new(Coeff::one(), Exp::new(2, 3));
    let third = ParamValue::new(Coeff::one(), Exp::new(1, 3));
    let num = pochhammer_inf(3, &two_thirds, Exp::new(2, 3), w)?
        .pow(2)?
        .div(&pochhammer_inf(3, &third, Exp::new(1, 3), w)?)?;
    let den = pochhammer_inf(3, &pv(1, 2), ei(2), w)?
        .pow(2)?
        .div(&pochhammer_inf(3, &pv(1, 1), ei(1), w)?)?;
    num.div(&den)
}

fn tenth_record(
    id: &str,
    source: &str,
    order: i64,
    lhs: super::Builder,
    rhs: super::Builder,
    witness: Option<DualWitness>,
) -> IdentityRecord {
    IdentityRecord {
        id: id.into(),
        source: source.into(),
        group: 6,
        tags: vec![],
        status: Status::Fixed,
        lattice: 1,
        default_order: order,
        samples: vec![Sample::fixed()],
        lhs,
        rhs,
        alt: vec![],
        dual_of: witness,
    }
}

fn omega_record(id: &str, source: &str, lhs: super::Builder, rhs: super::Builder) -> IdentityRecord {
    IdentityRecord {
        id: id.into(),
        source: source.into(),
        group: 6,
        tags: vec!["omega"],
        status: Status::Fixed,
        lattice: 3,
        default_order: 30,
        samples: vec![Sample::fixed()],
        lhs,
        rhs,
        alt: vec![],
        dual_of: None,
    }
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut v = Vec::new();

    v.push(tenth_record(
        "mock-phi-10th",
        "tenth order mock theta phi: Appell-Lerch evaluation at base q^10 (Choi)",
        50,
        builder(|_, o| phi_original(o)),
        builder(|_, o| {
            m_combo(o, 10, 0, &[(-1, -1, (1, 1), (1, 1)), (-1, -1, (1, 1), (1, 2))])
        }),
        None,
    ));

    v.push(tenth_record(
        "mock-psi-10th",
        "tenth order mock theta psi: Appell-Lerch evaluation at base q^10 (Choi)",
        50,
        builder(|_, o| psi_original(o)),
        builder(|_, o| {
            m_combo(o, 10, 0, &[(-1, 0, (1, 3), (1, 1)), (-1, 0, (1, 3), (1, 3))])
        }),
        None,
    ));

    v.push(tenth_record(
        "mock-X-10th",
        "tenth order mock theta X: Appell-Lerch evaluation at base q^5 (Choi)",
        50,
        builder(|_, o| x_original(o)),
        builder(|_, o| {
            m_combo(o, 5, 0, &[(1, 0, (-1, 2), (1, 1)), (1, 0, (-1, 2), (1, 4))])
        }),
        None,
    ));

    v.push(tenth_record(
        "mock-chi-10th",
        "tenth order mock theta chi: Appell-Lerch evaluation at base q^5 (Choi)",
        50,
        builder(|_, o| chi_original(o)),
        builder(|_, o| {
            m_combo(o, 5, 0, &[(1, 0, (-1, 1), (1, 2)), (1, 0, (-1, 1), (1, 3))])
        }),
        None,
    ));

    v.push(tenth_record(
        "mock-phi-10th-dual",
        "q -> 1/q dual of tenth order phi: two partial thetas at base q^10",
        40,
        builder(|_, o| odd_poch_sum(o, |n| signed(n + 1, (n + 1) * (n + 2) / 2))),
        builder(|_, o| phi_dual_series(o)),
        Some(DualWitness {
            descriptor: phi_descriptor(),
            offset: 0,
        }),
    ));

    v.push(tenth_record(
        "mock-psi-10th-dual",
        "q -> 1/q dual of tenth order psi: two partial thetas at base q^10",
        40,
        builder(|_, o| odd_poch_sum(o, |n| signed(n + 1, n * (n + 1) / 2))),
        builder(|_, o| psi_dual_series(o)),
        Some(DualWitness {
            descriptor: psi_descriptor(),
            offset: 0,
        }),
    ));

    v.push(tenth_record(
        "mock-X-10th-dual",
        "q -> 1/q dual of tenth order X: two partial thetas at base q^5",
        40,
        builder(|_, o| neg_poch_sum(o, 0, |n| signed(n, n * (n + 1)))),
        builder(|_, o| x_dual_series(o)),
        Some(DualWitness {
            descriptor: x_descriptor(),
            offset: 0,
        }),
    ));

    v.push(tenth_record(
        "mock-chi-10th-dual",
        "q -> 1/q dual of tenth order chi: two partial thetas at base q^5",
        40,
        builder(|_, o| neg_poch_sum(o, 1, |n| signed(n, n * (n + 1)))),
        builder(|_, o| chi_dual_series(o)),
        Some(DualWitness {
            descriptor: chi_descriptor(),
            offset: 0,
        }),
    ));

    // --- exact omega-combinations of the duals (identically zero) ---

    v.push(omega_record(
        "tenth-dual-I",
        "omega-combination of the phi/psi duals vanishes identically",
        builder(|_, o| {
            let a = shifted_cube_arg(o, 1, -2, phi_dual_series)?;
            let b = cube_root_weighted(&psi_dual_series(o)?, [0, -1, 1])?;
            a.sub(&b)
        }),
        builder(|_, o| Ok(QSeries::zero(3, o))),
    ));

    v.push(omega_record(
        "tenth-dual-II",
        "omega-combination of the psi/phi duals vanishes identically",
        builder(|_, o| {
            let a = shifted_cube_arg(o, 1, 2, psi_dual_series)?;
            let b = cube_root_weighted(&phi_dual_series(o)?, [1, 0, -1])?;
            a.add(&b)
        }),
        builder(|_, o| Ok(QSeries::zero(3, o))),
    ));

    v.push(omega_record(
        "tenth-dual-III",
        "omega-combination of the X/chi duals vanishes identically",
        builder(|_, o| {
            let a = shifted_cube_arg(o, 1, 0, x_dual_series)?;
            let b = cube_root_weighted(&chi_dual_series(o)?, [1, 0, -1])?;
            a.sub(&b)
        }),
        builder(|_, o| Ok(QSeries::zero(3, o))),
    ));

    v.push(omega_record(
        "tenth-dual-IV",
        "omega-combination of the chi/X duals vanishes identically",
        builder(|_, o| {
            let a = shifted_cube_arg(o, 1, 0, chi_dual_series)?;
            let b = cube_root_weighted(&x_dual_series(o + 2)?, [0, -1, 1])?
                .mul_monomial_num(&Coeff::one(), -2)
                .truncate_num(o);
            a.add(&b)
        }),
        builder(|_, o| Ok(QSeries::zero(3, o))),
    ));

    // --- the same omega-combinations of the originals: theta quotients ---

    v.push(omega_record(
        "tenth-compare-I",
        "omega-combination of original phi/psi equals a theta quotient on the q^(1/3) lattice",
        builder(|_, o| {
            let a = shifted_cube_arg(o, 1, 2, phi_original)?;
            let b = cube_root_weighted(&psi_original(o)?, [0, 1, -1])?;
            a.sub(&b)
        }),
        builder(|_, o| {
            with_padding(o, |w| {
                let theta = theta_cap_j(3, ei(4), ei(5), ThetaKind::Plain, w)?;
                let den = pochhammer_inf(3, &pv(1, 1), ei(2), w)?;
                Ok(r_quotient(w)?
                    .mul(&theta)?
                    .div(&den)?
                    .mul_monomial_num(&-Coeff::one(), 1))
            })
        }),
    ));

    v.push(omega_record(
        "tenth-compare-II",
        "omega-combination of original psi/phi equals a theta quotient on the q^(1/3) lattice",
        builder(|_, o| {
            let a = shifted_cube_arg(o, 1, -2, psi_original)?;
            let b = cube_root_weighted(&phi_original(o)?, [1, -1, 0])?;
            a.add(&b)
        }),
        builder(|_, o| {
            with_padding(o, |w| {
                let theta = theta_cap_j(3, ei(3), ei(5), ThetaKind::Plain, w)?;
                let den = pochhammer_inf(3, &pv(1, 1), ei(2), w)?;
                r_quotient(w)?.mul(&theta)?.div(&den)
            })
        }),
    ));

    v.push(omega_record(
        "tenth-compare-III",
        "omega-combination of original X/chi equals a theta quotient on the q^(1/3) lattice",
        builder(|_, o| {
            let a = shifted_cube_arg(o, 1, 0, x_original)?;
            let b = cube_root_weighted(&chi_original(o)?, [1, -1, 0])?;
            a.sub(&b)
        }),
        builder(|_, o| {
            with_padding(o, |w| {
                let theta = theta_cap_j(3, ei(6), ei(10), ThetaKind::Plain, w)?;
                let den = pochhammer_inf(3, &pv(-1, 1), ei(1), w)?;
                psi_ratio(w)?.mul(&theta)?.div(&den)
            })
        }),
    ));

    v.push(omega_record(
        "tenth-compare-IV",
        "omega-combination of original chi/X equals a theta quotient on the q^(1/3) lattice",
        builder(|_, o| {
            let a = shifted_cube_arg(o, 1, 0, chi_original)?;
            let b = cube_root_weighted(&x_original(o + 2)?, [0, 1, -1])?
                .mul_monomial_num(&Coeff::one(), 2)
                .truncate_num(o);
            a.add(&b)
        }),
        builder(|_, o| {
            with_padding(o, |w| {
                let theta = theta_cap_j(3, ei(8), ei(10), ThetaKind::Plain, w)?;
                let den = pochhammer_inf(3, &pv(-1, 1), ei(1), w)?;
                Ok(psi_ratio(w)?
                    .mul(&theta)?
                    .div(&den)?
                    .mul_monomial_num(&Coeff::one(), 3)
                    .neg())
            })
        }),
    ));

    v
}
