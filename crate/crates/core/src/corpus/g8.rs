//! G8 — the finite Rogers-Schur polynomial identities: Gaussian-binomial
//! sums equal to signed pentagonal-weighted columns of the q-Pascal
//! triangle, for every N up to 40, together with their images under the
//! reciprocal-polynomial map (q -> 1/q rescaled back to a polynomial).

use num::One;

use crate::qfuncs::gaussian_binomial;
use crate::series::{reciprocal_polynomial, Coeff, Poly, QSeries};

use super::build::builder;
use super::{IdentityRecord, Sample, Status};

/// `sum_(j>=0) q^(j^2 + shift*j) [N - j, j]_q`.
fn binomial_side(n: i64, shift: i64) -> Poly {
    let mut acc = Poly::zero(1);
    let mut j = 0;
    loop {
        let b = gaussian_binomial(n - j, j);
        if b.is_zero() {
            break;
        }
        acc = acc
            .add(&b.mul_monomial_num(&Coeff::one(), j * j + shift * j))
            .expect("lattice-1 polynomial sum");
        j += 1;
    }
    acc
}

fn sign(l: i64) -> Coeff {
    if l.rem_euclid(2) == 1 {
        -Coeff::one()
    } else {
        Coeff::one()
    }
}

/// `sum_lambda (-1)^lambda q^(lambda(5 lambda + 1)/2) [N, floor((N - 5 lambda)/2)]_q`.
fn pentagonal_side_a(n: i64) -> Poly {
    let mut acc = Poly::zero(1);
    for l in -(n / 5 + 1)..=(n / 5 + 1) {
        let m = (n - 5 * l).div_euclid(2);
        let b = gaussian_binomial(n, m);
        if b.is_zero() {
            continue;
        }
        acc = acc
            .add(&b.mul_monomial_num(&sign(l), l * (5 * l + 1) / 2))
            .expect("lattice-1 polynomial sum");
    }
    acc
}

/// `sum_lambda (-1)^lambda q^(lambda(5 lambda - 3)/2) [N + 1, floor((N + 1 - 5 lambda)/2) + 1]_q`.
fn pentagonal_side_b(n: i64) -> Poly {
    let mut acc = Poly::zero(1);
    for l in -(n / 5 + 2)..=(n / 5 + 2) {
        let m = (n + 1 - 5 * l).div_euclid(2) + 1;
        let b = gaussian_binomial(n + 1, m);
        if b.is_zero() {
            continue;
        }
        acc = acc
            .add(&b.mul_monomial_num(&sign(l), l * (5 * l - 3) / 2))
            .expect("lattice-1 polynomial sum");
    }
    acc
}

fn as_series(p: &Poly, o: i64) -> QSeries {
    p.to_series(o)
}

fn n_samples() -> Vec<Sample> {
    (0..=40).map(|n| Sample::int("N", n)).collect()
}

fn rec(
    id: &str,
    source: &str,
    lhs: super::Builder,
    rhs: super::Builder,
) -> IdentityRecord {
    IdentityRecord {
        id: id.into(),
        source: source.into(),
        group: 8,
        tags: vec!["polynomial"],
        status: Status::Sampled,
        lattice: 1,
        default_order: 1200,
        samples: n_samples(),
        lhs,
        rhs,
        alt: vec![],
        dual_of: None,
    }
}

pub(super) fn records() -> Vec<IdentityRecord> {
    vec![
        rec(
            "Andrews-4.1",
            "finite Rogers-Ramanujan: sum q^(j^2) [N-j,j] as a signed pentagonal binomial sum (Andrews, The Theory of Partitions, Schur's proof)",
            builder(|s, o| Ok(as_series(&binomial_side(s.get_int("N")?, 0), o))),
            builder(|s, o| Ok(as_series(&pentagonal_side_a(s.get_int("N")?), o))),
        ),
        rec(
            "Andrews-4.1-reciprocal",
            "image of the finite Rogers-Ramanujan identity under the reciprocal-polynomial map",
            builder(|s, o| {
                Ok(as_series(
                    &reciprocal_polynomial(&binomial_side(s.get_int("N")?, 0)),
                    o,
                ))
            }),
            builder(|s, o| {
                Ok(as_series(
                    &reciprocal_polynomial(&pentagonal_side_a(s.get_int("N")?)),
                    o,
                ))
            }),
        ),
        rec(
            "Andrews-4.2",
            "finite Rogers-Ramanujan, second form: sum q^(j^2+j) [N-j,j] as a signed pentagonal binomial sum",
            builder(|s, o| Ok(as_series(&binomial_side(s.get_int("N")?, 1), o))),
            builder(|s, o| Ok(as_series(&pentagonal_side_b(s.get_int("N")?), o))),
        ),
        rec(
            "Andrews-4.2-reciprocal",
            "image of the second finite Rogers-Ramanujan identity under the reciprocal-polynomial map",
            builder(|s, o| {
                Ok(as_series(
                    &reciprocal_polynomial(&binomial_side(s.get_int("N")?, 1)),
                    o,
                ))
            }),
            builder(|s, o| {
                Ok(as_series(
                    &reciprocal_polynomial(&pentagonal_side_b(s.get_int("N")?)),
                    o,
                ))
            }),
        ),
    ]
}
