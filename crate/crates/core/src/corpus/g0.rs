//! G0 — structural identities of the kernel functions: the triple product,
//! the `m(x,q,z)` function laws, the two forms of the universal function
//! `g(x,q)`, the `f_{2,2,1}` Appell–Lerch expansion, negative-index
//! Pochhammer evaluation, and the Bailey-pair exchange identities.

use num::{One, Zero};

use crate::bailey::{find_pair, lemma_sides, pairing_sides};
use crate::qfuncs::{
    appell_m, appell_m_alt, binom2, hecke_f, pochhammer, rat_pow, theta_cap_j, theta_cap_j_eta,
    theta_j, theta_j_product, universal_g, universal_g_gdef, with_padding, ThetaKind,
};
use crate::series::{exp_num, Coeff, Exp, ParamValue, QSeries};

use super::build::{builder, ei, pair_samples, pv, pvr, samples_for};
use super::{IdentityRecord, Sample, Status};

/// `(x, z)` bindings that stay clear of `m(x,q,z)` poles and theta zeros
/// for every record below that uses a pair.
fn appell_pairs() -> Vec<(ParamValue, ParamValue)> {
    vec![
        (pv(2, 0), pv(3, 0)),
        (pv(3, 0), pv(5, 0)),
        (pv(5, 0), pv(-2, 0)),
        (pv(-2, 0), pvr(1, 2, 0)),
        (pvr(1, 2, 0), pv(3, 0)),
        (pv(2, 1), pv(3, 0)),
        (pv(2, 0), pv(3, 2)),
        (pv(3, 0), pv(2, 1)),
    ]
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut v = Vec::new();

    v.push(IdentityRecord {
        id: "theta-triple-product".into(),
        source: "Jacobi triple product: theta sum equals the three-factor product".into(),
        group: 0,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 60,
        samples: samples_for("x", |_| false),
        lhs: builder(|s, o| theta_j(1, s.get_point("x")?, ei(1), o)),
        rhs: builder(|s, o| theta_j_product(1, s.get_point("x")?, ei(1), o)),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "appell-m-two-forms".into(),
        source: "Hickerson-Mortenson 2014: the two bilateral series defining m(x,q,z)".into(),
        group: 0,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: pair_samples("x", "z", &appell_pairs()),
        lhs: builder(|s, o| appell_m(1, s.get_point("x")?, ei(1), s.get_point("z")?, o)),
        rhs: builder(|s, o| appell_m_alt(1, s.get_point("x")?, ei(1), s.get_point("z")?, o)),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "appell-m-shift-z".into(),
        source: "Hickerson-Mortenson 2014, Prop. 3.1: m(x,q,z) = m(x,q,qz)".into(),
        group: 0,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: pair_samples("x", "z", &appell_pairs()),
        lhs: builder(|s, o| appell_m(1, s.get_point("x")?, ei(1), s.get_point("z")?, o)),
        rhs: builder(|s, o| {
            let qz = s.get_point("z")?.mul(&pv(1, 1));
            appell_m(1, s.get_point("x")?, ei(1), &qz, o)
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "appell-m-flip".into(),
        source: "Hickerson-Mortenson 2014, Prop. 3.1: m(x,q,z) = x^(-1) m(x^(-1),q,z^(-1))"
            .into(),
        group: 0,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: pair_samples("x", "z", &appell_pairs()),
        lhs: builder(|s, o| appell_m(1, s.get_point("x")?, ei(1), s.get_point("z")?, o)),
        rhs: builder(|s, o| {
            let xi = s.get_point("x")?.inv();
            let zi = s.get_point("z")?.inv();
            let e = exp_num(xi.exp, 1)?;
            let m = appell_m(1, &xi, ei(1), &zi, o - e.min(0))?;
            Ok(m.mul_monomial_num(&xi.coeff, e))
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "appell-m-shift-x".into(),
        source: "Hickerson-Mortenson 2014, Prop. 3.1: m(qx,q,z) = 1 - x m(x,q,z)".into(),
        group: 0,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: pair_samples("x", "z", &appell_pairs()),
        lhs: builder(|s, o| {
            let qx = s.get_point("x")?.mul(&pv(1, 1));
            appell_m(1, &qx, ei(1), s.get_point("z")?, o)
        }),
        rhs: builder(|s, o| {
            let x = s.get_point("x")?;
            let e = exp_num(x.exp, 1)?;
            let m = appell_m(1, x, ei(1), s.get_point("z")?, o - e.min(0))?;
            QSeries::one(1, o).sub(&m.mul_monomial_num(&x.coeff, e))
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "appell-m-z-inversion".into(),
        source: "Hickerson-Mortenson 2014, Prop. 3.1: m(x,q,z) = m(x,q,x^(-1)z^(-1))".into(),
        group: 0,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: pair_samples("x", "z", &appell_pairs()),
        lhs: builder(|s, o| appell_m(1, s.get_point("x")?, ei(1), s.get_point("z")?, o)),
        rhs: builder(|s, o| {
            let x = s.get_point("x")?;
            let w = x.inv().mul(&s.get_point("z")?.inv());
            appell_m(1, x, ei(1), &w, o)
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "appell-m-change-z".into(),
        source: "Hickerson-Mortenson 2014, Thm 3.3: changing z in m(x,q,z) costs a theta quotient"
            .into(),
        group: 0,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: vec![
            Sample::point("x", pv(2, 0))
                .with_point("z1", pv(3, 0))
                .with_point("z0", pv(5, 0)),
            Sample::point("x", pv(3, 0))
                .with_point("z1", pv(-2, 0))
                .with_point("z0", pvr(1, 2, 0)),
            Sample::point("x", pv(5, 0))
                .with_point("z1", pv(2, 1))
                .with_point("z0", pv(3, 0)),
            Sample::point("x", pv(-2, 0))
                .with_point("z1", pv(3, 0))
                .with_point("z0", pv(3, 2)),
            Sample::point("x", pvr(1, 2, 0))
                .with_point("z1", pv(-2, 0))
                .with_point("z0", pv(3, 0)),
        ],
        lhs: builder(|s, o| {
            let x = s.get_point("x")?;
            let m1 = appell_m(1, x, ei(1), s.get_point("z1")?, o)?;
            let m0 = appell_m(1, x, ei(1), s.get_point("z0")?, o)?;
            m1.sub(&m0)
        }),
        rhs: builder(|s, o| {
            let x = s.get_point("x")?.clone();
            let z0 = s.get_point("z0")?.clone();
            let z1 = s.get_point("z1")?.clone();
            with_padding(o, move |w| {
                let j1cubed = theta_cap_j_eta(1, ei(1), w)?.pow(3)?;
                let num = j1cubed
                    .mul(&theta_j(1, &z1.mul(&z0.inv()), ei(1), w)?)?
                    .mul(&theta_j(1, &x.mul(&z0).mul(&z1), ei(1), w)?)?;
                let den = theta_j(1, &z0, ei(1), w)?
                    .mul(&theta_j(1, &z1, ei(1), w)?)?
                    .mul(&theta_j(1, &x.mul(&z0), ei(1), w)?)?
                    .mul(&theta_j(1, &x.mul(&z1), ei(1), w)?)?;
                let e0 = exp_num(z0.exp, 1)?;
                Ok(num.div(&den)?.mul_monomial_num(&z0.coeff, e0))
            })
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "universal-g-two-forms".into(),
        source: "Hickerson 1988: the two Eulerian series for the universal function g(x,q)"
            .into(),
        group: 0,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: samples_for("x", |_| false),
        lhs: builder(|s, o| universal_g_gdef(1, s.get_point("x")?, ei(1), o)),
        rhs: builder(|s, o| universal_g(1, s.get_point("x")?, ei(1), o)),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "universal-g-to-appell".into(),
        source: "Hickerson 1988, Thm 2.2; Hickerson-Mortenson 2014, Prop. 3.2: g as two m-sums"
            .into(),
        group: 0,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: samples_for("x", |_| false),
        lhs: builder(|s, o| universal_g(1, s.get_point("x")?, ei(1), o)),
        rhs: builder(|s, o| {
            let x = s.get_point("x")?;
            let xi = x.inv();
            let x3i = xi.pow(3);
            let x2 = x.pow(2);
            let e1 = exp_num(xi.exp, 1)?;
            let e2 = 2 * e1;
            let w = o + (-e1.min(0)).max(-e2.min(0));
            let m1 = appell_m(1, &x3i.mul(&pv(1, 2)), ei(3), &x2, w)?
                .mul_monomial_num(&xi.coeff, e1);
            let m2 = appell_m(1, &x3i.mul(&pv(1, 1)), ei(3), &x2, w)?
                .mul_monomial_num(&rat_pow(&x.coeff, -2), e2);
            m1.neg().sub(&m2)
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "hecke-f221-expansion".into(),
        source: "Hickerson-Mortenson 2014, Thm 0.4 at (a,b,c) = (2,2,1)".into(),
        group: 0,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 40,
        samples: pair_samples(
            "x",
            "y",
            &[
                (pv(2, 0), pv(3, 0)),
                (pv(3, 0), pv(5, 0)),
                (pv(5, 0), pv(2, 0)),
                (pv(-2, 0), pv(3, 0)),
                (pv(2, 1), pv(3, 0)),
                (pv(2, 0), pv(3, 2)),
            ],
        ),
        lhs: builder(|s, o| hecke_f(1, (2, 2, 1), s.get_point("x")?, s.get_point("y")?, ei(1), o)),
        rhs: builder(|s, o| {
            let x = s.get_point("x")?.clone();
            let y = s.get_point("y")?.clone();
            with_padding(o, move |w| {
                let q = |n: i64| pv(1, n);
                let minus_one = pv(-1, 0);
                let t1 = theta_j(1, &x, ei(2), w)?.mul(&appell_m(
                    1,
                    &y.mul(&x.inv()).neg().mul(&q(1)),
                    ei(1),
                    &minus_one,
                    w,
                )?)?;
                let t2 = theta_j(1, &y, ei(1), w)?.mul(&appell_m(
                    1,
                    &x.mul(&y.pow(2).inv()).mul(&q(1)),
                    ei(2),
                    &minus_one,
                    w,
                )?)?;
                let j01 = theta_cap_j(1, Exp::zero(), ei(1), ThetaKind::Bar, w)?;
                let j02 = theta_cap_j(1, Exp::zero(), ei(2), ThetaKind::Bar, w)?;
                let j2cubed = theta_cap_j_eta(1, ei(2), w)?.pow(3)?;
                let mut corr = QSeries::zero(1, w);
                for d in 0..=1i64 {
                    let num = theta_j(1, &y.mul(&q(d + 1)), ei(2), w)?
                        .mul(&theta_j(1, &x.mul(&y.inv()).neg().mul(&q(1 - d)), ei(2), w)?)?
                        .mul(&j2cubed)?
                        .mul(&theta_j(1, &y.inv().neg().mul(&q(2 + d)), ei(2), w)?)?;
                    let den = theta_j(1, &x.mul(&y.pow(2).inv()).neg().mul(&q(1)), ei(2), w)?
                        .mul(&theta_j(1, &y.mul(&x.inv()).mul(&q(d + 1)), ei(2), w)?)?;
                    let frac = num
                        .div(&den)?
                        .mul_monomial_num(&Coeff::one(), binom2(d + 1));
                    corr = corr.add(&frac)?;
                }
                let corr = corr.div(&j01.mul(&j02)?)?;
                t1.add(&t2)?.sub(&corr)
            })
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "poch-negative-length".into(),
        source: "negative-index Pochhammer: (a;q)_(-n) = (-1)^n a^(-n) q^(n(n+1)/2)/(q/a;q)_n"
            .into(),
        group: 0,
        tags: vec![],
        status: Status::Sampled,
        lattice: 1,
        default_order: 50,
        samples: {
            let mut out = Vec::new();
            for a in [pv(2, 0), pv(5, 0), pvr(1, 2, 0), pv(2, 1), pv(3, 2)] {
                for n in [1i64, 4] {
                    out.push(Sample::point("a", a.clone()).with_int("n", n));
                }
            }
            out
        },
        lhs: builder(|s, o| {
            let a = s.get_point("a")?;
            let n = s.get_int("n")?;
            pochhammer(1, a, ei(1), -n, o)
        }),
        rhs: builder(|s, o| {
            let a = s.get_point("a")?;
            let n = s.get_int("n")?;
            let ea = exp_num(a.exp, 1)?;
            let shift = binom2(n + 1) - n * ea;
            let w = o - shift.min(0);
            let p = pochhammer(1, &a.inv().mul(&pv(1, 1)), ei(1), n, w)?;
            let sign = if n % 2 == 1 {
                -Coeff::one()
            } else {
                Coeff::one()
            };
            let c = rat_pow(&a.coeff, -n) * sign;
            Ok(p.invert()?.mul_monomial_num(&c, shift))
        }),
        alt: vec![],
        dual_of: None,
    });

    let pair_name_samples: Vec<Sample> = crate::bailey::registry()
        .iter()
        .map(|p| Sample::name("pair", p.name))
        .collect();

    v.push(IdentityRecord {
        id: "bailey-pairing".into(),
        source: "Bailey 1947: sum_n beta_n delta_n = sum_n alpha_n gamma_n for conjugate pairs"
            .into(),
        group: 0,
        tags: vec![],
        status: Status::Sampled,
        lattice: 2,
        default_order: 40,
        samples: pair_name_samples.clone(),
        lhs: builder(|s, o| {
            let p = find_pair(s.get_name("pair")?)?;
            let scaled = o / 2 * p.lattice as i64;
            let side = pairing_sides(p, scaled)?.0;
            Ok(normalize_lattice(side, 2))
        }),
        rhs: builder(|s, o| {
            let p = find_pair(s.get_name("pair")?)?;
            let scaled = o / 2 * p.lattice as i64;
            let side = pairing_sides(p, scaled)?.1;
            Ok(normalize_lattice(side, 2))
        }),
        alt: vec![],
        dual_of: None,
    });

    v.push(IdentityRecord {
        id: "bailey-lemma".into(),
        source: "Andrews' Bailey-lemma specialization used by Warnaar 2001".into(),
        group: 0,
        tags: vec![],
        status: Status::Sampled,
        lattice: 2,
        default_order: 40,
        samples: pair_name_samples,
        lhs: builder(|s, o| {
            let p = find_pair(s.get_name("pair")?)?;
            let scaled = o / 2 * p.lattice as i64;
            let side = lemma_sides(p, scaled)?.0;
            Ok(normalize_lattice(side, 2))
        }),
        rhs: builder(|s, o| {
            let p = find_pair(s.get_name("pair")?)?;
            let scaled = o / 2 * p.lattice as i64;
            let side = lemma_sides(p, scaled)?.1;
            Ok(normalize_lattice(side, 2))
        }),
        alt: vec![],
        dual_of: None,
    });

    v
}

/// Re-express `s` on lattice `target` (which its own lattice must divide).
fn normalize_lattice(s: QSeries, target: u32) -> QSeries {
    if s.lattice() == target {
        s
    } else {
        s.refine_lattice(target / s.lattice())
    }
}
