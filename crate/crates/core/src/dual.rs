//! Structural representation of Eulerian q-series and the q -> 1/q duality
//! transform.
//!
//! An [`EulerianDescriptor`] captures a one-index sum
//!
//! ```text
//! sum_n  C0 * gamma^n * (-1)^(eps*n) * prod_s x_s^(g_s n + h_s)
//!        * q^(A n^2 + B n + C)
//!        * prod (num factors) / prod (den factors)
//! ```
//!
//! where each factor is a finite Pochhammer `(c q^(kappa n + e) * prod_s
//! x_s^(p_s); q^f)_{lambda n + mu}`.  The dual transform substitutes
//! q -> 1/q and rewrites every factor with the rho-identity
//! `(a; rho)_n = (a^(-1); q)_n (-a)^n rho^binom(n,2)` (here rho = 1/q per
//! factor base), folding all released sign/monomial material back into the
//! prefactor.  Partial-theta-shaped descriptors (no factors) instead lift to
//! Appell--Lerch candidates `m(x, q^M, *)` through the heuristic
//! `m(x,q,z) ~ sum_{r>=0} (-1)^r x^r q^(-binom(r+1,2))`, with the
//! `m(x,q,z) = x^(-1) m(x^(-1),q,z^(-1))` normalization applied so the
//! candidate's `x` has a nonnegative exponent.

use crate::qfuncs::{pochhammer, rat_pow, with_padding};
use crate::series::{exp_num, fmt_qpow, Coeff, Error, Exp, ParamValue, QSeries, Result};
use num::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;

/// Summation range of a descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumRange {
    /// `n >= n0`
    From(i64),
    /// `n` over all integers
    Integers,
}

/// One finite Pochhammer factor
/// `(c q^(kappa n + e) * prod_s x_s^(p_s); q^f)_{lambda n + mu}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSpec {
    pub coeff: Coeff,
    pub kappa: Exp,
    pub static_exp: Exp,
    pub base: Exp,
    pub lambda: i64,
    pub mu: i64,
    /// formal parameter powers inside the argument
    pub params: Vec<(String, i64)>,
}

impl FactorSpec {
    pub fn new(coeff: Coeff, kappa: Exp, static_exp: Exp, base: Exp, lambda: i64, mu: i64) -> Self {
        FactorSpec {
            coeff,
            kappa,
            static_exp,
            base,
            lambda,
            mu,
            params: Vec::new(),
        }
    }

    pub fn with_param(mut self, name: &str, power: i64) -> Self {
        self.params.push((name.into(), power));
        self
    }
}

/// Formal parameter power `x^(g n + h)` in the prefactor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPower {
    pub name: String,
    pub per_n: i64,
    pub constant: i64,
}

/// Structured description of a one-index Eulerian q-sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianDescriptor {
    pub lattice: u32,
    pub range: SumRange,
    /// global constant coefficient C0
    pub coeff: Coeff,
    /// exponent polynomial A n^2 + B n + C
    pub a2: Exp,
    pub a1: Exp,
    pub a0: Exp,
    /// sign character epsilon: include (-1)^n when true
    pub sign_char: bool,
    /// per-index coefficient base gamma (gamma^n)
    pub gamma: Coeff,
    pub params: Vec<ParamPower>,
    pub num: Vec<FactorSpec>,
    pub den: Vec<FactorSpec>,
}

impl EulerianDescriptor {
    pub fn new(lattice: u32) -> Self {
        EulerianDescriptor {
            lattice,
            range: SumRange::From(0),
            coeff: Coeff::one(),
            a2: Exp::zero(),
            a1: Exp::zero(),
            a0: Exp::zero(),
            sign_char: false,
            gamma: Coeff::one(),
            params: Vec::new(),
            num: Vec::new(),
            den: Vec::new(),
        }
    }

    pub fn range(mut self, range: SumRange) -> Self {
        self.range = range;
        self
    }

    pub fn coeff(mut self, c: Coeff) -> Self {
        self.coeff = c;
        self
    }

    /// Exponent polynomial `a2 n^2 + a1 n + a0`.
    pub fn qpoly(mut self, a2: Exp, a1: Exp, a0: Exp) -> Self {
        self.a2 = a2;
        self.a1 = a1;
        self.a0 = a0;
        self
    }

    /// Toggle the (-1)^n sign character on.
    pub fn signed(mut self) -> Self {
        self.sign_char = true;
        self
    }

    pub fn gamma(mut self, c: Coeff) -> Self {
        self.gamma = c;
        self
    }

    pub fn param(mut self, name: &str, per_n: i64, constant: i64) -> Self {
        self.params.push(ParamPower {
            name: name.into(),
            per_n,
            constant,
        });
        self
    }

    pub fn num(mut self, f: FactorSpec) -> Self {
        self.num.push(f);
        self
    }

    pub fn den(mut self, f: FactorSpec) -> Self {
        self.den.push(f);
        self
    }

    /// True when the descriptor is a bare exponent polynomial (no
    /// Pochhammer factors, no formal parameters).
    pub fn is_partial_theta_shape(&self) -> bool {
        self.num.is_empty() && self.den.is_empty() && self.params.is_empty()
    }
}

fn binding<'a>(
    bindings: &'a HashMap<String, ParamValue>,
    name: &str,
) -> Result<&'a ParamValue> {
    bindings
        .get(name)
        .ok_or_else(|| Error::Domain(format!("no binding supplied for parameter '{name}'")))
}

/// Term-by-term evaluation of a descriptor, truncated to `order`.
///
/// The summation is cut off once three consecutive terms vanish below the
/// working order in a given direction; a term whose valuation falls far
/// below the requested order flags the descriptor as non-convergent.
pub fn evaluate_descriptor(
    d: &EulerianDescriptor,
    order: i64,
    bindings: &HashMap<String, ParamValue>,
) -> Result<QSeries> {
    let lattice = d.lattice;
    for p in &d.params {
        binding(bindings, &p.name)?;
    }
    for f in d.num.iter().chain(&d.den) {
        for (name, _) in &f.params {
            binding(bindings, name)?;
        }
    }

    let term = |n: i64, w: i64| -> Result<QSeries> {
        with_padding(w, |wt| {
            // prefactor coefficient and exponent
            let mut c = d.coeff.clone() * rat_pow(&d.gamma, n);
            if d.sign_char && n.rem_euclid(2) == 1 {
                c = -c;
            }
            let mut e = d.a2 * Exp::from_integer(n * n)
                + d.a1 * Exp::from_integer(n)
                + d.a0;
            for p in &d.params {
                let v = binding(bindings, &p.name)?.pow(p.per_n * n + p.constant);
                c *= v.coeff;
                e += v.exp;
            }
            let mut acc = QSeries::monomial(lattice, c, e, wt)?;
            for (factors, invert) in [(&d.num, false), (&d.den, true)] {
                for f in factors.iter() {
                    let mut arg = ParamValue::new(
                        f.coeff.clone(),
                        f.kappa * Exp::from_integer(n) + f.static_exp,
                    );
                    for (name, p) in &f.params {
                        arg = arg.mul(&binding(bindings, name)?.pow(*p));
                    }
                    let len = f.lambda * n + f.mu;
                    if invert && len < 0 {
                        // 1/(x;q)_{-m} = prod_{i=1}^{m} (1 - x q^(-i)): apply
                        // the exact Laurent binomials instead of inverting a
                        // high-valuation series
                        let ea = exp_num(arg.exp, lattice)?;
                        let fb = exp_num(f.base, lattice)?;
                        for i in 1..=(-len) {
                            acc = acc.mul_binomial_num(&arg.coeff, ea - i * fb);
                        }
                        continue;
                    }
                    let poch = pochhammer(lattice, &arg, f.base, len, wt + 8)?;
                    if invert {
                        if poch.is_zero() {
                            return Err(Error::DegeneratePochhammer(format!(
                                "denominator factor vanishes at n = {n}"
                            )));
                        }
                        acc = acc.mul(&poch.invert()?)?;
                    } else {
                        acc = acc.mul(&poch)?;
                    }
                }
            }
            Ok(acc)
        })
    };

    with_padding(order, |w| {
        let mut acc = QSeries::zero(lattice, w);
        let directions: &[i64] = match d.range {
            SumRange::From(_) => &[1],
            SumRange::Integers => &[1, -1],
        };
        for &dir in directions {
            let start = match d.range {
                SumRange::From(n0) => n0,
                SumRange::Integers => {
                    if dir > 0 {
                        0
                    } else {
                        -1
                    }
                }
            };
            let mut n = start;
            let mut consec = 0;
            let mut last_val: Option<i64> = None;
            loop {
                let t = term(n, w)?;
                let val = t.valuation_num();
                match val {
                    None => {
                        consec += 1;
                    }
                    Some(v) if v >= w => {
                        consec += 1;
                    }
                    Some(v) => {
                        consec = 0;
                        acc = acc.add(&t.truncate_num(w))?;
                        if v < -(4 * w.abs() + 64) && last_val.map_or(false, |lv| v < lv) {
                            return Err(Error::NonConvergent(
                                "descriptor terms grow toward negative exponents".into(),
                            ));
                        }
                        last_val = Some(v);
                    }
                }
                if consec >= 3 {
                    break;
                }
                n += dir;
                if (n - start).abs() > 5_000 {
                    return Err(Error::NonConvergent(
                        "descriptor summation exceeded the term cap".into(),
                    ));
                }
            }
        }
        Ok(acc)
    })
}

/// The q -> 1/q duality transform on a descriptor.
///
/// Every factor `(c q^(kappa n + e); q^f)_{lambda n + mu}`, after the
/// substitution, passes through the rho-identity and re-emerges as
/// `(c^(-1) q^(kappa n + e); q^f)` of the same length; the released
/// monomials `(-c)^L q^(-(kappa n + e) L - f binom(L,2))` with
/// `L = lambda n + mu` fold into the prefactor data (inverted when the
/// factor sits in the denominator).  The result is normalized so `gamma`
/// is positive, its sign absorbed into the sign character.
pub fn invert_q(d: &EulerianDescriptor) -> Result<EulerianDescriptor> {
    let mut out = d.clone();
    out.a2 = -d.a2;
    out.a1 = -d.a1;
    out.a0 = -d.a0;
    out.num.clear();
    out.den.clear();

    let mut fold = |f: &FactorSpec, from_den: bool| -> Result<FactorSpec> {
        if !f.params.is_empty() {
            return Err(Error::Domain(
                "dual transform requires monomial factor arguments (no formal parameters)".into(),
            ));
        }
        if f.coeff.is_zero() {
            return Err(Error::Domain("factor argument has zero coefficient".into()));
        }
        let lam = Exp::from_integer(f.lambda);
        let mu = Exp::from_integer(f.mu);
        let half = Exp::new(1, 2);
        // exponent of the released monomial as a polynomial in n:
        //   -(kappa n + e)(lambda n + mu) - f (L^2 - L)/2,  L = lambda n + mu
        let da2 = -(f.kappa * lam) - f.base * lam * lam * half;
        let da1 = -(f.kappa * mu + f.static_exp * lam)
            - f.base * lam * (Exp::from_integer(2) * mu - Exp::one()) * half;
        let da0 = -(f.static_exp * mu) - f.base * mu * (mu - Exp::one()) * half;
        let sgn = if from_den { -Exp::one() } else { Exp::one() };
        out.a2 += sgn * da2;
        out.a1 += sgn * da1;
        out.a0 += sgn * da0;
        // (-1)^L and c^L
        if f.lambda.rem_euclid(2) == 1 {
            out.sign_char = !out.sign_char;
        }
        let cl = rat_pow(&f.coeff, if from_den { -f.lambda } else { f.lambda });
        out.gamma *= cl;
        let mut cm = rat_pow(&f.coeff, if from_den { -f.mu } else { f.mu });
        if f.mu.rem_euclid(2) == 1 {
            cm = -cm;
        }
        out.coeff *= cm;
        // the factor itself: argument coefficient inverts, exponents survive
        Ok(FactorSpec {
            coeff: Coeff::one() / f.coeff.clone(),
            kappa: f.kappa,
            static_exp: f.static_exp,
            base: f.base,
            lambda: f.lambda,
            mu: f.mu,
            params: Vec::new(),
        })
    };

    let mut num = Vec::with_capacity(d.num.len());
    let mut den = Vec::with_capacity(d.den.len());
    for f in &d.num {
        num.push(fold(f, false)?);
    }
    for f in &d.den {
        den.push(fold(f, true)?);
    }
    out.num = num;
    out.den = den;

    if out.gamma.is_negative() {
        out.gamma = -out.gamma;
        out.sign_char = !out.sign_char;
    }
    Ok(out)
}

/// An Appell--Lerch sum candidate `prefactor * m(x, q^base, z)` with `z`
/// unresolved (`None`, printed as `*`) until supplied from outside.
#[derive(Debug, Clone, PartialEq)]
pub struct AppellCandidate {
    pub prefactor: ParamValue,
    pub x: ParamValue,
    pub base: Exp,
    pub z: Option<ParamValue>,
}

impl fmt::Display for AppellCandidate {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefactor.is_one() {
            write!(out, "{} * ", self.prefactor)?;
        }
        let z = match &self.z {
            Some(z) => z.to_string(),
            None => "*".into(),
        };
        write!(out, "m({}; {}; {})", self.x, fmt_qpow(self.base), z)
    }
}

/// Lift one partial-theta-shaped descriptor
/// `C0 q^C sum_{n>=0} (gamma (-1)^eps q^u)^n q^(M binom(n+1,2))`
/// to its Appell--Lerch candidate.
///
/// Under q -> 1/q the sum matches the heuristic expansion of
/// `m(x, q^M, *)` with `x = -gamma (-1)^eps q^(-u)` and prefactor
/// `C0 q^(-C)`; when `x` carries a negative exponent the
/// `m(x,q,z) = x^(-1) m(x^(-1),q,z^(-1))` rewrite is applied.
pub fn heuristic_candidate(d: &EulerianDescriptor) -> Result<AppellCandidate> {
    if !d.is_partial_theta_shape() {
        return Err(Error::Domain(
            "heuristic requires a partial theta shape (a bare exponent polynomial)".into(),
        ));
    }
    if d.range != SumRange::From(0) {
        return Err(Error::Domain(
            "heuristic requires the summation range n >= 0".into(),
        ));
    }
    if !d.a2.is_positive() {
        return Err(Error::Domain(
            "heuristic requires a positive quadratic exponent coefficient".into(),
        ));
    }
    let base = Exp::from_integer(2) * d.a2;
    let u = d.a1 - d.a2;
    let mut xc = -d.gamma.clone();
    if d.sign_char {
        xc = -xc;
    }
    let mut x = ParamValue::new(xc, -u);
    let mut prefactor = ParamValue::new(d.coeff.clone(), -d.a0);
    let mut z: Option<ParamValue> = None;
    if x.exp.is_negative() {
        prefactor = prefactor.mul(&x.inv());
        x = x.inv();
        z = z.map(|z| z.inv());
    }
    Ok(AppellCandidate {
        prefactor,
        x,
        base,
        z,
    })
}

/// [`heuristic_candidate`] over a list of partial-theta pieces.
pub fn heuristic_candidates(ds: &[EulerianDescriptor]) -> Result<Vec<AppellCandidate>> {
    ds.iter().map(heuristic_candidate).collect()
}

/// Step (iv) bookkeeping: subtract the resolved candidate total from the
/// dual series, leaving the remainder to be recognized.
pub fn remainder(lhs: &QSeries, candidates_resolved: &QSeries) -> Result<QSeries> {
    lhs.sub(candidates_resolved)
}

pub(crate) fn fmt_rat(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Format `a2 n^2 + a1 n + a0` for the descriptor grammar.
pub(crate) fn fmt_npoly(a2: Exp, a1: Exp, a0: Exp) -> String {
    let mut parts: Vec<String> = Vec::new();
    let rat = |e: Exp| -> String {
        if e.is_integer() {
            e.numer().to_string()
        } else {
            format!("{}/{}", e.numer(), e.denom())
        }
    };
    for (c, sym) in [(a2, Some("n^2")), (a1, Some("n")), (a0, None)] {
        if c.is_zero() {
            continue;
        }
        let body = match sym {
            Some(sym) => {
                if c == Exp::one() {
                    sym.to_string()
                } else if c == -Exp::one() {
                    format!("-{sym}")
                } else {
                    format!("{}*{sym}", rat(c))
                }
            }
            None => rat(c),
        };
        if parts.is_empty() {
            parts.push(body);
        } else if let Some(rest) = body.strip_prefix('-') {
            parts.push(format!("- {rest}"));
        } else {
            parts.push(format!("+ {body}"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut arg = if self.kappa.is_zero() {
            ParamValue::new(self.coeff.clone(), self.static_exp).to_string()
        } else {
            let mut s = String::new();
            if self.coeff == -Coeff::one() {
                s.push('-');
            } else if self.coeff != Coeff::one() {
                s.push_str(&fmt_rat(&self.coeff));
                s.push('*');
            }
            let expo = fmt_npoly(Exp::zero(), self.kappa, self.static_exp);
            if expo == "n" {
                s.push_str("q^n");
            } else {
                s.push_str(&format!("q^({expo})"));
            }
            s
        };
        for (name, p) in &self.params {
            if *p == 1 {
                arg.push_str(&format!("*{name}"));
            } else {
                arg.push_str(&format!("*{name}^({p})"));
            }
        }
        write!(
            out,
            "poch({arg}; {}; {})",
            fmt_qpow(self.base),
            fmt_npoly(Exp::zero(), Exp::from_integer(self.lambda), Exp::from_integer(self.mu))
        )
    }
}

impl fmt::Display for EulerianDescriptor {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.range {
            SumRange::From(n0) => write!(out, "sum(n>={n0}) ")?,
            SumRange::Integers => write!(out, "sum(n in Z) ")?,
        }
        let mut atoms: Vec<String> = Vec::new();
        if self.coeff != Coeff::one() {
            if self.coeff == -Coeff::one() {
                atoms.push("-1".into());
            } else {
                atoms.push(fmt_rat(&self.coeff));
            }
        }
        if self.sign_char {
            atoms.push("(-1)^n".into());
        }
        if self.gamma != Coeff::one() {
            atoms.push(format!("({})^n", fmt_rat(&self.gamma)));
        }
        for p in &self.params {
            atoms.push(format!(
                "{}^({})",
                p.name,
                fmt_npoly(Exp::zero(), Exp::from_integer(p.per_n), Exp::from_integer(p.constant))
            ));
        }
        let expo = fmt_npoly(self.a2, self.a1, self.a0);
        if expo != "0" {
            if expo == "1" {
                atoms.push("q".into());
            } else if expo == "n" {
                atoms.push("q^n".into());
            } else {
                atoms.push(format!("q^({expo})"));
            }
        }
        for f in &self.num {
            atoms.push(f.to_string());
        }
        if atoms.is_empty() {
            atoms.push("1".into());
        }
        write!(out, "{}", atoms.join(" * "))?;
        for f in &self.den {
            write!(out, " / {f}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfuncs::{bilateral_m_sum, partial_theta};
    use crate::series::coeff_ratio;

    fn e(n: i64) -> Exp {
        Exp::from_integer(n)
    }

    fn no_bindings() -> HashMap<String, ParamValue> {
        HashMap::new()
    }

    /// Sigma q^n / (-q;q)_{2n}
    fn entry_651a_lhs() -> EulerianDescriptor {
        EulerianDescriptor::new(1)
            .qpoly(e(0), e(1), e(0))
            .den(FactorSpec::new(-Coeff::one(), e(0), e(1), e(1), 2, 0))
    }

    #[test]
    fn evaluates_an_eulerian_form() {
        let d = entry_651a_lhs();
        let f = evaluate_descriptor(&d, 20, &no_bindings()).unwrap();
        // q/(1+q)(1+q^2) + ... : leading terms 1 + q - q^2 + q^3 + ...
        let direct = {
            let mut acc = QSeries::one(1, 20);
            let q1 = ParamValue::new(-Coeff::one(), e(1));
            for n in 1..21 {
                let den = pochhammer(1, &q1, e(1), 2 * n, 25).unwrap();
                acc = acc
                    .add(
                        &den.invert()
                            .unwrap()
                            .mul_monomial_num(&Coeff::one(), n)
                            .truncate_num(20),
                    )
                    .unwrap();
            }
            acc
        };
        assert!(f.equal_to_order(&direct, 20).unwrap());
    }

    #[test]
    fn partial_theta_descriptor_matches_kernel() {
        // sum (-1)^n q^(2n(n+1)): the exponent is 4*binom(n+1,2), so this
        // is partial_theta(1; q^4)
        let d = EulerianDescriptor::new(1).signed().qpoly(e(2), e(2), e(0));
        let f = evaluate_descriptor(&d, 40, &no_bindings()).unwrap();
        let pt = partial_theta(1, &ParamValue::from_int(1), Exp::from_integer(4), 40).unwrap();
        assert!(f.equal_to_order(&pt, 40).unwrap());
    }

    #[test]
    fn bilateral_descriptor_matches_bilateral_sum() {
        // first bilateral form of m(a/b, q, -b): with formal slots a, b
        let d = EulerianDescriptor::new(1)
            .range(SumRange::Integers)
            .qpoly(e(1), e(0), e(0))
            .param("a", -1, -1)
            .param("b", -1, 0)
            .den(
                FactorSpec::new(-Coeff::one(), e(0), e(0), e(1), 1, 1).with_param("a", -1),
            )
            .den(
                FactorSpec::new(-Coeff::one(), e(0), e(1), e(1), 1, 0).with_param("b", -1),
            );
        let mut bindings = HashMap::new();
        bindings.insert("a".to_string(), ParamValue::from_int(2));
        bindings.insert("b".to_string(), ParamValue::from_int(3));
        let f = evaluate_descriptor(&d, 30, &bindings).unwrap();
        let (first, _) = bilateral_m_sum(1, &ParamValue::from_int(2), &ParamValue::from_int(3), 30)
            .unwrap();
        assert!(f.equal_to_order(&first, 30).unwrap());
        // missing binding is an error
        assert!(matches!(
            evaluate_descriptor(&d, 10, &no_bindings()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn dual_of_651a_is_psibar0() {
        let d = entry_651a_lhs();
        let dual = invert_q(&d).unwrap();
        // expected: sum q^(2n^2) / (-q;q)_{2n}
        assert_eq!(dual.a2, e(2));
        assert_eq!(dual.a1, e(0));
        assert_eq!(dual.a0, e(0));
        assert!(!dual.sign_char);
        assert!(dual.gamma.is_one());
        assert!(dual.coeff.is_one());
        assert_eq!(dual.den[0].coeff, -Coeff::one());
        assert_eq!(dual.den[0].static_exp, e(1));
        let direct = EulerianDescriptor::new(1)
            .qpoly(e(2), e(0), e(0))
            .den(FactorSpec::new(-Coeff::one(), e(0), e(1), e(1), 2, 0));
        let lhs = evaluate_descriptor(&dual, 40, &no_bindings()).unwrap();
        let rhs = evaluate_descriptor(&direct, 40, &no_bindings()).unwrap();
        assert!(lhs.equal_to_order(&rhs, 40).unwrap());
        assert_eq!(dual.to_string(), "sum(n>=0) q^(2*n^2) / poch(-q; q; 2*n)");
    }

    #[test]
    fn dual_of_b_first_form() {
        // sum q^n (-q;q^2)_n / (q;q^2)_{n+1}
        //   -> sum (-1)^(n+1) q^(n+1) (-q;q^2)_n / (q;q^2)_{n+1}
        let d = EulerianDescriptor::new(1)
            .qpoly(e(0), e(1), e(0))
            .num(FactorSpec::new(-Coeff::one(), e(0), e(1), e(2), 1, 0))
            .den(FactorSpec::new(Coeff::one(), e(0), e(1), e(2), 1, 1));
        let dual = invert_q(&d).unwrap();
        assert_eq!((dual.a2, dual.a1, dual.a0), (e(0), e(1), e(1)));
        assert!(dual.sign_char);
        assert_eq!(dual.coeff, -Coeff::one());
        assert!(dual.gamma.is_one());
        assert_eq!(dual.num[0].coeff, -Coeff::one());
        assert_eq!(dual.den[0].coeff, Coeff::one());
    }

    #[test]
    fn dual_of_b_second_form_and_remainder() {
        // sum q^(n^2+n) (-q^2;q^2)_n / (q;q^2)_{n+1}^2
        //   -> sum q^(2n+2) (-q^2;q^2)_n / (q;q^2)_{n+1}^2
        let den = FactorSpec::new(Coeff::one(), e(0), e(1), e(2), 1, 1);
        let d = EulerianDescriptor::new(1)
            .qpoly(e(1), e(1), e(0))
            .num(FactorSpec::new(-Coeff::one(), e(0), e(2), e(2), 1, 0))
            .den(den.clone())
            .den(den);
        let dual = invert_q(&d).unwrap();
        assert_eq!((dual.a2, dual.a1, dual.a0), (e(0), e(2), e(2)));
        assert!(!dual.sign_char);
        assert!(dual.coeff.is_one() && dual.gamma.is_one());

        // both Eulerian forms of the second order mock theta function agree
        // for |q| < 1 ...
        let b1 = EulerianDescriptor::new(1)
            .qpoly(e(0), e(1), e(0))
            .num(FactorSpec::new(-Coeff::one(), e(0), e(1), e(2), 1, 0))
            .den(FactorSpec::new(Coeff::one(), e(0), e(1), e(2), 1, 1));
        let f1 = evaluate_descriptor(&b1, 60, &no_bindings()).unwrap();
        let f2 = evaluate_descriptor(&d, 60, &no_bindings()).unwrap();
        assert!(f1.equal_to_order(&f2, 60).unwrap());

        // ... while the duals differ exactly by the mixed term
        let dual1 = invert_q(&b1).unwrap();
        let g1 = evaluate_descriptor(&dual1, 40, &no_bindings()).unwrap();
        let g2 = evaluate_descriptor(&dual, 40, &no_bindings()).unwrap();
        let diff = remainder(&g2, &g1).unwrap();
        // q J_4/J_{1,2} (sum q^(3n^2+2n) - sum q^(3n^2+4n+1))
        let mixed = {
            let j4 = crate::qfuncs::pochhammer_inf(
                1,
                &ParamValue::new(Coeff::one(), e(4)),
                e(4),
                46,
            )
            .unwrap();
            let j12 =
                crate::qfuncs::theta_cap_j(1, e(1), e(2), crate::qfuncs::ThetaKind::Plain, 46)
                    .unwrap();
            let mut pt = QSeries::zero(1, 46);
            let mut n = 0;
            loop {
                let e1 = 3 * n * n + 2 * n;
                let e2 = 3 * n * n + 4 * n + 1;
                if e1 >= 46 && e2 >= 46 {
                    break;
                }
                if e1 < 46 {
                    pt.add_term_num(e1, Coeff::one());
                }
                if e2 < 46 {
                    pt.add_term_num(e2, -Coeff::one());
                }
                n += 1;
            }
            j4.mul(&j12.invert().unwrap())
                .unwrap()
                .mul(&pt)
                .unwrap()
                .mul_monomial_num(&Coeff::one(), 1)
        };
        let o = diff.order_num().min(40);
        assert!(diff.equal_to_order(&mixed, o).unwrap());
    }

    #[test]
    fn involution_up_to_normalization() {
        let descriptors = vec![
            entry_651a_lhs(),
            EulerianDescriptor::new(1)
                .qpoly(e(1), e(1), e(0))
                .num(FactorSpec::new(-Coeff::one(), e(0), e(2), e(2), 1, 0))
                .den(FactorSpec::new(Coeff::one(), e(0), e(1), e(2), 1, 1))
                .den(FactorSpec::new(Coeff::one(), e(0), e(1), e(2), 1, 1)),
            // F0 form: sum q^(n^2) / (q^(n+1);q)_n
            EulerianDescriptor::new(1)
                .qpoly(e(1), e(0), e(0))
                .den(FactorSpec::new(Coeff::one(), e(1), e(1), e(1), 1, 0)),
        ];
        for d in descriptors {
            let twice = invert_q(&invert_q(&d).unwrap()).unwrap();
            let a = evaluate_descriptor(&d, 40, &no_bindings()).unwrap();
            let b = evaluate_descriptor(&twice, 40, &no_bindings()).unwrap();
            assert!(a.equal_to_order(&b, 40).unwrap(), "descriptor {d}");
        }
    }

    #[test]
    fn f0_dual_has_triangular_exponent() {
        // sum q^(n^2)/(q^(n+1);q)_n -> sum (-1)^n q^binom(n+1,2)/(q^(n+1);q)_n
        let d = EulerianDescriptor::new(1)
            .qpoly(e(1), e(0), e(0))
            .den(FactorSpec::new(Coeff::one(), e(1), e(1), e(1), 1, 0));
        let dual = invert_q(&d).unwrap();
        assert_eq!((dual.a2, dual.a1, dual.a0), (Exp::new(1, 2), Exp::new(1, 2), e(0)));
        assert!(dual.sign_char);
        assert_eq!(dual.den[0], d.den[0]);
    }

    #[test]
    fn heuristic_on_651a_pieces_gives_the_four_candidates() {
        // RHS of the first Lost Notebook entry, rewritten as four partial
        // thetas q^C sum y^n q^(24 binom(n+1,2)):
        let pieces = vec![
            // sum q^(12n^2+n)
            EulerianDescriptor::new(1).qpoly(e(12), e(1), e(0)),
            // -q^11 sum q^(12n^2+23n)
            EulerianDescriptor::new(1)
                .coeff(-Coeff::one())
                .qpoly(e(12), e(23), e(11)),
            // q sum q^(12n^2+7n)
            EulerianDescriptor::new(1).qpoly(e(12), e(7), e(1)),
            // -q^6 sum q^(12n^2+17n)
            EulerianDescriptor::new(1)
                .coeff(-Coeff::one())
                .qpoly(e(12), e(17), e(6)),
        ];
        let cands = heuristic_candidates(&pieces).unwrap();
        let fmt: Vec<String> = cands.iter().map(|c| c.to_string()).collect();
        assert_eq!(
            fmt,
            [
                "m(-q^11; q^24; *)",
                "m(-q^11; q^24; *)",
                "q^(-1) * m(-q^5; q^24; *)",
                "q^(-1) * m(-q^5; q^24; *)",
            ]
        );
    }

    #[test]
    fn heuristic_on_b_partial_theta() {
        // -q sum (-1)^n q^(2n(n+1)) ~ -q * m(1, q^4, *)
        let d = EulerianDescriptor::new(1)
            .coeff(-Coeff::one())
            .signed()
            .qpoly(e(2), e(2), e(1));
        let c = heuristic_candidate(&d).unwrap();
        assert_eq!(c.base, e(4));
        assert!(c.x.is_one());
        assert_eq!(c.prefactor, ParamValue::new(-Coeff::one(), e(-1)));
        // shape errors
        assert!(heuristic_candidate(&entry_651a_lhs()).is_err());
        let constant = EulerianDescriptor::new(1);
        assert!(heuristic_candidate(&constant).is_err());
    }

    #[test]
    fn descriptor_display_round_trips_structure() {
        let d = EulerianDescriptor::new(1)
            .coeff(coeff_ratio(-1, 2))
            .signed()
            .gamma(coeff_ratio(1, 6))
            .qpoly(Exp::new(1, 2), Exp::new(1, 2), e(1))
            .num(FactorSpec::new(-Coeff::one(), e(0), e(2), e(2), 1, 0))
            .den(FactorSpec::new(Coeff::one(), e(1), e(1), e(1), 1, 1));
        assert_eq!(
            d.to_string(),
            "sum(n>=0) -1/2 * (-1)^n * (1/6)^n * q^(1/2*n^2 + 1/2*n + 1) * \
             poch(-q^2; q^2; n) / poch(q^(n + 1); q; n + 1)"
        );
    }
}
