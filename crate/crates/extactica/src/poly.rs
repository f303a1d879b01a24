//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by graded-lex monomial order with
//! respect to the declared variable order, so iteration, rendering and
//! determinant signs are deterministic. A polynomial is zero iff the map is
//! empty; all zero tests are exact.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vector aligned with the owning polynomial's variable list.
/// Ordered by total degree, ties broken lexicographically, so the maximum
/// element of a term map is the graded-lex leading monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree_in(&self, idx: &[usize]) -> u32 {
        idx.iter().map(|&i| self.0[i]).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise quotient, or `None` when `other` does not divide `self`.
    fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct MPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.vars == *other.vars && self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl MPoly {
    pub fn zero(vars: &Arc<Vec<String>>) -> MPoly {
        MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<Vec<String>>, c: Rational) -> MPoly {
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; vars.len()]), c);
        }
        p
    }

    pub fn one(vars: &Arc<Vec<String>>) -> MPoly {
        MPoly::constant(vars, Rational::one())
    }

    pub fn var(vars: &Arc<Vec<String>>, name: &str) -> Result<MPoly> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UndeclaredVar(name.to_string()))?;
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        let mut p = MPoly::zero(vars);
        p.terms.insert(Monomial(exps), Rational::one());
        Ok(p)
    }

    pub fn from_terms<I>(vars: &Arc<Vec<String>>, terms: I) -> MPoly
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = MPoly::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UndeclaredVar(name.to_string()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_constant)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial(vec![0; self.vars.len()]))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, idx: &[usize]) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(idx)).max()
    }

    pub fn degree_in_var(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[idx]).max()
    }

    /// `Some(d)` when every term has the same total degree `d`; `None` for the
    /// zero polynomial or an inhomogeneous one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.homogeneous_degree_in(&(0..self.vars.len()).collect::<Vec<_>>())
    }

    /// Homogeneity with respect to a subset of the variables (the rest are
    /// treated as scalars, e.g. pencil parameters).
    pub fn homogeneous_degree_in(&self, idx: &[usize]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.degree_in(idx));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    fn check_vars(&self, other: &MPoly) -> Result<()> {
        if *self.vars == *other.vars {
            Ok(())
        } else {
            Err(Error::VarMismatch(format!(
                "[{}] vs [{}]",
                self.vars.join(","),
                other.vars.join(",")
            )))
        }
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_vars(other)?;
        let mut out = MPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn mul_scalar(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one(&self.vars);
        for _ in 0..e {
            out = out.mul(self).expect("same vars");
        }
        out
    }

    pub fn partial(&self, var: &str) -> Result<MPoly> {
        let i = self.var_index(var)?;
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] = e - 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let vals: Vec<&Rational> = self
            .vars
            .iter()
            .map(|v| {
                point
                    .get(v)
                    .ok_or_else(|| Error::MissingAssignment(v.clone()))
            })
            .collect::<Result<_>>()?;
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= vals[i];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute a rational value for one variable; the variable stays
    /// declared but no longer occurs.
    pub fn substitute(&self, var: &str, value: &Rational) -> Result<MPoly> {
        let i = self.var_index(var)?;
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut exps = m.0.clone();
            exps[i] = 0;
            let mut k = c.clone();
            for _ in 0..e {
                k *= value;
            }
            out.add_term(Monomial(exps), k);
        }
        Ok(out)
    }

    /// Substitute a polynomial for each variable simultaneously. The images
    /// must all live over a common variable list.
    pub fn compose(&self, images: &[MPoly]) -> Result<MPoly> {
        if images.len() != self.vars.len() {
            return Err(Error::VarMismatch(
                "compose: one image polynomial per variable required".into(),
            ));
        }
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .ok_or_else(|| Error::VarMismatch("compose on empty variable list".into()))?;
        let mut acc = MPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e))?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    pub fn homogenize(&self, var: &str, target: u32) -> Result<MPoly> {
        let i = self.var_index(var)?;
        if self.terms.keys().any(|m| m.0[i] != 0) {
            return Err(Error::HomogenizationVarOccurs(var.to_string()));
        }
        if let Some(d) = self.total_degree() {
            if d > target {
                return Err(Error::DegreeTooLarge {
                    deg: d,
                    target,
                });
            }
        }
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps[i] = target - m.total_degree();
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    pub fn dehomogenize(&self, var: &str) -> Result<MPoly> {
        self.substitute(var, &Rational::one())
    }

    /// Exact multivariate division: returns `h` with `self = q * h`, or an
    /// error when `q` does not divide `self`. Remainder must be exactly zero.
    pub fn exact_div(&self, q: &MPoly) -> Result<MPoly> {
        self.check_vars(q)?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (lm, lc) = q.leading().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = MPoly::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.try_div(lm).ok_or_else(|| Error::NotDivisible {
                dividend: self.to_string(),
                divisor: q.to_string(),
            })?;
            let c = rc / lc;
            quot.add_term(m.clone(), c.clone());
            rem = rem.sub(&q.mul_term(&m, &c))?;
        }
        Ok(quot)
    }

    pub fn divides(&self, other: &MPoly) -> bool {
        !self.is_zero() && other.exact_div(self).is_ok()
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero polynomial maps to 1.
    pub fn rational_content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(&c.numer().abs());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            Rational::one()
        } else {
            Rational::new(num, den)
        }
    }

    /// Integer-primitive form with positive leading coefficient in graded-lex
    /// order. Zero stays zero.
    pub fn primitive_normalized(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.rational_content();
        if self.leading().expect("nonzero").1.is_negative() {
            c = -c;
        }
        self.mul_scalar(&c.recip())
    }

    /// Univariate view along variable `idx`: coefficient of `v^k` at position
    /// `k`, each over the full variable list with the `idx` exponent zeroed.
    fn coeffs_in(&self, idx: usize) -> Vec<MPoly> {
        let d = match self.degree_in_var(idx) {
            Some(d) => d,
            None => return vec![],
        };
        let mut out = vec![MPoly::zero(&self.vars); d as usize + 1];
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            let mut exps = m.0.clone();
            exps[idx] = 0;
            out[e].add_term(Monomial(exps), c.clone());
        }
        out
    }

    #[cfg(test)]
    fn from_coeffs_in(vars: &Arc<Vec<String>>, idx: usize, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero(vars);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, k) in &c.terms {
                let mut exps = m.0.clone();
                exps[idx] += e as u32;
                out.add_term(Monomial(exps), k.clone());
            }
        }
        out
    }

    /// Content with respect to variable `idx`: gcd of the univariate
    /// coefficients (a polynomial free of that variable).
    fn content_in(&self, idx: usize) -> Result<MPoly> {
        let coeffs = self.coeffs_in(idx);
        let mut g = MPoly::zero(&self.vars);
        for c in &coeffs {
            if c.is_zero() {
                continue;
            }
            g = if g.is_zero() {
                c.primitive_normalized()
            } else {
                gcd(&g, c)?
            };
            if g.is_constant() {
                break;
            }
        }
        Ok(g)
    }

    /// Highest-index declared variable that actually occurs.
    fn main_var(&self) -> Option<usize> {
        (0..self.vars.len())
            .rev()
            .find(|&i| self.terms.keys().any(|m| m.0[i] > 0))
    }
}

/// Greatest common divisor, integer-primitive with positive leading
/// coefficient. Computed by recursive primitive polynomial remainder
/// sequences: the polynomials are treated as univariate in the last occurring
/// variable over the ring in the remaining ones, with content extraction.
pub fn gcd(p: &MPoly, q: &MPoly) -> Result<MPoly> {
    p.check_vars(q)?;
    if p.is_zero() && q.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    if p.is_zero() {
        return Ok(q.primitive_normalized());
    }
    if q.is_zero() {
        return Ok(p.primitive_normalized());
    }
    Ok(gcd_nonzero(p, q)?.primitive_normalized())
}

fn gcd_nonzero(p: &MPoly, q: &MPoly) -> Result<MPoly> {
    let v = match p.main_var().max(q.main_var()) {
        Some(v) => v,
        None => return Ok(MPoly::one(p.vars())), // both rational constants
    };
    let cont_p = p.content_in(v)?;
    let cont_q = q.content_in(v)?;
    let cont = gcd(&cont_p, &cont_q)?;
    let mut a = p.exact_div(&cont_p)?;
    let mut b = q.exact_div(&cont_q)?;
    if a.degree_in_var(v) < b.degree_in_var(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.degree_in_var(v).unwrap_or(0) == 0 {
            // primitive parts are coprime in v
            return Ok(cont);
        }
        let r = pseudo_rem(&a, &b, v)?;
        if r.is_zero() {
            let pp = b.exact_div(&b.content_in(v)?)?;
            return cont.mul(&pp);
        }
        a = b;
        b = r.exact_div(&r.content_in(v)?)?;
    }
}

/// Pseudo-remainder of `a` by `b` in the variable `v` (`b` nonzero in `v`).
fn pseudo_rem(a: &MPoly, b: &MPoly, v: usize) -> Result<MPoly> {
    let db = b.degree_in_var(v).expect("b involves v");
    let b_coeffs = b.coeffs_in(v);
    let lb = b_coeffs[db as usize].clone();
    let mut r = a.clone();
    loop {
        let dr = match r.degree_in_var(v) {
            Some(d) if d >= db && !r.is_zero() => d,
            _ => return Ok(r),
        };
        if r.is_zero() {
            return Ok(r);
        }
        let r_coeffs = r.coeffs_in(v);
        let lr = r_coeffs[dr as usize].clone();
        // r <- lb * r - lr * v^(dr-db) * b
        let mut shift = vec![0u32; a.vars().len()];
        shift[v] = dr - db;
        let shifted = b.mul_term(&Monomial(shift), &Rational::one());
        r = r.mul(&lb)?.sub(&shifted.mul(&lr)?)?;
    }
}

/// Product of the distinct irreducible factors of `p`, up to a rational
/// constant: `p / gcd(p, all first partials)`, normalized.
pub fn squarefree_part(p: &MPoly) -> Result<MPoly> {
    if p.is_zero() {
        return Err(Error::SquarefreeOfZero);
    }
    if p.is_constant() {
        return Ok(MPoly::one(p.vars()));
    }
    let mut g = p.clone();
    for v in p.vars().iter().cloned().collect::<Vec<_>>() {
        let d = p.partial(&v)?;
        if d.is_zero() {
            continue;
        }
        g = gcd(&g, &d)?;
        if g.is_constant() {
            break;
        }
    }
    Ok(p.exact_div(&g)?.primitive_normalized())
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let ac = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if m.is_constant() || !ac.is_one() {
                parts.push(ac.to_string());
            }
            for (j, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.vars[j].clone()),
                    _ => parts.push(format!("{}^{}", self.vars[j], e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

pub fn shared_vars(names: &[&str]) -> Arc<Vec<String>> {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn vars3() -> Arc<Vec<String>> {
        shared_vars(&["x", "y", "z"])
    }

    fn p(text: &str) -> MPoly {
        parse_polynomial(text, &vars3()).unwrap()
    }

    #[test]
    fn add_cancellation() {
        assert_eq!(p("x + y").add(&p("x - y")).unwrap(), p("2*x"));
        assert_eq!(p("x^2 - y^2").add(&p("y^2")).unwrap(), p("x^2"));
        let q = p("x^3 - 2*y*z + 1");
        assert_eq!(q.add(&p("0")).unwrap(), q);
    }

    #[test]
    fn mul_basic() {
        assert_eq!(p("x - y").mul(&p("x + y")).unwrap(), p("x^2 - y^2"));
        let q = p("x^2*y - z");
        assert_eq!(q.mul(&p("1")).unwrap(), q);
    }

    #[test]
    fn var_mismatch_rejected() {
        let w = shared_vars(&["w"]);
        let q = parse_polynomial("w", &w).unwrap();
        assert!(matches!(p("x").add(&q), Err(Error::VarMismatch(_))));
        assert!(matches!(p("x").mul(&q), Err(Error::VarMismatch(_))));
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("x^3").partial("x").unwrap(), p("3*x^2"));
        assert_eq!(p("y^2*z").partial("x").unwrap(), p("0"));
        assert_eq!(p("x^2*y^2").partial("y").unwrap(), p("2*x^2*y"));
        assert!(p("x").partial("w").is_err());
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("x^2 - y^2").exact_div(&p("x - y")).unwrap(), p("x + y"));
        assert!(matches!(
            p("x*y*z + 1").exact_div(&p("x + y")),
            Err(Error::NotDivisible { .. })
        ));
        assert!(matches!(p("x").exact_div(&p("0")), Err(Error::DivisionByZero)));
    }

    #[test]
    fn gcd_examples() {
        let g = gcd(&p("x^2 - y^2"), &p("x^2 + 2*x*y + y^2")).unwrap();
        assert_eq!(g, p("x + y"));
        // both quotients exact and coprime afterwards
        let q1 = p("x^2 - y^2").exact_div(&g).unwrap();
        let q2 = p("x^2 + 2*x*y + y^2").exact_div(&g).unwrap();
        assert_eq!(gcd(&q1, &q2).unwrap(), p("1"));

        assert_eq!(gcd(&p("2*x^2 - 2*y^2"), &p("0")).unwrap(), p("x^2 - y^2"));
        assert!(matches!(gcd(&p("0"), &p("0")), Err(Error::GcdOfZeros)));
    }

    #[test]
    fn gcd_coprime_binary_forms() {
        // univariate reduction after content extraction
        let st = shared_vars(&["s", "t"]);
        let a = parse_polynomial("s*t^2", &st).unwrap();
        let b = parse_polynomial("2*t^3 - s^3", &st).unwrap();
        assert_eq!(gcd(&a, &b).unwrap(), parse_polynomial("1", &st).unwrap());
    }

    #[test]
    fn gcd_common_factor_scaling() {
        let a = p("x^2 - y^2");
        let b = p("x^2 + 2*x*y + y^2");
        let r = p("x*z + 1");
        let g = gcd(&a.mul(&r).unwrap(), &b.mul(&r).unwrap()).unwrap();
        let expect = gcd(&a, &b).unwrap().mul(&r).unwrap().primitive_normalized();
        assert_eq!(g, expect);
    }

    #[test]
    fn squarefree_examples() {
        let q = p("x - y").pow(2).mul(&p("x + y")).unwrap();
        assert_eq!(
            squarefree_part(&q).unwrap(),
            p("x - y").mul(&p("x + y")).unwrap().primitive_normalized()
        );
        assert_eq!(squarefree_part(&p("x^3")).unwrap(), p("x"));
        assert_eq!(squarefree_part(&p("-z^3")).unwrap(), p("z"));
        assert!(squarefree_part(&p("0")).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), rat_int(2));
        pt.insert("y".to_string(), rat_int(1));
        pt.insert("z".to_string(), rat_int(0));
        assert_eq!(p("x^2 + y").evaluate(&pt).unwrap(), rat_int(5));

        let zero_pt: BTreeMap<String, Rational> = ["x", "y", "z"]
            .iter()
            .map(|v| (v.to_string(), Rational::zero()))
            .collect();
        assert_eq!(p("x*y + 7").evaluate(&zero_pt).unwrap(), rat_int(7));

        let mut one = BTreeMap::new();
        one.insert("x".to_string(), rat_int(1));
        one.insert("z".to_string(), rat_int(1));
        one.insert("y".to_string(), rat_int(5));
        for d in 1..6u32 {
            let q = p(&format!("x^{} - z^{}", d, d));
            assert_eq!(q.evaluate(&one).unwrap(), rat_int(0));
        }
        assert!(p("x").evaluate(&BTreeMap::new()).is_err());
    }

    #[test]
    fn homogenize_examples() {
        assert_eq!(p("x + 1").homogenize("z", 1).unwrap(), p("x + z"));
        assert_eq!(p("x^2 + y").homogenize("z", 2).unwrap(), p("x^2 + y*z"));
        assert!(matches!(
            p("x^3").homogenize("z", 2),
            Err(Error::DegreeTooLarge { .. })
        ));
        assert!(p("x*z").homogenize("z", 3).is_err());
    }

    #[test]
    fn homogenize_round_trip() {
        let q = p("x^2 + 3*x*y - y + 1/2");
        let h = q.homogenize("z", 2).unwrap();
        assert_eq!(h.homogeneous_degree(), Some(2));
        assert_eq!(h.dehomogenize("z").unwrap(), q);
    }

    #[test]
    fn canonical_rendering_deterministic() {
        let q = p("y^2 + x^2 - 2/3*x*y + z - 5");
        assert_eq!(q.to_string(), q.clone().to_string());
        assert_eq!(q.to_string(), "x^2 - 2/3*x*y + y^2 + z - 5");
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn normalization() {
        let q = p("-2/3*x^2 + 4*y");
        let n = q.primitive_normalized();
        assert_eq!(n, p("x^2 - 6*y"));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = MPoly> {
            proptest::collection::vec(
                (
                    proptest::collection::vec(0u32..3, 3),
                    -4i64..5,
                ),
                0..5,
            )
            .prop_map(|terms| {
                MPoly::from_terms(
                    &vars3(),
                    terms
                        .into_iter()
                        .map(|(e, c)| (Monomial(e), rat_int(c))),
                )
            })
        }

        proptest! {
            #[test]
            fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
                prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                prop_assert_eq!(
                    a.add(&b).unwrap().add(&c).unwrap(),
                    a.add(&b.add(&c).unwrap()).unwrap()
                );
                prop_assert_eq!(
                    a.mul(&b).unwrap().mul(&c).unwrap(),
                    a.mul(&b.mul(&c).unwrap()).unwrap()
                );
                prop_assert_eq!(
                    a.mul(&b.add(&c).unwrap()).unwrap(),
                    a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
                );
            }

            #[test]
            fn mul_then_divide(a in arb_poly(), b in arb_poly()) {
                prop_assume!(!b.is_zero());
                let prod = a.mul(&b).unwrap();
                prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
            }

            #[test]
            fn gcd_divides_both(a in arb_poly(), b in arb_poly()) {
                prop_assume!(!a.is_zero() || !b.is_zero());
                let g = gcd(&a, &b).unwrap();
                prop_assert!(a.is_zero() || g.divides(&a));
                prop_assert!(b.is_zero() || g.divides(&b));
            }

            #[test]
            fn render_parse_round_trip(a in arb_poly()) {
                let text = a.to_string();
                let back = crate::parse::parse_polynomial(&text, &vars3()).unwrap();
                prop_assert_eq!(back, a);
            }
        }
    }
}
