//! Invariance certificates, first-integral degree search, rational
//! invariant-line enumeration, bound calculators and parametric-family
//! analysis.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::extactic::{expected_degree, extactic};
use crate::field::VectorField;
use crate::linalg;
use crate::parse::FieldKind;
use crate::poly::{gcd, squarefree_part, MPoly, Monomial, Rational};

/// An invariance certificate: `X(curve) = cofactor * curve` when `invariant`.
#[derive(Clone, Debug)]
pub struct Cofactor {
    pub curve: MPoly,
    pub cofactor: MPoly,
    pub invariant: bool,
}

/// Compute `X(F)` and test whether `F` divides it exactly; on success the
/// quotient is the cofactor.
pub fn invariance_cofactor(field: &VectorField, curve: &MPoly) -> Result<Cofactor> {
    if curve.is_zero() {
        return Err(Error::InvalidArgument(
            "invariance of the zero polynomial is undefined".into(),
        ));
    }
    let curve = curve.primitive_normalized();
    let derived = field.lie_derivative(&curve)?;
    match derived.exact_div(&curve) {
        Ok(cofactor) => Ok(Cofactor {
            curve,
            cofactor,
            invariant: true,
        }),
        Err(Error::NotDivisible { .. }) => Ok(Cofactor {
            cofactor: MPoly::zero(curve.vars()),
            curve,
            invariant: false,
        }),
        Err(e) => Err(e),
    }
}

/// Every invariant curve of degree at most `n` divides E_n(X); vacuously true
/// when E_n vanishes identically.
pub fn factor_containment(field: &VectorField, curve: &MPoly, n: u32) -> Result<bool> {
    let deg = curve
        .homogeneous_degree()
        .ok_or_else(|| Error::InvalidArgument("curve must be homogeneous and nonzero".into()))?;
    if deg > n {
        return Err(Error::InvalidArgument(format!(
            "curve degree {deg} exceeds n = {n}"
        )));
    }
    let report = extactic(field, n)?;
    if report.vanished {
        return Ok(true);
    }
    Ok(curve.primitive_normalized().divides(&report.polynomial))
}

/// Smallest `d <= d_max` with E_d(X) identically zero. By minimality
/// E_{d-1}(X) is nonzero, which is the two-sided first-integral criterion.
pub fn first_integral_degree(field: &VectorField, d_max: u32) -> Result<Option<u32>> {
    for d in 1..=d_max {
        if extactic(field, d)?.vanished {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Rational linear factors of homogeneous ternary forms

#[derive(Clone, Debug)]
pub struct LinearFactors {
    /// Normalized linear forms with multiplicities, sorted canonically.
    pub factors: Vec<(MPoly, u32)>,
    /// `p / prod(L^m)`, the part without rational linear factors.
    pub residual: MPoly,
}

/// All linear forms with rational coefficients dividing a nonzero homogeneous
/// ternary form, each verified by repeated exact division. Complete over the
/// rationals: candidates come from coordinate-plane restrictions, whose
/// binary forms are factored by rational-root search.
pub fn rational_linear_factors(p: &MPoly) -> Result<LinearFactors> {
    if p.is_zero() || p.homogeneous_degree().is_none() {
        return Err(Error::InvalidArgument(
            "rational linear factors require a nonzero homogeneous polynomial".into(),
        ));
    }
    if p.vars().len() != 3 {
        return Err(Error::InvalidArgument(
            "rational linear factors require exactly three variables".into(),
        ));
    }
    let vars = p.vars().clone();
    let mut candidates: BTreeSet<String> = BTreeSet::new();
    let mut candidate_polys: Vec<MPoly> = Vec::new();
    let push = |l: MPoly, seen: &mut BTreeSet<String>, out: &mut Vec<MPoly>| {
        let l = l.primitive_normalized();
        if seen.insert(l.to_string()) {
            out.push(l);
        }
    };

    // coordinate lines
    for v in vars.iter() {
        push(
            MPoly::var(&vars, v)?,
            &mut candidates,
            &mut candidate_polys,
        );
    }

    // strip coordinate factors, then square-free part for candidate search
    let mut stripped = p.primitive_normalized();
    for v in vars.iter() {
        let xv = MPoly::var(&vars, v)?;
        while xv.divides(&stripped) {
            stripped = stripped.exact_div(&xv)?;
        }
    }
    let core = if stripped.is_constant() {
        stripped.clone()
    } else {
        squarefree_part(&stripped)?
    };

    // restrictions to the coordinate planes give binary forms whose rational
    // linear factors determine two coefficients of each candidate line
    let ratios_z = binary_line_ratios(&core, 0, 1)?; // a x + b y
    let ratios_y = binary_line_ratios(&core, 0, 2)?; // a x + c z
    let ratios_x = binary_line_ratios(&core, 1, 2)?; // b y + c z
    let line = |coeffs: [Rational; 3]| -> Result<MPoly> {
        let mut acc = MPoly::zero(&vars);
        for (i, c) in coeffs.iter().enumerate() {
            acc = acc.add(&MPoly::var(&vars, &vars[i])?.mul_scalar(c))?;
        }
        Ok(acc)
    };
    for (a, b) in &ratios_z {
        push(
            line([a.clone(), b.clone(), Rational::zero()])?,
            &mut candidates,
            &mut candidate_polys,
        );
    }
    for (a, c) in &ratios_y {
        push(
            line([a.clone(), Rational::zero(), c.clone()])?,
            &mut candidates,
            &mut candidate_polys,
        );
    }
    for (b, c) in &ratios_x {
        push(
            line([Rational::zero(), b.clone(), c.clone()])?,
            &mut candidates,
            &mut candidate_polys,
        );
    }
    // lines with all three coefficients nonzero: merge the (a:b) and (a:c)
    // ratios seen by the z = 0 and y = 0 restrictions
    for (a1, b) in &ratios_z {
        if a1.is_zero() || b.is_zero() {
            continue;
        }
        for (a2, c) in &ratios_y {
            if a2.is_zero() || c.is_zero() {
                continue;
            }
            push(
                line([Rational::one(), b / a1, c / a2])?,
                &mut candidates,
                &mut candidate_polys,
            );
        }
    }

    let mut factors = Vec::new();
    let mut residual = p.primitive_normalized();
    for l in candidate_polys {
        let mut mult = 0u32;
        while l.divides(&residual) {
            residual = residual.exact_div(&l)?;
            mult += 1;
        }
        if mult > 0 {
            factors.push((l, mult));
        }
    }
    factors.sort_by_key(|(l, _)| l.to_string());
    Ok(LinearFactors {
        factors,
        residual: residual.primitive_normalized(),
    })
}

/// Normalized coefficient pairs `(a, b)` such that `a*u + b*w` divides the
/// restriction of `p` to the plane where the third variable vanishes.
fn binary_line_ratios(p: &MPoly, u: usize, w: usize) -> Result<Vec<(Rational, Rational)>> {
    let vars = p.vars().clone();
    let other = (0..3).find(|i| *i != u && *i != w).expect("three vars");
    let mut b = p.substitute(&vars[other], &Rational::zero())?;
    if b.is_zero() {
        return Ok(vec![]);
    }
    // strip powers of u and w (coordinate factors of the restriction only)
    for idx in [u, w] {
        let xv = MPoly::var(&vars, &vars[idx])?;
        while xv.divides(&b) {
            b = b.exact_div(&xv)?;
        }
    }
    // dehomogenize in w and search rational roots of the integer-primitive
    // univariate polynomial in u
    let f = b.substitute(&vars[w], &Rational::one())?.primitive_normalized();
    let deg = match f.degree_in_var(u) {
        Some(d) if d > 0 => d,
        _ => return Ok(vec![]),
    };
    let coeff_of = |e: u32| -> Rational {
        f.terms()
            .find(|(m, _)| m.0[u] == e)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    };
    let lead = coeff_of(deg).numer().clone();
    let trail = coeff_of(0).numer().clone();
    debug_assert!(!trail.is_zero(), "u-power stripped above");
    let mut out = Vec::new();
    let mut seen: BTreeSet<(BigInt, BigInt)> = BTreeSet::new();
    for q in divisors(&lead.abs()) {
        for pnum in divisors(&trail.abs()) {
            for sgn in [1i32, -1] {
                let num = if sgn > 0 { pnum.clone() } else { -pnum.clone() };
                let g = num.gcd(&q);
                let key = (num.clone() / &g, q.clone() / &g);
                if !seen.insert(key.clone()) {
                    continue;
                }
                let root = Rational::new(key.0.clone(), key.1.clone());
                let mut value = Rational::zero();
                for e in (0..=deg).rev() {
                    value = value * &root + coeff_of(e);
                }
                if value.is_zero() {
                    // root p/q gives the factor q*u - p*w
                    out.push((
                        Rational::from_integer(key.1),
                        Rational::from_integer(-key.0),
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if (n % &i).is_zero() {
            out.push(i.clone());
            let j = n / &i;
            if j != i {
                out.push(j);
            }
        }
        i += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Invariant lines

/// Rational invariant lines of a projective field: rational linear factors of
/// E_1(X), filtered by an invariance certificate (factorhood is necessary but
/// not sufficient).
pub fn invariant_lines(field: &VectorField) -> Result<Vec<Cofactor>> {
    let report = extactic(field, 1)?;
    if report.vanished {
        return Err(Error::FirstExtacticVanishes);
    }
    let factors = rational_linear_factors(&report.polynomial)?;
    let mut out = Vec::new();
    for (l, _) in factors.factors {
        let cert = invariance_cofactor(field, &l)?;
        if cert.invariant {
            out.push(cert);
        }
    }
    Ok(out)
}

/// Invariant lines through a rational projective point: move the point to
/// `[0:0:1]` by a deterministic rational change of coordinates, factor the
/// 2x2 lines-through-a-point determinant, pull the candidates back and filter
/// by invariance under the original field.
pub fn invariant_lines_through_point(
    field: &VectorField,
    point: &[Rational; 3],
) -> Result<Vec<Cofactor>> {
    if field.kind() != FieldKind::Projective || field.geometric_vars().len() != 3 {
        return Err(Error::InvalidField(
            "lines through a point require a projective field on three variables".into(),
        ));
    }
    if !field.params().is_empty() {
        return Err(Error::InvalidField(
            "lines through a point require a parameter-free field".into(),
        ));
    }
    if point.iter().all(Rational::is_zero) {
        return Err(Error::InvalidArgument(
            "the zero triple is not a projective point".into(),
        ));
    }
    let vars = field.all_vars().clone();
    // columns: the two standard basis vectors other than the pivot, then p
    let pivot = point.iter().position(|c| !c.is_zero()).expect("nonzero");
    let mut mat: linalg::Mat = vec![vec![Rational::zero(); 3]; 3];
    let mut col = 0;
    for i in 0..3 {
        if i != pivot {
            mat[i][col] = Rational::one();
            col += 1;
        }
    }
    for i in 0..3 {
        mat[i][2] = point[i].clone();
    }
    let inv = linalg::invert(&mat).expect("unit column plus pivot column is invertible");

    // coefficients of the field in the new coordinates: A'(x') = M^-1 A(M x')
    let linear = |row: &[Rational]| -> Result<MPoly> {
        let mut acc = MPoly::zero(&vars);
        for (j, c) in row.iter().enumerate() {
            acc = acc.add(&MPoly::var(&vars, &vars[j])?.mul_scalar(c))?;
        }
        Ok(acc)
    };
    let images: Vec<MPoly> = mat
        .iter()
        .map(|row| linear(row))
        .collect::<Result<_>>()?;
    let composed: Vec<MPoly> = field
        .coefficients()
        .iter()
        .map(|c| c.compose(&images))
        .collect::<Result<_>>()?;
    let mut new_coeffs = Vec::with_capacity(3);
    for row in &inv {
        let mut acc = MPoly::zero(&vars);
        for (j, c) in row.iter().enumerate() {
            acc = acc.add(&composed[j].mul_scalar(c))?;
        }
        new_coeffs.push(acc);
    }

    // det [[x, y], [X'(x), X'(y)]] = x * X'(y) - y * X'(x)
    let x = MPoly::var(&vars, &vars[0])?;
    let y = MPoly::var(&vars, &vars[1])?;
    let det = x.mul(&new_coeffs[1])?.sub(&y.mul(&new_coeffs[0])?)?;
    if det.is_zero() {
        return Err(Error::PencilThroughPoint);
    }

    // candidate lines through [0:0:1] are forms in x', y' only
    let mut candidates: Vec<MPoly> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut work = det.clone();
    let z = MPoly::var(&vars, &vars[2])?;
    while z.divides(&work) {
        work = work.exact_div(&z)?;
    }
    for v in [&vars[0], &vars[1]] {
        let xv = MPoly::var(&vars, v)?;
        if xv.divides(&work) && seen.insert(xv.to_string()) {
            candidates.push(xv);
        }
    }
    for (a, b) in binary_line_ratios(&work, 0, 1)? {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let l = x.mul_scalar(&a).add(&y.mul_scalar(&b))?.primitive_normalized();
        if l.divides(&work) && seen.insert(l.to_string()) {
            candidates.push(l);
        }
    }

    // pull back through M^-1 and certify invariance under the original field
    let back: Vec<MPoly> = inv.iter().map(|row| linear(row)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for cand in candidates {
        let pulled = cand.compose(&back)?.primitive_normalized();
        let cert = invariance_cofactor(field, &pulled)?;
        if cert.invariant {
            out.push(cert);
        }
    }
    out.sort_by_key(|c| c.curve.to_string());
    Ok(out)
}

// ---------------------------------------------------------------------------
// Bound calculators

/// Bound on `sum i * n_i(X)` over invariant curves of degree up to n: the
/// degree of E_n(X).
pub fn solution_count_bound(d: u32, n: u32) -> i64 {
    expected_degree(d, n)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalBound {
    pub exact: Rational,
    pub floor: i64,
}

fn rational_bound(num: i64, den: i64) -> RationalBound {
    let exact = Rational::new(BigInt::from(num), BigInt::from(den));
    let floor: BigInt = exact.floor().to_integer();
    RationalBound {
        exact,
        floor: i64::try_from(floor).expect("desk-scale bound"),
    }
}

/// Maximum number of invariant curves of degree exactly n; the closed form
/// can be half-integral, so the exact rational is reported with its floor.
pub fn curve_count_bound(d: u32, n: u32) -> RationalBound {
    let (d, n) = (d as i64, n as i64);
    let num = d * (n * n * n + 6 * n * n + 11 * n + 6) - n * n * n - 2 * n * n + n + 2;
    rational_bound(num, 8)
}

/// Jouanolou's bound d(d+2)/2 on irreducible algebraic solutions, floored
/// when half-integral.
pub fn jouanolou_bound(d: u32) -> RationalBound {
    let d = d as i64;
    rational_bound(d * (d + 2), 2)
}

/// Threshold on the field-of-definition degree above which a first integral
/// is forced: min of the extactic bound and Jouanolou's bound.
pub fn field_extension_bound(d: u32, n: u32) -> i64 {
    solution_count_bound(d, n).min(jouanolou_bound(d).floor)
}

// ---------------------------------------------------------------------------
// Parametric families

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub pencil_degree: u32,
    pub n: u32,
    pub param_names: (String, String),
    /// Coefficient form of each geometric monomial of E_n(sX + tY), as a
    /// polynomial in the parameters.
    pub coefficient_forms: BTreeMap<Monomial, MPoly>,
    pub gcd_form: MPoly,
    /// Primitive projective parameter pairs annihilating every coefficient
    /// form; each re-verified by a direct specialized computation.
    pub rational_roots: Vec<(BigInt, BigInt)>,
    /// Degree of a nonzero coefficient form: bounds the number of pencil
    /// members with a first integral of degree at most n.
    pub degree_bound: Option<i64>,
    /// E_n vanishes for the whole family.
    pub identically_zero: bool,
}

/// Analyze the pencil `sX + tY`: compute its n-th extactic polynomial with
/// symbolic parameters, collect the coefficient forms, their gcd and the
/// rational parameter roots (each corresponds to a member with a first
/// integral of degree at most n).
pub fn family_analysis(x: &VectorField, y: &VectorField, n: u32) -> Result<FamilyReport> {
    if !x.params().is_empty() || !y.params().is_empty() {
        return Err(Error::InvalidField(
            "family analysis expects parameter-free pencil generators".into(),
        ));
    }
    let mut s = "s".to_string();
    let mut t = "t".to_string();
    while x.all_vars().contains(&s) {
        s.push('_');
    }
    while x.all_vars().contains(&t) || t == s {
        t.push('_');
    }
    let pencil = VectorField::linear_combination(&s, x, &t, y)?;
    let report = extactic(&pencil, n)?;
    let geo = pencil.geo_indices();
    let s_idx = pencil.all_vars().iter().position(|v| *v == s).expect("s");
    let t_idx = pencil.all_vars().iter().position(|v| *v == t).expect("t");
    let param_vars = Arc::new(vec![s.clone(), t.clone()]);

    let mut coefficient_forms: BTreeMap<Monomial, MPoly> = BTreeMap::new();
    for (m, c) in report.polynomial.terms() {
        let key = Monomial(geo.iter().map(|&i| m.0[i]).collect());
        let pm = Monomial(vec![m.0[s_idx], m.0[t_idx]]);
        coefficient_forms
            .entry(key)
            .or_insert_with(|| MPoly::zero(&param_vars))
            .add_assign_term(pm, c.clone());
    }

    if report.vanished {
        return Ok(FamilyReport {
            pencil_degree: pencil.degree(),
            n,
            param_names: (s, t),
            coefficient_forms,
            gcd_form: MPoly::zero(&param_vars),
            rational_roots: vec![],
            degree_bound: None,
            identically_zero: true,
        });
    }

    // incremental gcd with early exit once it drops to a constant
    let mut gcd_form: Option<MPoly> = None;
    for form in coefficient_forms.values() {
        if form.is_zero() {
            continue;
        }
        gcd_form = Some(match gcd_form {
            None => form.primitive_normalized(),
            Some(g) => gcd(&g, form)?,
        });
        if gcd_form.as_ref().is_some_and(MPoly::is_constant) {
            break;
        }
    }
    let gcd_form = gcd_form.expect("nonzero polynomial has a nonzero coefficient form");

    let mut rational_roots: Vec<(BigInt, BigInt)> = Vec::new();
    if !gcd_form.is_constant() {
        for (a, b) in binary_line_ratios_pair(&gcd_form)? {
            // factor a*s + b*t vanishes at (s : t) = (-b : a)
            let (mut s0, mut t0) = (-b.numer() * a.denom(), a.numer() * b.denom());
            let g = s0.gcd(&t0);
            if !g.is_zero() {
                s0 /= &g;
                t0 /= &g;
            }
            let lead_neg = if s0.is_zero() {
                t0.is_negative()
            } else {
                s0.is_negative()
            };
            if lead_neg {
                s0 = -s0;
                t0 = -t0;
            }
            // re-verify by a direct specialized computation
            let member = pencil.specialize(&[
                (s.clone(), Rational::from_integer(s0.clone())),
                (t.clone(), Rational::from_integer(t0.clone())),
            ])?;
            let vanishes = member.is_zero() || extactic(&member, n)?.vanished;
            if vanishes {
                rational_roots.push((s0, t0));
            }
        }
        rational_roots.sort();
        rational_roots.dedup();
    }

    let degree_bound = coefficient_forms
        .values()
        .find(|f| !f.is_zero())
        .and_then(|f| f.total_degree())
        .map(i64::from);

    Ok(FamilyReport {
        pencil_degree: pencil.degree(),
        n,
        param_names: (s, t),
        coefficient_forms,
        gcd_form,
        rational_roots,
        degree_bound,
        identically_zero: false,
    })
}

/// Binary linear-factor ratios for a two-variable polynomial (the parameter
/// gcd form), reusing the ternary helper by padding with a dummy variable.
fn binary_line_ratios_pair(p: &MPoly) -> Result<Vec<(Rational, Rational)>> {
    let vars = p.vars().clone();
    if vars.len() != 2 {
        return Err(Error::InvalidArgument(
            "expected a binary form in the two parameters".into(),
        ));
    }
    let padded_vars = Arc::new(vec![vars[0].clone(), vars[1].clone(), "__w".to_string()]);
    let padded = p.extend_vars(&padded_vars)?;
    let mut out = binary_line_ratios(&padded, 0, 1)?;
    // coordinate factors s and t are roots too
    let s = MPoly::var(&padded_vars, &padded_vars[0])?;
    let t = MPoly::var(&padded_vars, &padded_vars[1])?;
    if s.divides(&padded) {
        out.push((Rational::one(), Rational::zero()));
    }
    if t.divides(&padded) {
        out.push((Rational::zero(), Rational::one()));
    }
    Ok(out)
}

impl MPoly {
    fn add_assign_term(&mut self, m: Monomial, c: Rational) {
        let updated = MPoly::from_terms(self.vars(), [(m, c)]);
        *self = self.add(&updated).expect("same vars");
    }
}
