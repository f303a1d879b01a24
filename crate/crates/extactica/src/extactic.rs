//! Monomial bases, Wronskian-type matrices, exact fraction-free determinants,
//! extactic polynomials, extactic-ideal generators and contact order.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::linalg;
use crate::parse::FieldKind;
use crate::poly::{MPoly, Monomial, Rational};

/// An ordered basis of linearly independent polynomials. The order is part of
/// the identity: it fixes the determinant sign.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    basis: Vec<MPoly>,
    common_degree: Option<u32>,
}

impl LinearSystem {
    pub fn new(basis: Vec<MPoly>) -> Result<LinearSystem> {
        if basis.is_empty() {
            return Err(Error::InvalidSystem("empty basis".into()));
        }
        let vars = basis[0].vars().clone();
        for b in &basis {
            if **b.vars() != *vars {
                return Err(Error::InvalidSystem(
                    "basis elements over different variable lists".into(),
                ));
            }
            if b.is_zero() {
                return Err(Error::InvalidSystem("zero basis element".into()));
            }
        }
        // independence via the rank of the monomial-coefficient matrix
        let mut monomials: BTreeMap<Monomial, usize> = BTreeMap::new();
        for b in &basis {
            for (m, _) in b.terms() {
                let next = monomials.len();
                monomials.entry(m.clone()).or_insert(next);
            }
        }
        let cols = monomials.len();
        let mat: linalg::Mat = basis
            .iter()
            .map(|b| {
                let mut row = vec![Rational::zero(); cols];
                for (m, c) in b.terms() {
                    row[monomials[m]] = c.clone();
                }
                row
            })
            .collect();
        if linalg::rank(mat) < basis.len() {
            return Err(Error::InvalidSystem(
                "basis elements are linearly dependent".into(),
            ));
        }
        let mut degs = basis.iter().map(MPoly::homogeneous_degree);
        let first = degs.next().unwrap();
        let common_degree = match first {
            Some(d) if degs.all(|x| x == Some(d)) => Some(d),
            _ => None,
        };
        Ok(LinearSystem {
            basis,
            common_degree,
        })
    }

    pub fn basis(&self) -> &[MPoly] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Common homogeneous degree, or `None` for an inhomogeneous system.
    pub fn common_degree(&self) -> Option<u32> {
        self.common_degree
    }
}

/// All monomials of degree `n` in the three geometric variables, ordered
/// lexicographically descending in the exponent vectors: `n = 1` gives
/// `(x, y, z)` and `n = 2` gives `(x^2, xy, xz, y^2, yz, z^2)`.
pub fn monomial_basis(n: u32, field: &VectorField) -> Result<LinearSystem> {
    if field.geometric_vars().len() != 3 {
        return Err(Error::InvalidArgument(
            "monomial bases require exactly three geometric variables".into(),
        ));
    }
    monomial_basis_over(n, field.all_vars(), &field.geo_indices())
}

pub fn monomial_basis_over(
    n: u32,
    all_vars: &Arc<Vec<String>>,
    geo_idx: &[usize],
) -> Result<LinearSystem> {
    if n < 1 {
        return Err(Error::InvalidArgument("monomial basis needs n >= 1".into()));
    }
    if geo_idx.len() != 3 {
        return Err(Error::InvalidArgument(
            "monomial bases require exactly three geometric variables".into(),
        ));
    }
    let mut basis = Vec::new();
    for a in (0..=n).rev() {
        for b in (0..=n - a).rev() {
            let c = n - a - b;
            let mut exps = vec![0u32; all_vars.len()];
            exps[geo_idx[0]] = a;
            exps[geo_idx[1]] = b;
            exps[geo_idx[2]] = c;
            basis.push(MPoly::from_terms(
                all_vars,
                [(Monomial(exps), Rational::one())],
            ));
        }
    }
    LinearSystem::new(basis)
}

/// `rows x dim` matrix whose i-th row is `X^i` applied entrywise to the basis.
pub fn wronskian_matrix(
    field: &VectorField,
    system: &LinearSystem,
    rows: u32,
) -> Result<Vec<Vec<MPoly>>> {
    if rows < 1 {
        return Err(Error::InvalidArgument("at least one row required".into()));
    }
    let mut out: Vec<Vec<MPoly>> = vec![system.basis().to_vec()];
    for _ in 1..rows {
        let prev = out.last().expect("nonempty");
        let next = prev
            .iter()
            .map(|e| field.lie_derivative(e))
            .collect::<Result<Vec<_>>>()?;
        out.push(next);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Determinants

fn check_square(m: &[Vec<MPoly>]) -> Result<usize> {
    let n = m.len();
    if n == 0 || m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument(
            "determinant requires a nonempty square matrix".into(),
        ));
    }
    Ok(n)
}

/// Naive cofactor expansion along the first column. Exponential; kept both as
/// the small-dimension fast path and as the independent oracle for Bareiss.
pub fn determinant_cofactor(m: &[Vec<MPoly>]) -> Result<MPoly> {
    let n = check_square(m)?;
    let vars = m[0][0].vars().clone();
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = MPoly::zero(&vars);
    for i in 0..n {
        if m[i][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly>> = m
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != i)
            .map(|(_, row)| row[1..].to_vec())
            .collect();
        let sub = determinant_cofactor(&minor)?;
        let term = m[i][0].mul(&sub)?;
        acc = if i % 2 == 0 {
            acc.add(&term)?
        } else {
            acc.sub(&term)?
        };
    }
    Ok(acc)
}

/// Fraction-free Bareiss elimination over integer-primitive rows: rational
/// denominators are cleared row by row and tracked as a scalar, pivots are
/// chosen by fewest terms with sign tracking, and every interior division is
/// exact.
pub fn determinant_bareiss(m: &[Vec<MPoly>]) -> Result<MPoly> {
    let n = check_square(m)?;
    let vars = m[0][0].vars().clone();
    // zero row / column short-circuit: E_d == 0 detection is the hot path
    for i in 0..n {
        if m[i].iter().all(MPoly::is_zero) || m.iter().all(|row| row[i].is_zero()) {
            return Ok(MPoly::zero(&vars));
        }
    }
    let mut scale = Rational::one();
    let mut work: Vec<Vec<MPoly>> = Vec::with_capacity(n);
    for row in m {
        let mut lcm = BigInt::one();
        for e in row {
            for (_, c) in e.terms() {
                lcm = lcm.lcm(c.denom());
            }
        }
        let f = Rational::from_integer(lcm);
        scale *= &f;
        work.push(row.iter().map(|e| e.mul_scalar(&f)).collect());
    }
    let mut sign = false;
    let mut prev = MPoly::one(&vars);
    for k in 0..n - 1 {
        let pivot = (k..n)
            .filter(|&r| !work[r][k].is_zero())
            .min_by_key(|&r| work[r][k].num_terms());
        let Some(pivot) = pivot else {
            return Ok(MPoly::zero(&vars));
        };
        if pivot != k {
            work.swap(pivot, k);
            sign = !sign;
        }
        let pk = work[k][k].clone();
        let head: Vec<MPoly> = work[k][k + 1..].to_vec();
        for i in k + 1..n {
            let lead = work[i][k].clone();
            for j in k + 1..n {
                let t = pk
                    .mul(&work[i][j])?
                    .sub(&lead.mul(&head[j - k - 1])?)?;
                work[i][j] = t.exact_div(&prev)?;
            }
            work[i][k] = MPoly::zero(&vars);
        }
        prev = pk;
    }
    let mut det = work[n - 1][n - 1].clone();
    if sign {
        det = det.neg();
    }
    Ok(det.mul_scalar(&scale.recip()))
}

/// Exact determinant; cofactor expansion up to 4x4, Bareiss beyond.
pub fn determinant(m: &[Vec<MPoly>]) -> Result<MPoly> {
    if check_square(m)? <= 4 {
        determinant_cofactor(m)
    } else {
        determinant_bareiss(m)
    }
}

// ---------------------------------------------------------------------------
// Extactic polynomials

#[derive(Clone, Debug)]
pub struct ExtacticReport {
    pub polynomial: MPoly,
    pub basis: Vec<MPoly>,
    pub expected_degree: Option<i64>,
    pub row_degrees: Vec<i64>,
    pub vanished: bool,
}

/// Degree of E_n(X) for a degree-d field, as the row-degree sum
/// `sum_{i=0}^{N-1} (n + i(d-1))` with `N = (n+2 choose 2)`.
pub fn expected_degree_row_sum(d: u32, n: u32) -> i64 {
    let big_n = ((n as i64) + 2) * ((n as i64) + 1) / 2;
    (0..big_n).map(|i| n as i64 + i * (d as i64 - 1)).sum()
}

/// Same value from the closed form
/// `(d(n^4+6n^3+11n^2+6n) - n^4 - 2n^3 + n^2 + 2n) / 8`.
pub fn expected_degree(d: u32, n: u32) -> i64 {
    let (d, n) = (d as i64, n as i64);
    let n2 = n * n;
    let n3 = n2 * n;
    let n4 = n3 * n;
    (d * (n4 + 6 * n3 + 11 * n2 + 6 * n) - n4 - 2 * n3 + n2 + 2 * n) / 8
}

/// The n-th extactic polynomial of a projective field on three variables:
/// determinant of the Wronskian matrix of the full degree-n monomial basis.
pub fn extactic(field: &VectorField, n: u32) -> Result<ExtacticReport> {
    if field.kind() != FieldKind::Projective {
        return Err(Error::InvalidField("extactic curves require a projective field".into()));
    }
    if field.is_zero() {
        return Err(Error::InvalidField("extactic curves of the zero field are undefined".into()));
    }
    let system = monomial_basis(n, field)?;
    let dim = system.dim() as u32;
    let matrix = wronskian_matrix(field, &system, dim)?;
    let polynomial = determinant(&matrix)?;
    let d = field.degree();
    let row_degrees: Vec<i64> = (0..dim as i64)
        .map(|i| n as i64 + i * (d as i64 - 1))
        .collect();
    Ok(ExtacticReport {
        vanished: polynomial.is_zero(),
        polynomial,
        basis: system.basis().to_vec(),
        expected_degree: Some(expected_degree(d, n)),
        row_degrees,
    })
}

/// The extactic polynomial of `X` with respect to an arbitrary linear system:
/// determinant of the `dim x dim` Wronskian matrix of the basis.
pub fn extactic_system(field: &VectorField, system: &LinearSystem) -> Result<ExtacticReport> {
    let dim = system.dim() as u32;
    let matrix = wronskian_matrix(field, system, dim)?;
    let polynomial = determinant(&matrix)?;
    let meta = match (field.kind(), system.common_degree()) {
        (FieldKind::Projective, Some(m)) => {
            let d = field.degree() as i64;
            let rows: Vec<i64> = (0..dim as i64).map(|i| m as i64 + i * (d - 1)).collect();
            Some((rows.iter().sum::<i64>(), rows))
        }
        _ => None,
    };
    let (expected_degree, row_degrees) = match meta {
        Some((e, r)) => (Some(e), r),
        None => (None, vec![]),
    };
    Ok(ExtacticReport {
        vanished: polynomial.is_zero(),
        polynomial,
        basis: system.basis().to_vec(),
        expected_degree,
        row_degrees,
    })
}

/// Generators of the extactic ideal in homogeneous coordinates: the
/// determinants over every increasing derivative-index tuple of length
/// `dim V` drawn from `0..=K`.
pub fn extactic_ideal_generators(
    field: &VectorField,
    system: &LinearSystem,
    max_index: u32,
) -> Result<Vec<MPoly>> {
    let l = system.dim();
    if (max_index as usize) < l - 1 {
        return Err(Error::InvalidArgument(format!(
            "K = {max_index} is smaller than dim V - 1 = {}",
            l - 1
        )));
    }
    let rows = wronskian_matrix(field, system, max_index + 1)?;
    let mut generators = Vec::new();
    let mut tuple: Vec<usize> = (0..l).collect();
    loop {
        let sub: Vec<Vec<MPoly>> = tuple.iter().map(|&i| rows[i].clone()).collect();
        generators.push(determinant(&sub)?);
        // next increasing tuple in 0..=max_index
        let mut i = l;
        loop {
            if i == 0 {
                return Ok(generators);
            }
            i -= 1;
            if tuple[i] < max_index as usize - (l - 1 - i) {
                tuple[i] += 1;
                for j in i + 1..l {
                    tuple[j] = tuple[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ContactOrder {
    /// Least k with X^k(s) nonvanishing at the point.
    Finite(u32),
    /// All derivatives up to the cap vanish; flat as far as checked.
    FlatUpToCap(u32),
}

/// Contact order of a section with the field at a rational point: the least
/// `k <= cap` with `X^k(s)(p) != 0`, or the flat marker when none exists up
/// to the cap.
pub fn contact_order(
    section: &MPoly,
    field: &VectorField,
    point: &BTreeMap<String, Rational>,
    cap: u32,
) -> Result<ContactOrder> {
    let mut current = section.clone();
    for k in 0..=cap {
        if !current.evaluate(point)?.is_zero() {
            return Ok(ContactOrder::Finite(k));
        }
        if k < cap {
            current = field.lie_derivative(&current)?;
        }
    }
    Ok(ContactOrder::FlatUpToCap(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::radial_field;
    use crate::parse::{parse_polynomial, parse_vector_field};
    use crate::poly::{rat_int, shared_vars};

    fn field(src: &str) -> VectorField {
        VectorField::from_parsed(parse_vector_field(src).unwrap()).unwrap()
    }

    fn p3(text: &str) -> MPoly {
        parse_polynomial(text, &shared_vars(&["x", "y", "z"])).unwrap()
    }

    #[test]
    fn monomial_basis_matches_displayed_matrices() {
        let f = field("vars x y z; dx: y; dy: z; dz: x");
        let b1 = monomial_basis(1, &f).unwrap();
        let names: Vec<String> = b1.basis().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["x", "y", "z"]);

        let b2 = monomial_basis(2, &f).unwrap();
        let names: Vec<String> = b2.basis().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]);

        for n in 1..=5u32 {
            let b = monomial_basis(n, &f).unwrap();
            assert_eq!(b.dim() as u32, (n + 2) * (n + 1) / 2);
            assert_eq!(b.dim() as i64, (n as i64) * (n as i64 + 3) / 2 + 1);
        }
    }

    #[test]
    fn wronskian_rows() {
        let f = field("vars x y z; dx: y; dy: z; dz: x");
        let v = monomial_basis(1, &f).unwrap();
        let m = wronskian_matrix(&f, &v, 3).unwrap();
        assert_eq!(m[0][0].to_string(), "x");
        assert_eq!(m[1][0].to_string(), "y");
        assert_eq!(m[2][0].to_string(), "z");

        let w = wronskian_matrix(&f, &v, 1).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0], v.basis());

        let r = radial_field(&["x", "y", "z"]).unwrap();
        let v = monomial_basis(1, &r).unwrap();
        let m = wronskian_matrix(&r, &v, 3).unwrap();
        assert_eq!(m[0], m[1]);
        assert_eq!(m[1], m[2]);
    }

    #[test]
    fn determinant_examples() {
        let z = p3("0");
        let diag = vec![
            vec![p3("x"), z.clone(), z.clone()],
            vec![z.clone(), p3("y"), z.clone()],
            vec![z.clone(), z.clone(), p3("z")],
        ];
        assert_eq!(determinant(&diag).unwrap(), p3("x*y*z"));

        let m = vec![
            vec![p3("x"), p3("y"), p3("z")],
            vec![p3("y"), p3("z"), z.clone()],
            vec![p3("z"), z.clone(), z.clone()],
        ];
        assert_eq!(determinant(&m).unwrap(), p3("-z^3"));
        assert_eq!(determinant_bareiss(&m).unwrap(), p3("-z^3"));

        let equal_rows = vec![
            vec![p3("x"), p3("y"), p3("z")],
            vec![p3("x"), p3("y"), p3("z")],
            vec![p3("z^2"), p3("x*y"), p3("1")],
        ];
        assert!(determinant(&equal_rows).unwrap().is_zero());
        assert!(determinant_bareiss(&equal_rows).unwrap().is_zero());
    }

    #[test]
    fn extactic_examples() {
        // rows 2 and 3 proportional: first integral x/y of degree 1
        let f = field("vars x y z; dx: x; dy: y; dz: 0");
        let r = extactic(&f, 1).unwrap();
        assert!(r.vanished);

        let f = field("vars x y z; dx: 2*x; dy: y; dz: 0");
        let r = extactic(&f, 1).unwrap();
        assert_eq!(r.polynomial, p3("-2*x*y*z"));
        assert_eq!(r.expected_degree, Some(3));
        assert!(!r.vanished);

        let r = radial_field(&["x", "y", "z"]).unwrap();
        for n in 1..=2 {
            assert!(extactic(&r, n).unwrap().vanished);
        }
    }

    #[test]
    fn extactic_system_examples() {
        // Jouanolou d=2, lines through [0:0:1]
        let f = field("vars x y z; dx: y^2; dy: z^2; dz: x^2");
        let vars = f.all_vars().clone();
        let v = LinearSystem::new(vec![
            MPoly::var(&vars, "x").unwrap(),
            MPoly::var(&vars, "y").unwrap(),
        ])
        .unwrap();
        let r = extactic_system(&f, &v).unwrap();
        assert_eq!(r.polynomial, p3("-y^3 + x*z^2"));

        // singleton system: determinant is the element itself
        let s = LinearSystem::new(vec![p3("x^2 - y*z")]).unwrap();
        let r = extactic_system(&f, &s).unwrap();
        assert_eq!(r.polynomial, p3("x^2 - y*z"));
        assert!(!r.vanished);

        // consistency with the monomial-basis route
        let g = field("vars x y z; dx: 2*x; dy: y; dz: 0");
        let v = monomial_basis(1, &g).unwrap();
        assert_eq!(
            extactic_system(&g, &v).unwrap().polynomial,
            extactic(&g, 1).unwrap().polynomial
        );
    }

    #[test]
    fn expected_degree_values() {
        for d in 0..=10u32 {
            assert_eq!(expected_degree(d, 1), 3 * d as i64);
        }
        assert_eq!(expected_degree(2, 2), 27);
        assert_eq!(expected_degree(1, 1), 3);
        for d in 0..=10u32 {
            for n in 1..=6u32 {
                assert_eq!(expected_degree(d, n), expected_degree_row_sum(d, n));
            }
        }
    }

    #[test]
    fn ideal_generator_combinatorics() {
        let f = field("vars x y z; dx: y^2; dy: z^2; dz: x^2");
        let v = monomial_basis(1, &f).unwrap();
        // K = l-1: the single generator is the extactic itself
        let gens = extactic_ideal_generators(&f, &v, 2).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0], extactic_system(&f, &v).unwrap().polynomial);

        // (K+1 choose l) generators
        let gens = extactic_ideal_generators(&f, &v, 4).unwrap();
        assert_eq!(gens.len(), 10);

        assert!(extactic_ideal_generators(&f, &v, 1).is_err());
    }

    #[test]
    fn contact_order_examples() {
        // d/dx on affine 3-space, s = x^2 at the origin
        let f = field("affine; vars x y z; dx: 1; dy: 0; dz: 0");
        let vars = f.all_vars().clone();
        let s = parse_polynomial("x^2", &vars).unwrap();
        let origin: BTreeMap<String, Rational> = ["x", "y", "z"]
            .iter()
            .map(|v| (v.to_string(), Rational::zero()))
            .collect();
        assert_eq!(
            contact_order(&s, &f, &origin, 10).unwrap(),
            ContactOrder::Finite(2)
        );

        // nonvanishing section has contact 0
        let s = parse_polynomial("x + 1", &vars).unwrap();
        assert_eq!(
            contact_order(&s, &f, &origin, 10).unwrap(),
            ContactOrder::Finite(0)
        );

        // invariant curve at its zero: flat up to any cap
        let g = field("vars x y z; dx: (x - z)*x; dy: (y - z)*y; dz: 0");
        let gvars = g.all_vars().clone();
        let curve = parse_polynomial("x - y", &gvars).unwrap();
        let pt: BTreeMap<String, Rational> = [("x", 2), ("y", 2), ("z", 5)]
            .iter()
            .map(|(v, k)| (v.to_string(), rat_int(*k)))
            .collect();
        for cap in [8u32, 64] {
            assert_eq!(
                contact_order(&curve, &g, &pt, cap).unwrap(),
                ContactOrder::FlatUpToCap(cap)
            );
        }
    }

    #[test]
    fn basis_change_covariance() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let f = field("vars x y z; dx: 2*x; dy: y; dz: 0");
        let e1 = extactic(&f, 1).unwrap().polynomial;
        for _ in 0..8 {
            let entries: Vec<Vec<Rational>> = (0..3)
                .map(|_| (0..3).map(|_| rat_int(rng.gen_range(-3..4))).collect())
                .collect();
            if crate::linalg::invert(&entries).is_none() {
                continue;
            }
            let det: Rational = {
                let m: Vec<Vec<MPoly>> = entries
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|c| MPoly::constant(f.all_vars(), c.clone()))
                            .collect()
                    })
                    .collect();
                determinant(&m).unwrap().constant_term()
            };
            let basis = monomial_basis(1, &f).unwrap();
            let changed: Vec<MPoly> = (0..3)
                .map(|i| {
                    let mut acc = MPoly::zero(f.all_vars());
                    for j in 0..3 {
                        acc = acc
                            .add(&basis.basis()[j].mul_scalar(&entries[i][j]))
                            .unwrap();
                    }
                    acc
                })
                .collect();
            let v = LinearSystem::new(changed).unwrap();
            let e = extactic_system(&f, &v).unwrap().polynomial;
            assert_eq!(e, e1.mul_scalar(&det));
        }
    }

    #[test]
    fn homogeneity_of_reports() {
        let f = field("vars x y z; dx: y^2; dy: z^2; dz: x^2");
        for n in 1..=2u32 {
            let r = extactic(&f, n).unwrap();
            if !r.vanished {
                assert_eq!(
                    r.polynomial.homogeneous_degree().map(i64::from),
                    r.expected_degree
                );
            }
        }
    }
}
