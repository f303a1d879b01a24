//! Vector fields as derivations: Lie derivatives, projectivization, degree,
//! parametric linear combinations and the singular-locus minors.

use std::sync::Arc;


use crate::error::{Error, Result};
use crate::parse::{homogeneous_common_degree, FieldKind, ParsedField};
use crate::poly::{MPoly, Rational};

#[derive(Clone, Debug)]
pub struct VectorField {
    vars: Vec<String>,
    params: Vec<String>,
    all: Arc<Vec<String>>,
    coeffs: Vec<MPoly>,
    kind: FieldKind,
    degree: u32,
}

impl VectorField {
    /// Validate a parsed field and compute its degree. For an affine field
    /// the degree comes from the canonical decomposition
    /// `X = a + g * (radial)` with `g` homogeneous of degree `d` and the
    /// residual coefficients of degree at most `d`.
    pub fn from_parsed(parsed: ParsedField) -> Result<VectorField> {
        let ParsedField {
            vars,
            params,
            coeffs,
            kind,
        } = parsed;
        let mut all: Vec<String> = vars.clone();
        all.extend(params.iter().cloned());
        let all = Arc::new(all);
        for c in &coeffs {
            if **c.vars() != *all {
                return Err(Error::VarMismatch(
                    "field coefficients must live over vars ++ params".into(),
                ));
            }
        }
        let geo_idx: Vec<usize> = (0..vars.len()).collect();
        let degree = match kind {
            FieldKind::Projective => homogeneous_common_degree(&coeffs, &geo_idx)
                .ok_or_else(|| {
                    Error::InvalidField(
                        "projective coefficients must be homogeneous of one common degree".into(),
                    )
                })?,
            FieldKind::Affine => affine_decomposition(&vars, &coeffs)?.degree,
        };
        Ok(VectorField {
            vars,
            params,
            all,
            coeffs,
            kind,
            degree,
        })
    }

    pub fn new_projective(
        vars: Vec<String>,
        params: Vec<String>,
        coeffs: Vec<MPoly>,
    ) -> Result<VectorField> {
        VectorField::from_parsed(ParsedField {
            vars,
            params,
            coeffs,
            kind: FieldKind::Projective,
        })
    }

    pub fn geometric_vars(&self) -> &[String] {
        &self.vars
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// Full variable list (geometric variables then parameters).
    pub fn all_vars(&self) -> &Arc<Vec<String>> {
        &self.all
    }

    pub fn coefficients(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MPoly::is_zero)
    }

    pub(crate) fn geo_indices(&self) -> Vec<usize> {
        (0..self.vars.len()).collect()
    }

    /// X(f) = sum of coefficient * df/dv over the geometric variables.
    /// Parameters have derivative zero by construction.
    pub fn lie_derivative(&self, f: &MPoly) -> Result<MPoly> {
        if **f.vars() != *self.all {
            return Err(Error::VarMismatch(
                "polynomial must live over the field's variable list".into(),
            ));
        }
        let mut acc = MPoly::zero(&self.all);
        for (v, c) in self.vars.iter().zip(&self.coeffs) {
            acc = acc.add(&c.mul(&f.partial(v)?)?)?;
        }
        Ok(acc)
    }

    /// `[f, X(f), ..., X^k(f)]`.
    pub fn iterate_lie(&self, f: &MPoly, k: u32) -> Result<Vec<MPoly>> {
        let mut out = Vec::with_capacity(k as usize + 1);
        out.push(f.clone());
        for _ in 0..k {
            let next = self.lie_derivative(out.last().expect("nonempty"))?;
            out.push(next);
        }
        Ok(out)
    }

    /// Projectivization of an affine field: homogenize the residual
    /// coefficients to degree `d` with the new variable and place `g` in the
    /// new variable's slot.
    pub fn projectivize(&self, new_var: &str) -> Result<VectorField> {
        if self.kind != FieldKind::Affine {
            return Err(Error::InvalidField("projectivize expects an affine field".into()));
        }
        if self.all.iter().any(|v| v == new_var) {
            return Err(Error::InvalidField(format!(
                "homogenization variable `{new_var}` collides with a declared variable"
            )));
        }
        let deco = affine_decomposition(&self.vars, &self.coeffs)?;
        let mut new_vars = self.vars.clone();
        new_vars.push(new_var.to_string());
        let mut new_all: Vec<String> = new_vars.clone();
        new_all.extend(self.params.iter().cloned());
        let new_all = Arc::new(new_all);
        let mut new_coeffs: Vec<MPoly> = deco
            .residual
            .iter()
            .map(|a| {
                a.extend_vars(&new_all)?
                    .homogenize(new_var, deco.degree)
            })
            .collect::<Result<_>>()?;
        new_coeffs.push(deco.radial.extend_vars(&new_all)?);
        VectorField::from_parsed(ParsedField {
            vars: new_vars,
            params: self.params.clone(),
            coeffs: new_coeffs,
            kind: FieldKind::Projective,
        })
    }

    /// `s * X + t * Y` with fresh parameter variables `s`, `t`.
    pub fn linear_combination(
        s: &str,
        x: &VectorField,
        t: &str,
        y: &VectorField,
    ) -> Result<VectorField> {
        if x.kind != FieldKind::Projective || y.kind != FieldKind::Projective {
            return Err(Error::InvalidField(
                "linear combinations require projective fields".into(),
            ));
        }
        if x.vars != y.vars || x.params != y.params {
            return Err(Error::VarMismatch(
                "pencil members must share variables and parameters".into(),
            ));
        }
        if x.degree != y.degree && !x.is_zero() && !y.is_zero() {
            return Err(Error::InvalidField(format!(
                "pencil members must have equal degree ({} vs {})",
                x.degree, y.degree
            )));
        }
        for p in [s, t] {
            if x.all.iter().any(|v| v == p) || s == t {
                return Err(Error::InvalidField(format!(
                    "parameter `{p}` collides with a declared variable"
                )));
            }
        }
        let mut params = x.params.clone();
        params.push(s.to_string());
        params.push(t.to_string());
        let mut all: Vec<String> = x.vars.clone();
        all.extend(params.iter().cloned());
        let all = Arc::new(all);
        let sp = MPoly::var(&all, s)?;
        let tp = MPoly::var(&all, t)?;
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(cx, cy)| {
                sp.mul(&cx.extend_vars(&all)?)?
                    .add(&tp.mul(&cy.extend_vars(&all)?)?)
            })
            .collect::<Result<Vec<_>>>()?;
        VectorField::from_parsed(ParsedField {
            vars: x.vars.clone(),
            params,
            coeffs,
            kind: FieldKind::Projective,
        })
    }

    /// Specialize parameters to rational values. The parameters stay declared
    /// so the variable list is unchanged.
    pub fn specialize(&self, values: &[(String, Rational)]) -> Result<VectorField> {
        let mut coeffs = self.coeffs.clone();
        for (name, value) in values {
            if !self.params.contains(name) {
                return Err(Error::UndeclaredVar(name.clone()));
            }
            for c in coeffs.iter_mut() {
                *c = c.substitute(name, value)?;
            }
        }
        VectorField::from_parsed(ParsedField {
            vars: self.vars.clone(),
            params: self.params.clone(),
            coeffs,
            kind: self.kind,
        })
    }

    /// The three 2x2 minors of the matrix with rows `(x, y, z)` and
    /// `(X(x), X(y), X(z))`; their common zeros form the singular set.
    pub fn singular_minors(&self) -> Result<Vec<MPoly>> {
        if self.vars.len() != 3 {
            return Err(Error::InvalidField(
                "singular minors require exactly three variables".into(),
            ));
        }
        let coords: Vec<MPoly> = self
            .vars
            .iter()
            .map(|v| MPoly::var(&self.all, v))
            .collect::<Result<_>>()?;
        let mut out = Vec::with_capacity(3);
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let m = coords[i]
                .mul(&self.coeffs[j])?
                .sub(&coords[j].mul(&self.coeffs[i])?)?;
            out.push(m);
        }
        Ok(out)
    }
}

pub struct AffineDecomposition {
    /// Residual coefficients of degree at most `degree`.
    pub residual: Vec<MPoly>,
    /// The homogeneous radial multiplier `g` (zero when no radial part).
    pub radial: MPoly,
    pub degree: u32,
}

/// Canonical decomposition of an affine field: split the top-degree
/// homogeneous coefficient parts into a common multiple `g` of the coordinate
/// vector plus a remainder. The radial part is extracted only when `g` is
/// non-constant, which matches the degree convention of the projective side.
pub fn affine_decomposition(vars: &[String], coeffs: &[MPoly]) -> Result<AffineDecomposition> {
    let all = coeffs
        .first()
        .map(|c| c.vars().clone())
        .ok_or_else(|| Error::InvalidField("field without coefficients".into()))?;
    let m = coeffs.iter().filter_map(MPoly::total_degree).max();
    let m = match m {
        Some(m) => m,
        None => {
            return Ok(AffineDecomposition {
                residual: coeffs.to_vec(),
                radial: MPoly::zero(&all),
                degree: 0,
            })
        }
    };
    if m >= 2 {
        let tops: Vec<MPoly> = coeffs
            .iter()
            .map(|c| homogeneous_component(c, m))
            .collect();
        let mut g: Option<MPoly> = None;
        let mut ok = true;
        for (v, t) in vars.iter().zip(&tops) {
            let xv = MPoly::var(&all, v)?;
            match t.exact_div(&xv) {
                Ok(q) => match &g {
                    None => g = Some(q),
                    Some(prev) if *prev == q => {}
                    Some(_) => {
                        ok = false;
                        break;
                    }
                },
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            if let Some(g) = g {
                let residual: Vec<MPoly> = coeffs
                    .iter()
                    .zip(vars)
                    .map(|(c, v)| {
                        let xv = MPoly::var(&all, v)?;
                        c.sub(&g.mul(&xv)?)
                    })
                    .collect::<Result<_>>()?;
                return Ok(AffineDecomposition {
                    residual,
                    radial: g,
                    degree: m - 1,
                });
            }
        }
    }
    Ok(AffineDecomposition {
        residual: coeffs.to_vec(),
        radial: MPoly::zero(&all),
        degree: m,
    })
}

fn homogeneous_component(p: &MPoly, d: u32) -> MPoly {
    MPoly::from_terms(
        p.vars(),
        p.terms()
            .filter(|(m, _)| m.total_degree() == d)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

/// The radial (Euler) field over the given variables.
pub fn radial_field(vars: &[&str]) -> Result<VectorField> {
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let all = Arc::new(names.clone());
    let coeffs = names
        .iter()
        .map(|v| MPoly::var(&all, v))
        .collect::<Result<_>>()?;
    VectorField::new_projective(names, vec![], coeffs)
}

impl MPoly {
    /// Re-embed into a larger variable list (matching by name).
    pub fn extend_vars(&self, new_vars: &Arc<Vec<String>>) -> Result<MPoly> {
        if **self.vars() == **new_vars {
            return Ok(self.clone());
        }
        let map: Vec<usize> = self
            .vars()
            .iter()
            .map(|v| {
                new_vars
                    .iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::UndeclaredVar(v.clone()))
            })
            .collect::<Result<_>>()?;
        Ok(MPoly::from_terms(
            new_vars,
            self.terms().map(|(m, c)| {
                let mut exps = vec![0u32; new_vars.len()];
                for (i, &e) in m.0.iter().enumerate() {
                    exps[map[i]] = e;
                }
                (crate::poly::Monomial(exps), c.clone())
            }),
        ))
    }
}

/// Convenience: `X(f) == m * f` for the radial field and homogeneous `f` of
/// degree `m` (Euler identity); used in a few places as a cheap sanity check.
pub fn euler_check(f: &MPoly) -> Result<bool> {
    let names: Vec<&str> = f.vars().iter().map(String::as_str).collect();
    let r = radial_field(&names)?;
    let m = match f.homogeneous_degree() {
        Some(m) => m,
        None => return Ok(false),
    };
    Ok(r.lie_derivative(f)? == f.mul_scalar(&Rational::from_integer(m.into())))
}
