//! Admissible connection forms `ω = W(z) dz`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lax::membership::{check_with_rule, local_conditions, pair, ConstraintCertificate, LocalRule};
use crate::lax::{Flavor, FlavorKind, LaxAlgebra};
use crate::linalg::{AffineSolution, ExactMatrix, Scalar, Vector};
use crate::riemann::{MatRatFun, MatRatFunJson, Point, Poly, RatFun};

/// Largest polynomial degree tried by [`minimal_connection`].
pub const MAX_POLE_BUDGET: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionForm {
    /// The coefficient `W` of `ω = W dz`.
    pub value: MatRatFun,
    /// `β̃_s`, `κ̃_s` (and `ν̃_s`) per weak point.
    pub certificate: ConstraintCertificate,
    pub pole_budget: usize,
    pub sp_double_pole: bool,
}

#[derive(Serialize)]
pub struct ConnectionJson {
    pub pole_budget: usize,
    pub sp_double_pole: bool,
    pub value: MatRatFunJson,
    pub certificate: ConstraintCertificate,
}

impl ConnectionForm {
    pub fn to_json(&self) -> ConnectionJson {
        ConnectionJson {
            pole_budget: self.pole_budget,
            sp_double_pole: self.sp_double_pole,
            value: self.value.to_json(),
            certificate: self.certificate.clone(),
        }
    }

    pub fn sub(&self, o: &ConnectionForm) -> Result<MatRatFun> {
        self.value.sub(&o.value)
    }
}

fn rule(sp_double_pole: bool) -> LocalRule {
    LocalRule::Connection { sp_double_pole }
}

/// Certifies `W` as an admissible connection coefficient for `alg`.
pub fn certify_connection(alg: &LaxAlgebra, w: &MatRatFun, sp_double_pole: bool) -> Result<ConstraintCertificate> {
    if w.ord_at(Point::Zero).is_some_and(|o| o < 0) {
        return Err(Error::Invalid("connection form has a pole at P+".into()));
    }
    check_with_rule(&alg.flavor().connection_flavor(), alg.tyurin(), w, rule(sp_double_pole))
}

/// All solutions `particular + span(kernel)` for one pole budget.
#[derive(Clone, Debug)]
pub struct ConnectionFamily {
    flavor: Flavor,
    functions: Vec<RatFun>,
    pub particular: Vector,
    pub kernel: Vec<Vector>,
    pub pole_budget: usize,
    pub sp_double_pole: bool,
}

impl ConnectionFamily {
    fn assemble(&self, x: &[Scalar]) -> Result<MatRatFun> {
        let d = self.flavor.dim();
        let size = self.flavor.size();
        let sphere = self.functions.first().map(|f| f.sphere().clone());
        let Some(sphere) = sphere else {
            return Err(Error::Internal("empty connection ansatz".into()));
        };
        let mut acc = MatRatFun::zero(&sphere, size, size);
        for (u, f) in self.functions.iter().enumerate() {
            let c = self.flavor.combine(&x[u * d..(u + 1) * d]);
            if !c.is_zero() {
                acc = acc.add(&MatRatFun::constant(&sphere, &c).scalar_mul(f)?)?;
            }
        }
        Ok(acc)
    }

    fn form(&self, alg: &LaxAlgebra, x: &[Scalar]) -> Result<ConnectionForm> {
        let value = self.assemble(x)?;
        let certificate = certify_connection(alg, &value, self.sp_double_pole)
            .map_err(|e| Error::Internal(format!("constructed connection fails its conditions: {e}")))?;
        Ok(ConnectionForm { value, certificate, pole_budget: self.pole_budget, sp_double_pole: self.sp_double_pole })
    }

    /// The canonical solution: all free variables zero.
    pub fn canonical(&self, alg: &LaxAlgebra) -> Result<ConnectionForm> {
        self.form(alg, &self.particular)
    }

    /// `particular + Σ c_i kernel_i`.
    pub fn member(&self, alg: &LaxAlgebra, coeffs: &[Scalar]) -> Result<ConnectionForm> {
        let mut x = self.particular.clone();
        for (c, k) in coeffs.iter().zip(&self.kernel) {
            for (xi, ki) in x.iter_mut().zip(k) {
                *xi += &(c * ki);
            }
        }
        self.form(alg, &x)
    }

    /// `particular + kernel_i` for the first kernel direction whose
    /// difference is not a scalar matrix, if any.
    pub fn alternative(&self, alg: &LaxAlgebra) -> Result<Option<ConnectionForm>> {
        for i in 0..self.kernel.len() {
            let theta = self.assemble(&self.kernel[i])?;
            if is_scalar_valued(&theta) {
                continue;
            }
            let mut c = vec![Scalar::zero(); self.kernel.len()];
            c[i] = Scalar::one();
            return self.member(alg, &c).map(Some);
        }
        Ok(None)
    }
}

fn is_scalar_valued(m: &MatRatFun) -> bool {
    m.numerator_coefficients().iter().all(|c| {
        let n = c.rows();
        (0..n).all(|i| (0..n).all(|j| if i == j { c[(i, i)] == c[(0, 0)] } else { c[(i, j)].is_zero() }))
    })
}

/// Sets up and solves the affine system for the ansatz
/// `Σ_s R_s/(z − γ_s) [+ S_s/(z − γ_s)²] + Σ_{j ≤ d} C_j z^j`.
pub fn connection_family(alg: &LaxAlgebra, pole_budget: usize, sp_double_pole: bool) -> Result<ConnectionFamily> {
    let flavor = alg.flavor().connection_flavor();
    let sphere = alg.sphere();
    let tyurin = alg.tyurin();
    let k = tyurin.num_weak();
    let double = sp_double_pole && flavor.kind() == FlavorKind::Sp;
    let mut functions = Vec::new();
    for s in 0..k {
        if !tyurin.is_active(s) {
            continue;
        }
        let mut weak = vec![0; k];
        weak[s] = 1;
        functions.push(RatFun::from_parts(sphere, 0, Poly::one(), weak.clone())?);
        if double {
            weak[s] = 2;
            functions.push(RatFun::from_parts(sphere, 0, Poly::one(), weak)?);
        }
    }
    for j in 0..=pole_budget as i64 {
        functions.push(RatFun::monomial(sphere, Scalar::one(), j));
    }
    let d = flavor.dim();
    let unknowns = functions.len() * d;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for s in 0..k {
        if !tyurin.is_active(s) {
            continue;
        }
        let local: Vec<Vec<Scalar>> = functions.iter().map(|f| f.coefficients(Point::Weak(s), -2, 1)).collect();
        for c in local_conditions(&flavor, tyurin.alpha(s), rule(double)) {
            let g: Vec<Scalar> = flavor.basis().iter().map(|b| pair(&c.functional, b)).collect();
            let mut row = vec![Scalar::zero(); unknowns];
            for (u, ser) in local.iter().enumerate() {
                let cu = &ser[(c.order + 2) as usize];
                if cu.is_zero() {
                    continue;
                }
                for r in 0..d {
                    if !g[r].is_zero() {
                        row[u * d + r] = cu * &g[r];
                    }
                }
            }
            rows.push(row);
            rhs.push(c.rhs);
        }
    }
    let (particular, kernel) = if rows.is_empty() {
        let kernel = (0..unknowns)
            .map(|i| (0..unknowns).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        (vec![Scalar::zero(); unknowns], kernel)
    } else {
        let a = ExactMatrix::from_rows(rows)?;
        match a.solve_affine(&rhs)? {
            AffineSolution::Solved { particular, kernel } => (particular, kernel),
            AffineSolution::Infeasible { rank, augmented_rank } => {
                return Err(Error::Infeasible(format!(
                    "no connection with pole budget {pole_budget}: rank {rank} < augmented rank {augmented_rank}"
                )))
            }
        }
    };
    Ok(ConnectionFamily { flavor, functions, particular, kernel, pole_budget, sp_double_pole: double })
}

/// The canonical connection for a fixed pole budget.
pub fn build_connection(alg: &LaxAlgebra, pole_budget: usize, sp_double_pole: bool) -> Result<ConnectionForm> {
    connection_family(alg, pole_budget, sp_double_pole)?.canonical(alg)
}

/// The canonical connection with the smallest feasible pole budget.
pub fn minimal_connection(alg: &LaxAlgebra) -> Result<ConnectionForm> {
    minimal_family(alg)?.canonical(alg)
}

pub fn minimal_family(alg: &LaxAlgebra) -> Result<ConnectionFamily> {
    let mut last = None;
    for d in 0..=MAX_POLE_BUDGET {
        match connection_family(alg, d, false) {
            Ok(f) => return Ok(f),
            Err(e @ Error::Infeasible(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::Infeasible("no pole budget tried".into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dot;
    use crate::reference;

    #[test]
    fn zero_connection_without_active_points() {
        let w = minimal_connection(&reference::ref_loop()).unwrap();
        assert!(w.value.is_zero());
    }

    #[test]
    fn gl2_connection_has_normalized_residues() {
        let alg = reference::ref_gl2();
        let w = build_connection(&alg, 1, false).unwrap();
        for s in 0..2 {
            let res = w.value.coefficient(Point::Weak(s), -1);
            assert_eq!(res.trace(), Scalar::one());
            let wit = w.certificate.witnesses[s].as_ref().unwrap();
            assert_eq!(dot(&wit.beta, alg.tyurin().alpha(s)), Scalar::one());
        }
        assert!(w.value.ord_at(Point::Zero).unwrap() >= 0);
    }

    #[test]
    fn variants_are_distinct_and_certified() {
        for alg in [reference::ref_gl2(), reference::ref_sl2(), reference::ref_so3(), reference::ref_sp4()] {
            let fam = minimal_family(&alg).unwrap();
            let w = fam.canonical(&alg).unwrap();
            let w2 = fam.alternative(&alg).unwrap().expect("kernel direction");
            assert_ne!(w, w2);
            certify_connection(&alg, &w2.value, false).unwrap();
        }
    }

    #[test]
    fn sp_double_pole_flag() {
        let alg = reference::ref_sp4();
        let w = build_connection(&alg, 0, true).unwrap();
        assert!(w.value.ord_at(Point::Weak(0)).unwrap() >= -2);
    }
}
