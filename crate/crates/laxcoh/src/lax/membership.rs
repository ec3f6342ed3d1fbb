//! Local conditions at weak points: linear systems and explicit certificates.

use std::fmt;

use serde::Serialize;

use super::flavor::{Flavor, FlavorKind};
use super::tyurin::TyurinData;
use crate::error::{Error, Result};
use crate::linalg::{dot, outer, ExactMatrix, Scalar, Vector};
use crate::riemann::{MatRatFun, Point};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    PoleOrder,
    ResidueShape,
    Trace,
    Eigenvector,
    SpOrderOne,
    GlobalLinear,
}

impl ViolationKind {
    pub fn name(&self) -> &'static str {
        match self {
            ViolationKind::PoleOrder => "pole order",
            ViolationKind::ResidueShape => "residue shape",
            ViolationKind::Trace => "trace",
            ViolationKind::Eigenvector => "eigenvector",
            ViolationKind::SpOrderOne => "order-1 sp condition",
            ViolationKind::GlobalLinear => "global linear condition",
        }
    }
}

/// The first failed constraint of a membership check.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ConstraintViolation {
    /// Weak point index, `None` for global conditions.
    pub point: Option<usize>,
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for ConstraintViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.point {
            Some(s) => write!(f, "{} at gamma{}: {}", self.kind.name(), s + 1, self.detail),
            None => write!(f, "{}: {}", self.kind.name(), self.detail),
        }
    }
}

fn violation(point: Option<usize>, kind: ViolationKind, detail: impl Into<String>) -> Error {
    Error::Membership(ConstraintViolation { point, kind, detail: detail.into() })
}

/// Witnesses `β_s`, `κ_s` and, for `sp`, `ν_s` at one weak point.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct WeakWitness {
    pub beta: Vector,
    pub kappa: Scalar,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<Scalar>,
}

/// One witness per weak point; `None` where no pole is allowed.
#[derive(Clone, PartialEq, Debug, Default, Serialize)]
pub struct ConstraintCertificate {
    pub witnesses: Vec<Option<WeakWitness>>,
}

/// Which family of local conditions to impose at a weak point.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LocalRule {
    /// Elements of the algebra: `βᵗα = 0` (resp. `βᵗσα = 0`).
    Element,
    /// Connection forms: `β̃ᵗα = 1` (resp. `β̃ᵗσα = 1`); `sp_double_pole`
    /// additionally allows `ν̃ ααᵗσ / z²`.
    Connection { sp_double_pole: bool },
}

/// Maximal pole order at a weak point with vector `alpha`.
pub fn pole_allowance(flavor: &Flavor, alpha: &[Scalar], rule: LocalRule) -> u32 {
    let active = alpha.iter().any(|x| !x.is_zero());
    match (flavor.kind(), rule) {
        (_, _) if !active => 0,
        (FlavorKind::S, LocalRule::Element) => 0,
        (FlavorKind::Sp, LocalRule::Element) => 2,
        (FlavorKind::Sp, LocalRule::Connection { sp_double_pole: true }) => 2,
        _ => 1,
    }
}

/// A linear condition `⟨G, M_order⟩ = rhs` on a Laurent coefficient, with
/// `⟨G, M⟩ = Σ_ab G_ab M_ab`.
#[derive(Clone, Debug)]
pub struct LinearCondition {
    pub order: i64,
    pub functional: ExactMatrix,
    pub rhs: Scalar,
}

/// `{u : uᵗα = 0}`.
fn annihilator(alpha: &[Scalar]) -> Vec<Vector> {
    ExactMatrix::from_rows(vec![alpha.to_vec()]).expect("row").nullspace()
}

fn unit_vec(n: usize, a: usize) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[a] = Scalar::one();
    v
}

/// Linear conditions characterizing the local shape at one weak point.
///
/// The `flavor` here is the algebra the values live in. The conditions,
/// together with membership of every coefficient in that algebra, are
/// equivalent to the rank and eigenvector descriptions verified by
/// [`check_local`].
pub fn local_conditions(flavor: &Flavor, alpha: &[Scalar], rule: LocalRule) -> Vec<LinearCondition> {
    let n = flavor.size();
    let e = pole_allowance(flavor, alpha, rule);
    let mut out = Vec::new();
    let push =
        |out: &mut Vec<LinearCondition>, order, functional, rhs| out.push(LinearCondition { order, functional, rhs });
    if e == 0 {
        return out;
    }
    let norm = match rule {
        LocalRule::Element => Scalar::zero(),
        LocalRule::Connection { .. } => Scalar::one(),
    };
    let u = annihilator(alpha);
    let ident = ExactMatrix::identity(n);
    let sigma = flavor.sigma().cloned().unwrap_or_else(|| ident.clone());
    // ⟨G, Mσ⁻¹⟩ = ⟨Gσ, M⟩ because σ⁻¹ = −σ = σᵗ
    let via_t = |g: ExactMatrix| if flavor.kind() == FlavorKind::Sp { &g * &sigma } else { g };
    // shape of the residue
    match flavor.kind() {
        FlavorKind::Gl | FlavorKind::Sl | FlavorKind::S => {
            for ui in &u {
                for b in 0..n {
                    push(&mut out, -1, outer(ui, &unit_vec(n, b)), Scalar::zero());
                }
            }
        }
        FlavorKind::So | FlavorKind::Sp => {
            for ui in &u {
                for vi in &u {
                    push(&mut out, -1, via_t(outer(ui, vi)), Scalar::zero());
                }
            }
        }
    }
    for a in 0..n {
        push(&mut out, -1, outer(&unit_vec(n, a), alpha), &norm * &alpha[a]);
    }
    if e == 2 {
        for ui in &u {
            for b in 0..n {
                push(&mut out, -2, via_t(outer(ui, &unit_vec(n, b))), Scalar::zero());
            }
        }
    }
    for ui in &u {
        push(&mut out, 0, outer(ui, alpha), Scalar::zero());
    }
    if flavor.kind() == FlavorKind::Sp {
        let sa = sigma.mul_vec(alpha);
        let neg_sa: Vector = sa.iter().map(|x| -x).collect();
        push(&mut out, 1, outer(&neg_sa, alpha), Scalar::zero());
    }
    out
}

/// Pairing `⟨G, M⟩`.
pub fn pair(g: &ExactMatrix, m: &ExactMatrix) -> Scalar {
    g.entries().iter().zip(m.entries()).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()
}

fn scaled(v: &[Scalar], c: &Scalar) -> Vector {
    v.iter().map(|x| x * c).collect()
}

fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Verifies the explicit local description at one weak point from the
/// Laurent coefficients `coeffs[k + 2]` of orders `−2..=1` and returns
/// the witnesses.
pub fn check_local(
    flavor: &Flavor,
    alpha: &[Scalar],
    s: usize,
    coeffs: &[ExactMatrix],
    rule: LocalRule,
) -> Result<WeakWitness> {
    let at = |k: i64| &coeffs[(k + 2) as usize];
    let n = flavor.size();
    let pos = alpha.iter().position(|x| !x.is_zero()).expect("active weak point");
    let alpha_inv = alpha[pos].inv()?;
    let w = scaled(&unit_vec(n, pos), &alpha_inv);
    let target = match rule {
        LocalRule::Element => Scalar::zero(),
        LocalRule::Connection { .. } => Scalar::one(),
    };
    let at_point = Some(s);
    let r = at(-1);
    let (beta, nu, pairing) = match flavor.kind() {
        FlavorKind::Gl | FlavorKind::Sl | FlavorKind::S => {
            let beta = scaled(r.row(pos), &alpha_inv);
            if outer(alpha, &beta) != *r {
                return Err(violation(at_point, ViolationKind::ResidueShape, "residue is not alpha·betaᵗ"));
            }
            let p = dot(&beta, alpha);
            (beta, None, p)
        }
        FlavorKind::So => {
            let beta: Vector = r.mul_vec(&w).iter().map(|x| -x).collect();
            if &outer(alpha, &beta) - &outer(&beta, alpha) != *r {
                return Err(violation(
                    at_point,
                    ViolationKind::ResidueShape,
                    "residue is not alpha·betaᵗ − beta·alphaᵗ",
                ));
            }
            let p = dot(&beta, alpha);
            (beta, None, p)
        }
        FlavorKind::Sp => {
            let sigma = flavor.sigma().expect("sp has sigma");
            let sigma_inv = sigma.scale(&Scalar::from_int(-1));
            let t2 = at(-2) * &sigma_inv;
            let nu = dot(&w, &t2.mul_vec(&w));
            if t2 != outer(alpha, alpha).scale(&nu) {
                return Err(violation(
                    at_point,
                    ViolationKind::ResidueShape,
                    "order −2 term is not nu·alpha·alphaᵗ·sigma",
                ));
            }
            let t1 = r * &sigma_inv;
            let half = dot(&w, &t1.mul_vec(&w)) * Scalar::from_frac(1, 2);
            let beta = sub_vec(&t1.mul_vec(&w), &scaled(alpha, &half));
            if &outer(alpha, &beta) + &outer(&beta, alpha) != t1 {
                return Err(violation(
                    at_point,
                    ViolationKind::ResidueShape,
                    "residue is not (alpha·betaᵗ + beta·alphaᵗ)·sigma",
                ));
            }
            let p = dot(&beta, &sigma.mul_vec(alpha));
            (beta, Some(nu), p)
        }
    };
    if pairing != target {
        return Err(violation(at_point, ViolationKind::Trace, format!("beta pairing is {pairing}, expected {target}")));
    }
    let m0a = at(0).mul_vec(alpha);
    let kappa = &m0a[pos] * &alpha_inv;
    if m0a != scaled(alpha, &kappa) {
        return Err(violation(at_point, ViolationKind::Eigenvector, "alpha is not an eigenvector of the order-0 term"));
    }
    if let Some(sigma) = flavor.sigma() {
        let v = dot(&sigma.transpose().mul_vec(alpha), &at(1).mul_vec(alpha));
        if !v.is_zero() {
            return Err(violation(at_point, ViolationKind::SpOrderOne, format!("alphaᵗ·sigma·M₁·alpha = {v}")));
        }
    }
    Ok(WeakWitness { beta, kappa, nu })
}

/// Checks that every numerator coefficient lies in `flavor`.
pub fn check_global(flavor: &Flavor, m: &MatRatFun) -> Result<()> {
    if m.rows() != flavor.size() || m.cols() != flavor.size() {
        return Err(violation(None, ViolationKind::GlobalLinear, format!("expected {0}x{0} matrices", flavor.size())));
    }
    for c in m.numerator_coefficients() {
        if flavor.kind() == FlavorKind::Sl && !c.trace().is_zero() {
            return Err(violation(None, ViolationKind::Trace, "values are not traceless"));
        }
        if !flavor.contains(&c) {
            return Err(violation(None, ViolationKind::GlobalLinear, format!("values leave {flavor}")));
        }
    }
    Ok(())
}

/// Full membership test of a matrix function in the Lax algebra or in the
/// space of admissible connection coefficients.
pub fn check_with_rule(
    flavor: &Flavor,
    tyurin: &TyurinData,
    m: &MatRatFun,
    rule: LocalRule,
) -> Result<ConstraintCertificate> {
    if **m.sphere() != **tyurin.sphere() {
        return Err(Error::Invalid("marked sphere differs from the Tyurin data".into()));
    }
    check_global(flavor, m)?;
    let mut witnesses = Vec::with_capacity(tyurin.num_weak());
    for s in 0..tyurin.num_weak() {
        let alpha = tyurin.alpha(s);
        let allowed = pole_allowance(flavor, alpha, rule) as i64;
        if let Some(o) = m.ord_at(Point::Weak(s)) {
            if o < -allowed {
                return Err(violation(
                    Some(s),
                    ViolationKind::PoleOrder,
                    format!("order {o}, at most {allowed} allowed"),
                ));
            }
        }
        if allowed == 0 {
            witnesses.push(None);
            continue;
        }
        let coeffs = m.coefficients(Point::Weak(s), -2, 1);
        witnesses.push(Some(check_local(flavor, alpha, s, &coeffs, rule)?));
    }
    Ok(ConstraintCertificate { witnesses })
}

/// Membership in the Lax operator algebra.
pub fn check_membership(m: &MatRatFun, flavor: &Flavor, tyurin: &TyurinData) -> Result<ConstraintCertificate> {
    check_with_rule(flavor, tyurin, m, LocalRule::Element)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riemann::{MarkedSphere, RatFun};

    fn ref_gl2() -> (Flavor, TyurinData) {
        let f = Flavor::gl(2);
        let sp = MarkedSphere::new(vec![Scalar::one(), Scalar::from_int(2)]).unwrap();
        let a1 = vec![Scalar::one(), Scalar::zero()];
        let a2 = vec![Scalar::one(), Scalar::one()];
        let t = TyurinData::new(sp, vec![a1, a2], &f).unwrap();
        (f, t)
    }

    #[test]
    fn scalar_polynomials_are_members() {
        let f = Flavor::new(FlavorKind::S, 2).unwrap();
        let (_, t) = ref_gl2();
        let m = MatRatFun::monomial(t.sphere(), &ExactMatrix::identity(2), 1);
        let c = check_membership(&m, &f, &t).unwrap();
        assert!(c.witnesses.iter().all(Option::is_none));
    }

    #[test]
    fn rank_two_residue_is_rejected() {
        let (f, t) = ref_gl2();
        let pole = RatFun::from_parts(t.sphere(), 0, crate::riemann::Poly::one(), vec![1, 0]).unwrap();
        let m = MatRatFun::constant(t.sphere(), &ExactMatrix::identity(2)).scalar_mul(&pole).unwrap();
        match check_membership(&m, &f, &t) {
            Err(Error::Membership(v)) => {
                assert_eq!(v.kind, ViolationKind::ResidueShape);
                assert_eq!(v.point, Some(0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hand_built_element() {
        // alpha1·betaᵗ/(z − 1) + C with beta = (0, 1)ᵗ. At gamma = 2 the
        // order-0 term is C + E12, so C = [[2, 0], [0, 3]] makes both
        // Tyurin vectors eigenvectors.
        let (f, t) = ref_gl2();
        let sp = t.sphere();
        let pole = RatFun::from_parts(sp, 0, crate::riemann::Poly::one(), vec![1, 0]).unwrap();
        let res = MatRatFun::constant(sp, &ExactMatrix::from_ints(&[&[0, 1], &[0, 0]])).scalar_mul(&pole).unwrap();
        let c = MatRatFun::constant(sp, &ExactMatrix::from_ints(&[&[2, 0], &[0, 3]]));
        let m = res.add(&c).unwrap();
        let cert = check_membership(&m, &f, &t).unwrap();
        let w0 = cert.witnesses[0].as_ref().unwrap();
        assert_eq!(w0.beta, vec![Scalar::zero(), Scalar::one()]);
        assert_eq!(w0.kappa, Scalar::from_int(2));
        let w1 = cert.witnesses[1].as_ref().unwrap();
        assert!(w1.beta.iter().all(Scalar::is_zero));
        assert_eq!(w1.kappa, Scalar::from_int(3));
    }

    #[test]
    fn condition_counts() {
        let cases = [
            (Flavor::gl(2), vec![Scalar::one(), Scalar::zero()]),
            (Flavor::new(FlavorKind::So, 3).unwrap(), vec![Scalar::one(), Scalar::i(), Scalar::zero()]),
            (
                Flavor::new(FlavorKind::Sp, 2).unwrap(),
                vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
            ),
        ];
        for (f, a) in cases {
            let conds = local_conditions(&f, &a, LocalRule::Element);
            // rank over coefficients of orders −e..1 restricted to g
            let e = pole_allowance(&f, &a, LocalRule::Element) as i64;
            let orders: Vec<i64> = (-e..=1).collect();
            let d = f.dim();
            let rows: Vec<Vec<Scalar>> = conds
                .iter()
                .map(|c| {
                    let mut row = vec![Scalar::zero(); d * orders.len()];
                    let k = orders.iter().position(|&o| o == c.order).unwrap();
                    for (r, b) in f.basis().iter().enumerate() {
                        row[k * d + r] = pair(&c.functional, b);
                    }
                    row
                })
                .collect();
            let rank = ExactMatrix::from_rows(rows).unwrap().rank();
            assert_eq!(rank as i64, e * d as i64, "{f}");
        }
    }
}
