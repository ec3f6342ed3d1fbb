//! Cocycles as evaluators on pairs of elements.

use std::sync::Arc;

use super::functional::LinearFunctional;
use super::geometric::{gamma1, gamma2};
use super::table::CocycleTable;
use crate::connection::ConnectionForm;
use crate::error::Result;
use crate::lax::LaxAlgebra;
use crate::linalg::Scalar;
use crate::riemann::{Cycle, MatRatFun};

/// A bilinear form on the Lax algebra.
#[derive(Clone, Debug)]
pub enum Cocycle {
    Zero,
    /// `∮_C tr(L ∇^{(ω)} L')`.
    Gamma1 {
        connection: Arc<ConnectionForm>,
        cycle: Cycle,
    },
    /// `∮_C tr(L) d tr(L')`.
    Gamma2 {
        cycle: Cycle,
    },
    /// `φ([L, L'])`.
    Coboundary(Arc<LinearFunctional>),
    Combination(Vec<(Scalar, Cocycle)>),
    Table(Arc<CocycleTable>),
}

impl Cocycle {
    pub fn gamma1(w: &ConnectionForm, cycle: Cycle) -> Self {
        Cocycle::Gamma1 { connection: Arc::new(w.clone()), cycle }
    }

    pub fn gamma2(cycle: Cycle) -> Self {
        Cocycle::Gamma2 { cycle }
    }

    pub fn coboundary(phi: LinearFunctional) -> Self {
        Cocycle::Coboundary(Arc::new(phi))
    }

    pub fn table(t: CocycleTable) -> Self {
        Cocycle::Table(Arc::new(t))
    }

    pub fn scaled(self, c: Scalar) -> Self {
        Cocycle::Combination(vec![(c, self)])
    }

    pub fn plus(self, other: Cocycle) -> Self {
        Cocycle::Combination(vec![(Scalar::one(), self), (Scalar::one(), other)])
    }

    pub fn eval(&self, alg: &LaxAlgebra, l: &MatRatFun, l2: &MatRatFun) -> Result<Scalar> {
        match self {
            Cocycle::Zero => Ok(Scalar::zero()),
            Cocycle::Gamma1 { connection, cycle } => gamma1(l, l2, connection, cycle),
            Cocycle::Gamma2 { cycle } => gamma2(l, l2, cycle),
            Cocycle::Coboundary(phi) => phi.eval(alg, &l.commutator(l2)?),
            Cocycle::Combination(terms) => {
                let mut acc = Scalar::zero();
                for (c, g) in terms {
                    if !c.is_zero() {
                        acc += &(c * &g.eval(alg, l, l2)?);
                    }
                }
                Ok(acc)
            }
            Cocycle::Table(t) => t.eval(alg, l, l2),
        }
    }

    /// Value on the basis pair `(X_n^r, X_m^s)`.
    pub fn on_basis(&self, alg: &LaxAlgebra, n: i64, r: usize, m: i64, s: usize) -> Result<Scalar> {
        if let Cocycle::Table(t) = self {
            return t.get(n, r, m, s);
        }
        self.eval(alg, &alg.basis_element(n, r)?, &alg.basis_element(m, s)?)
    }

    pub fn label(&self) -> String {
        match self {
            Cocycle::Zero => "zero".into(),
            Cocycle::Gamma1 { cycle, .. } => format!("gamma1[{}]", cycle.labels().join(",")),
            Cocycle::Gamma2 { cycle } => format!("gamma2[{}]", cycle.labels().join(",")),
            Cocycle::Coboundary(_) => "coboundary".into(),
            Cocycle::Combination(t) => {
                t.iter().map(|(c, g)| format!("({c})*{}", g.label())).collect::<Vec<_>>().join(" + ")
            }
            Cocycle::Table(_) => "table".into(),
        }
    }
}

/// An element `L + a·t` of the central extension.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedElement {
    pub lax: MatRatFun,
    pub central: Scalar,
}

impl ExtendedElement {
    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(ExtendedElement { lax: self.lax.add(&o.lax)?, central: &self.central + &o.central })
    }
}

/// `[(L, a), (L', a')] = ([L, L'], γ(L, L'))`; the central parts never enter.
pub fn central_extension_bracket(
    alg: &LaxAlgebra,
    gamma: &Cocycle,
    a: &ExtendedElement,
    b: &ExtendedElement,
) -> Result<ExtendedElement> {
    Ok(ExtendedElement { lax: a.lax.commutator(&b.lax)?, central: gamma.eval(alg, &a.lax, &b.lax)? })
}

/// Cyclic Jacobi sum in the central extension.
pub fn extension_jacobi(
    alg: &LaxAlgebra,
    gamma: &Cocycle,
    a: &ExtendedElement,
    b: &ExtendedElement,
    c: &ExtendedElement,
) -> Result<ExtendedElement> {
    let br = |x: &ExtendedElement, y: &ExtendedElement| central_extension_bracket(alg, gamma, x, y);
    br(&br(a, b)?, c)?.add(&br(&br(b, c)?, a)?)?.add(&br(&br(c, a)?, b)?)
}

/// `γ([x, y], z) + γ([y, z], x) + γ([z, x], y)`.
pub fn cocycle_identity_value(
    alg: &LaxAlgebra,
    gamma: &Cocycle,
    x: &MatRatFun,
    y: &MatRatFun,
    z: &MatRatFun,
) -> Result<Scalar> {
    Ok(gamma.eval(alg, &x.commutator(y)?, z)?
        + gamma.eval(alg, &y.commutator(z)?, x)?
        + gamma.eval(alg, &z.commutator(x)?, y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{kn_function, minimal_connection};
    use crate::linalg::ExactMatrix;
    use crate::reference;

    #[test]
    fn zero_functional_gives_zero_cocycle() {
        let alg = reference::ref_gl2();
        let g = Cocycle::coboundary(LinearFunctional::zero());
        for (n, m) in [(1, -1), (2, 0), (-3, 2)] {
            assert!(g.on_basis(&alg, n, 0, m, 1).unwrap().is_zero());
        }
    }

    #[test]
    fn coboundary_vanishes_on_commuting_pair() {
        let alg = reference::ref_sl2();
        let h = ExactMatrix::from_ints(&[&[1, 0], &[0, -1]]);
        let h0 = alg.element_for_leading(&h, 0).unwrap();
        let hm = h0.scalar_mul(&kn_function(alg.sphere(), -1)).unwrap();
        let hp = h0.scalar_mul(&kn_function(alg.sphere(), 1)).unwrap();
        let phi = LinearFunctional::random_sparse(3, -3, 3, 0.8, 5);
        assert!(Cocycle::coboundary(phi).eval(&alg, &hm, &hp).unwrap().is_zero());
    }

    #[test]
    fn extension_jacobi_matches_cocycle_identity() {
        let alg = reference::ref_gl2();
        let w = minimal_connection(&alg).unwrap();
        let g = Cocycle::gamma1(&w, Cycle::separating(alg.sphere()));
        let el = |n, r, a: i64| ExtendedElement { lax: alg.basis_element(n, r).unwrap(), central: Scalar::from_int(a) };
        let (x, y, z) = (el(1, 0, 4), el(0, 1, -2), el(-1, 2, 7));
        let j = extension_jacobi(&alg, &g, &x, &y, &z).unwrap();
        assert!(j.lax.is_zero());
        let id = cocycle_identity_value(&alg, &g, &x.lax, &y.lax, &z.lax).unwrap();
        assert_eq!(j.central, id);
        assert!(id.is_zero());
    }

    #[test]
    fn combinations_are_linear() {
        let alg = reference::ref_gl2();
        let c = Cycle::separating(alg.sphere());
        let g2 = Cocycle::gamma2(c.clone());
        let combo = g2.clone().scaled(Scalar::from_int(3)).plus(Cocycle::Zero);
        let a = alg.basis_element(1, 0).unwrap();
        let b = alg.basis_element(-1, 3).unwrap();
        assert_eq!(combo.eval(&alg, &a, &b).unwrap(), Scalar::from_int(3) * g2.eval(&alg, &a, &b).unwrap());
    }
}
