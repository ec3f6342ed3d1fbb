//! The semidirect products `D¹ = A ⋊ L` and `D¹_g = ḡ ⋊ L`.

use super::covariant::nabla;
use super::form::ConnectionForm;
use super::kn::VectorField;
use crate::error::Result;
use crate::riemann::{MatRatFun, RatFun};

/// A pair `(g, e)` in `D¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct D1Element {
    pub function: RatFun,
    pub field: VectorField,
}

impl D1Element {
    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(D1Element { function: self.function.add(&o.function)?, field: self.field.add(&o.field)? })
    }

    pub fn is_zero(&self) -> bool {
        self.function.is_zero() && self.field.is_zero()
    }
}

/// `[(g, e), (h, f)] = (e.h − f.g, [e, f])`.
pub fn d1_bracket(a: &D1Element, b: &D1Element) -> Result<D1Element> {
    Ok(D1Element {
        function: a.field.act(&b.function)?.sub(&b.field.act(&a.function)?)?,
        field: a.field.bracket(&b.field)?,
    })
}

/// A pair `(L, e)` in `D¹_g`.
#[derive(Clone, Debug, PartialEq)]
pub struct D1gElement {
    pub lax: MatRatFun,
    pub field: VectorField,
}

impl D1gElement {
    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(D1gElement { lax: self.lax.add(&o.lax)?, field: self.field.add(&o.field)? })
    }

    pub fn is_zero(&self) -> bool {
        self.lax.is_zero() && self.field.is_zero()
    }
}

/// `[(L, e), (L', f)] = ([L, L'] + ∇_e L' − ∇_f L, [e, f])`.
pub fn d1g_bracket(a: &D1gElement, b: &D1gElement, w: &ConnectionForm) -> Result<D1gElement> {
    let lax = a.lax.commutator(&b.lax)?.add(&nabla(&a.field, &b.lax, w)?)?.sub(&nabla(&b.field, &a.lax, w)?)?;
    Ok(D1gElement { lax, field: a.field.bracket(&b.field)? })
}

/// Jacobi sum in `D¹`.
pub fn d1_jacobi(a: &D1Element, b: &D1Element, c: &D1Element) -> Result<D1Element> {
    d1_bracket(&d1_bracket(a, b)?, c)?
        .add(&d1_bracket(&d1_bracket(b, c)?, a)?)?
        .add(&d1_bracket(&d1_bracket(c, a)?, b)?)
}

/// Jacobi sum in `D¹_g`.
pub fn d1g_jacobi(a: &D1gElement, b: &D1gElement, c: &D1gElement, w: &ConnectionForm) -> Result<D1gElement> {
    d1g_bracket(&d1g_bracket(a, b, w)?, c, w)?.add(&d1g_bracket(&d1g_bracket(b, c, w)?, a, w)?)?.add(&d1g_bracket(
        &d1g_bracket(c, a, w)?,
        b,
        w,
    )?)
}

/// `[e, h]·L = e.(h·L) − h·(e.L)` with `e.L = ∇_e L` and `[e, h] = e.h`.
pub fn d1_module_identity(e: &VectorField, h: &RatFun, l: &MatRatFun, w: &ConnectionForm) -> Result<bool> {
    let lhs = l.scalar_mul(&e.act(h)?)?;
    let rhs = nabla(e, &l.scalar_mul(h)?, w)?.sub(&nabla(e, l, w)?.scalar_mul(h)?)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::form::minimal_connection;
    use crate::connection::kn::{kn_function, kn_vector_field};
    use crate::reference;

    #[test]
    fn brackets_and_jacobi() {
        let alg = reference::ref_gl2();
        let sp = alg.sphere();
        let w = minimal_connection(&alg).unwrap();
        let e = kn_vector_field(sp, 1);
        let h = kn_function(sp, 2);
        let zero_f = RatFun::zero(sp);
        let zero_e = VectorField::zero(sp);
        let a = D1Element { function: zero_f.clone(), field: e.clone() };
        let b = D1Element { function: h.clone(), field: zero_e.clone() };
        let br = d1_bracket(&a, &b).unwrap();
        assert_eq!(br.function, e.act(&h).unwrap());
        assert!(br.field.is_zero());
        let g = D1Element { function: kn_function(sp, -1), field: zero_e.clone() };
        assert!(d1_jacobi(&g, &b, &a).unwrap().is_zero());

        let x = alg.basis_element(1, 0).unwrap();
        let y = alg.basis_element(-1, 3).unwrap();
        let p = D1gElement { lax: x.clone(), field: kn_vector_field(sp, 0) };
        let q = D1gElement { lax: y, field: kn_vector_field(sp, -1) };
        let r = D1gElement { lax: MatRatFun::zero(sp, 2, 2), field: kn_vector_field(sp, 2) };
        assert!(d1g_jacobi(&p, &q, &r, &w).unwrap().is_zero());
        assert!(d1_module_identity(&e, &h, &x, &w).unwrap());
    }
}
