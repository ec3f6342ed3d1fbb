//! Dense univariate polynomials and truncated power series over ℚ(i).

use crate::linalg::Scalar;

/// Coefficients in ascending order, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Poly {
    c: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(a: Scalar) -> Self {
        Poly::new(vec![a])
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(Scalar::is_zero) {
            c.pop();
        }
        Poly { c }
    }

    /// `z − a`.
    pub fn linear_root(a: &Scalar) -> Self {
        Poly::new(vec![-a, Scalar::one()])
    }

    pub fn monomial(k: usize, a: Scalar) -> Self {
        let mut c = vec![Scalar::zero(); k + 1];
        c[k] = a;
        Poly::new(c)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.c.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, a: &Scalar) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|x| x * a).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Scalar::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Multiplication by `z^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Scalar::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.c.iter().enumerate().skip(1).map(|(k, a)| a * &Scalar::from_int(k as i64)).collect())
    }

    /// Number of leading zero coefficients (order of vanishing at 0).
    pub fn low_order(&self) -> Option<usize> {
        self.c.iter().position(|a| !a.is_zero())
    }

    /// Divides by `z^k`; the caller guarantees exactness.
    pub fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(self.c.iter().take(k).all(Scalar::is_zero));
        Poly::new(self.c.iter().skip(k).cloned().collect())
    }

    /// Quotient and remainder of division by `z − a`.
    pub fn div_linear(&self, a: &Scalar) -> (Poly, Scalar) {
        if self.c.is_empty() {
            return (Poly::zero(), Scalar::zero());
        }
        let n = self.c.len();
        let mut q = vec![Scalar::zero(); n - 1];
        let mut carry = Scalar::zero();
        for k in (0..n).rev() {
            let v = &self.c[k] + &(&carry * a);
            if k == 0 {
                return (Poly::new(q), v);
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// `p(t + a)` as a polynomial in `t`.
    pub fn taylor_shift(&self, a: &Scalar) -> Poly {
        let mut out = Poly::zero();
        let step = Poly::new(vec![a.clone(), Scalar::one()]);
        for coef in self.c.iter().rev() {
            out = out.mul(&step).add(&Poly::constant(coef.clone()));
        }
        out
    }

    /// Coefficients reversed relative to a nominal degree `d ≥ deg`.
    pub fn reverse(&self, d: usize) -> Poly {
        Poly::new((0..=d).map(|k| self.coeff(d - k)).collect())
    }
}

/// Truncated product of two series given by their first `n` coefficients.
pub fn series_mul(a: &[Scalar], b: &[Scalar], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// First `n` coefficients of `1/a` for a series with `a[0] ≠ 0`.
pub fn series_inv(a: &[Scalar], n: usize) -> Vec<Scalar> {
    let inv0 = a[0].inv().expect("series with zero constant term");
    let mut out: Vec<Scalar> = Vec::with_capacity(n);
    for k in 0..n {
        if k == 0 {
            out.push(inv0.clone());
            continue;
        }
        let mut acc = Scalar::zero();
        for j in 1..=k.min(a.len().saturating_sub(1)) {
            if !a[j].is_zero() {
                acc += &a[j] * &out[k - j];
            }
        }
        out.push(-(&acc * &inv0));
    }
    out
}

/// First `n` coefficients of `(1 + u)^e` for any integer `e`.
pub fn binomial_series(e: i64, n: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(n);
    let mut c = Scalar::one();
    for j in 0..n {
        out.push(c.clone());
        c = &c * &Scalar::from_frac(e - j as i64, j as i64 + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly {
        Poly::new(v.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    #[test]
    fn arithmetic() {
        assert_eq!(p(&[1, 1]).mul(&p(&[-1, 1])), p(&[-1, 0, 1]));
        assert_eq!(p(&[1, 2, 3]).derivative(), p(&[2, 6]));
        assert_eq!(p(&[1, 1]).add(&p(&[-1, -1])), Poly::zero());
    }

    #[test]
    fn synthetic_division() {
        let (q, r) = p(&[-1, 0, 1]).div_linear(&Scalar::one());
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        let (_, r) = p(&[3, 0, 1]).div_linear(&Scalar::from_int(2));
        assert_eq!(r, Scalar::from_int(7));
    }

    #[test]
    fn shifts() {
        // (z)^2 at z = t + 1 is t² + 2t + 1
        assert_eq!(p(&[0, 0, 1]).taylor_shift(&Scalar::one()), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 2]).reverse(2), p(&[0, 2, 1]));
    }

    #[test]
    fn series() {
        // 1/(1 - z) = 1 + z + z² + ...
        let inv = series_inv(&[Scalar::one(), Scalar::from_int(-1)], 4);
        assert!(inv.iter().all(Scalar::is_one));
        // (1+u)^{-2} = 1 - 2u + 3u² - 4u³
        let b = binomial_series(-2, 4);
        assert_eq!(b, vec![1, -2, 3, -4].into_iter().map(Scalar::from_int).collect::<Vec<_>>());
    }
}
