//! Rational functions and matrix-valued rational functions on the marked sphere.
//!
//! A matrix function is stored over a common denominator as
//! `z^k · N(z) / ∏_s (z − γ_s)^{e_s}` with `k ∈ ℤ`, a matrix of polynomials
//! `N`, and `e_s ≥ 0`. The form is canceled: some entry of `N` is nonzero at
//! 0, and for every `e_s > 0` some entry is nonzero at `γ_s`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::poly::{binomial_series, series_inv, series_mul, Poly};
use super::sphere::{MarkedSphere, Point};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Scalar};

#[derive(Clone, Debug)]
pub struct MatRatFun {
    sphere: Arc<MarkedSphere>,
    rows: usize,
    cols: usize,
    zpow: i64,
    num: Vec<Poly>,
    weak: Vec<u32>,
}

/// A scalar rational function with poles only at marked points.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFun(MatRatFun);

impl PartialEq for MatRatFun {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.sphere, &o.sphere) || self.sphere == o.sphere)
            && self.rows == o.rows
            && self.cols == o.cols
            && self.zpow == o.zpow
            && self.weak == o.weak
            && self.num == o.num
    }
}

impl MatRatFun {
    /// `z^zpow · N(z) / ∏ (z − γ_s)^{weak_s}`, canonicalized.
    pub fn from_parts(
        sphere: Arc<MarkedSphere>,
        rows: usize,
        cols: usize,
        zpow: i64,
        num: Vec<Poly>,
        weak: Vec<u32>,
    ) -> Result<Self> {
        if num.len() != rows * cols {
            return Err(Error::Dimension("numerator grid size".into()));
        }
        if weak.len() != sphere.num_weak() {
            return Err(Error::Dimension("weak exponent count".into()));
        }
        let mut m = MatRatFun { sphere, rows, cols, zpow, num, weak };
        m.canonicalize();
        Ok(m)
    }

    pub fn zero(sphere: &Arc<MarkedSphere>, rows: usize, cols: usize) -> Self {
        let k = sphere.num_weak();
        MatRatFun {
            sphere: sphere.clone(),
            rows,
            cols,
            zpow: 0,
            num: vec![Poly::zero(); rows * cols],
            weak: vec![0; k],
        }
    }

    /// The constant function with value `x`.
    pub fn constant(sphere: &Arc<MarkedSphere>, x: &ExactMatrix) -> Self {
        Self::monomial(sphere, x, 0)
    }

    /// `x · z^m`.
    pub fn monomial(sphere: &Arc<MarkedSphere>, x: &ExactMatrix, m: i64) -> Self {
        let num = x.entries().iter().map(|a| Poly::constant(a.clone())).collect();
        Self::from_parts(sphere.clone(), x.rows(), x.cols(), m, num, vec![0; sphere.num_weak()])
            .expect("consistent shapes")
    }

    /// `z^zpow · Σ_j C_j z^j / ∏ (z − γ_s)^{weak_s}` from coefficient matrices.
    pub fn from_matrix_poly(
        sphere: &Arc<MarkedSphere>,
        zpow: i64,
        coeffs: &[ExactMatrix],
        weak: Vec<u32>,
    ) -> Result<Self> {
        let (r, c) = coeffs.first().map(|m| (m.rows(), m.cols())).ok_or_else(|| Error::Dimension("empty".into()))?;
        let num = (0..r * c).map(|e| Poly::new(coeffs.iter().map(|m| m.entries()[e].clone()).collect())).collect();
        Self::from_parts(sphere.clone(), r, c, zpow, num, weak)
    }

    pub fn sphere(&self) -> &Arc<MarkedSphere> {
        &self.sphere
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zpow(&self) -> i64 {
        self.zpow
    }

    pub fn weak_exponents(&self) -> &[u32] {
        &self.weak
    }

    pub fn numerators(&self) -> &[Poly] {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Poly::is_zero)
    }

    fn max_degree(&self) -> Option<usize> {
        self.num.iter().filter_map(Poly::degree).max()
    }

    /// Coefficient matrices of the numerator polynomial.
    pub fn numerator_coefficients(&self) -> Vec<ExactMatrix> {
        let d = self.max_degree().map_or(0, |d| d + 1);
        (0..d)
            .map(|j| ExactMatrix::from_fn(self.rows, self.cols, |a, b| self.num[a * self.cols + b].coeff(j)))
            .collect()
    }

    fn canonicalize(&mut self) {
        if self.is_zero() {
            self.zpow = 0;
            self.weak.iter_mut().for_each(|e| *e = 0);
            return;
        }
        let low = self.num.iter().filter_map(Poly::low_order).min().unwrap_or(0);
        if low > 0 {
            self.num = self.num.iter().map(|p| p.shift_down(low)).collect();
            self.zpow += low as i64;
        }
        for s in 0..self.weak.len() {
            let g = self.sphere.gamma(s).clone();
            while self.weak[s] > 0 {
                let divided: Vec<(Poly, Scalar)> = self.num.iter().map(|p| p.div_linear(&g)).collect();
                if divided.iter().any(|(_, r)| !r.is_zero()) {
                    break;
                }
                self.num = divided.into_iter().map(|(q, _)| q).collect();
                self.weak[s] -= 1;
            }
        }
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if !(Arc::ptr_eq(&self.sphere, &o.sphere) || self.sphere == o.sphere) {
            return Err(Error::Invalid("functions on different marked spheres".into()));
        }
        Ok(())
    }

    /// Numerators rewritten over `z^zpow / ∏ (z − γ_s)^{weak_s}`.
    fn lifted(&self, zpow: i64, weak: &[u32]) -> Vec<Poly> {
        let mut factor = Poly::one().shift_up((self.zpow - zpow) as usize);
        for (s, (&target, &own)) in weak.iter().zip(&self.weak).enumerate() {
            if target > own {
                factor = factor.mul(&Poly::linear_root(self.sphere.gamma(s)).pow(target - own));
            }
        }
        self.num.iter().map(|p| p.mul(&factor)).collect()
    }

    fn combine(&self, o: &Self, sign: i64) -> Result<Self> {
        self.check_compatible(o)?;
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension("shape mismatch in sum".into()));
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(if sign > 0 { o.clone() } else { o.neg() });
        }
        let zpow = self.zpow.min(o.zpow);
        let weak: Vec<u32> = self.weak.iter().zip(&o.weak).map(|(a, b)| *a.max(b)).collect();
        let a = self.lifted(zpow, &weak);
        let b = o.lifted(zpow, &weak);
        let num = a.iter().zip(&b).map(|(x, y)| if sign > 0 { x.add(y) } else { x.sub(y) }).collect();
        Self::from_parts(self.sphere.clone(), self.rows, self.cols, zpow, num, weak)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.combine(o, -1)
    }

    pub fn neg(&self) -> Self {
        MatRatFun { num: self.num.iter().map(Poly::neg).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sphere, self.rows, self.cols);
        }
        MatRatFun { num: self.num.iter().map(|p| p.scale(c)).collect(), ..self.clone() }
    }

    /// Left multiplication by a constant matrix.
    pub fn left_mul_const(&self, x: &ExactMatrix) -> Result<Self> {
        if x.cols() != self.rows {
            return Err(Error::Dimension("constant times function".into()));
        }
        let num = (0..x.rows() * self.cols)
            .map(|e| {
                let (i, j) = (e / self.cols, e % self.cols);
                (0..self.rows).fold(Poly::zero(), |acc, k| {
                    if x[(i, k)].is_zero() {
                        acc
                    } else {
                        acc.add(&self.num[k * self.cols + j].scale(&x[(i, k)]))
                    }
                })
            })
            .collect();
        Self::from_parts(self.sphere.clone(), x.rows(), self.cols, self.zpow, num, self.weak.clone())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        if self.cols != o.rows {
            return Err(Error::Dimension("shape mismatch in product".into()));
        }
        let (n, m, p) = (self.rows, self.cols, o.cols);
        let mut num = vec![Poly::zero(); n * p];
        for i in 0..n {
            for k in 0..m {
                let a = &self.num[i * m + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..p {
                    let b = &o.num[k * p + j];
                    if !b.is_zero() {
                        num[i * p + j] = num[i * p + j].add(&a.mul(b));
                    }
                }
            }
        }
        let weak = self.weak.iter().zip(&o.weak).map(|(a, b)| a + b).collect();
        Self::from_parts(self.sphere.clone(), n, p, self.zpow + o.zpow, num, weak)
    }

    /// Pointwise commutator `AB − BA`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        if self.rows != self.cols || o.rows != o.cols || self.rows != o.rows {
            return Err(Error::Dimension("commutator needs equal square sizes".into()));
        }
        self.mul(o)?.sub(&o.mul(self)?)
    }

    /// Multiplication by a scalar function.
    pub fn scalar_mul(&self, f: &RatFun) -> Result<Self> {
        let g = &f.0;
        self.check_compatible(g)?;
        let c = &g.num[0];
        let num = self.num.iter().map(|p| p.mul(c)).collect();
        let weak = self.weak.iter().zip(&g.weak).map(|(a, b)| a + b).collect();
        Self::from_parts(self.sphere.clone(), self.rows, self.cols, self.zpow + g.zpow, num, weak)
    }

    /// Entrywise `d/dz`.
    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let active: Vec<usize> = (0..self.weak.len()).filter(|&s| self.weak[s] > 0).collect();
        let lin: Vec<Poly> = active.iter().map(|&s| Poly::linear_root(self.sphere.gamma(s))).collect();
        let p_all = lin.iter().fold(Poly::one(), |acc, l| acc.mul(l));
        // Σ_s e_s · P/(z − γ_s)
        let mut log_term = Poly::zero();
        for (idx, &s) in active.iter().enumerate() {
            let rest = lin.iter().enumerate().filter(|&(j, _)| j != idx).fold(Poly::one(), |acc, (_, l)| acc.mul(l));
            log_term = log_term.add(&rest.scale(&Scalar::from_int(self.weak[s] as i64)));
        }
        let k = Scalar::from_int(self.zpow);
        let z = Poly::monomial(1, Scalar::one());
        let num = self
            .num
            .iter()
            .map(|n| {
                let main = n.scale(&k).add(&z.mul(&n.derivative())).mul(&p_all);
                main.sub(&z.mul(n).mul(&log_term))
            })
            .collect();
        let weak = self.weak.iter().map(|&e| if e > 0 { e + 1 } else { 0 }).collect();
        Self::from_parts(self.sphere.clone(), self.rows, self.cols, self.zpow - 1, num, weak)
            .expect("consistent shapes")
    }

    pub fn transpose(&self) -> Self {
        let num = (0..self.rows * self.cols)
            .map(|e| {
                let (i, j) = (e / self.rows, e % self.rows);
                self.num[j * self.cols + i].clone()
            })
            .collect();
        MatRatFun { rows: self.cols, cols: self.rows, num, ..self.clone() }
    }

    pub fn trace(&self) -> RatFun {
        let num = (0..self.rows.min(self.cols)).fold(Poly::zero(), |acc, k| acc.add(&self.num[k * self.cols + k]));
        RatFun(Self::from_parts(self.sphere.clone(), 1, 1, self.zpow, vec![num], self.weak.clone()).expect("1x1"))
    }

    /// `tr(A·B)` without forming the product.
    pub fn trace_of_product(&self, o: &Self) -> Result<RatFun> {
        self.check_compatible(o)?;
        if self.cols != o.rows || self.rows != o.cols {
            return Err(Error::Dimension("trace of product".into()));
        }
        let mut acc = Poly::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.num[i * self.cols + j];
                let b = &o.num[j * o.cols + i];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
        }
        let weak = self.weak.iter().zip(&o.weak).map(|(a, b)| a + b).collect();
        Ok(RatFun(Self::from_parts(self.sphere.clone(), 1, 1, self.zpow + o.zpow, vec![acc], weak)?))
    }

    pub fn entry(&self, i: usize, j: usize) -> RatFun {
        let num = vec![self.num[i * self.cols + j].clone()];
        RatFun(Self::from_parts(self.sphere.clone(), 1, 1, self.zpow, num, self.weak.clone()).expect("1x1"))
    }

    /// Order at a marked point; `None` for the zero function.
    pub fn ord_at(&self, p: Point) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(match p {
            Point::Zero => self.zpow,
            Point::Weak(s) => {
                if self.weak[s] > 0 {
                    -(self.weak[s] as i64)
                } else {
                    let g = self.sphere.gamma(s);
                    self.num.iter().filter(|q| !q.is_zero()).map(|q| root_multiplicity(q, g)).min().unwrap_or(0) as i64
                }
            }
            Point::Infinity => {
                let e: i64 = self.weak.iter().map(|&x| x as i64).sum();
                e - self.zpow - self.max_degree().expect("nonzero") as i64
            }
        })
    }

    /// Laurent coefficients of orders `from..=to` in the local coordinate at `p`.
    pub fn coefficients(&self, p: Point, from: i64, to: i64) -> Vec<ExactMatrix> {
        let count = (to - from + 1).max(0) as usize;
        let zero = ExactMatrix::zeros(self.rows, self.cols);
        if self.is_zero() || count == 0 {
            return vec![zero; count];
        }
        // self = t^lead · Σ_j (N_loc · F)_j t^j with N_loc given per entry
        let (lead, nums, factor_of_len): (i64, Vec<Poly>, Box<dyn Fn(usize) -> Vec<Scalar>>) = match p {
            Point::Zero => {
                let den = self.denominator_poly(None);
                (self.zpow, self.num.clone(), Box::new(move |n| series_inv(den.coeffs(), n)))
            }
            Point::Weak(s) => {
                let g = self.sphere.gamma(s).clone();
                let rest = self.denominator_poly(Some(s)).taylor_shift(&g);
                let k = self.zpow;
                let nums = self.num.iter().map(|q| q.taylor_shift(&g)).collect();
                let lead = -(self.weak[s] as i64);
                (
                    lead,
                    nums,
                    Box::new(move |n| {
                        // (t + γ)^k = γ^k (1 + t/γ)^k
                        let gk = g.pow(k).expect("weak point is nonzero");
                        let ginv = g.inv().expect("weak point is nonzero");
                        let mut b = binomial_series(k, n);
                        let mut pw = gk;
                        for c in b.iter_mut() {
                            *c = &*c * &pw;
                            pw = &pw * &ginv;
                        }
                        series_mul(&b, &series_inv(rest.coeffs(), n), n)
                    }),
                )
            }
            Point::Infinity => {
                let d = self.max_degree().expect("nonzero");
                let e: i64 = self.weak.iter().map(|&x| x as i64).sum();
                let nums = self.num.iter().map(|q| q.reverse(d)).collect();
                let mut den = Poly::one();
                for (s, &w) in self.weak.iter().enumerate() {
                    let f = Poly::new(vec![Scalar::one(), -self.sphere.gamma(s)]);
                    den = den.mul(&f.pow(w));
                }
                (e - self.zpow - d as i64, nums, Box::new(move |n| series_inv(den.coeffs(), n)))
            }
        };
        if to < lead {
            return vec![zero; count];
        }
        let len = (to - lead + 1) as usize;
        let factor = factor_of_len(len);
        let series: Vec<Vec<Scalar>> = nums.iter().map(|q| series_mul(q.coeffs(), &factor, len)).collect();
        (from..=to)
            .map(|o| {
                if o < lead {
                    return zero.clone();
                }
                let j = (o - lead) as usize;
                ExactMatrix::from_fn(self.rows, self.cols, |a, b| series[a * self.cols + b][j].clone())
            })
            .collect()
    }

    /// Single Laurent coefficient.
    pub fn coefficient(&self, p: Point, order: i64) -> ExactMatrix {
        self.coefficients(p, order, order).pop().expect("one coefficient")
    }

    /// Leading matrix at `p`, with its order.
    pub fn leading(&self, p: Point) -> Option<(i64, ExactMatrix)> {
        let o = self.ord_at(p)?;
        Some((o, self.coefficient(p, o)))
    }

    /// `∏ (z − γ_s)^{e_s}`, optionally skipping one point.
    fn denominator_poly(&self, skip: Option<usize>) -> Poly {
        let mut d = Poly::one();
        for (s, &e) in self.weak.iter().enumerate() {
            if Some(s) != skip && e > 0 {
                d = d.mul(&Poly::linear_root(self.sphere.gamma(s)).pow(e));
            }
        }
        d
    }

    /// Exact value at a point that is not a pole.
    pub fn eval(&self, x: &Scalar) -> Result<ExactMatrix> {
        let mut den = self.denominator_poly(None).eval(x);
        if self.zpow < 0 {
            den = &den * &x.pow(-self.zpow)?;
        }
        let f = if self.zpow > 0 { x.pow(self.zpow)? } else { Scalar::one() };
        let inv = den.inv().map_err(|_| Error::Invalid(format!("{x} is a pole")))?;
        let scale = &f * &inv;
        Ok(ExactMatrix::from_fn(self.rows, self.cols, |a, b| &self.num[a * self.cols + b].eval(x) * &scale))
    }

    /// JSON grid of canonical entries.
    pub fn to_json(&self) -> MatRatFunJson {
        MatRatFunJson {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|i| (0..self.cols).map(|j| self.entry(i, j).to_json()).collect()).collect(),
        }
    }

    pub fn from_json(sphere: &Arc<MarkedSphere>, j: &MatRatFunJson) -> Result<Self> {
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::Parse("matrix function grid shape".into()));
        }
        let mut acc = Self::zero(sphere, j.rows, j.cols);
        for (i, row) in j.entries.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                let f = RatFun::from_json(sphere, e)?;
                let unit = ExactMatrix::unit(j.rows.max(j.cols), i, k);
                let unit = ExactMatrix::from_fn(j.rows, j.cols, |a, b| unit[(a, b)].clone());
                acc = acc.add(&Self::constant(sphere, &unit).scalar_mul(&f)?)?;
            }
        }
        Ok(acc)
    }
}

fn root_multiplicity(p: &Poly, g: &Scalar) -> usize {
    let mut q = p.clone();
    let mut k = 0;
    loop {
        let (d, r) = q.div_linear(g);
        if !r.is_zero() || q.is_zero() {
            return k;
        }
        q = d;
        k += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenJson {
    pub z_pow: u64,
    pub weak_pows: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatFunJson {
    pub num: Vec<Scalar>,
    pub den: DenJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatRatFunJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<RatFunJson>>,
}

impl RatFun {
    pub fn zero(sphere: &Arc<MarkedSphere>) -> Self {
        RatFun(MatRatFun::zero(sphere, 1, 1))
    }

    pub fn constant(sphere: &Arc<MarkedSphere>, c: Scalar) -> Self {
        Self::monomial(sphere, c, 0)
    }

    /// `c · z^m`.
    pub fn monomial(sphere: &Arc<MarkedSphere>, c: Scalar, m: i64) -> Self {
        RatFun(MatRatFun::monomial(sphere, &ExactMatrix::from_rows(vec![vec![c]]).expect("1x1"), m))
    }

    /// `z^zpow · N(z) / ∏ (z − γ_s)^{weak_s}`.
    pub fn from_parts(sphere: &Arc<MarkedSphere>, zpow: i64, num: Poly, weak: Vec<u32>) -> Result<Self> {
        Ok(RatFun(MatRatFun::from_parts(sphere.clone(), 1, 1, zpow, vec![num], weak)?))
    }

    pub fn sphere(&self) -> &Arc<MarkedSphere> {
        &self.0.sphere
    }

    pub fn as_matrix(&self) -> &MatRatFun {
        &self.0
    }

    pub fn numerator(&self) -> &Poly {
        &self.0.num[0]
    }

    pub fn zpow(&self) -> i64 {
        self.0.zpow
    }

    pub fn weak_exponents(&self) -> &[u32] {
        &self.0.weak
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(RatFun(self.0.add(&o.0)?))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        Ok(RatFun(self.0.sub(&o.0)?))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Ok(RatFun(self.0.mul(&o.0)?))
    }

    pub fn neg(&self) -> Self {
        RatFun(self.0.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        RatFun(self.0.scale(c))
    }

    pub fn derivative(&self) -> Self {
        RatFun(self.0.derivative())
    }

    pub fn ord_at(&self, p: Point) -> Option<i64> {
        self.0.ord_at(p)
    }

    pub fn coefficients(&self, p: Point, from: i64, to: i64) -> Vec<Scalar> {
        self.0.coefficients(p, from, to).into_iter().map(|m| m[(0, 0)].clone()).collect()
    }

    pub fn coefficient(&self, p: Point, order: i64) -> Scalar {
        self.0.coefficient(p, order)[(0, 0)].clone()
    }

    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        Ok(self.0.eval(x)?[(0, 0)].clone())
    }

    pub fn to_json(&self) -> RatFunJson {
        let m = &self.0;
        let (num, z_pow) =
            if m.zpow >= 0 { (m.num[0].shift_up(m.zpow as usize), 0) } else { (m.num[0].clone(), (-m.zpow) as u64) };
        RatFunJson { num: num.coeffs().to_vec(), den: DenJson { z_pow, weak_pows: m.weak.clone() } }
    }

    pub fn from_json(sphere: &Arc<MarkedSphere>, j: &RatFunJson) -> Result<Self> {
        if j.den.weak_pows.len() != sphere.num_weak() {
            return Err(Error::Parse("weak_pows length differs from weak point count".into()));
        }
        Self::from_parts(sphere, -(j.den.z_pow as i64), Poly::new(j.num.clone()), j.den.weak_pows.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere1() -> Arc<MarkedSphere> {
        MarkedSphere::new(vec![Scalar::one()]).unwrap()
    }

    fn inv_z_minus_1(sp: &Arc<MarkedSphere>) -> RatFun {
        RatFun::from_parts(sp, 0, Poly::one(), vec![1]).unwrap()
    }

    #[test]
    fn monomial_derivative() {
        let sp = MarkedSphere::plain();
        for m in [-3i64, 0, 1, 4] {
            let d = RatFun::monomial(&sp, Scalar::one(), m).derivative();
            assert_eq!(d, RatFun::monomial(&sp, Scalar::from_int(m), m - 1));
        }
    }

    #[test]
    fn cancellation_to_zero() {
        let sp = sphere1();
        let f = inv_z_minus_1(&sp);
        let s = f.add(&f.neg()).unwrap();
        assert!(s.is_zero());
        assert_eq!(s, RatFun::zero(&sp));
    }

    #[test]
    fn quotient_rule() {
        let sp = sphere1();
        let d = inv_z_minus_1(&sp).derivative();
        let expect = RatFun::from_parts(&sp, 0, Poly::constant(Scalar::from_int(-1)), vec![2]).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn canceled_form() {
        let sp = sphere1();
        // (z − 1)/(z − 1) = 1 and z²/z = z
        let f = RatFun::from_parts(&sp, 0, Poly::linear_root(&Scalar::one()), vec![1]).unwrap();
        assert_eq!(f, RatFun::constant(&sp, Scalar::one()));
        let g = RatFun::from_parts(&sp, -1, Poly::monomial(2, Scalar::one()), vec![0]).unwrap();
        assert_eq!(g, RatFun::monomial(&sp, Scalar::one(), 1));
    }

    #[test]
    fn orders() {
        let sp = sphere1();
        let m = MatRatFun::monomial(&sp, &ExactMatrix::unit(2, 0, 0), 3);
        assert_eq!(m.ord_at(Point::Zero), Some(3));
        assert_eq!(RatFun::monomial(&sp, Scalar::one(), 3).ord_at(Point::Infinity), Some(-3));
        let f = RatFun::from_parts(&sp, 0, Poly::one(), vec![2]).unwrap();
        assert_eq!(f.ord_at(Point::Weak(0)), Some(-2));
        assert_eq!(RatFun::zero(&sp).ord_at(Point::Zero), None);
        let vanish = RatFun::from_parts(&sp, 0, Poly::linear_root(&Scalar::one()).pow(2), vec![0]).unwrap();
        assert_eq!(vanish.ord_at(Point::Weak(0)), Some(2));
    }

    #[test]
    fn jets() {
        let sp = sphere1();
        // 1/(z(z − 1)) at 0: −1/z − 1 − z − ...
        let f = RatFun::from_parts(&sp, -1, Poly::one(), vec![1]).unwrap();
        let c = f.coefficients(Point::Zero, -1, 3);
        assert!(c.iter().all(|x| *x == Scalar::from_int(-1)));
        // at 1: 1/(t(1 + t)) = 1/t − 1 + t − ...
        let c = f.coefficients(Point::Weak(0), -1, 1);
        assert_eq!(c, vec![Scalar::one(), Scalar::from_int(-1), Scalar::one()]);
        // z^m at ∞ has order −m
        let g = RatFun::monomial(&sp, Scalar::one(), 2);
        assert_eq!(g.coefficients(Point::Infinity, -2, 0), vec![Scalar::one(), Scalar::zero(), Scalar::zero()]);
    }

    #[test]
    fn json_round_trip() {
        let sp = sphere1();
        let f = RatFun::from_parts(&sp, -2, Poly::new(vec![Scalar::one(), Scalar::i()]), vec![1]).unwrap();
        assert_eq!(RatFun::from_json(&sp, &f.to_json()).unwrap(), f);
        let g = RatFun::monomial(&sp, Scalar::from_frac(1, 3), 2);
        let j = g.to_json();
        assert_eq!(j.den.z_pow, 0);
        assert_eq!(j.num.len(), 3);
        let m = MatRatFun::monomial(&sp, &ExactMatrix::from_ints(&[&[1, 2], &[0, -1]]), -1)
            .add(&MatRatFun::constant(&sp, &ExactMatrix::identity(2)).scalar_mul(&f).unwrap())
            .unwrap();
        assert_eq!(MatRatFun::from_json(&sp, &m.to_json()).unwrap(), m);
    }
}
