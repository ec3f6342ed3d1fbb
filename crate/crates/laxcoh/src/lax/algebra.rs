//! The Lax operator algebra: homogeneous subspaces, brackets, decomposition.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use super::flavor::{Flavor, FlavorKind};
use super::membership::{check_membership, local_conditions, pair, pole_allowance, ConstraintCertificate, LocalRule};
use super::tyurin::TyurinData;
use crate::error::{Error, Result};
use crate::linalg::{AffineSolution, ExactMatrix, Scalar, Vector};
use crate::riemann::{MarkedSphere, MatRatFun, Point, Poly, RatFun};

/// A certified element.
#[derive(Clone, Debug, PartialEq)]
pub struct LaxElement {
    pub value: MatRatFun,
    pub certificate: ConstraintCertificate,
}

/// Basis of the homogeneous subspace of degree `m`.
///
/// `elements[r]` is the unique element with expansion `B_r z^m + O(z^{m+1})`
/// at `P₊`, where `B_r` is the r-th canonical basis matrix of `g`.
#[derive(Debug)]
pub struct HomogeneousSpace {
    pub degree: i64,
    pub elements: Vec<MatRatFun>,
    series: RwLock<Vec<Vec<ExactMatrix>>>,
}

impl HomogeneousSpace {
    /// Taylor coefficients of `elements[r]` at `P₊` of orders `degree..degree+len`.
    fn series(&self, r: usize, len: usize) -> Vec<ExactMatrix> {
        {
            let s = self.series.read().expect("lock");
            if s[r].len() >= len {
                return s[r][..len].to_vec();
            }
        }
        let c = self.elements[r].coefficients(Point::Zero, self.degree, self.degree + len as i64 - 1);
        let mut s = self.series.write().expect("lock");
        if s[r].len() < len {
            s[r] = c.clone();
        }
        c
    }
}

/// Components `degree → coordinates of the leading matrix`.
pub type Decomposition = BTreeMap<i64, Vector>;

pub struct LaxAlgebra {
    flavor: Flavor,
    tyurin: TyurinData,
    pole_exp: Vec<u32>,
    spaces: RwLock<BTreeMap<i64, Arc<HomogeneousSpace>>>,
}

impl std::fmt::Debug for LaxAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LaxAlgebra").field("flavor", &self.flavor).field("tyurin", &self.tyurin).finish()
    }
}

impl LaxAlgebra {
    pub fn new(flavor: Flavor, tyurin: TyurinData) -> Arc<Self> {
        let pole_exp = tyurin.alphas().iter().map(|a| pole_allowance(&flavor, a, LocalRule::Element)).collect();
        Arc::new(LaxAlgebra { flavor, tyurin, pole_exp, spaces: RwLock::new(BTreeMap::new()) })
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    pub fn tyurin(&self) -> &TyurinData {
        &self.tyurin
    }

    pub fn sphere(&self) -> &Arc<MarkedSphere> {
        self.tyurin.sphere()
    }

    pub fn dim_g(&self) -> usize {
        self.flavor.dim()
    }

    /// Pole allowance per weak point.
    pub fn pole_exponents(&self) -> &[u32] {
        &self.pole_exp
    }

    pub fn certify(&self, m: &MatRatFun) -> Result<LaxElement> {
        let certificate = check_membership(m, &self.flavor, &self.tyurin)?;
        Ok(LaxElement { value: m.clone(), certificate })
    }

    /// Stacked constraint matrix for degree `m` over the unknowns `x_{j,r}`,
    /// the coefficient of `B_r z^{m+j} / D(z)`, `j = 0..=E`.
    pub fn constraint_matrix(&self, m: i64) -> ExactMatrix {
        let d = self.dim_g();
        let e_total: u32 = self.pole_exp.iter().sum();
        let unknowns = (e_total as usize + 1) * d;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for s in 0..self.tyurin.num_weak() {
            let conds = local_conditions(&self.flavor, self.tyurin.alpha(s), LocalRule::Element);
            if conds.is_empty() {
                continue;
            }
            // Laurent coefficients of z^{m+j}/D at gamma_s, orders −2..=1
            let series: Vec<Vec<Scalar>> = (0..=e_total as i64)
                .map(|j| {
                    RatFun::from_parts(self.sphere(), m + j, Poly::one(), self.pole_exp.clone())
                        .expect("valid parts")
                        .coefficients(Point::Weak(s), -2, 1)
                })
                .collect();
            for c in conds {
                let g: Vec<Scalar> = self.flavor.basis().iter().map(|b| pair(&c.functional, b)).collect();
                let mut row = vec![Scalar::zero(); unknowns];
                for (j, ser) in series.iter().enumerate() {
                    let cj = &ser[(c.order + 2) as usize];
                    if cj.is_zero() {
                        continue;
                    }
                    for r in 0..d {
                        if !g[r].is_zero() {
                            row[j * d + r] = cj * &g[r];
                        }
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return ExactMatrix::zeros(0, unknowns);
        }
        ExactMatrix::from_rows(rows).expect("rectangular")
    }

    fn element_from_unknowns(&self, m: i64, x: &[Scalar]) -> MatRatFun {
        let d = self.dim_g();
        let coeffs: Vec<ExactMatrix> = x.chunks(d).map(|c| self.flavor.combine(c)).collect();
        MatRatFun::from_matrix_poly(self.sphere(), m, &coeffs, self.pole_exp.clone()).expect("consistent shapes")
    }

    fn denominator_at_zero(&self) -> Scalar {
        let mut v = Scalar::one();
        for (s, &e) in self.pole_exp.iter().enumerate() {
            let g = -self.tyurin.gamma(s);
            for _ in 0..e {
                v = &v * &g;
            }
        }
        v
    }

    fn build_space(&self, m: i64) -> Result<HomogeneousSpace> {
        let d = self.dim_g();
        let a = self.constraint_matrix(m);
        let kernel_dim = a.cols() - a.rank();
        if kernel_dim != d {
            return Err(Error::NonGeneric(format!("dim of degree-{m} subspace is {kernel_dim}, expected {d}")));
        }
        let rest = ExactMatrix::from_fn(a.rows(), a.cols() - d, |i, j| a[(i, j + d)].clone());
        let d0 = self.denominator_at_zero();
        let mut elements = Vec::with_capacity(d);
        for r in 0..d {
            // leading Q₀ = D(0)·B_r
            let rhs: Vec<Scalar> = (0..a.rows()).map(|i| -(&a[(i, r)] * &d0)).collect();
            let y = match rest.solve_affine(&rhs)? {
                AffineSolution::Solved { particular, kernel } if kernel.is_empty() => particular,
                AffineSolution::Solved { kernel, .. } => {
                    return Err(Error::NonGeneric(format!(
                        "leading matrix {} at degree {m} has a {}-dimensional family",
                        self.flavor.labels()[r],
                        kernel.len()
                    )))
                }
                AffineSolution::Infeasible { .. } => {
                    return Err(Error::NonGeneric(format!(
                        "no element with leading matrix {} at degree {m}",
                        self.flavor.labels()[r]
                    )))
                }
            };
            let mut x = vec![Scalar::zero(); d];
            x[r] = d0.clone();
            x.extend(y);
            let el = self.element_from_unknowns(m, &x);
            check_membership(&el, &self.flavor, &self.tyurin)
                .map_err(|e| Error::Internal(format!("degree-{m} basis element fails membership: {e}")))?;
            elements.push(el);
        }
        Ok(HomogeneousSpace { degree: m, elements, series: RwLock::new(vec![Vec::new(); d]) })
    }

    /// The homogeneous subspace of degree `m`, built on first use.
    pub fn space(&self, m: i64) -> Result<Arc<HomogeneousSpace>> {
        if let Some(s) = self.spaces.read().expect("lock").get(&m) {
            return Ok(s.clone());
        }
        let built = Arc::new(self.build_space(m)?);
        let mut w = self.spaces.write().expect("lock");
        Ok(w.entry(m).or_insert(built).clone())
    }

    /// A basis of all of `ḡ_m = {ord_{P₊} ≥ m, ord_{P₋} ≥ −m}` from the
    /// canonical kernel of the constraint system; available even when the
    /// leading-matrix basis is not.
    pub fn full_space(&self, m: i64) -> Vec<MatRatFun> {
        self.constraint_matrix(m).nullspace().iter().map(|x| self.element_from_unknowns(m, x)).collect()
    }

    /// Rank of `L ↦ (coefficient of z^m)` on `ḡ_m`; equals `dim g` exactly
    /// when the leading-matrix basis exists.
    pub fn leading_rank(&self, m: i64) -> usize {
        let d = self.dim_g();
        let ker = self.constraint_matrix(m).nullspace();
        if ker.is_empty() {
            return 0;
        }
        ExactMatrix::from_fn(d, ker.len(), |i, j| ker[j][i].clone()).rank()
    }

    /// Builds the degree window in parallel.
    pub fn prepare(&self, lo: i64, hi: i64) -> Result<()> {
        use rayon::prelude::*;
        (lo..=hi).into_par_iter().try_for_each(|m| self.space(m).map(|_| ()))
    }

    /// The basis element `B_r` of degree `m`.
    pub fn basis_element(&self, m: i64, r: usize) -> Result<MatRatFun> {
        Ok(self.space(m)?.elements[r].clone())
    }

    /// The unique element of degree `m` with leading matrix `x`.
    pub fn element_for_leading(&self, x: &ExactMatrix, m: i64) -> Result<MatRatFun> {
        let c = self
            .flavor
            .coordinates(x)
            .ok_or_else(|| Error::Invalid(format!("leading matrix is not in {}", self.flavor)))?;
        self.element_from_coords(m, &c)
    }

    pub fn element_from_coords(&self, m: i64, c: &[Scalar]) -> Result<MatRatFun> {
        let space = self.space(m)?;
        let mut acc = MatRatFun::zero(self.sphere(), self.flavor.size(), self.flavor.size());
        for (x, el) in c.iter().zip(&space.elements) {
            if !x.is_zero() {
                acc = acc.add(&el.scale(x))?;
            }
        }
        Ok(acc)
    }

    /// Certified pointwise commutator.
    pub fn bracket(&self, a: &LaxElement, b: &LaxElement) -> Result<LaxElement> {
        let v = a.value.commutator(&b.value)?;
        self.certify(&v).map_err(|e| Error::Internal(format!("bracket left the algebra: {e}")))
    }

    /// Degree decomposition by peeling leading terms at `P₊`.
    ///
    /// Works on Taylor coefficients; components above `−ord_{P₋}(L)` cannot
    /// occur, and reaching `max_degree` is an error.
    pub fn decompose_coords(&self, l: &MatRatFun, max_degree: i64) -> Result<Decomposition> {
        let mut out = Decomposition::new();
        let (Some(lo), Some(inf)) = (l.ord_at(Point::Zero), l.ord_at(Point::Infinity)) else {
            return Ok(out);
        };
        let hi = -inf;
        if hi < lo {
            return Err(Error::Internal(format!("order {lo} at P+ exceeds −order {hi} at P-")));
        }
        if hi > max_degree {
            return Err(Error::WindowExceeded(format!("component up to degree {hi} beyond {max_degree}")));
        }
        let len = (hi - lo + 1) as usize;
        let mut rem = l.coefficients(Point::Zero, lo, hi);
        for k in 0..len {
            if rem[k].is_zero() {
                continue;
            }
            let h = lo + k as i64;
            let c = self
                .flavor
                .coordinates(&rem[k])
                .ok_or_else(|| Error::Internal(format!("degree-{h} leading coefficient is not in {}", self.flavor)))?;
            let space = self.space(h)?;
            for (r, x) in c.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let ser = space.series(r, len - k);
                for (t, m) in ser.iter().enumerate() {
                    if !m.is_zero() {
                        rem[k + t] = &rem[k + t] - &m.scale(x);
                    }
                }
            }
            out.insert(h, c);
        }
        Ok(out)
    }

    /// Degree decomposition with components as functions; the sum of the
    /// components is checked against `l` exactly.
    pub fn decompose(&self, l: &MatRatFun, max_degree: i64) -> Result<BTreeMap<i64, MatRatFun>> {
        let coords = self.decompose_coords(l, max_degree)?;
        let mut out = BTreeMap::new();
        let mut sum = MatRatFun::zero(self.sphere(), self.flavor.size(), self.flavor.size());
        for (h, c) in coords {
            let comp = self.element_from_coords(h, &c)?;
            sum = sum.add(&comp)?;
            out.insert(h, comp);
        }
        if sum != *l {
            return Err(Error::Internal("components do not re-sum to the input".into()));
        }
        Ok(out)
    }

    /// Writes `x ∈ g` as `Σ c_pq [B_p, B_q]` over pairs `p < q`.
    fn commutator_preimage(&self, x: &ExactMatrix) -> Result<Vec<(usize, usize, Scalar)>> {
        let d = self.dim_g();
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|p| (p + 1..d).map(move |q| (p, q))).collect();
        let b = self.flavor.basis();
        let cols: Vec<Vector> = pairs
            .iter()
            .map(|&(p, q)| self.flavor.coordinates(&b[p].commutator(&b[q]).expect("square")).expect("closed"))
            .collect();
        let a = ExactMatrix::from_fn(d, pairs.len(), |i, j| cols[j][i].clone());
        let target = self.flavor.coordinates(x).ok_or_else(|| Error::Invalid("leading matrix not in g".into()))?;
        match a.solve_affine(&target)? {
            AffineSolution::Solved { particular, .. } => Ok(pairs
                .into_iter()
                .zip(particular)
                .filter(|(_, c)| !c.is_zero())
                .map(|((p, q), c)| (p, q, c))
                .collect()),
            AffineSolution::Infeasible { .. } => Err(Error::NotSimple(format!("{} is not perfect", self.flavor))),
        }
    }

    /// Writes `y = Σ [y⁽ⁱ'¹⁾, y⁽ⁱ'²⁾] + remainder` with the remainder of
    /// order at least `m` at `P₊`.
    pub fn weak_perfect_decompose(&self, y: &MatRatFun, m: i64) -> Result<(Vec<(MatRatFun, MatRatFun)>, MatRatFun)> {
        if !self.flavor.is_simple() {
            return Err(Error::NotSimple(self.flavor.name()));
        }
        let mut pairs = Vec::new();
        let mut rem = y.clone();
        let b = self.flavor.basis();
        while let Some((k, x)) = rem.leading(Point::Zero) {
            if k >= m {
                break;
            }
            for (p, q, c) in self.commutator_preimage(&x)? {
                let first = self.element_for_leading(&b[p].scale(&c), 0)?;
                let second = self.basis_element(k, q)?;
                rem = rem.sub(&first.commutator(&second)?)?;
                pairs.push((first, second));
            }
            if rem.ord_at(Point::Zero).is_some_and(|o| o <= k) {
                return Err(Error::Internal("peeling did not raise the order".into()));
            }
        }
        Ok((pairs, rem))
    }

    /// `(tr(L)/n·I, L − tr(L)/n·I)`.
    pub fn split_gl(&self, l: &MatRatFun) -> Result<(MatRatFun, MatRatFun)> {
        if self.flavor.kind() != FlavorKind::Gl {
            return Err(Error::Invalid("split_gl needs a gl flavor".into()));
        }
        let n = self.flavor.size() as i64;
        let tr = l.trace().scale(&Scalar::from_frac(1, n));
        let scalar = MatRatFun::constant(self.sphere(), &ExactMatrix::identity(n as usize)).scalar_mul(&tr)?;
        let rest = l.sub(&scalar)?;
        Ok((scalar, rest))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    #[test]
    fn loop_algebra_basis() {
        let alg = reference::ref_loop();
        for m in [-3, 0, 2] {
            for (r, b) in alg.flavor().basis().iter().enumerate() {
                assert_eq!(alg.basis_element(m, r).unwrap(), MatRatFun::monomial(alg.sphere(), b, m));
            }
        }
    }

    #[test]
    fn scalar_flavor_space() {
        let alg = reference::ref_s(2);
        let el = alg.basis_element(3, 0).unwrap();
        assert_eq!(el, MatRatFun::monomial(alg.sphere(), &ExactMatrix::identity(2), 3));
    }

    #[test]
    fn gl2_leading_and_bounds() {
        let alg = reference::ref_gl2();
        let x = alg.element_for_leading(&ExactMatrix::unit(2, 0, 0), 1).unwrap();
        let (o, lead) = x.leading(Point::Zero).unwrap();
        assert_eq!(o, 1);
        assert_eq!(lead, ExactMatrix::unit(2, 0, 0));
        assert!(x.ord_at(Point::Infinity).unwrap() >= -1);
        assert!(alg.element_for_leading(&ExactMatrix::zeros(2, 2), 1).unwrap().is_zero());
    }

    #[test]
    fn gl2_space_dimension_matches_brute_force() {
        // Oracle: the kernel of the full constraint matrix is 4-dimensional.
        let alg = reference::ref_gl2();
        let a = alg.constraint_matrix(0);
        assert_eq!(a.nullspace().len(), 4);
        assert_eq!(alg.space(0).unwrap().elements.len(), 4);
    }

    #[test]
    fn decomposition_of_homogeneous_and_products() {
        let alg = reference::ref_gl2();
        let x = alg.basis_element(2, 1).unwrap();
        let d = alg.decompose(&x, 20).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[&2], x);
        // z·X₀ lies in degrees ≥ 1
        let x0 = alg.basis_element(0, 3).unwrap();
        let z = RatFun::monomial(alg.sphere(), Scalar::one(), 1);
        let d = alg.decompose(&x0.scalar_mul(&z).unwrap(), 20).unwrap();
        assert!(d.keys().all(|&h| h >= 1));
        assert_eq!(d[&1], alg.basis_element(1, 3).unwrap());
    }

    #[test]
    fn weak_perfectness_sl2() {
        let alg = reference::ref_loop();
        let h0 = alg.basis_element(0, 2).unwrap();
        let (pairs, rem) = alg.weak_perfect_decompose(&h0, 1).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].0, alg.basis_element(0, 0).unwrap());
        assert_eq!(pairs[0].1, alg.basis_element(0, 1).unwrap());
        assert!(rem.is_zero());
        assert!(matches!(reference::ref_gl2().weak_perfect_decompose(&h0, 1), Err(Error::NotSimple(_))));
    }

    #[test]
    fn weak_perfectness_with_weak_points() {
        let alg = reference::ref_sl2();
        let e = alg.basis_element(-2, 0).unwrap();
        let (pairs, rem) = alg.weak_perfect_decompose(&e, 0).unwrap();
        assert!(!pairs.is_empty() && pairs.len() <= 2);
        assert!(rem.is_zero() || rem.ord_at(Point::Zero).unwrap() >= 0);
        let mut sum = rem.clone();
        for (a, b) in &pairs {
            sum = sum.add(&a.commutator(b).unwrap()).unwrap();
        }
        assert_eq!(sum, e);
    }

    #[test]
    fn single_point_orthogonal_and_symplectic_data_is_degenerate() {
        // A(1 + 1/(z − 1)) with A = αβᵗ − βαᵗ, βᵗα = 0, lies in ḡ₀ ∩ ḡ₁.
        let so3 = reference::ref_so3();
        let (a, b) = (so3.tyurin().alpha(0).clone(), vec![Scalar::zero(), Scalar::zero(), Scalar::one()]);
        let res = &crate::linalg::outer(&a, &b) - &crate::linalg::outer(&b, &a);
        let pole = RatFun::from_parts(so3.sphere(), 1, Poly::one(), vec![1]).unwrap();
        let l = MatRatFun::constant(so3.sphere(), &res).scalar_mul(&pole).unwrap();
        so3.certify(&l).unwrap();
        assert_eq!((l.ord_at(Point::Zero), l.ord_at(Point::Infinity)), (Some(1), Some(0)));
        assert_eq!(so3.leading_rank(0), 2);
        assert!(matches!(so3.space(0), Err(Error::NonGeneric(_))));
        let sp4 = reference::ref_sp4();
        assert_eq!((sp4.full_space(0).len(), sp4.leading_rank(0)), (11, 7));
        for x in sp4.full_space(-1) {
            sp4.certify(&x).unwrap();
        }
    }

    #[test]
    fn split_parts_are_members() {
        let alg = reference::ref_gl2();
        let sl = reference::ref_sl2();
        let s = reference::with_flavor(&alg, Flavor::new(FlavorKind::S, 2).unwrap());
        for r in 0..4 {
            let x = alg.basis_element(1, r).unwrap();
            let (a, b) = alg.split_gl(&x).unwrap();
            s.certify(&a).unwrap();
            sl.certify(&b).unwrap();
        }
    }
}
