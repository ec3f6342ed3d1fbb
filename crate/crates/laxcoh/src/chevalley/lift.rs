//! The lifted basis `E_n^α`, `H_n^i` of the Lax algebra and evaluation of
//! cocycle tables in it.

use serde_json::json;

use super::roots::RootSystem;
use crate::cocycle::CocycleTable;
use crate::error::{Error, Result};
use crate::lax::LaxAlgebra;
use crate::linalg::{ExactMatrix, Scalar, Vector};
use crate::report::{run_samples, CheckEntry};
use crate::riemann::MatRatFun;

/// Index into the Chevalley basis: root vectors first (in root order), then
/// the simple coroots.
pub type ChevIndex = usize;

/// Chevalley basis of `g` together with the change of coordinates to the
/// canonical basis of the flavor.
#[derive(Clone, Debug)]
pub struct LiftedBasis {
    roots: RootSystem,
    matrices: Vec<ExactMatrix>,
    labels: Vec<String>,
    /// Column `a` holds the canonical coordinates of basis element `a`.
    to_canonical: ExactMatrix,
    /// Inverse of `to_canonical`.
    to_chevalley: ExactMatrix,
}

impl LiftedBasis {
    pub fn new(roots: RootSystem) -> Result<Self> {
        let matrices = roots.chevalley_basis();
        let fl = roots.flavor();
        let cols: Vec<Vector> = matrices
            .iter()
            .map(|x| fl.coordinates(x).ok_or_else(|| Error::Internal("root vector outside the flavor".into())))
            .collect::<Result<_>>()?;
        let d = fl.dim();
        let to_canonical = ExactMatrix::from_fn(d, d, |r, a| cols[a][r].clone());
        let to_chevalley = to_canonical.inverse()?;
        let labels = roots.chevalley_labels();
        Ok(LiftedBasis { roots, matrices, labels, to_canonical, to_chevalley })
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn dim(&self) -> usize {
        self.matrices.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self, a: ChevIndex) -> &ExactMatrix {
        &self.matrices[a]
    }

    /// Index of `E^α` for root index `i`.
    pub fn e(&self, i: usize) -> ChevIndex {
        i
    }

    /// Index of `H^i` for the `i`-th simple root.
    pub fn h(&self, i: usize) -> ChevIndex {
        self.roots.roots().len() + i
    }

    /// Index of the simple position of a simple root.
    pub fn simple_position(&self, root: usize) -> Option<usize> {
        self.roots.simple().iter().position(|&s| s == root)
    }

    /// Chevalley coordinates of a matrix of `g`.
    pub fn coords_of_matrix(&self, x: &ExactMatrix) -> Result<Vector> {
        let c = self.roots.flavor().coordinates(x).ok_or_else(|| Error::Invalid("matrix outside the flavor".into()))?;
        Ok(self.to_chevalley.mul_vec(&c))
    }

    /// Chevalley coordinates from canonical ones.
    pub fn coords_of_canonical(&self, c: &[Scalar]) -> Vector {
        self.to_chevalley.mul_vec(c)
    }

    /// Canonical coordinates of a Chevalley coordinate vector.
    pub fn canonical_of(&self, c: &[Scalar]) -> Vector {
        self.to_canonical.mul_vec(c)
    }

    /// `to_chevalley[a][r]`: coefficient of Chevalley element `a` in
    /// canonical basis element `r`.
    pub fn chevalley_entry(&self, a: ChevIndex, r: usize) -> &Scalar {
        &self.to_chevalley[(a, r)]
    }

    /// `X_n` for the Chevalley element `a`.
    pub fn element(&self, alg: &LaxAlgebra, n: i64, a: ChevIndex) -> Result<MatRatFun> {
        alg.element_from_coords(n, &self.to_canonical.col(a))
    }

    /// `X_n` for an arbitrary matrix of `g` given in Chevalley coordinates.
    pub fn element_of(&self, alg: &LaxAlgebra, n: i64, c: &[Scalar]) -> Result<MatRatFun> {
        alg.element_from_coords(n, &self.canonical_of(c))
    }

    /// Degree decomposition in Chevalley coordinates.
    pub fn decompose(&self, alg: &LaxAlgebra, l: &MatRatFun, max_degree: i64) -> Result<Vec<(i64, Vector)>> {
        Ok(alg.decompose_coords(l, max_degree)?.into_iter().map(|(n, c)| (n, self.coords_of_canonical(&c))).collect())
    }

    /// Value of a canonical-basis table on the Chevalley pair `(X_n^a, X_m^b)`.
    pub fn table_value(&self, t: &CocycleTable, n: i64, a: ChevIndex, m: i64, b: ChevIndex) -> Result<Scalar> {
        self.table_value_of(t, n, &self.to_canonical.col(a), m, &self.to_canonical.col(b))
    }

    /// Value on `(X_n, Y_m)` with `X`, `Y` given in canonical coordinates.
    fn table_value_of(&self, t: &CocycleTable, n: i64, x: &[Scalar], m: i64, y: &[Scalar]) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (r, u) in x.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
            for (s, v) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let g = t.get(n, r, m, s)?;
                if !g.is_zero() {
                    acc += &(&(u * v) * &g);
                }
            }
        }
        Ok(acc)
    }

    /// Value on `(X_n, Y_m)` with `X`, `Y` matrices of `g`.
    pub fn table_value_matrices(
        &self,
        t: &CocycleTable,
        n: i64,
        x: &ExactMatrix,
        m: i64,
        y: &ExactMatrix,
    ) -> Result<Scalar> {
        let fl = self.roots.flavor();
        let cx = fl.coordinates(x).ok_or_else(|| Error::Invalid("matrix outside the flavor".into()))?;
        let cy = fl.coordinates(y).ok_or_else(|| Error::Invalid("matrix outside the flavor".into()))?;
        self.table_value_of(t, n, &cx, m, &cy)
    }
}

/// Checks the leading relations of the lifted basis on a degree grid.
///
/// `chevlax-leading`: `X_n^a` is homogeneous of degree `n` with Chevalley
/// coordinate vector `e_a`. `chevlax-brackets`: `[X_n^a, X_m^b]` equals
/// the lift of `[X^a, X^b]` to degree `n + m`, so every higher term
/// vanishes. `chevlax-coroot-action`: the degree-`(n+m)` component of
/// `[H_n^α, E_m^β]` is `β(H^α)·E_{n+m}^β`.
pub fn lift_check(alg: &LaxAlgebra, lb: &LiftedBasis, grid: &[i64]) -> Result<Vec<CheckEntry>> {
    let lo = grid.iter().min().copied().unwrap_or(0);
    let hi = grid.iter().max().copied().unwrap_or(0);
    alg.prepare(2 * lo.min(0), 2 * hi.max(0))?;
    let d = lb.dim();
    let max = 2 * hi.max(0) + 1;

    let singles: Vec<(i64, usize)> = grid.iter().flat_map(|&n| (0..d).map(move |a| (n, a))).collect();
    let leading = run_samples("chevlax-leading", "X_n^a ∈ g_n with leading matrix X^a", singles, |(n, a)| {
        let el = lb.element(alg, n, a)?;
        let parts = lb.decompose(alg, &el, max)?;
        let mut unit = vec![Scalar::zero(); d];
        unit[a] = Scalar::one();
        Ok(parts.len() == 1 && parts[0].0 == n && parts[0].1 == unit)
    });

    let mut pairs = Vec::new();
    for &n in grid {
        for &m in grid {
            for a in 0..d {
                for b in 0..d {
                    pairs.push((n, a, m, b));
                }
            }
        }
    }
    let graded = |n: i64, a: usize, m: i64, b: usize| -> Result<Vec<(i64, Vector)>> {
        let br = lb.element(alg, n, a)?.commutator(&lb.element(alg, m, b)?)?;
        lb.decompose(alg, &br, max)
    };
    let brackets = run_samples(
        "chevlax-brackets",
        "[X_n^a, X_m^b] = ([X^a, X^b])_{n+m} with no higher terms",
        pairs.clone(),
        |(n, a, m, b)| {
            let want = lb.coords_of_matrix(&lb.matrix(a).commutator(lb.matrix(b))?)?;
            let parts = graded(n, a, m, b)?;
            Ok(if want.iter().all(Scalar::is_zero) {
                parts.is_empty()
            } else {
                parts.len() == 1 && parts[0].0 == n + m && parts[0].1 == want
            })
        },
    );

    let rs = lb.roots();
    let mut coroot_samples = Vec::new();
    for &n in grid {
        for &m in grid {
            for al in rs.simple().iter().copied() {
                for be in 0..rs.roots().len() {
                    coroot_samples.push((n, al, m, be));
                }
            }
        }
    }
    let coroot = run_samples(
        "chevlax-coroot-action",
        "([H_n^α, E_m^β])_{n+m} = β(H^α)·E_{n+m}^β, β(H^α) = 2(α, β)/(α, α)",
        coroot_samples,
        |(n, al, m, be)| {
            let h = lb.h(lb.simple_position(al).expect("simple"));
            let c = rs.cartan_integer(be, al)?;
            let parts = graded(n, h, m, lb.e(be))?;
            let comp = parts
                .iter()
                .find(|(k, _)| *k == n + m)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(|| vec![Scalar::zero(); d]);
            let mut want = vec![Scalar::zero(); d];
            want[lb.e(be)] = c;
            Ok(comp == want)
        },
    );
    Ok(vec![leading, brackets, coroot])
}

/// `2(α, β)/(β, β)` next to `2(α, β)/(α, α)` for every pair of simple roots
/// where they differ; documents which normalization the coroot action uses.
pub fn coroot_ratio_witness(rs: &RootSystem) -> Result<serde_json::Value> {
    let mut out = Vec::new();
    for &a in rs.simple() {
        for &b in rs.simple() {
            let by_alpha = rs.cartan_integer(b, a)?;
            let by_beta = (Scalar::from_int(2) * rs.pairing(a, b)).checked_div(&rs.pairing(b, b))?;
            if by_alpha != by_beta {
                out.push(json!({
                    "alpha": rs.root(a).label(),
                    "beta": rs.root(b).label(),
                    "beta_of_h_alpha": by_alpha,
                    "normalized_by_beta": by_beta,
                }));
            }
        }
    }
    Ok(json!(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    fn lifted(alg: &LaxAlgebra) -> LiftedBasis {
        LiftedBasis::new(RootSystem::new(alg.flavor()).unwrap()).unwrap()
    }

    #[test]
    fn loop_and_sl2_lifts_are_exactly_graded() {
        for alg in [reference::ref_loop(), reference::ref_sl2()] {
            let lb = lifted(&alg);
            for e in lift_check(&alg, &lb, &[-2, -1, 0, 1, 2]).unwrap() {
                assert!(e.passed(), "{}: {:?}", e.id, e.counterexamples);
            }
        }
    }

    #[test]
    fn sl2_bracket_examples() {
        let alg = reference::ref_sl2();
        let lb = lifted(&alg);
        // [E_0^α, E_0^{−α}] = H_0^α
        let br = lb.element(&alg, 0, 0).unwrap().commutator(&lb.element(&alg, 0, 1).unwrap()).unwrap();
        assert_eq!(br, lb.element(&alg, 0, lb.h(0)).unwrap());
        // [H_n, H_m] = 0
        let hh = lb.element(&alg, 2, 2).unwrap().commutator(&lb.element(&alg, -1, 2).unwrap()).unwrap();
        assert!(hh.is_zero());
    }

    #[test]
    fn sp4_pair_lift_and_non_root_sum() {
        let alg = reference::ref_sp4_pair();
        let lb = lifted(&alg);
        for e in lift_check(&alg, &lb, &[-1, 0, 1]).unwrap() {
            assert!(e.passed(), "{}: {:?}", e.id, e.counterexamples);
        }
        let rs = lb.roots();
        let (a, b) = (rs.first_simple(), rs.first_simple());
        assert!(rs.sum(a, b).is_none());
        let br = lb.element(&alg, 1, a).unwrap().commutator(&lb.element(&alg, 1, b).unwrap()).unwrap();
        assert!(lb.decompose(&alg, &br, 4).unwrap().iter().all(|(n, _)| *n != 2));
        // sp(4) has roots of two lengths, so the two normalizations differ
        assert_eq!(coroot_ratio_witness(rs).unwrap().as_array().unwrap().len(), 2);
    }

    #[test]
    fn table_values_change_basis_exactly() {
        let alg = reference::ref_sl2();
        let lb = lifted(&alg);
        let mut t = CocycleTable::empty(3, (-1, 1), (-2, 2));
        for (r, v) in [(0, 2), (1, 3), (2, 5)] {
            t.set(1, r, -1, r, Scalar::from_int(v));
        }
        let direct = lb.table_value_matrices(&t, 1, lb.matrix(2), -1, lb.matrix(2)).unwrap();
        assert_eq!(lb.table_value(&t, 1, 2, -1, 2).unwrap(), direct);
    }
}
