//! Exact root-space decompositions and Chevalley bases of the matrix
//! realizations of `sl(n)`, `so(n)` and `sp(2n)`.

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::lax::{Flavor, FlavorKind};
use crate::linalg::{dot, ExactMatrix, Scalar, Vector};
use crate::report::CheckEntry;

/// A root, stored by its values on the Cartan basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    pub values: Vec<i64>,
    /// Coefficients over the simple roots.
    pub simple_coeffs: Vec<i64>,
    pub positive: bool,
    pub simple: bool,
}

impl Root {
    pub fn label(&self) -> String {
        let c: Vec<String> = self.simple_coeffs.iter().map(|x| x.to_string()).collect();
        format!("({})", c.join(","))
    }

    pub fn height(&self) -> i64 {
        self.simple_coeffs.iter().sum()
    }
}

/// Roots, root vectors, coroots and the pairing on the root lattice.
///
/// Roots are ordered positive first (lexicographically on their values),
/// then the negatives in the same order, so `roots[i + P]` is `−roots[i]`
/// for `P` positive roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    flavor: Flavor,
    cartan: Vec<ExactMatrix>,
    gram_inv: ExactMatrix,
    roots: Vec<Root>,
    vectors: Vec<ExactMatrix>,
    coroots: Vec<ExactMatrix>,
    simple: Vec<usize>,
    killing_constant: Scalar,
}

#[derive(Serialize)]
pub struct RootJson {
    pub label: String,
    pub values: Vec<i64>,
    pub positive: bool,
    pub simple: bool,
    pub vector: ExactMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coroot: Option<ExactMatrix>,
}

#[derive(Serialize)]
pub struct RootSystemJson {
    pub flavor: String,
    pub cartan: Vec<ExactMatrix>,
    pub roots: Vec<RootJson>,
    pub simple_roots: Vec<String>,
    /// `(α_i, α_j)` over the simple roots, from the trace form.
    pub pairing: Vec<Vec<Scalar>>,
    /// `κ` with Killing form `= κ · tr(XY)`.
    pub killing_constant: Scalar,
}

fn sub(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    a.try_sub(b).expect("same shape")
}

/// The Cartan subalgebra of the realization.
pub fn cartan_basis(flavor: &Flavor) -> Result<Vec<ExactMatrix>> {
    let k = flavor.size();
    let u = |i: usize, j: usize| ExactMatrix::unit(k, i, j);
    match flavor.kind() {
        FlavorKind::Sl => Ok((0..k - 1).map(|j| sub(&u(j, j), &u(j + 1, j + 1))).collect()),
        FlavorKind::So => {
            Ok((0..k / 2).map(|j| sub(&u(2 * j, 2 * j + 1), &u(2 * j + 1, 2 * j)).scale(&Scalar::i())).collect())
        }
        FlavorKind::Sp => {
            let n = flavor.n();
            Ok((0..n).map(|j| sub(&u(j, j), &u(n + j, n + j))).collect())
        }
        _ => Err(Error::NotSimple(flavor.name())),
    }
}

fn ad_matrix(flavor: &Flavor, h: &ExactMatrix) -> Result<ExactMatrix> {
    let cols: Vec<Vector> = flavor
        .basis()
        .iter()
        .map(|b| {
            let c = h.commutator(b)?;
            flavor.coordinates(&c).ok_or_else(|| Error::Internal("ad leaves the algebra".into()))
        })
        .collect::<Result<_>>()?;
    let d = flavor.dim();
    Ok(ExactMatrix::from_fn(d, d, |i, j| cols[j][i].clone()))
}

fn lex_positive(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Largest value of `α(H)` on the listed Cartan bases is 2.
const ROOT_VALUE_BOUND: i64 = 2;

impl RootSystem {
    pub fn new(flavor: &Flavor) -> Result<Self> {
        if !flavor.is_simple() {
            return Err(Error::NotSimple(flavor.name()));
        }
        let cartan = cartan_basis(flavor)?;
        let p = cartan.len();
        let d = flavor.dim();
        let ads: Vec<ExactMatrix> = cartan.iter().map(|h| ad_matrix(flavor, h)).collect::<Result<_>>()?;

        // enumerate candidate value vectors and keep joint eigenspaces
        let mut found: Vec<(Vec<i64>, Vector)> = Vec::new();
        let width = (2 * ROOT_VALUE_BOUND + 1) as usize;
        for code in 0..width.pow(p as u32) {
            let vals: Vec<i64> =
                (0..p).map(|j| (code / width.pow(j as u32) % width) as i64 - ROOT_VALUE_BOUND).collect();
            if vals.iter().all(|&x| x == 0) {
                continue;
            }
            let blocks: Vec<ExactMatrix> = ads
                .iter()
                .zip(&vals)
                .map(|(a, &v)| sub(a, &ExactMatrix::identity(d).scale(&Scalar::from_int(v))))
                .collect();
            let ker = ExactMatrix::vstack(&blocks)?.nullspace();
            match ker.len() {
                0 => {}
                1 => found.push((vals, ker.into_iter().next().expect("one vector"))),
                k => return Err(Error::Internal(format!("root space of dimension {k}"))),
            }
        }
        found.retain(|(v, _)| lex_positive(v));
        found.sort_by(|a, b| b.0.cmp(&a.0).reverse());
        let npos = found.len();
        if 2 * npos + p != d {
            return Err(Error::Internal(format!("{} positive roots, rank {p}, dimension {d}", npos)));
        }

        let pos_values: Vec<Vec<i64>> = found.iter().map(|(v, _)| v.clone()).collect();
        let is_sum_of_two = |v: &[i64]| {
            pos_values.iter().any(|a| {
                let rest: Vec<i64> = v.iter().zip(a).map(|(x, y)| x - y).collect();
                pos_values.contains(&rest)
            })
        };
        let simple: Vec<usize> = (0..npos).filter(|&i| !is_sum_of_two(&pos_values[i])).collect();
        if simple.len() != p {
            return Err(Error::Internal(format!("{} simple roots for rank {p}", simple.len())));
        }

        // coefficients over the simple roots
        let smat = ExactMatrix::from_fn(p, p, |i, j| Scalar::from_int(pos_values[simple[j]][i]));
        let sinv = smat.inverse()?;
        let coeffs = |v: &[i64]| -> Result<Vec<i64>> {
            let c = sinv.mul_vec(&v.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>());
            c.iter()
                .map(|x| {
                    if x.is_real() && x.re().is_integer() {
                        x.re().to_integer().try_into().map_err(|_| Error::Internal("coefficient overflow".into()))
                    } else {
                        Err(Error::Internal(format!("non-integral simple-root coefficient {x}")))
                    }
                })
                .collect()
        };

        let gram = ExactMatrix::from_fn(p, p, |i, j| flavor.trace_form(&cartan[i], &cartan[j]));
        let gram_inv = gram.inverse()?;

        let mut roots = Vec::with_capacity(2 * npos);
        let mut raw = Vec::with_capacity(2 * npos);
        for sign in [1i64, -1] {
            for (i, (v, _)) in found.iter().enumerate() {
                let values: Vec<i64> = v.iter().map(|x| sign * x).collect();
                let blocks: Vec<ExactMatrix> = ads
                    .iter()
                    .zip(&values)
                    .map(|(a, &x)| sub(a, &ExactMatrix::identity(d).scale(&Scalar::from_int(x))))
                    .collect();
                let mut ker = ExactMatrix::vstack(&blocks)?.nullspace();
                if ker.len() != 1 {
                    return Err(Error::Internal("negative root space is not a line".into()));
                }
                let mut e = ker.remove(0);
                let lead = e.iter().find(|x| !x.is_zero()).cloned().expect("nonzero kernel vector");
                let inv = lead.inv()?;
                e.iter_mut().for_each(|x| *x = &*x * &inv);
                raw.push(flavor.combine(&e));
                roots.push(Root {
                    simple_coeffs: coeffs(&values)?,
                    values,
                    positive: sign > 0,
                    simple: sign > 0 && simple.contains(&i),
                });
            }
        }

        // non-simple positive root vectors by brackets, E^β = [E^{α_i}, E^{β−α_i}]/(r + 1)
        let pos_of = |v: &[i64]| pos_values.iter().position(|x| x == v);
        let mut by_height: Vec<usize> = (0..npos).filter(|i| !simple.contains(i)).collect();
        by_height.sort_by_key(|&i| roots[i].height());
        for b in by_height {
            let (si, rest) = simple
                .iter()
                .find_map(|&s| {
                    let v: Vec<i64> = pos_values[b].iter().zip(&pos_values[s]).map(|(x, y)| x - y).collect();
                    pos_of(&v).map(|g| (s, g))
                })
                .ok_or_else(|| Error::Internal("positive root is not reachable from a simple root".into()))?;
            let mut r = 0i64;
            while pos_of(
                &pos_values[rest].iter().zip(&pos_values[si]).map(|(x, y)| x - (r + 1) * y).collect::<Vec<_>>(),
            )
            .is_some()
            {
                r += 1;
            }
            raw[b] = raw[si].commutator(&raw[rest])?.scale(&Scalar::from_frac(1, r + 1));
        }

        // rescale E^{−α} so that [E^α, E^{−α}] = H^α with α(H^α) = 2
        let mut vectors = raw.clone();
        let mut coroots = Vec::with_capacity(npos);
        for i in 0..npos {
            let h = raw[i].commutator(&raw[i + npos])?;
            let ah = eval_root(&cartan, &gram_inv, flavor, &roots[i].values, &h)?;
            let f = Scalar::from_int(2).checked_div(&ah)?;
            vectors[i + npos] = raw[i + npos].scale(&f);
            coroots.push(h.scale(&f));
        }

        let killing_constant = {
            let a = ad_matrix(flavor, &cartan[0])?;
            a.try_mul(&a)?.trace().checked_div(&flavor.trace_form(&cartan[0], &cartan[0]))?
        };

        Ok(RootSystem { flavor: flavor.clone(), cartan, gram_inv, roots, vectors, coroots, simple, killing_constant })
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[ExactMatrix] {
        &self.cartan
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    /// Index of `−roots[i]`.
    pub fn negative(&self, i: usize) -> usize {
        let p = self.num_positive();
        if i < p {
            i + p
        } else {
            i - p
        }
    }

    /// Index of the root with the given values.
    pub fn find(&self, values: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.values == values)
    }

    /// Index of `α + β` if it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let v: Vec<i64> = self.roots[a].values.iter().zip(&self.roots[b].values).map(|(x, y)| x + y).collect();
        self.find(&v)
    }

    /// `E^α`.
    pub fn vector(&self, i: usize) -> &ExactMatrix {
        &self.vectors[i]
    }

    /// `H^α` for a positive root.
    pub fn coroot(&self, i: usize) -> &ExactMatrix {
        &self.coroots[i]
    }

    /// Indices of the simple roots, in canonical order.
    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    /// The fixed simple root `α₁`.
    pub fn first_simple(&self) -> usize {
        self.simple[0]
    }

    pub fn killing_constant(&self) -> &Scalar {
        &self.killing_constant
    }

    /// `(α, β)` induced by the trace form.
    pub fn pairing(&self, a: usize, b: usize) -> Scalar {
        let u: Vector = self.roots[a].values.iter().map(|&x| Scalar::from_int(x)).collect();
        let v: Vector = self.roots[b].values.iter().map(|&x| Scalar::from_int(x)).collect();
        dot(&u, &self.gram_inv.mul_vec(&v))
    }

    /// `α(H)` for `H` in the Cartan subalgebra.
    pub fn value(&self, a: usize, h: &ExactMatrix) -> Result<Scalar> {
        eval_root(&self.cartan, &self.gram_inv, &self.flavor, &self.roots[a].values, h)
    }

    /// `β(H^α) = 2(α, β)/(α, α)`.
    pub fn cartan_integer(&self, beta: usize, alpha: usize) -> Result<Scalar> {
        (Scalar::from_int(2) * self.pairing(alpha, beta)).checked_div(&self.pairing(alpha, alpha))
    }

    /// Largest `r ≥ 0` with `α − rβ` a root.
    pub fn string_length(&self, a: usize, b: usize) -> i64 {
        let mut r = 0;
        loop {
            let v: Vec<i64> =
                self.roots[a].values.iter().zip(&self.roots[b].values).map(|(x, y)| x - (r + 1) * y).collect();
            if self.find(&v).is_none() {
                return r;
            }
            r += 1;
        }
    }

    /// Chevalley basis of `g`: all `E^α`, then `H^i` for the simple roots.
    pub fn chevalley_basis(&self) -> Vec<ExactMatrix> {
        let mut out = self.vectors.clone();
        out.extend(self.simple.iter().map(|&i| self.coroots[i].clone()));
        out
    }

    pub fn chevalley_labels(&self) -> Vec<String> {
        let mut out: Vec<String> =
            self.roots.iter().map(|r| format!("E{}{}", if r.positive { "+" } else { "-" }, abs_label(r))).collect();
        out.extend(self.simple.iter().map(|&i| format!("H{}", self.roots[i].label())));
        out
    }

    /// Exhaustive check of the Chevalley relations.
    pub fn verify(&self) -> Result<Vec<CheckEntry>> {
        let fl = &self.flavor;
        let nroots = self.roots.len();
        let npos = self.num_positive();
        let br = |a: &ExactMatrix, b: &ExactMatrix| a.commutator(b);

        let mut chev = CheckEntry::new("chevalley-sl2-triples", "[E^α, E^{−α}] = H^α, [H^α, E^{±α}] = ±2E^{±α}");
        let mut cartan = CheckEntry::new("chevalley-cartan", "[H^α, H^β] = 0, [H, E^α] = α(H) E^α");
        let mut coroot = CheckEntry::new("chevalley-coroot-action", "[H^α, E^β] = β(H^α) E^β, β(H^α) = 2(α, β)/(α, α)");
        let mut ee = CheckEntry::new("chevalley-root-brackets", "[E^α, E^β] = ±(r + 1) E^{α+β}, ±H^α or 0");
        for a in 0..npos {
            let (e, f, h) = (&self.vectors[a], &self.vectors[self.negative(a)], &self.coroots[a]);
            let two = Scalar::from_int(2);
            let ok = br(e, f)? == *h
                && br(h, e)? == e.scale(&two)
                && br(h, f)? == f.scale(&-two.clone())
                && self.value(a, h)? == two;
            chev.record(ok, || json!({ "root": self.roots[a].label() }));
            for b in 0..npos {
                cartan.record(br(h, &self.coroots[b])?.is_zero(), || json!({ "pair": [a, b] }));
            }
            for b in 0..nroots {
                let c = self.cartan_integer(b, a)?;
                coroot.record(br(h, &self.vectors[b])? == self.vectors[b].scale(&c), || json!({ "pair": [a, b] }));
            }
        }
        for (j, hj) in self.cartan.iter().enumerate() {
            for b in 0..nroots {
                let v = Scalar::from_int(self.roots[b].values[j]);
                cartan.record(
                    br(hj, &self.vectors[b])? == self.vectors[b].scale(&v),
                    || json!({ "cartan": j, "root": b }),
                );
            }
        }
        for a in 0..nroots {
            for b in 0..nroots {
                let got = br(&self.vectors[a], &self.vectors[b])?;
                let ok = if b == self.negative(a) {
                    let h = if a < npos { self.coroots[a].clone() } else { self.coroots[b].scale(&-Scalar::one()) };
                    got == h
                } else if let Some(s) = self.sum(a, b) {
                    let r1 = Scalar::from_int(self.string_length(a, b) + 1);
                    let target = &self.vectors[s];
                    got == target.scale(&r1) || got == target.scale(&-r1)
                } else {
                    got.is_zero()
                };
                ee.record(ok, || json!({ "pair": [self.roots[a].label(), self.roots[b].label()], "bracket": got }));
            }
        }

        // Killing form proportional to the trace form
        let mut killing = CheckEntry::new("chevalley-killing", "tr(ad X ad Y) = κ · tr(XY)");
        let ads: Vec<ExactMatrix> = fl.basis().iter().map(|b| ad_matrix(fl, b)).collect::<Result<_>>()?;
        for (p, ap) in ads.iter().enumerate() {
            for (q, aq) in ads.iter().enumerate() {
                let k = ap.try_mul(aq)?.trace();
                killing.record(
                    k == &self.killing_constant * &fl.trace_form(&fl.basis()[p], &fl.basis()[q]),
                    || json!({ "pair": [p, q] }),
                );
            }
        }
        Ok(vec![chev, cartan, coroot, ee, killing])
    }

    pub fn to_json(&self) -> RootSystemJson {
        let npos = self.num_positive();
        RootSystemJson {
            flavor: self.flavor.name(),
            cartan: self.cartan.clone(),
            roots: self
                .roots
                .iter()
                .enumerate()
                .map(|(i, r)| RootJson {
                    label: r.label(),
                    values: r.values.clone(),
                    positive: r.positive,
                    simple: r.simple,
                    vector: self.vectors[i].clone(),
                    coroot: (i < npos).then(|| self.coroots[i].clone()),
                })
                .collect(),
            simple_roots: self.simple.iter().map(|&i| self.roots[i].label()).collect(),
            pairing: self.simple.iter().map(|&i| self.simple.iter().map(|&j| self.pairing(i, j)).collect()).collect(),
            killing_constant: self.killing_constant.clone(),
        }
    }
}

fn abs_label(r: &Root) -> String {
    let c: Vec<String> = r.simple_coeffs.iter().map(|x| x.abs().to_string()).collect();
    format!("({})", c.join(","))
}

/// `α(H)` from the values of `α` on the Cartan basis: `H = Σ x_j h_j` with
/// `x = G⁻¹ (tr(H h_i))_i`.
fn eval_root(
    cartan: &[ExactMatrix],
    gram_inv: &ExactMatrix,
    flavor: &Flavor,
    values: &[i64],
    h: &ExactMatrix,
) -> Result<Scalar> {
    let t: Vector = cartan.iter().map(|c| flavor.trace_form(h, c)).collect();
    let x = gram_inv.mul_vec(&t);
    let mut back = ExactMatrix::zeros(h.rows(), h.cols());
    for (xi, c) in x.iter().zip(cartan) {
        back = &back + &c.scale(xi);
    }
    if back != *h {
        return Err(Error::Invalid("element is not in the Cartan subalgebra".into()));
    }
    Ok(x.iter().zip(values).map(|(xi, &v)| xi * &Scalar::from_int(v)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_root_data() {
        let rs = RootSystem::new(&Flavor::sl(2)).unwrap();
        assert_eq!(rs.num_positive(), 1);
        assert_eq!(*rs.vector(0), ExactMatrix::from_ints(&[&[0, 1], &[0, 0]]));
        assert_eq!(*rs.vector(1), ExactMatrix::from_ints(&[&[0, 0], &[1, 0]]));
        assert_eq!(*rs.coroot(0), ExactMatrix::from_ints(&[&[1, 0], &[0, -1]]));
        assert!(rs.verify().unwrap().iter().all(CheckEntry::passed));
        assert_eq!(*rs.killing_constant(), Scalar::from_int(4));
    }

    #[test]
    fn classical_root_counts_and_relations() {
        // (flavor, positive roots, Killing constant)
        let cases = [
            (Flavor::sl(3), 3, 6),
            (Flavor::new(FlavorKind::Sp, 2).unwrap(), 4, 6),
            (Flavor::new(FlavorKind::So, 3).unwrap(), 1, 1),
            (Flavor::new(FlavorKind::So, 5).unwrap(), 4, 3),
        ];
        for (f, npos, kappa) in cases {
            let rs = RootSystem::new(&f).unwrap();
            assert_eq!(rs.num_positive(), npos, "{f}");
            assert_eq!(*rs.killing_constant(), Scalar::from_int(kappa), "{f}");
            for e in rs.verify().unwrap() {
                assert!(e.passed(), "{f} {}: {:?}", e.id, e.counterexamples);
            }
            assert_eq!(rs.chevalley_basis().len(), f.dim());
        }
    }

    #[test]
    fn so3_root_vectors_are_isotropic() {
        let rs = RootSystem::new(&Flavor::new(FlavorKind::So, 3).unwrap()).unwrap();
        let e = rs.vector(0);
        assert!(e.entries().iter().any(|x| !x.is_real()));
        let f = Flavor::new(FlavorKind::So, 3).unwrap();
        assert!(f.trace_form(e, e).is_zero());
    }

    #[test]
    fn gl_is_rejected() {
        assert!(matches!(RootSystem::new(&Flavor::gl(2)), Err(Error::NotSimple(_))));
    }
}
