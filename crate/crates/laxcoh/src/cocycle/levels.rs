//! Level structure of L-invariant bounded cocycles: the level laws, the
//! bilinear form on `g` read off at level zero, the non-coboundary witness
//! and the `gl = s ⊕ sl` cross terms.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::checks::{grid_pairs, Pair};
use super::evaluator::Cocycle;
use super::table::CocycleTable;
use crate::connection::{kn_function, kn_vector_field, nabla, ConnectionForm};
use crate::error::{Error, Result};
use crate::lax::{Decomposition, Flavor, FlavorKind, LaxAlgebra};
use crate::linalg::{dot, ExactMatrix, Scalar, Vector};
use crate::report::{run_samples, CheckEntry};
use crate::riemann::MatRatFun;
use crate::sample::SampleGrid;

/// `ψ(X, Y) = γ(X̃_1, Ỹ_{−1})` over the canonical basis of `g`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PsiForm {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<Scalar>>,
}

impl PsiForm {
    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Scalar::is_zero)
    }

    /// `uᵗ Ψ v`.
    pub fn apply(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let pv: Vector = self.matrix.iter().map(|row| dot(row, v)).collect();
        dot(u, &pv)
    }

    pub fn check_symmetric(&self) -> CheckEntry {
        let mut e = CheckEntry::new("psi-symmetric", "ψ(X, Y) = ψ(Y, X)");
        for r in 0..self.dim() {
            for s in 0..self.dim() {
                e.record(self.matrix[r][s] == self.matrix[s][r], || json!({ "r": r, "s": s }));
            }
        }
        e
    }

    /// `ψ([X, Y], Z) = ψ(X, [Y, Z])` on all basis triples.
    pub fn check_invariant(&self, flavor: &Flavor) -> CheckEntry {
        let sc = flavor.structure_constants();
        let d = self.dim();
        let unit =
            |i: usize| -> Vector { (0..d).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect() };
        let mut e = CheckEntry::new("psi-invariant", "ψ([X, Y], Z) = ψ(X, [Y, Z])");
        for p in 0..d {
            for q in 0..d {
                for t in 0..d {
                    let lhs = self.apply(&sc[p][q], &unit(t));
                    let rhs = self.apply(&unit(p), &sc[q][t]);
                    e.record(lhs == rhs, || json!({ "triple": [p, q, t] }));
                }
            }
        }
        e
    }

    /// The constant `c` with `ψ = c · tr(XY)`, asserted entry by entry.
    pub fn trace_multiple(&self, flavor: &Flavor) -> Result<(Scalar, CheckEntry)> {
        if !flavor.is_simple() {
            return Err(Error::NotSimple(flavor.name()));
        }
        let b = flavor.basis();
        let t: Vec<Vec<Scalar>> = b.iter().map(|x| b.iter().map(|y| flavor.trace_form(x, y)).collect()).collect();
        let (r0, s0) = (0..self.dim())
            .flat_map(|r| (0..self.dim()).map(move |s| (r, s)))
            .find(|&(r, s)| !t[r][s].is_zero())
            .ok_or_else(|| Error::Internal("degenerate trace form".into()))?;
        let c = self.matrix[r0][s0].checked_div(&t[r0][s0])?;
        let mut e = CheckEntry::new("psi-trace-multiple", "ψ = c · tr(XY)");
        for r in 0..self.dim() {
            for s in 0..self.dim() {
                e.record(self.matrix[r][s] == &c * &t[r][s], || json!({ "r": r, "s": s }));
            }
        }
        let witness = json!({ "c": c });
        Ok((c, e.with_witness(witness)))
    }

    /// Symmetry, invariance and, for simple flavors, the trace-form multiple.
    pub fn checks(&self, flavor: &Flavor) -> Result<(Option<Scalar>, Vec<CheckEntry>)> {
        let mut out = vec![self.check_symmetric(), self.check_invariant(flavor)];
        let c = if flavor.is_simple() {
            let (c, e) = self.trace_multiple(flavor)?;
            out.push(e);
            Some(c)
        } else {
            None
        };
        Ok((c, out))
    }
}

/// Positive-level entries of a table.
pub fn positive_level_entries(t: &CocycleTable) -> Vec<Pair> {
    t.entries().filter(|(k, _)| k.0 + k.2 > 0).map(|(k, _)| *k).collect()
}

/// `ψ_γ` from a table covering the degrees `±1`.
pub fn psi_form(alg: &LaxAlgebra, t: &CocycleTable) -> Result<PsiForm> {
    if let Some(k) = positive_level_entries(t).first() {
        return Err(Error::NotBounded(format!("nonzero value at level {} for pair {k:?}", k.0 + k.2)));
    }
    let d = alg.dim_g();
    let matrix =
        (0..d).map(|r| (0..d).map(|s| t.get(1, r, -1, s)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    Ok(PsiForm { labels: alg.flavor().labels().to_vec(), matrix })
}

/// Degree components of `∇_{e_p} X_m^r`, or `None` past the table window.
type ActionTable = BTreeMap<(i64, i64, usize), Option<Decomposition>>;

fn action_components(alg: &LaxAlgebra, w: &ConnectionForm, shifts: &[i64], t: &CocycleTable) -> Result<ActionTable> {
    let (lo, hi) = t.degrees();
    let keys: Vec<(i64, i64, usize)> =
        shifts.iter().flat_map(|&p| (lo..=hi).flat_map(move |m| (0..alg.dim_g()).map(move |r| (p, m, r)))).collect();
    keys.into_par_iter()
        .map(|(p, m, r)| {
            let e = kn_vector_field(alg.sphere(), p);
            let v = nabla(&e, &alg.basis_element(m, r)?, w)?;
            match alg.decompose_coords(&v, hi) {
                Ok(d) if d.keys().next().map_or(true, |&h| h >= lo) => Ok(((p, m, r), Some(d))),
                Ok(_) | Err(Error::WindowExceeded(_)) => Ok(((p, m, r), None)),
                Err(e) => Err(e),
            }
        })
        .collect()
}

/// `Σ_h Σ_u c_h^u γ(X_h^u, Y)` for the components `c` of a first argument.
fn pair_sum(t: &CocycleTable, first: &Decomposition, m: i64, s: usize, flip: bool) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (h, c) in first {
        for (u, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let v = if flip { t.get(m, s, *h, u)? } else { t.get(*h, u, m, s)? };
            acc += &(x * &v);
        }
    }
    Ok(acc)
}

/// The invariance relation `γ(∇_{e_p} X_m^r, X_n^s) + γ(X_m^r, ∇_{e_p} X_n^s) = 0`
/// with its leading part `m γ(X_{m+p}^r, X_n^s) + n γ(X_m^r, X_{n+p}^s)`
/// separated from the contributions at higher level.
#[derive(Clone, Debug, Serialize)]
pub struct ResolvedRelation {
    pub p: i64,
    pub m: i64,
    pub r: usize,
    pub n: i64,
    pub s: usize,
    pub leading: Scalar,
    pub higher: Scalar,
}

impl ResolvedRelation {
    pub fn holds(&self) -> bool {
        (&self.leading + &self.higher).is_zero()
    }
}

fn resolve(
    t: &CocycleTable,
    a: &ActionTable,
    p: i64,
    (m, r, n, s): (i64, usize, i64, usize),
) -> Result<Option<ResolvedRelation>> {
    let (Some(Some(dm)), Some(Some(dn))) = (a.get(&(p, m, r)), a.get(&(p, n, s))) else {
        return Ok(None);
    };
    if !t.covers(m + p, n) || !t.covers(m, n + p) {
        return Ok(None);
    }
    let total = match (pair_sum(t, dm, n, s, false), pair_sum(t, dn, m, r, true)) {
        (Ok(x), Ok(y)) => x + y,
        (Err(Error::WindowExceeded(_)), _) | (_, Err(Error::WindowExceeded(_))) => return Ok(None),
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    let leading = Scalar::from_int(m) * t.get(m + p, r, n, s)? + Scalar::from_int(n) * t.get(m, r, n + p, s)?;
    let higher = total - &leading;
    Ok(Some(ResolvedRelation { p, m, r, n, s, leading, higher }))
}

/// Shifts `p` used for the resolved relations.
pub const RECURSION_SHIFTS: [i64; 5] = [-2, -1, 0, 1, 2];

/// The level laws of an L-invariant cocycle bounded from above, on a table.
///
/// Level zero and above are literal; the general relation and its `p = 0`
/// case are checked with the higher-level contributions computed from the
/// components of `∇_{e_p}` and the table.
pub fn level_recursion_check(alg: &LaxAlgebra, t: &CocycleTable, w: &ConnectionForm) -> Result<Vec<CheckEntry>> {
    let d = alg.dim_g();
    let (lo, hi) = t.degrees();
    let mut out = Vec::new();

    let mut above = CheckEntry::new("level-bounded-by-zero", "γ(ḡ_n, ḡ_m) = 0 for n + m > 0");
    let pos = positive_level_entries(t);
    above.samples = t.len();
    for k in pos {
        above.fail(json!({ "pair": k }));
    }
    out.push(above);

    let mut zerodeg = CheckEntry::new("level-zero-degree", "γ(X_m, Y_0) = 0 for m ≥ 0");
    let mut nm1 = CheckEntry::new("level-zero-linear", "γ(X_n, Y_{−n}) = n · γ(X_1, Y_{−1})");
    let mut p1m1 = CheckEntry::new("level-psi-symmetric", "γ(X_1^r, X_{−1}^s) = γ(X_1^s, X_{−1}^r)");
    for r in 0..d {
        for s in 0..d {
            for m in 0..=hi {
                if t.covers(m, 0) {
                    let v = t.get(m, r, 0, s)?;
                    zerodeg.record(v.is_zero(), || json!({ "m": m, "r": r, "s": s, "value": v }));
                }
            }
            let base = t.get(1, r, -1, s)?;
            for n in lo.max(-hi)..=hi.min(-lo) {
                let v = t.get(n, r, -n, s)?;
                nm1.record(v == Scalar::from_int(n) * &base, || json!({ "n": n, "r": r, "s": s, "value": v }));
            }
            p1m1.record(base == t.get(1, s, -1, r)?, || json!({ "r": r, "s": s }));
        }
    }
    out.extend([zerodeg, nm1, p1m1]);

    let a = action_components(alg, w, &RECURSION_SHIFTS, t)?;
    let mut leading = CheckEntry::new("level-action-leading", "∇_{e_p} X_m^r = m X_{m+p}^r + higher degrees");
    for (&(p, m, r), dec) in &a {
        if let Some(dec) = dec {
            let at = dec.get(&(m + p));
            let ok = dec.keys().all(|&h| h >= m + p)
                && (0..d).all(|u| {
                    let want = if u == r { Scalar::from_int(m) } else { Scalar::zero() };
                    at.map_or_else(Scalar::zero, |c| c[u].clone()) == want
                });
            leading.record(ok, || json!({ "p": p, "m": m, "r": r }));
        }
    }
    out.push(leading);

    let quads: Vec<(i64, usize, i64, usize)> = (lo..=hi)
        .flat_map(|m| (0..d).flat_map(move |r| (lo..=hi).flat_map(move |n| (0..d).map(move |s| (m, r, n, s)))))
        .collect();
    let mut jobs = Vec::new();
    for &p in &RECURSION_SHIFTS {
        jobs.extend(quads.iter().map(|&q| (p, q)));
    }
    let resolved: Vec<Option<ResolvedRelation>> =
        jobs.into_par_iter().map(|(p, q)| resolve(t, &a, p, q)).collect::<Result<_>>()?;

    let mut recform = CheckEntry::new(
        "level-recursion",
        "m γ(X_{p+m}, Y_n) + n γ(X_m, Y_{n+p}) = −(higher-level terms of the invariance relation)",
    );
    let mut ln0 = CheckEntry::new("level-nonzero-levels", "(m + n) γ(X_m, Y_n) = −(higher-level terms) for p = 0");
    let mut skipped = 0usize;
    for x in resolved {
        match x {
            None => skipped += 1,
            Some(x) => {
                let e = if x.p == 0 { &mut ln0 } else { &mut recform };
                e.record(x.holds(), || json!(x));
            }
        }
    }
    out.push(recform.with_witness(json!({ "outside_window": skipped })));
    out.push(ln0);
    Ok(out)
}

/// A pair that certifies a cocycle is not a coboundary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonboundWitness {
    pub cartan: Vec<Vec<Scalar>>,
    pub bracket_is_zero: bool,
    pub value: Scalar,
}

/// A Cartan element with nonzero trace square.
pub fn witness_cartan(flavor: &Flavor) -> ExactMatrix {
    let k = flavor.size();
    match flavor.kind() {
        FlavorKind::S => ExactMatrix::identity(k),
        FlavorKind::Gl | FlavorKind::Sl if k == 1 => ExactMatrix::identity(1),
        FlavorKind::Gl | FlavorKind::Sl => {
            ExactMatrix::unit(k, 0, 0).try_sub(&ExactMatrix::unit(k, 1, 1)).expect("square")
        }
        FlavorKind::So => {
            ExactMatrix::unit(k, 0, 1).try_sub(&ExactMatrix::unit(k, 1, 0)).expect("square").scale(&Scalar::i())
        }
        FlavorKind::Sp => {
            let n = flavor.n();
            ExactMatrix::unit(k, 0, 0).try_sub(&ExactMatrix::unit(k, n, n)).expect("square")
        }
    }
}

/// `H_(n) = H_0 · z^n` for the witness Cartan element.
pub fn cartan_multiple(alg: &LaxAlgebra, n: i64) -> Result<MatRatFun> {
    let h0 = alg.element_for_leading(&witness_cartan(alg.flavor()), 0)?;
    h0.scalar_mul(&kn_function(alg.sphere(), n))
}

/// `[H_(−1), H_(1)] = 0` while `γ(H_(−1), H_(1)) ≠ 0`.
pub fn nonbound_witness(alg: &LaxAlgebra, gamma: &Cocycle) -> Result<NonboundWitness> {
    let hm = cartan_multiple(alg, -1)?;
    let hp = cartan_multiple(alg, 1)?;
    let bracket_is_zero = hm.commutator(&hp)?.is_zero();
    let value = gamma.eval(alg, &hm, &hp)?;
    if value.is_zero() {
        return Err(Error::Inconclusive("cocycle vanishes on the witness pair".into()));
    }
    let h = witness_cartan(alg.flavor());
    let cartan = (0..h.rows()).map(|i| h.row(i).to_vec()).collect();
    Ok(NonboundWitness { cartan, bracket_is_zero, value })
}

/// `γ(x, y) = 0` for `x` the scalar part and `y` the traceless part of
/// basis elements, and for `x = z^n · I`.
pub fn gl_cross_vanishing(alg: &LaxAlgebra, gamma: &Cocycle, grid: &SampleGrid) -> Result<CheckEntry> {
    if alg.flavor().kind() != FlavorKind::Gl {
        return Err(Error::Invalid("cross vanishing needs a gl flavor".into()));
    }
    let id = ExactMatrix::identity(alg.flavor().size());
    let d = alg.dim_g();
    let samples: Vec<(i64, usize, i64, usize)> =
        grid_pairs(alg, grid).into_iter().flat_map(|(n, r, m, s)| [(n, r, m, s), (n, d, m, s)]).collect();
    Ok(run_samples("gl-cross-vanishing", "γ(x, y) = 0 for x ∈ s̄(n), y ∈ s̄l(n)", samples, |(n, r, m, s)| {
        let x =
            if r == d { MatRatFun::monomial(alg.sphere(), &id, n) } else { alg.split_gl(&alg.basis_element(n, r)?)?.0 };
        let y = alg.split_gl(&alg.basis_element(m, s)?)?.1;
        alg.certify(&x)?;
        alg.certify(&y)?;
        Ok(gamma.eval(alg, &x, &y)?.is_zero() && gamma.eval(alg, &y, &x)?.is_zero())
    }))
}

/// Two tables are linearly independent over the window.
pub fn tables_independent(a: &CocycleTable, b: &CocycleTable) -> CheckEntry {
    let mut e = CheckEntry::new("gl-tables-independent", "rank of (γ₁, γ₂) over the window is 2");
    let keys: Vec<Pair> = a.entries().map(|(k, _)| *k).chain(b.entries().map(|(k, _)| *k)).collect();
    let val = |t: &CocycleTable, k: &Pair| t.get(k.0, k.1, k.2, k.3).unwrap_or_else(|_| Scalar::zero());
    let mut witness = None;
    'outer: for (i, k) in keys.iter().enumerate() {
        for l in &keys[i + 1..] {
            let det = val(a, k) * val(b, l) - val(a, l) * val(b, k);
            if !det.is_zero() {
                witness = Some((*k, *l, det));
                break 'outer;
            }
        }
    }
    e.samples = keys.len();
    match witness {
        Some((k, l, det)) => e.with_witness(json!({ "pairs": [k, l], "minor": det })),
        None => {
            e.fail(json!({ "reason": "all 2×2 minors vanish" }));
            e
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::minimal_connection;
    use crate::reference;
    use crate::riemann::Cycle;

    fn gamma1_table(alg: &LaxAlgebra, d: i64) -> (ConnectionForm, CocycleTable) {
        let w = minimal_connection(alg).unwrap();
        let g = Cocycle::gamma1(&w, Cycle::separating(alg.sphere()));
        let t = CocycleTable::build(alg, &g, (-d, d), (-2 * d, 2 * d)).unwrap();
        (w, t)
    }

    #[test]
    fn loop_psi_is_minus_trace_form() {
        let alg = reference::ref_loop();
        let (_, t) = gamma1_table(&alg, 2);
        let psi = psi_form(&alg, &t).unwrap();
        let (c, checks) = psi.checks(alg.flavor()).unwrap();
        // γ(H z, H z^{-1}) = res tr(H z · (−1) H z^{−2}) = −tr(H²)
        assert_eq!(c, Some(Scalar::from_int(-1)));
        assert!(checks.iter().all(CheckEntry::passed));
    }

    #[test]
    fn level_laws_hold_for_gamma1_on_sl2() {
        let alg = reference::ref_sl2();
        let (w, t) = gamma1_table(&alg, 4);
        for e in level_recursion_check(&alg, &t, &w).unwrap() {
            assert!(e.passed(), "{}: {:?}", e.id, e.counterexamples);
            assert!(e.samples > 0 || e.id == "level-bounded-by-zero", "{}", e.id);
        }
    }

    #[test]
    fn psi_rejects_positive_levels() {
        let alg = reference::ref_sl2();
        let mut t = CocycleTable::empty(3, (-2, 2), (-4, 4));
        t.set(1, 0, 1, 1, Scalar::one());
        assert!(matches!(psi_form(&alg, &t), Err(Error::NotBounded(_))));
        let z = CocycleTable::empty(3, (-2, 2), (-4, 4));
        assert!(psi_form(&alg, &z).unwrap().is_zero());
    }

    #[test]
    fn witnesses() {
        let alg = reference::ref_sl2();
        let w = minimal_connection(&alg).unwrap();
        let g = Cocycle::gamma1(&w, Cycle::separating(alg.sphere()));
        let x = nonbound_witness(&alg, &g).unwrap();
        assert!(x.bracket_is_zero);
        assert_eq!(x.value, Scalar::from_int(2));
        let phi = super::super::functional::LinearFunctional::random_sparse(3, -4, 4, 0.7, 2);
        assert!(matches!(nonbound_witness(&alg, &Cocycle::coboundary(phi)), Err(Error::Inconclusive(_))));
        let one = reference::ref_s(1);
        let g2 = Cocycle::gamma2(Cycle::around_zero());
        // γ₂(A_{−1}, A_1) = res z^{−1} dz = 1
        assert_eq!(nonbound_witness(&one, &g2).unwrap().value, Scalar::one());
    }

    #[test]
    fn gl_cross_terms_vanish_and_tables_are_independent() {
        let alg = reference::ref_gl2();
        let w = minimal_connection(&alg).unwrap();
        let c = Cycle::separating(alg.sphere());
        let g1 = Cocycle::gamma1(&w, c.clone());
        let g2 = Cocycle::gamma2(c);
        let grid = SampleGrid::new(2, None, 0);
        assert!(gl_cross_vanishing(&alg, &g1, &grid).unwrap().passed());
        assert!(gl_cross_vanishing(&alg, &g2, &grid).unwrap().passed());
        let t1 = CocycleTable::build(&alg, &g1, (-2, 2), (-4, 4)).unwrap();
        let t2 = CocycleTable::build(&alg, &g2, (-2, 2), (-4, 4)).unwrap();
        assert!(tables_independent(&t1, &t2).passed());
        assert!(!tables_independent(&t1, &t1.scale(&Scalar::from_int(3))).passed());
    }
}
