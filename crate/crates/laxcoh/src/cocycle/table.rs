//! Materialized cocycle values on pairs of basis elements.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::evaluator::Cocycle;
use crate::error::{Error, Result};
use crate::lax::LaxAlgebra;
use crate::linalg::Scalar;
use crate::riemann::MatRatFun;

/// Default degree bound of tables.
pub const DEFAULT_TABLE_DEGREE: i64 = 6;

/// `γ(X_n^r, X_m^s)` for `n, m` in a degree window and `n + m` in a level
/// window. Only nonzero values are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleTable {
    degrees: (i64, i64),
    levels: (i64, i64),
    dim: usize,
    entries: BTreeMap<(i64, usize, i64, usize), Scalar>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableWindowJson {
    pub degrees: (i64, i64),
    pub levels: (i64, i64),
}

#[derive(Clone, Debug, Serialize)]
pub struct TableEntryJson {
    pub n: i64,
    pub r: usize,
    pub m: i64,
    pub s: usize,
    pub value: Scalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableJson {
    pub window: TableWindowJson,
    pub entries: Vec<TableEntryJson>,
}

/// Lowest and highest level carrying a nonzero value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LevelBounds {
    pub lowest: Option<i64>,
    pub highest: Option<i64>,
    pub window: (i64, i64),
}

impl LevelBounds {
    /// The bounds are interior to the level window and so certify locality
    /// within it; a zero table is trivially bounded.
    pub fn bounded(&self) -> bool {
        match (self.lowest, self.highest) {
            (Some(r), Some(s)) => r > self.window.0 && s < self.window.1,
            _ => true,
        }
    }

    /// `(R, S)`, `None` for a zero table.
    pub fn pair(&self) -> Option<(i64, i64)> {
        self.lowest.zip(self.highest)
    }
}

impl CocycleTable {
    pub fn empty(dim: usize, degrees: (i64, i64), levels: (i64, i64)) -> Self {
        CocycleTable { degrees, levels, dim, entries: BTreeMap::new() }
    }

    /// Evaluates `γ` on every basis pair of the window, in parallel.
    pub fn build(alg: &LaxAlgebra, gamma: &Cocycle, degrees: (i64, i64), levels: (i64, i64)) -> Result<Self> {
        alg.prepare(degrees.0, degrees.1)?;
        let d = alg.dim_g();
        let mut keys = Vec::new();
        for n in degrees.0..=degrees.1 {
            for m in degrees.0..=degrees.1 {
                if n + m < levels.0 || n + m > levels.1 {
                    continue;
                }
                for r in 0..d {
                    for s in 0..d {
                        keys.push((n, r, m, s));
                    }
                }
            }
        }
        let values: Vec<((i64, usize, i64, usize), Scalar)> = keys
            .into_par_iter()
            .map(|(n, r, m, s)| Ok(((n, r, m, s), gamma.on_basis(alg, n, r, m, s)?)))
            .collect::<Result<_>>()?;
        let mut t = Self::empty(d, degrees, levels);
        for (k, v) in values {
            t.set(k.0, k.1, k.2, k.3, v);
        }
        Ok(t)
    }

    /// Same windows, values from a function of the key.
    pub fn from_fn(
        dim: usize,
        degrees: (i64, i64),
        levels: (i64, i64),
        f: impl Fn(i64, usize, i64, usize) -> Result<Scalar> + Sync,
    ) -> Result<Self> {
        let mut keys = Vec::new();
        for n in degrees.0..=degrees.1 {
            for m in degrees.0..=degrees.1 {
                if (levels.0..=levels.1).contains(&(n + m)) {
                    for r in 0..dim {
                        keys.extend((0..dim).map(|s| (n, r, m, s)));
                    }
                }
            }
        }
        let values: Vec<_> =
            keys.into_par_iter().map(|k| Ok((k, f(k.0, k.1, k.2, k.3)?))).collect::<Result<Vec<_>>>()?;
        let mut t = Self::empty(dim, degrees, levels);
        for (k, v) in values {
            t.set(k.0, k.1, k.2, k.3, v);
        }
        Ok(t)
    }

    pub fn degrees(&self) -> (i64, i64) {
        self.degrees
    }

    pub fn levels(&self) -> (i64, i64) {
        self.levels
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn covers(&self, n: i64, m: i64) -> bool {
        let (lo, hi) = self.degrees;
        (lo..=hi).contains(&n) && (lo..=hi).contains(&m) && (self.levels.0..=self.levels.1).contains(&(n + m))
    }

    pub fn set(&mut self, n: i64, r: usize, m: i64, s: usize, v: Scalar) {
        if v.is_zero() {
            self.entries.remove(&(n, r, m, s));
        } else {
            self.entries.insert((n, r, m, s), v);
        }
    }

    pub fn get(&self, n: i64, r: usize, m: i64, s: usize) -> Result<Scalar> {
        if !self.covers(n, m) {
            return Err(Error::WindowExceeded(format!("table has no pair of degrees ({n}, {m})")));
        }
        Ok(self.entries.get(&(n, r, m, s)).cloned().unwrap_or_else(Scalar::zero))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(i64, usize, i64, usize), &Scalar)> {
        self.entries.iter()
    }

    /// Bilinear extension through the degree decompositions.
    pub fn eval(&self, alg: &LaxAlgebra, l: &MatRatFun, l2: &MatRatFun) -> Result<Scalar> {
        let a = alg.decompose_coords(l, self.degrees.1)?;
        let b = alg.decompose_coords(l2, self.degrees.1)?;
        let mut acc = Scalar::zero();
        for (n, c) in &a {
            for (m, d) in &b {
                for (r, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (s, y) in d.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        let v = self.get(*n, r, *m, s)?;
                        if !v.is_zero() {
                            acc += &(&(x * y) * &v);
                        }
                    }
                }
            }
        }
        Ok(acc)
    }

    pub fn level_bounds(&self) -> LevelBounds {
        let levels = self.entries.keys().map(|k| k.0 + k.2);
        LevelBounds { lowest: levels.clone().min(), highest: levels.max(), window: self.levels }
    }

    /// Nonzero entries with `(n, r) ↔ (m, s)` not antisymmetric.
    pub fn antisymmetry_violations(&self) -> Vec<(i64, usize, i64, usize)> {
        let mut out = Vec::new();
        for (&(n, r, m, s), v) in &self.entries {
            let w = self.entries.get(&(m, s, n, r)).cloned().unwrap_or_else(Scalar::zero);
            if &w + v != Scalar::zero() {
                out.push((n, r, m, s));
            }
        }
        out
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.degrees != o.degrees || self.levels != o.levels || self.dim != o.dim {
            return Err(Error::Dimension("tables have different windows".into()));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut t = Self::empty(self.dim, self.degrees, self.levels);
        for (k, v) in &self.entries {
            t.set(k.0, k.1, k.2, k.3, v * c);
        }
        t
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let mut t = self.clone();
        for (k, v) in &o.entries {
            let cur = t.entries.get(k).cloned().unwrap_or_else(Scalar::zero);
            t.set(k.0, k.1, k.2, k.3, cur - v);
        }
        Ok(t)
    }

    /// First key where the tables differ.
    pub fn first_difference(&self, o: &Self) -> Result<Option<(i64, usize, i64, usize)>> {
        Ok(self.sub(o)?.entries.keys().next().copied())
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            window: TableWindowJson { degrees: self.degrees, levels: self.levels },
            entries: self
                .entries
                .iter()
                .map(|(&(n, r, m, s), v)| TableEntryJson { n, r, m, s, value: v.clone() })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::minimal_connection;
    use crate::reference;
    use crate::riemann::{Cycle, Point};

    #[test]
    fn loop_gamma1_lives_at_level_zero() {
        let alg = reference::ref_loop();
        let w = minimal_connection(&alg).unwrap();
        let g = Cocycle::gamma1(&w, Cycle::around_zero());
        let t = CocycleTable::build(&alg, &g, (-3, 3), (-6, 6)).unwrap();
        let b = t.level_bounds();
        assert_eq!(b.pair(), Some((0, 0)));
        assert!(b.bounded());
        assert!(t.antisymmetry_violations().is_empty());
        // H = basis index 2 of sl(2); γ(H z^2, H z^-2) = −2·tr(H²)
        assert_eq!(t.get(2, 2, -2, 2).unwrap(), Scalar::from_int(-4));
        assert!(t.get(4, 0, 0, 0).is_err());
    }

    #[test]
    fn gamma2_vanishes_on_traceless_flavor() {
        let alg = reference::ref_sl2();
        let g = Cocycle::gamma2(Cycle::separating(alg.sphere()));
        assert!(CocycleTable::build(&alg, &g, (-2, 2), (-4, 4)).unwrap().is_empty());
    }

    #[test]
    fn single_weak_point_cycle_gives_zero_table() {
        let alg = reference::ref_gl2();
        let w = minimal_connection(&alg).unwrap();
        let g = Cocycle::gamma1(&w, Cycle::new([Point::Weak(0)]).unwrap());
        assert!(CocycleTable::build(&alg, &g, (-3, 3), (-6, 6)).unwrap().is_empty());
    }

    #[test]
    fn table_evaluation_matches_geometric() {
        let alg = reference::ref_gl2();
        let w = minimal_connection(&alg).unwrap();
        let g = Cocycle::gamma1(&w, Cycle::separating(alg.sphere()));
        let t = CocycleTable::build(&alg, &g, (-3, 3), (-6, 6)).unwrap();
        let a = alg.basis_element(1, 0).unwrap().add(&alg.basis_element(2, 3).unwrap()).unwrap();
        let b = alg.basis_element(-2, 1).unwrap().scale(&Scalar::from_int(3));
        assert_eq!(t.eval(&alg, &a, &b).unwrap(), g.eval(&alg, &a, &b).unwrap());
    }
}
