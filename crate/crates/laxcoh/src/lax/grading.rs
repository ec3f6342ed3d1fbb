//! Almost-grading probes: bracket closure, degree bands and the leading law.

use rayon::prelude::*;
use serde::Serialize;

use super::algebra::LaxAlgebra;
use crate::error::{Error, Result};

/// Outcome of probing `[ḡ_m, ḡ_k]` for `lo ≤ m, k ≤ hi`.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GradingReport {
    pub probe: (i64, i64),
    pub pairs: usize,
    /// Smallest `M` with every bracket inside degrees `m+k ..= m+k+M`.
    pub m_const: i64,
    /// Pairs whose bracket has a component below degree `m + k`.
    pub below_band: Vec<(i64, usize, i64, usize)>,
    /// Pairs whose degree-`(m+k)` component is not `([X, Y])_{m+k}`.
    pub leading_failures: Vec<(i64, usize, i64, usize)>,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.below_band.is_empty() && self.leading_failures.is_empty()
    }
}

/// Decomposes every bracket of basis pairs in the probe window.
///
/// Each bracket is re-certified, so a closure failure surfaces as an error.
pub fn probe_grading(alg: &LaxAlgebra, lo: i64, hi: i64) -> Result<GradingReport> {
    let d = alg.dim_g();
    alg.prepare(lo, hi)?;
    let consts = alg.flavor().structure_constants();
    let jobs: Vec<(i64, usize, i64, usize)> = (lo..=hi)
        .flat_map(|m| (0..d).flat_map(move |r| (lo..=hi).flat_map(move |k| (0..d).map(move |s| (m, r, k, s)))))
        .filter(|&(m, r, k, s)| (m, r) < (k, s))
        .collect();
    let results: Vec<Result<(i64, bool, bool)>> = jobs
        .par_iter()
        .map(|&(m, r, k, s)| {
            let x = alg.certify(&alg.basis_element(m, r)?)?;
            let y = alg.certify(&alg.basis_element(k, s)?)?;
            let br = alg.bracket(&x, &y)?;
            let parts = alg.decompose_coords(&br.value, 4 * (hi.abs() + lo.abs()) + 8)?;
            let base = m + k;
            let below = parts.keys().any(|&h| h < base);
            let top = parts.keys().next_back().map_or(0, |&h| (h - base).max(0));
            let expected = &consts[r][s];
            let lead_ok = match parts.get(&base) {
                Some(c) => c == expected,
                None => expected.iter().all(|x| x.is_zero()),
            };
            Ok((top, below, lead_ok))
        })
        .collect();
    let mut report = GradingReport {
        probe: (lo, hi),
        pairs: jobs.len(),
        m_const: 0,
        below_band: Vec::new(),
        leading_failures: Vec::new(),
    };
    for (job, res) in jobs.iter().zip(results) {
        let (top, below, lead_ok) = res?;
        report.m_const = report.m_const.max(top);
        if below {
            report.below_band.push(*job);
        }
        if !lead_ok {
            report.leading_failures.push(*job);
        }
    }
    Ok(report)
}

/// The almost-grading constant `M` measured on the probe window.
pub fn grading_constants(alg: &LaxAlgebra, lo: i64, hi: i64) -> Result<i64> {
    let r = probe_grading(alg, lo, hi)?;
    if !r.passed() {
        return Err(Error::Internal(format!(
            "grading law fails on {} pairs",
            r.below_band.len() + r.leading_failures.len()
        )));
    }
    Ok(r.m_const)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    #[test]
    fn loop_and_scalar_are_graded() {
        assert_eq!(grading_constants(&reference::ref_loop(), -2, 2).unwrap(), 0);
        assert_eq!(grading_constants(&reference::ref_s(2), -2, 2).unwrap(), 0);
    }

    #[test]
    fn gl2_band() {
        let r = probe_grading(&reference::ref_gl2(), -1, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.m_const, 0);
    }
}
