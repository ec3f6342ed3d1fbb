//! Materialized homogeneous bases over a degree window.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::algebra::{LaxAlgebra, LaxElement};
use crate::error::{Error, Result};
use crate::riemann::MatRatFunJson;

#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub algebra: Arc<LaxAlgebra>,
    pub window: (i64, i64),
    pub elements: BTreeMap<i64, Vec<LaxElement>>,
}

/// One exported basis element.
#[derive(Serialize)]
pub struct BasisEntryJson {
    pub degree: i64,
    pub leading_index: usize,
    pub leading_label: String,
    pub matratfun: MatRatFunJson,
    pub certificate: super::membership::ConstraintCertificate,
}

impl GradedBasis {
    /// Builds and certifies `X_m^r` for `m_min ≤ m ≤ m_max`.
    pub fn build(algebra: &Arc<LaxAlgebra>, m_min: i64, m_max: i64) -> Result<Self> {
        if m_min > m_max {
            return Err(Error::Invalid(format!("empty degree window [{m_min}, {m_max}]")));
        }
        algebra.prepare(m_min, m_max)?;
        let mut elements = BTreeMap::new();
        for m in m_min..=m_max {
            let space = algebra.space(m)?;
            let els = space.elements.iter().map(|x| algebra.certify(x)).collect::<Result<Vec<_>>>()?;
            elements.insert(m, els);
        }
        Ok(GradedBasis { algebra: algebra.clone(), window: (m_min, m_max), elements })
    }

    pub fn get(&self, m: i64, r: usize) -> Result<&LaxElement> {
        self.elements.get(&m).and_then(|v| v.get(r)).ok_or_else(|| {
            Error::WindowExceeded(format!("basis element ({m}, {r}) outside [{}, {}]", self.window.0, self.window.1))
        })
    }

    pub fn len(&self) -> usize {
        self.elements.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_json(&self) -> Vec<BasisEntryJson> {
        let labels = self.algebra.flavor().labels();
        self.elements
            .iter()
            .flat_map(|(&m, v)| {
                v.iter().enumerate().map(move |(r, x)| BasisEntryJson {
                    degree: m,
                    leading_index: r,
                    leading_label: labels[r].clone(),
                    matratfun: x.value.to_json(),
                    certificate: x.certificate.clone(),
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;
    use crate::riemann::Point;

    #[test]
    fn window_counts_and_orders() {
        let alg = reference::ref_gl2();
        let b = GradedBasis::build(&alg, -2, 2).unwrap();
        assert_eq!(b.len(), 4 * 5);
        for (&m, els) in &b.elements {
            for (r, x) in els.iter().enumerate() {
                let (o, lead) = x.value.leading(Point::Zero).unwrap();
                assert_eq!(o, m);
                assert_eq!(lead, alg.flavor().basis()[r]);
                assert!(x.value.ord_at(Point::Infinity).unwrap() >= -m);
            }
        }
        assert!(b.get(3, 0).is_err());
        assert_eq!(b.to_json().len(), 20);
    }
}
