//! Structure constants of the equivariant cohomology ring, recovered from
//! the restriction table by a triangular solve over the fixed points.

use super::{EqError, RestrictionTable};
use crate::index::StrictPartition;
use crate::poly::Poly;
use std::collections::BTreeMap;

/// The expansion of a product of two classes in the Schubert basis.  Only
/// shapes with a nonzero coefficient are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    w: StrictPartition,
    v: StrictPartition,
    coeffs: BTreeMap<StrictPartition, Poly>,
}

impl StructureConstants {
    /// First factor.
    pub fn left(&self) -> &StrictPartition {
        &self.w
    }

    /// Second factor.
    pub fn right(&self) -> &StrictPartition {
        &self.v
    }

    /// The nonzero coefficients, keyed by shape.
    pub fn coeffs(&self) -> &BTreeMap<StrictPartition, Poly> {
        &self.coeffs
    }

    /// Coefficient of one shape (zero if absent).
    pub fn get(&self, u: &StrictPartition) -> Poly {
        self.coeffs.get(u).cloned().unwrap_or_else(Poly::zero)
    }
}

/// Expand the product of the classes of `w` and `v` in the Schubert basis
/// by solving, shape by shape in enumeration order, the restriction of the
/// product at each fixed point.  Shapes that cannot support a coefficient
/// (those not containing both factors) instead yield equations that the
/// already-solved coefficients must satisfy; any residue is an error.
pub fn structure_constants(
    w: &StrictPartition,
    v: &StrictPartition,
    table: &RestrictionTable,
) -> Result<StructureConstants, EqError> {
    let shapes = table.shapes();
    let wi = table
        .position(w)
        .ok_or_else(|| EqError::BadInput(format!("{w} is not a shape of the table")))?;
    let vi = table
        .position(v)
        .ok_or_else(|| EqError::BadInput(format!("{v} is not a shape of the table")))?;
    let bound = w.size() + v.size();

    let mut solved: Vec<(usize, Poly)> = Vec::new();
    let mut coeffs = BTreeMap::new();
    for (ui, u) in shapes.iter().enumerate() {
        let mut rhs = table.entry_by_index(wi, ui) * table.entry_by_index(vi, ui);
        for (si, c) in &solved {
            let restricted = table.entry_by_index(*si, ui);
            if !restricted.is_zero() {
                rhs -= &(c * restricted);
            }
        }
        let candidate = u.size() <= bound && w.is_contained_in(u) && v.is_contained_in(u);
        if candidate {
            let c = rhs.exact_div(table.entry_by_index(ui, ui))?;
            if !c.is_zero() {
                solved.push((ui, c.clone()));
                coeffs.insert(u.clone(), c);
            }
        } else if !rhs.is_zero() {
            return Err(EqError::ResidualViolated(format!(
                "product of {w} and {v} leaves residue {rhs} at fixed point {u}"
            )));
        }
    }
    Ok(StructureConstants {
        w: w.clone(),
        v: v.clone(),
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::divisor_restriction;
    use crate::poly::{Poly, VarId};
    use num_bigint::BigInt;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn square_of_divisor_at_order_two() {
        let table = RestrictionTable::build(2).unwrap();
        let sc = structure_constants(&sp(&[1]), &sp(&[1]), &table).unwrap();
        let mut expected = BTreeMap::new();
        expected.insert(sp(&[1]), Poly::x(2).scale(&BigInt::from(2)));
        expected.insert(sp(&[2]), Poly::int(2));
        assert_eq!(sc.coeffs(), &expected);
    }

    #[test]
    fn divisor_row_is_the_recurrence_data() {
        // Multiplying by the divisor class must reproduce exactly the
        // cover multiplicities and the divisor restriction itself.
        for n in 1..=3u32 {
            let table = RestrictionTable::build(n).unwrap();
            let one = sp(&[1]);
            for lam in table.shapes() {
                let sc = structure_constants(&one, lam, &table).unwrap();
                let mut expected = BTreeMap::new();
                let self_coeff = divisor_restriction(lam, n).unwrap();
                if !self_coeff.is_zero() {
                    expected.insert(lam.clone(), self_coeff);
                }
                for cover in lam.covers_in_staircase(n) {
                    expected.insert(cover.partition, Poly::int(i64::from(cover.chevalley)));
                }
                assert_eq!(sc.coeffs(), &expected, "divisor times {lam} at n = {n}");
            }
        }
    }

    #[test]
    fn product_is_commutative_and_graded() {
        let table = RestrictionTable::build(3).unwrap();
        let pairs = [
            (sp(&[2]), sp(&[1])),
            (sp(&[2, 1]), sp(&[2])),
            (sp(&[3, 1]), sp(&[2, 1])),
        ];
        for (w, v) in pairs {
            let wv = structure_constants(&w, &v, &table).unwrap();
            let vw = structure_constants(&v, &w, &table).unwrap();
            assert_eq!(wv.coeffs(), vw.coeffs());
            for (u, c) in wv.coeffs() {
                let expected = w.size() + v.size() - u.size();
                assert!(
                    c.is_homogeneous_of(expected),
                    "coefficient of {u} in {w} * {v} not homogeneous of degree {expected}: {c}"
                );
                assert!(w.is_contained_in(u) && v.is_contained_in(u));
            }
        }
    }

    #[test]
    fn classical_limit_of_top_products() {
        // Sending every x to zero recovers non-equivariant products: only
        // the degree-zero constants survive.  At n = 2:
        // class(2) * class(1) = class(2,1) and class(1)^2 = 2 class(2).
        let table = RestrictionTable::build(2).unwrap();
        let zeroed = |sc: &StructureConstants| -> BTreeMap<StrictPartition, Poly> {
            let kill: BTreeMap<_, _> = (1..=2).map(|i| (VarId::x(i), Poly::zero())).collect();
            sc.coeffs()
                .iter()
                .map(|(u, c)| (u.clone(), c.substitute(&kill)))
                .filter(|(_, c)| !c.is_zero())
                .collect()
        };

        let sc = structure_constants(&sp(&[2]), &sp(&[1]), &table).unwrap();
        let mut expected = BTreeMap::new();
        expected.insert(sp(&[2, 1]), Poly::one());
        assert_eq!(zeroed(&sc), expected);

        let sc = structure_constants(&sp(&[1]), &sp(&[1]), &table).unwrap();
        let mut expected = BTreeMap::new();
        expected.insert(sp(&[2]), Poly::int(2));
        assert_eq!(zeroed(&sc), expected);
    }
}
