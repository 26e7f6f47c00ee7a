//! The upward divisor recurrence: at a fixed point mu, the restriction of
//! a class is determined by the restrictions of its covers, divided by the
//! difference of divisor restrictions.  Two consumers:
//!
//! * a rational-point solver that rebuilds one column of the table from
//!   the recurrence alone (the oracle used against the closed pipeline);
//! * a fully symbolic reconstruction of the whole table seeded by the
//!   diagonal closed form, with every division exact.

use super::{diagonal_product, divisor_restriction, divisor_value, EqError, RestrictionTable};
use crate::index::{enumerate, StrictPartition};
use crate::poly::{Poly, Rat};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Solve one column numerically.  The diagonal value is treated as an
/// unknown scale; propagating downward makes every entry a multiple of it,
/// and the empty shape (restriction 1) fixes the scale.  Returns the
/// column in enumeration order.  Points that annihilate a divisor
/// difference or the normalizing value are rejected as degenerate.
pub fn recurrence_solve(
    mu: &StrictPartition,
    point: &[Rat],
    n: u32,
) -> Result<Vec<(StrictPartition, Rat)>, EqError> {
    if !mu.fits_staircase(n) {
        return Err(EqError::BadInput(format!(
            "{mu} is not a staircase shape at order {n}"
        )));
    }
    if point.len() != n as usize {
        return Err(EqError::BadInput(format!(
            "expected {n} coordinates, got {}",
            point.len()
        )));
    }
    let shapes = enumerate(n);
    let pos: BTreeMap<&StrictPartition, usize> =
        shapes.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let div_at: Vec<Rat> = shapes.iter().map(|s| divisor_value(s, n, point)).collect();
    let d_mu = divisor_value(mu, n, point);

    // scale[i] = entry for shapes[i] as a multiple of the unknown diagonal.
    let mut scale: Vec<Rat> = vec![Rat::zero(); shapes.len()];
    for (i, lam) in shapes.iter().enumerate().rev() {
        if lam == mu {
            scale[i] = Rat::from_integer(1.into());
            continue;
        }
        let mut num = Rat::zero();
        for cover in lam.covers_in_staircase(n) {
            let ci = pos[&cover.partition];
            if !scale[ci].is_zero() {
                num += &scale[ci] * Rat::from_integer(cover.chevalley.into());
            }
        }
        if num.is_zero() {
            continue;
        }
        let d = &d_mu - &div_at[i];
        if d.is_zero() {
            return Err(EqError::DegeneratePoint(format!(
                "divisor difference of {lam} and {mu} vanishes"
            )));
        }
        scale[i] = num / d;
    }
    // shapes[0] is the empty shape, whose restriction is 1.
    let q0 = scale[0].clone();
    if q0.is_zero() {
        return Err(EqError::DegeneratePoint(
            "normalizing entry vanished".into(),
        ));
    }
    Ok(shapes
        .into_iter()
        .zip(scale)
        .map(|(s, v)| (s, v / &q0))
        .collect())
}

/// Rebuild the full table symbolically from the diagonal closed form and
/// the recurrence, top down, dividing exactly at every step.  Independent
/// of the restriction pipeline.
pub fn table_from_recurrence(n: u32) -> Result<RestrictionTable, EqError> {
    let shapes = enumerate(n);
    let pos: BTreeMap<&StrictPartition, usize> =
        shapes.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let divisors: Vec<Poly> = shapes
        .iter()
        .map(|s| divisor_restriction(s, n))
        .collect::<Result<_, _>>()?;
    let mut entries: Vec<Vec<Poly>> = vec![vec![Poly::zero(); shapes.len()]; shapes.len()];
    for (li, lam) in shapes.iter().enumerate().rev() {
        let covers = lam.covers_in_staircase(n);
        for (mi, _mu) in shapes.iter().enumerate() {
            if li == mi {
                entries[li][mi] = diagonal_product(lam, n)?;
                continue;
            }
            let mut num = Poly::zero();
            for cover in &covers {
                let ci = pos[&cover.partition];
                if !entries[ci][mi].is_zero() {
                    num += &entries[ci][mi].scale(&BigInt::from(cover.chevalley));
                }
            }
            if num.is_zero() {
                continue;
            }
            let d = &divisors[mi] - &divisors[li];
            entries[li][mi] = num.exact_div(&d)?;
        }
    }
    Ok(RestrictionTable::from_entries(n, shapes, entries))
}
