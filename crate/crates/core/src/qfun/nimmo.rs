//! Rational-point evaluation of factorial Q through the bordered Pfaffian
//! closed form: the (x_i - x_j)/(x_i + x_j) block bordered by falling
//! products, divided by the same product over the plain variables.
//!
//! This route never touches the one-row/two-row pipeline, which is exactly
//! what makes it a useful cross-check oracle for `factorial_q`.

use super::{pfaffian::SkewMatrix, QError};
use crate::poly::Rat;
use num_bigint::BigInt;
use num_traits::Zero;

/// Evaluate Q_lambda(x | a) at a rational point.  `xpt` carries x_1..x_n;
/// `apt` carries a_2, a_3, ... (a_1 is 0).  The point must keep every
/// denominator alive: coordinates nonzero, pairwise distinct, no pair
/// summing to zero.
pub fn nimmo_eval(parts: &[u32], xpt: &[Rat], apt: &[Rat]) -> Result<Rat, QError> {
    if parts.contains(&0) || !parts.windows(2).all(|w| w[0] > w[1]) {
        return Err(QError::InvalidShape(format!(
            "parts {parts:?} are not strictly decreasing and positive"
        )));
    }
    let n = xpt.len();
    let k = parts.len();
    if k > n {
        return Err(QError::InvalidShape(format!(
            "{k} parts need at least {k} variables, got {n}"
        )));
    }
    if let Some(&top) = parts.first() {
        if (apt.len() as u32) + 1 < top {
            return Err(QError::IndexOutOfRange(format!(
                "need parameters a_2..a_{top}, got {} values",
                apt.len()
            )));
        }
    }
    for (i, xi) in xpt.iter().enumerate() {
        if xi.is_zero() {
            return Err(QError::DegeneratePoint(format!("x_{} = 0", i + 1)));
        }
        for xj in &xpt[i + 1..] {
            if xi == xj {
                return Err(QError::DegeneratePoint("equal coordinates".into()));
            }
            if (xi + xj).is_zero() {
                return Err(QError::DegeneratePoint("coordinates sum to zero".into()));
            }
        }
    }

    // Pad with one zero variable when the bordered matrix would be odd.
    let mut xs: Vec<Rat> = xpt.to_vec();
    if (n + k) % 2 == 1 {
        xs.push(Rat::zero());
    }
    let rows = xs.len();
    let size = rows + k;

    let a_val = |i: u32| -> Rat {
        if i <= 1 {
            Rat::zero()
        } else {
            apt[(i - 2) as usize].clone()
        }
    };
    let falling = |x: &Rat, m: u32| -> Rat {
        let mut acc = Rat::from_integer(1.into());
        for i in 1..=m {
            acc *= x - a_val(i);
        }
        acc
    };

    let m = SkewMatrix::from_upper(size, |i, j| {
        if j < rows {
            (&xs[i] - &xs[j]) / (&xs[i] + &xs[j])
        } else if i < rows {
            // Column c carries the (k - c)-th part: parts increase
            // left to right across the border.
            let part = parts[k - 1 - (j - rows)];
            falling(&xs[i], part)
        } else {
            Rat::zero()
        }
    });
    let pf = m.pfaffian()?;

    let mut dn = Rat::from_integer(1.into());
    for i in 0..n {
        for j in (i + 1)..n {
            dn *= (&xpt[i] - &xpt[j]) / (&xpt[i] + &xpt[j]);
        }
    }
    let p = pf / dn;
    Ok(p * Rat::from_integer(BigInt::from(2).pow(k as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarId;
    use crate::qfun::{factorial_q, QContext};
    use std::collections::BTreeMap;

    fn rat(p: i64, q: i64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    #[test]
    fn single_box_doubles_the_variable() {
        let v = nimmo_eval(&[1], &[rat(5, 7)], &[]).unwrap();
        assert_eq!(v, rat(10, 7));
    }

    #[test]
    fn empty_shape_evaluates_to_one() {
        for xs in [
            vec![rat(2, 1)],
            vec![rat(2, 1), rat(3, 1)],
            vec![rat(1, 2), rat(5, 3), rat(7, 1)],
        ] {
            assert_eq!(nimmo_eval(&[], &xs, &[]).unwrap(), rat(1, 1));
        }
    }

    #[test]
    fn degenerate_points_are_rejected() {
        let a = [rat(1, 3)];
        assert!(matches!(
            nimmo_eval(&[1], &[rat(0, 1)], &a),
            Err(QError::DegeneratePoint(_))
        ));
        assert!(matches!(
            nimmo_eval(&[1], &[rat(2, 1), rat(2, 1)], &a),
            Err(QError::DegeneratePoint(_))
        ));
        assert!(matches!(
            nimmo_eval(&[1], &[rat(2, 1), rat(-2, 1)], &a),
            Err(QError::DegeneratePoint(_))
        ));
    }

    #[test]
    fn shape_and_parameter_errors() {
        assert!(matches!(
            nimmo_eval(&[2, 2], &[rat(1, 1), rat(2, 1)], &[rat(1, 1)]),
            Err(QError::InvalidShape(_))
        ));
        assert!(matches!(
            nimmo_eval(&[2, 1, 1], &[rat(1, 1), rat(2, 1)], &[rat(1, 1)]),
            Err(QError::InvalidShape(_))
        ));
        assert!(matches!(
            nimmo_eval(&[3], &[rat(1, 1), rat(2, 1), rat(4, 1)], &[rat(1, 1)]),
            Err(QError::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn agrees_with_pipeline_at_fixed_points() {
        // Frozen cross-check points; the full randomized comparison lives
        // in the acceptance suite.
        let shapes: [&[u32]; 4] = [&[1], &[2], &[2, 1], &[3, 1]];
        let xs = [rat(3, 1), rat(5, 2), rat(7, 3)];
        let aa = [rat(1, 2), rat(-2, 3), rat(4, 5), rat(11, 7)];
        let n = xs.len() as u32;
        let mut point: BTreeMap<VarId, Rat> = BTreeMap::new();
        for (i, x) in xs.iter().enumerate() {
            point.insert(VarId::x(i as u32 + 1), x.clone());
        }
        for (j, a) in aa.iter().enumerate() {
            point.insert(VarId::a(j as u32 + 2), a.clone());
        }
        let ctx = QContext::new(n);
        for parts in shapes {
            let sym = factorial_q(parts, &ctx).unwrap();
            let via_poly = sym.eval(&point);
            let via_pf = nimmo_eval(parts, &xs, &aa).unwrap();
            assert_eq!(via_poly, via_pf, "shape {parts:?}");
        }
    }
}
