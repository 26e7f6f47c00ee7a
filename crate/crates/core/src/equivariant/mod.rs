//! Restrictions of equivariant Schubert classes to the 2^n torus fixed
//! points, their closed forms, and derived data: the full restriction
//! table, structure constants, and positivity coordinates.
//!
//! The restriction of the class indexed by lambda to the fixed point
//! indexed by mu is the factorial Q of lambda evaluated on the masked
//! variables of mu with the parameters sent into the torus characters.

mod recurrence;
mod structure;

pub use recurrence::{recurrence_solve, table_from_recurrence};
pub use structure::{structure_constants, StructureConstants};

use crate::index::{enumerate, strict_to_mask, strict_to_perm, IndexError, StrictPartition};
use crate::poly::{Poly, PolyError, Rat, VarId, VarKind};
use crate::qfun::{Alphabet, QError, QTables, SkewMatrix};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EqError {
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error(transparent)]
    Q(#[from] QError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("degenerate evaluation point: {0}")]
    DegeneratePoint(String),
    #[error("fixed-point equation violated at {0}")]
    ResidualViolated(String),
    #[error("{0}")]
    BadInput(String),
}

/// The fixed-point specialization: first send the masked x variables to
/// zero, then the parameters a_j into the torus characters x_{n+2-j}
/// (2 <= j <= n+1; zero beyond).  The two stages commute with assembling
/// the Q pipeline because substitution is a ring map.
pub struct Specialization {
    n: u32,
    bits: Vec<bool>,
}

impl Specialization {
    pub fn at_fixed_point(mu: &StrictPartition, n: u32) -> Result<Self, IndexError> {
        let mask = strict_to_mask(mu, n)?;
        Ok(Specialization {
            n,
            bits: mask.bits().to_vec(),
        })
    }

    /// The x stage: x_i -> 0 exactly where the mask is unset.
    pub fn x_map(&self) -> BTreeMap<VarId, Poly> {
        let mut map = BTreeMap::new();
        for (i, &keep) in self.bits.iter().enumerate() {
            if !keep {
                map.insert(VarId::x(i as u32 + 1), Poly::zero());
            }
        }
        map
    }

    /// The parameter stage for every a variable occurring in `p`.
    pub fn a_map_for(&self, p: &Poly) -> BTreeMap<VarId, Poly> {
        let mut map = BTreeMap::new();
        for v in p.vars() {
            if v.kind() == VarKind::A {
                let j = v.index();
                let img = if j <= self.n + 1 {
                    Poly::x(self.n + 2 - j)
                } else {
                    Poly::zero()
                };
                map.insert(v, img);
            }
        }
        map
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let staged = p.substitute(&self.x_map());
        let amap = self.a_map_for(&staged);
        staged.substitute(&amap)
    }
}

/// Substitution map of the fixed point mu: kills the x variables whose
/// mask bit is unset, leaves the others alone.
pub fn x_mu(mu: &StrictPartition, n: u32) -> Result<BTreeMap<VarId, Poly>, IndexError> {
    Ok(Specialization::at_fixed_point(mu, n)?.x_map())
}

/// Pipeline alphabet of the fixed point mu: masked x images plus the
/// torus parameter images.
pub fn restriction_alphabet(mu: &StrictPartition, n: u32) -> Result<Alphabet, IndexError> {
    let mask = strict_to_mask(mu, n)?;
    let xs: Vec<Poly> = (1..=n)
        .map(|i| {
            if mask.bit(i as usize) {
                Poly::x(i)
            } else {
                Poly::zero()
            }
        })
        .collect();
    Ok(Alphabet::torus(xs))
}

/// Restriction of the class of lambda to the fixed point of mu.
pub fn restrict(lambda: &StrictPartition, mu: &StrictPartition, n: u32) -> Result<Poly, EqError> {
    if !lambda.fits_staircase(n) {
        return Err(EqError::BadInput(format!(
            "{lambda} is not a staircase shape at order {n}"
        )));
    }
    let mut tables = QTables::new(restriction_alphabet(mu, n)?);
    Ok(tables.q(lambda.parts())?)
}

/// Restriction of the divisor class: twice the sum of the surviving
/// torus characters.
pub fn divisor_restriction(mu: &StrictPartition, n: u32) -> Result<Poly, EqError> {
    let mask = strict_to_mask(mu, n)?;
    let mut out = Poly::zero();
    for i in 1..=n {
        if mask.bit(i as usize) {
            out += &Poly::x(i);
        }
    }
    Ok(out.scale(&BigInt::from(2)))
}

/// Closed form for the restriction of a class to its own fixed point:
/// the product over the shifted boxes (i, j) of (x-hat(w(i)) + x-hat(w(j)))
/// where x-hat negates barred letters.
pub fn diagonal_product(lambda: &StrictPartition, n: u32) -> Result<Poly, EqError> {
    let w = strict_to_perm(lambda, n)?;
    let xhat = |m: u32| -> Poly {
        if m <= n {
            Poly::x(m)
        } else {
            -&Poly::x(2 * n + 1 - m)
        }
    };
    let boxes = crate::index::shifted_boxes(lambda, n)?;
    let mut out = Poly::one();
    for (i, j) in boxes {
        let factor = &xhat(w.image(i as usize)) + &xhat(w.image(j as usize));
        out = &out * &factor;
    }
    Ok(out)
}

/// All restrictions at a given order: rows indexed by the class, columns
/// by the fixed point, both in enumeration order.
pub struct RestrictionTable {
    n: u32,
    shapes: Vec<StrictPartition>,
    pos: BTreeMap<StrictPartition, usize>,
    entries: Vec<Vec<Poly>>,
}

impl RestrictionTable {
    /// Build every entry through the restriction pipeline; columns run in
    /// parallel, each reusing one memo table for its fixed point.
    pub fn build(n: u32) -> Result<Self, EqError> {
        let shapes = enumerate(n);
        let columns: Vec<Vec<Poly>> = shapes
            .par_iter()
            .map(|mu| {
                let mut tables =
                    QTables::new(restriction_alphabet(mu, n).expect("staircase shape"));
                shapes
                    .iter()
                    .map(|lam| tables.q(lam.parts()).expect("strict shape"))
                    .collect()
            })
            .collect();
        let entries = (0..shapes.len())
            .map(|li| {
                (0..shapes.len())
                    .map(|mi| columns[mi][li].clone())
                    .collect()
            })
            .collect();
        Ok(Self::from_entries(n, shapes, entries))
    }

    pub fn from_entries(n: u32, shapes: Vec<StrictPartition>, entries: Vec<Vec<Poly>>) -> Self {
        let pos = shapes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        RestrictionTable {
            n,
            shapes,
            pos,
            entries,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn shapes(&self) -> &[StrictPartition] {
        &self.shapes
    }

    pub fn position(&self, shape: &StrictPartition) -> Option<usize> {
        self.pos.get(shape).copied()
    }

    pub fn entry_by_index(&self, lam: usize, mu: usize) -> &Poly {
        &self.entries[lam][mu]
    }

    pub fn entry(&self, lambda: &StrictPartition, mu: &StrictPartition) -> &Poly {
        let li = self.pos[lambda];
        let mi = self.pos[mu];
        &self.entries[li][mi]
    }

    /// Row of restrictions of one class at every fixed point.
    pub fn row(&self, lambda: &StrictPartition) -> &[Poly] {
        &self.entries[self.pos[lambda]]
    }
}

/// Pfaffian reconstruction of a restriction row from one- and two-row
/// rows: true when it reproduces the stored row at every fixed point.
pub fn giambelli_check(
    lambda: &StrictPartition,
    table: &RestrictionTable,
) -> Result<bool, EqError> {
    let mut padded: Vec<u32> = lambda.parts().to_vec();
    if padded.len() % 2 == 1 {
        padded.push(0);
    }
    let shape_of = |r: u32, s: u32| -> StrictPartition {
        if s == 0 {
            if r == 0 {
                StrictPartition::empty()
            } else {
                StrictPartition::new(vec![r]).expect("one row")
            }
        } else {
            StrictPartition::new(vec![r, s]).expect("two rows")
        }
    };
    for mu in table.shapes() {
        let m = SkewMatrix::from_upper(padded.len(), |i, j| {
            table.entry(&shape_of(padded[i], padded[j]), mu).clone()
        });
        let pf = m.pfaffian()?;
        if &pf != table.entry(lambda, mu) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coordinates of a polynomial in x_1..x_n over the simple-root basis
/// beta_i = x_i - x_{i+1} (i < n), beta_n = 2 x_n.  Exponent vectors are
/// dense; coefficients are dyadic rationals.
pub struct BetaExpansion {
    n: u32,
    coeffs: BTreeMap<Vec<u32>, Rat>,
}

impl BetaExpansion {
    pub fn coeffs(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.coeffs
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The positivity test: every coordinate a nonnegative integer.
    pub fn all_nonneg_integers(&self) -> bool {
        self.coeffs
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

/// Expand over the simple-root basis.  Only x variables up to x_n may
/// occur.  Internally 2 x_i is an integer combination of the betas, so a
/// degree-d term is computed integrally and rescaled by 2^d at the end.
pub fn beta_expand(p: &Poly, n: u32) -> Result<BetaExpansion, EqError> {
    for v in p.vars() {
        if v.kind() != VarKind::X || v.index() > n {
            return Err(EqError::BadInput(format!(
                "beta expansion over order {n} cannot handle {v}"
            )));
        }
    }
    // v_i := 2 x_i written in betas (with x_t standing for beta_t here):
    // 2 beta_i + ... + 2 beta_{n-1} + beta_n.
    let doubled: Vec<Poly> = (1..=n)
        .map(|i| {
            let mut acc = Poly::zero();
            for t in i..n {
                acc += &Poly::x(t).scale(&BigInt::from(2));
            }
            acc += &Poly::x(n);
            acc
        })
        .collect();
    let max_deg = p.total_degree().unwrap_or(0);
    let two = BigInt::from(2);
    let mut scaled = Poly::zero();
    for (m, c) in p.terms() {
        let d = m.degree();
        let mut term = Poly::constant(c * two.pow(max_deg - d));
        for (v, e) in m.vars() {
            term = &term * &doubled[v.index() as usize - 1].pow(e);
        }
        scaled += &term;
    }
    let denom = BigInt::from(2).pow(max_deg);
    let mut coeffs = BTreeMap::new();
    for (m, c) in scaled.terms() {
        let mut exps = vec![0u32; n as usize];
        for (v, e) in m.vars() {
            exps[v.index() as usize - 1] = e;
        }
        coeffs.insert(exps, Rat::new(c.clone(), denom.clone()));
    }
    Ok(BetaExpansion { n, coeffs })
}

/// Evaluate a restriction-table row at a rational point of x_1..x_n.
pub fn eval_row_at(table: &RestrictionTable, lambda: &StrictPartition, point: &[Rat]) -> Vec<Rat> {
    let pt = point_map(point);
    table.row(lambda).iter().map(|p| p.eval(&pt)).collect()
}

pub(crate) fn point_map(point: &[Rat]) -> BTreeMap<VarId, Rat> {
    point
        .iter()
        .enumerate()
        .map(|(i, v)| (VarId::x(i as u32 + 1), v.clone()))
        .collect()
}

pub(crate) fn divisor_value(mu: &StrictPartition, n: u32, point: &[Rat]) -> Rat {
    let mask = strict_to_mask(mu, n).expect("staircase shape");
    let mut acc = Rat::zero();
    for i in 1..=n as usize {
        if mask.bit(i) {
            acc += &point[i - 1] + &point[i - 1];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn restriction_examples_order_two() {
        // Vanishing below the support.
        assert!(restrict(&sp(&[2]), &sp(&[1]), 2).unwrap().is_zero());
        // One step up: 2 x1 (x1 + x2).
        let r = restrict(&sp(&[2]), &sp(&[2, 1]), 2).unwrap();
        let expected = (&Poly::x(1) * &(&Poly::x(1) + &Poly::x(2))).scale(&2.into());
        assert_eq!(r, expected);
        // Diagonal: 4 x1 x2 (x1 + x2).
        let r = restrict(&sp(&[2, 1]), &sp(&[2, 1]), 2).unwrap();
        let expected =
            (&(&Poly::x(1) * &Poly::x(2)) * &(&Poly::x(1) + &Poly::x(2))).scale(&4.into());
        assert_eq!(r, expected);
        // The identity class restricts to 1 everywhere.
        assert_eq!(restrict(&sp(&[]), &sp(&[2]), 2).unwrap(), Poly::one());
    }

    #[test]
    fn divisor_closed_form() {
        // mask of (2) at n = 2 keeps x1 only.
        assert_eq!(
            divisor_restriction(&sp(&[2]), 2).unwrap(),
            Poly::x(1).scale(&2.into())
        );
        assert_eq!(
            divisor_restriction(&sp(&[2, 1]), 2).unwrap(),
            (&Poly::x(1) + &Poly::x(2)).scale(&2.into())
        );
        assert!(divisor_restriction(&sp(&[]), 2).unwrap().is_zero());
    }

    #[test]
    fn divisor_equals_single_box_restriction() {
        for n in 1..=3u32 {
            for mu in enumerate(n) {
                assert_eq!(
                    restrict(&sp(&[1]), &mu, n).unwrap(),
                    divisor_restriction(&mu, n).unwrap(),
                    "mu = {mu} at n = {n}"
                );
            }
        }
    }

    #[test]
    fn diagonal_closed_form_small() {
        for n in 1..=3u32 {
            for lam in enumerate(n) {
                assert_eq!(
                    restrict(&lam, &lam, n).unwrap(),
                    diagonal_product(&lam, n).unwrap(),
                    "lambda = {lam} at n = {n}"
                );
            }
        }
    }

    #[test]
    fn diagonal_product_scale_example() {
        // lambda = (5,3) at n = 5, representative (1, 3, 4-bar, 5-bar, 2-bar):
        // 2x1 (x1+x3)(x1-x5)(x1-x4)(x1-x2) * 2x3 (x3-x5)(x3-x4).
        let x = Poly::x;
        let factors = [
            x(1).scale(&2.into()),
            &x(1) + &x(3),
            &x(1) - &x(5),
            &x(1) - &x(4),
            &x(1) - &x(2),
            x(3).scale(&2.into()),
            &x(3) - &x(5),
            &x(3) - &x(4),
        ];
        let mut expected = Poly::one();
        for f in &factors {
            expected = &expected * f;
        }
        assert_eq!(diagonal_product(&sp(&[5, 3]), 5).unwrap(), expected);
    }

    #[test]
    fn specialization_stages_match_pipeline() {
        let n = 3u32;
        let lam = sp(&[3, 1]);
        let generic =
            crate::qfun::factorial_q(lam.parts(), &crate::qfun::QContext::new(n)).unwrap();
        for mu in enumerate(n) {
            let spec = Specialization::at_fixed_point(&mu, n).unwrap();
            assert_eq!(
                spec.apply(&generic),
                restrict(&lam, &mu, n).unwrap(),
                "mu = {mu}"
            );
        }
    }

    #[test]
    fn table_entries_match_single_restrictions() {
        let n = 3u32;
        let table = RestrictionTable::build(n).unwrap();
        for lam in table.shapes() {
            for mu in table.shapes() {
                assert_eq!(
                    table.entry(lam, mu),
                    &restrict(lam, mu, n).unwrap(),
                    "({lam}, {mu})"
                );
            }
        }
    }

    #[test]
    fn support_is_containment() {
        let n = 4u32;
        let table = RestrictionTable::build(n).unwrap();
        for lam in table.shapes() {
            for mu in table.shapes() {
                let zero = table.entry(lam, mu).is_zero();
                if lam.is_contained_in(mu) {
                    assert!(!zero, "({lam}, {mu}) should not vanish");
                } else {
                    assert!(zero, "({lam}, {mu}) should vanish");
                }
            }
        }
    }

    #[test]
    fn giambelli_on_small_orders() {
        for n in 1..=3u32 {
            let table = RestrictionTable::build(n).unwrap();
            for lam in table.shapes() {
                assert!(
                    giambelli_check(lam, &table).unwrap(),
                    "lambda = {lam}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn beta_expansion_basics() {
        // 2 x1 at n = 2: 2 x1 = 2 beta_1 + beta_2.
        let p = Poly::x(1).scale(&2.into());
        let b = beta_expand(&p, 2).unwrap();
        let as_pairs: Vec<(Vec<u32>, Rat)> = b
            .coeffs()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        assert_eq!(
            as_pairs,
            vec![
                (vec![0, 1], Rat::from_integer(1.into())),
                (vec![1, 0], Rat::from_integer(2.into())),
            ]
        );
        assert!(b.all_nonneg_integers());
        // x1 alone is not integral: coefficient 1/2 on beta_2.
        let b = beta_expand(&Poly::x(1), 2).unwrap();
        assert!(!b.all_nonneg_integers());
        // x1 - x2 = beta_1 is integral, x2 - x1 is not nonnegative.
        assert!(beta_expand(&(&Poly::x(1) - &Poly::x(2)), 2)
            .unwrap()
            .all_nonneg_integers());
        assert!(!beta_expand(&(&Poly::x(2) - &Poly::x(1)), 2)
            .unwrap()
            .all_nonneg_integers());
        assert!(beta_expand(&Poly::a(2), 2).is_err());
    }
}
