//! Exact sparse multivariate polynomials over the integers.
//!
//! Two variable families exist: `x1, x2, ...` (torus characters) and
//! `a2, a3, ...` (deformation parameters; `a1` is identically zero and is
//! never a variable).  All arithmetic is exact.  Invariants maintained by
//! every constructor and operation:
//!
//! * monomials store sorted `(VarId, exponent)` pairs with exponent > 0;
//! * the term map never contains a zero coefficient;
//! * the canonical term order is graded lexicographic, all `x` variables
//!   before all `a` variables, ascending index within a family.

mod serial;
mod symmetric;

pub use serial::PolyJson;
pub use symmetric::{a_vars, partitions_of, sym_e, sym_h, sym_m, sym_m_list, x_vars};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use thiserror::Error;

/// Exact rational scalar used by evaluation oracles.
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VarKind {
    X,
    A,
}

/// A named variable.  `X` variables sort before `A` variables; within a
/// family the index ascends.  This fixed order underlies the term order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    kind: VarKind,
    index: u32,
}

impl VarId {
    pub fn x(i: u32) -> Self {
        assert!(i >= 1, "x index must be at least 1");
        VarId {
            kind: VarKind::X,
            index: i,
        }
    }

    /// `a1` is the constant 0 by convention, so the smallest legal index is 2.
    pub fn a(j: u32) -> Self {
        assert!(j >= 2, "a1 is identically zero, not a variable");
        VarId {
            kind: VarKind::A,
            index: j,
        }
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn name(&self) -> String {
        match self.kind {
            VarKind::X => format!("x{}", self.index),
            VarKind::A => format!("a{}", self.index),
        }
    }

    pub fn parse(s: &str) -> Option<VarId> {
        let (head, rest) = s.split_at(1);
        let index: u32 = rest.parse().ok()?;
        match head {
            "x" if index >= 1 => Some(VarId::x(index)),
            "a" if index >= 2 => Some(VarId::a(index)),
            _ => None,
        }
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A power product, stored sparsely.  `Ord` is the graded lexicographic
/// order on the fixed variable order; `Greater` means later in that order,
/// so the leading term of a polynomial is the largest key.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    pub fn var_pow(v: VarId, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial { exps: vec![(v, e)] }
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut merged: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *merged.entry(v).or_insert(0) += e;
            }
        }
        Monomial {
            exps: merged.into_iter().collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exp_of(&self, v: VarId) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                Ordering::Less => {
                    out.push(self.exps[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.exps[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.exps[i].0, self.exps[i].1 + other.exps[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    /// `self / other`, or `None` when some exponent would go negative.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.exps.len());
        let mut i = 0;
        for &(v, e) in &other.exps {
            loop {
                if i >= self.exps.len() {
                    return None;
                }
                let (w, f) = self.exps[i];
                match w.cmp(&v) {
                    Ordering::Less => {
                        out.push((w, f));
                        i += 1;
                    }
                    Ordering::Equal => {
                        if f < e {
                            return None;
                        }
                        if f > e {
                            out.push((w, f - e));
                        }
                        i += 1;
                        break;
                    }
                    Ordering::Greater => return None,
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        Some(Monomial { exps: out })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Equal degree: lexicographic, larger exponent on the earlier
        // variable wins.  A missing variable counts as exponent 0.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (Some(&(v, e)), Some(&(w, f))) => match v.cmp(&w) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        match e.cmp(&f) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(v, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with `BigInt` coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::int(1)
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(BigInt::from(c))
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(v: VarId) -> Self {
        Poly::term(Monomial::var(v), BigInt::one())
    }

    pub fn x(i: u32) -> Self {
        Poly::var(VarId::x(i))
    }

    pub fn a(j: u32) -> Self {
        Poly::var(VarId::a(j))
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending canonical order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True when every term has total degree `d` (vacuously for 0).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.vars().map(|(v, _)| v))
            .collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact division within the integer coefficient ring.  Fails with
    /// `NotDivisible` when the quotient does not exist there.
    pub fn exact_div(&self, q: &Poly) -> Result<Poly, PolyError> {
        if q.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (qm, qc) = q.leading().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.try_div(qm).ok_or(PolyError::NotDivisible)?;
            let (c, r) = num_integer::Integer::div_rem(rc, qc);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            let t = Poly::term(m, c);
            rem -= &(&t * q);
            quot += &t;
        }
        Ok(quot)
    }

    /// Divide every coefficient by `c`, failing unless all divisions are exact.
    pub fn exact_div_int(&self, c: &BigInt) -> Result<Poly, PolyError> {
        if c.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut terms = BTreeMap::new();
        for (m, k) in &self.terms {
            let (q, r) = num_integer::Integer::div_rem(k, c);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            terms.insert(m.clone(), q);
        }
        Ok(Poly { terms })
    }

    /// Simultaneous substitution.  Variables absent from `map` stay
    /// themselves; images are never re-substituted.
    pub fn substitute(&self, map: &BTreeMap<VarId, Poly>) -> Poly {
        let mut max_exp: BTreeMap<VarId, u32> = BTreeMap::new();
        for m in self.terms.keys() {
            for (v, e) in m.vars() {
                let slot = max_exp.entry(v).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        let mut powers: BTreeMap<VarId, Vec<Poly>> = BTreeMap::new();
        for (&v, &me) in &max_exp {
            let img = map.get(&v).cloned().unwrap_or_else(|| Poly::var(v));
            let mut ladder = Vec::with_capacity(me as usize + 1);
            ladder.push(Poly::one());
            for e in 1..=me {
                let next = &ladder[(e - 1) as usize] * &img;
                ladder.push(next);
            }
            powers.insert(v, ladder);
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (v, e) in m.vars() {
                t = &t * &powers[&v][e as usize];
            }
            out += &t;
        }
        out
    }

    /// Full evaluation at a rational point.  Every variable occurring in
    /// `self` must be present in `point`.
    pub fn eval(&self, point: &BTreeMap<VarId, Rat>) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = Rat::from_integer(c.clone());
            for (v, e) in m.vars() {
                let val = point
                    .get(&v)
                    .unwrap_or_else(|| panic!("evaluation point missing {}", v));
                for _ in 0..e {
                    t *= val;
                }
            }
            acc += t;
        }
        acc
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), &(-c));
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let (small, big) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Poly::zero();
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_x1() -> Poly {
        Poly::x(1)
    }

    #[test]
    fn var_order_x_before_a() {
        assert!(VarId::x(5) < VarId::a(2));
        assert!(VarId::x(1) < VarId::x(2));
        assert!(VarId::a(2) < VarId::a(3));
    }

    #[test]
    #[should_panic]
    fn a1_is_rejected() {
        VarId::a(1);
    }

    #[test]
    fn grlex_examples() {
        let x1 = Monomial::var(VarId::x(1));
        let x2 = Monomial::var(VarId::x(2));
        let a2 = Monomial::var(VarId::a(2));
        let x1x1 = x1.mul(&x1);
        let x1x2 = x1.mul(&x2);
        assert!(x1x1 > x1x2, "degree ties break lexicographically");
        assert!(x1x1 > x2.mul(&x2));
        assert!(x1x2 > x1.mul(&a2));
        assert!(x1 > x2);
        assert!(x2 > a2);
        assert!(x1x2 > x1, "higher degree dominates");
    }

    #[test]
    fn arithmetic_basics() {
        let p = &(&p_x1() + &Poly::x(2)) * &(&p_x1() - &Poly::x(2));
        let q = &p_x1().pow(2) - &Poly::x(2).pow(2);
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
        assert_eq!(p.to_string(), "x1^2 - x2^2");
    }

    #[test]
    fn exact_div_recovers_factor() {
        let p = &(&p_x1() + &Poly::x(2)) * &(&p_x1() + &Poly::int(3));
        let q = p.exact_div(&(&p_x1() + &Poly::x(2))).unwrap();
        assert_eq!(q, &p_x1() + &Poly::int(3));
    }

    #[test]
    fn exact_div_detects_failure() {
        let p = &p_x1() + &Poly::one();
        assert_eq!(
            p.exact_div(&Poly::x(2)).unwrap_err(),
            PolyError::NotDivisible
        );
        let two_x = Poly::x(1).scale(&BigInt::from(2));
        assert_eq!(
            &(&two_x + &Poly::one())
                .exact_div(&Poly::int(2))
                .unwrap_err(),
            &PolyError::NotDivisible
        );
        assert_eq!(
            p.exact_div(&Poly::zero()).unwrap_err(),
            PolyError::DivisionByZero
        );
    }

    #[test]
    fn substitution_is_simultaneous() {
        // x1 -> x2, x2 -> x1 swaps rather than collapsing.
        let p = &p_x1() - &Poly::x(2).scale(&BigInt::from(2));
        let mut map = BTreeMap::new();
        map.insert(VarId::x(1), Poly::x(2));
        map.insert(VarId::x(2), Poly::x(1));
        let q = p.substitute(&map);
        assert_eq!(q, &Poly::x(2) - &p_x1().scale(&BigInt::from(2)));
    }

    #[test]
    fn substitution_leaves_unmapped_vars() {
        let p = &p_x1() + &Poly::a(3);
        let mut map = BTreeMap::new();
        map.insert(VarId::a(3), Poly::x(1));
        assert_eq!(p.substitute(&map), p_x1().scale(&BigInt::from(2)));
    }

    #[test]
    fn eval_simple() {
        let p = &(&p_x1() * &p_x1()) + &Poly::x(2);
        let mut pt = BTreeMap::new();
        pt.insert(VarId::x(1), Rat::new(BigInt::from(1), BigInt::from(2)));
        pt.insert(VarId::x(2), Rat::from_integer(BigInt::from(3)));
        assert_eq!(p.eval(&pt), Rat::new(BigInt::from(13), BigInt::from(4)));
    }

    #[test]
    fn homogeneity() {
        let p = &(&p_x1() * &Poly::a(2)) + &Poly::x(2).pow(2);
        assert!(p.is_homogeneous_of(2));
        assert!(!(&p + &Poly::one()).is_homogeneous_of(2));
        assert!(Poly::zero().is_homogeneous_of(7));
    }
}
