//! The quotient presentation of the equivariant cohomology ring: abstract
//! generators X_1..X_n over the base polynomial ring, the two-index
//! relation elements, normal-form rewriting onto strict monomials, the
//! Pfaffian classes, and the evaluation homomorphism onto restriction
//! vectors.
//!
//! Everything stays exact: coefficients are integer polynomials in the
//! torus parameters x_1..x_n (the abstract deformation parameters are
//! already pushed down to x's here), and the only rewriting rule is the
//! square relation, which strictly decreases the monomial order.

mod parse;

pub use parse::parse_xpoly;

use crate::equivariant::{eval_row_at, EqError, RestrictionTable};
use crate::index::{enumerate, StrictPartition};
use crate::poly::{x_vars, Poly, Rat};
use crate::qfun::{f_coeff_with, Alphabet};
use num_bigint::BigInt;
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// A monomial in the generators, stored as exponents of X_1, X_2, ...
/// with trailing zeros trimmed.  "Strict" means every exponent is at most
/// one, so the monomial is X^lambda for a strict partition lambda.
///
/// The ordering is the graded one with X_1 < X_2 < ... < X_n: higher total
/// degree wins, and among equal degrees the monomial whose first differing
/// exponent is *smaller* is the larger one.  (So X_2 > X_1, and X_1^2 >
/// X_2 by degree.)  The order is multiplicative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct XMonomial {
    exps: Vec<u32>,
}

impl XMonomial {
    /// The empty monomial (the ring unit).
    pub fn one() -> Self {
        XMonomial { exps: Vec::new() }
    }

    /// The generator X_j, j >= 1.
    pub fn gen(j: u32) -> Self {
        assert!(j >= 1, "generators are X_1, X_2, ...");
        let mut exps = vec![0; j as usize];
        exps[j as usize - 1] = 1;
        XMonomial { exps }
    }

    /// From raw exponents of X_1, X_2, ... (trailing zeros allowed).
    pub fn from_exps(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        XMonomial { exps }
    }

    /// X^lambda for a strict partition: one factor X_{lambda_i} per part.
    pub fn from_strict(lambda: &StrictPartition) -> Self {
        let mut exps = vec![0; lambda.part(0) as usize];
        for &p in lambda.parts() {
            exps[p as usize - 1] = 1;
        }
        XMonomial { exps }
    }

    /// The strict partition with X^lambda = self, if the monomial is
    /// strict.
    pub fn to_strict(&self) -> Option<StrictPartition> {
        if !self.is_strict() {
            return None;
        }
        let parts: Vec<u32> = (1..=self.exps.len() as u32)
            .rev()
            .filter(|&j| self.exp(j) == 1)
            .collect();
        Some(StrictPartition::new(parts).expect("descending distinct indices"))
    }

    /// Exponent of X_j (zero beyond the stored length).
    pub fn exp(&self, j: u32) -> u32 {
        assert!(j >= 1);
        self.exps.get(j as usize - 1).copied().unwrap_or(0)
    }

    /// Largest index with a nonzero exponent (0 for the unit).
    pub fn max_index(&self) -> u32 {
        self.exps.len() as u32
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Every exponent at most one.
    pub fn is_strict(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.exps.len().max(other.exps.len());
        let exps = (0..len)
            .map(|i| {
                self.exps.get(i).copied().unwrap_or(0) + other.exps.get(i).copied().unwrap_or(0)
            })
            .collect();
        XMonomial { exps }
    }
}

impl Ord for XMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let len = self.exps.len().max(other.exps.len());
        for j in 1..=len as u32 {
            match self.exp(j).cmp(&other.exp(j)) {
                Ordering::Equal => {}
                // At the first difference the smaller exponent belongs to
                // the larger monomial.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for XMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for XMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for j in (1..=self.exps.len() as u32).rev() {
            let e = self.exp(j);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "X{j}")?;
            } else {
                write!(f, "X{j}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for XMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A polynomial in the generators with coefficients in the base ring of
/// integer polynomials.  No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct XPoly {
    terms: BTreeMap<XMonomial, Poly>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        XPoly::term(XMonomial::one(), Poly::one())
    }

    /// X_j truncated at order n: X_0 is the unit and X_j vanishes for
    /// j > n.
    pub fn gen(j: u32, n: u32) -> Self {
        if j == 0 {
            XPoly::one()
        } else if j > n {
            XPoly::zero()
        } else {
            XPoly::term(XMonomial::gen(j), Poly::one())
        }
    }

    pub fn term(m: XMonomial, c: Poly) -> Self {
        let mut p = XPoly::zero();
        p.add_term(m, c);
        p
    }

    /// X^lambda with coefficient one.
    pub fn from_strict(lambda: &StrictPartition) -> Self {
        XPoly::term(XMonomial::from_strict(lambda), Poly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&XMonomial, &Poly)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &XMonomial) -> Poly {
        self.terms.get(m).cloned().unwrap_or_else(Poly::zero)
    }

    /// Largest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&XMonomial, &Poly)> {
        self.terms.iter().next_back()
    }

    /// Largest index appearing in any monomial (0 if constant).
    pub fn max_index(&self) -> u32 {
        self.terms
            .keys()
            .map(XMonomial::max_index)
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, m: XMonomial, c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Multiply every coefficient by a base-ring polynomial.
    pub fn scale(&self, c: &Poly) -> Self {
        if c.is_zero() {
            return XPoly::zero();
        }
        let mut out = XPoly::zero();
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    /// Multiply by a single generator monomial.
    fn mul_monomial(&self, m: &XMonomial) -> Self {
        let mut out = XPoly::zero();
        for (k, c) in &self.terms {
            out.add_term(k.mul(m), c.clone());
        }
        out
    }
}

impl AddAssign<&XPoly> for XPoly {
    fn add_assign(&mut self, rhs: &XPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&XPoly> for XPoly {
    fn sub_assign(&mut self, rhs: &XPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly::zero().sub(self)
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        let mut out = XPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let (sep_minus, body) = single_signed(c);
            if first {
                if sep_minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if sep_minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (m.is_one(), body.as_str()) {
                (true, _) => write!(f, "{body}")?,
                (false, "1") => write!(f, "{m}")?,
                (false, _) => write!(f, "{body}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Render a coefficient, pulling a minus sign out of single-term
/// coefficients and wrapping multi-term ones in parentheses.
fn single_signed(c: &Poly) -> (bool, String) {
    if c.num_terms() > 1 {
        return (false, format!("({c})"));
    }
    let neg = -c;
    let lead_negative = matches!(c.terms().next(), Some((_, k)) if k < &BigInt::from(0));
    if lead_negative {
        (true, format!("{neg}"))
    } else {
        (false, format!("{c}"))
    }
}

/// The two-index element of the generator ring whose image is the
/// two-row class: X_k X_l plus the alternating square-style tail and the
/// deformation tail, all truncated so that X_j = 0 for j > n, with the
/// abstract parameters already specialized to x_{n-j+2}.
///
/// The diagonal elements (k = l) generate the defining ideal; l = 0
/// degenerates to the single generator X_k.
pub fn relation_x(k: u32, l: u32, n: u32) -> Result<XPoly, EqError> {
    if l > k || k > n {
        return Err(EqError::BadInput(format!(
            "need n >= k >= l >= 0, got k={k}, l={l}, n={n}"
        )));
    }
    let mut p = &XPoly::gen(k, n) * &XPoly::gen(l, n);
    if l >= 1 {
        let alph = Alphabet::torus(x_vars(n));
        for i in 1..=(n - k).min(l) {
            let t = &XPoly::gen(k + i, n) * &XPoly::gen(l - i, n);
            let sign = if i % 2 == 1 { -2 } else { 2 };
            p += &t.scale(&Poly::int(sign));
        }
        for r in k..=n.min(k + l - 1) {
            for s in 0..=(k + l - 1 - r) {
                let f = f_coeff_with(k, l, r, s, &alph)?;
                if f.is_zero() {
                    continue;
                }
                let t = &XPoly::gen(r, n) * &XPoly::gen(s, n);
                p += &t.scale(&f);
            }
        }
    }
    Ok(p)
}

/// Rewrite onto strict monomials, counting rewriting steps.  Each step
/// replaces the largest non-strict monomial: a repeated factor X_k^2 is
/// eliminated through the diagonal relation, whose other monomials are all
/// strictly smaller, so the count is finite.  Within the chosen monomial
/// the largest repeated index is rewritten, making runs deterministic.
pub fn normal_form_counted(p: &XPoly, n: u32) -> Result<(XPoly, u64), EqError> {
    if p.max_index() > n {
        return Err(EqError::BadInput(format!(
            "X_{} exceeds the generator range at order {n}",
            p.max_index()
        )));
    }
    let mut relations: HashMap<u32, XPoly> = HashMap::new();
    let mut out = p.clone();
    let mut steps = 0u64;
    loop {
        let target = out
            .terms()
            .find(|(m, _)| !m.is_strict())
            .map(|(m, c)| (m.clone(), c.clone()));
        let Some((m, c)) = target else {
            return Ok((out, steps));
        };
        let k = (1..=m.max_index())
            .rev()
            .find(|&j| m.exp(j) >= 2)
            .expect("non-strict monomial has a repeated index");
        let mut rest = m.exps.clone();
        rest[k as usize - 1] -= 2;
        let rest = XMonomial::from_exps(rest);
        let rel = match relations.get(&k) {
            Some(r) => r.clone(),
            None => {
                let r = relation_x(k, k, n)?;
                relations.insert(k, r.clone());
                r
            }
        };
        // c * m = c * X_k^2 * rest; the relation says X_k^2 equals the
        // negated tail, so subtracting c * rel * rest cancels the term.
        out -= &rel.mul_monomial(&rest).scale(&c);
        steps += 1;
    }
}

/// Rewrite onto strict monomials (the image in the quotient ring written
/// in the spanning basis).
pub fn normal_form(p: &XPoly, n: u32) -> Result<XPoly, EqError> {
    normal_form_counted(p, n).map(|(q, _)| q)
}

/// The Pfaffian class of a strict partition: the Pfaffian of the
/// skew-symmetric array of two-index elements over the parts (padded with
/// a zero part to even length), expanded along the first row.
pub fn pfaffian_x(lambda: &StrictPartition, n: u32) -> Result<XPoly, EqError> {
    if !lambda.fits_staircase(n) {
        return Err(EqError::BadInput(format!(
            "{lambda} is not a staircase shape at order {n}"
        )));
    }
    let mut parts: Vec<u32> = lambda.parts().to_vec();
    if parts.len() % 2 == 1 {
        parts.push(0);
    }
    let mut entries: HashMap<(usize, usize), XPoly> = HashMap::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            entries.insert((i, j), relation_x(parts[i], parts[j], n)?);
        }
    }
    let full: u64 = if parts.is_empty() {
        0
    } else {
        (1u64 << parts.len()) - 1
    };
    let mut memo: HashMap<u64, XPoly> = HashMap::new();
    Ok(pf_rec(full, &entries, &mut memo))
}

fn pf_rec(
    mask: u64,
    entries: &HashMap<(usize, usize), XPoly>,
    memo: &mut HashMap<u64, XPoly>,
) -> XPoly {
    if mask == 0 {
        return XPoly::one();
    }
    if let Some(hit) = memo.get(&mask) {
        return hit.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let mut acc = XPoly::zero();
    let mut sign_positive = true;
    for j in (first + 1)..64 {
        if mask & (1u64 << j) == 0 {
            continue;
        }
        let sub = mask & !(1u64 << first) & !(1u64 << j);
        let term = &entries[&(first, j)] * &pf_rec(sub, entries, memo);
        if sign_positive {
            acc += &term;
        } else {
            acc -= &term;
        }
        sign_positive = !sign_positive;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Evaluate the homomorphism sending X_i to the class of the one-row
/// shape (i), returned as the restriction vector over the fixed points in
/// table order: products of classes restrict pointwise.
pub fn phi_vector(p: &XPoly, table: &RestrictionTable) -> Result<Vec<Poly>, EqError> {
    let n = table.n();
    if p.max_index() > n {
        return Err(EqError::BadInput(format!(
            "X_{} exceeds the generator range at order {n}",
            p.max_index()
        )));
    }
    let rows: Vec<&[Poly]> = (1..=n)
        .map(|i| {
            let shape = StrictPartition::single(i);
            table
                .position(&shape)
                .map(|_| table.row(&shape))
                .ok_or_else(|| EqError::BadInput(format!("one-row shape ({i}) missing")))
        })
        .collect::<Result<_, _>>()?;
    let width = table.shapes().len();
    let mut out = vec![Poly::zero(); width];
    for (m, c) in p.terms() {
        for (mi, slot) in out.iter_mut().enumerate() {
            let mut val = c.clone();
            for j in 1..=m.max_index() {
                for _ in 0..m.exp(j) {
                    if val.is_zero() {
                        break;
                    }
                    val = &val * &rows[j as usize - 1][mi];
                }
            }
            *slot += &val;
        }
    }
    Ok(out)
}

/// The presentation data for one order: normal forms of all Pfaffian
/// classes, which express the change of basis between strict monomials
/// and Pfaffians (it is unitriangular: each normal form is X^lambda plus
/// strictly smaller strict monomials).
pub struct Presentation {
    n: u32,
    shapes: Vec<StrictPartition>,
    pos: BTreeMap<StrictPartition, usize>,
    normal_pfaffians: Vec<XPoly>,
}

impl Presentation {
    pub fn build(n: u32) -> Result<Self, EqError> {
        let shapes = enumerate(n);
        let pos: BTreeMap<StrictPartition, usize> = shapes
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let normal_pfaffians = shapes
            .iter()
            .map(|lam| normal_form(&pfaffian_x(lam, n)?, n))
            .collect::<Result<Vec<_>, _>>()?;
        for (lam, nf) in shapes.iter().zip(&normal_pfaffians) {
            let (m, c) = nf.leading().ok_or_else(|| {
                EqError::BadInput(format!("Pfaffian class of {lam} reduced to zero"))
            })?;
            if m != &XMonomial::from_strict(lam) || c != &Poly::one() {
                return Err(EqError::BadInput(format!(
                    "Pfaffian class of {lam} is not unitriangular: leading term {c}*{m}"
                )));
            }
        }
        Ok(Presentation {
            n,
            shapes,
            pos,
            normal_pfaffians,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn shapes(&self) -> &[StrictPartition] {
        &self.shapes
    }

    /// Normal form of the Pfaffian class of one shape.
    pub fn normal_pfaffian(&self, lambda: &StrictPartition) -> Option<&XPoly> {
        self.pos.get(lambda).map(|&i| &self.normal_pfaffians[i])
    }

    /// Expand a strict-monomial combination in the Pfaffian classes by
    /// peeling leading terms; unitriangularity makes this exact.
    pub fn to_pfaffian_basis(&self, p: &XPoly) -> Result<BTreeMap<StrictPartition, Poly>, EqError> {
        let mut rest = p.clone();
        let mut out = BTreeMap::new();
        while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let lam = m.to_strict().ok_or_else(|| {
                EqError::BadInput(format!(
                    "monomial {m} is not strict; take a normal form first"
                ))
            })?;
            let i = self.pos[&lam];
            rest -= &self.normal_pfaffians[i].scale(&c);
            out.insert(lam, c);
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Structure constants computed wholly inside the quotient ring:
    /// multiply two Pfaffian classes, reduce, and expand in the Pfaffian
    /// basis.
    pub fn product_constants(
        &self,
        w: &StrictPartition,
        v: &StrictPartition,
    ) -> Result<BTreeMap<StrictPartition, Poly>, EqError> {
        let wi = *self
            .pos
            .get(w)
            .ok_or_else(|| EqError::BadInput(format!("{w} is not a shape of the presentation")))?;
        let vi = *self
            .pos
            .get(v)
            .ok_or_else(|| EqError::BadInput(format!("{v} is not a shape of the presentation")))?;
        let prod = &self.normal_pfaffians[wi] * &self.normal_pfaffians[vi];
        let nf = normal_form(&prod, self.n)?;
        self.to_pfaffian_basis(&nf)
    }
}

/// Rank over the rationals of the matrix whose rows are the images of all
/// strict monomials evaluated at one x-point.  A full rank of 2^n at a
/// single point certifies linear independence of the images.
pub fn strict_image_rank(table: &RestrictionTable, point: &[Rat]) -> usize {
    let n = table.n();
    let gen_rows: Vec<Vec<Rat>> = (1..=n)
        .map(|i| eval_row_at(table, &StrictPartition::single(i), point))
        .collect();
    let width = table.shapes().len();
    let rows: Vec<Vec<Rat>> = table
        .shapes()
        .iter()
        .map(|lam| {
            let mut row = vec![Rat::from_integer(1.into()); width];
            for &p in lam.parts() {
                for (slot, v) in row.iter_mut().zip(&gen_rows[p as usize - 1]) {
                    *slot *= v;
                }
            }
            row
        })
        .collect();
    rat_rank(rows)
}

/// Rank by fraction-free-enough Gaussian elimination over exact rationals.
fn rat_rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..height).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (pivot_rows, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &pivot_rows[rank];
        let inv = pivot_row[col].clone();
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &inv;
            for (dst, src) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= &factor * src;
            }
        }
        rank += 1;
        if rank == height {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::structure_constants;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    fn x2(k: u32, l: u32) -> XMonomial {
        XMonomial::from_exps({
            let mut e = vec![0; k.max(l) as usize];
            e[k as usize - 1] += 1;
            e[l as usize - 1] += 1;
            e
        })
    }

    #[test]
    fn monomial_order_examples() {
        let one = XMonomial::one();
        let x1 = XMonomial::gen(1);
        let x2g = XMonomial::gen(2);
        let x1sq = x2(1, 1);
        assert!(x2g > x1);
        assert!(x1sq > x2g);
        assert!(x1 > one);
        // Multiplicative: multiplying both sides by X_1 preserves order.
        assert!(x2g.mul(&x1) > x1.mul(&x1));
    }

    #[test]
    fn strict_monomial_round_trip() {
        for n in 0..=5u32 {
            for lam in enumerate(n) {
                let m = XMonomial::from_strict(&lam);
                assert!(m.is_strict());
                assert_eq!(m.to_strict().unwrap(), lam);
            }
        }
        assert!(x2(2, 2).to_strict().is_none());
    }

    #[test]
    fn relation_examples() {
        // k = l = 1, n = 2: X_1^2 - 2 X_2 - 2 x_2 X_1.
        let r = relation_x(1, 1, 2).unwrap();
        let mut expected = XPoly::zero();
        expected.add_term(x2(1, 1), Poly::one());
        expected.add_term(XMonomial::gen(2), Poly::int(-2));
        expected.add_term(XMonomial::gen(1), Poly::x(2).scale(&BigInt::from(-2)));
        assert_eq!(r, expected);

        // l = 1 in general: X_k X_1 - 2 X_{k+1} - 2 x_{n-k+1} X_k.
        for n in 2..=4u32 {
            for k in 1..=n {
                let r = relation_x(k, 1, n).unwrap();
                let mut expected = XPoly::zero();
                expected.add_term(x2(k, 1), Poly::one());
                if k < n {
                    expected.add_term(XMonomial::gen(k + 1), Poly::int(-2));
                }
                expected.add_term(
                    XMonomial::gen(k),
                    Poly::x(n - k + 1).scale(&BigInt::from(-2)),
                );
                assert_eq!(r, expected, "k={k}, n={n}");
            }
        }

        // Truncation: the top diagonal relation has no generator
        // products beyond X_n at all.
        for n in 1..=4u32 {
            let r = relation_x(n, n, n).unwrap();
            assert!(r.max_index() <= n);
        }

        // l = 0 degenerates to the plain generator.
        assert_eq!(relation_x(3, 0, 4).unwrap(), XPoly::gen(3, 4));
    }

    #[test]
    fn normal_form_rewrites_squares() {
        // X_1^2 at n = 2 becomes 2 X_2 + 2 x_2 X_1.
        let p = XPoly::term(x2(1, 1), Poly::one());
        let (nf, steps) = normal_form_counted(&p, 2).unwrap();
        let mut expected = XPoly::zero();
        expected.add_term(XMonomial::gen(2), Poly::int(2));
        expected.add_term(XMonomial::gen(1), Poly::x(2).scale(&BigInt::from(2)));
        assert_eq!(nf, expected);
        assert_eq!(steps, 1);
        // Idempotent, and strict input is untouched.
        assert_eq!(normal_form(&nf, 2).unwrap(), nf);
        let strict = XPoly::term(x2(2, 1), Poly::one());
        assert_eq!(normal_form(&strict, 2).unwrap(), strict);
    }

    #[test]
    fn ideal_generators_reduce_to_zero() {
        for n in 1..=4u32 {
            for k in 1..=n {
                let rel = relation_x(k, k, n).unwrap();
                let (nf, steps) = normal_form_counted(&rel, n).unwrap();
                assert!(nf.is_zero(), "relation ({k},{k}) at n={n} -> {nf}");
                assert!(steps >= 1);
            }
        }
    }

    #[test]
    fn pfaffian_single_row_is_a_generator() {
        for n in 1..=4u32 {
            for k in 1..=n {
                assert_eq!(pfaffian_x(&sp(&[k]), n).unwrap(), XPoly::gen(k, n));
            }
        }
    }

    #[test]
    fn pfaffian_normal_forms_are_unitriangular() {
        for n in 1..=3u32 {
            let pres = Presentation::build(n).unwrap();
            for lam in pres.shapes() {
                let nf = pres.normal_pfaffian(lam).unwrap();
                let (m, c) = nf.leading().unwrap();
                assert_eq!(m, &XMonomial::from_strict(lam));
                assert_eq!(c, &Poly::one());
                for (other, _) in nf.terms() {
                    assert!(other.is_strict());
                }
            }
        }
    }

    #[test]
    fn phi_kills_relations_and_matches_restrictions() {
        for n in 1..=3u32 {
            let table = RestrictionTable::build(n).unwrap();
            for k in 1..=n {
                let rel = relation_x(k, k, n).unwrap();
                for entry in phi_vector(&rel, &table).unwrap() {
                    assert!(entry.is_zero(), "relation ({k},{k}) at n={n}");
                }
            }
            for lam in table.shapes() {
                let pf = pfaffian_x(lam, n).unwrap();
                assert_eq!(
                    phi_vector(&pf, &table).unwrap(),
                    table.row(lam),
                    "Pfaffian image of {lam} at n={n}"
                );
                // The normal form is the same class, so the image agrees.
                let nf = normal_form(&pf, n).unwrap();
                assert_eq!(phi_vector(&nf, &table).unwrap(), table.row(lam));
            }
        }
    }

    #[test]
    fn product_constants_match_fixed_point_solve() {
        let n = 2u32;
        let table = RestrictionTable::build(n).unwrap();
        let pres = Presentation::build(n).unwrap();
        for w in pres.shapes().to_vec() {
            for v in pres.shapes().to_vec() {
                let via_pres = pres.product_constants(&w, &v).unwrap();
                let via_table = structure_constants(&w, &v, &table).unwrap();
                assert_eq!(&via_pres, via_table.coeffs(), "{w} * {v}");
            }
        }
    }

    #[test]
    fn rank_is_full_at_a_simple_point() {
        for n in 1..=3u32 {
            let table = RestrictionTable::build(n).unwrap();
            let point: Vec<Rat> = (0..n)
                .map(|i| Rat::from_integer((2 + 3 * i as i64).into()))
                .collect();
            assert_eq!(strict_image_rank(&table, &point), 1usize << n);
        }
    }
}
