//! Truncated power series in one formal variable z with polynomial
//! coefficients, enough to check the one-row generating function.

use super::{Alphabet, QTables};
use crate::poly::Poly;

/// Coefficients of z^0..z^trunc; everything above is discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    coeffs: Vec<Poly>,
}

impl ZSeries {
    pub fn zero(trunc: usize) -> Self {
        ZSeries {
            coeffs: vec![Poly::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = ZSeries::zero(trunc);
        s.coeffs[0] = Poly::one();
        s
    }

    /// 1 + c z.
    pub fn one_plus_cz(c: &Poly, trunc: usize) -> Self {
        let mut s = ZSeries::one(trunc);
        if trunc >= 1 {
            s.coeffs[1] = c.clone();
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &Poly {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &ZSeries) -> ZSeries {
        assert_eq!(self.trunc(), other.trunc());
        ZSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &ZSeries) -> ZSeries {
        assert_eq!(self.trunc(), other.trunc());
        ZSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &ZSeries) -> ZSeries {
        assert_eq!(self.trunc(), other.trunc());
        let t = self.trunc();
        let mut out = ZSeries::zero(t);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > t {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                out.coeffs[i + j] += &prod;
            }
        }
        out
    }

    pub fn scale(&self, c: &Poly) -> ZSeries {
        ZSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by z^k.
    pub fn shift(&self, k: usize) -> ZSeries {
        let t = self.trunc();
        let mut out = ZSeries::zero(t);
        for d in k..=t {
            out.coeffs[d] = self.coeffs[d - k].clone();
        }
        out
    }

    /// Multiplicative inverse; the constant coefficient must be 1.
    pub fn invert(&self) -> ZSeries {
        assert_eq!(self.coeffs[0], Poly::one(), "series must start with 1");
        let t = self.trunc();
        let mut inv = ZSeries::zero(t);
        inv.coeffs[0] = Poly::one();
        for m in 1..=t {
            let mut acc = Poly::zero();
            for i in 1..=m {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                let prod = &self.coeffs[i] * &inv.coeffs[m - i];
                acc += &prod;
            }
            inv.coeffs[m] = -&acc;
        }
        inv
    }
}

/// Difference of the two sides of the one-row generating identity,
/// truncated after z^trunc:
///
///   sum_k Q_k z^k / prod_{j=1..k} (1 - a_{j+1} z)
///     - prod_i (1 + x_i z) / (1 - x_i z).
pub fn generating_function_defect(alph: &Alphabet, trunc: usize) -> ZSeries {
    let mut tables = QTables::new(alph.clone());
    let mut lhs = ZSeries::zero(trunc);
    for k in 0..=trunc {
        let qk = tables.onerow(k as u32);
        if qk.is_zero() {
            continue;
        }
        let mut denom = ZSeries::one(trunc);
        for j in 1..=k {
            let a = alph.a_image(j as u32 + 1);
            denom = denom.mul(&ZSeries::one_plus_cz(&(-&a), trunc));
        }
        let term = denom.invert().shift(k).scale(&qk);
        lhs = lhs.add(&term);
    }
    let mut rhs = ZSeries::one(trunc);
    for x in alph.x_images() {
        rhs = rhs.mul(&ZSeries::one_plus_cz(x, trunc));
        rhs = rhs.mul(&ZSeries::one_plus_cz(&(-x), trunc).invert());
    }
    lhs.sub(&rhs)
}
