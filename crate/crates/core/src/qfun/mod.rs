//! Factorial Q-functions in n variables, built by the one-row, two-row,
//! Pfaffian pipeline.
//!
//! All constructors work relative to an [`Alphabet`]: the images of the
//! variables x_1..x_n and of the parameters a_2, a_3, ....  The generic
//! alphabet leaves both families as variables; the torus alphabet sends
//! a_j to x_{n+2-j} (j <= n+1) and to 0 beyond, which is the equivariant
//! specialization.  Because every formula below is polynomial, evaluating
//! the pipeline on specialized images equals specializing the generic
//! result; a test pins that down.

mod nimmo;
mod pfaffian;
mod series;

pub use nimmo::nimmo_eval;
pub use pfaffian::{PfScalar, SkewMatrix};
pub use series::{generating_function_defect, ZSeries};

use crate::poly::{sym_e, sym_h, sym_m_list, Poly};
use num_bigint::BigInt;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QError {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("skew matrix has odd size")]
    OddSize,
    #[error("degenerate evaluation point: {0}")]
    DegeneratePoint(String),
}

/// Number of x variables and the declared parameter window a_2..a_amax.
/// Intermediate formulas may mention parameters beyond the window; they
/// cancel from every final Q-polynomial, whose a-support stays within
/// a_2..a_{lambda_1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QContext {
    pub n: u32,
    pub amax: u32,
}

impl QContext {
    pub fn new(n: u32) -> Self {
        QContext { n, amax: n + 1 }
    }
}

/// Images of the two variable families.
#[derive(Clone)]
pub struct Alphabet {
    xs: Vec<Poly>,
    a: AImages,
}

#[derive(Clone)]
enum AImages {
    Generic,
    Torus { n: u32 },
}

impl Alphabet {
    /// x_i and a_j stay themselves.
    pub fn generic(n: u32) -> Self {
        Alphabet {
            xs: (1..=n).map(Poly::x).collect(),
            a: AImages::Generic,
        }
    }

    /// Explicit x images (say, a fixed-point mask) with the torus
    /// parameter specialization a_j -> x_{n+2-j} (2 <= j <= n+1), 0 beyond.
    pub fn torus(xs: Vec<Poly>) -> Self {
        let n = xs.len() as u32;
        Alphabet {
            xs,
            a: AImages::Torus { n },
        }
    }

    pub fn n(&self) -> u32 {
        self.xs.len() as u32
    }

    pub fn x_images(&self) -> &[Poly] {
        &self.xs
    }

    /// Image of a_j; a_1 is identically 0.
    pub fn a_image(&self, j: u32) -> Poly {
        assert!(j >= 1);
        if j == 1 {
            return Poly::zero();
        }
        match self.a {
            AImages::Generic => Poly::a(j),
            AImages::Torus { n } => {
                if j <= n + 1 {
                    Poly::x(n + 2 - j)
                } else {
                    Poly::zero()
                }
            }
        }
    }

    /// Images of a_lo..=a_hi (empty when lo > hi).
    pub fn a_range(&self, lo: u32, hi: u32) -> Vec<Poly> {
        if lo > hi {
            return Vec::new();
        }
        (lo..=hi).map(|j| self.a_image(j)).collect()
    }
}

/// (x | a)^k = prod_{i=1..k} (x - a_i) with a_1 = 0.
pub fn falling_product(x: &Poly, k: u32, alph: &Alphabet) -> Poly {
    let mut out = Poly::one();
    for i in 1..=k {
        out = &out * &(x - &alph.a_image(i));
    }
    out
}

/// Classical one-row Q: sum over partitions mu of k of 2^len(mu) m_mu.
pub fn classical_q(k: u32, alph: &Alphabet) -> Poly {
    let vars: Vec<Poly> = alph.xs.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut out = Poly::zero();
    for mu in crate::poly::partitions_of(k, vars.len(), k) {
        let m = sym_m_list(&mu, &vars);
        out += &m.scale(&BigInt::from(2).pow(mu.len() as u32));
    }
    out
}

/// Classical one-row Q over x_1..x_n.
pub fn classical_q_onerow(k: u32, ctx: &QContext) -> Poly {
    classical_q(k, &Alphabet::generic(ctx.n))
}

/// One-row factorial Q: alternating sum of e_j(a_2..a_k) times classical
/// rows.  Degenerates to the classical Q for k <= 1.
pub fn factorial_q_onerow_with(k: u32, alph: &Alphabet) -> Poly {
    if k == 0 {
        return Poly::one();
    }
    let avars = alph.a_range(2, k);
    let mut out = Poly::zero();
    for j in 0..=(k - 1) as usize {
        let e = sym_e(j, &avars);
        if e.is_zero() {
            continue;
        }
        let q = classical_q(k - j as u32, alph);
        let t = &e * &q;
        if j % 2 == 0 {
            out += &t;
        } else {
            out -= &t;
        }
    }
    out
}

pub fn factorial_q_onerow(k: u32, ctx: &QContext) -> Poly {
    factorial_q_onerow_with(k, &Alphabet::generic(ctx.n))
}

/// Correction coefficient of Q_r Q_s in the two-row expansion of Q_{k,l}:
/// (-1)^(l-s) sum_j 2 h_{k+l-r-s-j}(a_{k+1}..a_{r+1}) e_j(a_{s+2}..a_l).
pub fn f_coeff_with(k: u32, l: u32, r: u32, s: u32, alph: &Alphabet) -> Result<Poly, QError> {
    if l < 1 || k < l {
        return Err(QError::IndexOutOfRange(format!(
            "need k >= l >= 1, got k={k}, l={l}"
        )));
    }
    if r < k || r > k + l - 1 {
        return Err(QError::IndexOutOfRange(format!(
            "need k <= r <= k+l-1, got r={r} for k={k}, l={l}"
        )));
    }
    if s > k + l - 1 - r {
        return Err(QError::IndexOutOfRange(format!(
            "need s <= k+l-1-r, got s={s} for k={k}, l={l}, r={r}"
        )));
    }
    let hvars = alph.a_range(k + 1, r + 1);
    let evars = alph.a_range(s + 2, l);
    let top = (k + l - r - s) as usize;
    let mut out = Poly::zero();
    for j in 0..=top {
        let e = sym_e(j, &evars);
        if e.is_zero() {
            continue;
        }
        let h = sym_h(top - j, &hvars);
        out += &(&e * &h);
    }
    out = out.scale(&BigInt::from(2));
    if (l - s) % 2 == 1 {
        out = -&out;
    }
    Ok(out)
}

pub fn f_coeff(k: u32, l: u32, r: u32, s: u32, n: u32) -> Result<Poly, QError> {
    f_coeff_with(k, l, r, s, &Alphabet::generic(n))
}

/// Two-row factorial Q for k > l >= 1:
/// Q_k Q_l + 2 sum_i (-1)^i Q_{k+i} Q_{l-i} + sum_{r,s} f_{k,l}^{r,s} Q_r Q_s.
pub fn factorial_q_tworow_with(k: u32, l: u32, alph: &Alphabet) -> Result<Poly, QError> {
    if l < 1 || k <= l {
        return Err(QError::InvalidShape(format!(
            "two-row shape needs k > l >= 1, got ({k}, {l})"
        )));
    }
    let mut tables = QTables::new(alph.clone());
    tables.tworow(k, l)
}

pub fn factorial_q_tworow(k: u32, l: u32, ctx: &QContext) -> Result<Poly, QError> {
    factorial_q_tworow_with(k, l, &Alphabet::generic(ctx.n))
}

/// The square identity evaluated on the alphabet:
/// Q_k^2 + 2 sum_{i=1..k} (-1)^i Q_{k+i} Q_{k-i}
///       + sum_{r=k..2k-1} sum_{s<=2k-1-r} f_{k,k}^{r,s} Q_r Q_s,
/// identically zero for every k >= 1.
pub fn square_relation_with(k: u32, alph: &Alphabet) -> Result<Poly, QError> {
    if k < 1 {
        return Err(QError::InvalidShape("square relation needs k >= 1".into()));
    }
    let mut tables = QTables::new(alph.clone());
    tables.row_expansion(k, k)
}

pub fn square_relation(k: u32, ctx: &QContext) -> Result<Poly, QError> {
    square_relation_with(k, &Alphabet::generic(ctx.n))
}

/// Factorial Q for an arbitrary strict shape, as the Pfaffian of the
/// two-row skew matrix (shape padded with a single 0 part when odd).
pub fn factorial_q_with(parts: &[u32], alph: &Alphabet) -> Result<Poly, QError> {
    let mut tables = QTables::new(alph.clone());
    tables.q(parts)
}

pub fn factorial_q(parts: &[u32], ctx: &QContext) -> Result<Poly, QError> {
    factorial_q_with(parts, &Alphabet::generic(ctx.n))
}

/// Memoized one-row and two-row values over a fixed alphabet.  Reuse one
/// instance when many shapes are assembled over the same images (a column
/// of the restriction table, an identity suite, ...).
pub struct QTables {
    alph: Alphabet,
    onerow: HashMap<u32, Poly>,
    tworow: HashMap<(u32, u32), Poly>,
}

impl QTables {
    pub fn new(alph: Alphabet) -> Self {
        QTables {
            alph,
            onerow: HashMap::new(),
            tworow: HashMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alph
    }

    pub fn onerow(&mut self, k: u32) -> Poly {
        if let Some(p) = self.onerow.get(&k) {
            return p.clone();
        }
        let p = factorial_q_onerow_with(k, &self.alph);
        self.onerow.insert(k, p.clone());
        p
    }

    /// Right-hand side of the two-row expansion for k >= l >= 1; equals
    /// Q_{k,l} when k > l and the square relation (zero) when k = l.
    fn row_expansion(&mut self, k: u32, l: u32) -> Result<Poly, QError> {
        let mut out = &self.onerow(k) * &self.onerow(l);
        for i in 1..=l {
            let t = &self.onerow(k + i) * &self.onerow(l - i);
            let t = t.scale(&BigInt::from(2));
            if i % 2 == 0 {
                out += &t;
            } else {
                out -= &t;
            }
        }
        for r in k..=(k + l - 1) {
            for s in 0..=(k + l - 1 - r) {
                let f = f_coeff_with(k, l, r, s, &self.alph)?;
                if f.is_zero() {
                    continue;
                }
                let t = &(&self.onerow(r) * &self.onerow(s)) * &f;
                out += &t;
            }
        }
        Ok(out)
    }

    pub fn tworow(&mut self, k: u32, l: u32) -> Result<Poly, QError> {
        if l < 1 || k <= l {
            return Err(QError::InvalidShape(format!(
                "two-row shape needs k > l >= 1, got ({k}, {l})"
            )));
        }
        if let Some(p) = self.tworow.get(&(k, l)) {
            return Ok(p.clone());
        }
        let p = self.row_expansion(k, l)?;
        self.tworow.insert((k, l), p.clone());
        Ok(p)
    }

    /// Skew-matrix entry with the conventions Q_{r,0} = Q_r, Q_{r,r} = 0,
    /// Q_{r,s} = -Q_{s,r} for r < s.
    pub fn entry(&mut self, r: u32, s: u32) -> Result<Poly, QError> {
        if r == s {
            return Ok(Poly::zero());
        }
        if r < s {
            return Ok(-&self.entry(s, r)?);
        }
        if s == 0 {
            Ok(self.onerow(r))
        } else {
            self.tworow(r, s)
        }
    }

    /// Factorial Q of a strict shape over this alphabet.
    pub fn q(&mut self, parts: &[u32]) -> Result<Poly, QError> {
        if parts.contains(&0) || !parts.windows(2).all(|w| w[0] > w[1]) {
            return Err(QError::InvalidShape(format!(
                "parts {parts:?} are not strictly decreasing and positive"
            )));
        }
        let mut padded: Vec<u32> = parts.to_vec();
        if padded.len() % 2 == 1 {
            padded.push(0);
        }
        if padded.is_empty() {
            return Ok(Poly::one());
        }
        let mut entries: Vec<Poly> = Vec::new();
        for i in 0..padded.len() {
            for j in (i + 1)..padded.len() {
                entries.push(self.entry(padded[i], padded[j])?);
            }
        }
        let mut it = entries.into_iter();
        let m = SkewMatrix::from_upper(padded.len(), |_, _| it.next().expect("entry count"));
        m.pfaffian()
    }
}
