//! Indexing combinatorics for the 2^n torus fixed points: strict partitions
//! inside the staircase (n, n-1, ..., 1), minimal-coset signed permutations,
//! self-conjugate diagrams in the n x n box, and fixed-point bit masks,
//! together with the covering relation and its multiplicities.
//!
//! Conventions.  A barred letter is encoded as m-bar = 2n+1-m, so the
//! one-line alphabet is 1 < 2 < ... < n < n-bar < ... < 1-bar = 1..2n.
//! A representative stores its strictly increasing first-row images only.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error("invalid index object: {0}")]
    InvalidIndexObject(String),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, IndexError> {
    Err(IndexError::InvalidIndexObject(msg.into()))
}

/// Strictly decreasing positive parts.  Used both for fixed-point indices
/// (when boxed in the staircase) and for general strict shapes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrictPartition {
    parts: Vec<u32>,
}

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self, IndexError> {
        if parts.contains(&0) {
            return invalid("zero part in strict partition");
        }
        if !parts.windows(2).all(|w| w[0] > w[1]) {
            return invalid(format!("parts {parts:?} are not strictly decreasing"));
        }
        Ok(StrictPartition { parts })
    }

    pub fn empty() -> Self {
        StrictPartition { parts: Vec::new() }
    }

    pub fn single(k: u32) -> Self {
        assert!(k > 0);
        StrictPartition { parts: vec![k] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// True when the shape fits in the staircase (n, n-1, ..., 1).
    pub fn fits_staircase(&self, n: u32) -> bool {
        self.parts.first().is_none_or(|&p| p <= n)
    }

    /// Componentwise containment of shapes.
    pub fn is_contained_in(&self, other: &StrictPartition) -> bool {
        self.parts
            .iter()
            .enumerate()
            .all(|(i, &p)| p <= other.part(i))
    }

    /// All strict shapes obtained by adding one box, staying inside the
    /// staircase, with the multiplicity of the corresponding divisor wall:
    /// 1 when the part count grows (a diagonal box appears), 2 otherwise.
    pub fn covers_in_staircase(&self, n: u32) -> Vec<Cover> {
        let mut out = Vec::new();
        let k = self.parts.len();
        for i in 0..k {
            let grown = self.parts[i] + 1;
            let bound = if i == 0 { n } else { self.parts[i - 1] - 1 };
            if grown <= bound {
                let mut parts = self.parts.clone();
                parts[i] = grown;
                out.push(Cover {
                    partition: StrictPartition { parts },
                    chevalley: 2,
                });
            }
        }
        if self.parts.last().map_or(n >= 1, |&p| p > 1) {
            let mut parts = self.parts.clone();
            parts.push(1);
            out.push(Cover {
                partition: StrictPartition { parts },
                chevalley: 1,
            });
        }
        out
    }

    /// One-box extensions allowed to leave the staircase in the first part
    /// (used by row-multiplication identities); length stays at most n.
    pub fn covers_unbounded_first_part(&self, n: u32) -> Vec<Cover> {
        let mut out = Vec::new();
        let k = self.parts.len();
        for i in 0..k {
            let grown = self.parts[i] + 1;
            let ok = if i == 0 {
                true
            } else {
                grown < self.parts[i - 1]
            };
            if ok {
                let mut parts = self.parts.clone();
                parts[i] = grown;
                out.push(Cover {
                    partition: StrictPartition { parts },
                    chevalley: 2,
                });
            }
        }
        if (k as u32) < n && self.parts.last().map_or(n >= 1, |&p| p > 1) {
            let mut parts = self.parts.clone();
            parts.push(1);
            out.push(Cover {
                partition: StrictPartition { parts },
                chevalley: 1,
            });
        }
        out
    }
}

impl fmt::Debug for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A one-box extension together with its wall-crossing multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub partition: StrictPartition,
    pub chevalley: u8,
}

/// All 2^n staircase shapes, by size ascending, ties by descending
/// lexicographic part order.  This is the canonical enumeration order.
pub fn enumerate(n: u32) -> Vec<StrictPartition> {
    let mut all = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let mut parts: Vec<u32> = (1..=n)
            .rev()
            .filter(|&p| mask & (1 << (p - 1)) != 0)
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        all.push(StrictPartition { parts });
    }
    all.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.parts.cmp(&a.parts)));
    all
}

/// Minimal-length coset representative: strictly increasing images
/// w(1) < ... < w(n) drawn from 1..2n, one letter from each pair {v, v-bar}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    n: u32,
    images: Vec<u32>,
}

impl SignedPerm {
    pub fn new(n: u32, images: Vec<u32>) -> Result<Self, IndexError> {
        if images.len() != n as usize {
            return invalid(format!("expected {n} images, got {}", images.len()));
        }
        if !images.windows(2).all(|w| w[0] < w[1]) {
            return invalid("images must be strictly increasing");
        }
        if images.iter().any(|&v| v < 1 || v > 2 * n) {
            return invalid(format!("image out of range 1..={}", 2 * n));
        }
        let mut seen_pair = vec![false; n as usize + 1];
        for &v in &images {
            let orig = if v <= n { v } else { 2 * n + 1 - v };
            if seen_pair[orig as usize] {
                return invalid(format!("both {orig} and its bar appear"));
            }
            seen_pair[orig as usize] = true;
        }
        Ok(SignedPerm { n, images })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// In the one-line alphabet, the letter at slot i (1-based).
    pub fn image(&self, i: usize) -> u32 {
        self.images[i - 1]
    }

    /// Pretty form with combining overlines on barred letters, e.g.
    /// "1 3 5\u{304} 4\u{304} 2\u{304}".
    pub fn barred_string(&self) -> String {
        let mut out = String::new();
        for (i, &v) in self.images.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            if v <= self.n {
                out.push_str(&v.to_string());
            } else {
                out.push_str(&(2 * self.n + 1 - v).to_string());
                out.push('\u{304}');
            }
        }
        out
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.barred_string())
    }
}

/// Self-conjugate diagram inside the n x n box, stored as n row lengths
/// (trailing zeros kept so the row count always equals n).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymDiagram {
    rows: Vec<u32>,
}

impl SymDiagram {
    pub fn new(rows: Vec<u32>) -> Result<Self, IndexError> {
        let n = rows.len() as u32;
        if rows.first().is_some_and(|&d| d > n) {
            return invalid(format!("first row exceeds the {n} x {n} box"));
        }
        for i in 1..=n {
            let count = rows.iter().filter(|&&d| d >= i).count() as u32;
            if rows[i as usize - 1] != count {
                return invalid(format!("rows {rows:?} are not self-conjugate at row {i}"));
            }
        }
        Ok(SymDiagram { rows })
    }

    pub fn n(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> u32 {
        self.rows.get(i - 1).copied().unwrap_or(0)
    }
}

impl fmt::Debug for SymDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{:?}", self.rows)
    }
}

/// Characteristic vector of the unbarred letters kept by a representative:
/// bit i (1-based) is set when i appears among the first-row images.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMask {
    bits: Vec<bool>,
}

impl BitMask {
    pub fn new(bits: Vec<bool>) -> Self {
        BitMask { bits }
    }

    pub fn from_ints(bits: &[u8]) -> Result<Self, IndexError> {
        if bits.iter().any(|&b| b > 1) {
            return invalid("mask entries must be 0 or 1");
        }
        Ok(BitMask {
            bits: bits.iter().map(|&b| b == 1).collect(),
        })
    }

    pub fn n(&self) -> u32 {
        self.bits.len() as u32
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits[i - 1]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn as_ints(&self) -> Vec<u8> {
        self.bits.iter().map(|&b| b as u8).collect()
    }
}

impl fmt::Debug for BitMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{:?}", self.as_ints())
    }
}

/// d_i = n + i - w(i).
pub fn perm_to_diagram(w: &SignedPerm) -> SymDiagram {
    let n = w.n();
    let rows: Vec<u32> = (1..=n as usize)
        .map(|i| n + i as u32 - w.image(i))
        .collect();
    SymDiagram { rows }
}

/// w(i) = n + i - d_i; validates the result.
pub fn diagram_to_perm(d: &SymDiagram) -> Result<SignedPerm, IndexError> {
    let n = d.n();
    let images: Vec<u32> = (1..=n as usize).map(|i| n + i as u32 - d.row(i)).collect();
    SignedPerm::new(n, images)
}

/// lambda_i = d_i - i + 1 on the rows meeting the diagonal.
pub fn diagram_to_strict(d: &SymDiagram) -> StrictPartition {
    let parts: Vec<u32> = d
        .rows
        .iter()
        .enumerate()
        .take_while(|&(i, &di)| di > i as u32)
        .map(|(i, &di)| di - i as u32)
        .collect();
    StrictPartition { parts }
}

/// Rebuild the self-conjugate diagram: d_i = lambda_i + i - 1 above the
/// diagonal, and column counts below it.
pub fn strict_to_diagram(lambda: &StrictPartition, n: u32) -> Result<SymDiagram, IndexError> {
    if !lambda.fits_staircase(n) {
        return invalid(format!(
            "{lambda:?} does not fit the staircase of order {n}"
        ));
    }
    let k = lambda.len();
    let mut rows = vec![0u32; n as usize];
    for (i, &p) in lambda.parts.iter().enumerate() {
        rows[i] = p + i as u32;
        // p + i = lambda_i + (i+1) - 1 with 1-based row index i+1.
    }
    for i in (k + 1)..=(n as usize) {
        rows[i - 1] = lambda.parts[..k]
            .iter()
            .enumerate()
            .filter(|&(j, &p)| p + j as u32 >= i as u32)
            .count() as u32;
    }
    Ok(SymDiagram { rows })
}

/// delta_i = 1 exactly when i = n + 1 - lambda_j for some part.
pub fn strict_to_mask(lambda: &StrictPartition, n: u32) -> Result<BitMask, IndexError> {
    if !lambda.fits_staircase(n) {
        return invalid(format!(
            "{lambda:?} does not fit the staircase of order {n}"
        ));
    }
    let mut bits = vec![false; n as usize];
    for &p in &lambda.parts {
        bits[(n - p) as usize] = true;
    }
    Ok(BitMask { bits })
}

/// Parts n + 1 - i over the set positions, in decreasing order.
pub fn mask_to_strict(mask: &BitMask) -> StrictPartition {
    let n = mask.n();
    let parts: Vec<u32> = (1..=n as usize)
        .filter(|&i| mask.bit(i))
        .map(|i| n + 1 - i as u32)
        .collect();
    StrictPartition { parts }
}

pub fn strict_to_perm(lambda: &StrictPartition, n: u32) -> Result<SignedPerm, IndexError> {
    diagram_to_perm(&strict_to_diagram(lambda, n)?)
}

pub fn perm_to_strict(w: &SignedPerm) -> StrictPartition {
    diagram_to_strict(&perm_to_diagram(w))
}

/// Boxes (i, j), 1-based, of the shifted shape: row i spans i..=d_i on the
/// rows meeting the diagonal.
pub fn shifted_boxes(lambda: &StrictPartition, n: u32) -> Result<Vec<(u32, u32)>, IndexError> {
    let d = strict_to_diagram(lambda, n)?;
    let mut out = Vec::new();
    for i in 1..=lambda.len() as u32 {
        for j in i..=d.row(i as usize) {
            out.push((i, j));
        }
    }
    Ok(out)
}

/// Box-by-box comparison of the two classifications of a covering move:
/// the added diagram boxes (one diagonal box or a mirror pair) must agree
/// with the stored multiplicity.
pub fn classify_cover_boxes(
    lambda: &StrictPartition,
    cover: &StrictPartition,
    n: u32,
) -> Result<u8, IndexError> {
    let d0 = strict_to_diagram(lambda, n)?;
    let d1 = strict_to_diagram(cover, n)?;
    let mut added = Vec::new();
    for i in 1..=n as usize {
        for j in (d0.row(i) + 1)..=d1.row(i) {
            added.push((i as u32, j));
        }
    }
    match added.as_slice() {
        [(i, j)] if i == j => Ok(1),
        [(i1, j1), (i2, j2)] if i1 == j2 && j1 == i2 && i1 != j1 => Ok(2),
        _ => invalid(format!("{lambda:?} -> {cover:?} is not a covering move")),
    }
}
