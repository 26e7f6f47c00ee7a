//! Elementary, complete homogeneous and monomial symmetric polynomials,
//! evaluated on explicit lists of polynomial arguments.

use super::Poly;

/// Elementary symmetric polynomial `e_j` of the given arguments.
/// `e_0 = 1`; `e_j = 0` once `j` exceeds the argument count.
pub fn sym_e(j: usize, vars: &[Poly]) -> Poly {
    if j > vars.len() {
        return Poly::zero();
    }
    let mut e: Vec<Poly> = Vec::with_capacity(j + 1);
    e.push(Poly::one());
    for _ in 0..j {
        e.push(Poly::zero());
    }
    for v in vars {
        if v.is_zero() {
            continue;
        }
        for i in (1..=j).rev() {
            let bump = &e[i - 1] * v;
            e[i] += &bump;
        }
    }
    e.pop().expect("length j+1")
}

/// Complete homogeneous symmetric polynomial `h_j` of the given arguments.
/// `h_0 = 1`; with no arguments `h_j = 0` for `j > 0`.
pub fn sym_h(j: usize, vars: &[Poly]) -> Poly {
    if j == 0 {
        return Poly::one();
    }
    if vars.is_empty() {
        return Poly::zero();
    }
    let mut h: Vec<Poly> = vec![Poly::zero(); j + 1];
    h[0] = Poly::one();
    for v in vars {
        for i in 1..=j {
            let bump = &h[i - 1] * v;
            h[i] += &bump;
        }
    }
    h.pop().expect("length j+1")
}

/// Monomial symmetric polynomial `m_lambda(x_1..x_n)`.
pub fn sym_m(lambda: &[u32], n: usize) -> Poly {
    let vars: Vec<Poly> = (1..=n as u32).map(Poly::x).collect();
    sym_m_list(lambda, &vars)
}

/// `m_lambda` summed over distinct rearrangements of the exponent vector.
pub fn sym_m_list(lambda: &[u32], vars: &[Poly]) -> Poly {
    assert!(
        lambda.windows(2).all(|w| w[0] >= w[1]),
        "partition parts must be non-increasing"
    );
    if lambda.len() > vars.len() {
        return Poly::zero();
    }
    let mut exps: Vec<u32> = lambda.to_vec();
    exps.resize(vars.len(), 0);
    exps.sort_unstable();
    let mut out = Poly::zero();
    loop {
        let mut t = Poly::one();
        for (v, &e) in vars.iter().zip(&exps) {
            if e > 0 {
                t = &t * &v.pow(e);
            }
        }
        out += &t;
        if !next_permutation(&mut exps) {
            break;
        }
    }
    out
}

/// Lexicographic successor in place; false when the sequence was the last.
fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All partitions of `k` with at most `max_parts` parts, each part at most
/// `max_part`, in descending lexicographic order.
pub fn partitions_of(k: u32, max_parts: usize, max_part: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: u32, slots: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        let hi = cap.min(rem);
        for part in (1..=hi).rev() {
            cur.push(part);
            rec(rem - part, slots - 1, part, cur, out);
            cur.pop();
        }
    }
    rec(k, max_parts, max_part, &mut cur, &mut out);
    out
}

/// Convenience wrapper: the polynomial arguments `x_1..x_n`.
pub fn x_vars(n: u32) -> Vec<Poly> {
    (1..=n).map(Poly::x).collect()
}

/// Convenience wrapper: generic parameters `a_lo..=a_hi` as polynomials.
pub fn a_vars(lo: u32, hi: u32) -> Vec<Poly> {
    (lo..=hi).map(Poly::a).collect()
}
