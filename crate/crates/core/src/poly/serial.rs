//! JSON and LaTeX renderings of polynomials.
//!
//! The JSON form lists the occurring variables once, in canonical order,
//! and each term as a decimal coefficient string plus an exponent vector
//! parallel to that list.  Terms appear leading-first.  Coefficients are
//! strings because they are arbitrary-precision integers.

use super::{Monomial, Poly, VarId};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

impl Poly {
    pub fn to_json(&self) -> PolyJson {
        let vars: Vec<VarId> = self.vars().into_iter().collect();
        let terms = self
            .terms()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                exps: vars.iter().map(|&v| m.exp_of(v)).collect(),
            })
            .collect();
        PolyJson {
            vars: vars.iter().map(VarId::name).collect(),
            terms,
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Poly, String> {
        let vars: Vec<VarId> = j
            .vars
            .iter()
            .map(|s| VarId::parse(s).ok_or_else(|| format!("bad variable name {s:?}")))
            .collect::<Result<_, _>>()?;
        let mut out = Poly::zero();
        for t in &j.terms {
            if t.exps.len() != vars.len() {
                return Err("exponent vector length mismatch".into());
            }
            let c = BigInt::from_str(&t.coeff).map_err(|e| e.to_string())?;
            let m = Monomial::from_pairs(vars.iter().copied().zip(t.exps.iter().copied()));
            out.add_term(m, &c);
        }
        Ok(out)
    }

    /// Expanded LaTeX rendering, leading term first.
    pub fn latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                let _ = write!(out, "{abs}");
            } else {
                if !num_traits::One::is_one(&abs) {
                    let _ = write!(out, "{abs}");
                }
                for (v, e) in m.vars() {
                    out.push_str(&latex_var(v));
                    if e > 1 {
                        if e < 10 {
                            let _ = write!(out, "^{e}");
                        } else {
                            let _ = write!(out, "^{{{e}}}");
                        }
                    }
                }
            }
        }
        out
    }
}

fn latex_var(v: VarId) -> String {
    let letter = match v.kind() {
        super::VarKind::X => 'x',
        super::VarKind::A => 'a',
    };
    if v.index() < 10 {
        format!("{letter}_{}", v.index())
    } else {
        format!("{letter}_{{{}}}", v.index())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        Poly::from_json(&j).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn json_round_trip() {
        let p = &(&Poly::x(1).pow(2) * &Poly::x(2)).scale(&BigInt::from(4))
            - &(&Poly::a(2) * &Poly::x(2)).scale(&BigInt::from(7));
        let j = p.to_json();
        assert_eq!(j.vars, vec!["x1", "x2", "a2"]);
        assert_eq!(j.terms[0].coeff, "4");
        assert_eq!(j.terms[0].exps, vec![2, 1, 0]);
        assert_eq!(Poly::from_json(&j).unwrap(), p);
        let s = serde_json::to_string(&p).unwrap();
        let back: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn latex_rendering() {
        let p = &(&Poly::x(1).pow(2) * &Poly::x(2)).scale(&BigInt::from(4)) - &Poly::a(2);
        assert_eq!(p.latex(), "4x_1^2x_2 - a_2");
        assert_eq!(Poly::zero().latex(), "0");
        assert_eq!((&Poly::zero() - &Poly::x(1)).latex(), "-x_1");
    }
}
