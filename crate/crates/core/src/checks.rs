//! Named invariant suites: each one re-derives a family of identities
//! from scratch and reports machine-readable pass/fail cases.  All
//! randomness flows from the configured seed, so identical
//! configurations produce identical reports.

use crate::equivariant::{
    beta_expand, diagonal_product, divisor_restriction, giambelli_check, recurrence_solve,
    restriction_alphabet, structure_constants, table_from_recurrence, EqError, RestrictionTable,
};
use crate::index::{
    diagram_to_perm, diagram_to_strict, enumerate, mask_to_strict, perm_to_diagram, perm_to_strict,
    strict_to_diagram, strict_to_mask, strict_to_perm, SignedPerm, StrictPartition,
};
use crate::poly::{Poly, Rat, VarId};
use crate::presentation::{
    normal_form, pfaffian_x, phi_vector, relation_x, strict_image_rank, Presentation,
};
use crate::qfun::{
    generating_function_defect, nimmo_eval, square_relation_with, Alphabet, QTables,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Every suite name accepted by `run_suite`, in the order `all` runs them.
pub const SUITES: &[&str] = &[
    "bijection",
    "recurrence",
    "closedforms",
    "qoracle",
    "pieri",
    "genfun",
    "square",
    "rectangle",
    "vanishing",
    "giambelli",
    "structure",
    "positivity",
    "presentation",
];

/// Upper bound on the order: tables have 4^n polynomial cells.
pub const MAX_ORDER: u32 = 8;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckConfig {
    pub n: u32,
    pub seed: u64,
    /// Sample count for the point-based oracles.
    pub points: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub cases: Vec<CaseOutcome>,
}

/// One `check` invocation: the requested suite (possibly `all`) expanded
/// into individual suite reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRun {
    pub schema: String,
    pub suite: String,
    pub n: u32,
    pub seed: u64,
    pub points: u32,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

struct Suite {
    name: &'static str,
    cases: Vec<CaseOutcome>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            cases: Vec::new(),
        }
    }

    fn run(&mut self, name: impl Into<String>, body: impl FnOnce() -> Result<(), String>) {
        match body() {
            Ok(()) => self.cases.push(CaseOutcome {
                name: name.into(),
                passed: true,
                detail: None,
            }),
            Err(detail) => self.cases.push(CaseOutcome {
                name: name.into(),
                passed: false,
                detail: Some(detail),
            }),
        }
    }

    fn finish(self) -> SuiteReport {
        let passed = self.cases.iter().all(|c| c.passed);
        SuiteReport {
            suite: self.name.to_string(),
            passed,
            cases: self.cases,
        }
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(expected: &T, actual: &T) -> Result<(), String> {
    if expected == actual {
        Ok(())
    } else {
        Err(format!("expected {expected:?}, actual {actual:?}"))
    }
}

fn err_str(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Distinct positive integers, uniform on 1..=10^6, as exact rationals.
fn sample_distinct(rng: &mut ChaCha8Rng, count: usize) -> Vec<Rat> {
    let mut seen = BTreeSet::new();
    while seen.len() < count {
        seen.insert(rng.gen_range(1..=1_000_000u32));
    }
    seen.into_iter()
        .map(|v| Rat::from_integer(v.into()))
        .collect()
}

/// Run one named suite (or `all`) under the configuration.
pub fn run_suite(name: &str, cfg: &CheckConfig) -> Result<CheckRun, EqError> {
    if cfg.n < 1 || cfg.n > MAX_ORDER {
        return Err(EqError::BadInput(format!(
            "order must be between 1 and {MAX_ORDER}, got {}",
            cfg.n
        )));
    }
    if cfg.points < 1 {
        return Err(EqError::BadInput("need at least one sample point".into()));
    }
    let selected: Vec<&'static str> = if name == "all" {
        SUITES.to_vec()
    } else {
        match SUITES.iter().find(|s| **s == name) {
            Some(s) => vec![*s],
            None => {
                return Err(EqError::BadInput(format!(
                    "unknown suite '{name}'; expected one of {} or all",
                    SUITES.join(", ")
                )))
            }
        }
    };
    let needs_table = selected.iter().any(|s| {
        matches!(
            *s,
            "recurrence"
                | "closedforms"
                | "giambelli"
                | "structure"
                | "positivity"
                | "presentation"
        )
    });
    let table = if needs_table {
        Some(RestrictionTable::build(cfg.n)?)
    } else {
        None
    };
    let mut suites = Vec::new();
    for s in selected {
        let report = match s {
            "bijection" => suite_bijection(cfg),
            "recurrence" => suite_recurrence(cfg, table.as_ref().unwrap()),
            "closedforms" => suite_closedforms(cfg, table.as_ref().unwrap()),
            "qoracle" => suite_qoracle(cfg),
            "pieri" => suite_pieri(cfg),
            "genfun" => suite_genfun(cfg),
            "square" => suite_square(cfg),
            "rectangle" => suite_rectangle(cfg),
            "vanishing" => suite_vanishing(cfg),
            "giambelli" => suite_giambelli(cfg, table.as_ref().unwrap()),
            "structure" => suite_structure(cfg, table.as_ref().unwrap()),
            "positivity" => suite_positivity(cfg, table.as_ref().unwrap()),
            "presentation" => suite_presentation(cfg, table.as_ref().unwrap()),
            _ => unreachable!(),
        };
        suites.push(report);
    }
    let passed = suites.iter().all(|s| s.passed);
    Ok(CheckRun {
        schema: "lgschub/1".into(),
        suite: name.to_string(),
        n: cfg.n,
        seed: cfg.seed,
        points: cfg.points,
        passed,
        suites,
    })
}

/// Four-way index correspondences round-trip on all 2^m indices for every
/// order m up to n, plus the worked order-5 example.
fn suite_bijection(cfg: &CheckConfig) -> SuiteReport {
    let mut suite = Suite::new("bijection");
    for m in 1..=cfg.n {
        suite.run(format!("round-trip-order-{m}"), || {
            let shapes = enumerate(m);
            if shapes.len() != 1usize << m {
                return Err(format!(
                    "expected {} indices, enumerated {}",
                    1usize << m,
                    shapes.len()
                ));
            }
            for lam in &shapes {
                let d = strict_to_diagram(lam, m).map_err(err_str)?;
                expect_eq(lam, &diagram_to_strict(&d))?;
                let mask = strict_to_mask(lam, m).map_err(err_str)?;
                expect_eq(lam, &mask_to_strict(&mask))?;
                let w = strict_to_perm(lam, m).map_err(err_str)?;
                expect_eq(lam, &perm_to_strict(&w))?;
                let d2 = perm_to_diagram(&w);
                expect_eq(&d, &d2)?;
                expect_eq(&w, &diagram_to_perm(&d2).map_err(err_str)?)?;
            }
            Ok(())
        });
    }
    suite.run("worked-example-order-5", || {
        let w = SignedPerm::new(5, vec![1, 3, 4, 6, 9]).map_err(err_str)?;
        let d = perm_to_diagram(&w);
        expect_eq(&vec![5u32, 4, 4, 3, 1], &d.rows().to_vec())?;
        let lam = diagram_to_strict(&d);
        expect_eq(&vec![5u32, 3, 2], &lam.parts().to_vec())?;
        let mask = strict_to_mask(&lam, 5).map_err(err_str)?;
        let bits: Vec<u8> = mask.bits().iter().map(|&b| u8::from(b)).collect();
        expect_eq(&vec![1u8, 0, 1, 1, 0], &bits)
    });
    suite.finish()
}

/// The table satisfies the divisor recurrence: rebuilt symbolically from
/// the diagonal seeds it agrees entrywise, and per-column rational-point
/// solves agree with direct evaluation.
fn suite_recurrence(cfg: &CheckConfig, table: &RestrictionTable) -> SuiteReport {
    let mut suite = Suite::new("recurrence");
    suite.run("symbolic-rebuild", || {
        let rebuilt = table_from_recurrence(cfg.n).map_err(err_str)?;
        for lam in table.shapes() {
            for mu in table.shapes() {
                if table.entry(lam, mu) != rebuilt.entry(lam, mu) {
                    return Err(format!(
                        "entry ({lam}, {mu}): expected {}, actual {}",
                        table.entry(lam, mu),
                        rebuilt.entry(lam, mu)
                    ));
                }
            }
        }
        Ok(())
    });
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for mu in table.shapes() {
        suite.run(format!("column-{mu}-points"), || {
            let mut resamples = 0u32;
            for _ in 0..cfg.points {
                let col = loop {
                    let point = sample_distinct(&mut rng, cfg.n as usize);
                    match recurrence_solve(mu, &point, cfg.n) {
                        Ok(col) => break (point, col),
                        Err(EqError::DegeneratePoint(_)) if resamples < 100 => resamples += 1,
                        Err(e) => return Err(err_str(e)),
                    }
                };
                let (point, col) = col;
                let pt = crate::equivariant::point_map(&point);
                for (lam, via_rec) in &col {
                    let direct = table.entry(lam, mu).eval(&pt);
                    if *via_rec != direct {
                        return Err(format!(
                            "shape {lam} at {mu}: recurrence {via_rec}, table {direct}"
                        ));
                    }
                }
            }
            Ok(())
        });
    }
    suite.finish()
}

/// Closed forms inside the table: the diagonal product, the divisor row,
/// the two-row expressions in special classes, and (at order 5) the
/// worked top-cell example.
fn suite_closedforms(cfg: &CheckConfig, table: &RestrictionTable) -> SuiteReport {
    let n = cfg.n;
    let mut suite = Suite::new("closedforms");
    suite.run("diagonal-product", || {
        for lam in table.shapes() {
            let closed = diagonal_product(lam, n).map_err(err_str)?;
            expect_eq(table.entry(lam, lam), &closed).map_err(|d| format!("shape {lam}: {d}"))?;
        }
        Ok(())
    });
    suite.run("divisor-row", || {
        let one = StrictPartition::single(1);
        for mu in table.shapes() {
            let closed = divisor_restriction(mu, n).map_err(err_str)?;
            expect_eq(table.entry(&one, mu), &closed)
                .map_err(|d| format!("fixed point {mu}: {d}"))?;
        }
        Ok(())
    });
    // Restriction vector of a one-row class, or zero beyond the top.
    let row_or_zero = |k: u32| -> Vec<Poly> {
        if k > n {
            vec![Poly::zero(); table.shapes().len()]
        } else {
            table.row(&StrictPartition::single(k)).to_vec()
        }
    };
    let pointwise =
        |a: &[Poly], b: &[Poly]| -> Vec<Poly> { a.iter().zip(b).map(|(p, q)| p * q).collect() };
    let scaled = |a: &[Poly], c: &Poly| -> Vec<Poly> { a.iter().map(|p| p * c).collect() };
    let row_sub = |a: &mut Vec<Poly>, b: &[Poly]| {
        for (p, q) in a.iter_mut().zip(b) {
            *p -= q;
        }
    };
    for k in 2..=n {
        suite.run(format!("two-row-({k},1)"), || {
            let lhs = table.row(&StrictPartition::new(vec![k, 1]).map_err(err_str)?);
            let mut rhs = pointwise(&row_or_zero(k), &row_or_zero(1));
            row_sub(&mut rhs, &scaled(&row_or_zero(k + 1), &Poly::int(2)));
            let coeff = Poly::x(n - k + 1).scale(&BigInt::from(2));
            row_sub(&mut rhs, &scaled(&row_or_zero(k), &coeff));
            for (mu, (l, r)) in table.shapes().iter().zip(lhs.iter().zip(&rhs)) {
                expect_eq(l, r).map_err(|d| format!("fixed point {mu}: {d}"))?;
            }
            Ok(())
        });
    }
    for k in 3..=n {
        suite.run(format!("two-row-({k},2)"), || {
            let lhs = table.row(&StrictPartition::new(vec![k, 2]).map_err(err_str)?);
            let mut rhs = pointwise(&row_or_zero(k), &row_or_zero(2));
            row_sub(
                &mut rhs,
                &scaled(
                    &pointwise(&row_or_zero(k + 1), &row_or_zero(1)),
                    &Poly::int(2),
                ),
            );
            for (p, q) in rhs
                .iter_mut()
                .zip(&scaled(&row_or_zero(k + 2), &Poly::int(2)))
            {
                *p += q;
            }
            let x1 = Poly::x(n - k + 1);
            row_sub(
                &mut rhs,
                &scaled(
                    &pointwise(&row_or_zero(k), &row_or_zero(1)),
                    &x1.scale(&BigInt::from(2)),
                ),
            );
            // Classes beyond the top vanish, and only then does the
            // coefficient of the (k+1)-term get built: at k = n it would
            // reference a variable below the range.
            if k < n {
                let coeff = (&(&x1 + &Poly::x(n - k)) + &Poly::x(n)).scale(&BigInt::from(2));
                for (p, q) in rhs.iter_mut().zip(&scaled(&row_or_zero(k + 1), &coeff)) {
                    *p += q;
                }
            }
            let coeff = (&(&x1 * &x1) + &(&x1 * &Poly::x(n))).scale(&BigInt::from(2));
            for (p, q) in rhs.iter_mut().zip(&scaled(&row_or_zero(k), &coeff)) {
                *p += q;
            }
            for (mu, (l, r)) in table.shapes().iter().zip(lhs.iter().zip(&rhs)) {
                expect_eq(l, r).map_err(|d| format!("fixed point {mu}: {d}"))?;
            }
            Ok(())
        });
    }
    if n == 5 {
        suite.run("top-cell-example-order-5", || {
            let lam = StrictPartition::new(vec![5, 3]).map_err(err_str)?;
            let x = |i: u32| Poly::x(i);
            let factors = [
                x(1).scale(&BigInt::from(2)),
                &x(1) + &x(3),
                &x(1) - &x(5),
                &x(1) - &x(4),
                &x(1) - &x(2),
                x(3).scale(&BigInt::from(2)),
                &x(3) - &x(5),
                &x(3) - &x(4),
            ];
            let mut expected = Poly::one();
            for f in &factors {
                expected = &expected * f;
            }
            expect_eq(&expected, table.entry(&lam, &lam))
        });
    }
    suite.finish()
}

/// The assembled factorial functions agree with the bordered-Pfaffian
/// evaluation at random rational points, shape by shape.
fn suite_qoracle(cfg: &CheckConfig) -> SuiteReport {
    let mut suite = Suite::new("qoracle");
    let mut tables = QTables::new(Alphabet::generic(cfg.n));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for lam in enumerate(cfg.n) {
        suite.run(format!("shape-{lam}"), || {
            let assembled = tables.q(lam.parts()).map_err(err_str)?;
            let acount = lam.part(0).saturating_sub(1) as usize;
            let mut resamples = 0u32;
            for _ in 0..cfg.points {
                let (xpt, apt, via_nimmo) = loop {
                    let xpt = sample_distinct(&mut rng, cfg.n as usize);
                    let apt = sample_distinct(&mut rng, acount);
                    match nimmo_eval(lam.parts(), &xpt, &apt) {
                        Ok(v) => break (xpt, apt, v),
                        Err(crate::qfun::QError::DegeneratePoint(_)) if resamples < 100 => {
                            resamples += 1
                        }
                        Err(e) => return Err(err_str(e)),
                    }
                };
                let mut vals: BTreeMap<VarId, Rat> = xpt
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (VarId::x(i as u32 + 1), v.clone()))
                    .collect();
                for (j, v) in apt.iter().enumerate() {
                    vals.insert(VarId::a(j as u32 + 2), v.clone());
                }
                let direct = assembled.eval(&vals);
                if direct != via_nimmo {
                    return Err(format!(
                        "at x = {xpt:?}, a = {apt:?}: assembled {direct}, oracle {via_nimmo}"
                    ));
                }
            }
            Ok(())
        });
    }
    suite.finish()
}

/// The one-box growth identity on normalized classes, symbolically in the
/// deformation parameters.
fn suite_pieri(cfg: &CheckConfig) -> SuiteReport {
    let n = cfg.n;
    let mut suite = Suite::new("pieri");
    let mut tables = QTables::new(Alphabet::generic(n));
    for lam in enumerate(n) {
        suite.run(format!("shape-{lam}"), || {
            let two = BigInt::from(2);
            let p_one = tables.onerow(1).exact_div_int(&two).map_err(err_str)?;
            let mut factor = p_one;
            for &part in lam.parts() {
                factor -= &Poly::a(part + 1);
            }
            let p_lam = tables
                .q(lam.parts())
                .map_err(err_str)?
                .exact_div_int(&two.pow(lam.len() as u32))
                .map_err(err_str)?;
            let lhs = &factor * &p_lam;
            let mut rhs = Poly::zero();
            for cover in lam.covers_unbounded_first_part(n) {
                let lp = cover.partition;
                let p_cover = tables
                    .q(lp.parts())
                    .map_err(err_str)?
                    .exact_div_int(&two.pow(lp.len() as u32))
                    .map_err(err_str)?;
                rhs += &p_cover;
            }
            expect_eq(&lhs, &rhs)
        });
    }
    suite.finish()
}

/// The one-row generating function matches the rational product through
/// degree 2n.
fn suite_genfun(cfg: &CheckConfig) -> SuiteReport {
    let mut suite = Suite::new("genfun");
    suite.run("series-defect", || {
        let defect = generating_function_defect(&Alphabet::generic(cfg.n), 2 * cfg.n as usize);
        if defect.is_zero() {
            Ok(())
        } else {
            let bad = defect
                .coeffs()
                .iter()
                .position(|c| !c.is_zero())
                .unwrap_or(0);
            Err(format!(
                "first nonzero coefficient at degree {bad}: {}",
                defect.coeffs()[bad]
            ))
        }
    });
    suite.finish()
}

/// The diagonal (square) relation vanishes symbolically.
fn suite_square(cfg: &CheckConfig) -> SuiteReport {
    let mut suite = Suite::new("square");
    let alph = Alphabet::generic(cfg.n);
    for k in 1..=cfg.n {
        suite.run(format!("index-{k}"), || {
            let rel = square_relation_with(k, &alph).map_err(err_str)?;
            if rel.is_zero() {
                Ok(())
            } else {
                Err(format!("nonzero relation: {rel}"))
            }
        });
    }
    suite.finish()
}

/// The rectangle relation binding four neighbouring two-row functions.
fn suite_rectangle(cfg: &CheckConfig) -> SuiteReport {
    let n = cfg.n;
    let mut suite = Suite::new("rectangle");
    let mut tables = QTables::new(Alphabet::generic(n));
    for k in 2..=n {
        for l in 1..k {
            suite.run(format!("pair-({k},{l})"), || {
                let a = |j: u32| Poly::a(j);
                let mut lhs = tables.entry(k + 1, l).map_err(err_str)?;
                lhs += &tables.entry(k, l + 1).map_err(err_str)?;
                lhs += &(&tables.entry(k, l).map_err(err_str)? * &(&a(k + 1) + &a(l + 1)));
                let qk = tables.onerow(k);
                let ql = tables.onerow(l);
                let mut rhs = &qk * &tables.onerow(l + 1);
                rhs -= &(&tables.onerow(k + 1) * &ql);
                rhs += &(&(&qk * &ql) * &(&a(l + 1) - &a(k + 1)));
                expect_eq(&lhs, &rhs)
            });
        }
    }
    suite.finish()
}

/// Shapes that do not fit the staircase specialize to zero at every
/// fixed point (tested for first part at most n+2 and length at most
/// n+1).
fn suite_vanishing(cfg: &CheckConfig) -> SuiteReport {
    let n = cfg.n;
    let mut suite = Suite::new("vanishing");
    let universe: Vec<StrictPartition> = enumerate(n + 2)
        .into_iter()
        .filter(|lam| lam.len() <= n as usize + 1 && !lam.fits_staircase(n))
        .collect();
    for mu in enumerate(n) {
        suite.run(format!("fixed-point-{mu}"), || {
            let alph = restriction_alphabet(&mu, n).map_err(err_str)?;
            let mut tables = QTables::new(alph);
            for lam in &universe {
                let val = tables.q(lam.parts()).map_err(err_str)?;
                if !val.is_zero() {
                    return Err(format!("shape {lam} specializes to {val}"));
                }
            }
            Ok(())
        });
    }
    suite.finish()
}

/// The Pfaffian expansion of every class into two-row classes holds as an
/// identity of restriction vectors.
fn suite_giambelli(cfg: &CheckConfig, table: &RestrictionTable) -> SuiteReport {
    let _ = cfg;
    let mut suite = Suite::new("giambelli");
    for lam in table.shapes() {
        suite.run(format!("shape-{lam}"), || {
            if giambelli_check(lam, table).map_err(err_str)? {
                Ok(())
            } else {
                Err("restriction vectors differ".into())
            }
        });
    }
    suite.finish()
}

/// The full multiplication table: residual equations, symmetry, grading,
/// support, the divisor rows, and the classical limit.
fn suite_structure(cfg: &CheckConfig, table: &RestrictionTable) -> SuiteReport {
    let n = cfg.n;
    let mut suite = Suite::new("structure");
    let shapes = table.shapes().to_vec();
    let mut products: BTreeMap<
        (StrictPartition, StrictPartition),
        BTreeMap<StrictPartition, Poly>,
    > = BTreeMap::new();
    for (i, w) in shapes.iter().enumerate() {
        for v in &shapes[i..] {
            let key = (w.clone(), v.clone());
            suite.run(format!("product-{w}-{v}"), || {
                let sc = structure_constants(w, v, table).map_err(err_str)?;
                let swapped = structure_constants(v, w, table).map_err(err_str)?;
                if sc.coeffs() != swapped.coeffs() {
                    return Err("coefficients change under swapping the factors".into());
                }
                for (u, c) in sc.coeffs() {
                    if !(w.is_contained_in(u) && v.is_contained_in(u)) {
                        return Err(format!("coefficient outside the support at {u}"));
                    }
                    if u.size() > w.size() + v.size() {
                        return Err(format!("degree bound violated at {u}"));
                    }
                    let deg = w.size() + v.size() - u.size();
                    if !c.is_homogeneous_of(deg) {
                        return Err(format!(
                            "coefficient of {u} not homogeneous of degree {deg}: {c}"
                        ));
                    }
                }
                products.insert(key, sc.coeffs().clone());
                Ok(())
            });
        }
    }
    suite.run("divisor-rows", || {
        let one = StrictPartition::single(1);
        for lam in &shapes {
            let key = if &one <= lam {
                (one.clone(), lam.clone())
            } else {
                (lam.clone(), one.clone())
            };
            let got = products
                .get(&key)
                .ok_or_else(|| format!("product with {lam} missing"))?;
            let mut expected = BTreeMap::new();
            let self_coeff = divisor_restriction(lam, n).map_err(err_str)?;
            if !self_coeff.is_zero() {
                expected.insert(lam.clone(), self_coeff);
            }
            for cover in lam.covers_in_staircase(n) {
                expected.insert(cover.partition, Poly::int(i64::from(cover.chevalley)));
            }
            if got != &expected {
                return Err(format!(
                    "divisor row at {lam}: expected {expected:?}, actual {got:?}"
                ));
            }
        }
        Ok(())
    });
    if n >= 2 {
        suite.run("divisor-square-identity", || {
            let one = StrictPartition::single(1);
            let got = products
                .get(&(one.clone(), one.clone()))
                .ok_or("divisor square missing")?;
            let mut expected = BTreeMap::new();
            expected.insert(one, Poly::x(n).scale(&BigInt::from(2)));
            expected.insert(StrictPartition::single(2), Poly::int(2));
            if got == &expected {
                Ok(())
            } else {
                Err(format!("expected {expected:?}, actual {got:?}"))
            }
        });
    }
    suite.run("classical-limit", || {
        let kill: BTreeMap<VarId, Poly> = (1..=n).map(|i| (VarId::x(i), Poly::zero())).collect();
        for ((w, v), coeffs) in &products {
            for (u, c) in coeffs {
                let c0 = c.substitute(&kill);
                if c0.is_zero() {
                    continue;
                }
                if c0.total_degree() != Some(0) {
                    return Err(format!(
                        "limit of the coefficient of {u} in {w} * {v} is not constant: {c0}"
                    ));
                }
                if u.size() != w.size() + v.size() {
                    return Err(format!(
                        "positive-degree coefficient of {u} in {w} * {v} survives the limit"
                    ));
                }
            }
        }
        Ok(())
    });
    suite.finish()
}

/// Every structure constant is a nonnegative integer combination of the
/// simple-root monomials.
fn suite_positivity(cfg: &CheckConfig, table: &RestrictionTable) -> SuiteReport {
    let n = cfg.n;
    let mut suite = Suite::new("positivity");
    let shapes = table.shapes().to_vec();
    for w in &shapes {
        suite.run(format!("products-of-{w}"), || {
            for v in &shapes {
                let sc = structure_constants(w, v, table).map_err(err_str)?;
                for (u, c) in sc.coeffs() {
                    let exp = beta_expand(c, n).map_err(err_str)?;
                    if !exp.all_nonneg_integers() {
                        return Err(format!(
                            "coefficient of {u} in {w} * {v} is not a nonnegative integer \
                             combination: {c}"
                        ));
                    }
                }
            }
            Ok(())
        });
    }
    suite.finish()
}

/// The quotient-ring presentation: relations reduce to zero and map to
/// zero, Pfaffian classes map onto restriction rows, strict-monomial
/// images are independent, and in-ring products match the fixed-point
/// solve.
fn suite_presentation(cfg: &CheckConfig, table: &RestrictionTable) -> SuiteReport {
    let n = cfg.n;
    let mut suite = Suite::new("presentation");
    for k in 1..=n {
        suite.run(format!("relation-({k},{k})-normal-form"), || {
            let rel = relation_x(k, k, n).map_err(err_str)?;
            let nf = normal_form(&rel, n).map_err(err_str)?;
            if nf.is_zero() {
                Ok(())
            } else {
                Err(format!("reduces to {nf}"))
            }
        });
        suite.run(format!("relation-({k},{k})-image"), || {
            let rel = relation_x(k, k, n).map_err(err_str)?;
            let image = phi_vector(&rel, table).map_err(err_str)?;
            for (mu, entry) in table.shapes().iter().zip(&image) {
                if !entry.is_zero() {
                    return Err(format!("nonzero image {entry} at fixed point {mu}"));
                }
            }
            Ok(())
        });
    }
    suite.run("pfaffian-images", || {
        for lam in table.shapes() {
            let pf = pfaffian_x(lam, n).map_err(err_str)?;
            let image = phi_vector(&pf, table).map_err(err_str)?;
            if image != table.row(lam) {
                return Err(format!("image of the class of {lam} is not its row"));
            }
        }
        Ok(())
    });
    let pres = match Presentation::build(n) {
        Ok(p) => p,
        Err(e) => {
            suite.run("unitriangular-basis", || Err(err_str(e)));
            return suite.finish();
        }
    };
    suite.run("unitriangular-basis", || {
        // Construction already validates leading terms; re-check that the
        // tails are strict and strictly smaller.
        for lam in pres.shapes() {
            let nf = pres.normal_pfaffian(lam).ok_or("missing shape")?;
            let lead = crate::presentation::XMonomial::from_strict(lam);
            for (m, _) in nf.terms() {
                if !m.is_strict() || m > &lead {
                    return Err(format!("tail monomial {m} escapes the triangle at {lam}"));
                }
            }
        }
        Ok(())
    });
    suite.run("strict-image-rank", || {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let want = 1usize << n;
        let mut best = 0;
        for _ in 0..3 {
            let point = sample_distinct(&mut rng, n as usize);
            let rank = strict_image_rank(table, &point);
            best = best.max(rank);
            if best == want {
                return Ok(());
            }
        }
        Err(format!("rank {best}, expected {want}"))
    });
    suite.run("products-match-fixed-points", || {
        for w in pres.shapes() {
            for v in pres.shapes() {
                let via_pres = pres.product_constants(w, v).map_err(err_str)?;
                let via_table = structure_constants(w, v, table).map_err(err_str)?;
                if &via_pres != via_table.coeffs() {
                    return Err(format!(
                        "{w} * {v}: quotient ring and fixed points disagree"
                    ));
                }
            }
        }
        Ok(())
    });
    suite.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_at_order_two() {
        let cfg = CheckConfig {
            n: 2,
            seed: 42,
            points: 3,
        };
        let run = run_suite("all", &cfg).unwrap();
        for s in &run.suites {
            for c in &s.cases {
                assert!(c.passed, "{}/{}: {:?}", s.suite, c.name, c.detail);
            }
        }
        assert!(run.passed);
        assert_eq!(run.suites.len(), SUITES.len());
    }

    #[test]
    fn single_suite_selection_and_determinism() {
        let cfg = CheckConfig {
            n: 3,
            seed: 7,
            points: 2,
        };
        let a = run_suite("recurrence", &cfg).unwrap();
        let b = run_suite("recurrence", &cfg).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert!(a.passed);
        assert_eq!(a.suites.len(), 1);
    }

    #[test]
    fn unknown_suite_and_bad_config_are_rejected() {
        let cfg = CheckConfig {
            n: 2,
            seed: 1,
            points: 1,
        };
        assert!(run_suite("nonsense", &cfg).is_err());
        let zero = CheckConfig {
            n: 0,
            seed: 1,
            points: 1,
        };
        assert!(run_suite("bijection", &zero).is_err());
        let big = CheckConfig {
            n: 9,
            seed: 1,
            points: 1,
        };
        assert!(run_suite("bijection", &big).is_err());
    }
}
