//! Invariant suite over a sweep of small models.
//!
//! Every check is an exact identity: weight-table validation, the shape of
//! the action matrix, semi-invariance of the constraints under the torus
//! action at random rational points, the elimination map pulling every
//! constraint back to 1, and agreement of the eliminated superpotential with
//! its closed form.

use std::collections::BTreeSet;

use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::quiver::{decompose, fano_specs, Arrow, BlockDecomposition, BlockKind, ModelSpec, Vertex};
use crate::superpotential::{arrow_sum, closed_form, Elimination};
use crate::weights::validate_weights;
use crate::{IntPoly, Integer, Rational};

/// A random nonzero rational `p/q` with `|p| ≤ 7`, `1 ≤ q ≤ 7`.
pub fn random_nonzero<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-7..=7);
        if num != 0 {
            let den: i64 = rng.gen_range(1..=7);
            return Rational::new(Integer::from(num), Integer::from(den));
        }
    }
}

pub fn random_point<R: Rng>(rng: &mut R, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| random_nonzero(rng)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SelftestConfig {
    pub max_n: usize,
    pub max_k: usize,
    pub max_l: usize,
    /// Random points per randomized check.
    pub points: usize,
    pub seed: u64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        Self {
            max_n: 4,
            max_k: 4,
            max_l: 3,
            points: 20,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    fn from_result(name: &'static str, outcome: std::result::Result<(), String>) -> Self {
        match outcome {
            Ok(()) => Self { name, passed: true, detail: None },
            Err(detail) => Self { name, passed: false, detail: Some(detail) },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecReport {
    pub spec: ModelSpec,
    pub checks: Vec<CheckResult>,
}

impl SpecReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub config: SelftestConfig,
    pub specs: Vec<SpecReport>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.specs.iter().all(SpecReport::passed)
    }

    /// Number of specs that passed each named check, in suite order.
    pub fn tally(&self) -> Vec<(&'static str, usize, usize)> {
        let mut names: Vec<&'static str> = Vec::new();
        for s in &self.specs {
            for c in &s.checks {
                if !names.contains(&c.name) {
                    names.push(c.name);
                }
            }
        }
        names
            .into_iter()
            .map(|name| {
                let runs = self.specs.iter().flat_map(|s| &s.checks).filter(|c| c.name == name);
                let (total, passed) = runs.fold((0, 0), |(t, p), c| (t + 1, p + usize::from(c.passed)));
                (name, passed, total)
            })
            .collect()
    }
}

pub fn run_selftest(config: SelftestConfig) -> SelftestReport {
    let specs = fano_specs(config.max_n, config.max_k, config.max_l);
    let reports = specs
        .par_iter()
        .map(|spec| check_spec(spec, config.points, spec_seed(config.seed, spec)))
        .collect();
    SelftestReport { config, specs: reports }
}

fn spec_seed(seed: u64, spec: &ModelSpec) -> u64 {
    let mut h = seed ^ 0xcbf2_9ce4_8422_2325;
    for x in [spec.n(), spec.k()].into_iter().chain(spec.degrees().iter().copied()) {
        h = (h ^ x as u64).wrapping_mul(0x0100_0000_01b3);
    }
    h ^ (spec.len() as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Runs every invariant on one spec.
pub fn check_spec(spec: &ModelSpec, points: usize, seed: u64) -> SpecReport {
    let dec = decompose(spec);
    let mut checks = vec![CheckResult::from_result("decomposition", check_decomposition(&dec))];
    let elimination = match Elimination::new(&dec) {
        Ok(el) => el,
        Err(e) => {
            checks.push(CheckResult::from_result("weights", Err(e.to_string())));
            return SpecReport { spec: spec.clone(), checks };
        }
    };
    let report = validate_weights(elimination.weights(), &dec);
    checks.push(CheckResult::from_result(
        "weights",
        if report.is_pass() { Ok(()) } else { Err(report.to_string()) },
    ));
    checks.push(CheckResult::from_result("action_matrix", check_action(&elimination)));
    checks.push(CheckResult::from_result(
        "semi_invariance",
        check_semi_invariance(&elimination, points, seed).map_err(|e| e.to_string()).and_then(|r| r),
    ));
    let f = match elimination.superpotential() {
        Ok(f) => f,
        Err(e) => {
            checks.push(CheckResult::from_result("tau_pullback", Err(e.to_string())));
            return SpecReport { spec: spec.clone(), checks };
        }
    };
    checks.push(CheckResult::from_result(
        "tau_pullback",
        match elimination.verify_tau_pullback_of(&f, points, seed.wrapping_add(1)) {
            Ok(r) if r.passed() => Ok(()),
            Ok(r) => Err(format!("{r:?}")),
            Err(e) => Err(e.to_string()),
        },
    ));
    checks.push(CheckResult::from_result(
        "closed_form",
        if f != closed_form(spec) {
            Err("elimination and closed form differ".into())
        } else if f.variables().len() != spec.torus_dimension() {
            Err(format!("{} variables, expected {}", f.variables().len(), spec.torus_dimension()))
        } else {
            Ok(())
        },
    ));
    SpecReport { spec: spec.clone(), checks }
}

fn check_decomposition(dec: &BlockDecomposition) -> std::result::Result<(), String> {
    let spec = dec.spec();
    let q = dec.quiver();
    let k = spec.k();
    let mut union: BTreeSet<Arrow> = BTreeSet::new();
    let mut covered = 0;
    for (p, block) in dec.blocks().iter().enumerate() {
        if block.size() != spec.degrees()[p] {
            return Err(format!("{block} has size {}, expected {}", block.size(), spec.degrees()[p]));
        }
        for a in block.arrows() {
            if !union.insert(*a) {
                return Err(format!("{a} lies in two blocks"));
            }
        }
        covered += block.size();
        let prefix = if covered <= k {
            q.block(BlockKind::Horizontal, 0, covered)
        } else {
            q.block(BlockKind::Mixed, 0, covered - k + 1)
        }
        .map_err(|e| e.to_string())?;
        if prefix.arrows() != &union {
            return Err(format!("B_1..B_{} is not the block {prefix}", p + 1));
        }
    }
    if let Some(first) = dec.blocks().first() {
        if !first.contains(&Arrow::vertical(0, 1)) {
            return Err("v_{0,1} is not in B_1".into());
        }
    }
    if union.len() + dec.complement().len() != q.arrows().len() {
        return Err("blocks and complement do not partition the arrows".into());
    }
    let wv = dec.weight_vertices();
    let distinct: BTreeSet<&Vertex> = wv.iter().collect();
    if distinct.len() != wv.len() || wv.contains(&Vertex::new(k, spec.n())) {
        return Err(format!("bad weight vertices {wv:?}"));
    }
    Ok(())
}

fn check_action(el: &Elimination) -> std::result::Result<(), String> {
    let am = el.action();
    let l = am.matrix.len();
    for i in 0..l {
        for j in 0..l {
            let expected = i64::from(i == j);
            if i >= j && am.matrix[i][j] != expected {
                return Err(format!("M[{}][{}] = {}", i + 1, j + 1, am.matrix[i][j]));
            }
            let prod: i64 = (0..l).map(|t| am.matrix[i][t] * am.inverse[t][j]).sum();
            if prod != expected {
                return Err(format!("(M·M⁻¹)[{}][{}] = {prod}", i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// `F_{B_p}(w·x) = w_p⁻¹ F_{B_p}(x)`, `F_A(w·x) = F_A(x)` and `a(w·x) = μ(w) a(x)`.
fn check_semi_invariance(
    el: &Elimination,
    points: usize,
    seed: u64,
) -> Result<std::result::Result<(), String>> {
    let dec = el.decomposition();
    let frame = el.plain_frame();
    let dim = frame.variables().len();
    let l = dec.blocks().len();
    let invariant = arrow_sum(dec.invariant_arrows().iter(), frame)?;
    let a = IntPoly::variable(frame.variables().clone(), "a")?;

    // Torus character of every plain variable.
    let mut characters = vec![Vec::new(); dim];
    characters[frame.slot(Vertex::new(0, 1)).expect("a")] = el.weights().character(Vertex::new(0, 1));
    for i in 1..=dec.spec().k() {
        for j in 1..=dec.spec().n() {
            if let Some(s) = frame.slot(Vertex::new(i, j)) {
                characters[s] = el.weights().character(Vertex::new(i, j));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..points {
        let x = random_point(&mut rng, dim);
        let w = random_point(&mut rng, l);
        let scale = |chi: &[i64]| -> Rational {
            chi.iter().zip(&w).fold(Rational::one(), |acc, (&e, wp)| {
                acc * num_traits::pow(wp.clone(), e as usize)
            })
        };
        let wx: Vec<Rational> = x.iter().zip(&characters).map(|(xv, chi)| xv * scale(chi)).collect();
        for (p, f) in el.constraints().iter().enumerate() {
            if f.evaluate_exact(&wx)? * &w[p] != f.evaluate_exact(&x)? {
                return Ok(Err(format!("F_B{} is not semi-invariant of weight w_{}^-1", p + 1, p + 1)));
            }
        }
        if invariant.evaluate_exact(&wx)? != invariant.evaluate_exact(&x)? {
            return Ok(Err("F_A is not invariant".into()));
        }
        let degrees: Vec<i64> = dec.spec().degrees().iter().map(|&d| d as i64).collect();
        if a.evaluate_exact(&wx)? != scale(&degrees) * a.evaluate_exact(&x)? {
            return Ok(Err("a is not semi-invariant of weight mu(w)".into()));
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let report = run_selftest(SelftestConfig {
            max_n: 3,
            max_k: 3,
            max_l: 2,
            points: 5,
            seed: 7,
        });
        for s in &report.specs {
            assert!(s.passed(), "{}: {:?}", s.spec, s.checks);
        }
        assert!(!report.tally().is_empty());
    }

    #[test]
    fn random_rationals_are_nonzero_and_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        let pa = random_point(&mut a, 50);
        assert_eq!(pa, random_point(&mut b, 50));
        assert!(pa.iter().all(|x| !num_traits::Zero::is_zero(x)));
    }
}
