//! The constraint system of a block decomposition and its elimination to a
//! Laurent polynomial on a torus.
//!
//! In the plain coordinates `a, a_{i,j}` the weight variables of the blocks
//! cut out a section of the torus action. The elimination map sends a point
//! `y` of that section to `(F̄_1(y), …, F̄_l(y)) · σ(y)`; on monomials this is
//! a relabeling followed by multiplication with powers `F̄_p^{net_p}`, where
//! `net_p` is the weight of the monomial under `wt_p`.

use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, ScaledImage, VariableTable};
use crate::quiver::{decompose, plain_variable_name, Arrow, BlockDecomposition, ModelSpec, Vertex};
use crate::selftest::random_point;
use crate::weights::{action_matrix, weight_table, ActionMatrix, WeightTable};
use crate::{IntPoly, Integer, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameKind {
    /// `ã_{i,j}` for every grid vertex, with `ã_{0,1} = ã_{k,n+1} = 1`.
    Tilde,
    /// `a` and `a_{i,j}` for `(i,j) ≠ (k,n)`, with `a_{k,n} = 1` and `a_{0,1} = a_{k,n+1} = a`.
    Plain,
    /// The plain frame without the weight variables, which are set to 1.
    Reduced,
}

/// A coordinate system on a torus together with the boundary conventions
/// that turn quiver vertices into monomials.
#[derive(Debug, Clone)]
pub struct CoordinateFrame {
    kind: FrameKind,
    vars: Arc<VariableTable>,
    slots: HashMap<Vertex, usize>,
}

impl CoordinateFrame {
    pub fn tilde(n: usize, k: usize) -> Self {
        let mut names = Vec::new();
        let mut slots = HashMap::new();
        for i in 1..=k {
            for j in 1..=n {
                slots.insert(Vertex::new(i, j), names.len());
                names.push(format!("at_{i}_{j}"));
            }
        }
        Self {
            kind: FrameKind::Tilde,
            vars: VariableTable::new(names).expect("distinct names"),
            slots,
        }
    }

    pub fn plain(n: usize, k: usize) -> Self {
        Self::plain_without(n, k, &[], FrameKind::Plain)
    }

    pub fn reduced(n: usize, k: usize, weight_vertices: &[Vertex]) -> Self {
        Self::plain_without(n, k, weight_vertices, FrameKind::Reduced)
    }

    fn plain_without(n: usize, k: usize, dropped: &[Vertex], kind: FrameKind) -> Self {
        let mut names = Vec::new();
        let mut slots = HashMap::new();
        let source = Vertex::new(0, 1);
        if !dropped.contains(&source) {
            slots.insert(source, 0);
            slots.insert(Vertex::new(k, n + 1), 0);
            names.push("a".to_string());
        }
        for i in 1..=k {
            for j in 1..=n {
                let v = Vertex::new(i, j);
                if (i, j) == (k, n) || dropped.contains(&v) {
                    continue;
                }
                slots.insert(v, names.len());
                names.push(plain_variable_name(v));
            }
        }
        Self {
            kind,
            vars: VariableTable::new(names).expect("distinct names"),
            slots,
        }
    }

    pub fn kind(&self) -> FrameKind {
        self.kind
    }

    pub fn variables(&self) -> &Arc<VariableTable> {
        &self.vars
    }

    /// Index of the coordinate at `v`, or `None` where the coordinate is 1.
    pub fn slot(&self, v: Vertex) -> Option<usize> {
        self.slots.get(&v).copied()
    }

    /// Exponent vector of `a_{h(α)} / a_{t(α)}`.
    fn arrow_monomial(&self, arrow: &Arrow) -> Vec<i32> {
        let mut e = vec![0; self.vars.len()];
        if let Some(h) = self.slot(arrow.head()) {
            e[h] += 1;
        }
        if let Some(t) = self.slot(arrow.tail) {
            e[t] -= 1;
        }
        e
    }
}

/// `F_A = Σ_{α ∈ A} a_{h(α)} / a_{t(α)}` in the tilde or plain frame.
pub fn arrow_sum<'a, I>(arrows: I, frame: &CoordinateFrame) -> Result<IntPoly>
where
    I: IntoIterator<Item = &'a Arrow>,
{
    if frame.kind == FrameKind::Reduced {
        return Err(Error::ReducedFrame);
    }
    IntPoly::from_terms(
        frame.vars.clone(),
        arrows
            .into_iter()
            .map(|a| (frame.arrow_monomial(a), Integer::from(1))),
    )
}

/// Images of the tilde coordinates in the plain frame:
/// `ã_{i,j} = a_{i,j} / a` for `(i,j) ≠ (k,n)` and `ã_{k,n} = 1 / a`.
pub fn psi_images(n: usize, k: usize) -> Vec<Vec<i32>> {
    let tilde = CoordinateFrame::tilde(n, k);
    let plain = CoordinateFrame::plain(n, k);
    let a = plain.slot(Vertex::new(0, 1)).expect("plain frame has a");
    let mut images = vec![Vec::new(); tilde.vars.len()];
    for i in 1..=k {
        for j in 1..=n {
            let v = Vertex::new(i, j);
            let mut e = vec![0; plain.vars.len()];
            if let Some(s) = plain.slot(v) {
                e[s] = 1;
            }
            e[a] = -1;
            images[tilde.slot(v).expect("grid vertex")] = e;
        }
    }
    images
}

/// The constraint system `F̃_{B_1} = … = F̃_{B_l} = 1` with superpotential `F̃_{B_0}`.
#[derive(Debug, Clone)]
pub struct BcfksModel {
    pub decomposition: BlockDecomposition,
    pub constraints: Vec<IntPoly>,
    pub superpotential_raw: IntPoly,
}

pub fn bcfks_model(dec: &BlockDecomposition) -> BcfksModel {
    let frame = CoordinateFrame::tilde(dec.spec().n(), dec.spec().k());
    let constraints = dec
        .blocks()
        .iter()
        .map(|b| arrow_sum(b.arrows(), &frame).expect("tilde frame"))
        .collect();
    let superpotential_raw = arrow_sum(dec.complement(), &frame).expect("tilde frame");
    BcfksModel {
        decomposition: dec.clone(),
        constraints,
        superpotential_raw,
    }
}

/// Everything needed to pull the constraint system back to the reduced torus.
#[derive(Debug, Clone)]
pub struct Elimination {
    dec: BlockDecomposition,
    weights: WeightTable,
    action: ActionMatrix,
    plain: CoordinateFrame,
    reduced: CoordinateFrame,
    constraints: Vec<IntPoly>,
    superpotential_raw: IntPoly,
    restricted: Vec<IntPoly>,
    sigma: Vec<Vec<i32>>,
    tau: Vec<ScaledImage>,
}

impl Elimination {
    pub fn new(dec: &BlockDecomposition) -> Result<Self> {
        let (n, k) = (dec.spec().n(), dec.spec().k());
        let weights = weight_table(dec)?;
        let action = action_matrix(&weights, dec)?;
        let plain = CoordinateFrame::plain(n, k);
        let reduced = CoordinateFrame::reduced(n, k, &dec.weight_vertices());

        let constraints: Vec<IntPoly> = dec
            .blocks()
            .iter()
            .map(|b| arrow_sum(b.arrows(), &plain))
            .collect::<Result<_>>()?;
        let superpotential_raw = arrow_sum(dec.complement(), &plain)?;

        // Plain vertex of every plain variable, in table order.
        let mut vertex_of = vec![Vertex::new(0, 1); plain.vars.len()];
        for i in 1..=k {
            for j in 1..=n {
                if let Some(s) = plain.slot(Vertex::new(i, j)) {
                    vertex_of[s] = Vertex::new(i, j);
                }
            }
        }
        let sigma: Vec<Vec<i32>> = vertex_of
            .iter()
            .map(|&v| {
                let mut e = vec![0; reduced.vars.len()];
                if let Some(s) = reduced.slot(v) {
                    e[s] = 1;
                }
                e
            })
            .collect();
        let tau: Vec<ScaledImage> = vertex_of
            .iter()
            .zip(&sigma)
            .map(|(&v, monomial)| ScaledImage {
                monomial: monomial.clone(),
                factor_exponents: weights.character(v),
            })
            .collect();
        let restricted = constraints
            .iter()
            .map(|f| f.substitute_monomial(&reduced.vars, &sigma, None))
            .collect::<Result<_>>()?;

        Ok(Self {
            dec: dec.clone(),
            weights,
            action,
            plain,
            reduced,
            constraints,
            superpotential_raw,
            restricted,
            sigma,
            tau,
        })
    }

    pub fn decomposition(&self) -> &BlockDecomposition {
        &self.dec
    }

    pub fn weights(&self) -> &WeightTable {
        &self.weights
    }

    pub fn action(&self) -> &ActionMatrix {
        &self.action
    }

    pub fn plain_frame(&self) -> &CoordinateFrame {
        &self.plain
    }

    pub fn reduced_frame(&self) -> &CoordinateFrame {
        &self.reduced
    }

    /// `F_{B_1}, …, F_{B_l}` in the plain frame.
    pub fn constraints(&self) -> &[IntPoly] {
        &self.constraints
    }

    /// `F_{B_0}` in the plain frame.
    pub fn superpotential_raw(&self) -> &IntPoly {
        &self.superpotential_raw
    }

    /// `F̄_1, …, F̄_l`: the constraints with every weight variable set to 1.
    pub fn restricted_constraints(&self) -> &[IntPoly] {
        &self.restricted
    }

    /// `F̄_A`: the non-block arrows other than `h_{k,n}`, restricted to the section.
    pub fn invariant_part(&self) -> Result<IntPoly> {
        let arrows = self.dec.invariant_arrows();
        arrow_sum(arrows.iter(), &self.plain)?.substitute_monomial(&self.reduced.vars, &self.sigma, None)
    }

    /// `ā`: the image of `a` on the section (`a` itself, or 1 when `a` is a weight variable).
    pub fn a_bar(&self) -> IntPoly {
        match self.reduced.slot(Vertex::new(0, 1)) {
            Some(_) => IntPoly::variable(self.reduced.vars.clone(), "a").expect("a is in the frame"),
            None => IntPoly::one(self.reduced.vars.clone()),
        }
    }

    /// The weights `(net_1, …, net_l)` of every term of a plain-frame polynomial.
    pub fn net_weights(&self, f: &IntPoly) -> Vec<(ExponentVector, Vec<i64>)> {
        f.sorted_terms()
            .into_iter()
            .map(|(e, _)| {
                let net = (0..self.weights.len())
                    .map(|p| {
                        e.iter()
                            .zip(&self.tau)
                            .map(|(&x, im)| i64::from(x) * im.factor_exponents[p])
                            .sum()
                    })
                    .collect();
                (e.clone(), net)
            })
            .collect()
    }

    /// Pulls a plain-frame polynomial back along the elimination map. Fails
    /// if some term would need a negative power of a restricted constraint.
    pub fn pull_back(&self, f: &IntPoly) -> Result<IntPoly> {
        f.substitute_scaled(&self.reduced.vars, &self.tau, &self.restricted)
    }

    /// The superpotential `f_Y = F̄_A + ā · ∏ F̄_p^{d_p}` on the reduced torus.
    pub fn superpotential(&self) -> Result<IntPoly> {
        self.pull_back(&self.superpotential_raw).map_err(|e| match e {
            Error::NegativeFactorExponent { factor, exponent } => Error::Internal(format!(
                "superpotential term has weight {exponent} for block {}",
                factor + 1
            )),
            other => other,
        })
    }

    /// Plain coordinates of the elimination map at a reduced point `y`.
    ///
    /// Fails with [`Error::ZeroCoordinate`] when some `F̄_p(y)` vanishes and
    /// the map is undefined.
    pub fn tau_point(&self, y: &[Rational]) -> Result<Vec<Rational>> {
        let values: Vec<Rational> = self
            .restricted
            .iter()
            .map(|f| f.evaluate_exact(y))
            .collect::<Result<_>>()?;
        if let Some(p) = values.iter().position(num_traits::Zero::is_zero) {
            return Err(Error::ZeroCoordinate(format!("F̄_{}", p + 1)));
        }
        let mut x = Vec::with_capacity(self.tau.len());
        for (image, sigma) in self.tau.iter().zip(&self.sigma) {
            let mut value = match sigma.iter().position(|&e| e == 1) {
                Some(s) => y[s].clone(),
                None => Rational::from_integer(1.into()),
            };
            for (f, &w) in values.iter().zip(&image.factor_exponents) {
                value *= num_traits::pow(f.clone(), w as usize);
            }
            x.push(value);
        }
        Ok(x)
    }

    /// Checks at random points of the reduced torus that every constraint
    /// pulls back to exactly 1 and that `F_{B_0}` pulls back to `f_Y`.
    pub fn verify_tau_pullback(&self, points: usize, seed: u64) -> Result<TauReport> {
        self.verify_tau_pullback_of(&self.superpotential()?, points, seed)
    }

    /// As [`Self::verify_tau_pullback`], against an already computed `f_Y`.
    pub fn verify_tau_pullback_of(&self, f: &IntPoly, points: usize, seed: u64) -> Result<TauReport> {
        let f = f.evaluator();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let one = Rational::from_integer(1.into());
        let mut report = TauReport {
            points,
            constraints_ok: vec![true; self.constraints.len()],
            superpotential_ok: true,
        };
        let mut done = 0;
        let mut attempts = 0;
        while done < points {
            attempts += 1;
            if attempts > 100 * points.max(1) {
                return Err(Error::Internal("could not sample regular points".into()));
            }
            let y = random_point(&mut rng, self.reduced.vars.len());
            let x = match self.tau_point(&y) {
                Ok(x) => x,
                Err(Error::ZeroCoordinate(_)) => continue,
                Err(e) => return Err(e),
            };
            for (ok, constraint) in report.constraints_ok.iter_mut().zip(&self.constraints) {
                if constraint.evaluate_exact(&x)? != one {
                    *ok = false;
                }
            }
            if self.superpotential_raw.evaluate_exact(&x)? != f.evaluate(&y)? {
                report.superpotential_ok = false;
            }
            done += 1;
        }
        Ok(report)
    }

    /// Human-readable product form `F̄_A + ā·(F̄_1)^{d_1}·…`, skipping unit factors.
    pub fn factored(&self) -> Result<String> {
        let mut parts = Vec::new();
        let a_bar = self.a_bar();
        let unit = IntPoly::one(self.reduced.vars.clone());
        if a_bar != unit {
            parts.push("a".to_string());
        }
        for (f, &d) in self.restricted.iter().zip(self.dec.spec().degrees()) {
            if *f == unit {
                continue;
            }
            let base = format!("({f})");
            parts.push(if d == 1 { base } else { format!("{base}^{d}") });
        }
        let product = if parts.is_empty() { "1".to_string() } else { parts.join(" * ") };
        let invariant = self.invariant_part()?;
        Ok(if invariant.is_zero() {
            product
        } else {
            format!("{invariant} + {product}")
        })
    }
}

/// Result of [`Elimination::verify_tau_pullback`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauReport {
    pub points: usize,
    pub constraints_ok: Vec<bool>,
    pub superpotential_ok: bool,
}

impl TauReport {
    pub fn passed(&self) -> bool {
        self.superpotential_ok && self.constraints_ok.iter().all(|&ok| ok)
    }
}

/// `F̄_1, …, F̄_l` for a decomposition.
pub fn restricted_constraints(dec: &BlockDecomposition) -> Result<Vec<IntPoly>> {
    Ok(Elimination::new(dec)?.restricted)
}

/// The Laurent superpotential of the decomposition on the torus of dimension `nk − l`.
pub fn eliminate(dec: &BlockDecomposition) -> Result<IntPoly> {
    Elimination::new(dec)?.superpotential()
}

pub fn verify_tau_pullback(dec: &BlockDecomposition, points: usize, seed: u64) -> Result<TauReport> {
    Elimination::new(dec)?.verify_tau_pullback(points, seed)
}

/// Writes the superpotential directly from the degree list, without weight
/// tables or substitutions.
///
/// With `u_p = d_1 + … + d_p` and `m` the number of leading hypersurfaces
/// with `u_p ≤ k`:
///
/// * if `m = l`, the free arrows are the vertical arrows below row `u_l` and
///   all horizontal arrows, and factor `p` sums the vertical arrows with
///   head row in `[u_{p−1}+1, u_p]`;
/// * otherwise, with columns `c_p = u_p − k + 1`, the free arrows are the
///   horizontal ones with head column above `c_l`; factors `p ≤ m` are as
///   before, factor `m+1` adds the vertical arrows with head row in
///   `[u_m+1, k]` to the horizontal arrows with head column in `[2, c_{m+1}]`,
///   and later factors sum horizontal arrows with head column in
///   `[c_{p−1}+1, c_p]`.
///
/// The weight variables (`a_{u_p−1,1}` for `p ≤ m`, `a_{k,c_p−1}` after) and
/// `a_{k,n}` are set to 1, and the result is `free + ā · ∏ factor_p^{d_p}`.
pub fn closed_form(spec: &ModelSpec) -> IntPoly {
    let (n, k) = (spec.n(), spec.k());
    let degrees = spec.degrees();
    let l = degrees.len();
    let partial: Vec<usize> = degrees
        .iter()
        .scan(0, |acc, &d| {
            *acc += d;
            Some(*acc)
        })
        .collect();
    let m = partial.iter().take_while(|&&u| u <= k).count();
    let column = |p: usize| partial[p] - k + 1;
    let weight_cells: Vec<(usize, usize)> = (0..l)
        .map(|p| if p < m { (partial[p] - 1, 1) } else { (k, column(p) - 1) })
        .collect();
    let torus = ClosedFormTorus::new(n, k, &weight_cells);

    let rows = |lo: usize, hi: usize| torus.vertical_rows(lo, hi);
    let cols = |lo: usize, hi: usize| torus.horizontal_cols(lo, hi);
    let below = |p: usize| if p == 0 { 0 } else { partial[p - 1] };

    let (free, factors): (IntPoly, Vec<IntPoly>) = if m == l {
        let top = partial.last().copied().unwrap_or(0);
        let free = &rows(top + 1, k) + &cols(2, n);
        let factors = (0..l).map(|p| rows(below(p) + 1, partial[p])).collect();
        (free, factors)
    } else {
        let free = cols(column(l - 1) + 1, n);
        let factors = (0..l)
            .map(|p| match p.cmp(&m) {
                std::cmp::Ordering::Less => rows(below(p) + 1, partial[p]),
                std::cmp::Ordering::Equal => &rows(below(p) + 1, k) + &cols(2, column(p)),
                std::cmp::Ordering::Greater => cols(column(p - 1) + 1, column(p)),
            })
            .collect();
        (free, factors)
    };

    let mut product = torus.a_bar();
    for (factor, &d) in factors.iter().zip(degrees) {
        product = &product * &factor.pow(d as u32);
    }
    &free + &product
}

/// Reduced coordinates as seen by [`closed_form`].
struct ClosedFormTorus {
    n: usize,
    k: usize,
    vars: Arc<VariableTable>,
    weight_cells: Vec<(usize, usize)>,
}

impl ClosedFormTorus {
    fn new(n: usize, k: usize, weight_cells: &[(usize, usize)]) -> Self {
        let mut names = Vec::new();
        if !weight_cells.contains(&(0, 1)) {
            names.push("a".to_string());
        }
        for i in 1..=k {
            for j in 1..=n {
                if (i, j) != (k, n) && !weight_cells.contains(&(i, j)) {
                    names.push(format!("a_{i}_{j}"));
                }
            }
        }
        Self {
            n,
            k,
            vars: VariableTable::new(names).expect("distinct names"),
            weight_cells: weight_cells.to_vec(),
        }
    }

    /// Exponent contribution of the coordinate at `(i, j)`; `None` where it is 1.
    fn index(&self, i: usize, j: usize) -> Option<usize> {
        let cell = if (i, j) == (self.k, self.n + 1) { (0, 1) } else { (i, j) };
        if cell == (self.k, self.n) || self.weight_cells.contains(&cell) {
            return None;
        }
        let name = if cell == (0, 1) {
            "a".to_string()
        } else {
            format!("a_{}_{}", cell.0, cell.1)
        };
        self.vars.index_of(&name)
    }

    fn ratio(&self, head: (usize, usize), tail: (usize, usize)) -> Vec<i32> {
        let mut e = vec![0; self.vars.len()];
        if let Some(h) = self.index(head.0, head.1) {
            e[h] += 1;
        }
        if let Some(t) = self.index(tail.0, tail.1) {
            e[t] -= 1;
        }
        e
    }

    /// `Σ a_{i,j}/a_{i−1,j}` over head rows `i ∈ [lo, hi]`; row 1 only has `a_{1,1}/a`.
    fn vertical_rows(&self, lo: usize, hi: usize) -> IntPoly {
        let mut terms = Vec::new();
        for i in lo.max(1)..=hi {
            if i == 1 {
                terms.push(self.ratio((1, 1), (0, 1)));
            } else {
                for j in 1..=self.n {
                    terms.push(self.ratio((i, j), (i - 1, j)));
                }
            }
        }
        self.sum(terms)
    }

    /// `Σ a_{i,j}/a_{i,j−1}` over all rows and head columns `j ∈ [lo, hi]`.
    fn horizontal_cols(&self, lo: usize, hi: usize) -> IntPoly {
        let mut terms = Vec::new();
        for i in 1..=self.k {
            for j in lo.max(2)..=hi {
                terms.push(self.ratio((i, j), (i, j - 1)));
            }
        }
        self.sum(terms)
    }

    fn a_bar(&self) -> IntPoly {
        match self.vars.index_of("a") {
            Some(_) => IntPoly::variable(self.vars.clone(), "a").expect("present"),
            None => IntPoly::one(self.vars.clone()),
        }
    }

    fn sum(&self, terms: Vec<Vec<i32>>) -> IntPoly {
        IntPoly::from_terms(
            self.vars.clone(),
            terms.into_iter().map(|e| (e, Integer::from(1))),
        )
        .expect("consistent dimensions")
    }
}

/// Convenience: decomposition, elimination and superpotential for a spec.
pub fn superpotential_of(spec: &ModelSpec) -> Result<IntPoly> {
    eliminate(&decompose(spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::fano_specs;

    fn spec(n: usize, k: usize, degrees: &[usize]) -> ModelSpec {
        ModelSpec::new(n, k, degrees.to_vec()).unwrap()
    }

    /// Builds a polynomial from `(coefficient, [(name, exponent)])` terms.
    fn parse(vars: &Arc<VariableTable>, terms: &[(i64, &[(&str, i32)])]) -> IntPoly {
        IntPoly::from_terms(
            vars.clone(),
            terms.iter().map(|(c, mono)| {
                let mut e = vec![0; vars.len()];
                for (name, x) in mono.iter() {
                    e[vars.index_of(name).unwrap()] += x;
                }
                (e, Integer::from(*c))
            }),
        )
        .unwrap()
    }

    #[test]
    fn arrow_sums_in_both_frames() {
        let q = crate::quiver::Quiver::new(3, 3).unwrap();
        let tilde = CoordinateFrame::tilde(3, 3);
        let plain = CoordinateFrame::plain(3, 3);
        let v01 = [Arrow::vertical(0, 1)];
        let f = arrow_sum(&v01, &tilde).unwrap();
        assert_eq!(f, parse(tilde.variables(), &[(1, &[("at_1_1", 1)])]));
        let f = arrow_sum(&v01, &plain).unwrap();
        assert_eq!(f, parse(plain.variables(), &[(1, &[("a_1_1", 1), ("a", -1)])]));
        let f = arrow_sum(&[q.last_arrow()], &plain).unwrap();
        assert_eq!(f, parse(plain.variables(), &[(1, &[("a", 1)])]));
        let reduced = CoordinateFrame::reduced(3, 3, &[Vertex::new(0, 1)]);
        assert_eq!(arrow_sum(&v01, &reduced), Err(Error::ReducedFrame));
    }

    #[test]
    fn psi_relates_tilde_and_plain_frames() {
        for spec in fano_specs(4, 4, 2) {
            let (n, k) = (spec.n(), spec.k());
            let dec = decompose(&spec);
            let tilde = CoordinateFrame::tilde(n, k);
            let plain = CoordinateFrame::plain(n, k);
            let psi = psi_images(n, k);
            let mut sets: Vec<Vec<Arrow>> = dec.blocks().iter().map(|b| b.arrows().iter().copied().collect()).collect();
            sets.push(dec.complement().iter().copied().collect());
            sets.push(dec.quiver().arrows().to_vec());
            for arrows in sets {
                let t = arrow_sum(&arrows, &tilde).unwrap();
                let p = arrow_sum(&arrows, &plain).unwrap();
                assert_eq!(t.substitute_monomial(plain.variables(), &psi, None).unwrap(), p);
            }
        }
    }

    #[test]
    fn psi_on_first_arrow_of_g24() {
        let tilde = CoordinateFrame::tilde(2, 2);
        let plain = CoordinateFrame::plain(2, 2);
        let f = arrow_sum(&[Arrow::vertical(0, 1)], &tilde).unwrap();
        let g = f.substitute_monomial(plain.variables(), &psi_images(2, 2), None).unwrap();
        assert_eq!(g, parse(plain.variables(), &[(1, &[("a_1_1", 1), ("a", -1)])]));
    }

    #[test]
    fn bcfks_model_term_counts() {
        let m = bcfks_model(&decompose(&spec(2, 2, &[1])));
        assert_eq!(m.constraints.len(), 1);
        assert_eq!(m.constraints[0].term_count(), 1);
        assert_eq!(m.superpotential_raw.term_count(), 5);

        let m = bcfks_model(&decompose(&spec(3, 3, &[1, 1, 2, 1])));
        let counts: Vec<usize> = m.constraints.iter().map(IntPoly::term_count).collect();
        assert_eq!(counts, [1, 3, 6, 3]);
        // B₀ = Ar(Q) minus 13 block arrows out of 14: only h_{3,3}.
        assert_eq!(m.superpotential_raw.term_count(), 1);

        for spec in fano_specs(3, 3, 2) {
            let dec = decompose(&spec);
            let m = bcfks_model(&dec);
            assert_eq!(m.constraints.len(), spec.len());
            let arrows: usize = dec.blocks().iter().map(|b| b.arrows().len()).sum::<usize>()
                + dec.complement().len();
            assert_eq!(arrows, dec.quiver().arrows().len());
        }
    }

    #[test]
    fn restricted_mixed_constraint() {
        let dec = decompose(&spec(3, 3, &[1, 1, 2, 1]));
        let bars = restricted_constraints(&dec).unwrap();
        let vars = bars[2].variables().clone();
        let names: Vec<&str> = vars.names().iter().map(String::as_str).collect();
        assert_eq!(names, ["a_1_2", "a_1_3", "a_2_1", "a_2_2", "a_2_3"]);
        let expected = parse(
            &vars,
            &[
                (1, &[("a_2_1", -1)]),
                (1, &[("a_2_2", -1)]),
                (1, &[("a_2_3", -1)]),
                (1, &[("a_1_2", 1)]),
                (1, &[("a_2_2", 1), ("a_2_1", -1)]),
                (1, &[]),
            ],
        );
        assert_eq!(bars[2], expected);

        let bars = restricted_constraints(&decompose(&spec(2, 2, &[1]))).unwrap();
        assert_eq!(bars[0], parse(bars[0].variables(), &[(1, &[("a_1_1", 1)])]));
    }

    #[test]
    fn restricted_constraints_avoid_weight_variables() {
        for spec in fano_specs(3, 4, 3) {
            let dec = decompose(&spec);
            let el = Elimination::new(&dec).unwrap();
            for b in dec.blocks() {
                assert!(el.reduced_frame().variables().index_of(&b.weight_variable()).is_none());
            }
            assert_eq!(el.reduced_frame().variables().len(), spec.torus_dimension());
        }
    }

    fn g24_superpotential() -> IntPoly {
        let el = Elimination::new(&decompose(&spec(2, 2, &[1]))).unwrap();
        let vars = el.reduced_frame().variables().clone();
        parse(
            &vars,
            &[
                (1, &[("a_2_1", 1), ("a_1_1", -1)]),
                (1, &[("a_1_2", 1), ("a_1_1", -1)]),
                (1, &[("a_1_2", -1)]),
                (1, &[("a_2_1", -1)]),
                (1, &[("a_1_1", 1)]),
            ],
        )
    }

    #[test]
    fn g24_hyperplane_superpotential() {
        let expected = g24_superpotential();
        let dec = decompose(&spec(2, 2, &[1]));
        assert_eq!(eliminate(&dec).unwrap(), expected);
        assert_eq!(closed_form(&spec(2, 2, &[1])), expected);
    }

    #[test]
    fn net_weights_of_free_and_corner_terms() {
        for spec in fano_specs(3, 3, 3) {
            let dec = decompose(&spec);
            let el = Elimination::new(&dec).unwrap();
            let a_slot = el.plain_frame().slot(Vertex::new(0, 1)).unwrap();
            for (e, net) in el.net_weights(el.superpotential_raw()) {
                let is_corner = e.iter().enumerate().all(|(i, &x)| x == i32::from(i == a_slot));
                if is_corner {
                    let d: Vec<i64> = spec.degrees().iter().map(|&d| d as i64).collect();
                    assert_eq!(net, d, "{spec}");
                } else {
                    assert!(net.iter().all(|&w| w == 0), "{spec}");
                }
            }
            for (p, constraint) in el.constraints().iter().enumerate() {
                for (_, net) in el.net_weights(constraint) {
                    let expected: Vec<i64> = (0..spec.len()).map(|q| -i64::from(q == p)).collect();
                    assert_eq!(net, expected);
                }
            }
        }
    }

    #[test]
    fn constraint_pullback_needs_inverse() {
        let el = Elimination::new(&decompose(&spec(2, 2, &[1]))).unwrap();
        assert!(matches!(
            el.pull_back(&el.constraints()[0]),
            Err(Error::NegativeFactorExponent { factor: 0, exponent: -1 })
        ));
    }

    #[test]
    fn tau_pullback_small_cases() {
        for s in [spec(2, 2, &[1]), spec(3, 2, &[2]), spec(3, 3, &[1, 1, 2, 1])] {
            let report = verify_tau_pullback(&decompose(&s), 20, 11).unwrap();
            assert!(report.passed(), "{s}: {report:?}");
        }
    }

    #[test]
    fn factored_display_of_g24() {
        let el = Elimination::new(&decompose(&spec(2, 2, &[1]))).unwrap();
        let text = el.factored().unwrap();
        assert!(text.ends_with("+ (a_1_1)"), "{text}");
    }

    #[test]
    fn grassmannian_without_hypersurfaces() {
        let s = spec(2, 2, &[]);
        let f = eliminate(&decompose(&s)).unwrap();
        // Every arrow contributes one term.
        assert_eq!(f.term_count(), 6);
        assert_eq!(f, closed_form(&s));
    }
}
