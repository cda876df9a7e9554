//! Constant term of the regularized I-series of a Fano complete intersection
//! in `G(n, n+k)`:
//!
//! ```text
//! Σ_{d≥0} (∏_{i=0}^{l} (d_i d)!) / (d!)^{k+n} · S(d) · t^{d₀ d}
//! ```
//!
//! where `S(d)` sums `∏ C(s_{i+1,j}, s_{i,j}) · C(s_{i,j+1}, s_{i,j})` over
//! integer grids `s_{i,j}`, `(i,j) ∈ [1,k−1]×[1,n−1]`, with `s_{k,j} = s_{i,n} = d`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::ModelSpec;

/// Exact coefficients `c₀, …, c_N` of a power series prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPrefix {
    pub coefficients: Vec<BigInt>,
}

impl SeriesPrefix {
    pub fn order(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// Coefficients as decimal strings, the form used in JSON output.
    pub fn to_strings(&self) -> Vec<String> {
        self.coefficients.iter().map(ToString::to_string).collect()
    }
}

/// `{"spec": {...}, "coefficients": ["1", "12", ...]}`.
#[derive(Debug, Clone, Serialize)]
pub struct IseriesJson<'a> {
    pub spec: &'a ModelSpec,
    pub coefficients: Vec<String>,
}

pub fn fano_index(spec: &ModelSpec) -> usize {
    spec.fano_index()
}

/// Coefficients of `t⁰ … t^order`.
///
/// Each nonzero coefficient is assembled as an exact rational and must come
/// out integral; anything else is reported as an internal failure.
pub fn iseries(spec: &ModelSpec, order: usize) -> Result<SeriesPrefix> {
    let d0 = spec.fano_index();
    let max_d = order / d0;
    let terms: Vec<BigInt> = (0..=max_d)
        .into_par_iter()
        .map(|d| series_term(spec, d))
        .collect::<Result<_>>()?;
    let mut coefficients = vec![BigInt::zero(); order + 1];
    for (d, c) in terms.into_iter().enumerate() {
        coefficients[d * d0] = c;
    }
    Ok(SeriesPrefix { coefficients })
}

/// The coefficient of `t^{d₀ d}`.
fn series_term(spec: &ModelSpec, d: usize) -> Result<BigInt> {
    let mut numerator = factorial(spec.fano_index() * d);
    for &di in spec.degrees() {
        numerator *= factorial(di * d);
    }
    let denominator = num_traits::pow(factorial(d), spec.n() + spec.k());
    let prefactor = BigRational::new(numerator, denominator);
    let value = prefactor * BigRational::from_integer(grid_sum(spec.k(), spec.n(), d));
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Internal(format!(
            "I-series coefficient for d = {d} of {spec} is {value}, not a nonnegative integer"
        )));
    }
    Ok(value.to_integer())
}

pub(crate) fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, x| acc * BigInt::from(x))
}

fn binomial_table(d: usize) -> Vec<Vec<BigInt>> {
    let mut table = vec![vec![BigInt::zero(); d + 1]; d + 1];
    for top in 0..=d {
        table[top][0] = BigInt::one();
        for bottom in 1..=top {
            table[top][bottom] = &table[top - 1][bottom - 1] + &table[top - 1][bottom];
        }
    }
    table
}

/// `S(d)` for a `rows × cols` ladder, by dynamic programming.
///
/// The grid is swept one column at a time. The state is the dense tensor of
/// partial sums indexed by the current column `(s_{1,j}, …, s_{m,j})`, with
/// `m` the smaller side minus one (the sum is symmetric under transposition).
/// Moving to the next column applies `Σ_{s ≤ t} C(t, s)` along each axis in
/// turn, then multiplies by the vertical binomials inside the new column.
pub fn grid_sum(rows: usize, cols: usize, d: usize) -> BigInt {
    let (short, long) = if rows <= cols { (rows, cols) } else { (cols, rows) };
    let m = short - 1;
    let columns = long - 1;
    let binom = binomial_table(d);
    let side = d + 1;
    let size = side.pow(m as u32);

    // Weight of a column: ∏_i C(s_{i+1}, s_i) with s_{m+1} = d.
    let column_weight = |idx: usize| -> BigInt {
        let mut digits = Vec::with_capacity(m);
        let mut rest = idx;
        for _ in 0..m {
            digits.push(rest % side);
            rest /= side;
        }
        let mut w = BigInt::one();
        for i in 0..m {
            let upper = if i + 1 < m { digits[i + 1] } else { d };
            if digits[i] > upper {
                return BigInt::zero();
            }
            w *= &binom[upper][digits[i]];
        }
        w
    };
    let weights: Vec<BigInt> = (0..size).map(column_weight).collect();

    let transfer = |state: &mut Vec<BigInt>| {
        for axis in 0..m {
            let stride = side.pow(axis as u32);
            let mut next = vec![BigInt::zero(); size];
            for (idx, slot) in next.iter_mut().enumerate() {
                let t = (idx / stride) % side;
                let base = idx - t * stride;
                let mut acc = BigInt::zero();
                for s in 0..=t {
                    let v = &state[base + s * stride];
                    if !v.is_zero() {
                        acc += &binom[t][s] * v;
                    }
                }
                *slot = acc;
            }
            *state = next;
        }
    };

    let mut state = weights.clone();
    for _ in 1..columns {
        transfer(&mut state);
        for (v, w) in state.iter_mut().zip(&weights) {
            *v *= w;
        }
    }
    // Last column of the grid is the boundary s_{i,n} = d.
    transfer(&mut state);
    state[size - 1].clone()
}

/// Naive enumeration of `S(d)` over all `(d+1)^{(k−1)(n−1)}` grids.
pub fn grid_sum_naive(rows: usize, cols: usize, d: usize) -> BigInt {
    let binom = binomial_table(d);
    let (r, c) = (rows - 1, cols - 1);
    let cells = r * c;
    let mut s = vec![0usize; cells];
    let value = |s: &[usize], i: usize, j: usize| -> usize {
        // 1-based (i, j); boundary row `rows` and column `cols` are d.
        if i == rows || j == cols {
            d
        } else {
            s[(i - 1) * c + (j - 1)]
        }
    };
    let mut total = BigInt::zero();
    loop {
        let mut term = BigInt::one();
        'grid: for i in 1..rows {
            for j in 1..cols {
                let here = value(&s, i, j);
                let down = value(&s, i + 1, j);
                let right = value(&s, i, j + 1);
                if here > down || here > right {
                    term = BigInt::zero();
                    break 'grid;
                }
                term *= &binom[down][here];
                term *= &binom[right][here];
            }
        }
        total += term;
        let mut pos = 0;
        loop {
            if pos == cells {
                return total;
            }
            s[pos] += 1;
            if s[pos] <= d {
                break;
            }
            s[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn dp_matches_enumeration() {
        for rows in 2..=4 {
            for cols in 2..=4 {
                for d in 0..=4 {
                    if (d + 1usize).pow(((rows - 1) * (cols - 1)) as u32) > 2_000_000 {
                        continue;
                    }
                    assert_eq!(grid_sum(rows, cols, d), grid_sum_naive(rows, cols, d), "{rows}x{cols} d={d}");
                }
            }
        }
    }

    #[test]
    fn quadric_and_hyperplanes_in_g36() {
        let spec = ModelSpec::new(3, 3, vec![1, 1, 2, 1]).unwrap();
        let s = iseries(&spec, 8).unwrap();
        assert_eq!(
            s.coefficients,
            ints(&[
                1,
                12,
                756,
                78960,
                10451700,
                1587790512,
                263964176784,
                46763681545152,
                8685492699286260
            ])
        );
    }

    #[test]
    fn independent_of_degree_order() {
        let orders = [vec![1, 1, 2, 1], vec![2, 1, 1, 1], vec![1, 1, 1, 2], vec![1, 2, 1, 1]];
        let base = iseries(&ModelSpec::new(3, 3, orders[0].clone()).unwrap(), 6).unwrap();
        for degrees in &orders[1..] {
            let s = iseries(&ModelSpec::new(3, 3, degrees.clone()).unwrap(), 6).unwrap();
            assert_eq!(s, base);
        }
    }

    #[test]
    fn g24_quadric() {
        // Oracle: (2d)!² / (d!)⁴ · Σ_s C(d,s)², enumerated directly.
        let spec = ModelSpec::new(2, 2, vec![2]).unwrap();
        assert_eq!(spec.fano_index(), 2);
        let s = iseries(&spec, 4).unwrap();
        let oracle = |d: usize| {
            let f = |m: usize| (1..=m as u64).product::<u64>();
            let c = |a: usize, b: usize| f(a) / (f(b) * f(a - b));
            let inner: u64 = (0..=d).map(|s| c(d, s) * c(d, s)).sum();
            f(2 * d) * f(2 * d) / f(d).pow(4) * inner
        };
        assert_eq!(oracle(1), 8);
        assert_eq!(oracle(2), 216);
        assert_eq!(s.coefficients, ints(&[1, 0, oracle(1), 0, oracle(2)]));
    }

    #[test]
    fn leading_coefficient_and_gaps() {
        for (n, k, degrees) in [(2, 2, vec![]), (3, 2, vec![1]), (4, 3, vec![2, 2])] {
            let spec = ModelSpec::new(n, k, degrees).unwrap();
            let s = iseries(&spec, 9).unwrap();
            assert_eq!(s.coefficients[0], BigInt::one());
            for (i, c) in s.coefficients.iter().enumerate() {
                if i % spec.fano_index() != 0 {
                    assert!(c.is_zero());
                } else {
                    assert!(!c.is_negative());
                }
            }
        }
        assert_eq!(ModelSpec::new(2, 2, vec![]).unwrap().fano_index(), 4);
    }
}
