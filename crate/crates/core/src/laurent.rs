//! Sparse multivariate Laurent polynomials over an exact coefficient ring.
//!
//! Terms live in a hash map from dense exponent vectors to nonzero
//! coefficients. Products of large operands are split across the rayon pool;
//! since the coefficients are exact, the resulting term map does not depend
//! on how the work was scheduled.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact commutative coefficient ring.
///
/// The by-reference operations avoid cloning big integers in the inner
/// multiplication loop.
pub trait Coefficient:
    Clone + fmt::Debug + fmt::Display + FromStr + PartialEq + Zero + One + Neg<Output = Self> + Send + Sync
{
    fn add_assign_ref(&mut self, rhs: &Self);

    fn mul_ref(&self, rhs: &Self) -> Self;

    /// `self += a * b`.
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        let product = a.mul_ref(b);
        self.add_assign_ref(&product);
    }
}

macro_rules! impl_big_coefficient {
    ($($t:ty),*) => {$(
        impl Coefficient for $t {
            fn add_assign_ref(&mut self, rhs: &Self) {
                *self += rhs;
            }

            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }
        }
    )*};
}

macro_rules! impl_machine_coefficient {
    ($($t:ty),*) => {$(
        impl Coefficient for $t {
            fn add_assign_ref(&mut self, rhs: &Self) {
                *self = self.checked_add(*rhs).expect("coefficient overflow");
            }

            fn mul_ref(&self, rhs: &Self) -> Self {
                self.checked_mul(*rhs).expect("coefficient overflow")
            }
        }
    )*};
}

impl_big_coefficient!(BigInt, BigRational);
impl_machine_coefficient!(i64, i128);

/// Ordered, duplicate-free variable names shared by polynomials on the same torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableTable {
    names: Vec<String>,
}

impl VariableTable {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidSpec(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Arc::new(Self { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponents of a monomial, one slot per variable of the table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Box<[i32]>);

impl ExponentVector {
    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len].into_boxed_slice())
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl From<Vec<i32>> for ExponentVector {
    fn from(v: Vec<i32>) -> Self {
        Self(v.into_boxed_slice())
    }
}

impl From<&[i32]> for ExponentVector {
    fn from(v: &[i32]) -> Self {
        Self(v.into())
    }
}

impl Deref for ExponentVector {
    type Target = [i32];

    fn deref(&self) -> &[i32] {
        &self.0
    }
}

impl Borrow<[i32]> for ExponentVector {
    fn borrow(&self) -> &[i32] {
        &self.0
    }
}

type TermMap<C> = FxHashMap<ExponentVector, C>;

/// Image of one source variable under [`LaurentPolynomial::substitute_scaled`]:
/// a monomial in the target variables times a product of powers of the
/// factor polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledImage {
    pub monomial: Vec<i32>,
    pub factor_exponents: Vec<i64>,
}

#[derive(Clone)]
pub struct LaurentPolynomial<C> {
    vars: Arc<VariableTable>,
    terms: TermMap<C>,
}

/// Products with fewer term pairs than this run on the calling thread.
const PARALLEL_THRESHOLD: usize = 1 << 15;

impl<C: Coefficient> LaurentPolynomial<C> {
    pub fn zero(vars: Arc<VariableTable>) -> Self {
        Self {
            vars,
            terms: TermMap::default(),
        }
    }

    pub fn constant(vars: Arc<VariableTable>, c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            let dim = p.vars.len();
            p.terms.insert(ExponentVector::zeros(dim), c);
        }
        p
    }

    pub fn one(vars: Arc<VariableTable>) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn monomial(vars: Arc<VariableTable>, exponents: &[i32], c: C) -> Result<Self> {
        Self::from_terms(vars, [(exponents.to_vec(), c)])
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn variable(vars: Arc<VariableTable>, name: &str) -> Result<Self> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Self::monomial(vars, &e, C::one())
    }

    /// Sums repeated exponents and drops zero coefficients.
    pub fn from_terms<I>(vars: Arc<VariableTable>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, C)>,
    {
        let dim = vars.len();
        let mut map = TermMap::default();
        for (e, c) in terms {
            if e.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    got: e.len(),
                });
            }
            accumulate(&mut map, &e, c);
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self { vars, terms: map })
    }

    pub fn variables(&self) -> &Arc<VariableTable> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: &[i32]) -> C {
        self.terms.get(exponents).cloned().unwrap_or_else(C::zero)
    }

    /// The coefficient of the trivial monomial.
    pub fn constant_term(&self) -> C {
        self.coefficient(&vec![0; self.vars.len()])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &C)> {
        self.terms.iter()
    }

    /// Terms in lexicographic order of exponent vectors.
    pub fn sorted_terms(&self) -> Vec<(&ExponentVector, &C)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(b.0));
        terms
    }

    pub fn support(&self) -> BTreeSet<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    fn check_same_table(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_table(other)?;
        let (mut big, small) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (e, c) in &small.terms {
            accumulate_ref(&mut big.terms, e, c);
        }
        big.terms.retain(|_, c| !c.is_zero());
        Ok(big)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_table(other)?;
        let dim = self.vars.len();
        let (outer, inner) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let outer_terms: Vec<(&ExponentVector, &C)> = outer.terms.iter().collect();
        let inner_terms: Vec<(&ExponentVector, &C)> = inner.terms.iter().collect();
        let work = outer_terms.len().saturating_mul(inner_terms.len());

        let mut terms = if work < PARALLEL_THRESHOLD || rayon::current_num_threads() == 1 {
            multiply_chunk(&outer_terms, &inner_terms, dim)
        } else {
            let pieces = rayon::current_num_threads() * 4;
            let chunk = outer_terms.len().div_ceil(pieces).max(1);
            outer_terms
                .par_chunks(chunk)
                .map(|part| multiply_chunk(part, &inner_terms, dim))
                .reduce(TermMap::default, merge_maps)
        };
        terms.retain(|_, c| !c.is_zero());
        Ok(Self {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, x)| (e.clone(), x.mul_ref(c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Self {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// `self^e` by repeated multiplication by `self`.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.vars.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self^e` by binary powering.
    pub fn pow_binary(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.vars.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `[self⁰, self¹, …, self^max]`, each power computed from the previous one.
    pub fn powers(&self, max: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(max + 1);
        out.push(Self::one(self.vars.clone()));
        for i in 1..=max {
            let next = &out[i - 1] * self;
            out.push(next);
        }
        out
    }

    /// `[self · other]`, i.e. `Σ_e self(e) · other(−e)`, without forming the product.
    pub fn pairing(&self, other: &Self) -> Result<C> {
        self.check_same_table(other)?;
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = C::zero();
        let mut neg = vec![0i32; self.vars.len()];
        for (e, c) in &small.terms {
            for (slot, x) in neg.iter_mut().zip(e.iter()) {
                *slot = -x;
            }
            if let Some(d) = big.terms.get(neg.as_slice()) {
                acc.mul_add_assign(c, d);
            }
        }
        Ok(acc)
    }

    /// Monomial change of variables.
    ///
    /// `images[v]` is the exponent vector (over `target`) of the image of
    /// source variable `v`; `scale`, when given, multiplies every term by a
    /// fixed target monomial.
    pub fn substitute_monomial(
        &self,
        target: &Arc<VariableTable>,
        images: &[Vec<i32>],
        scale: Option<&[i32]>,
    ) -> Result<Self> {
        let dim = target.len();
        if images.len() != self.vars.len() {
            return Err(Error::Dimension {
                expected: self.vars.len(),
                got: images.len(),
            });
        }
        if let Some(bad) = images
            .iter()
            .map(Vec::as_slice)
            .chain(scale)
            .find(|im| im.len() != dim)
        {
            return Err(Error::Dimension {
                expected: dim,
                got: bad.len(),
            });
        }
        let mut terms = TermMap::default();
        let mut out = vec![0i32; dim];
        for (e, c) in &self.terms {
            map_exponent(e, images, scale, &mut out);
            accumulate_ref(&mut terms, &out, c);
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Self {
            vars: target.clone(),
            terms,
        })
    }

    /// Substitution whose images are monomials times powers of polynomials.
    ///
    /// Each term `c·x^e` maps to `c · (∏ monomial_v^{e_v}) · ∏_p factor_p^{net_p}`
    /// with `net_p = Σ_v e_v · factor_exponents_v[p]`. Every term must have
    /// `net_p ≥ 0`; otherwise the image is not a Laurent polynomial.
    pub fn substitute_scaled(
        &self,
        target: &Arc<VariableTable>,
        images: &[ScaledImage],
        factors: &[Self],
    ) -> Result<Self> {
        let dim = target.len();
        if images.len() != self.vars.len() {
            return Err(Error::Dimension {
                expected: self.vars.len(),
                got: images.len(),
            });
        }
        for im in images {
            if im.monomial.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    got: im.monomial.len(),
                });
            }
            if im.factor_exponents.len() != factors.len() {
                return Err(Error::Dimension {
                    expected: factors.len(),
                    got: im.factor_exponents.len(),
                });
            }
        }
        for f in factors {
            if f.vars != *target {
                return Err(Error::VariableMismatch);
            }
        }

        // Group terms by their factor exponents so each product of factor
        // powers is expanded once.
        let monomials: Vec<Vec<i32>> = images.iter().map(|im| im.monomial.clone()).collect();
        let mut groups: BTreeMap<Vec<u32>, TermMap<C>> = BTreeMap::new();
        let mut out = vec![0i32; dim];
        for (e, c) in &self.terms {
            let mut net = Vec::with_capacity(factors.len());
            for p in 0..factors.len() {
                let exponent: i64 = e
                    .iter()
                    .zip(images)
                    .map(|(&x, im)| i64::from(x) * im.factor_exponents[p])
                    .sum();
                if exponent < 0 {
                    return Err(Error::NegativeFactorExponent { factor: p, exponent });
                }
                net.push(u32::try_from(exponent).map_err(|_| {
                    Error::Internal(format!("factor exponent {exponent} too large"))
                })?);
            }
            map_exponent(e, &monomials, None, &mut out);
            accumulate_ref(groups.entry(net).or_default(), &out, c);
        }

        let mut power_cache: Vec<Vec<Self>> = factors.iter().map(|_| Vec::new()).collect();
        let mut result = Self::zero(target.clone());
        for (net, terms) in groups {
            let mut product = Self::one(target.clone());
            for (p, &m) in net.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                let cache = &mut power_cache[p];
                if cache.is_empty() {
                    cache.push(Self::one(target.clone()));
                }
                while cache.len() <= m as usize {
                    let next = cache.last().expect("non-empty") * &factors[p];
                    cache.push(next);
                }
                product = &product * &cache[m as usize];
            }
            let base = Self {
                vars: target.clone(),
                terms,
            };
            result = &result + &(&base * &product);
        }
        Ok(result)
    }

    /// Exact value at a point with every coordinate nonzero.
    pub fn evaluate<F>(&self, point: &[F]) -> Result<F>
    where
        F: Num + Clone + From<C>,
    {
        if point.len() != self.vars.len() {
            return Err(Error::Dimension {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        if let Some(idx) = point.iter().position(Zero::is_zero) {
            return Err(Error::ZeroCoordinate(self.vars.names[idx].clone()));
        }
        let inverses: Vec<F> = point.iter().map(|x| F::one() / x.clone()).collect();
        let mut total = F::zero();
        for (e, c) in self.sorted_terms() {
            let mut value = F::from(c.clone());
            for (v, &x) in e.iter().enumerate() {
                if x > 0 {
                    value = value * num_traits::pow(point[v].clone(), x as usize);
                } else if x < 0 {
                    value = value * num_traits::pow(inverses[v].clone(), x.unsigned_abs() as usize);
                }
            }
            total = total + value;
        }
        Ok(total)
    }

    /// Canonical serializable form: terms sorted lexicographically by exponent.
    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            variables: self.vars.names.clone(),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(e, c)| TermJson {
                    e: e.to_vec(),
                    c: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Self> {
        let vars = VariableTable::new(json.variables.iter().cloned())?;
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            let c = t
                .c
                .parse::<C>()
                .map_err(|_| Error::Json(format!("bad coefficient `{}`", t.c)))?;
            terms.push((t.e.clone(), c));
        }
        Self::from_terms(vars, terms)
    }
}

impl LaurentPolynomial<BigInt> {
    /// Exact value at a rational point, computed in integers.
    pub fn evaluate_exact(&self, point: &[BigRational]) -> Result<BigRational> {
        self.evaluator().evaluate(point)
    }

    /// Sorts the support once for repeated exact evaluation.
    pub fn evaluator(&self) -> ExactEvaluator<'_> {
        let dim = self.vars.len();
        let terms = self.sorted_terms();
        let mut lo = vec![0i32; dim];
        let mut hi = vec![0i32; dim];
        for (e, _) in &terms {
            for v in 0..dim {
                lo[v] = lo[v].min(e[v]);
                hi[v] = hi[v].max(e[v]);
            }
        }
        ExactEvaluator {
            vars: &self.vars,
            terms,
            lo,
            hi,
        }
    }
}

/// Evaluates an integer Laurent polynomial at rational points.
///
/// With `x_v = p_v/q_v` and `lo_v ≤ e_v ≤ hi_v` over the support, the sum
/// `Σ c·∏ p_v^{e_v−lo_v} q_v^{hi_v−e_v}` is integral; dividing by
/// `∏ p_v^{−lo_v} q_v^{hi_v}` gives the value. Terms are visited in
/// lexicographic order and combined Horner-style, so every multiplication
/// is by one small table entry.
pub struct ExactEvaluator<'a> {
    vars: &'a VariableTable,
    terms: Vec<(&'a ExponentVector, &'a BigInt)>,
    lo: Vec<i32>,
    hi: Vec<i32>,
}

impl ExactEvaluator<'_> {
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        let dim = self.vars.len();
        if point.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                got: point.len(),
            });
        }
        if let Some(idx) = point.iter().position(Zero::is_zero) {
            return Err(Error::ZeroCoordinate(self.vars.names[idx].clone()));
        }
        let (lo, hi, terms) = (&self.lo, &self.hi, &self.terms);
        // table[v][e − lo_v] = p_v^{e−lo_v} q_v^{hi_v−e}
        let table: Vec<Vec<BigInt>> = (0..dim)
            .map(|v| {
                let span = (hi[v] - lo[v]) as usize;
                let (p, q) = (point[v].numer(), point[v].denom());
                let mut p_pow = vec![BigInt::one(); span + 1];
                let mut q_pow = vec![BigInt::one(); span + 1];
                for i in 1..=span {
                    p_pow[i] = &p_pow[i - 1] * p;
                    q_pow[i] = &q_pow[i - 1] * q;
                }
                (0..=span).map(|i| &p_pow[i] * &q_pow[span - i]).collect()
            })
            .collect();

        // Multivariate Horner: acc[v] collects the subtree below the fixed
        // exponents e_0..e_{v-1}, still to be multiplied by table[v-1][e_{v-1}].
        let mut acc = vec![BigInt::zero(); dim + 1];
        let flush = |acc: &mut Vec<BigInt>, prev: &[i32], keep: usize| {
            for v in (keep + 1..=dim).rev() {
                let inner = std::mem::take(&mut acc[v]);
                acc[v - 1].mul_add_assign(&inner, &table[v - 1][(prev[v - 1] - lo[v - 1]) as usize]);
            }
        };
        let mut previous: Option<&[i32]> = None;
        for (e, c) in terms.iter() {
            if let Some(prev) = previous {
                let shared = prev.iter().zip(e.iter()).take_while(|(a, b)| a == b).count();
                flush(&mut acc, prev, shared);
            }
            acc[dim] += *c;
            previous = Some(e.as_slice());
        }
        if let Some(prev) = previous {
            flush(&mut acc, prev, 0);
        }
        let total = std::mem::take(&mut acc[0]);

        let mut value = BigRational::from_integer(total);
        for v in 0..dim {
            let p = BigRational::from_integer(point[v].numer().clone());
            let q = BigRational::from_integer(point[v].denom().clone());
            value *= p.pow(lo[v]) / q.pow(hi[v]);
        }
        Ok(value)
    }
}

fn map_exponent(e: &[i32], images: &[Vec<i32>], scale: Option<&[i32]>, out: &mut [i32]) {
    match scale {
        Some(s) => out.copy_from_slice(s),
        None => out.iter_mut().for_each(|x| *x = 0),
    }
    for (&x, image) in e.iter().zip(images) {
        if x != 0 {
            for (o, &y) in out.iter_mut().zip(image) {
                *o += x * y;
            }
        }
    }
}

fn accumulate<C: Coefficient>(map: &mut TermMap<C>, e: &[i32], c: C) {
    match map.get_mut(e) {
        Some(existing) => existing.add_assign_ref(&c),
        None => {
            map.insert(ExponentVector::from(e), c);
        }
    }
}

fn accumulate_ref<C: Coefficient>(map: &mut TermMap<C>, e: &[i32], c: &C) {
    match map.get_mut(e) {
        Some(existing) => existing.add_assign_ref(c),
        None => {
            map.insert(ExponentVector::from(e), c.clone());
        }
    }
}

fn multiply_chunk<C: Coefficient>(
    outer: &[(&ExponentVector, &C)],
    inner: &[(&ExponentVector, &C)],
    dim: usize,
) -> TermMap<C> {
    let mut map = TermMap::<C>::default();
    map.reserve(outer.len().max(inner.len()));
    let mut scratch = vec![0i32; dim];
    for (e1, c1) in outer {
        for (e2, c2) in inner {
            for ((s, a), b) in scratch.iter_mut().zip(e1.iter()).zip(e2.iter()) {
                *s = a + b;
            }
            match map.get_mut(scratch.as_slice()) {
                Some(existing) => existing.mul_add_assign(c1, c2),
                None => {
                    map.insert(ExponentVector::from(scratch.as_slice()), c1.mul_ref(c2));
                }
            }
        }
    }
    map
}

fn merge_maps<C: Coefficient>(a: TermMap<C>, b: TermMap<C>) -> TermMap<C> {
    let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    for (e, c) in small {
        match big.get_mut(&e) {
            Some(existing) => existing.add_assign_ref(&c),
            None => {
                big.insert(e, c);
            }
        }
    }
    big
}

impl<C: Coefficient> PartialEq for LaurentPolynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl<C: Coefficient> Eq for LaurentPolynomial<C> {}

impl<C: Coefficient> fmt::Debug for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

/// Panics if the variable tables differ; use [`LaurentPolynomial::try_add`] to handle that.
impl<C: Coefficient> Add for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;

    fn add(self, rhs: Self) -> LaurentPolynomial<C> {
        self.try_add(rhs).expect("adding polynomials over different variables")
    }
}

impl<C: Coefficient> Sub for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;

    fn sub(self, rhs: Self) -> LaurentPolynomial<C> {
        self.try_sub(rhs).expect("subtracting polynomials over different variables")
    }
}

/// Panics if the variable tables differ; use [`LaurentPolynomial::try_mul`] to handle that.
impl<C: Coefficient> Mul for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;

    fn mul(self, rhs: Self) -> LaurentPolynomial<C> {
        self.try_mul(rhs).expect("multiplying polynomials over different variables")
    }
}

impl<C: Coefficient> Neg for LaurentPolynomial<C> {
    type Output = Self;

    fn neg(self) -> Self {
        let terms = self.terms.into_iter().map(|(e, c)| (e, -c)).collect();
        Self {
            vars: self.vars,
            terms,
        }
    }
}

/// Renders terms as signed ratios of monomials, e.g. `a_2_2/a_1_2 + 2*a^2/(a_1_1*a_2_1)`.
impl<C: Coefficient> fmt::Display for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms = self.sorted_terms();
        terms.reverse();
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let mut coeff = c.to_string();
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factor = |v: usize, x: u32| {
                let name = &self.vars.names[v];
                if x == 1 {
                    name.clone()
                } else {
                    format!("{name}^{x}")
                }
            };
            let num: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(v, &x)| factor(v, x as u32))
                .collect();
            let den: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x < 0)
                .map(|(v, &x)| factor(v, x.unsigned_abs()))
                .collect();
            let unit = coeff == "1";
            let mut body = String::new();
            if !unit || num.is_empty() {
                body.push_str(&coeff);
                if !num.is_empty() {
                    body.push('*');
                }
            }
            body.push_str(&num.join("*"));
            if !den.is_empty() {
                body.push('/');
                if den.len() > 1 {
                    body.push_str(&format!("({})", den.join("*")));
                } else {
                    body.push_str(&den[0]);
                }
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

/// `{"variables": [...], "terms": [{"e": [...], "c": "..."}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub variables: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<i32>,
    pub c: String,
}
