#![allow(dead_code)]

use std::sync::Arc;

use bcfks::{decompose, IntPoly, Integer, ModelSpec, VariableTable};

pub fn spec(n: usize, k: usize, degrees: &[usize]) -> ModelSpec {
    ModelSpec::new(n, k, degrees.to_vec()).unwrap()
}

/// Monomial `x₁^{e₁}⋯` given as `(name, exponent)` pairs.
pub fn mono(vars: &Arc<VariableTable>, factors: &[(&str, i32)]) -> IntPoly {
    let mut e = vec![0; vars.len()];
    for (name, power) in factors {
        e[vars.index_of(name).unwrap_or_else(|| panic!("no variable {name}"))] += power;
    }
    IntPoly::monomial(vars.clone(), &e, Integer::from(1)).unwrap()
}

pub fn sum(terms: &[IntPoly]) -> IntPoly {
    let mut acc = IntPoly::zero(terms[0].variables().clone());
    for t in terms {
        acc = &acc + t;
    }
    acc
}

/// The torus `(a_{1,2}, a_{1,3}, a_{2,1}, a_{2,2}, a_{2,3})` of G(3,6) with degrees (1,1,2,1).
pub fn golden_1121() -> IntPoly {
    let vars = reduced_variables(&spec(3, 3, &[1, 1, 2, 1]));
    let m = |f: &[(&str, i32)]| mono(&vars, f);
    let first = sum(&[
        m(&[("a_2_1", 1)]),
        m(&[("a_2_2", 1), ("a_1_2", -1)]),
        m(&[("a_2_3", 1), ("a_1_3", -1)]),
    ]);
    // a_{3,2} is a weight variable and is set to 1.
    let quadric = sum(&[
        m(&[("a_2_1", -1)]),
        m(&[("a_2_2", -1)]),
        m(&[("a_2_3", -1)]),
        m(&[("a_1_2", 1)]),
        m(&[("a_2_2", 1), ("a_2_1", -1)]),
        m(&[]),
    ]);
    let last = sum(&[
        m(&[("a_1_3", 1), ("a_1_2", -1)]),
        m(&[("a_2_3", 1), ("a_2_2", -1)]),
        m(&[]),
    ]);
    &(&(&first * &quadric) * &quadric) * &last
}

/// The torus `(a_{1,2}, a_{1,3}, a_{2,2}, a_{2,3}, a_{3,1})` of G(3,6) with degrees (1,1,1,2).
pub fn golden_1112() -> IntPoly {
    let vars = reduced_variables(&spec(3, 3, &[1, 1, 1, 2]));
    let m = |f: &[(&str, i32)]| mono(&vars, f);
    let first = sum(&[
        m(&[]),
        m(&[("a_2_2", 1), ("a_1_2", -1)]),
        m(&[("a_2_3", 1), ("a_1_3", -1)]),
    ]);
    let second = sum(&[m(&[("a_3_1", 1)]), m(&[("a_2_2", -1)]), m(&[("a_2_3", -1)])]);
    let quadric = sum(&[
        m(&[("a_1_2", 1)]),
        m(&[("a_2_2", 1)]),
        m(&[("a_3_1", -1)]),
        m(&[("a_1_3", 1), ("a_1_2", -1)]),
        m(&[("a_2_3", 1), ("a_2_2", -1)]),
        m(&[]),
    ]);
    &(&(&first * &second) * &quadric) * &quadric
}

pub fn reduced_variables(spec: &ModelSpec) -> Arc<VariableTable> {
    bcfks::eliminate(&decompose(spec)).unwrap().variables().clone()
}
