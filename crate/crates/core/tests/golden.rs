mod common;

use bcfks::{closed_form, decompose, eliminate, Elimination};
use common::{golden_1112, golden_1121, reduced_variables, spec};

#[test]
fn reduced_tori_of_both_orders() {
    let names = |d: &[usize]| reduced_variables(&spec(3, 3, d)).names().to_vec();
    assert_eq!(names(&[1, 1, 2, 1]), ["a_1_2", "a_1_3", "a_2_1", "a_2_2", "a_2_3"]);
    assert_eq!(names(&[1, 1, 1, 2]), ["a_1_2", "a_1_3", "a_2_2", "a_2_3", "a_3_1"]);
}

#[test]
fn quadric_third() {
    let s = spec(3, 3, &[1, 1, 2, 1]);
    let f = eliminate(&decompose(&s)).unwrap();
    let golden = golden_1121();
    assert_eq!(f, golden, "\n got {f}\nwant {golden}");
    assert_eq!(closed_form(&s), f);
}

#[test]
fn quadric_last() {
    let s = spec(3, 3, &[1, 1, 1, 2]);
    let f = eliminate(&decompose(&s)).unwrap();
    let golden = golden_1112();
    assert_eq!(f, golden, "\n got {f}\nwant {golden}");
    assert_eq!(closed_form(&s), f);
}

#[test]
fn factored_display_lists_the_squared_quadric() {
    let el = Elimination::new(&decompose(&spec(3, 3, &[1, 1, 1, 2]))).unwrap();
    let text = el.factored().unwrap();
    assert!(text.contains(")^2"), "{text}");
}

#[test]
fn json_round_trip() {
    let f = golden_1121();
    let back = bcfks::IntPoly::from_json(&f.to_json()).unwrap();
    assert_eq!(back, f);
}
