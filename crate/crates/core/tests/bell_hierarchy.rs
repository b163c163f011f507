//! How the Bell gamble behaves as an assessment across degrees.

use pcoherence::coherence::{check_consistency, hierarchy, upper_prevision, AssessmentSet};
use pcoherence::moment::{bell_gamble, bell_state};
use pcoherence::polynomial::rat;
use pcoherence::Polynomial;

#[test]
fn bell_gamble_is_accepted_only_at_degree_two() {
    let eps = rat(1, 100);
    let set = AssessmentSet::new(3, vec![bell_gamble(&eps)]).unwrap();
    assert!(check_consistency(&set, 2).unwrap().consistent);
    // at degree 3 every normalized coefficient is at most -1/100
    assert!(!check_consistency(&set, 3).unwrap().consistent);
    assert!(!check_consistency(&set, 4).unwrap().consistent);
    // and the degree-2 state has no valid cubic extension
    assert!(!bell_state().extends_to(3).unwrap());
}

#[test]
fn bell_gamble_upper_prevision() {
    let eps = rat(1, 100);
    let q = bell_gamble(&eps);
    let r = upper_prevision(&q, &AssessmentSet::empty(3), 2).unwrap();
    assert_eq!(r.value, rat(49, 100));
    assert!(r.residual(&q, &AssessmentSet::empty(3)).unwrap().is_zero());
    let r = upper_prevision(&q, &AssessmentSet::empty(3), 3).unwrap();
    assert_eq!(r.value, rat(-1, 100));
}

#[test]
fn counter_example_hierarchy_values() {
    let t1 = Polynomial::var(2, 0);
    let t2 = Polynomial::var(2, 1);
    let q = &(&(&t1 * &t1) - &(&t1 * &t2)) + &(&t2 * &t2);
    let rows = hierarchy(&q, &AssessmentSet::empty(2), 2, 10).unwrap();
    // -1 / (d (d - 1))
    for (d, v) in rows {
        let d = i64::from(d);
        assert_eq!(v, rat(-1, d * (d - 1)), "d = {d}");
    }
}
