//! Decrement marking is not quasi-minimal: for every factor C there is a
//! vector on which it marks more than C times the minimum.

use doerfler::decrement::decrement_mark;
use doerfler::oracle::{gen_counterexample, nmin_oracle};

fn main() {
    let (theta, nu) = (0.5, 0.5);
    for c in 1..=5 {
        let (x, spec) = gen_counterexample(c, theta, nu).unwrap();
        let marked = decrement_mark(&x, theta, nu).unwrap().cardinality();
        let nmin = nmin_oracle(&x, theta).unwrap();
        println!(
            "C = {c}: delta = {}, epsilon = {}, R = {}, N = {}  ->  #M = {marked}, N_min = {nmin}, ratio {:.2}",
            spec.delta,
            spec.epsilon,
            spec.r,
            spec.n,
            marked as f64 / nmin as f64
        );
        assert!(marked > c * nmin);
    }
}
