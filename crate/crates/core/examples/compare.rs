//! Cardinality and comparison counts of every marking algorithm on the
//! same instances.

use doerfler::oracle::nmin_oracle;
use doerfler::{mark_with, Algorithm, Counting, IndicatorVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let n = 50_000;
    // a few large indicators and a long tail, as after a few refinements
    let x = IndicatorVector::new((0..n).map(|_| (-12.0 * rng.gen::<f64>()).exp()).collect()).unwrap();
    let nu = 0.5;
    println!("{:>9}  {:>5}  {:>8}  {:>12}", "algorithm", "theta", "#M", "comparisons");
    for theta in [0.1, 0.5, 0.9] {
        let nmin = nmin_oracle(&x, theta).unwrap();
        for a in Algorithm::ALL {
            let mut probe = Counting::new();
            let m = mark_with(a, &x, theta, nu, &mut probe).unwrap();
            println!("{a:>9}  {theta:>5}  {:>8}  {:>12}", m.outcome.cardinality(), probe.comparisons);
        }
        println!("{:>9}  {theta:>5}  {nmin:>8}", "N_min");
    }
}
