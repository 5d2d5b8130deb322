//! Translate counts against the counting bounds, and the prime gap.
use sparsecvp::arith::rat_int;
use sparsecvp::oracle::{check_prime_gap, fundamental_grid};
use sparsecvp::{check_cauchy_davenport, check_counting_bounds, ConvexBody, Lattice};

fn main() {
    let z2 = Lattice::integer(2);
    let cube = ConvexBody::linf(rat_int(1), 2).unwrap();
    let reps = check_counting_bounds(&cube, &z2, &rat_int(3), &fundamental_grid(&z2, 8)).unwrap();
    let max = reps.iter().map(|r| r.count).max().unwrap();
    println!("max count {max}, lambda bound {}, volume bound {}", reps[0].lambda_bound, reps[0].volume_bound);

    println!("prime gap holds on 1001..100000: {}", check_prime_gap(1001, 100_000).is_none());
    println!("|{{0,1}} + {{0,3,5}}| bound holds mod 7: {}",
        check_cauchy_davenport(7, &[vec![0, 1], vec![0, 3, 5]]).unwrap());
}
