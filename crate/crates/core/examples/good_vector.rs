//! A linear form mod p with few zeros and many values on a point set.
use sparsecvp::{find_prime, good_vector, ModPVector};

fn main() {
    // 1089 integer points of a square, reduced mod the next suitable prime
    let pts: Vec<(i64, i64)> = (-16..=16).flat_map(|x| (-16..=16).map(move |y| (x, y))).collect();
    let p = find_prime(pts.len() as u64).unwrap();
    let set: Vec<ModPVector> = pts
        .iter()
        .map(|&(x, y)| ModPVector::new(vec![x.rem_euclid(p as i64) as u64, y.rem_euclid(p as i64) as u64], p))
        .collect();
    let res = good_vector(&set, p).unwrap();
    println!("|S| = {}, p = {p}", set.len());
    println!("a = {:?}: {} zeros, {} distinct values", res.a.entries, res.zeros, res.distinct);
}
