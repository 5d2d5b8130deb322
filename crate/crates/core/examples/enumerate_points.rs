//! Lattice points of a scaled, translated body.
use sparsecvp::arith::{rat, rat_int};
use sparsecvp::{count_in_body, lattice_enum, ConvexBody, Lattice};

fn main() {
    let z2 = Lattice::integer(2);
    let ball = ConvexBody::l2(rat_int(1), 2).unwrap();
    let origin = [rat_int(0), rat_int(0)];
    let points = lattice_enum(&ball, &origin, &rat_int(2), &z2, &rat(1, 100)).unwrap();
    println!("{} points of Z^2 in the radius-2 disc", points.len());
    for p in &points {
        println!("  {:?}", p.ambient.iter().map(|v| v.to_string()).collect::<Vec<_>>());
    }
    let half = [rat(1, 2), rat(1, 2)];
    println!("shifted by (1/2, 1/2): {}", count_in_body(&ball, &half, &rat_int(2), &z2).unwrap());
}
