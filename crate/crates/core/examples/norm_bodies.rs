//! Gauges of balls and polytopes.
use sparsecvp::arith::{rat, rat_int};
use sparsecvp::{ConvexBody, RationalMatrix};

fn main() {
    let x = [rat(3, 4), rat(-1, 2)];
    for (name, k) in [
        ("l1", ConvexBody::l1(rat_int(1), 2).unwrap()),
        ("l2", ConvexBody::l2(rat_int(1), 2).unwrap()),
        ("linf", ConvexBody::linf(rat_int(1), 2).unwrap()),
    ] {
        println!("{name}: |x| = {}, r = {}, R = {}", k.gauge_exact(&x).unwrap(), k.r(), k.big_r());
    }

    let a = RationalMatrix::from_int_rows(&[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
    let simplex = ConvexBody::polytope(a, vec![rat_int(1), rat_int(1), rat_int(1)]).unwrap();
    println!("simplex: |x| = {}, |-x| = {}", simplex.gauge_exact(&x).unwrap(),
        simplex.gauge_exact(&[rat(-3, 4), rat(1, 2)]).unwrap());
    println!("gamma = {}, symmetric: {}", simplex.gamma(), simplex.is_symmetric());
    let sym = simplex.symmetrize();
    println!("symmetrized: |x| = {}", sym.gauge_exact(&x).unwrap());
}
