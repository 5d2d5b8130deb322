//! Approximate closest vectors under an asymmetric norm.
use sparsecvp::arith::{rat, rat_int};
use sparsecvp::{approx_cvp, cvp_exact, ConvexBody, Lattice, RationalMatrix};

fn main() {
    let l = Lattice::from_int_rows(&[vec![3, 1], vec![0, 2]]).unwrap();
    let a = RationalMatrix::from_int_rows(&[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
    let k = ConvexBody::polytope(a, vec![rat_int(1), rat_int(2), rat(1, 2)]).unwrap();
    let x = [rat(5, 3), rat(-7, 4)];

    let res = approx_cvp(&k, &l, &x, &rat(1, 2)).unwrap();
    println!("bound {} (sparsified {} times)", res.distance_bound, res.trace.reports.len());
    for p in &res.points {
        let d = k.gauge_exact(&sparsecvp::arith::sub_vec(&p.ambient, &x)).unwrap();
        println!("  coeffs {:?} at distance {d}", p.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    }
    let (exact, _) = cvp_exact(&k, &l, &x).unwrap();
    println!("exact distance {exact}");
}
