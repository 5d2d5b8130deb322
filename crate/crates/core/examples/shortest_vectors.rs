//! Shortest vectors and exact closest vectors.
use sparsecvp::arith::{rat, rat_int};
use sparsecvp::{cvp_exact, shortest_vectors, svp_l2, ConvexBody, Lattice};

fn main() {
    let l = Lattice::from_int_rows(&[vec![1, 5], vec![1, 6]]).unwrap();
    for p in &svp_l2(&l) {
        println!("l2 shortest: {:?}", p.ambient.iter().map(|v| v.to_string()).collect::<Vec<_>>());
    }
    let cube = ConvexBody::linf(rat_int(1), 2).unwrap();
    let sv = shortest_vectors(&cube, &l, &rat(1, 4)).unwrap();
    println!("{} linf shortest vectors", sv.len());

    let (d, near) = cvp_exact(&cube, &l, &[rat(7, 3), rat(-1, 2)]).unwrap();
    println!("linf distance to (7/3, -1/2): {d}, attained by {} points", near.len());
}
