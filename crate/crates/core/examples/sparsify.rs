//! Deterministic and randomized sparsifiers, checked on a target grid.
use sparsecvp::arith::rat_int;
use sparsecvp::oracle::fundamental_grid;
use sparsecvp::{sparsify, sparsify_randomized, verify_sparsifier, ConvexBody, Lattice};

fn main() {
    let l = Lattice::from_int_rows(&[vec![2, 1], vec![0, 3]]).unwrap();
    let cube = ConvexBody::linf(rat_int(1), 2).unwrap();
    let t = rat_int(400);

    let (sparse, report) = sparsify(&cube, &l, &t).unwrap();
    println!("levels: {}", report.levels.len());
    for lev in &report.levels {
        println!("  i={} N={} p={:?}", lev.i, lev.count, lev.p);
    }
    println!("det {} -> {}", l.determinant(), sparse.determinant());

    let grid = fundamental_grid(&l, 4);
    let check = verify_sparsifier(&cube, &l, &sparse, &t, &grid).unwrap();
    println!("verified: {} (max count {} of {})", check.pass, check.max_count, check.count_bound);

    let (rnd, rep) = sparsify_randomized(&cube, &l, &rat_int(200), 42).unwrap();
    println!("randomized: det {}, retries {:?}", rnd.determinant(), rep.levels[0].retries);
    println!("{}", serde_json::to_string(&report.to_json()).unwrap());
}
