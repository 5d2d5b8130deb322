//! Exact rationals, HNF and kernels mod p.
use sparsecvp::arith::{hnf, kernel_mod_p, parse_rational, sqrt_bracket, IntMatrix};

fn main() {
    let x = parse_rational("-7/21").unwrap();
    println!("parsed -7/21 as {x}");

    let m = IntMatrix::from_rows(&[vec![4, 1], vec![2, 3]]).unwrap();
    let (h, u) = hnf(&m).unwrap();
    println!("HNF {:?}", h.to_rows());
    println!("transform {:?} (unimodular: {})", u.to_rows(), u.is_unimodular());

    let ker = kernel_mod_p(&[vec![1, 2, 3]], 3, 7).unwrap();
    println!("kernel of (1 2 3) mod 7: {ker:?}");

    let (lo, hi) = sqrt_bracket(&parse_rational("2").unwrap(), 20);
    println!("sqrt(2) in [{lo}, {hi}]");
}
