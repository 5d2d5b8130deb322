//! Membership, canonical bases, LLL and modular sublattices.
use sparsecvp::arith::rat;
use sparsecvp::{Lattice, RationalMatrix};

fn show(m: &RationalMatrix) -> String {
    let rows: Vec<String> = m.to_rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

fn main() {
    // columns (2, 0) and (1, 2)
    let l = Lattice::from_int_rows(&[vec![2, 1], vec![0, 2]]).unwrap();
    println!("det {}", l.determinant());
    println!("(3, 2) in L: {}", l.contains(&[rat(3, 1), rat(2, 1)]).unwrap());
    println!("(1, 1) in L: {}", l.contains(&[rat(1, 1), rat(1, 1)]).unwrap());
    println!("HNF {}", show(&l.hnf_basis()));

    let skew = Lattice::from_int_rows(&[vec![1, 5], vec![1, 6]]).unwrap();
    let red = skew.lll_reduce();
    println!("LLL {} -> {}", show(skew.basis()), show(red.basis()));

    let z2 = Lattice::integer(2);
    let sub = z2.sublattice_mod(&[rat(1, 1), rat(1, 1)], 3).unwrap();
    println!("{{y in Z^2 : y1 + y2 = 0 mod 3}} has basis {}", show(sub.basis()));
}
