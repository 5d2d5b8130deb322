//! Reading bases, targets and body specifications, and driving the CLI.
use sparsecvp::io::{format_basis, parse_basis, parse_body, parse_target};

fn main() {
    let basis = parse_basis("# columns are basis vectors\n2\n2 1/2\n0 3\n").unwrap();
    print!("{}", format_basis(&basis));
    let x = parse_target("1/3 -2\n", 2).unwrap();
    println!("target {:?}", x.iter().map(|v| v.to_string()).collect::<Vec<_>>());
    let k = parse_body(r#"{"type":"symmetrized","inner":{"type":"polytope","A":[[1,0],[0,1],[-1,-1]],"b":[1,1,1]}}"#, 2).unwrap();
    println!("body r = {}, R = {}", k.r(), k.big_r());

    match parse_basis("2\n1 0\n0 0.5\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }

    let code = sparsecvp::cli::run(["sparsecvp", "verify", "primegap", "--from", "1001", "--to", "2000"],
        &mut std::io::stdout(), &mut std::io::stderr());
    println!("exit {code}");
}
