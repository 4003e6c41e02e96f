//! Parse a formula from both supported syntaxes, Tseitin-encode it, and
//! decide satisfiability with both solver backends.

use onequery::formula::{cnf_to_formula, serialize_dimacs, tseitin};
use onequery::{brute_force_sat, dpll_sat, parse_dimacs, parse_expr, serialize_expr};

fn main() {
    let f = parse_expr("(x1 | x2) & !x3 & (!x1 | x3)").expect("valid expression");
    println!("expression: {}", serialize_expr(&f));

    let cnf = tseitin(&f);
    println!("\ntseitin encoding ({} vars):", cnf.num_vars);
    print!("{}", serialize_dimacs(&cnf));

    println!(
        "dpll says:        {}",
        if dpll_sat(&cnf) { "SAT" } else { "UNSAT" }
    );
    let brute = brute_force_sat(&f).expect("small enough to enumerate");
    println!("brute force says: {}", if brute { "SAT" } else { "UNSAT" });

    // The same instance as DIMACS text.
    let text = "c a tiny instance\np cnf 2 2\n1 -2 0\n-1 2 0\n";
    let parsed = parse_dimacs(text).expect("valid DIMACS");
    let as_tree = cnf_to_formula(&parsed);
    println!(
        "\nDIMACS instance as expression: {}",
        serialize_expr(&as_tree)
    );
    println!(
        "dpll says:        {}",
        if dpll_sat(&parsed) { "SAT" } else { "UNSAT" }
    );
}
