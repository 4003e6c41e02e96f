//! Merge two instances into one whose answer is the OR (or AND) of the
//! individual answers. The right instance's variables are renamed past the
//! left's, so a shared variable name never couples the two.

use onequery::{and_combine, brute_force_sat, or_combine, parse_expr, serialize_expr};

fn main() {
    // Both mention x2, with opposite polarity.
    let a = parse_expr("x1 & !x2").expect("valid");
    let b = parse_expr("x2").expect("valid");

    let sat = |f| brute_force_sat(f).expect("small enough");
    println!("A = {}   (sat: {})", serialize_expr(&a), sat(&a));
    println!("B = {}   (sat: {})", serialize_expr(&b), sat(&b));

    let disjunction = or_combine(&a, &b);
    let conjunction = and_combine(&a, &b);
    println!("\nA|B -> {}", serialize_expr(&disjunction));
    println!("A&B -> {}", serialize_expr(&conjunction));
    println!(
        "\nO(A|B) = {}  (= O(A) or O(B) = {})",
        sat(&disjunction),
        sat(&a) || sat(&b)
    );
    println!(
        "O(A&B) = {}  (= O(A) and O(B) = {})",
        sat(&conjunction),
        sat(&a) && sat(&b)
    );
    println!("\nWithout the rename, A&B would wrongly be UNSAT: x2 cannot be");
    println!("false for A and true for B at once — but B's x2 is now x4.");
}
