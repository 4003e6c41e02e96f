//! Why structure matters: against an unstructured two-bit black box, a
//! classical strategy limited to one query can only be one of 8 decision
//! trees — and none of them computes AND or XOR. The one-query protocols in
//! this crate work because SAT instances can be merged and superposed, not
//! because two bits were ever free.

use onequery::harness::{contrast_demo, render_contrast};

fn main() {
    let rows = contrast_demo();
    print!("{}", render_contrast(&rows));

    let count = |bits: &str| {
        rows.iter()
            .find(|r| r.table == bits)
            .map(|r| r.succeeding_trees)
            .unwrap()
    };
    println!();
    println!(
        "and: {}/8 trees, xor: {}/8 trees",
        count("0001"),
        count("0110")
    );
    println!(
        "single-bit projections: {}/8 and {}/8 trees",
        count("0011"),
        count("0101")
    );
    assert_eq!(count("0001"), 0);
    assert_eq!(count("0110"), 0);
    assert!(count("0011") >= 1 && count("0101") >= 1);
}
