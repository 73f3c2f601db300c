//! Conjugacy classes of subgroups of small index in the Coxeter group
//! `<a,b,c,d | a^2, b^2, c^2, d^2, (ab)^5, (bc)^3, (cd)^3, [a,c], [b,d], [a,d]>`.
//!
//! Usage: `cargo run --release --example coxeter -- [N]` with `N ≤ 14`
//! (default 8). Larger indices are refused: the search grows quickly.

use std::time::Instant;

use cgt::{low_index_subgroups, quotient_abelian_probe, Presentation};

const PRESENTATION: &str =
    "<a,b,c,d | a^2, b^2, c^2, d^2, (a*b)^5, (b*c)^3, (c*d)^3, [a,c], [b,d], [a,d]>";

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .map_or(8, |a| a.parse().expect("index must be a number"));
    if !(1..=14).contains(&n) {
        eprintln!("index must be between 1 and 14");
        std::process::exit(2);
    }
    let p = Presentation::parse(PRESENTATION).unwrap();
    let start = Instant::now();
    let result = low_index_subgroups(&p, n, true);
    let probe = quotient_abelian_probe(&result, &p);
    for (s, q) in result.subgroups.iter().zip(&probe) {
        let torsion: Vec<String> = q.torsion.iter().map(|t| t.to_string()).collect();
        println!(
            "index {:2}  free_rank {}  torsion [{}]",
            s.index(),
            q.free_rank,
            torsion.join(", ")
        );
    }
    println!(
        "{} classes of subgroups of index <= {n} ({:.2?})",
        result.subgroups.len(),
        start.elapsed()
    );
}
