//! Enumerates the cosets of `<x>` and of the trivial subgroup in Mennicke's
//! group of order 210 with both strategies and prints the statistics.
//! An optional argument overrides the coset limit.

use std::time::Instant;

use cgt::{enumerate, Presentation, Strategy, SubgroupSpec};

fn main() {
    let p = Presentation::parse("<x,y,z | x^y*x^-3, y^z*y^-2, z^x*z^-4>").unwrap();
    for subgroup in ["x", ""] {
        let h = SubgroupSpec::parse(subgroup, &p).unwrap();
        let cap: usize = std::env::args()
            .nth(1)
            .map_or(1_000_000, |a| a.parse().unwrap());
        let runs = [
            ("hlt", Strategy::hlt()),
            ("felsch", Strategy::felsch()),
            (
                "felsch+preferred",
                Strategy::felsch().with_preferred_definitions(10),
            ),
        ];
        for (label, s) in runs {
            let s = s.with_max_cosets(cap);
            let start = Instant::now();
            match enumerate(&p, &h, &s) {
                Ok(r) => {
                    let st = r.stats();
                    println!(
                        "H=<{subgroup}> {label}: index {} max {} total {} ({:.2?})",
                        r.index(),
                        st.max_active,
                        st.total_defined,
                        start.elapsed()
                    );
                }
                Err(e) => println!("H=<{subgroup}> {label}: {e} ({:.2?})", start.elapsed()),
            }
        }
    }
}
