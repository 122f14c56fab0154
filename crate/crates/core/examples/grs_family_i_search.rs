//! LCD MDS GRS codes of length n <= q+1 found by searching column multipliers.

use lcd_eaqecc::eaqecc::{derive_from_lcd, mds_dual};
use lcd_eaqecc::field::make_field;
use lcd_eaqecc::grs::{family_i, family_i_period, family_i_search};
use lcd_eaqecc::lincode::DEFAULT_BUDGET;

fn main() {
    let f = make_field(5, 2).unwrap();
    let t = family_i_period(&f, 1);
    println!("q = 25, k = 1: period t = {t}");
    for l in 1..=4 {
        let out = if l < t as usize {
            family_i(&f, 1, 26, l, 1_000_000).unwrap()
        } else {
            // outside the guaranteed range; the search may still succeed
            family_i_search(&f, 1, 26, l, 1_000_000).unwrap()
        };
        let d = out.code.min_distance(DEFAULT_BUDGET);
        let cert = derive_from_lcd(&out.code, 1, &d).unwrap();
        let (dual, dd) = mds_dual(&out.code, 1, &d).unwrap();
        let dual_cert = derive_from_lcd(&dual, 1, &dd).unwrap();
        println!("l = {l}: {cert} and dual {dual_cert} after {} candidates", out.candidates);
    }
}
