//! Negacyclic MDS 1-Galois LCD codes of length (p-1)/2 over GF(p^2), found by defining-set search.

use lcd_eaqecc::constacyclic::family_iv;
use lcd_eaqecc::eaqecc::derive_from_lcd;
use lcd_eaqecc::lincode::DEFAULT_BUDGET;

fn main() {
    for (p, l) in [(13, 1), (13, 2), (11, 1), (11, 2), (17, 3)] {
        let out = family_iv(p, 2, l).unwrap();
        let exact = out.code.min_distance(DEFAULT_BUDGET * 100);
        let cert = derive_from_lcd(&out.code, 1, &out.certificate).unwrap();
        println!(
            "p = {p}, l = {l}: P = {:?}, {cert}, BCH {} / enumeration {} ({})",
            out.defining_set.elements(),
            out.certificate.d_lower,
            exact.d_lower,
            exact.method
        );
    }
}
