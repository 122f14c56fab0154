//! MDS Galois LCD constacyclic codes of length (q-1)/r over GF(343) and their EAQECCs.

use lcd_eaqecc::constacyclic::family_ii;
use lcd_eaqecc::eaqecc::derive_from_lcd;
use lcd_eaqecc::field::make_field;

fn main() {
    let f = make_field(7, 3).unwrap();
    for r in [3, 6] {
        for d in 2..=6 {
            let out = family_ii(&f, 1, r, d).unwrap();
            let cert = derive_from_lcd(&out.code, 1, &out.certificate).unwrap();
            println!(
                "r = {r}, lambda order {}, P = {:?}: {cert} ({})",
                out.spec.r,
                out.defining_set.elements(),
                out.certificate.method
            );
        }
    }
}
