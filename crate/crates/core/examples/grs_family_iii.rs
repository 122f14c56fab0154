//! GRS codes over a subgroup and its coset: lengths 2l, 2l+1, 2l+2.

use lcd_eaqecc::eaqecc::derive_from_lcd;
use lcd_eaqecc::field::make_field;
use lcd_eaqecc::grs::family_iii;
use lcd_eaqecc::lincode::DEFAULT_BUDGET;

fn main() {
    let f = make_field(5, 2).unwrap();
    for case in 1..=3 {
        let out = family_iii(&f, 1, 4, case).unwrap();
        let d = out.code.min_distance(DEFAULT_BUDGET);
        let cert = derive_from_lcd(&out.code, 1, &d).unwrap();
        let eta = out.data.eta.map(|x| f.format(x));
        println!("q = 25 case {case}: {cert}, distance by {}, eta = {eta:?}", d.method);
    }

    let g = make_field(7, 12).unwrap();
    for case in 1..=3 {
        let out = family_iii(&g, 2, 48, case).unwrap();
        let cert = derive_from_lcd(&out.code, 2, &out.certificate).unwrap();
        println!("q = 7^12 case {case}: {cert}, distance by {}", out.certificate.method);
    }
}
