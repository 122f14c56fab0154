//! Arithmetic in GF(25) and GF(7^12), Frobenius powers and a subfield embedding.

use lcd_eaqecc::field::{extension_field, make_field};

fn main() {
    let f = make_field(5, 2).unwrap();
    println!("{f}, modulus (constant term first) {:?}", f.modulus());
    let a = f.primitive_element();
    let x = f.from_coeffs(&[2, 3]).unwrap();
    println!("alpha = {}, x = {}", f.format(a), f.format(x));
    println!("x + alpha = {}", f.format(f.add(x, a)));
    println!("x * alpha = {}", f.format(f.mul(x, a)));
    println!("1 / x = {}", f.format(f.inv(x).unwrap()));
    println!("x^5 = {} = frobenius(x, 1) = {}", f.format(f.pow(x, 5)), f.format(f.frobenius(x, 1)));
    println!("order of x = {}", f.element_order(x).unwrap());

    // GF(25) inside GF(5^4)
    let (big, emb) = extension_field(&f, 2).unwrap();
    let y = emb.apply(x);
    println!("x in {big}: {}, back: {:?}", big.format(y), emb.preimage(y).map(|z| f.format(z)));

    let g = make_field(7, 12).unwrap();
    let b = g.primitive_element();
    let t = g.pow(b, 13_841_287_200 / 100);
    println!("in {g}: alpha^((q-1)/100) has order {}", g.element_order(t).unwrap());
}
