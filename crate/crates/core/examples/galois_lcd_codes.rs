//! Galois duals, hulls and LCD tests for a small code over GF(25), plus exact distance.

use lcd_eaqecc::field::make_field;
use lcd_eaqecc::lincode::{LcdMethod, LinearCode, DEFAULT_BUDGET};
use lcd_eaqecc::matrix::Matrix;

fn main() {
    let f = make_field(5, 2).unwrap();
    let a = f.primitive_element();
    let g = Matrix::from_fn(&f, 3, 7, |i, j| f.pow(f.add(f.pow(a, j as u64), f.one()), i as u64));
    let code = LinearCode::from_generator(&g).unwrap();
    println!("[{}, {}] code over {f}", code.len(), code.dimension());
    for k in 0..f.degree() {
        let dual = code.galois_dual(k).unwrap();
        println!(
            "k = {k}: dual dimension {}, hull {}, LCD {} (gram and hull agree)",
            dual.dimension(),
            code.hull_dimension(k).unwrap(),
            code.is_k_galois_lcd(k, LcdMethod::Both).unwrap()
        );
    }
    let d = code.min_distance(DEFAULT_BUDGET);
    println!("distance {} by {}, MDS: {}", d.d_lower, d.method, code.is_mds(&d).unwrap());
}
