//! Row reduction, rank, kernels and the Galois conjugate transpose over GF(9).

use lcd_eaqecc::field::make_field;
use lcd_eaqecc::matrix::Matrix;

fn main() {
    let f = make_field(3, 2).unwrap();
    let a = f.primitive_element();
    let m = Matrix::from_fn(&f, 3, 5, |i, j| f.pow(a, (i * j + i) as u64));
    println!("M = {m:?}");
    let r = m.rref();
    println!("rank {} pivots {:?}", r.rank, r.pivots);
    println!("RREF = {:?}", r.matrix);

    let h = m.right_kernel();
    println!("kernel basis = {h:?}");
    println!("M Kᵀ is zero: {}", m.mul(&h.transpose()).unwrap().is_zero());

    let conj = m.galois_conj_transpose(1).unwrap();
    let gram = m.mul(&conj).unwrap();
    println!("M M‡ (k = 1) = {gram:?}");
    println!("det(M M‡) = {}", f.format(gram.det().unwrap()));
}
