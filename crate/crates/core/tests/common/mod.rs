//! Random codes and the algebraic laws shared by the property suite and the acceptance run.
#![allow(dead_code)]

use lcd_eaqecc::constacyclic::{
    cyclotomic_cosets, dual_constacyclic_unit, is_constacyclic, lcd_test_defining_set, ConstacyclicSpec,
};
use lcd_eaqecc::eaqecc::{derive_from_lcd, derive_general, galois_ebits};
use lcd_eaqecc::field::{make_field, Elem, Field};
use lcd_eaqecc::grs::power_sum_subgroup;
use lcd_eaqecc::lincode::{weight, LcdMethod, LinearCode};
use lcd_eaqecc::matrix::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const BUDGET: u64 = 1 << 20;

/// GF(4), GF(5), GF(9), GF(25).
pub fn small_fields() -> Vec<Field> {
    [(2, 2), (5, 1), (3, 2), (5, 2)].iter().map(|&(p, e)| make_field(p, e).unwrap()).collect()
}

pub fn random_matrix(f: &Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let q = f.order();
    Matrix::from_fn(f, rows, cols, |_, _| f.from_index(rng.gen_range(0..q)))
}

/// A random code of length 2..=7 with up to `n` generator rows (rank may drop).
pub fn random_code(fields: &[Field], seed: u64) -> LinearCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = &fields[rng.gen_range(0..fields.len())];
    let n = rng.gen_range(2..=7);
    let rows = rng.gen_range(1..=n);
    LinearCode::from_generator(&random_matrix(f, rows, n, &mut rng)).unwrap()
}

fn codewords(code: &LinearCode) -> Vec<Vec<Elem>> {
    let f = code.field();
    let l = code.dimension();
    let q = f.order();
    let total = q.pow(l as u32);
    (0..total)
        .map(|mut idx| {
            let msg: Vec<Elem> = (0..l)
                .map(|_| {
                    let x = f.from_index(idx % q);
                    idx /= q;
                    x
                })
                .collect();
            code.encode(&msg)
        })
        .collect()
}

fn galois_pairing(f: &Field, x: &[Elem], y: &[Elem], k: u32) -> Elem {
    x.iter().zip(y).fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, f.frobenius(b, k))))
}

/// `dim(C ∩ C^{⊥k})` by listing codewords and pairing them with the generator rows.
pub fn brute_hull(code: &LinearCode, k: u32) -> usize {
    let f = code.field();
    let g = code.generator();
    let count = codewords(code)
        .iter()
        .filter(|c| (0..g.rows()).all(|i| galois_pairing(f, g.row(i), c, k).is_zero()))
        .count() as u64;
    let mut h = 0;
    let mut size = 1;
    while size < count {
        size *= f.order();
        h += 1;
    }
    assert_eq!(size, count, "hull is a subspace");
    h
}

/// Minimum nonzero weight by listing every codeword.
pub fn brute_distance(code: &LinearCode) -> usize {
    codewords(code).iter().map(|c| weight(c)).filter(|&w| w > 0).min().unwrap_or(code.len() + 1)
}

fn small_enough(code: &LinearCode) -> bool {
    (code.field().order() as f64).powi(code.dimension() as i32) <= 4096.0
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// (a) Gram determinant and hull tests agree; (c) dimensions of code and dual add to n.
pub fn law_gram_hull_and_dual_dimension(code: &LinearCode) -> Result<(), String> {
    for k in 0..code.field().degree() {
        code.is_k_galois_lcd(k, LcdMethod::Both).map_err(|e| format!("k = {k}: {e}"))?;
        let dual = code.galois_dual(k).unwrap();
        ensure(dual.dimension() + code.dimension() == code.len(), || format!("k = {k}: dimensions do not add up"))?;
        if small_enough(code) {
            let h = brute_hull(code, k);
            ensure(h == code.hull_dimension(k).unwrap(), || format!("k = {k}: hull {h} by enumeration"))?;
        }
    }
    Ok(())
}

/// (b) `rank(H H‡) = n - l - dim hull`.
pub fn law_rank_identity(code: &LinearCode) -> Result<(), String> {
    for k in 0..code.field().degree() {
        let hull = if small_enough(code) { brute_hull(code, k) } else { code.hull_dimension(k).unwrap() };
        let r = galois_ebits(code, k).unwrap();
        ensure(r + hull + code.dimension() == code.len(), || {
            format!("k = {k}: rank {r}, hull {hull}, [{}, {}]", code.len(), code.dimension())
        })?;
    }
    Ok(())
}

/// (d) C is MDS iff its k-Galois dual is, on codes where both distances can be listed.
pub fn law_mds_duality(code: &LinearCode) -> Result<(), String> {
    for k in 0..code.field().degree() {
        let dual = code.galois_dual(k).unwrap();
        if !small_enough(code) || !small_enough(&dual) || dual.dimension() == 0 || code.dimension() == 0 {
            continue;
        }
        let mds = brute_distance(code) == code.len() + 1 - code.dimension();
        let dual_mds = brute_distance(&dual) == dual.len() + 1 - dual.dimension();
        ensure(mds == dual_mds, || format!("k = {k}: MDS {mds} but dual MDS {dual_mds}"))?;
    }
    Ok(())
}

/// (h) Every certificate derived from `code` keeps a nonnegative EA Singleton slack.
pub fn law_singleton(code: &LinearCode, seed: u64) -> Result<(), String> {
    let d = code.min_distance(BUDGET);
    for k in 0..code.field().degree() {
        if code.is_k_galois_lcd(k, LcdMethod::Gram).unwrap() && code.dimension() > 0 {
            derive_from_lcd(code, k, &d).map_err(|e| format!("LCD path k = {k}: {e}"))?;
        }
    }
    let other = random_code(&[code.field().clone()], seed ^ 0x9e37_79b9);
    if other.len() == code.len() {
        let d2 = other.min_distance(BUDGET);
        match derive_general(code, &d, &other, &d2) {
            Ok(_) | Err(lcd_eaqecc::eaqecc::EaError::NegativeLogicalDimension(_)) => {}
            Err(lcd_eaqecc::eaqecc::EaError::EbitsOutOfRange { .. }) => {}
            Err(e) => return Err(format!("general path: {e}")),
        }
    }
    Ok(())
}

/// (e) The k-Galois dual of a λ-constacyclic code is λ'-constacyclic for the dual unit λ'.
pub fn law_dual_constacyclic(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = small_fields();
    let f = &fields[rng.gen_range(0..fields.len())];
    let p = f.characteristic();
    let n = loop {
        let n = rng.gen_range(1..=8u64);
        if n % p != 0 {
            break n;
        }
    };
    let lambda = loop {
        let x = f.from_index(rng.gen_range(1..f.order()));
        if !x.is_zero() {
            break x;
        }
    };
    let spec = ConstacyclicSpec::new(f, n, lambda).map_err(|e| e.to_string())?;
    let chosen: Vec<u64> = spec.cosets().into_iter().filter(|_| rng.gen_bool(0.5)).flatten().collect();
    let set = spec.defining_set(chosen).map_err(|e| e.to_string())?;
    let code = spec.code(&set).map_err(|e| e.to_string())?;
    ensure(is_constacyclic(&code, lambda), || "code is not λ-constacyclic".into())?;
    for k in 0..f.degree() {
        let dual = code.galois_dual(k).unwrap();
        let unit = dual_constacyclic_unit(f, lambda, k).unwrap();
        ensure(is_constacyclic(&dual, unit), || format!("{f} n = {n} k = {k}: dual not closed"))?;
    }
    Ok(())
}

/// (f) The defining-set LCD test agrees with the Gram test on every negacyclic code of
/// length 5 over GF(9).
pub fn law_negacyclic_lcd_iff() -> Result<usize, String> {
    let f = make_field(3, 2).unwrap();
    let spec = ConstacyclicSpec::new(&f, 5, f.from_int(-1)).unwrap();
    let cosets = cyclotomic_cosets(9, 2, 5).unwrap();
    let mut checked = 0;
    for mask in 0u32..(1 << cosets.len()) {
        let chosen: Vec<u64> =
            cosets.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).flat_map(|(_, c)| c.clone()).collect();
        let set = spec.defining_set(chosen.clone()).unwrap();
        let code = spec.code(&set).unwrap();
        for k in 0..2 {
            let by_set = lcd_test_defining_set(&spec, &set, k).unwrap();
            let by_gram = code.is_k_galois_lcd(k, LcdMethod::Both).unwrap();
            ensure(by_set == by_gram, || format!("P = {chosen:?}, k = {k}: set test {by_set}, Gram {by_gram}"))?;
            checked += 1;
        }
    }
    Ok(checked)
}

/// (g) Power sums over order-l subgroups against `δ^s l` or 0, for every admissible
/// (l, δ, s < 2l).
pub fn law_power_sums() -> Result<usize, String> {
    let mut checked = 0;
    for (p, e) in [(5, 1), (7, 1), (3, 2), (5, 2)] {
        let f = make_field(p, e).unwrap();
        let q = f.order();
        for l in (1..q).filter(|l| (q - 1) % l == 0) {
            for delta in f.elements().filter(|x| !x.is_zero()) {
                for s in 0..2 * l {
                    let got = power_sum_subgroup(&f, l, delta, s).unwrap();
                    let want = if s % l == 0 {
                        f.mul(f.pow(delta, s), f.from_int((l % p) as i64))
                    } else {
                        Elem::ZERO
                    };
                    ensure(got == want, || format!("q = {q}, l = {l}, s = {s}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}
