//! EAQECC parameters two ways, a JSON certificate, and its independent verification.

use lcd_eaqecc::certificate::{parse_documents, Side};
use lcd_eaqecc::eaqecc::{derive_from_lcd, derive_general};
use lcd_eaqecc::field::make_field;
use lcd_eaqecc::grs::family_iii;
use lcd_eaqecc::lincode::{DistanceOptions, DEFAULT_BUDGET};
use lcd_eaqecc::pipeline::{construct, FamilyParams, Request};
use lcd_eaqecc::verify::verify;

fn main() {
    let f = make_field(5, 2).unwrap();
    let out = family_iii(&f, 1, 4, 2).unwrap();
    let d = out.code.min_distance(DEFAULT_BUDGET);
    let lcd = derive_from_lcd(&out.code, 1, &d).unwrap();
    // H_2 = H^(p^(e-k)) is the parity check of C^(p^(e-k))
    let twin = out.code.galois_power_code(1).unwrap();
    let general = derive_general(&out.code, &d, &twin, &d).unwrap();
    println!("LCD path {lcd}, general path {general}, flags {:?}", lcd.flags);

    let req = Request { p: 5, e: 2, k: 1, family: FamilyParams::III { l: 4, case: 3 }, distance: DistanceOptions::default() };
    let docs = construct(&req, &[Side::Code, Side::Dual]).unwrap();
    let json = serde_json::Value::Array(docs.iter().map(|d| d.to_json()).collect());
    let text = serde_json::to_string(&json).unwrap();
    println!("certificate JSON: {} bytes", text.len());

    let mut parsed = parse_documents(&serde_json::from_str(&text).unwrap()).unwrap();
    for doc in &parsed {
        let report = verify(doc, &DistanceOptions::default());
        println!("{} ({}): {}", doc.certificate, doc.source.side.as_str(), if report.passed() { "verified" } else { "FAILED" });
    }
    parsed[0].certificate.c += 1;
    let report = verify(&parsed[0], &DistanceOptions::default());
    for c in report.failures() {
        println!("tampered c caught: {} {}", c.name, c.detail);
    }
}
