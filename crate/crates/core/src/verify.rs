//! Independent re-checking of a certificate document.

use std::fmt;

use crate::certificate::{Document, Side};
use crate::eaqecc::{ea_singleton_slack, galois_ebits};
use crate::lincode::{weight, DistanceOptions, LcdMethod, LinearCode};
use crate::pipeline::structural_certificate;

#[derive(Clone, Debug)]
pub struct Claim {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }

    fn check(&mut self, name: &'static str, pass: bool, detail: impl Into<String>) {
        self.claims.push(Claim { name, pass, detail: detail.into() });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.claims {
            writeln!(f, "{} {:<12} {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Recompute every claim in `doc` from its field, generator and construction data.
pub fn verify(doc: &Document, opts: &DistanceOptions) -> Report {
    let mut report = Report::default();
    let cert = &doc.certificate;
    let src = &doc.source;
    let rec = &src.code;
    let field = &rec.field;
    let (n, l) = (rec.n, rec.l);

    report.check(
        "field",
        cert.q == field.order(),
        format!("q = {} for p = {}, e = {}", field.order(), field.characteristic(), field.degree()),
    );

    let g = &rec.generator;
    let rref = g.rref();
    let g_ok = g.rows() == l && rref.rank == l && rref.matrix == *g && cert.n == n;
    report.check("generator", g_ok, format!("{}x{} RREF of rank {} (claimed l = {l}, n = {n})", g.rows(), g.cols(), rref.rank));

    let h = &rec.parity_check;
    let orthogonal = match g.mul(&h.transpose()) {
        Ok(m) => m.is_zero(),
        Err(_) => false,
    };
    let h_rank = h.rank();
    report.check(
        "parity",
        orthogonal && h_rank == n - l.min(n) && h.rows() == h_rank,
        format!("G Hᵀ {} zero, rank(H) = {h_rank}", if orthogonal { "is" } else { "is not" }),
    );

    let code = match LinearCode::from_generator(g) {
        Ok(c) => c,
        Err(e) => {
            report.check("code", false, e.to_string());
            return report;
        }
    };

    let rebuilt = src.construction.rebuild(field).and_then(|base| {
        let stored = match src.side {
            Side::Code => base.clone(),
            Side::Dual => base.galois_dual(src.k)?,
        };
        Ok((base, stored))
    });
    let base = match rebuilt {
        Ok((base, stored)) => {
            let same = stored.generator() == code.generator();
            report.check("provenance", same, format!("{} side rebuilt from construction data", src.side.as_str()));
            Some(base)
        }
        Err(e) => {
            report.check("provenance", false, e.to_string());
            None
        }
    };

    report.check("dimension", cert.kq == code.dimension(), format!("kq = {} against l = {}", cert.kq, code.dimension()));

    let lcd = code.is_k_galois_lcd(src.k, LcdMethod::Both);
    report.check(
        "lcd",
        src.lcd && matches!(lcd, Ok(true)),
        match &lcd {
            Ok(v) => format!("{}-Galois LCD: {v}", src.k),
            Err(e) => e.to_string(),
        },
    );

    let ebits = galois_ebits(&code, src.k);
    report.check(
        "ebits",
        matches!(ebits, Ok(c) if c == cert.c && c == n - code.dimension()),
        match &ebits {
            Ok(c) => format!("rank(H H‡) = {c}, claimed c = {}", cert.c),
            Err(e) => e.to_string(),
        },
    );

    let structural = base.as_ref().and_then(|b| structural_certificate(&src.construction, src.side, b, &code).ok());
    match code.certify_distance(opts, structural) {
        Ok(found) => {
            let d = &cert.distance;
            let ok = cert.d == found.d_lower && d.d_lower == found.d_lower && d.d_upper == found.d_upper;
            report.check(
                "distance",
                ok,
                format!(
                    "{} gives {}..={}, claimed d = {} ({}..={})",
                    found.method, found.d_lower, found.d_upper, cert.d, d.d_lower, d.d_upper
                ),
            );
        }
        Err(e) => report.check("distance", false, e.to_string()),
    }

    if let Some(w) = &cert.distance.witness {
        let ok = code.contains(w) && weight(w) == cert.distance.d_upper && weight(w) > 0;
        report.check("witness", ok, format!("weight {} codeword", weight(w)));
    }

    let slack = ea_singleton_slack(cert.n, cert.kq, cert.d, cert.c);
    report.check(
        "singleton",
        matches!(slack, Ok(s) if s == cert.flags.ea_singleton_slack),
        match &slack {
            Ok(s) => format!("slack {s}, claimed {}", cert.flags.ea_singleton_slack),
            Err(e) => e.to_string(),
        },
    );

    let mds = matches!(slack, Ok(0));
    let maxent = cert.c + cert.kq == cert.n;
    report.check(
        "flags",
        cert.flags.mds_eaqecc == mds && cert.flags.maximal_entanglement == maxent,
        format!("mds = {mds}, maximal entanglement = {maxent}"),
    );
    report
}
