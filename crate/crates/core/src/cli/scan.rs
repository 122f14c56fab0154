use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use super::{csv_row, write_output, FamilyArg, ScanArgs, CSV_HEADER};
use crate::certificate::Side;
use crate::pipeline::{construct, FamilyParams, Request};

/// `"3,6"`, `"2..10"` (inclusive) or mixtures like `"1,4..6"`.
pub fn parse_list(s: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |x: &str| x.trim().parse::<u64>().map_err(|_| format!("bad number {x:?} in {s:?}"));
        match part.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                out.extend(num(a)?..=num(b)?);
            }
            None => out.push(num(part)?),
        }
    }
    Ok(out)
}

fn list(arg: &Option<String>, flag: &str, family: &str) -> Result<Vec<u64>, String> {
    match arg {
        Some(s) => parse_list(s),
        None => Err(format!("family {family} needs --{flag}")),
    }
}

/// Family parameters in canonical order, with a short label for logging.
fn family_grid(a: &ScanArgs) -> Result<Vec<(FamilyParams, String)>, String> {
    let mut out = Vec::new();
    match a.family {
        FamilyArg::I => {
            for n in list(&a.n, "n", "i")? {
                for l in list(&a.l, "l", "i")? {
                    let fp = FamilyParams::I {
                        n: n as usize,
                        l: l as usize,
                        search_budget: a.search_budget,
                        unchecked: false,
                    };
                    out.push((fp, format!("n={n} l={l}")));
                }
            }
        }
        FamilyArg::Ii => {
            for r in list(&a.r, "r", "ii")? {
                for d in list(&a.d, "d", "ii")? {
                    out.push((FamilyParams::II { r, d }, format!("r={r} d={d}")));
                }
            }
        }
        FamilyArg::Iii => {
            let cases = match &a.case {
                Some(s) => parse_list(s)?,
                None => vec![1, 2, 3],
            };
            for l in list(&a.l, "l", "iii")? {
                for &case in &cases {
                    let case = u8::try_from(case).map_err(|_| format!("case {case} out of range"))?;
                    out.push((FamilyParams::III { l, case }, format!("l={l} case={case}")));
                }
            }
        }
        FamilyArg::Iv => {
            for l in list(&a.l, "l", "iv")? {
                out.push((FamilyParams::IV { l }, format!("l={l}")));
            }
        }
    }
    Ok(out)
}

pub(super) fn cmd_scan(a: &ScanArgs) -> i32 {
    let grid = (|| -> Result<_, String> {
        let ps = parse_list(&a.p)?;
        let es = parse_list(&a.e)?;
        let ks = match &a.k {
            Some(s) => parse_list(s)?,
            None => vec![u64::from(a.family == FamilyArg::Iv)],
        };
        let fams = family_grid(a)?;
        let mut tuples = Vec::new();
        for &p in &ps {
            for &e in &es {
                for &k in &ks {
                    for (fp, label) in &fams {
                        let e = u32::try_from(e).map_err(|_| format!("e = {e} too large"))?;
                        let k = u32::try_from(k).map_err(|_| format!("k = {k} too large"))?;
                        let req = Request { p, e, k, family: fp.clone(), distance: a.budget.options() };
                        tuples.push((req, format!("p={p} e={e} k={k} {label}")));
                    }
                }
            }
        }
        Ok(tuples)
    })();
    let tuples = match grid {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };

    let results: Vec<_> = tuples
        .par_iter()
        .map(|(req, _)| {
            let start = Instant::now();
            let out = construct(req, &[Side::Code]);
            (out, start.elapsed().as_secs_f64())
        })
        .collect();

    let mut text = format!("{CSV_HEADER}\n");
    let (mut rows, mut skipped) = (0usize, 0usize);
    for ((out, seconds), (_, label)) in results.into_iter().zip(&tuples) {
        match out {
            Ok(docs) => {
                for d in &docs {
                    writeln!(text, "{}", csv_row(d, seconds)).expect("string write");
                    rows += 1;
                }
            }
            Err(e) => {
                eprintln!("skip {label}: {e}");
                skipped += 1;
            }
        }
    }
    if let Err(e) = write_output(a.output.as_ref(), &text) {
        eprintln!("error: {e}");
        return 1;
    }
    eprintln!("scan: {rows} rows, {skipped} skipped, {} tuples", tuples.len());
    0
}
