//! Browser bindings. Every export returns a JSON string; see `www/index.html`.

use gvpairs::golden::Golden;
use gvpairs::mukai::{apply_g, sheaf_class, verify_isometry, K3Lattice};
use gvpairs::pairs::{correspondence_report, Geometry, Orientation, ReportInsertions};
use gvpairs::qseries::{eisenstein_g2, eta_power, macmahon, n0_series, n1_series, n2_series};
use gvpairs::{Error, QSeries, Result};
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_TRUNC: i64 = 60;

fn named_series(name: &str, trunc: i64) -> Result<QSeries> {
    if !(2..=MAX_TRUNC).contains(&trunc) {
        return Err(Error::Invalid(format!("trunc must lie in 2..={MAX_TRUNC}")));
    }
    match name {
        "n0" => Ok(n0_series(trunc)?.shift(1)),
        "n1" => Ok(n1_series(trunc)?.shift(1)),
        "n2" => Ok(n2_series(trunc)?.shift(1)),
        "g2" => eisenstein_g2(trunc),
        "macmahon" => macmahon(trunc),
        "eta" => eta_power(-24, trunc),
        _ => Err(Error::Invalid(format!("unknown series {name:?}"))),
    }
}

pub fn series_json(name: &str, trunc: i64) -> Result<String> {
    let s = named_series(name, trunc)?;
    let coeffs = (s.valuation().min(s.trunc())..s.trunc())
        .map(|e| Ok(json!({ "exp": e, "value": s.coeff(e)?.to_string() })))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "series": name, "coeffs": coeffs }).to_string())
}

pub fn transport_json(n: i64, d: i64) -> Result<String> {
    let l = K3Lattice::default();
    let x = sheaf_class(n, d, &l);
    let image = apply_g(&x, n, d, &l)?;
    let isometry = verify_isometry(n, d, &l)?;
    Ok(json!({ "n": n, "d": d, "input": x, "image": image, "isometry": isometry }).to_string())
}

pub fn table_json(d_max: u64) -> Result<String> {
    if !(1..=12).contains(&d_max) {
        return Err(Error::Invalid("d_max must lie in 1..=12".into()));
    }
    let golden = Golden::builtin();
    let trunc = d_max as i64 + 2;
    let mut rows = correspondence_report(
        Geometry::K3xK3,
        1,
        d_max,
        &ReportInsertions::default(),
        Orientation::Plus,
        trunc,
        &golden.tp2,
    )?;
    rows.extend(correspondence_report(Geometry::TP2, 1, 3, &ReportInsertions::default(), Orientation::Plus, trunc, &golden.tp2)?);
    serde_json::to_string(&rows).map_err(|e| Error::Invalid(e.to_string()))
}

fn js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

/// Coefficients of `n0`, `n1`, `n2`, `g2`, `macmahon` or `eta` below `q^trunc`.
#[wasm_bindgen]
pub fn series(name: &str, trunc: i32) -> std::result::Result<String, JsError> {
    js(series_json(name, trunc as i64))
}

/// Image of the sheaf class `(0, e + (d-1) f, n)` and the isometry check.
#[wasm_bindgen]
pub fn transport(n: i32, d: i32) -> std::result::Result<String, JsError> {
    js(transport_json(n as i64, d as i64))
}

/// GV versus pair invariants on `K3 x K3` for `d <= d_max`, followed by `T*P^2`.
#[wasm_bindgen]
pub fn correspondence(d_max: u32) -> std::result::Result<String, JsError> {
    js(table_json(d_max as u64))
}
