//! Browser bindings for the static demo page in `www/`.

use wasm_bindgen::prelude::*;

use parkfact::arch::sigma_diagram;
use parkfact::factor::{factorization_enumerator, restricted_enumerators};
use parkfact::inverse::l_inverse;
use parkfact::parking::{bounce, parking_enumerators, ParkingFunction};
use parkfact::perm::FullCycle;
use parkfact::poly::catalan_qt;
use parkfact::render::{arch_svg, dyck_svg};
use parkfact::trees::inversion_enumerator;

/// Largest n the page will enumerate; beyond it the tab stalls.
pub const DEMO_MAX_N: usize = 6;

fn err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn cycle_for(sigma: &str, n: usize) -> Result<FullCycle, String> {
    if sigma.trim().is_empty() {
        return Ok(FullCycle::canonical(n));
    }
    let s = FullCycle::parse(sigma).map_err(|e| e.to_string())?;
    if s.n() != n {
        return Err(format!("sigma acts on [{}] but the parking function has length {n}", s.n()));
    }
    Ok(s)
}

/// Factorization text on the first line, then the SVG of its arch diagram.
pub fn factorization_picture(parking: &str, sigma: &str) -> Result<String, String> {
    let p: ParkingFunction = parking.parse().map_err(|e: parkfact::Error| e.to_string())?;
    let s = cycle_for(sigma, p.n())?;
    let f = l_inverse(&p, &s).map_err(|e| e.to_string())?;
    let a = sigma_diagram(&f, &s).map_err(|e| e.to_string())?;
    Ok(format!("{f}\n{}", arch_svg(&a, Some(s.word()))))
}

pub fn dyck_picture(parking: &str, with_bounce: bool) -> Result<String, String> {
    let p: ParkingFunction = parking.parse().map_err(|e: parkfact::Error| e.to_string())?;
    let contacts = with_bounce.then(|| bounce(&p).0.contacts);
    Ok(dyck_svg(&p.to_path(), contacts.as_deref()))
}

pub fn enumerator(name: &str, n: usize) -> Result<String, String> {
    if n > DEMO_MAX_N {
        return Err(format!("n is capped at {DEMO_MAX_N} in the browser"));
    }
    let p = match name {
        "I" => inversion_enumerator(n),
        "F" => factorization_enumerator(&FullCycle::canonical(n)),
        "B" => parking_enumerators(n).pinv_copinv,
        "Area" => parking_enumerators(n).area,
        "C" => catalan_qt(n),
        "Fhat" => restricted_enumerators(n).simple,
        "Fmax" => restricted_enumerators(n).max_diff,
        other => return Err(format!("unknown enumerator {other}")),
    };
    Ok(p.to_string())
}

/// Applies the inverse lower map under `sigma` (blank for the canonical
/// cycle) and draws the resulting arch diagram.
#[wasm_bindgen(js_name = factorizationPicture)]
pub fn factorization_picture_js(parking: &str, sigma: &str) -> Result<String, JsValue> {
    factorization_picture(parking, sigma).map_err(err)
}

#[wasm_bindgen(js_name = dyckPicture)]
pub fn dyck_picture_js(parking: &str, with_bounce: bool) -> Result<String, JsValue> {
    dyck_picture(parking, with_bounce).map_err(err)
}

#[wasm_bindgen(js_name = enumerator)]
pub fn enumerator_js(name: &str, n: usize) -> Result<String, JsValue> {
    enumerator(name, n).map_err(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn picture_starts_with_the_factorization() {
        let out = factorization_picture("2,4,0,1,4,0", "").unwrap();
        let (first, svg) = out.split_once('\n').unwrap();
        assert_eq!(first, "(2 3)(4 5)(0 2)(1 2)(4 6)(0 4)");
        assert!(svg.starts_with("<svg"));
        assert!(factorization_picture("2,4,0,1,4,0", "0 2 3 5 6 4 1").unwrap().starts_with("(2 3)(4 5)(0 2)(1 5)"));
    }

    #[test]
    fn errors_are_messages() {
        assert!(factorization_picture("5,5", "").is_err());
        assert!(factorization_picture("0,0", "0 2 1 3").is_err());
        assert!(enumerator("I", 7).is_err());
        assert!(enumerator("?", 2).is_err());
    }

    #[test]
    fn dyck_and_enumerator() {
        assert_eq!(dyck_picture("1,3,1,7,0,7,0,1,4", true).unwrap().matches("<polyline").count(), 2);
        assert_eq!(enumerator("I", 2).unwrap(), "t^2 + t^3 + q*t^2");
        assert_eq!(enumerator("F", 3).unwrap(), enumerator("I", 3).unwrap());
    }
}
