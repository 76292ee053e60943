#![no_main]

//! The extension command inputs; the first byte picks the bundle type.

use leibder::formats::{
    from_json, square_matrix, AbelianBuildDto, AbelianClassifyDto, CentralBuildDto, CentralClassifyDto, CentralPairDto,
    ExtendDerivationDto,
};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&kind, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let _ = match kind % 6 {
        0 => from_json::<CentralBuildDto>(text).and_then(|b| {
            b.base.to_pair("base")?;
            b.psi.to_cochain("psi")?;
            b.chi.to_cochain("chi")?;
            square_matrix("phi_a", &b.phi_a).map(|_| ())
        }),
        1 => from_json::<CentralClassifyDto>(text).and_then(|b| {
            let base = b.base.to_pair("base")?;
            let a = square_matrix("phi_a", &b.phi_a)?;
            b.extension.to_diagram("extension", base.dim(), a.rows()).map(|_| ())
        }),
        2 => from_json::<CentralPairDto>(text).and_then(|b| {
            let base = b.base.to_pair("base")?;
            let a = square_matrix("phi_a", &b.phi_a)?;
            b.first.to_diagram("first", base.dim(), a.rows())?;
            b.second.to_diagram("second", base.dim(), a.rows()).map(|_| ())
        }),
        3 => from_json::<AbelianBuildDto>(text).and_then(|b| {
            let base = b.base.to_pair("base")?;
            b.rep.to_leibder("rep", &base.algebra)?;
            b.cocycle.to_cochain("cocycle").map(|_| ())
        }),
        4 => from_json::<AbelianClassifyDto>(text).and_then(|b| {
            let base = b.base.to_pair("base")?;
            let rep = b.rep.to_leibder("rep", &base.algebra)?;
            b.extension.to_diagram("extension", base.dim(), rep.mdim()).map(|_| ())
        }),
        _ => from_json::<ExtendDerivationDto>(text).and_then(|b| {
            let base = b.base.to_algebra("base")?;
            let a = square_matrix("phi_a", &b.phi_a)?;
            b.extension.to_diagram("extension", base.dim(), a.rows()).map(|_| ())
        }),
    };
});
