//! CSV writers for character tables, orbit samples and leaf assignments.
//! Floats are written in Rust's shortest round-trip form, so output is
//! byte-stable for identical inputs.

use std::io::Write;

use crate::error::{Error, Result};
use crate::foliation::LeafId;
use crate::FamilySpec;

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::InvalidParameter(format!("write failed: {e}"))
}

fn coord_header(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (1..=n).map(move |i| format!("{prefix}_{i}"))
}

fn fmt_all(v: &[f64]) -> impl Iterator<Item = String> + '_ {
    v.iter().map(|a| a.to_string())
}

/// Columns `family, params, x_1..x_n, chi_ad`.
pub fn write_character_csv<W: Write>(w: W, spec: &FamilySpec, rows: &[(Vec<f64>, f64)]) -> Result<()> {
    let n = spec.dim();
    let mut out = csv::Writer::from_writer(w);
    let header = ["family".to_string(), "params".to_string()]
        .into_iter()
        .chain(coord_header("x", n))
        .chain(std::iter::once("chi_ad".to_string()));
    out.write_record(header).map_err(io_err)?;
    for (x, chi) in rows {
        Error::check_len(n, x.len())?;
        let rec = [spec.tag().to_string(), spec.params_string()]
            .into_iter()
            .chain(fmt_all(x))
            .chain(std::iter::once(chi.to_string()));
        out.write_record(rec).map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

/// Columns `family, params, seed, x_1..x_n, drift`, one row per sampled
/// orbit point.
pub fn write_orbit_csv<W: Write>(
    w: W,
    spec: &FamilySpec,
    seed: u64,
    points: &[Vec<f64>],
    drifts: &[f64],
) -> Result<()> {
    let n = spec.dim();
    Error::check_len(points.len(), drifts.len())?;
    let mut out = csv::Writer::from_writer(w);
    let header = ["family".to_string(), "params".to_string(), "seed".to_string()]
        .into_iter()
        .chain(coord_header("x", n))
        .chain(std::iter::once("drift".to_string()));
    out.write_record(header).map_err(io_err)?;
    for (p, d) in points.iter().zip(drifts) {
        Error::check_len(n, p.len())?;
        let rec = [spec.tag().to_string(), spec.params_string(), seed.to_string()]
            .into_iter()
            .chain(fmt_all(p))
            .chain(std::iter::once(d.to_string()));
        out.write_record(rec).map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

/// Columns `family, params, f_1..f_n, leaf_1[, leaf_2]`.
pub fn write_leaf_csv<W: Write>(w: W, spec: &FamilySpec, rows: &[(Vec<f64>, LeafId)]) -> Result<()> {
    let n = spec.dim();
    let width = match spec {
        FamilySpec::G5_2k { .. } => 1,
        _ => 2,
    };
    let mut out = csv::Writer::from_writer(w);
    let header = ["family".to_string(), "params".to_string()]
        .into_iter()
        .chain(coord_header("f", n))
        .chain(coord_header("leaf", width));
    out.write_record(header).map_err(io_err)?;
    for (f, leaf) in rows {
        Error::check_len(n, f.len())?;
        let values = leaf.values();
        Error::check_len(width, values.len())?;
        let rec = [spec.tag().to_string(), spec.params_string()]
            .into_iter()
            .chain(fmt_all(f))
            .chain(fmt_all(&values));
        out.write_record(rec).map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build, foliation::leaf_of};

    #[test]
    fn character_table() {
        let spec: FamilySpec = "g3_1(lambda=0.5)".parse().unwrap();
        let mut buf = Vec::new();
        write_character_csv(&mut buf, &spec, &[(vec![0.0, 0.0, 0.0], 3.0)]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "family,params,x_1,x_2,x_3,chi_ad\ng3_1,lambda=0.5,0,0,0,3\n"
        );
    }

    #[test]
    fn orbit_samples() {
        let spec = FamilySpec::G3_2;
        let mut buf = Vec::new();
        write_orbit_csv(&mut buf, &spec, 7, &[vec![1.0, 2.5, 0.0]], &[1e-17]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "family,params,seed,x_1,x_2,x_3,drift\ng3_2,,7,1,2.5,0,0.00000000000000001\n"
        );
        assert!(write_orbit_csv(Vec::new(), &spec, 7, &[vec![1.0]], &[0.0]).is_err());
    }

    #[test]
    fn leaf_rows() {
        let spec: FamilySpec = "g6_2k_2(k=0)".parse().unwrap();
        let g = build(&spec).unwrap();
        let f = vec![1.0, 2.0, 0.0, 0.0, 0.0, 0.0];
        let leaf = leaf_of(&g, &f).unwrap();
        let mut buf = Vec::new();
        write_leaf_csv(&mut buf, &spec, &[(f, leaf)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("family,params,f_1,f_2,f_3,f_4,f_5,f_6,leaf_1,leaf_2\n"));
        assert!(text.ends_with("g6_2k_2,k=0,1,2,0,0,0,0,2,1\n"));
    }
}
