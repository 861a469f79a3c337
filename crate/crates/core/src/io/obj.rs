use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::IoError;
use crate::surfaces::MeshDocument;

/// `%.9g`: nine significant digits, trailing zeros dropped, scientific
/// notation outside `1e-4 ≤ |v| < 1e9`.
pub fn format_g9(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..9).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{v:.*}", (8 - exp) as usize)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `v x y z` lines, then `f a b c d` lines with 1-based indices, LF endings.
pub fn write_obj(mesh: &MeshDocument, out: &mut impl Write) -> std::io::Result<()> {
    for v in mesh.vertices() {
        writeln!(
            out,
            "v {} {} {}",
            format_g9(v[0]),
            format_g9(v[1]),
            format_g9(v[2])
        )?;
    }
    for f in mesh.faces() {
        writeln!(out, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1)?;
    }
    Ok(())
}

pub fn export_mesh(mesh: &MeshDocument, path: &Path) -> Result<(), IoError> {
    if mesh.is_empty() {
        return Err(IoError::EmptyMesh);
    }
    let file = File::create(path).map_err(|e| IoError::file(path, e))?;
    let mut w = BufWriter::new(file);
    write_obj(mesh, &mut w)
        .and_then(|_| w.flush())
        .map_err(|e| IoError::file(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g9_matches_printf() {
        let cases = [
            (1.0, "1"),
            (-0.0, "0"),
            (0.1, "0.1"),
            (78.95683520871486, "78.9568352"),
            (1.0 / 3.0, "0.333333333"),
            (123456789.0, "123456789"),
            (1234567890.0, "1.23456789e+09"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (9.9999999999, "10"),
            (-2.5e-300, "-2.5e-300"),
            (6.123233995736766e-17, "6.123234e-17"),
        ];
        for (v, s) in cases {
            assert_eq!(format_g9(v), s, "{v}");
        }
    }

    #[test]
    fn one_quad() {
        let m = MeshDocument::new(
            vec![
                [0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [1.0, 1.0, 0.0],
                [0.0, 1.0, 0.5],
            ],
            vec![[0, 1, 2, 3]],
        )
        .unwrap();
        let mut buf = Vec::new();
        write_obj(&m, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0.5\nf 1 2 3 4\n"
        );
    }

    #[test]
    fn empty_mesh_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let m = MeshDocument::new(vec![], vec![]).unwrap();
        assert_eq!(
            export_mesh(&m, &dir.path().join("m.obj")),
            Err(IoError::EmptyMesh)
        );
    }
}
