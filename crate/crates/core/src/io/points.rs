use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::{csv_error, csv_reader, parse_field, IoError};
use crate::geometry::{Point, Region, StringPath};

/// Points read from a CSV with columns `x1,…,xn` and optional `interior`
/// (`0/1/true/false`) and `string` (integer id) columns.
#[derive(Clone, Debug, PartialEq)]
pub struct PointTable {
    pub points: Vec<Point>,
    pub interior: Option<Vec<bool>>,
    pub string_ids: Option<Vec<i64>>,
}

impl PointTable {
    /// Interior flags, defaulting to all interior.
    pub fn interior_or_open(&self) -> Vec<bool> {
        self.interior
            .clone()
            .unwrap_or_else(|| vec![true; self.points.len()])
    }

    pub fn region(&self) -> Result<Region, IoError> {
        Ok(Region::new(self.points.clone(), self.interior_or_open())?)
    }

    /// Open strings grouped by the `string` column in order of first
    /// appearance; without the column the whole table is one string.
    pub fn strings(&self) -> Result<Vec<StringPath>, IoError> {
        let Some(ids) = &self.string_ids else {
            return Ok(vec![StringPath::open(self.points.clone())?]);
        };
        let mut order: Vec<i64> = Vec::new();
        for id in ids {
            if !order.contains(id) {
                order.push(*id);
            }
        }
        order
            .iter()
            .map(|id| {
                let verts = self
                    .points
                    .iter()
                    .zip(ids)
                    .filter(|(_, i)| *i == id)
                    .map(|(p, _)| p.clone())
                    .collect();
                Ok(StringPath::open(verts)?)
            })
            .collect()
    }
}

pub fn load_points_csv(path: &Path) -> Result<PointTable, IoError> {
    let file = File::open(path).map_err(|e| IoError::file(path, e))?;
    parse_points_csv(file)
}

pub fn parse_points_csv(input: impl Read) -> Result<PointTable, IoError> {
    let mut rdr = csv_reader(input);
    let header: Vec<String> = rdr
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(str::to_string)
        .collect();
    let dim = header.iter().take_while(|h| h.starts_with('x')).count();
    let expected_coords: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
    let rest = &header[dim..];
    let interior_col = rest.iter().position(|h| h == "interior").map(|i| i + dim);
    let string_col = rest.iter().position(|h| h == "string").map(|i| i + dim);
    let known = interior_col.is_some() as usize + string_col.is_some() as usize;
    if dim == 0 || header[..dim] != expected_coords[..] || rest.len() != known {
        return Err(IoError::Header {
            expected: "x1,...,xn[,interior][,string]".into(),
            found: header.join(","),
        });
    }

    let mut table = PointTable {
        points: Vec::new(),
        interior: interior_col.map(|_| Vec::new()),
        string_ids: string_col.map(|_| Vec::new()),
    };
    for rec in rdr.records() {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != header.len() {
            return Err(IoError::Malformed {
                line,
                message: format!("expected {} fields, found {}", header.len(), rec.len()),
            });
        }
        let coords = (0..dim)
            .map(|i| parse_field(&rec[i], line))
            .collect::<Result<Vec<_>, _>>()?;
        table.points.push(Point::new(coords)?);
        if let (Some(c), Some(v)) = (interior_col, table.interior.as_mut()) {
            v.push(match &rec[c] {
                "1" | "true" => true,
                "0" | "false" => false,
                other => {
                    return Err(IoError::Malformed {
                        line,
                        message: format!("interior flag `{other}` is not 0/1/true/false"),
                    })
                }
            });
        }
        if let (Some(c), Some(v)) = (string_col, table.string_ids.as_mut()) {
            v.push(rec[c].parse().map_err(|_| IoError::Malformed {
                line,
                message: format!("string id `{}` is not an integer", &rec[c]),
            })?);
        }
    }
    Ok(table)
}

/// Writes 3-d points as an `x,y,z` CSV with shortest round-trip formatting.
pub fn write_curve_csv(points: &[Point], path: &Path) -> Result<(), IoError> {
    let mut text = String::from("x,y,z\n");
    for p in points {
        let c = p.coords();
        text.push_str(&format!("{},{},{}\n", c[0], c[1], c[2]));
    }
    File::create(path)
        .and_then(|mut f| f.write_all(text.as_bytes()))
        .map_err(|e| IoError::file(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flags_and_strings() {
        let t = parse_points_csv(
            "x1,x2,interior,string\n0,0,1,7\n1,0,0,7\n5,5,true,2\n6,5,false,2\n".as_bytes(),
        )
        .unwrap();
        assert_eq!(t.points.len(), 4);
        assert_eq!(t.interior, Some(vec![true, false, true, false]));
        let s = t.strings().unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].vertices()[0], Point::from_slice(&[5.0, 5.0]));
    }

    #[test]
    fn plain_coordinates() {
        let t = parse_points_csv("x1\n0.5\n-2\n".as_bytes()).unwrap();
        assert_eq!(t.interior, None);
        assert_eq!(t.interior_or_open(), vec![true, true]);
        assert_eq!(t.strings().unwrap().len(), 1);
    }

    #[test]
    fn rejects_bad_headers_and_rows() {
        assert!(matches!(
            parse_points_csv("y,x1\n".as_bytes()),
            Err(IoError::Header { .. })
        ));
        assert!(matches!(
            parse_points_csv("x1,x3\n".as_bytes()),
            Err(IoError::Header { .. })
        ));
        assert!(matches!(
            parse_points_csv("x1,colour\n".as_bytes()),
            Err(IoError::Header { .. })
        ));
        assert!(matches!(
            parse_points_csv("x1,interior\n0,maybe\n".as_bytes()),
            Err(IoError::Malformed { line: 2, .. })
        ));
    }

    #[test]
    fn curve_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        let pts = vec![Point::from_slice(&[0.1, 1.0 / 3.0, -2e-17])];
        write_curve_csv(&pts, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let back: Vec<f64> = text
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .map(|v| v.parse().unwrap())
            .collect();
        assert_eq!(back, pts[0].coords());
    }
}
