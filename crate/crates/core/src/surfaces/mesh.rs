use std::f64::consts::TAU;

use serde::Serialize;

use super::{bend_to_torus, SurfaceError, TorusParams};

/// Vertices in `R^3` and quad faces given by 0-based vertex indices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeshDocument {
    vertices: Vec<[f64; 3]>,
    faces: Vec<[usize; 4]>,
}

impl MeshDocument {
    pub fn new(vertices: Vec<[f64; 3]>, faces: Vec<[usize; 4]>) -> Result<Self, SurfaceError> {
        if let Some(index) = vertices
            .iter()
            .position(|v| v.iter().any(|c| !c.is_finite()))
        {
            return Err(SurfaceError::NonFinite { index });
        }
        for (face, f) in faces.iter().enumerate() {
            if let Some(&index) = f.iter().find(|&&i| i >= vertices.len()) {
                return Err(SurfaceError::FaceIndex {
                    face,
                    index,
                    vertices: vertices.len(),
                });
            }
        }
        Ok(Self { vertices, faces })
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 4]] {
        &self.faces
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() || self.faces.is_empty()
    }
}

/// Quads between `rows × cols` vertices laid out row-major; a wrapped
/// direction also joins its last line of vertices to its first.
pub(crate) fn grid_faces(
    rows: usize,
    cols: usize,
    wrap_rows: bool,
    wrap_cols: bool,
) -> Vec<[usize; 4]> {
    let row_quads = if wrap_rows { rows } else { rows - 1 };
    let col_quads = if wrap_cols { cols } else { cols - 1 };
    let at = move |i: usize, j: usize| (i % rows) * cols + j % cols;
    (0..row_quads)
        .flat_map(|i| {
            (0..col_quads).map(move |j| [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)])
        })
        .collect()
}

/// `gu × gv` samples of the torus at `u = 2πi/gu`, `v = 2πj/gv`, with wrapping quads.
pub fn torus_mesh(
    params: &TorusParams,
    gu: usize,
    gv: usize,
) -> Result<MeshDocument, SurfaceError> {
    if gu < 3 || gv < 3 {
        return Err(SurfaceError::GridTooSmall(gu, gv));
    }
    let mut vertices = Vec::with_capacity(gu * gv);
    for i in 0..gu {
        for j in 0..gv {
            let u = TAU * i as f64 / gu as f64;
            let v = TAU * j as f64 / gv as f64;
            let p = bend_to_torus(params, u, v)?;
            vertices.push(p.coords().try_into().expect("torus points are 3-d"));
        }
    }
    MeshDocument::new(vertices, grid_faces(gu, gv, true, true))
}
