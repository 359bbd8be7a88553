//! Triangle meshes of balanced configurations and ASCII OBJ export.
//!
//! Surfaces of revolution about the x-axis: caps become triangle fans,
//! catenoid bands become quad strips split into triangles. Vertices lie on
//! the exact surface; each piece is watertight on its own.

use std::fmt::Write as _;

use crate::catenoid::BalancedConfiguration;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vertex {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Indexed triangle mesh; faces are zero-based and counter-clockwise when
/// seen from the outward normal side.
#[derive(Debug, Clone, Default)]
pub struct TriangleMesh {
    pub vertices: Vec<Vertex>,
    pub faces: Vec<[usize; 3]>,
}

impl TriangleMesh {
    pub fn area(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| {
                let [a, b, c] = [self.vertices[f[0]], self.vertices[f[1]], self.vertices[f[2]]];
                let u = (b.x - a.x, b.y - a.y, b.z - a.z);
                let v = (c.x - a.x, c.y - a.y, c.z - a.z);
                let n = (
                    u.1 * v.2 - u.2 * v.1,
                    u.2 * v.0 - u.0 * v.2,
                    u.0 * v.1 - u.1 * v.0,
                );
                0.5 * (n.0 * n.0 + n.1 * n.1 + n.2 * n.2).sqrt()
            })
            .sum()
    }

    /// ASCII OBJ with `v`/`f` records (1-based indices).
    pub fn to_obj(&self) -> String {
        let mut out = String::with_capacity(self.vertices.len() * 40 + self.faces.len() * 16);
        for v in &self.vertices {
            writeln!(out, "v {:.12e} {:.12e} {:.12e}", v.x, v.y, v.z).expect("write to string");
        }
        for f in &self.faces {
            writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1).expect("write to string");
        }
        out
    }
}

fn ring(axial: f64, radius: f64, segments: usize) -> Vec<Vertex> {
    (0..segments)
        .map(|k| {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / segments as f64;
            Vertex { x: axial, y: radius * phi.cos(), z: radius * phi.sin() }
        })
        .collect()
}

/// Triangulates the configuration: `segments` angular subdivisions,
/// `rings` axial subdivisions per band.
pub fn mesh(cfg: &BalancedConfiguration, segments: usize, rings: usize) -> TriangleMesh {
    assert!(segments >= 3, "need at least 3 angular segments");
    assert!(rings >= 2, "need at least 2 rings per band");
    let mut m = TriangleMesh::default();

    // flat caps: fan around the on-axis centre, normal pointing away from
    // the ball centre
    for (beta, outward_positive) in [(cfg.cap_latitudes.0, true), (cfg.cap_latitudes.1, false)] {
        let axial = beta.cos();
        let radius = beta.sin();
        let centre = m.vertices.len();
        m.vertices.push(Vertex { x: axial, y: 0.0, z: 0.0 });
        let start = m.vertices.len();
        m.vertices.extend(ring(axial, radius, segments));
        for k in 0..segments {
            let (a, b) = (start + k, start + (k + 1) % segments);
            if outward_positive {
                m.faces.push([centre, a, b]);
            } else {
                m.faces.push([centre, b, a]);
            }
        }
    }

    // catenoid bands, swept from the low-latitude end to the high-latitude
    // end (t decreasing), oriented with outward radial normals
    for piece in &cfg.pieces {
        let (t_lo, t_hi) = piece.t_range;
        let c = piece.catenary;
        let start = m.vertices.len();
        for j in 0..=rings {
            let t = t_hi + (t_lo - t_hi) * j as f64 / rings as f64;
            m.vertices.extend(ring(t, c.radius(t), segments));
        }
        for j in 0..rings {
            for k in 0..segments {
                let k1 = (k + 1) % segments;
                let a = start + j * segments + k;
                let b = start + j * segments + k1;
                let c2 = start + (j + 1) * segments + k1;
                let d = start + (j + 1) * segments + k;
                m.faces.push([a, b, c2]);
                m.faces.push([a, c2, d]);
            }
        }
    }
    m
}
