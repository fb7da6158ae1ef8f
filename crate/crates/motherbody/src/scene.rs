//! Scene files, point batches, and bit-stable CSV/JSON emission.
//!
//! Numbers in CSV output carry 17 significant digits so that re-runs with
//! the same seed produce identical bytes.

use crate::geometry::{Body, ConvexPolygon, SymmetricBody3D};
use crate::measure::{AtomicMeasure, BodyMeasure};
use crate::potential::{ElectroConstants, Kernel};
use crate::verify::Table;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("scene dimension {scene} clashes with object dimension {object}")]
    DimensionMismatch { scene: usize, object: usize },
    #[error("bad body entry: {0}")]
    BadBody(String),
    #[error("line {0}: expected 2 or 3 comma-separated coordinates")]
    BadPointLine(usize),
}

/// On-disk body entry; tagged by shape kind.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum BodyDto {
    Polygon {
        vertices: Vec<[f64; 2]>,
        #[serde(default)]
        a: f64,
        #[serde(default)]
        b: f64,
    },
    Disk {
        radius: f64,
        #[serde(default)]
        a: f64,
        #[serde(default)]
        b: f64,
    },
    SphereShell {
        radius: f64,
        #[serde(default)]
        a: f64,
    },
    SolidBall {
        radius: f64,
        #[serde(default)]
        a: f64,
        #[serde(default)]
        b: f64,
    },
    SolidCylinder {
        radius: f64,
        length: f64,
        #[serde(default)]
        a: f64,
        #[serde(default)]
        b: f64,
    },
    ConeSurface {
        radius: f64,
        height: f64,
        #[serde(default)]
        a: f64,
    },
}

impl BodyDto {
    pub fn to_measure(&self) -> Result<BodyMeasure, SceneError> {
        let bad = |e: crate::measure::MeasureError| SceneError::BadBody(e.to_string());
        match self {
            BodyDto::Polygon { vertices, a, b } => {
                let pts = vertices
                    .iter()
                    .map(|v| crate::geometry::Point2::new(v[0], v[1]))
                    .collect();
                let poly =
                    ConvexPolygon::new(pts).map_err(|e| SceneError::BadBody(e.to_string()))?;
                BodyMeasure::new(Body::Polygon(poly), *a, *b).map_err(bad)
            }
            BodyDto::Disk { radius, a, b } => {
                BodyMeasure::new(Body::Disk { radius: *radius }, *a, *b).map_err(bad)
            }
            BodyDto::SphereShell { radius, a } => BodyMeasure::new(
                Body::Symmetric(SymmetricBody3D::SphereShell { radius: *radius }),
                *a,
                0.0,
            )
            .map_err(bad),
            BodyDto::SolidBall { radius, a, b } => BodyMeasure::new(
                Body::Symmetric(SymmetricBody3D::SolidBall { radius: *radius }),
                *a,
                *b,
            )
            .map_err(bad),
            BodyDto::SolidCylinder {
                radius,
                length,
                a,
                b,
            } => BodyMeasure::new(
                Body::Symmetric(SymmetricBody3D::SolidCylinder {
                    radius: *radius,
                    length: *length,
                }),
                *a,
                *b,
            )
            .map_err(bad),
            BodyDto::ConeSurface { radius, height, a } => BodyMeasure::new(
                Body::Symmetric(SymmetricBody3D::ConeSurface {
                    radius: *radius,
                    height: *height,
                }),
                *a,
                0.0,
            )
            .map_err(bad),
        }
    }
}

/// A scene file: dimension, unit constant, bodies and atomic measures.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SceneFile {
    pub dimension: usize,
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    #[serde(default)]
    pub bodies: Vec<BodyDto>,
    #[serde(default)]
    pub measures: Vec<AtomicMeasure>,
}

fn default_kappa() -> f64 {
    1.0
}

/// A loaded, validated scene.
#[derive(Debug, Clone)]
pub struct Scene {
    pub kernel: Kernel,
    pub constants: ElectroConstants,
    pub bodies: Vec<BodyMeasure>,
    pub measures: Vec<AtomicMeasure>,
}

impl Scene {
    pub fn from_file(path: &Path) -> Result<Scene, SceneError> {
        let text = std::fs::read_to_string(path)?;
        let file: SceneFile = serde_json::from_str(&text)?;
        Scene::from_dto(&file)
    }

    pub fn from_dto(file: &SceneFile) -> Result<Scene, SceneError> {
        if !(1..=3).contains(&file.dimension) {
            return Err(SceneError::BadBody(format!(
                "dimension {} out of range",
                file.dimension
            )));
        }
        let bodies: Vec<BodyMeasure> = file
            .bodies
            .iter()
            .map(|b| b.to_measure())
            .collect::<Result<_, _>>()?;
        for b in &bodies {
            if b.dim() != file.dimension {
                return Err(SceneError::DimensionMismatch {
                    scene: file.dimension,
                    object: b.dim(),
                });
            }
        }
        for m in &file.measures {
            if let Some(d) = m.dim() {
                if d != file.dimension {
                    return Err(SceneError::DimensionMismatch {
                        scene: file.dimension,
                        object: d,
                    });
                }
            }
        }
        Ok(Scene {
            kernel: Kernel::new(file.dimension),
            constants: ElectroConstants { kappa: file.kappa },
            bodies,
            measures: file.measures.clone(),
        })
    }
}

/// Parse a CSV of points: `x,y` or `x,y,z` per line; one optional header.
pub fn parse_points_csv(text: &str) -> Result<Vec<crate::geometry::Point>, SceneError> {
    let mut pts = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Result<Vec<f64>, _> = fields.iter().map(|f| f.parse::<f64>()).collect();
        match parsed {
            Ok(coords) if coords.len() == 2 || coords.len() == 3 => {
                pts.push(crate::geometry::Point::from_coords(&coords).unwrap());
            }
            _ if lineno == 0 => continue, // header row
            _ => return Err(SceneError::BadPointLine(lineno + 1)),
        }
    }
    Ok(pts)
}

/// 17 significant digits, locale-free.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Write rows of preformatted fields as CSV.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), SceneError> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn write_table(dir: &Path, table: &Table) -> Result<std::path::PathBuf, SceneError> {
    let path = dir.join(format!("{}.csv", table.name));
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let mut line = String::new();
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            let _ = write!(line, "{}", fmt_f64(*v));
        }
        out.push_str(&line);
        out.push('\n');
    }
    std::fs::write(&path, out)?;
    Ok(path)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), SceneError> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scene_round_trips() {
        let json = r#"{
            "dimension": 2,
            "kappa": 1.0,
            "bodies": [
                {"type": "polygon", "vertices": [[-1,-1],[1,-1],[1,1],[-1,1]], "b": 1.0},
                {"type": "disk", "radius": 1.0, "b": 1.0}
            ],
            "measures": [
                {"atoms": [{"type": "point", "x": [0.0, 0.0], "m": 4.0}]}
            ]
        }"#;
        let file: SceneFile = serde_json::from_str(json).unwrap();
        let scene = Scene::from_dto(&file).unwrap();
        assert_eq!(scene.kernel.dim(), 2);
        assert_eq!(scene.bodies.len(), 2);
        assert_eq!(scene.measures.len(), 1);

        let back = serde_json::to_string(&file).unwrap();
        let file2: SceneFile = serde_json::from_str(&back).unwrap();
        let scene2 = Scene::from_dto(&file2).unwrap();
        assert_eq!(scene2.bodies.len(), scene.bodies.len());
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let json = r#"{
            "dimension": 3,
            "bodies": [{"type": "disk", "radius": 1.0, "b": 1.0}]
        }"#;
        let file: SceneFile = serde_json::from_str(json).unwrap();
        assert!(matches!(
            Scene::from_dto(&file),
            Err(SceneError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn points_csv_accepts_header_and_3d() {
        let pts = parse_points_csv("x,y,z\n1,2,3\n4,5,6\n").unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].dim(), 3);

        let pts = parse_points_csv("0.5,1.5\n").unwrap();
        assert_eq!(pts[0].dim(), 2);

        assert!(parse_points_csv("1,2\nfoo,bar\n").is_err());
        assert!(parse_points_csv("").unwrap().is_empty());
    }

    #[test]
    fn fmt_has_17_significant_digits() {
        let s = fmt_f64(std::f64::consts::PI);
        assert_eq!(s, "3.1415926535897931e0");
        let back: f64 = s.parse().unwrap();
        assert_eq!(back, std::f64::consts::PI);
    }
}
