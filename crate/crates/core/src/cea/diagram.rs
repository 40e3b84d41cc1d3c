//! Property diagrams: rasterized class labels over a window of the `(s, t)`
//! plane.
//!
//! SVG fill colors are keyed by class tag:
//!
//! | label        | fill      |
//! |--------------|-----------|
//! | E0           | `#d9d9d9` |
//! | E1           | `#1f77b4` |
//! | E2           | `#ff7f0e` |
//! | E3           | `#2ca02c` |
//! | E4           | `#d62728` |
//! | E5           | `#9467bd` |
//! | E6           | `#8c564b` |
//! | E7           | `#e377c2` |
//! | out of domain| `#ffffff` |
//! | error        | `#000000` |
//!
//! Cells in the property carry `class="in"`, the rest `class="out"`,
//! `class="na"` (out of domain) or `class="err"`.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::classify::Tag;
use crate::scalar::Field;

use super::dynamics::classify_dynamics;
use super::family::{ChainFamilySpec, TimePair};
use super::CeaError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub s_min: f64,
    pub s_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl Window {
    pub fn square(lo: f64, hi: f64) -> Self {
        Self {
            s_min: lo,
            s_max: hi,
            t_min: lo,
            t_max: hi,
        }
    }

    fn validate(&self) -> Result<(), CeaError> {
        let ok = [self.s_min, self.s_max, self.t_min, self.t_max]
            .iter()
            .all(|v| v.is_finite())
            && self.s_min < self.s_max
            && self.t_min < self.t_max;
        if !ok {
            return Err(CeaError::Config(format!("bad diagram window {self:?}")));
        }
        Ok(())
    }
}

/// The property a cell is tested for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    /// Isomorphic to the canonical algebra with this tag.
    Class(Tag),
    /// Being an evolution algebra, which every member of a chain is.
    Evolution,
}

impl std::str::FromStr for Property {
    type Err = CeaError;

    fn from_str(s: &str) -> Result<Self, CeaError> {
        if s.trim().eq_ignore_ascii_case("evolution") {
            return Ok(Property::Evolution);
        }
        s.parse::<Tag>()
            .map(Property::Class)
            .map_err(|_| CeaError::Config(format!("unknown property `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellLabel {
    InP,
    NotInP,
    OutOfDomain,
    Error,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub s: f64,
    pub t: f64,
    pub tag: Option<Tag>,
    pub label: CellLabel,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyDiagram {
    pub window: Window,
    pub resolution: usize,
    /// Row-major with `s` varying fastest, `t` increasing.
    pub cells: Vec<Cell>,
}

fn color(cell: &Cell) -> &'static str {
    match (cell.label, cell.tag) {
        (CellLabel::OutOfDomain, _) => "#ffffff",
        (CellLabel::Error, _) | (_, None) => "#000000",
        (_, Some(tag)) => match tag {
            Tag::E0 => "#d9d9d9",
            Tag::E1 => "#1f77b4",
            Tag::E2 => "#ff7f0e",
            Tag::E3 => "#2ca02c",
            Tag::E4 => "#d62728",
            Tag::E5 => "#9467bd",
            Tag::E6 => "#8c564b",
            Tag::E7 => "#e377c2",
        },
    }
}

/// Evaluates the chain at each cell center and labels the cell.
pub fn property_diagram(
    spec: &ChainFamilySpec,
    property: Property,
    window: Window,
    resolution: usize,
    field: Field,
) -> Result<PropertyDiagram, CeaError> {
    if resolution < 2 {
        return Err(CeaError::Config(
            "diagram resolution must be at least 2".into(),
        ));
    }
    window.validate()?;
    let ds = (window.s_max - window.s_min) / resolution as f64;
    let dt = (window.t_max - window.t_min) / resolution as f64;
    let cells = (0..resolution * resolution)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % resolution, idx / resolution);
            let s = window.s_min + (i as f64 + 0.5) * ds;
            let t = window.t_min + (j as f64 + 0.5) * dt;
            let outcome = TimePair::new(s, t).and_then(|p| {
                if spec.branch(p).is_none() {
                    return Err(CeaError::OutOfDomain { s, t });
                }
                classify_dynamics(spec, p, field)
            });
            let (tag, label) = match outcome {
                Ok(class) => {
                    let inside = match property {
                        Property::Class(want) => class.tag == want,
                        Property::Evolution => true,
                    };
                    (
                        Some(class.tag),
                        if inside {
                            CellLabel::InP
                        } else {
                            CellLabel::NotInP
                        },
                    )
                }
                Err(CeaError::OutOfDomain { .. }) => (None, CellLabel::OutOfDomain),
                Err(e) => {
                    log::debug!("cell ({s}, {t}): {e}");
                    (None, CellLabel::Error)
                }
            };
            Cell { s, t, tag, label }
        })
        .collect();
    Ok(PropertyDiagram {
        window,
        resolution,
        cells,
    })
}

impl PropertyDiagram {
    pub fn cell(&self, i: usize, j: usize) -> &Cell {
        &self.cells[j * self.resolution + i]
    }

    pub fn count(&self, label: CellLabel) -> usize {
        self.cells.iter().filter(|c| c.label == label).count()
    }

    /// `s,t,class_tag`; the tag column holds `out` for cells outside the
    /// domain and `error` for cells that failed to evaluate.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,t,class_tag\n");
        for c in &self.cells {
            let tag = match (c.label, c.tag) {
                (CellLabel::OutOfDomain, _) => "out".to_string(),
                (CellLabel::Error, _) | (_, None) => "error".to_string(),
                (_, Some(tag)) => tag.to_string(),
            };
            let _ = writeln!(out, "{},{},{}", c.s, c.t, tag);
        }
        out
    }

    /// One `rect` per cell; `s` runs left to right and `t` bottom to top.
    pub fn to_svg(&self, cell_px: usize) -> String {
        let n = self.resolution;
        let size = n * cell_px;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        for j in 0..n {
            for i in 0..n {
                let c = self.cell(i, j);
                let class = match c.label {
                    CellLabel::InP => "in",
                    CellLabel::NotInP => "out",
                    CellLabel::OutOfDomain => "na",
                    CellLabel::Error => "err",
                };
                let _ = writeln!(
                    out,
                    r#"<rect x="{}" y="{}" width="{cell_px}" height="{cell_px}" fill="{}" class="{class}"/>"#,
                    i * cell_px,
                    (n - 1 - j) * cell_px,
                    color(c)
                );
            }
        }
        out.push_str("</svg>\n");
        out
    }
}
