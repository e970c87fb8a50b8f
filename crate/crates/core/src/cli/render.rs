//! Text renderings of an atlas. Both are pure functions of the atlas.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::atlas::KAtlas;
use crate::regions::Region;
use crate::signatures::SkeletalPoint;

pub const CSV_HEADER: &str = "h,r,witness_count,min_group_order";

pub fn atlas_csv(atlas: &KAtlas) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (p, ws) in &atlas.points {
        let min_order = ws.iter().map(|w| w.witness.order()).min().unwrap_or(0);
        writeln!(out, "{},{},{},{}", p.h, p.r, ws.len(), min_order).expect("write to string");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridRendering {
    pub genus: u32,
    pub cells: BTreeMap<SkeletalPoint, char>,
    pub legend: Vec<(char, &'static str)>,
}

impl GridRendering {
    pub fn new(atlas: &KAtlas) -> Self {
        let s = atlas.genus.get() as i64;
        let cells = Region::T(atlas.genus.get())
            .lattice_points()
            .into_iter()
            .map(|p| {
                let (h, r) = (p.h as i64, p.r as i64);
                let glyph = if atlas.contains(p) {
                    '#'
                } else if r == 2 * s + 2 - 4 * h {
                    '-'
                } else if r == s + 2 - 3 * h {
                    '.'
                } else {
                    ' '
                };
                (p, glyph)
            })
            .collect();
        GridRendering {
            genus: atlas.genus.get(),
            cells,
            legend: vec![
                ('#', "witnessed"),
                ('-', "unwitnessed, r = 2σ+2-4h"),
                ('.', "unwitnessed, r = σ+2-3h"),
            ],
        }
    }

    /// `r` rows from the top down, one column per `h`, axis labels on the
    /// left and bottom.
    pub fn render(&self) -> String {
        let r_max = self.cells.keys().map(|p| p.r).max().unwrap_or(0);
        let h_max = self.cells.keys().map(|p| p.h).max().unwrap_or(0);
        let width = r_max.to_string().len();
        let mut out = format!("genus {}\n", self.genus);
        for r in (0..=r_max).rev() {
            let mut line = format!("{r:>width$} |");
            for h in 0..=h_max {
                line.push(' ');
                line.push(*self.cells.get(&SkeletalPoint::new(h, r)).unwrap_or(&' '));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        writeln!(out, "{:>width$} +{}", "", "--".repeat(h_max as usize + 1))
            .expect("write to string");
        let mut axis = format!("{:>width$}  ", "");
        for h in 0..=h_max {
            write!(axis, "{:<2}", h % 10).expect("write to string");
        }
        out.push_str(axis.trim_end());
        out.push_str("  h\n");
        for (g, text) in &self.legend {
            writeln!(out, "{g} {text}").expect("write to string");
        }
        out
    }
}
