//! Self-contained SVG and plain-text drawings of labelled Dyck paths and
//! arch diagrams. Output is deterministic.

use std::fmt::Write;

use crate::arch::ArchDiagram;
use crate::parking::LabelledDyckPath;

const CELL: usize = 32;
const MARGIN: usize = 24;

fn svg_open(out: &mut String, width: usize, height: usize) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="13">"#
    );
    let _ = writeln!(out, r##"<rect width="{width}" height="{height}" fill="#ffffff"/>"##);
}

/// The path on an `n x n` grid with labels centred above their steps. With
/// `contacts`, the bounce path through those diagonal points is overlaid.
pub fn dyck_svg(path: &LabelledDyckPath, contacts: Option<&[usize]>) -> String {
    let n = path.n();
    let size = n * CELL + 2 * MARGIN;
    let px = |x: usize| MARGIN + x * CELL;
    let py = |y: usize| MARGIN + (n - y) * CELL;
    let mut out = String::new();
    svg_open(&mut out, size, size);

    for k in 0..=n {
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#dddddd"/>"##,
            px(k), py(0), px(k), py(n)
        );
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#dddddd"/>"##,
            px(0), py(k), px(n), py(k)
        );
    }
    let _ = writeln!(
        out,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999999" stroke-dasharray="4 4"/>"##,
        px(0), py(0), px(n), py(n)
    );

    let points: Vec<String> = path
        .lattice_points()
        .iter()
        .map(|&(x, y)| format!("{},{}", px(x), py(y)))
        .collect();
    let _ = writeln!(
        out,
        r##"<polyline points="{}" fill="none" stroke="#000000" stroke-width="2"/>"##,
        points.join(" ")
    );

    if let Some(contacts) = contacts {
        let mut pts = vec![format!("{},{}", px(0), py(0))];
        for pair in contacts.windows(2) {
            pts.push(format!("{},{}", px(pair[1]), py(pair[0])));
            pts.push(format!("{},{}", px(pair[1]), py(pair[1])));
        }
        let _ = writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="#d62728" stroke-width="2" stroke-dasharray="6 3"/>"##,
            pts.join(" ")
        );
    }

    for (x, (&h, &l)) in path.heights().iter().zip(path.labels()).enumerate() {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{l}</text>"#,
            px(x) + CELL / 2,
            py(h) - 6
        );
    }
    out.push_str("</svg>\n");
    out
}

/// One text row per height, top row first. A label marks the cell above
/// its step, `\` marks the diagonal, `#` the bounce path's horizontal runs.
pub fn dyck_ascii(path: &LabelledDyckPath, contacts: Option<&[usize]>) -> String {
    let n = path.n();
    let width = n.to_string().len() + 1;
    let mut grid = vec![vec![".".to_string(); n]; n];
    for (y, row) in grid.iter_mut().enumerate() {
        if y < n {
            row[y] = "\\".into();
        }
    }
    if let Some(contacts) = contacts {
        for pair in contacts.windows(2) {
            for cell in &mut grid[pair[0]][pair[0]..pair[1]] {
                *cell = "#".into();
            }
        }
    }
    for (x, (&h, &l)) in path.heights().iter().zip(path.labels()).enumerate() {
        if h < n {
            grid[h][x] = l.to_string();
        }
    }
    let mut out = String::new();
    for row in grid.iter().rev() {
        let line: String = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Vertices as dots on a baseline, arcs as semicircles with their labels at
/// the apex. `vertex_labels[i]` names position `i` when given.
pub fn arch_svg(a: &ArchDiagram, vertex_labels: Option<&[usize]>) -> String {
    let n = a.n();
    let gap = 48;
    let max_span = a.arcs().iter().map(|e| e.right - e.left).max().unwrap_or(0);
    let width = n * gap + 2 * MARGIN;
    let base = MARGIN + max_span * gap / 2 + 12;
    let height = base + 2 * MARGIN;
    let px = |i: usize| MARGIN + i * gap;
    let mut out = String::new();
    svg_open(&mut out, width, height);
    let _ = writeln!(
        out,
        r##"<line x1="{}" y1="{base}" x2="{}" y2="{base}" stroke="#999999"/>"##,
        px(0) - 8,
        px(n) + 8
    );
    for e in a.arcs() {
        let r = (e.right - e.left) * gap / 2;
        let _ = writeln!(
            out,
            r##"<path d="M {} {base} A {r} {r} 0 0 1 {} {base}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##,
            px(e.left),
            px(e.right)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            px(e.left) + r,
            base - r - 4,
            e.label
        );
    }
    for i in 0..=n {
        let _ = writeln!(out, r##"<circle cx="{}" cy="{base}" r="4" fill="#000000"/>"##, px(i));
        let name = vertex_labels.map_or(i, |v| v[i]);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{name}</text>"#,
            px(i),
            base + 20
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Outermost arcs on the top row, each nesting level one row lower, and the
/// vertex names along the bottom.
pub fn arch_ascii(a: &ArchDiagram, vertex_labels: Option<&[usize]>) -> String {
    const STEP: usize = 4;
    let n = a.n();
    let depth = |i: usize| {
        let e = &a.arcs()[i];
        a.arcs()
            .iter()
            .filter(|o| o.left <= e.left && e.right <= o.right && *o != e)
            .count()
    };
    let levels: Vec<usize> = (0..a.arcs().len()).map(depth).collect();
    let rows = levels.iter().max().map_or(0, |m| m + 1);
    let width = n * STEP + 1;
    let mut grid = vec![vec![' '; width]; rows];
    for (e, &level) in a.arcs().iter().zip(&levels) {
        let row = &mut grid[level];
        let (l, r) = (e.left * STEP, e.right * STEP);
        for c in &mut row[l + 1..r] {
            *c = '-';
        }
        row[l] = '+';
        row[r] = '+';
        let text = e.label.to_string();
        let mid = (l + r) / 2 - text.len() / 2;
        for (k, ch) in text.chars().enumerate() {
            row[mid + k] = ch;
        }
    }
    let mut out = String::new();
    for row in &grid {
        let line: String = row.iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let mut axis = vec![' '; width + 4];
    for i in 0..=n {
        let name = vertex_labels.map_or(i, |v| v[i]).to_string();
        for (k, ch) in name.chars().enumerate() {
            axis[i * STEP + k] = ch;
        }
    }
    out.push_str(axis.iter().collect::<String>().trim_end());
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arch::sigma_diagram;
    use crate::parking::{bounce_contacts, ParkingFunction};
    use crate::perm::FullCycle;

    fn running_example() -> ParkingFunction {
        "1,3,1,7,0,7,0,1,4".parse().unwrap()
    }

    #[test]
    fn dyck_ascii_small() {
        let p: ParkingFunction = "0,0".parse().unwrap();
        assert_eq!(dyck_ascii(&p.to_path(), None), " . \\\n 2 1\n");
        let contacts = bounce_contacts(&p);
        assert_eq!(dyck_ascii(&p.to_path(), Some(&contacts)), " . \\\n 2 1\n");
    }

    #[test]
    fn dyck_ascii_shows_bounce_runs() {
        let p = running_example();
        let text = dyck_ascii(&p.to_path(), Some(&bounce_contacts(&p)));
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows.len(), 9);
        assert_eq!(rows[8].split_whitespace().collect::<Vec<_>>(), vec!["7", "5", ".", ".", ".", ".", ".", ".", "."]);
        assert!(rows[6].contains('#'));
    }

    #[test]
    fn dyck_svg_is_deterministic_and_complete() {
        let p = running_example();
        let contacts = bounce_contacts(&p);
        let a = dyck_svg(&p.to_path(), Some(&contacts));
        assert_eq!(a, dyck_svg(&p.to_path(), Some(&contacts)));
        assert!(a.starts_with("<svg") && a.trim_end().ends_with("</svg>"));
        assert_eq!(a.matches("<text").count(), 9);
        assert_eq!(a.matches("<polyline").count(), 2);
        assert_eq!(dyck_svg(&p.to_path(), None).matches("<polyline").count(), 1);
    }

    #[test]
    fn arch_renderings() {
        let f = "(0 1)(0 2)".parse().unwrap();
        let a = sigma_diagram(&f, &FullCycle::canonical(2)).unwrap();
        assert_eq!(arch_ascii(&a, None), "+---2---+\n+-1-+\n0   1   2\n");
        let svg = arch_svg(&a, None);
        assert_eq!(svg.matches("<path").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 3);
        let named = arch_svg(&a, Some(&[0, 2, 1]));
        assert!(named.contains(">2</text>"));
    }
}
