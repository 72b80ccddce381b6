//! SVG wiring diagrams. Marked crossings: squares for `±2`, disks for `±1`,
//! black for negative and white for positive.

use std::fmt::Write as _;

use crate::perm::Word;

const DX: f64 = 40.0;
const DY: f64 = 30.0;
const PAD: f64 = 20.0;

/// Wiring diagram of `word`, optionally decorated with an ancestry or preancestry.
pub fn wiring_svg(word: &Word, marks: Option<&[i8]>) -> String {
    let (n, len) = (word.n(), word.len());
    let width = PAD * 2.0 + DX * (len as f64 + 1.0);
    let height = PAD * 2.0 + DY * n as f64;
    let y = |level: usize| PAD + DY * (level - 1) as f64;
    let x = |k: usize| PAD + DX * k as f64;

    // level[w] = current row of wire w
    let mut level: Vec<usize> = (1..=n + 1).collect();
    let mut paths: Vec<Vec<(f64, f64)>> = level.iter().map(|&l| vec![(PAD, y(l))]).collect();
    for k in 1..=len {
        let i = word.letter(k);
        for (w, l) in level.iter_mut().enumerate() {
            let before = *l;
            if *l == i {
                *l = i + 1;
            } else if *l == i + 1 {
                *l = i;
            }
            paths[w].push((x(k) - DX / 2.0, y(before)));
            paths[w].push((x(k) + DX / 2.0, y(*l)));
        }
    }
    for (w, p) in paths.iter_mut().enumerate() {
        p.push((width - PAD, y(level[w])));
    }

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for p in &paths {
        let pts: Vec<String> = p.iter().map(|(a, b)| format!("{a},{b}")).collect();
        let _ = writeln!(s, r#"  <polyline points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#, pts.join(" "));
    }
    if let Some(marks) = marks {
        for (k, &e) in marks.iter().enumerate().take(len) {
            if e == 0 {
                continue;
            }
            let i = word.letter(k + 1);
            let (cx, cy) = (x(k + 1), (y(i) + y(i + 1)) / 2.0);
            let fill = if e < 0 { "black" } else { "white" };
            if e.abs() == 2 {
                let _ = writeln!(
                    s,
                    r#"  <rect x="{}" y="{}" width="12" height="12" fill="{fill}" stroke="black"/>"#,
                    cx - 6.0,
                    cy - 6.0
                );
            } else {
                let _ = writeln!(s, r#"  <circle cx="{cx}" cy="{cy}" r="6" fill="{fill}" stroke="black"/>"#);
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn marks_shapes() {
        let w = Word::parse("a1 a2 a1", Some(2)).unwrap();
        let s = wiring_svg(&w, Some(&[-2, 1, 2]));
        assert_eq!(s.matches("<rect").count(), 2);
        assert_eq!(s.matches("<circle").count(), 1);
        assert_eq!(s.matches("<polyline").count(), 3);
        assert_eq!(s.matches(r#"fill="black""#).count(), 1);
    }
}
