//! Monospaced diagrams of pictures, optionally cut into `k`-blocks.

use crate::grid::{Picture, Symbol};
use crate::lang::TileSet;

/// Frame characters for one output style.
struct Style {
    tl: char,
    tr: char,
    bl: char,
    br: char,
    h: char,
    v: char,
    /// Separator between blocks inside a row, and the dashed line between block rows.
    vk: char,
    hk: char,
    /// Crossings of block separators with the outer frame and each other.
    tk: char,
    bk: char,
    lk: char,
    rk: char,
    xk: char,
}

const BOX: Style = Style {
    tl: '┌',
    tr: '┐',
    bl: '└',
    br: '┘',
    h: '─',
    v: '│',
    vk: '┆',
    hk: '╌',
    tk: '┬',
    bk: '┴',
    lk: '├',
    rk: '┤',
    xk: '┼',
};

const ASCII: Style = Style {
    tl: '+',
    tr: '+',
    bl: '+',
    br: '+',
    h: '-',
    v: '|',
    vk: ':',
    hk: '~',
    tk: '+',
    bk: '+',
    lk: '+',
    rk: '+',
    xk: '+',
};

fn width(s: &Symbol) -> usize {
    s.as_str().chars().count()
}

/// Renders `p`; with `k`, dashed separators fall after every `k` rows and columns.
pub fn render_picture(p: &Picture, k: Option<usize>, ascii: bool) -> String {
    let st = if ascii { &ASCII } else { &BOX };
    let w = p.cells().iter().map(width).max().unwrap_or(1);
    let cut = |n: usize, len: usize| matches!(k, Some(k) if k > 0 && n.is_multiple_of(k) && n < len);
    // Column layout: for each column, whether a block separator follows it.
    let seg = |fill: char, cross: char| -> String {
        let mut s = String::new();
        for j in 1..=p.cols() {
            s.extend(std::iter::repeat_n(fill, w + 2));
            if cut(j, p.cols()) {
                s.push(cross);
            }
        }
        s
    };
    let mut out = String::new();
    out.push(st.tl);
    out.push_str(&seg(st.h, st.tk));
    out.push(st.tr);
    out.push('\n');
    for i in 1..=p.rows() {
        out.push(st.v);
        for j in 1..=p.cols() {
            let t = p.get(i, j).as_str();
            out.push(' ');
            out.push_str(t);
            out.extend(std::iter::repeat_n(' ', w - t.chars().count() + 1));
            if cut(j, p.cols()) {
                out.push(st.vk);
            }
        }
        out.push(st.v);
        out.push('\n');
        if cut(i, p.rows()) {
            out.push(st.lk);
            out.push_str(&seg(st.hk, st.xk));
            out.push(st.rk);
            out.push('\n');
        }
    }
    out.push(st.bl);
    out.push_str(&seg(st.h, st.bk));
    out.push(st.br);
    out.push('\n');
    out
}

/// Renders every tile, each under a numbered caption.
pub fn render_tileset(t: &TileSet, ascii: bool) -> String {
    let mut out = String::new();
    for (i, tile) in t.tiles().enumerate() {
        out.push_str(&format!("tile {}\n", i + 1));
        out.push_str(&render_picture(&tile, None, ascii));
    }
    out
}

fn is_frame_char(c: char) -> bool {
    [&BOX, &ASCII].iter().any(|st| {
        [st.tl, st.tr, st.bl, st.br, st.h, st.v, st.vk, st.hk, st.tk, st.bk, st.lk, st.rk, st.xk].contains(&c)
    })
}

/// Reads a rendered picture back; tokens must not contain frame characters.
pub fn parse_rendered(text: &str) -> Option<Picture> {
    let mut rows: Vec<Vec<Symbol>> = Vec::new();
    for line in text.lines() {
        if line.chars().all(|c| is_frame_char(c) || c.is_whitespace()) {
            continue;
        }
        let cleaned: String = line.chars().map(|c| if is_frame_char(c) { ' ' } else { c }).collect();
        let row = cleaned
            .split_whitespace()
            .map(|t| if t == "#" { Some(Symbol::border()) } else { Symbol::new(t).ok() })
            .collect::<Option<Vec<_>>>()?;
        rows.push(row);
    }
    let cols = rows.first()?.len();
    if rows.iter().any(|r| r.len() != cols) {
        return None;
    }
    Picture::new(rows.len(), cols, rows.concat()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::tests::sym;
    use crate::reduce::pad_picture;
    use proptest::prelude::*;

    #[test]
    fn single_cell() {
        let p = Picture::uniform(1, 1, &sym("a"));
        assert_eq!(render_picture(&p, None, false), "┌───┐\n│ a │\n└───┘\n");
        assert_eq!(render_picture(&p, Some(3), true), "+---+\n| a |\n+---+\n");
    }

    #[test]
    fn padded_picture_has_block_separators() {
        let p = pad_picture(&Picture::uniform(6, 12, &sym("a")), 3).unwrap();
        let r = render_picture(&p, Some(3), false);
        let lines: Vec<&str> = r.lines().collect();
        assert_eq!(lines.len(), 9 + 2 + 2);
        assert_eq!(lines[4], "├╌╌╌╌╌╌╌╌╌┼╌╌╌╌╌╌╌╌╌┼╌╌╌╌╌╌╌╌╌┼╌╌╌╌╌╌╌╌╌┼╌╌╌╌╌╌╌╌╌┤");
        assert_eq!(lines[1], "│ a  a  a ┆ a  a  a ┆ a  a  a ┆ a  a  a ┆ $  $  $ │");
        assert_eq!(parse_rendered(&r).unwrap(), p);
    }

    fn arb_picture() -> impl Strategy<Value = Picture> {
        (1usize..7, 1usize..7).prop_flat_map(|(m, n)| {
            proptest::collection::vec(prop_oneof![Just("a"), Just("bb"), Just("(1,$)"), Just("↘")], m * n)
                .prop_map(move |v| Picture::new(m, n, v.iter().map(|t| sym(t)).collect()).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn render_then_parse_is_identity(p in arb_picture(), k in proptest::option::of(1usize..4), ascii in any::<bool>()) {
            prop_assert_eq!(parse_rendered(&render_picture(&p, k, ascii)).unwrap(), p);
        }
    }
}
