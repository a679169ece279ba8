//! Text formats for pictures, tiling systems and picture codes.
//!
//! Every serializer emits canonical order, so `parse(serialize(x)) == x` and
//! serializing a parsed file reproduces it byte for byte.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::codes::{CodeError, PictureCode};
use crate::grid::{Alphabet, GridError, Picture, Symbol};
use crate::lang::{LangError, TileSet, TilingSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Syntax { line, message: message.into() })
}

/// Non-blank lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

fn row_text(cells: &[Symbol]) -> String {
    cells.iter().map(Symbol::as_str).collect::<Vec<_>>().join(" ")
}

fn grid_text(p: &Picture) -> String {
    (1..=p.rows()).map(|i| row_text(p.row(i)) + "\n").collect()
}

fn token(line: usize, t: &str, border: bool) -> Result<Symbol, FormatError> {
    if t == "#" {
        return if border { Ok(Symbol::border()) } else { syntax(line, "'#' in a picture that is not bordered") };
    }
    Symbol::new(t).map_err(|e| FormatError::Syntax { line, message: e.to_string() })
}

/// Reads `rows` lines of `cols` tokens.
fn read_grid<'a, I: Iterator<Item = (usize, &'a str)>>(
    it: &mut I,
    rows: usize,
    cols: usize,
    border: bool,
    at: usize,
) -> Result<Picture, FormatError> {
    let mut cells = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let Some((ln, l)) = it.next() else {
            return syntax(at, format!("expected {rows} rows, found {r}"));
        };
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != cols {
            return syntax(ln, format!("expected {cols} tokens, found {}", toks.len()));
        }
        for t in toks {
            cells.push(token(ln, t, border)?);
        }
    }
    Ok(Picture::new(rows, cols, cells)?)
}

/// `rows cols` followed by the rows; `#` only when `border` is set.
pub fn parse_picture(text: &str, border: bool) -> Result<Picture, FormatError> {
    let mut it = lines(text);
    let Some((ln, head)) = it.next() else {
        return syntax(1, "empty picture file");
    };
    let dims: Vec<usize> = head
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| FormatError::Syntax { line: ln, message: format!("bad size line {head:?}") })?;
    let [rows, cols] = dims[..] else {
        return syntax(ln, "size line needs two numbers");
    };
    if rows == 0 || cols == 0 {
        return syntax(ln, "pictures are non-empty");
    }
    let p = read_grid(&mut it, rows, cols, border, ln)?;
    if let Some((l, _)) = it.next() {
        return syntax(l, "trailing content");
    }
    Ok(p)
}

pub fn write_picture(p: &Picture) -> String {
    format!("{} {}\n{}", p.rows(), p.cols(), grid_text(p))
}

/// Splits `key: value` header lines.
fn header<'a>(ln: usize, l: &'a str, key: &str) -> Result<&'a str, FormatError> {
    match l.strip_prefix(key).and_then(|r| r.strip_prefix(':')) {
        Some(v) => Ok(v.trim()),
        None => syntax(ln, format!("expected '{key}:'")),
    }
}

fn next_header<'a, I: Iterator<Item = (usize, &'a str)>>(
    it: &mut I,
    key: &str,
) -> Result<(usize, &'a str), FormatError> {
    match it.next() {
        Some((ln, l)) => Ok((ln, header(ln, l, key)?)),
        None => syntax(0, format!("missing '{key}:' header")),
    }
}

fn parse_alphabet(ln: usize, name: &str, v: &str) -> Result<Alphabet, FormatError> {
    Alphabet::new(name, v.split_whitespace()).map_err(|e| FormatError::Syntax { line: ln, message: e.to_string() })
}

fn parse_k(ln: usize, v: &str) -> Result<usize, FormatError> {
    v.parse().map_err(|_| FormatError::Syntax { line: ln, message: format!("bad size {v:?}") })
}

/// Headers `k:`, `terminal:`, `local:`, `projection:`, then `tile:` blocks.
pub fn parse_system(text: &str) -> Result<TilingSystem, FormatError> {
    let mut it = lines(text).peekable();
    let (ln, v) = next_header(&mut it, "k")?;
    let k = parse_k(ln, v)?;
    let (ln, v) = next_header(&mut it, "terminal")?;
    let terminal = parse_alphabet(ln, "terminal", v)?;
    let (ln, v) = next_header(&mut it, "local")?;
    let local = parse_alphabet(ln, "local", v)?;
    let (ln, v) = next_header(&mut it, "projection")?;
    let mut projection = BTreeMap::new();
    for pair in v.split_whitespace() {
        let Some((a, b)) = pair.split_once("->") else {
            return syntax(ln, format!("projection entry {pair:?} lacks '->'"));
        };
        projection.insert(token(ln, a, false)?, token(ln, b, false)?);
    }
    let mut tiles = Vec::new();
    while let Some((ln, l)) = it.next() {
        if l != "tile:" {
            return syntax(ln, format!("expected 'tile:', found {l:?}"));
        }
        tiles.push(read_grid(&mut it, k, k, true, ln)?);
    }
    let tileset = TileSet::new(k, local, tiles)?;
    Ok(TilingSystem::new(terminal, tileset, projection)?)
}

pub fn write_system(s: &TilingSystem) -> String {
    let mut out = format!(
        "k: {}\nterminal: {}\nlocal: {}\nprojection: {}\n",
        s.k(),
        row_text(s.terminal().symbols()),
        row_text(s.local().symbols()),
        s.projection().iter().map(|(a, b)| format!("{a}->{b}")).collect::<Vec<_>>().join(" ")
    );
    for t in s.tileset().tiles() {
        out.push_str("tile:\n");
        out.push_str(&grid_text(&t));
    }
    out
}

/// A tile set alone, written as the identity tiling system.
pub fn write_tileset(t: &TileSet) -> String {
    write_system(&TilingSystem::identity(t.clone()))
}

/// Headers `k:`, `alphabet:`, optional `coding: s -> id` lines, then
/// `picture <id>:` blocks numbered from 1 in canonical order.
pub fn parse_code(text: &str) -> Result<PictureCode, FormatError> {
    let mut it = lines(text).peekable();
    let (ln, v) = next_header(&mut it, "k")?;
    let k = parse_k(ln, v)?;
    let (ln, v) = next_header(&mut it, "alphabet")?;
    let alphabet = parse_alphabet(ln, "code", v)?;
    let mut coding_ids: Vec<(usize, Symbol, usize)> = Vec::new();
    while let Some(&(ln, l)) = it.peek() {
        let Ok(v) = header(ln, l, "coding") else { break };
        it.next();
        let Some((s, id)) = v.split_once("->") else {
            return syntax(ln, "coding line needs 'symbol -> picture-id'");
        };
        let id = id
            .trim()
            .parse::<usize>()
            .map_err(|_| FormatError::Syntax { line: ln, message: format!("bad id {id:?}") })?;
        coding_ids.push((ln, token(ln, s.trim(), false)?, id));
    }
    let mut pictures = Vec::new();
    while let Some((ln, l)) = it.next() {
        let expected = format!("picture {}:", pictures.len() + 1);
        if l != expected {
            return syntax(ln, format!("expected {expected:?}, found {l:?}"));
        }
        pictures.push(read_grid(&mut it, k, k, false, ln)?);
    }
    if pictures.windows(2).any(|w| w[0] >= w[1]) {
        return syntax(0, "pictures must be listed in canonical order without repeats");
    }
    let code = PictureCode::new(k, alphabet, pictures.clone())?;
    if coding_ids.is_empty() {
        return Ok(code);
    }
    let mut coding = BTreeMap::new();
    for (ln, s, id) in coding_ids {
        let Some(p) = id.checked_sub(1).and_then(|i| pictures.get(i)) else {
            return syntax(ln, format!("no picture {id}"));
        };
        coding.insert(s, p.clone());
    }
    Ok(code.with_coding(coding)?)
}

pub fn write_code(x: &PictureCode) -> String {
    let mut out = format!("k: {}\nalphabet: {}\n", x.k(), row_text(x.alphabet().symbols()));
    if let Some(c) = x.coding() {
        for (s, p) in c {
            out.push_str(&format!("coding: {s} -> {}\n", x.id_of(p).expect("coded picture is in the code")));
        }
    }
    for (i, p) in x.pictures().iter().enumerate() {
        out.push_str(&format!("picture {}:\n", i + 1));
        out.push_str(&grid_text(p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::search_comma_free_picture_code;
    use crate::lang::tests::{ex1_k2, ex1_k3, pic};
    use proptest::prelude::*;

    #[test]
    fn picture_format() {
        let p = parse_picture("2 3\na b a\nb b a\n", false).unwrap();
        assert_eq!(p, pic("a b a\nb b a"));
        assert_eq!(write_picture(&p), "2 3\na b a\nb b a\n");
        assert!(parse_picture("1 2\na #\n", false).is_err());
        assert!(parse_picture("1 2\na #\n", true).is_ok());
        assert!(matches!(parse_picture("2 2\na a\n", false), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(parse_picture("1 2\na a a\n", false), Err(FormatError::Syntax { line: 2, .. })));
    }

    /// Equality up to alphabet names, which the format does not carry.
    fn same(a: &TilingSystem, b: &TilingSystem) -> bool {
        a.terminal().symbols() == b.terminal().symbols()
            && a.local().symbols() == b.local().symbols()
            && a.projection() == b.projection()
            && a.tileset().tiles().eq(b.tileset().tiles())
    }

    #[test]
    fn systems_round_trip_byte_stable() {
        for s in [ex1_k2(), ex1_k3()] {
            let text = write_system(&s);
            let back = parse_system(&text).unwrap();
            assert!(same(&back, &s));
            assert_eq!(write_system(&back), text);
        }
        assert!(parse_system("k: 2\nterminal: a\nlocal: b\nprojection: b=a\n").is_err());
    }

    #[test]
    fn codes_round_trip_with_coding() {
        let bits = Alphabet::new("bits", ["0", "1"]).unwrap();
        let x = search_comma_free_picture_code(&bits, 2, 3, 1).unwrap();
        let src = Alphabet::new("src", ["u", "v"]).unwrap();
        let coded = x.clone().assign_coding(&src).unwrap();
        for c in [x, coded] {
            let text = write_code(&c);
            let back = parse_code(&text).unwrap();
            assert_eq!(back.pictures(), c.pictures());
            assert_eq!(back.coding(), c.coding());
            assert_eq!(write_code(&back), text);
        }
    }

    fn arb_picture() -> impl Strategy<Value = Picture> {
        (1usize..6, 1usize..6).prop_flat_map(|(m, n)| {
            proptest::collection::vec(prop_oneof![Just("a"), Just("b"), Just("(0,$)"), Just("♭")], m * n)
                .prop_map(move |v| Picture::new(m, n, v.iter().map(|t| Symbol::new(t).unwrap()).collect()).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn picture_round_trip(p in arb_picture()) {
            prop_assert_eq!(parse_picture(&write_picture(&p), false).unwrap(), p);
        }

        #[test]
        fn system_round_trip(tiles in proptest::collection::btree_set(arb_tile(), 1..12)) {
            let local = Alphabet::new("local", ["a", "b", "(0,$)", "♭"]).unwrap();
            let t = TileSet::new(2, local, tiles).unwrap();
            let s = TilingSystem::identity(t);
            let text = write_system(&s);
            let back = parse_system(&text).unwrap();
            prop_assert_eq!(write_system(&back), text);
            prop_assert!(same(&back, &s));
        }

        #[test]
        fn code_round_trip(pics in proptest::collection::btree_set(arb_bits(), 1..10)) {
            let bits = Alphabet::new("bits", ["0", "1"]).unwrap();
            let x = PictureCode::new(3, bits, pics.into_iter().collect()).unwrap();
            let back = parse_code(&write_code(&x)).unwrap();
            prop_assert_eq!(back.pictures(), x.pictures());
        }
    }

    fn arb_tile() -> impl Strategy<Value = Picture> {
        proptest::collection::vec(prop_oneof![Just("#"), Just("a"), Just("b"), Just("(0,$)"), Just("♭")], 4)
            .prop_filter("not all border", |v| v.iter().any(|t| *t != "#"))
            .prop_map(|v| {
                Picture::new(
                    2,
                    2,
                    v.iter().map(|t| if *t == "#" { Symbol::border() } else { Symbol::new(t).unwrap() }).collect(),
                )
                .unwrap()
            })
    }

    fn arb_bits() -> impl Strategy<Value = Picture> {
        proptest::collection::vec(any::<bool>(), 9).prop_map(|v| {
            Picture::new(3, 3, v.iter().map(|&b| Symbol::new(if b { "1" } else { "0" }).unwrap()).collect()).unwrap()
        })
    }
}
