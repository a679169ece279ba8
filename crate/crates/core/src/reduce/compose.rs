//! The composed code `Z` and the removal of padding from `M_{2k}`.

use std::collections::{BTreeMap, BTreeSet};

use super::frames::FrameAlphabet;
use super::ReduceError;
use crate::codes::{CodeError, PictureCode};
use crate::grid::{Alphabet, Symbol};
use crate::lang::{symbol_id, TileSet};

/// Codes each frame symbol `⟨γ, p⟩` by the bits of the picture assigned to
/// `γ` merged with the face `p`. Frames take the pictures of `x` in order.
pub fn build_code_z(b: &FrameAlphabet, faces: &Alphabet, x: &PictureCode) -> Result<PictureCode, ReduceError> {
    let k = b.k();
    if x.k() != k {
        return Err(ReduceError::Domain(format!("code size {} differs from block size {k}", x.k())));
    }
    let q = b.frames();
    if x.len() < q.len() {
        return Err(CodeError::Insufficient { needed: q.len(), available: x.len() }.into());
    }
    let assigned: BTreeMap<_, _> = q.iter().zip(x.pictures()).collect();
    let lambda = Alphabet::product("lambda", x.alphabet(), faces);
    let mut coding = BTreeMap::new();
    let mut pictures = Vec::with_capacity(b.len());
    for (name, s) in b.alphabet().iter().zip(b.symbols()) {
        let z = assigned[&s.frame].merge(&s.face)?;
        pictures.push(z.clone());
        coding.insert(name.clone(), z);
    }
    let code = PictureCode::new(k, lambda, pictures)?;
    Ok(code.with_coding(coding)?)
}

/// The pair letters whose face component is `$`.
pub fn pad_letters(bits: &Alphabet, dollar: &Symbol) -> BTreeSet<Symbol> {
    bits.iter().map(|b| Symbol::pair(b, dollar)).collect()
}

/// Drops the tiles of `m` that cannot occur in a cropped picture, then
/// rewrites the pad letters to `#`.
///
/// A tile is dropped when two of its columns consist of pad letters, or a
/// pad column is followed by a `#` column; likewise for rows. The result is
/// over `Λ` minus the pad letters.
pub fn eliminate_padding(m: &TileSet, pad: &BTreeSet<Symbol>) -> Result<TileSet, ReduceError> {
    let lambda = m.alphabet();
    let theta = Alphabet::from_symbols("theta", lambda.iter().filter(|s| !pad.contains(*s)).cloned())?;
    // Old id to new id; pad letters map to `#`.
    let remap: Vec<u16> = std::iter::once(0)
        .chain(lambda.iter().map(|s| if pad.contains(s) { 0 } else { symbol_id(&theta, s).expect("kept letter") }))
        .collect();
    let is_pad: Vec<bool> = std::iter::once(false).chain(lambda.iter().map(|s| pad.contains(s))).collect();
    let kk = m.k();
    let mut raw = Vec::new();
    for t in 0..m.len() {
        let tile = m.raw_tile(t);
        if deleted(tile, kk, &is_pad) {
            continue;
        }
        raw.extend(tile.iter().map(|&c| remap[c as usize]));
    }
    Ok(TileSet::from_raw(kk, theta, raw))
}

#[derive(Clone, Copy, PartialEq)]
enum Line {
    Pad,
    Border,
    Other,
}

fn deleted(tile: &[u16], k: usize, is_pad: &[bool]) -> bool {
    let classify = |cells: &mut dyn Iterator<Item = u16>| -> Line {
        let v: Vec<u16> = cells.collect();
        if v.iter().all(|&c| is_pad[c as usize]) {
            Line::Pad
        } else if v.iter().all(|&c| c == 0) {
            Line::Border
        } else {
            Line::Other
        }
    };
    let cols: Vec<Line> = (0..k).map(|j| classify(&mut (0..k).map(|i| tile[i * k + j]))).collect();
    let rows: Vec<Line> = (0..k).map(|i| classify(&mut tile[i * k..(i + 1) * k].iter().copied())).collect();
    let bad = |lines: &[Line]| {
        lines.iter().filter(|&&l| l == Line::Pad).count() >= 2
            || lines.windows(2).any(|w| w[0] == Line::Pad && w[1] == Line::Border)
    };
    bad(&cols) || bad(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Picture;
    use crate::lang::tests::{pic, sym};
    use proptest::prelude::*;

    fn lambda() -> Alphabet {
        let bits = Alphabet::new("bits", ["0", "1"]).unwrap();
        let faces = Alphabet::new("faces", ["a", "$"]).unwrap();
        Alphabet::product("lambda", &bits, &faces)
    }

    fn pads() -> BTreeSet<Symbol> {
        pad_letters(&Alphabet::new("bits", ["0", "1"]).unwrap(), &sym("$"))
    }

    #[test]
    fn deletion_forms() {
        let t = |s: &str| TileSet::new(3, lambda(), [pic(s)]).unwrap();
        let keep = t("(0,a) (1,a) (0,$)\n(1,a) (1,a) (0,$)\n(0,$) (0,$) (1,$)");
        let kept = eliminate_padding(&keep, &pads()).unwrap();
        assert_eq!(kept.len(), 1);
        assert!(kept.contains(&pic("(0,a) (1,a) #\n(1,a) (1,a) #\n# # #")));
        for s in [
            "(0,a) (0,$) (1,$)\n(1,a) (0,$) (0,$)\n(1,a) (1,$) (0,$)",
            "(0,a) (0,$) #\n(1,a) (1,$) #\n(0,a) (0,$) #",
            "(0,a) (1,a) (0,a)\n(0,$) (1,$) (0,$)\n# # #",
        ] {
            assert!(eliminate_padding(&t(s), &pads()).unwrap().is_empty(), "{s}");
        }
        assert_eq!(eliminate_padding(&keep, &pads()).unwrap().alphabet().len(), 2);
    }

    proptest! {
        #[test]
        fn pad_free_tiles_pass_unchanged(bits in proptest::collection::vec(any::<bool>(), 9)) {
            let cells: Vec<Symbol> =
                bits.iter().map(|&b| Symbol::pair(&sym(if b { "1" } else { "0" }), &sym("a"))).collect();
            let p = Picture::new(3, 3, cells).unwrap();
            let out = eliminate_padding(&TileSet::new(3, lambda(), [p.clone()]).unwrap(), &pads()).unwrap();
            prop_assert_eq!(out.tiles().collect::<Vec<_>>(), vec![p]);
        }
    }
}
