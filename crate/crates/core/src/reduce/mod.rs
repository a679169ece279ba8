//! Reduction of a 2-tiling system to a `2k`-tiling system whose local
//! alphabet is twice the terminal one.
//!
//! The pipeline pads pictures with `$` to sides divisible by `k`, summarizes
//! each `k`-block of a padded pre-image by its frame and face, glues those
//! summaries with a 2-tile set, replaces every summary by a comma-free code
//! picture carrying the face, and finally deletes the padding again.

mod compose;
mod frames;
mod pad;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use thiserror::Error;

use crate::codes::{
    choose_k, encoded_local_tileset, family_count, find_comma_free_word_code, generate_picture_code,
    is_comma_free_picture_code, is_prime, make_obligation_word, search_comma_free_picture_code, CodeError,
    CodeFamilySpec, ObligationWord, PictureCode, WordCodeSearch, DEFAULT_CODE_BUDGET, DEFAULT_TILE_BUDGET,
};
use crate::grid::{Alphabet, GridError, Picture, Symbol};
use crate::lang::{alphabetic_ratio, preimage_search, slt_member, LangError, Preimage, TileSet, TilingSystem};

pub use compose::{build_code_z, eliminate_padding, pad_letters};
pub use frames::{block_symbol, frame_alphabet, frame_tileset, FrameAlphabet, FrameSource, FrameSymbol};
pub use pad::{delta, dollar, pad_local_picture, pad_picture, padded_len, padded_system, DOLLAR, FLAT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("{0}")]
    Domain(String),
    #[error("budget of {budget} exhausted while enumerating {what}")]
    Budget { budget: u64, what: &'static str },
    #[error("stage {stage}: {source}")]
    Stage { stage: Stage, source: Box<ReduceError> },
}

impl ReduceError {
    /// Whether the failure is a resource limit rather than a domain error.
    pub fn is_budget(&self) -> bool {
        match self {
            ReduceError::Budget { .. } => true,
            ReduceError::Lang(LangError::Budget { .. }) => true,
            ReduceError::Code(CodeError::Budget { .. }) => true,
            ReduceError::Code(CodeError::Lang(LangError::Budget { .. })) => true,
            ReduceError::Stage { source, .. } => source.is_budget(),
            _ => false,
        }
    }
}

/// The pipeline stages, in order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Pad,
    Frames,
    CodeX,
    FrameTiles,
    CodeZ,
    Encode,
    Eliminate,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stage::Pad => "pad",
            Stage::Frames => "frames",
            Stage::CodeX => "code-x",
            Stage::FrameTiles => "frame-tiles",
            Stage::CodeZ => "code-z",
            Stage::Encode => "encode",
            Stage::Eliminate => "eliminate",
        })
    }
}

trait AtStage<T> {
    fn at(self, stage: Stage) -> Result<T, ReduceError>;
}

impl<T, E: Into<ReduceError>> AtStage<T> for Result<T, E> {
    fn at(self, stage: Stage) -> Result<T, ReduceError> {
        self.map_err(|e| ReduceError::Stage { stage, source: Box::new(e.into()) })
    }
}

#[derive(Clone, Debug)]
pub struct ReductionOptions {
    /// Block size; chosen from the local alphabet size when absent.
    pub k: Option<usize>,
    /// Binary comma-free code of `k×k` pictures; generated when absent.
    pub code: Option<PictureCode>,
    pub frames: FrameSource,
    /// Node budget for searches and enumerations.
    pub budget: u64,
    /// Cap on the number of tiles of the encoded tile set.
    pub tile_budget: u64,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            k: None,
            code: None,
            frames: FrameSource::Local,
            budget: DEFAULT_CODE_BUDGET,
            tile_budget: DEFAULT_TILE_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionArtifacts {
    pub k: usize,
    pub source: TilingSystem,
    pub padded_system: TilingSystem,
    pub frame_alphabet: FrameAlphabet,
    /// `M_2` over the frame symbols.
    pub frame_tiles: TileSet,
    pub code_x: PictureCode,
    pub code_z: PictureCode,
    /// `M_{2k}` over the pair letters.
    pub encoded_tiles: TileSet,
    pub final_system: TilingSystem,
    pub timings: Vec<(Stage, Duration)>,
}

impl ReductionArtifacts {
    pub fn ratio(&self) -> Ratio<usize> {
        alphabetic_ratio(&self.final_system)
    }

    /// The ratio as `numerator/denominator`, also when it is an integer.
    pub fn ratio_text(&self) -> String {
        let r = self.ratio();
        format!("{}/{}", r.numer(), r.denom())
    }

    /// Plain-text summary of sizes and timings.
    pub fn report(&self) -> String {
        let mut s = String::new();
        let line = |s: &mut String, k: &str, v: String| s.push_str(&format!("{k}: {v}\n"));
        line(&mut s, "k", self.k.to_string());
        line(&mut s, "terminal alphabet", self.source.terminal().len().to_string());
        line(&mut s, "source local alphabet", self.source.local().len().to_string());
        line(&mut s, "padded local alphabet", self.padded_system.local().len().to_string());
        line(&mut s, "padded tiles", self.padded_system.tileset().len().to_string());
        line(&mut s, "frame symbols", self.frame_alphabet.len().to_string());
        line(&mut s, "frames", self.frame_alphabet.frames().len().to_string());
        line(&mut s, "frame tiles", self.frame_tiles.len().to_string());
        line(&mut s, "code X pictures", self.code_x.len().to_string());
        line(&mut s, "code Z pictures", self.code_z.len().to_string());
        line(&mut s, "encoded tiles", self.encoded_tiles.len().to_string());
        line(&mut s, "final local alphabet", self.final_system.local().len().to_string());
        line(&mut s, "final tiles", self.final_system.tileset().len().to_string());
        line(&mut s, "ratio", self.ratio_text());
        for (stage, d) in &self.timings {
            line(&mut s, &format!("time {stage}"), format!("{:.3}s", d.as_secs_f64()));
        }
        s
    }
}

/// A binary comma-free code of at least `needed` `k×k` pictures.
///
/// Prime `k` first tries the word-code family: a maximum comma-free word
/// code in both directions and an obligation word with `⌊√k⌋` free rows.
/// When that family is too small and `k ≤ 4`, a seeded greedy search over
/// all binary pictures takes over, trying seeds in increasing order.
pub fn default_code(k: usize, needed: usize, budget: u64) -> Result<PictureCode, CodeError> {
    let mut available = 0usize;
    if is_prime(k as u64) {
        let spec = word_family(k, budget)?;
        let size = family_count(&spec);
        if size >= needed as u128 {
            return Ok(generate_picture_code(&spec, budget as u128)?.code);
        }
        available = size as usize;
    }
    if k <= GREEDY_MAX_K {
        let bits = Alphabet::new("bits", ["0", "1"])?;
        for seed in 0..GREEDY_SEEDS {
            let x = search_comma_free_picture_code(&bits, k, needed, seed)?;
            if x.len() >= needed {
                return Ok(x);
            }
            available = available.max(x.len());
        }
    }
    Err(CodeError::Insufficient { needed, available })
}

/// Greedy code search enumerates all `2^{k²}` pictures, so it stops at 4.
const GREEDY_MAX_K: usize = 4;
const GREEDY_SEEDS: u64 = 64;

fn word_family(k: usize, budget: u64) -> Result<CodeFamilySpec, CodeError> {
    let nu = crate::codes::eastman_count(k as u32)? as usize;
    let y = match find_comma_free_word_code(k, nu, budget)? {
        WordCodeSearch::Found(y) => y,
        WordCodeSearch::Unknown { nodes } => {
            return Err(CodeError::Budget { budget, required: nodes as u128, what: "word-code search nodes" })
        }
    };
    let q = ((k as f64).sqrt() as usize).max(1);
    let w = if 2 * q < k { make_obligation_word(k, q)? } else { ObligationWord::new(vec![true; k])? };
    CodeFamilySpec::new(y.clone(), y, w)
}

/// Runs the whole pipeline on a 2-tiling system.
pub fn reduce_alphabet(s: &TilingSystem, opts: &ReductionOptions) -> Result<ReductionArtifacts, ReduceError> {
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut tick = |stage: Stage, timings: &mut Vec<(Stage, Duration)>| {
        timings.push((stage, clock.elapsed()));
        clock = Instant::now();
    };
    let k = match (opts.k, &opts.code) {
        (Some(k), _) => k,
        (None, Some(x)) => x.k(),
        (None, None) => {
            let g = s.local().len() as u64;
            choose_k(g.saturating_pow(4)).at(Stage::CodeX)? as usize
        }
    };
    let padded = padded_system(s, k).at(Stage::Pad)?;
    tick(Stage::Pad, &mut timings);
    let b = frame_alphabet(s, &padded, k, opts.frames, opts.budget).at(Stage::Frames)?;
    tick(Stage::Frames, &mut timings);
    let x = match &opts.code {
        Some(x) => {
            if x.k() != k {
                return Err(ReduceError::Domain(format!("code size {} differs from k = {k}", x.k()))).at(Stage::CodeX);
            }
            if !is_comma_free_picture_code(x) {
                return Err(ReduceError::Domain("the given code is not comma-free".into())).at(Stage::CodeX);
            }
            x.clone()
        }
        None => default_code(k, b.frames().len(), opts.budget).at(Stage::CodeX)?,
    };
    tick(Stage::CodeX, &mut timings);
    let m2 = frame_tileset(&b, padded.tileset()).at(Stage::FrameTiles)?;
    tick(Stage::FrameTiles, &mut timings);
    let z = build_code_z(&b, padded.terminal(), &x).at(Stage::CodeZ)?;
    tick(Stage::CodeZ, &mut timings);
    let m2k = encoded_local_tileset(&m2, &z, opts.tile_budget).at(Stage::Encode)?;
    tick(Stage::Encode, &mut timings);
    let pad = pad_letters(x.alphabet(), &dollar());
    let m = eliminate_padding(&m2k, &pad).at(Stage::Eliminate)?;
    let projection: BTreeMap<Symbol, Symbol> = x
        .alphabet()
        .iter()
        .flat_map(|bit| s.terminal().iter().map(move |a| (Symbol::pair(bit, a), a.clone())))
        .collect();
    let final_system = TilingSystem::new(s.terminal().clone(), m, projection).at(Stage::Eliminate)?;
    tick(Stage::Eliminate, &mut timings);
    let ratio = alphabetic_ratio(&final_system);
    if ratio != Ratio::from_integer(2) {
        return Err(ReduceError::Domain(format!("alphabetic ratio is {ratio}, not 2"))).at(Stage::Eliminate);
    }
    Ok(ReductionArtifacts {
        k,
        source: s.clone(),
        padded_system: padded,
        frame_alphabet: b,
        frame_tiles: m2,
        code_x: x,
        code_z: z,
        encoded_tiles: m2k,
        final_system,
        timings,
    })
}

/// Outcome of building an explicit pre-image in the reduced system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A picture over `Θ` in the local language that projects to the input.
    Found(Picture),
    /// The source system rejects the picture.
    NotInSource,
    /// The source pre-image search ran out of budget.
    Exhausted,
}

/// Builds a pre-image of `p` in the reduced system from a pre-image in the
/// source system, and checks it against the final tile set.
pub fn explicit_preimage(art: &ReductionArtifacts, p: &Picture, budget: u64) -> Result<Witness, ReduceError> {
    let q = match preimage_search(p, &art.source, budget)? {
        Preimage::Found(q) => q,
        Preimage::Absent => return Ok(Witness::NotInSource),
        Preimage::Exhausted => return Ok(Witness::Exhausted),
    };
    let k = art.k;
    let padded = pad_local_picture(&q, k)?;
    let (br, bc) = (padded.rows() / k, padded.cols() / k);
    let mut names = Vec::with_capacity(br * bc);
    for a in 1..=br {
        for c in 1..=bc {
            let x = block_symbol(&padded, k, a, c, &art.padded_system)?;
            let name = art.frame_alphabet.name_of(&x).ok_or_else(|| {
                ReduceError::Domain(format!("block ({a},{c}) is missing from the frame alphabet: {x}"))
            })?;
            names.push(name.clone());
        }
    }
    let over_b = Picture::new(br, bc, names)?;
    let encoded = art.code_z.encode(&over_b)?;
    let w = encoded.subpicture(1, 1, p.rows(), p.cols())?;
    if !slt_member(&w, art.final_system.tileset())? {
        return Err(ReduceError::Domain("constructed pre-image is rejected by the final tile set".into()));
    }
    if &art.final_system.project(&w)? != p {
        return Err(ReduceError::Domain("constructed pre-image projects to another picture".into()));
    }
    Ok(Witness::Found(w))
}

#[cfg(test)]
pub(crate) mod tests {
    use std::collections::BTreeSet;
    use std::sync::OnceLock;

    use super::*;
    use crate::lang::tests::{ex1_k2, r3, sym};
    use crate::lang::{enumerate_language, enumerate_sizes, ts_member, DEFAULT_BUDGET};
    use proptest::prelude::*;

    /// Realized frames of source pictures up to this size.
    pub const FRAME_BOUNDS: FrameSource = FrameSource::Realized { max_rows: 12, max_cols: 21 };

    pub fn greedy_x3() -> PictureCode {
        let bits = Alphabet::new("bits", ["0", "1"]).unwrap();
        search_comma_free_picture_code(&bits, 3, 38, 10).unwrap()
    }

    pub fn ex1_reduced() -> &'static ReductionArtifacts {
        static ART: OnceLock<ReductionArtifacts> = OnceLock::new();
        ART.get_or_init(|| {
            let opts =
                ReductionOptions { k: Some(3), code: Some(greedy_x3()), frames: FRAME_BOUNDS, ..Default::default() };
            reduce_alphabet(&ex1_k2(), &opts).unwrap()
        })
    }

    #[test]
    fn pipeline_sizes() {
        let art = ex1_reduced();
        assert_eq!(art.k, 3);
        assert_eq!(art.padded_system.local().len(), 7);
        assert_eq!(art.frame_alphabet.len(), 20);
        assert_eq!(art.frame_alphabet.frames().len(), 20);
        assert_eq!(art.frame_tiles.len(), 248);
        assert_eq!(art.encoded_tiles.len(), 2578);
        assert_eq!(art.final_system.tileset().len(), 2079);
        assert_eq!(art.final_system.local().len(), 2 * art.final_system.terminal().len());
        assert_eq!(art.ratio(), Ratio::from_integer(2));
        assert_eq!(art.ratio_text(), "2/1");
        assert!(is_comma_free_picture_code(&art.code_z));
        assert_eq!(art.code_z.len(), art.frame_alphabet.len());
    }

    #[test]
    fn local_frames_outnumber_the_small_codes() {
        let s = ex1_k2();
        let p = padded_system(&s, 3).unwrap();
        let local = frame_alphabet(&s, &p, 3, FrameSource::Local, DEFAULT_BUDGET).unwrap();
        assert_eq!(local.frames().len(), 538);
        let realized = &ex1_reduced().frame_alphabet;
        assert!(realized.symbols().iter().all(|x| local.name_of(x).is_some()));
        let opts = ReductionOptions { k: Some(3), code: Some(greedy_x3()), ..Default::default() };
        let err = reduce_alphabet(&s, &opts).unwrap_err();
        assert!(matches!(
            err,
            ReduceError::Stage { stage: Stage::CodeZ, ref source }
                if **source == ReduceError::Code(CodeError::Insufficient { needed: 538, available: 38 })
        ));
    }

    #[test]
    fn blocks_of_a_padded_picture() {
        let art = ex1_reduced();
        let q = pad_local_picture(&r3(6), 3).unwrap();
        let mut faces = BTreeMap::new();
        for a in 1..=3 {
            for b in 1..=5 {
                let x = block_symbol(&q, 3, a, b, &art.padded_system).unwrap();
                assert!(art.frame_alphabet.name_of(&x).is_some());
                *faces.entry(x.face.cells().to_vec()).or_insert(0) += 1;
            }
        }
        assert_eq!(faces[&vec![sym("a"); 9]], 8);
        assert_eq!(faces[&vec![dollar(); 9]], 7);
    }

    /// Faces of every frame-tile picture up to the block bounds against the
    /// padded language enumerated directly.
    fn frame_faces_oracle(frames: FrameSource) {
        let s = ex1_k2();
        let p = padded_system(&s, 3).unwrap();
        let b = frame_alphabet(&s, &p, 3, frames, DEFAULT_BUDGET).unwrap();
        let m2 = frame_tileset(&b, p.tileset()).unwrap();
        let sizes: Vec<(usize, usize)> = (1..=3).flat_map(|r| (1..=5).map(move |c| (r, c))).collect();
        let faces: BTreeSet<Picture> =
            enumerate_sizes(&m2, &sizes, DEFAULT_BUDGET).unwrap().iter().map(|q| b.faces(q).unwrap()).collect();
        let padded = enumerate_language(&p, 9, 15, DEFAULT_BUDGET).unwrap();
        assert_eq!(faces, padded);
    }

    #[test]
    fn frame_tiles_recognize_the_padded_language_realized() {
        frame_faces_oracle(FRAME_BOUNDS);
    }

    #[test]
    fn frame_tiles_recognize_the_padded_language_local() {
        frame_faces_oracle(FrameSource::Local);
    }

    #[test]
    fn final_language_within_bounds() {
        let art = ex1_reduced();
        let a = sym("a");
        for m in 5..=8 {
            for n in 5..=16 {
                let r = ts_member(&Picture::uniform(m, n, &a), &art.final_system, 1 << 24).unwrap();
                assert_eq!(r.is_yes(), n == 2 * m, "{m}x{n}: {}", r.label());
            }
        }
        // Below 2k-1 rows the cropped blocks lose their frame context.
        let r = ts_member(&Picture::uniform(3, 6, &a), &art.final_system, 1 << 24).unwrap();
        assert_eq!(r, crate::lang::Membership::No);
    }

    #[test]
    fn default_code_falls_back_to_greedy() {
        let x = default_code(3, 20, DEFAULT_CODE_BUDGET).unwrap();
        assert!(x.len() >= 20);
        assert!(is_comma_free_picture_code(&x));
        let y = default_code(5, 100, DEFAULT_CODE_BUDGET).unwrap();
        assert!(y.len() >= 100);
        assert!(matches!(
            default_code(3, 1000, DEFAULT_CODE_BUDGET),
            Err(CodeError::Insufficient { needed: 1000, .. })
        ));
        let opts = ReductionOptions { k: Some(3), frames: FRAME_BOUNDS, ..Default::default() };
        assert_eq!(reduce_alphabet(&ex1_k2(), &opts).unwrap().ratio(), Ratio::from_integer(2));
    }

    #[test]
    fn stage_errors_name_the_stage() {
        let opts = ReductionOptions { k: Some(1), ..Default::default() };
        let err = reduce_alphabet(&ex1_k2(), &opts).unwrap_err();
        assert!(err.to_string().starts_with("stage pad:"), "{err}");
        let opts = ReductionOptions {
            k: Some(3),
            code: Some(greedy_x3()),
            frames: FrameSource::Local,
            budget: 10,
            ..Default::default()
        };
        assert!(reduce_alphabet(&ex1_k2(), &opts).unwrap_err().is_budget());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn witnesses_are_accepted(m in 5usize..12) {
            let art = ex1_reduced();
            let p = Picture::uniform(m, 2 * m, &sym("a"));
            match explicit_preimage(art, &p, DEFAULT_BUDGET).unwrap() {
                Witness::Found(w) => {
                    prop_assert!(slt_member(&w, art.final_system.tileset()).unwrap());
                    prop_assert_eq!(art.final_system.project(&w).unwrap(), p);
                }
                other => prop_assert!(false, "{:?}", other),
            }
            let q = Picture::uniform(m, 2 * m + 1, &sym("a"));
            prop_assert_eq!(explicit_preimage(art, &q, DEFAULT_BUDGET).unwrap(), Witness::NotInSource);
        }

        #[test]
        fn composed_codes_stay_comma_free(seed in 0u64..200, take in 20usize..=38) {
            let bits = Alphabet::new("bits", ["0", "1"]).unwrap();
            let x = search_comma_free_picture_code(&bits, 3, take, seed).unwrap();
            let art = ex1_reduced();
            match build_code_z(&art.frame_alphabet, art.padded_system.terminal(), &x) {
                Ok(z) => {
                    prop_assert!(is_comma_free_picture_code(&z));
                    prop_assert_eq!(z.len(), art.frame_alphabet.len());
                }
                Err(e) => {
                    let insufficient = matches!(e, ReduceError::Code(CodeError::Insufficient { .. }));
                    prop_assert!(x.len() < 20 && insufficient);
                }
            }
        }
    }
}
