//! Acceptance criteria, one report line each.
//!
//! Every criterion prints `PASS` or `FAIL` with its measured value and the
//! pinned tolerance; the test fails if any line fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use tilecode::cli::format::{parse_code, parse_picture, parse_system, write_code, write_picture, write_system};
use tilecode::codes::{
    closure_tileset, encoded_local_tileset, find_comma_free_word_code, generate_picture_code,
    is_comma_free_brute_force, is_comma_free_picture_code, is_obligation_word, make_obligation_word, CodeError,
    CodeFamilySpec, ObligationWord, PictureCode, WordCode, WordCodeSearch, DEFAULT_TILE_BUDGET,
};
use tilecode::grid::{Alphabet, Picture, Symbol};
use tilecode::lang::{
    compare_languages, count_language, enumerate_language, enumerate_sizes, slt_to_local, tileset_from_pictures,
    ts_member, BlockMonitor, Membership, TileSet, TilingSystem, DEFAULT_BUDGET,
};
use tilecode::reduce::{
    explicit_preimage, frame_alphabet, frame_tileset, pad_picture, padded_system, reduce_alphabet, FrameSource,
    ReductionOptions, Witness,
};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn system(name: &str) -> TilingSystem {
    parse_system(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn code(name: &str) -> PictureCode {
    parse_code(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn sym(t: &str) -> Symbol {
    Symbol::new(t).unwrap()
}

fn a(m: usize, n: usize) -> Picture {
    Picture::uniform(m, n, &sym("a"))
}

fn bits() -> Alphabet {
    Alphabet::new("bits", ["0", "1"]).unwrap()
}

struct Report {
    failed: Vec<u32>,
}

impl Report {
    /// Runs one criterion; `body` returns whether it held and what was measured.
    fn check<F: FnOnce() -> Result<(bool, String), String>>(&mut self, id: u32, limit: Duration, body: F) {
        let start = Instant::now();
        let outcome = body();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok((ok, detail)) => (ok && took <= limit, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("AC{id:<2} {verdict} {detail} [{:.2}s, limit {}s]", took.as_secs_f64(), limit.as_secs());
        if !ok {
            self.failed.push(id);
        }
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn x3_spec() -> CodeFamilySpec {
    CodeFamilySpec::new(
        WordCode::binary(&["110", "100"]).unwrap(),
        WordCode::binary(&["011"]).unwrap(),
        ObligationWord::parse("ftt").unwrap(),
    )
    .unwrap()
}

fn x5_spec() -> CodeFamilySpec {
    let y = WordCode::binary(&["00111", "00001", "10001"]).unwrap();
    CodeFamilySpec::new(y.clone(), y, ObligationWord::parse("ftftt").unwrap()).unwrap()
}

fn ac1() -> Result<(bool, String), String> {
    let n3 = generate_picture_code(&x3_spec(), 1 << 20).map_err(|e| e.to_string())?.code.len();
    let n5 = generate_picture_code(&x5_spec(), 1 << 20).map_err(|e| e.to_string())?.code.len();
    Ok((n3 == 16 && n5 == 2560, format!("code counts {n3} and {n5} (expected 16 and 2560 exactly)")))
}

fn ac2() -> Result<(bool, String), String> {
    let x3 = code("x3.code");
    let x5 = code("x5.code");
    let single = PictureCode::new(4, bits(), vec![Picture::parse_rows("1 0 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0").unwrap()])
        .map_err(|e| e.to_string())?;
    let brute3 = is_comma_free_brute_force(&x3, 1 << 20).map_err(|e| e.to_string())?;
    let brute1 = is_comma_free_brute_force(&single, 16).map_err(|e| e.to_string())?;
    let fast = [&x3, &x5, &single].iter().all(|x| is_comma_free_picture_code(x));
    Ok((
        brute3 && brute1 && fast,
        format!("X3 exhaustive {brute3}, 4x4 singleton exhaustive {brute1}, corner check on X3/X5/singleton {fast}"),
    ))
}

fn ac3() -> Result<(bool, String), String> {
    let size = |k: usize, t: usize| match find_comma_free_word_code(k, t, 10_000_000) {
        Ok(WordCodeSearch::Found(y)) => Some(y.len()),
        _ => None,
    };
    let s5 = size(5, 6);
    let s7 = size(7, 18);
    let infeasible = matches!(find_comma_free_word_code(5, 7, 10_000_000), Err(CodeError::Infeasible { .. }));
    Ok((
        s5 == Some(6) && s7 == Some(18) && infeasible,
        format!("found {s5:?} at k=5, {s7:?} at k=7; size 7 at k=5 infeasible: {infeasible}"),
    ))
}

fn ac4() -> Result<(bool, String), String> {
    let stated = is_obligation_word("ftftt") && !is_obligation_word("tffff");
    let mut made = 0;
    let mut all = true;
    for k in 2..=17usize {
        let r = (k as f64).sqrt() as usize;
        for q in 1..=r {
            if 2 * q >= k {
                continue;
            }
            let w = make_obligation_word(k, q).map_err(|e| e.to_string())?;
            all &= is_obligation_word(&w.to_string());
            made += 1;
        }
    }
    Ok((stated && all, format!("stated examples {stated}; {made} constructed words all pass: {all}")))
}

fn ac5() -> Result<(bool, String), String> {
    let p = pad_picture(&a(6, 12), 3).map_err(|e| e.to_string())?;
    let q = pad_picture(&a(7, 14), 3).map_err(|e| e.to_string())?;
    let d = sym("$");
    let ok6 = p.size() == (9, 15)
        && p.subpicture(7, 1, 9, 15).unwrap() == Picture::uniform(3, 15, &d)
        && p.subpicture(1, 13, 9, 15).unwrap() == Picture::uniform(9, 3, &d);
    let ok7 = q.size() == (9, 15)
        && q.subpicture(8, 1, 9, 15).unwrap() == Picture::uniform(2, 15, &d)
        && q.subpicture(1, 15, 9, 15).unwrap() == Picture::uniform(9, 1, &d)
        && q.subpicture(1, 1, 7, 14).unwrap() == a(7, 14);
    Ok((
        ok6 && ok7,
        format!("6x12 -> {:?} with 3+3 lines: {ok6}; 7x14 -> {:?} with thickness (2,1): {ok7}", p.size(), q.size()),
    ))
}

fn ac6() -> Result<(bool, String), String> {
    let s = system("ex1.ts");
    let p = padded_system(&s, 3).map_err(|e| e.to_string())?;
    let got = enumerate_language(&p, 9, 15, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let want: BTreeSet<Picture> = enumerate_language(&s, 8, 14, DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|q| pad_picture(q, 3).unwrap())
        .filter(|q| q.rows() <= 9 && q.cols() <= 15)
        .collect();
    let g = p.local().len();
    Ok((
        g == 7 && got == want,
        format!("|Gamma| = {g} (expected 7); padded language {} pictures, equal: {}", got.len(), got == want),
    ))
}

fn ac7() -> Result<(bool, String), String> {
    let s3 = system("ex1-k3.ts");
    let s2 = slt_to_local(&s3).map_err(|e| e.to_string())?;
    let cmp = compare_languages(&s3, &s2, 5, 10, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let bound = s3.local().len() * s3.tileset().len();
    let g = s2.local().len();
    Ok((
        s2.k() == 2 && cmp.equal() && g <= bound,
        format!("2-TS equal at (5,10): {}; local alphabet {g} <= {bound}", cmp.equal()),
    ))
}

fn ac8() -> Result<(bool, String), String> {
    let x3 = code("x3.code");
    let t = closure_tileset(&x3, DEFAULT_TILE_BUDGET).map_err(|e| e.to_string())?;
    let monitor = BlockMonitor { k: 3, blocks: x3.pictures().iter().cloned().collect() };
    let counts = count_language(&t, 9, 9, Some(&monitor)).map_err(|e| e.to_string())?;
    let closure_ok = counts.iter().all(|c| {
        let want =
            if c.rows % 3 == 0 && c.cols % 3 == 0 { 16u128.pow(((c.rows / 3) * (c.cols / 3)) as u32) } else { 0 };
        c.total == want && c.good == want
    });
    // Two local symbols on a checkerboard, coded by the first two pictures of X3.
    let uv = Alphabet::new("uv", ["u", "v"]).unwrap();
    let board = Picture::parse_rows("u v u\nv u v\nu v u").unwrap();
    let t2 = tileset_from_pictures([&board], 2, &uv).map_err(|e| e.to_string())?;
    let sub = PictureCode::new(3, bits(), x3.pictures()[..2].to_vec())
        .and_then(|c| c.assign_coding(&uv))
        .map_err(|e| e.to_string())?;
    let m = encoded_local_tileset(&t2, &sub, DEFAULT_TILE_BUDGET).map_err(|e| e.to_string())?;
    let got = enumerate_language(&m, 9, 9, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let want: BTreeSet<Picture> = enumerate_language(&t2, 3, 3, DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|q| sub.encode(q).unwrap())
        .collect();
    Ok((
        closure_ok && got == want,
        format!(
            "closure tiles {}: counts equal 16^(rc) on multiples of 3 and 0 elsewhere: {closure_ok}; encoded language {} pictures, equal: {}",
            t.len(),
            got.len(),
            got == want
        ),
    ))
}

fn ac9() -> Result<(bool, String), String> {
    let s = system("ex1.ts");
    let p = padded_system(&s, 3).map_err(|e| e.to_string())?;
    let b = frame_alphabet(&s, &p, 3, FrameSource::Local, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let m2 = frame_tileset(&b, p.tileset()).map_err(|e| e.to_string())?;
    let sizes: Vec<(usize, usize)> = (1..=3).flat_map(|r| (1..=5).map(move |c| (r, c))).collect();
    let faces: BTreeSet<Picture> = enumerate_sizes(&m2, &sizes, DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|q| b.faces(q).unwrap())
        .collect();
    let padded = enumerate_language(&p, 9, 15, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    Ok((
        faces == padded,
        format!(
            "{} frame symbols, {} frame tiles; faces of L(M2) equal the padded language ({} pictures): {}",
            b.len(),
            m2.len(),
            padded.len(),
            faces == padded
        ),
    ))
}

fn ac10() -> Result<(bool, String), String> {
    let s = system("ex1.ts");
    let opts = ReductionOptions {
        k: Some(3),
        frames: FrameSource::Realized { max_rows: 12, max_cols: 21 },
        ..Default::default()
    };
    let art = reduce_alphabet(&s, &opts).map_err(|e| e.to_string())?;
    let theta = art.final_system.local().len();
    let ratio_ok = art.ratio_text() == "2/1" && theta == 2 * s.terminal().len() && theta == 2;
    let mut positives = 0;
    for m in 5..=8 {
        match explicit_preimage(&art, &a(m, 2 * m), DEFAULT_BUDGET).map_err(|e| e.to_string())? {
            Witness::Found(_) => positives += 1,
            other => return Ok((false, format!("no witness for a^({m},{}): {other:?}", 2 * m))),
        }
    }
    let negatives = [(5, 9), (5, 11), (6, 11), (6, 13), (7, 13)];
    let mut rejected = 0;
    for (m, n) in negatives {
        match ts_member(&a(m, n), &art.final_system, 100_000_000).map_err(|e| e.to_string())? {
            Membership::No => rejected += 1,
            Membership::Unknown => return Ok((false, format!("budget exhausted on a^({m},{n})"))),
            Membership::Yes(_) => return Ok((false, format!("a^({m},{n}) wrongly accepted"))),
        }
    }
    Ok((
        ratio_ok && positives == 4 && rejected == negatives.len(),
        format!(
            "k=3, |X|={}, |Q|={}, ratio {} with |Theta|={theta}; witnesses {positives}/4; rejected {rejected}/{}",
            art.code_x.len(),
            art.frame_alphabet.frames().len(),
            art.ratio_text(),
            negatives.len()
        ),
    ))
}

fn sized(alphabet: &'static [&'static str], m: usize, n: usize) -> impl Strategy<Value = Picture> {
    proptest::collection::vec(proptest::sample::select(alphabet), m * n)
        .prop_map(move |v| Picture::new(m, n, v.iter().map(|t| sym(t)).collect()).unwrap())
}

fn arb_picture(alphabet: &'static [&'static str], max: usize) -> impl Strategy<Value = Picture> {
    (1..=max, 1..=max).prop_flat_map(move |(m, n)| sized(alphabet, m, n))
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: 128, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn ac11() -> Result<(bool, String), String> {
    const AB: &[&str] = &["a", "b"];
    let x3 = code("x3.code");
    let coded = x3.clone().assign_coding(&Alphabet::new("ab", AB.iter().copied()).unwrap()).unwrap();
    let mut passed = Vec::new();
    let triples = (1usize..5, 1usize..5, 1usize..5, 1usize..5)
        .prop_flat_map(|(m, n1, n2, n3)| (sized(AB, m, n1), sized(AB, m, n2), sized(AB, m, n3)));
    run_property("concatenation associativity", triples, |(p, q, s)| {
        prop_assert_eq!(p.concat_h(&q)?.concat_h(&s)?, p.concat_h(&q.concat_h(&s)?)?);
        let (pt, qt, st) = (p.transpose(), q.transpose(), s.transpose());
        prop_assert_eq!(pt.concat_v(&qt)?.concat_v(&st)?, pt.concat_v(&qt.concat_v(&st)?)?);
        Ok(())
    })?;
    passed.push("associativity");
    run_property("tessellation", (1usize..4, 1usize..4, 2usize..4, any::<u64>()), |(r, c, k, seed)| {
        let cells = (0..r * c * k * k).map(|i| sym(if (seed >> (i % 64)) & 1 == 1 { "a" } else { "b" })).collect();
        let p = Picture::new(r * k, c * k, cells)?;
        prop_assert_eq!(p.tessellate(k)?.reassemble(), p);
        Ok(())
    })?;
    passed.push("tessellate/reassemble");
    run_property("merge and projection", (arb_picture(AB, 5), any::<u64>()), |(p, seed)| {
        let q =
            p.map_cells(|s| Some(sym(if (seed as usize + s.as_str().len()).is_multiple_of(2) { "0" } else { "1" })))?;
        let m = p.merge(&q)?;
        let first: BTreeMap<Symbol, Symbol> =
            ["0", "1"].iter().flat_map(|b| AB.iter().map(move |x| (Symbol::pair(&sym(x), &sym(b)), sym(x)))).collect();
        let second: BTreeMap<Symbol, Symbol> =
            ["0", "1"].iter().flat_map(|b| AB.iter().map(move |x| (Symbol::pair(&sym(x), &sym(b)), sym(b)))).collect();
        prop_assert_eq!(m.project(&first)?, p);
        prop_assert_eq!(m.project(&second)?, q);
        Ok(())
    })?;
    passed.push("merge/projection");
    let blocks = (1usize..4, 1usize..4, 1usize..4, 1usize..4)
        .prop_flat_map(|(m, n, n2, m2)| (sized(AB, m, n), sized(AB, m, n2), sized(AB, m2, n)));
    run_property("encoding morphism", blocks, |(p, q, r)| {
        let enc = |x: &Picture| coded.encode(x).unwrap();
        prop_assert_eq!(enc(&p.concat_h(&q)?), enc(&p).concat_h(&enc(&q))?);
        prop_assert_eq!(enc(&p.concat_v(&r)?), enc(&p).concat_v(&enc(&r))?);
        prop_assert_eq!(coded.decode(&enc(&p)).unwrap(), Some(p));
        Ok(())
    })?;
    passed.push("encoding morphism");
    run_property("unique tessellation", arb_picture(AB, 3), |p| {
        // A comma-free code occurs only at aligned positions of an encoded picture.
        let e = coded.encode(&p).unwrap();
        for i in 0..=e.rows() - 3 {
            for j in 0..=e.cols() - 3 {
                let w = e.subpicture(i + 1, j + 1, i + 3, j + 3)?;
                if x3.contains(&w) {
                    prop_assert!(i % 3 == 0 && j % 3 == 0, "misaligned occurrence at ({}, {})", i, j);
                }
            }
        }
        Ok(())
    })?;
    passed.push("unique tessellation");
    run_property(
        "format round trips",
        (arb_picture(&["a", "(0,$)", "♭"], 5), proptest::sample::subsequence(x3.pictures().to_vec(), 1..16)),
        |(p, pics)| {
            prop_assert_eq!(parse_picture(&write_picture(&p), false).unwrap(), p.clone());
            let x = PictureCode::new(3, bits(), pics).unwrap();
            let text = write_code(&x);
            prop_assert_eq!(write_code(&parse_code(&text).unwrap()), text);
            let t = TileSet::new(2, Alphabet::new("g", ["a", "(0,$)", "♭"]).unwrap(), p.thick_bordered(2)?.k_tiles(2))
                .unwrap();
            let s = TilingSystem::identity(t);
            let text = write_system(&s);
            prop_assert_eq!(write_system(&parse_system(&text).unwrap()), text);
            Ok(())
        },
    )?;
    passed.push("format round trips");
    Ok((passed.len() == 6, format!("128 cases each: {}", passed.join(", "))))
}

#[test]
fn acceptance() {
    let mut r = Report { failed: Vec::new() };
    r.check(1, secs(1), ac1);
    r.check(2, secs(30), ac2);
    r.check(3, secs(10), ac3);
    r.check(4, secs(1), ac4);
    r.check(5, secs(1), ac5);
    r.check(6, secs(30), ac6);
    r.check(7, secs(30), ac7);
    r.check(8, secs(120), ac8);
    r.check(9, secs(120), ac9);
    r.check(10, secs(120), ac10);
    r.check(11, secs(60), ac11);
    assert!(r.failed.is_empty(), "failed criteria: {:?}", r.failed);
}

#[test]
fn fixture_languages() {
    let squares = enumerate_language(&system("squares.ts"), 5, 5, DEFAULT_BUDGET).unwrap();
    assert_eq!(squares, (2..=5).map(|m| a(m, m)).collect());
    let bc = enumerate_language(&system("squares-bc.ts"), 4, 4, DEFAULT_BUDGET).unwrap();
    let want: BTreeSet<Picture> =
        ["b", "c"].iter().flat_map(|x| (2..=4).map(move |m| Picture::uniform(m, m, &sym(x)))).collect();
    assert_eq!(bc, want);
    let words = enumerate_language(&system("word-l3.ts"), 2, 9, DEFAULT_BUDGET).unwrap();
    let want: BTreeSet<Picture> = (1..=3).map(|r| Picture::parse_rows(&vec!["a a b"; r].join(" ")).unwrap()).collect();
    assert_eq!(words, want);
    let greedy = code("greedy-k3.code");
    assert_eq!(greedy.len(), 38);
    assert!(is_comma_free_picture_code(&greedy));
}
