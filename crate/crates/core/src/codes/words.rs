//! Uniform word codes and obligation words.

use std::collections::BTreeSet;
use std::fmt;

use super::CodeError;
use crate::grid::{Alphabet, Symbol};

/// A set of words of one length `k` over an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordCode {
    k: usize,
    alphabet: Alphabet,
    words: BTreeSet<Vec<Symbol>>,
}

impl WordCode {
    pub fn new(alphabet: Alphabet, words: Vec<Vec<Symbol>>) -> Result<WordCode, CodeError> {
        let k = words.first().map(Vec::len).unwrap_or(0);
        let mut set = BTreeSet::new();
        for w in words {
            if w.len() != k || k == 0 {
                return Err(CodeError::Domain(format!("word of length {} in a length-{k} code", w.len())));
            }
            if let Some(s) = w.iter().find(|s| !alphabet.contains(s)) {
                return Err(CodeError::Domain(format!("symbol {s} outside the code alphabet")));
            }
            if !set.insert(w) {
                return Err(CodeError::Domain("duplicate code word".into()));
            }
        }
        Ok(WordCode { k, alphabet, words: set })
    }

    /// Words written as strings of one-character symbols, e.g. `"00111"`.
    pub fn from_strs<S: AsRef<str>>(alphabet: &Alphabet, words: &[S]) -> Result<WordCode, CodeError> {
        let parsed = words
            .iter()
            .map(|w| w.as_ref().chars().map(|c| Symbol::new(&c.to_string())).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        WordCode::new(alphabet.clone(), parsed)
    }

    /// A binary code over `{0, 1}`.
    pub fn binary<S: AsRef<str>>(words: &[S]) -> Result<WordCode, CodeError> {
        WordCode::from_strs(&binary_alphabet(), words)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &Vec<Symbol>> {
        self.words.iter()
    }

    pub fn contains(&self, w: &[Symbol]) -> bool {
        self.words.contains(w)
    }

    /// Words rendered by concatenating symbol tokens.
    pub fn strings(&self) -> Vec<String> {
        self.words.iter().map(|w| w.iter().map(Symbol::as_str).collect()).collect()
    }
}

pub(crate) fn binary_alphabet() -> Alphabet {
    Alphabet::new("bits", ["0", "1"]).expect("valid tokens")
}

/// No code word occurs at offsets `1..k` of a concatenation of two code words.
pub fn is_comma_free_word_code(y: &WordCode) -> bool {
    let k = y.k();
    let words: Vec<&Vec<Symbol>> = y.words().collect();
    for x in &words {
        for z in &words {
            let xz: Vec<&Symbol> = x.iter().chain(z.iter()).collect();
            for o in 1..k {
                let factor: Vec<Symbol> = xz[o..o + k].iter().map(|s| (*s).clone()).collect();
                if y.contains(&factor) {
                    return false;
                }
            }
        }
    }
    true
}

/// `(2^k - 2) / k`, the size of a maximum binary comma-free code for prime `k`.
pub fn eastman_count(k: u32) -> Result<u64, CodeError> {
    if !super::is_prime(k as u64) {
        return Err(CodeError::Domain(format!("{k} is not prime")));
    }
    if k >= 64 {
        return Err(CodeError::Domain(format!("length {k} is too large")));
    }
    Ok(((1u64 << k) - 2) / k as u64)
}

/// A `t/f` word meeting every circular rotation of itself on some `t`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ObligationWord {
    bits: Vec<bool>,
}

impl ObligationWord {
    pub fn new(bits: Vec<bool>) -> Result<ObligationWord, CodeError> {
        if !obligation_bits(&bits) {
            let w: String = bits.iter().map(|&b| if b { 't' } else { 'f' }).collect();
            return Err(CodeError::Domain(format!("{w:?} is not an obligation word")));
        }
        Ok(ObligationWord { bits })
    }

    pub fn parse(w: &str) -> Result<ObligationWord, CodeError> {
        ObligationWord::new(parse_tf(w)?)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// 1-based positions holding `t`.
    pub fn obliged(&self) -> Vec<usize> {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i + 1).collect()
    }
}

impl fmt::Display for ObligationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "t" } else { "f" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for ObligationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ObligationWord({self})")
    }
}

fn parse_tf(w: &str) -> Result<Vec<bool>, CodeError> {
    w.chars()
        .map(|c| match c {
            't' => Ok(true),
            'f' => Ok(false),
            _ => Err(CodeError::Domain(format!("{c:?} is not t or f"))),
        })
        .collect()
}

fn obligation_bits(bits: &[bool]) -> bool {
    let n = bits.len();
    n > 0 && (0..n).all(|r| (0..n).any(|i| bits[i] && bits[(i + r) % n]))
}

/// Whether `w` over `{t, f}` is an obligation word; false on other letters.
pub fn is_obligation_word(w: &str) -> bool {
    parse_tf(w).map(|b| obligation_bits(&b)).unwrap_or(false)
}

/// `t` exactly at `1..=q` and at the multiples of `q` above `q`.
pub fn make_obligation_word(k: usize, q: usize) -> Result<ObligationWord, CodeError> {
    if q < 1 || 2 * q >= k {
        return Err(CodeError::Domain(format!("q = {q} outside 1 <= q < {k}/2")));
    }
    let bits = (1..=k).map(|i| i <= q || i % q == 0).collect();
    ObligationWord::new(bits)
}
