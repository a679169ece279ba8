//! The code family built from two comma-free word codes and an obligation word.

use super::{is_comma_free_word_code, CodeError, ObligationWord, PictureCode, WordCode};
use crate::grid::{Picture, Symbol};

/// Column 1 from `y_vert`; every obliged row from `y_hor`; other cells free.
#[derive(Clone, Debug)]
pub struct CodeFamilySpec {
    k: usize,
    y_hor: WordCode,
    y_vert: WordCode,
    obligation: ObligationWord,
}

impl CodeFamilySpec {
    pub fn new(y_hor: WordCode, y_vert: WordCode, obligation: ObligationWord) -> Result<CodeFamilySpec, CodeError> {
        let k = obligation.len();
        if k < 3 {
            return Err(CodeError::Domain(format!("size {k} is below 3")));
        }
        for (name, y) in [("horizontal", &y_hor), ("vertical", &y_vert)] {
            if y.k() != k {
                return Err(CodeError::Domain(format!("{name} code has length {}, expected {k}", y.k())));
            }
            if !is_comma_free_word_code(y) {
                return Err(CodeError::Domain(format!("{name} code is not comma-free")));
            }
        }
        if y_hor.alphabet() != y_vert.alphabet() {
            return Err(CodeError::Domain("horizontal and vertical codes use different alphabets".into()));
        }
        Ok(CodeFamilySpec { k, y_hor, y_vert, obligation })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn y_hor(&self) -> &WordCode {
        &self.y_hor
    }

    pub fn y_vert(&self) -> &WordCode {
        &self.y_vert
    }

    pub fn obligation(&self) -> &ObligationWord {
        &self.obligation
    }

    fn rows_starting_with<'a>(&'a self, s: &'a Symbol) -> impl Iterator<Item = &'a Vec<Symbol>> + 'a {
        self.y_hor.words().filter(move |w| &w[0] == s)
    }
}

/// A generated code with notes on constraints that removed every picture.
#[derive(Clone, Debug)]
pub struct GeneratedCode {
    pub code: PictureCode,
    pub diagnostics: Vec<String>,
}

/// Closed-form size of the generated code.
pub fn family_count(spec: &CodeFamilySpec) -> u128 {
    let k = spec.k;
    let lambda = spec.y_hor.alphabet().len() as u128;
    let free_rows = spec.obligation.bits().iter().filter(|&&b| !b).count() as u32;
    let free = lambda.pow((k as u32 - 1) * free_rows);
    spec.y_vert
        .words()
        .map(|v| {
            spec.obligation
                .obliged()
                .iter()
                .map(|&i| spec.rows_starting_with(&v[i - 1]).count() as u128)
                .product::<u128>()
        })
        .sum::<u128>()
        * free
}

/// Enumerates the family member; fails with a budget error above `max_pictures`.
pub fn generate_picture_code(spec: &CodeFamilySpec, max_pictures: u128) -> Result<GeneratedCode, CodeError> {
    let required = family_count(spec);
    if required > max_pictures {
        return Err(CodeError::Budget { budget: max_pictures as u64, required, what: "code pictures" });
    }
    let k = spec.k;
    let lambda = spec.y_hor.alphabet().symbols();
    let mut pictures = Vec::with_capacity(required as usize);
    let mut diagnostics = Vec::new();
    for v in spec.y_vert.words() {
        // Candidate rows per row index: obliged rows from y_hor, free rows from Λ^{k-1}.
        let mut options: Vec<Vec<Vec<Symbol>>> = Vec::with_capacity(k);
        for (i, &obliged) in spec.obligation.bits().iter().enumerate() {
            let rows: Vec<Vec<Symbol>> =
                if obliged { spec.rows_starting_with(&v[i]).cloned().collect() } else { free_rows(&v[i], lambda, k) };
            if rows.is_empty() {
                let word: String = v.iter().map(Symbol::as_str).collect();
                diagnostics.push(format!("no horizontal word starts with {} for row {} of column {word}", v[i], i + 1));
            }
            options.push(rows);
        }
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        let mut idx = vec![0usize; k];
        loop {
            let cells = (0..k).flat_map(|i| options[i][idx[i]].iter().cloned()).collect();
            pictures.push(Picture::new(k, k, cells)?);
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < options[i].len() {
                    break;
                }
                idx[i] = 0;
            }
            if idx.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    let code = PictureCode::new(k, spec.y_hor.alphabet().clone(), pictures)?;
    Ok(GeneratedCode { code, diagnostics })
}

fn free_rows(first: &Symbol, lambda: &[Symbol], k: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![vec![first.clone()]];
    for _ in 1..k {
        out = out
            .into_iter()
            .flat_map(|r| lambda.iter().map(move |s| [r.as_slice(), std::slice::from_ref(s)].concat()))
            .collect();
    }
    out
}
