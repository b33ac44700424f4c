//! Word corpora for the sparse and dictionary workloads.
//!
//! The default corpus is generated from a seeded linear congruential
//! generator so runs are reproducible anywhere; an external word file can
//! substitute a real dictionary. Generated lengths are uniform over 1..=18,
//! giving a mean near 9.5 characters; report headers state this because a
//! natural-language corpus trends shorter.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

/// 64-bit linear congruential generator. The draw is the state after
/// advancing.
pub struct Lcg {
    state: u64,
}

impl Lcg {
    const MULTIPLIER: u64 = 6364136223846793005;
    const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn draw(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        self.state
    }
}

/// `count` distinct lowercase words, deterministic in `seed`. Length is
/// 1 + (draw mod 18); each character is an independent draw mod 26.
/// Duplicates are discarded and regenerated.
pub fn gen_words(seed: u64, count: usize) -> Vec<String> {
    let mut lcg = Lcg::new(seed);
    let mut seen = HashSet::with_capacity(count);
    let mut words = Vec::with_capacity(count);
    while words.len() < count {
        let len = 1 + (lcg.draw() % 18) as usize;
        let word: String = (0..len)
            .map(|_| (b'a' + (lcg.draw() % 26) as u8) as char)
            .collect();
        if seen.insert(word.clone()) {
            words.push(word);
        }
    }
    words
}

/// Reads one word per line. The whole file is rejected on the first word
/// that is empty, longer than 18 bytes, non-ASCII, or a duplicate; the
/// workloads require a distinct corpus and silently repairing a file would
/// hide the problem.
pub fn load_words(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading word file {}", path.display()))?;
    let mut seen = HashSet::new();
    let mut words = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.is_empty() {
            bail!("{}:{line_no}: empty word", path.display());
        }
        if line.len() > 18 {
            bail!(
                "{}:{line_no}: word of length {} exceeds 18",
                path.display(),
                line.len()
            );
        }
        if !line.is_ascii() {
            bail!("{}:{line_no}: word is not ASCII", path.display());
        }
        if !seen.insert(line.to_string()) {
            bail!("{}:{line_no}: duplicate word `{line}`", path.display());
        }
        words.push(line.to_string());
    }
    if words.is_empty() {
        bail!("{}: no words", path.display());
    }
    Ok(words)
}
