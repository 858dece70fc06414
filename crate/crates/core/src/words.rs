//! Words over natural-number letters.
//!
//! A letter is any `u64`. Letters `1..` carry language content; letter `0`
//! is the padding letter used by advice strings, though binary test
//! languages such as `0^m 1^m` also use it as an ordinary input symbol.
//! Words are immutable values ordered by length first, then
//! lexicographically by letter value.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

pub type Letter = u64;

/// Builds a [`Word`] from a list of letters.
#[macro_export]
macro_rules! word {
    () => { $crate::words::Word::empty() };
    ($($l:expr),+ $(,)?) => { $crate::words::Word::new(vec![$($l as u64),+]) };
}

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn repeat(letter: Letter, n: usize) -> Self {
        Word(vec![letter; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    /// The factor covering `range` (0-based, end exclusive).
    pub fn factor(&self, range: Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn join<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        Word(parts.into_iter().flat_map(|w| w.0.iter().copied()).collect())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Parses comma-separated decimal letters, e.g. `1,2,6,3`. The empty
    /// string is the empty word.
    pub fn parse_csv(text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        text.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<Letter>()
                    .map_err(|_| LabError::Precondition(format!("bad letter `{}` in word", tok.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, letter) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("λ")
        } else {
            write!(f, "⟨{self}⟩")
        }
    }
}

/// Multiplies every letter by `c`.
pub fn scale(w: &Word, c: u64) -> Result<Word> {
    if c == 0 {
        return Err(LabError::ZeroScale);
    }
    if w.iter().any(|l| l == 0) {
        return Err(LabError::ReservedLetter);
    }
    w.iter()
        .map(|l| {
            l.checked_mul(c)
                .ok_or_else(|| LabError::Precondition(format!("letter {l} times {c} overflows")))
        })
        .collect()
}

pub fn reverse(w: &Word) -> Word {
    w.iter().rev().collect()
}

/// `w · (wᴿ)×3 · (w)×15 · (wᴿ)×5` for a nonempty `w` over `{1, 2}`.
pub fn nest_l2(w: &Word) -> Result<Word> {
    if w.is_empty() || w.iter().any(|l| l != 1 && l != 2) {
        return Err(LabError::NotNestable(w.clone()));
    }
    let rev = reverse(w);
    Ok(Word::join(&[
        w.clone(),
        scale(&rev, 3)?,
        scale(w, 15)?,
        scale(&rev, 5)?,
    ]))
}

/// Bits reserved for each track inside a fused letter.
pub const TRACK_BITS: u32 = 32;
const TRACK_MASK: u64 = (1 << TRACK_BITS) - 1;

/// Packs a column `[top; bottom]` of a two-track tape into one letter.
pub fn fuse_letter(top: Letter, bottom: Letter) -> Result<Letter> {
    for l in [top, bottom] {
        if l > TRACK_MASK {
            return Err(LabError::TrackOverflow(l));
        }
    }
    Ok((top << TRACK_BITS) | bottom)
}

pub fn split_letter(fused: Letter) -> (Letter, Letter) {
    (fused >> TRACK_BITS, fused & TRACK_MASK)
}

/// An input word paired positionwise with an advice word of equal length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TrackedWord {
    top: Word,
    bottom: Word,
}

impl TrackedWord {
    pub fn top(&self) -> &Word {
        &self.top
    }

    pub fn bottom(&self) -> &Word {
        &self.bottom
    }

    pub fn len(&self) -> usize {
        self.top.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_empty()
    }

    /// The tracked word as a word over the track alphabet.
    pub fn fuse(&self) -> Result<Word> {
        self.top
            .iter()
            .zip(self.bottom.iter())
            .map(|(t, b)| fuse_letter(t, b))
            .collect()
    }

    pub fn from_fused(fused: &Word) -> TrackedWord {
        let (top, bottom) = fused.iter().map(split_letter).unzip::<_, _, Vec<_>, Vec<_>>();
        TrackedWord {
            top: top.into(),
            bottom: bottom.into(),
        }
    }
}

pub fn zip_tracks(x: &Word, a: &Word) -> Result<TrackedWord> {
    if x.len() != a.len() {
        return Err(LabError::TrackMismatch {
            top: x.len(),
            bottom: a.len(),
        });
    }
    Ok(TrackedWord {
        top: x.clone(),
        bottom: a.clone(),
    })
}

pub fn unzip_tracks(t: &TrackedWord) -> (Word, Word) {
    (t.top.clone(), t.bottom.clone())
}
