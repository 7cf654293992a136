use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::HolonomyError;

/// A word in the generators. Letter `k + 1` is `x{k}`, letter `-(k + 1)` is
/// its inverse `X{k}`. Printed as letters joined by `.`; the empty word
/// prints as `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(into = "String", try_from = "String"))]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(letters: Vec<i32>) -> Result<Self, HolonomyError> {
        if letters.contains(&0) {
            return Err(HolonomyError::BadWord(String::from("letter 0")));
        }
        Ok(Self(letters))
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v).reduced()
    }

    /// Free reduction: cancel adjacent `x X` pairs.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    /// Free and cyclic reduction.
    pub fn cyclically_reduced(&self) -> Self {
        let mut v = self.reduced().0;
        while v.len() >= 2 && v[0] == -v[v.len() - 1] {
            v.pop();
            v.remove(0);
        }
        Self(v)
    }

    /// Canonical representative of the unoriented cyclic word: cyclic
    /// reduction, then the smallest rotation of the word or its inverse
    /// (compared by printed form).
    pub fn canonical_cyclic(&self) -> Self {
        let base = self.cyclically_reduced();
        if base.0.is_empty() {
            return base;
        }
        let inv = base.inverse();
        let n = base.0.len();
        let mut best: Option<(String, Word)> = None;
        for w in [&base, &inv] {
            for r in 0..n {
                let mut v = Vec::with_capacity(n);
                v.extend_from_slice(&w.0[r..]);
                v.extend_from_slice(&w.0[..r]);
                let cand = Word(v);
                let key = cand.to_string_key();
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, cand));
                }
            }
        }
        best.map(|(_, w)| w).unwrap_or(base)
    }

    fn to_string_key(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        let _ = write!(s, "{self}");
        s
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, &l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            let c = if l > 0 { 'x' } else { 'X' };
            write!(f, "{c}{}", l.unsigned_abs() - 1)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = HolonomyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::default());
        }
        let mut letters = Vec::new();
        for tok in s.split('.') {
            let mut chars = tok.chars();
            let sign = match chars.next() {
                Some('x') => 1,
                Some('X') => -1,
                _ => return Err(HolonomyError::BadWord(String::from(tok))),
            };
            let k: i32 = chars.as_str().parse().map_err(|_| HolonomyError::BadWord(String::from(tok)))?;
            if k < 0 {
                return Err(HolonomyError::BadWord(String::from(tok)));
            }
            letters.push(sign * (k + 1));
        }
        Ok(Word(letters))
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string_key()
    }
}

impl TryFrom<String> for Word {
    type Error = HolonomyError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn print_and_parse() {
        let w = Word::new(vec![1, -3, 2]).unwrap();
        assert_eq!(w.to_string(), "x0.X2.x1");
        assert_eq!("x0.X2.x1".parse::<Word>().unwrap(), w);
        assert_eq!(Word::default().to_string(), "1");
        assert!("y1".parse::<Word>().is_err());
        assert!(Word::new(vec![0]).is_err());
    }

    #[test]
    fn reductions() {
        let w = Word::new(vec![-2, 1, 3, -3, 2]).unwrap();
        assert_eq!(w.reduced().letters(), &[-2, 1, 2]);
        assert_eq!(w.cyclically_reduced().letters(), &[1]);
        let a = Word::new(vec![2, 1]).unwrap();
        let b = Word::new(vec![-1, -2]).unwrap();
        let c = Word::new(vec![1, 2]).unwrap();
        assert_eq!(a.canonical_cyclic(), b.canonical_cyclic());
        assert_eq!(a.canonical_cyclic(), c.canonical_cyclic());
        assert!(a.concat(&a.inverse()).is_empty());
    }
}
