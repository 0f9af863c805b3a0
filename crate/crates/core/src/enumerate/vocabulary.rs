use crate::shiftops::{Letter, SymWord, Word};

/// Bounds on the lowering words tried during descent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VocabularyConfig {
    pub max_letters: usize,
    pub max_amount: u32,
    pub max_drop: u32,
}

impl Default for VocabularyConfig {
    fn default() -> Self {
        VocabularyConfig { max_letters: 4, max_amount: 3, max_drop: 4 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    pub words: Vec<SymWord>,
    pub config: VocabularyConfig,
}

impl Vocabulary {
    /// Words usable for descent: everything but the lone unit down-shifts,
    /// which annihilate every shape.
    pub fn descent_words(&self) -> impl Iterator<Item = (usize, &SymWord)> {
        self.words.iter().enumerate().filter(|(_, w)| !w.word.is_unit_lowering())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// All words with negative net grade in `[-max_drop, -1]` over `d`
/// coordinates, ordered by (|net grade|, length, letters).
///
/// Letters on different coordinates commute, and any string of shifts on one
/// variable collapses to "down by `b`, then up by `a`". Each word is therefore
/// written in a single normal form: coordinates from last to first, and per
/// coordinate an optional up letter followed by an optional down letter
/// (`v[+1]v[-2]u[-1]t[-2]`).
pub fn build_vocabulary(d: usize, config: VocabularyConfig) -> Vocabulary {
    let amounts = config.max_amount;
    let mut words = Vec::new();
    // per coordinate: (up, down), each 0..=max_amount
    let mut choice = vec![(0u32, 0u32); d];
    loop {
        let letters: usize = choice.iter().map(|&(a, b)| (a > 0) as usize + (b > 0) as usize).sum();
        let net: i64 = choice.iter().map(|&(a, b)| a as i64 - b as i64).sum();
        if letters >= 1 && letters <= config.max_letters && net <= -1 && net >= -(config.max_drop as i64) {
            let mut ls = Vec::with_capacity(letters);
            for (c, &(a, b)) in choice.iter().enumerate().rev() {
                if a > 0 {
                    ls.push(Letter::up(c, a));
                }
                if b > 0 {
                    ls.push(Letter::down(c, b));
                }
            }
            words.push(SymWord::new(Word::new(ls)));
        }
        // odometer over all choices
        let mut pos = 0;
        loop {
            if pos == d {
                words.sort_by(|x, y| {
                    (x.net_grade().unsigned_abs(), x.word.len(), x.word.letters())
                        .cmp(&(y.net_grade().unsigned_abs(), y.word.len(), y.word.letters()))
                });
                return Vocabulary { words, config };
            }
            let (a, b) = &mut choice[pos];
            if *b < amounts {
                *b += 1;
                break;
            }
            *b = 0;
            if *a < amounts {
                *a += 1;
                break;
            }
            *a = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has(v: &Vocabulary, s: &str) -> bool {
        v.words.iter().any(|w| w.to_string() == s)
    }

    #[test]
    fn default_three_dimensional_words() {
        let v = build_vocabulary(3, VocabularyConfig::default());
        for s in ["t[+1]t[-2]", "u[+1]u[-2]", "v[+1]v[-2]", "u[-1]t[-1]", "v[-1]u[-1]t[-2]", "v[-1]t[-2]", "u[-1]t[-2]"] {
            assert!(has(&v, s), "{s}");
        }
        assert!(v.words.iter().all(|w| (-4..=-1).contains(&w.net_grade())));
        assert!(v.words.iter().all(|w| w.word.len() <= 4));
        let mut sorted = v.words.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), v.len());
    }

    #[test]
    fn ordering_by_drop_then_length() {
        let v = build_vocabulary(3, VocabularyConfig::default());
        let keys: Vec<_> = v.words.iter().map(|w| (w.net_grade().unsigned_abs(), w.word.len())).collect();
        assert!(keys.windows(2).all(|k| k[0] <= k[1]));
        assert_eq!(v.words[0].to_string(), "t[-1]");
    }

    #[test]
    fn one_letter_in_one_dimension() {
        let v = build_vocabulary(1, VocabularyConfig { max_letters: 1, ..Default::default() });
        let words: Vec<_> = v.words.iter().map(ToString::to_string).collect();
        assert_eq!(words, ["t[-1]", "t[-2]", "t[-3]"]);
        assert_eq!(v.descent_words().count(), 2);
    }

    #[test]
    fn deterministic() {
        let a = build_vocabulary(3, VocabularyConfig::default());
        let b = build_vocabulary(3, VocabularyConfig::default());
        assert_eq!(a, b);
    }
}
