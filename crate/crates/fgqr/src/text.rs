//! Text pipeline: segmentation, coarse POS tagging, stopword flags and
//! corpus-level IDF statistics.
//!
//! Questions are normalized (lowercase, trim, collapse internal whitespace)
//! and segmented into keyword candidates. Each candidate carries the lexical
//! features consumed by the importance model: a coarse POS tag, a stopword
//! flag and a bucketed IDF value.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

const STOPWORDS_EN: &str = include_str!("../assets/stopwords_en.txt");
const POS_LEXICON: &str = include_str!("../assets/pos_lexicon.txt");

/// Default number of equal-width IDF buckets.
pub const DEFAULT_IDF_BUCKETS: usize = 100;

/// Coarse part-of-speech labels (closed set).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PosTag {
    Noun,
    Verb,
    Adj,
    Adv,
    Pron,
    Det,
    Adp,
    Num,
    Wh,
    Other,
}

impl PosTag {
    pub const COUNT: usize = 10;

    /// Stable row index for embedding-table lookups.
    pub fn index(self) -> usize {
        match self {
            PosTag::Noun => 0,
            PosTag::Verb => 1,
            PosTag::Adj => 2,
            PosTag::Adv => 3,
            PosTag::Pron => 4,
            PosTag::Det => 5,
            PosTag::Adp => 6,
            PosTag::Num => 7,
            PosTag::Wh => 8,
            PosTag::Other => 9,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Noun => "NOUN",
            PosTag::Verb => "VERB",
            PosTag::Adj => "ADJ",
            PosTag::Adv => "ADV",
            PosTag::Pron => "PRON",
            PosTag::Det => "DET",
            PosTag::Adp => "ADP",
            PosTag::Num => "NUM",
            PosTag::Wh => "WH",
            PosTag::Other => "OTHER",
        }
    }

    pub fn from_str(s: &str) -> Option<PosTag> {
        Some(match s {
            "NOUN" => PosTag::Noun,
            "VERB" => PosTag::Verb,
            "ADJ" => PosTag::Adj,
            "ADV" => PosTag::Adv,
            "PRON" => PosTag::Pron,
            "DET" => PosTag::Det,
            "ADP" => PosTag::Adp,
            "NUM" => PosTag::Num,
            "WH" => PosTag::Wh,
            "OTHER" => PosTag::Other,
            _ => return None,
        })
    }
}

/// How raw question text is split into keyword candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SegmentMode {
    /// Split on whitespace; suits space-delimited text.
    #[default]
    Whitespace,
    /// Overlapping character bigrams per whitespace run; suits unsegmented
    /// scripts. A one-character run yields itself.
    CharBigram,
    /// Input is already segmented, one token per single space.
    ExternalList,
}

impl SegmentMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SegmentMode::Whitespace => "whitespace",
            SegmentMode::CharBigram => "bigram",
            SegmentMode::ExternalList => "list",
        }
    }

    pub fn from_str(s: &str) -> Option<SegmentMode> {
        Some(match s {
            "whitespace" => SegmentMode::Whitespace,
            "bigram" => SegmentMode::CharBigram,
            "list" => SegmentMode::ExternalList,
            _ => return None,
        })
    }
}

/// One keyword candidate with its lexical features.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeywordCandidate {
    pub surface: String,
    /// 0-based index within the question; unique and contiguous.
    pub position: usize,
    pub pos_tag: PosTag,
    pub is_stopword: bool,
    /// In `[0, K)` for the stats' bucket count K.
    pub idf_bucket: usize,
}

/// Normalize question text: lowercase, trim, collapse internal whitespace.
pub fn normalize(text: &str) -> String {
    text.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Segment a question into keyword-candidate surfaces.
///
/// Returns `EmptyQuestion` for blank or whitespace-only input.
pub fn segment(text: &str, mode: SegmentMode) -> Result<Vec<String>> {
    let norm = normalize(text);
    if norm.is_empty() {
        return Err(Error::EmptyQuestion);
    }
    let tokens = match mode {
        SegmentMode::Whitespace | SegmentMode::ExternalList => {
            norm.split(' ').map(str::to_string).collect::<Vec<_>>()
        }
        SegmentMode::CharBigram => {
            let mut out = Vec::new();
            for run in norm.split(' ') {
                let chars: Vec<char> = run.chars().collect();
                if chars.len() <= 1 {
                    out.push(run.to_string());
                } else {
                    for w in chars.windows(2) {
                        out.push(w.iter().collect());
                    }
                }
            }
            out
        }
    };
    Ok(tokens)
}

fn parse_lexicon(src: &str) -> BTreeMap<String, PosTag> {
    let mut map = BTreeMap::new();
    for line in src.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(word), Some(tag)) = (parts.next(), parts.next()) else {
            continue;
        };
        if let Some(tag) = PosTag::from_str(tag) {
            // First entry wins; later duplicates are ignored.
            map.entry(word.to_string()).or_insert(tag);
        }
    }
    map
}

fn parse_wordlist(src: &str) -> BTreeSet<String> {
    src.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

/// Shipped coarse-POS lexicon (~500 function words and frequent open-class
/// words).
pub fn builtin_pos_lexicon() -> BTreeMap<String, PosTag> {
    parse_lexicon(POS_LEXICON)
}

/// Shipped English stopword set.
pub fn builtin_stopwords() -> BTreeSet<String> {
    parse_wordlist(STOPWORDS_EN)
}

/// Load a stopword file: UTF-8, one token per line, '#' comments.
pub fn load_stopwords(path: &str) -> Result<BTreeSet<String>> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_wordlist(&src))
}

fn suffix_tag(token: &str) -> Option<PosTag> {
    if token.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',' || c == '-')
        && token.chars().any(|c| c.is_ascii_digit())
    {
        return Some(PosTag::Num);
    }
    const ADV: [&str; 1] = ["ly"];
    const VERB: [&str; 4] = ["ing", "ize", "ise", "ate"];
    const ADJ: [&str; 8] = ["ful", "ous", "ive", "able", "ible", "ical", "less", "ish"];
    const NOUN: [&str; 8] = ["tion", "sion", "ness", "ment", "ity", "ism", "ers", "ance"];
    for s in ADV {
        if token.len() > s.len() + 2 && token.ends_with(s) {
            return Some(PosTag::Adv);
        }
    }
    for s in VERB {
        if token.len() > s.len() + 2 && token.ends_with(s) {
            return Some(PosTag::Verb);
        }
    }
    for s in ADJ {
        if token.len() > s.len() + 2 && token.ends_with(s) {
            return Some(PosTag::Adj);
        }
    }
    for s in NOUN {
        if token.len() > s.len() + 2 && token.ends_with(s) {
            return Some(PosTag::Noun);
        }
    }
    // "-ed" wants a longer stem so "red"/"bed" stay untagged.
    if token.len() > 4 && token.ends_with("ed") {
        return Some(PosTag::Verb);
    }
    None
}

/// Tag tokens with coarse POS labels: lexicon lookup, then suffix
/// heuristics, then `OTHER`.
pub fn tag_pos(tokens: &[String], lexicon: &BTreeMap<String, PosTag>) -> Vec<PosTag> {
    tokens
        .iter()
        .map(|t| {
            lexicon
                .get(t.as_str())
                .copied()
                .or_else(|| suffix_tag(t))
                .unwrap_or(PosTag::Other)
        })
        .collect()
}

/// Corpus-level document-frequency statistics with equal-width IDF buckets.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusStats {
    pub document_count: usize,
    pub doc_freq: BTreeMap<String, usize>,
    pub idf_min: f64,
    pub idf_max: f64,
    pub bucket_count: usize,
    /// Mean tokens per document; the BM25 average document length.
    pub avg_doc_len: f64,
    pub stopwords: BTreeSet<String>,
}

impl CorpusStats {
    /// Smoothed IDF: `ln((N+1)/(df+1)) + 1`, positive and defined for
    /// unseen tokens (df = 0).
    pub fn idf(&self, token: &str) -> f64 {
        let df = self.doc_freq.get(token).copied().unwrap_or(0);
        idf_value(self.document_count, df)
    }

    /// Equal-width bucket over `[idf_min, idf_max]`, clamped to `[0, K)`.
    pub fn idf_bucket(&self, token: &str) -> usize {
        let width = self.idf_max - self.idf_min;
        if width <= 0.0 {
            return 0;
        }
        let idf = self.idf(token);
        let raw = (self.bucket_count as f64 * (idf - self.idf_min) / width).floor();
        (raw.max(0.0) as usize).min(self.bucket_count - 1)
    }

    pub fn is_stopword(&self, token: &str) -> bool {
        self.stopwords.contains(token)
    }
}

pub fn idf_value(document_count: usize, df: usize) -> f64 {
    ((document_count as f64 + 1.0) / (df as f64 + 1.0)).ln() + 1.0
}

/// Build corpus statistics from an iterator of raw questions.
///
/// Each question counts as one document; document frequency counts a token
/// once per document. The stopword set defaults to the shipped English
/// lexicon when `stopwords` is `None`.
pub fn build_corpus_stats<I, S>(
    corpus: I,
    mode: SegmentMode,
    bucket_count: usize,
    stopwords: Option<BTreeSet<String>>,
) -> Result<CorpusStats>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut doc_freq: BTreeMap<String, usize> = BTreeMap::new();
    let mut document_count = 0usize;
    let mut total_tokens = 0usize;
    for doc in corpus {
        let tokens = match segment(doc.as_ref(), mode) {
            Ok(t) => t,
            Err(Error::EmptyQuestion) => continue,
            Err(e) => return Err(e),
        };
        document_count += 1;
        total_tokens += tokens.len();
        let uniq: BTreeSet<&String> = tokens.iter().collect();
        for t in uniq {
            *doc_freq.entry(t.clone()).or_insert(0) += 1;
        }
    }
    if document_count == 0 {
        return Err(Error::EmptyCorpus);
    }
    let mut idf_min = f64::INFINITY;
    let mut idf_max = f64::NEG_INFINITY;
    for &df in doc_freq.values() {
        let idf = idf_value(document_count, df);
        idf_min = idf_min.min(idf);
        idf_max = idf_max.max(idf);
    }
    Ok(CorpusStats {
        document_count,
        doc_freq,
        idf_min,
        idf_max,
        bucket_count,
        avg_doc_len: total_tokens as f64 / document_count as f64,
        stopwords: stopwords.unwrap_or_else(builtin_stopwords),
    })
}

/// Segment a question and attach lexical features to each candidate.
pub fn keyword_candidates(
    text: &str,
    mode: SegmentMode,
    lexicon: &BTreeMap<String, PosTag>,
    stats: &CorpusStats,
) -> Result<Vec<KeywordCandidate>> {
    let tokens = segment(text, mode)?;
    let tags = tag_pos(&tokens, lexicon);
    Ok(tokens
        .into_iter()
        .zip(tags)
        .enumerate()
        .map(|(position, (surface, pos_tag))| KeywordCandidate {
            is_stopword: stats.is_stopword(&surface),
            idf_bucket: stats.idf_bucket(&surface),
            surface,
            position,
            pos_tag,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats_from(docs: &[&str]) -> CorpusStats {
        build_corpus_stats(docs.iter().copied(), SegmentMode::Whitespace, 100, None).unwrap()
    }

    #[test]
    fn segment_figure_question() {
        let toks = segment("How to keep the mobile phone cool", SegmentMode::Whitespace).unwrap();
        assert_eq!(toks, ["how", "to", "keep", "the", "mobile", "phone", "cool"]);
    }

    #[test]
    fn segment_single_token() {
        assert_eq!(segment("cool", SegmentMode::Whitespace).unwrap(), ["cool"]);
    }

    #[test]
    fn segment_blank_is_error() {
        assert!(matches!(
            segment("   ", SegmentMode::Whitespace),
            Err(Error::EmptyQuestion)
        ));
        assert!(matches!(segment("", SegmentMode::CharBigram), Err(Error::EmptyQuestion)));
    }

    #[test]
    fn segment_collapses_whitespace_and_lowercases() {
        let toks = segment("  Mobile \t PHONE  ", SegmentMode::Whitespace).unwrap();
        assert_eq!(toks, ["mobile", "phone"]);
    }

    #[test]
    fn segment_is_idempotent() {
        let texts = ["How  to KEEP  the phone cool", "a", " x  y\tz "];
        for t in texts {
            let once = segment(t, SegmentMode::Whitespace).unwrap();
            let again = segment(&once.join(" "), SegmentMode::Whitespace).unwrap();
            assert_eq!(once, again);
        }
    }

    #[test]
    fn segment_char_bigrams() {
        assert_eq!(segment("abcd", SegmentMode::CharBigram).unwrap(), ["ab", "bc", "cd"]);
        assert_eq!(segment("a", SegmentMode::CharBigram).unwrap(), ["a"]);
        assert_eq!(
            segment("ab cd", SegmentMode::CharBigram).unwrap(),
            ["ab", "cd"]
        );
    }

    #[test]
    fn pos_lexicon_lookups() {
        let lex = builtin_pos_lexicon();
        let tags = tag_pos(
            &["how".into(), "the".into(), "zzxqv".into()],
            &lex,
        );
        assert_eq!(tags, [PosTag::Wh, PosTag::Det, PosTag::Other]);
    }

    #[test]
    fn pos_suffix_heuristics() {
        let lex = builtin_pos_lexicon();
        let tags = tag_pos(
            &[
                "overheating".into(),
                "quickly".into(),
                "wonderful".into(),
                "regression".into(),
                "42".into(),
            ],
            &lex,
        );
        assert_eq!(
            tags,
            [PosTag::Verb, PosTag::Adv, PosTag::Adj, PosTag::Noun, PosTag::Num]
        );
    }

    #[test]
    fn idf_hand_values() {
        // 3 docs, "the" in all 3: idf = ln(4/4) + 1 = 1.0
        let stats = stats_from(&["the cat", "the dog", "the bird"]);
        assert!((stats.idf("the") - 1.0).abs() < 1e-12);
        // "cat" in 1 of 3: ln(4/2) + 1 = 1.6931...
        assert!((stats.idf("cat") - (2.0f64.ln() + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn empty_corpus_is_error() {
        let r = build_corpus_stats(
            std::iter::empty::<&str>(),
            SegmentMode::Whitespace,
            100,
            None,
        );
        assert!(matches!(r, Err(Error::EmptyCorpus)));
    }

    #[test]
    fn bucket_boundaries() {
        let stats = stats_from(&["the cat", "the dog", "the bird"]);
        // "the" has the minimum idf, unique tokens the maximum.
        assert_eq!(stats.idf_bucket("the"), 0);
        assert_eq!(stats.idf_bucket("cat"), stats.bucket_count - 1);
        // Unseen token idf exceeds idf_max and clamps into the top bucket.
        assert_eq!(stats.idf_bucket("zzz"), stats.bucket_count - 1);
    }

    #[test]
    fn bucket_degenerate_width() {
        // Every token appears in every doc: single distinct idf.
        let stats = stats_from(&["a b", "a b"]);
        assert_eq!(stats.idf_bucket("a"), 0);
        assert_eq!(stats.idf_bucket("b"), 0);
    }

    #[test]
    fn bucket_monotone_in_idf() {
        let stats = stats_from(&[
            "a b c d e",
            "a b c d",
            "a b c",
            "a b",
            "a",
        ]);
        let mut tokens: Vec<&str> = vec!["a", "b", "c", "d", "e"];
        tokens.sort_by(|x, y| stats.idf(x).partial_cmp(&stats.idf(y)).unwrap());
        let buckets: Vec<usize> = tokens.iter().map(|t| stats.idf_bucket(t)).collect();
        for w in buckets.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn df_bounded_by_doc_count() {
        let stats = stats_from(&["x y", "y z", "z x", "x x y"]);
        for (_, &df) in &stats.doc_freq {
            assert!(df <= stats.document_count);
        }
        assert_eq!(stats.doc_freq["x"], 3);
    }

    #[test]
    fn candidates_have_contiguous_positions() {
        let stats = stats_from(&["how to keep the mobile phone cool"]);
        let lex = builtin_pos_lexicon();
        let cands = keyword_candidates(
            "how to keep the mobile phone cool",
            SegmentMode::Whitespace,
            &lex,
            &stats,
        )
        .unwrap();
        assert_eq!(cands.len(), 7);
        for (i, c) in cands.iter().enumerate() {
            assert_eq!(c.position, i);
            assert!(!c.surface.is_empty());
            assert!(c.idf_bucket < stats.bucket_count);
        }
        assert!(cands[3].is_stopword); // "the"
        assert!(!cands[5].is_stopword); // "phone"
    }

    #[test]
    fn avg_doc_len() {
        let stats = stats_from(&["a b c", "d e"]);
        assert!((stats.avg_doc_len - 2.5).abs() < 1e-12);
    }
}
