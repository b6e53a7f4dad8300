//! Link input: braid text, built-in knot names, or braid JSON given inline
//! or as a file path.

use std::path::Path;

use serde::Deserialize;

use qtop_core::links::knot_table;
use qtop_core::BraidWord;

use crate::CliError;

/// `{"strands": n, "word": [..], "colors": [..], "framings": [..], "cut": idx|null}`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraidJson {
    pub strands: usize,
    pub word: Vec<i32>,
    #[serde(default)]
    pub colors: Option<Vec<String>>,
    #[serde(default)]
    pub framings: Option<Vec<i64>>,
    #[serde(default)]
    pub cut: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkInput {
    pub braid: BraidWord,
    pub colors: Option<Vec<String>>,
    pub framings: Option<Vec<i64>>,
    pub cut: Option<usize>,
}

impl LinkInput {
    fn bare(braid: BraidWord) -> Self {
        Self { braid, colors: None, framings: None, cut: None }
    }

    pub fn components(&self) -> usize {
        self.braid.closure().len()
    }
}

pub fn parse_json(text: &str) -> Result<LinkInput, CliError> {
    let j: BraidJson = serde_json::from_str(text)?;
    Ok(LinkInput { braid: BraidWord::new(j.strands, j.word)?, colors: j.colors, framings: j.framings, cut: j.cut })
}

/// Exactly one of `braid` (text), `knot` (name) or `input` (inline JSON or
/// a path to a JSON file) must be given.
pub fn load(braid: Option<&str>, knot: Option<&str>, input: Option<&str>) -> Result<LinkInput, CliError> {
    match (braid, knot, input) {
        (Some(b), None, None) => Ok(LinkInput::bare(BraidWord::parse(b)?)),
        (None, Some(k), None) => Ok(LinkInput::bare(knot_table(k)?)),
        (None, None, Some(i)) if i.trim_start().starts_with('{') => parse_json(i),
        (None, None, Some(i)) => parse_json(&std::fs::read_to_string(Path::new(i))?),
        (None, None, None) => Err(CliError::Parse("give one of --braid, --knot or --input".into())),
        _ => Err(CliError::Parse("--braid, --knot and --input are mutually exclusive".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_form() {
        let l = parse_json(r#"{"strands": 2, "word": [1, 1], "colors": ["V0.3", "S1"], "framings": [0, 1], "cut": 0}"#).unwrap();
        assert_eq!(l.braid, BraidWord::parse("2: 1 1").unwrap());
        assert_eq!(l.colors.as_deref(), Some(&["V0.3".to_string(), "S1".to_string()][..]));
        assert_eq!(l.cut, Some(0));
        let bare = parse_json(r#"{"strands": 1, "word": []}"#).unwrap();
        assert_eq!(bare.framings, None);
        assert!(parse_json(r#"{"strands": 2, "word": [2]}"#).is_err());
        assert!(parse_json(r#"{"strands": 2, "word": [1], "extra": 1}"#).is_err());
    }

    #[test]
    fn sources_are_exclusive() {
        assert!(load(Some("2: 1"), Some("trefoil"), None).is_err());
        assert!(load(None, None, None).is_err());
        assert_eq!(load(None, Some("hopf"), None).unwrap().components(), 2);
    }
}
