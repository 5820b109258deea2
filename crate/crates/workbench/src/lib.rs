//! Corpus runs, reporting and element parsing for the `rps` tool.

pub mod corpus;
pub mod error;
pub mod render;
pub mod suite;

pub use corpus::Corpus;
pub use error::WorkbenchError;
pub use render::{report_render, Format};
pub use suite::{run_suite, Check, Status, SuiteOptions, SuiteReport};

use rps_core::{ElemId, GroupHandle};

/// Evaluates `g1^2*g3` style words, in any generator order, to an element id.
/// `id` is the identity.
pub fn parse_element(g: &GroupHandle, word: &str) -> Result<ElemId, WorkbenchError> {
    let bad = || WorkbenchError::BadElement(word.to_string());
    let word = word.trim();
    if word == "id" || word == "1" {
        return Ok(0);
    }
    let mut acc = 0;
    for letter in word.split('*') {
        let letter = letter.trim();
        let (gen, exp) = letter.split_once('^').unwrap_or((letter, "1"));
        let index: usize = gen.strip_prefix('g').and_then(|i| i.parse().ok()).ok_or_else(bad)?;
        let exp: i64 = exp.parse().map_err(|_| bad())?;
        let &x = g.generators().get(index.checked_sub(1).ok_or_else(bad)?).ok_or_else(bad)?;
        acc = g.mul(acc, g.pow(x, exp));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rps_core::pc::parse_presentation;

    #[test]
    fn element_words() {
        let g = GroupHandle::from_presentation(parse_presentation("group p=3 n=3\n[g2,g1] = g3\n").unwrap()).unwrap();
        assert_eq!(parse_element(&g, "id").unwrap(), 0);
        assert_eq!(parse_element(&g, "g1").unwrap(), 9);
        // g2 g1 = g1 g2 [g2, g1] = g1 g2 g3
        assert_eq!(parse_element(&g, "g2*g1").unwrap(), 13);
        assert_eq!(parse_element(&g, "g3^-1").unwrap(), 2);
        assert!(parse_element(&g, "g4").is_err());
        assert!(parse_element(&g, "x1").is_err());
    }
}
