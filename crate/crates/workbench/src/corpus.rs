//! Corpus configuration: one group per line, either a built-in family or
//! an included presentation file.
//!
//! ```text
//! # comment
//! family=heisenberg p=3 e=2
//! include=wreath81.pcp
//! ```

use std::fs;
use std::path::Path;

use rps_core::family::{build_family, FamilySpec};
use rps_core::pc::{parse_presentation, PcPresentation};
use rps_core::GroupHandle;
use sha2::{Digest, Sha256};

use crate::WorkbenchError;

const DEFAULT_CONFIG: &str = include_str!("../corpus/default.cfg");
const DEFAULT_INCLUDES: &[(&str, &str)] = &[("wreath81.pcp", include_str!("../corpus/wreath81.pcp"))];

#[derive(Debug, Clone)]
pub enum Source {
    Family(FamilySpec),
    File { path: String, presentation: PcPresentation },
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub source: Source,
    pub line: usize,
}

impl CorpusEntry {
    pub fn describe(&self) -> String {
        match &self.source {
            Source::Family(spec) => spec.to_string(),
            Source::File { path, .. } => format!("include={path}"),
        }
    }

    pub fn build(&self) -> Result<GroupHandle, rps_core::Error> {
        match &self.source {
            Source::Family(spec) => build_family(spec)?.handle(),
            Source::File { presentation, .. } => GroupHandle::from_presentation(presentation.clone()),
        }
    }

    pub fn presentation(&self) -> Option<PcPresentation> {
        match &self.source {
            Source::Family(spec) => build_family(spec).ok()?.presentation().cloned(),
            Source::File { presentation, .. } => Some(presentation.clone()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    /// SHA-256 over the configuration text and every included file.
    pub digest: String,
}

impl Corpus {
    /// Parses a configuration; `include` resolves an include path to its text.
    pub fn parse(text: &str, mut include: impl FnMut(&str) -> Result<String, WorkbenchError>) -> Result<Self, WorkbenchError> {
        let mut hasher = Sha256::new();
        hasher.update(text.as_bytes());
        let mut entries = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let corpus_err = |message: String| WorkbenchError::Corpus { line, message };
            if let Some(path) = body.strip_prefix("include=") {
                let path = path.trim();
                let contents = include(path)?;
                hasher.update([0]);
                hasher.update(path.as_bytes());
                hasher.update([0]);
                hasher.update(contents.as_bytes());
                let presentation = parse_presentation(&contents).map_err(|e| corpus_err(format!("{path}: {e}")))?;
                let name = presentation.name().map(str::to_string).unwrap_or_else(|| {
                    Path::new(path).file_stem().map_or(path.to_string(), |s| s.to_string_lossy().into_owned())
                });
                entries.push(CorpusEntry { name, source: Source::File { path: path.to_string(), presentation }, line });
            } else if body.starts_with("family=") {
                let spec: FamilySpec = body.parse().map_err(|e: rps_core::Error| corpus_err(e.to_string()))?;
                entries.push(CorpusEntry { name: spec.group_name(), source: Source::Family(spec), line });
            } else {
                return Err(corpus_err(format!("expected family=... or include=..., got `{body}`")));
            }
        }
        Ok(Corpus { entries, digest: hex::encode(hasher.finalize()) })
    }

    /// Reads a configuration file; includes are relative to its directory.
    pub fn load(path: &Path) -> Result<Self, WorkbenchError> {
        let text = fs::read_to_string(path).map_err(|e| WorkbenchError::io(path, e))?;
        let dir = path.parent().unwrap_or(Path::new("."));
        Corpus::parse(&text, |inc| {
            let full = dir.join(inc);
            fs::read_to_string(&full).map_err(|e| WorkbenchError::io(full, e))
        })
    }

    /// The corpus shipped with the tool.
    pub fn builtin() -> Self {
        Corpus::parse(DEFAULT_CONFIG, |inc| {
            DEFAULT_INCLUDES
                .iter()
                .find(|(name, _)| *name == inc)
                .map(|(_, text)| text.to_string())
                .ok_or_else(|| WorkbenchError::io(inc, std::io::ErrorKind::NotFound.into()))
        })
        .expect("built-in corpus parses")
    }

    pub fn empty() -> Self {
        Corpus::parse("", |_| unreachable!()).expect("empty corpus parses")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_corpus_builds() {
        let corpus = Corpus::builtin();
        assert!(corpus.entries.len() >= 20);
        for entry in &corpus.entries {
            let g = entry.build().unwrap();
            assert!(g.order() <= 729, "{}", entry.name);
        }
    }

    #[test]
    fn rejects_garbage() {
        let err = Corpus::parse("family=cyclic p=3 e=1\nbogus\n", |_| unreachable!()).unwrap_err();
        assert!(matches!(err, WorkbenchError::Corpus { line: 2, .. }));
        let err = Corpus::parse("family=cyclic p=6 e=1\n", |_| unreachable!()).unwrap_err();
        assert!(matches!(err, WorkbenchError::Corpus { line: 1, .. }));
    }

    #[test]
    fn digest_covers_includes() {
        let cfg = "include=x.pcp\n";
        let a = Corpus::parse(cfg, |_| Ok("group p=3 n=1\n".into())).unwrap();
        let b = Corpus::parse(cfg, |_| Ok("group p=3 n=2\ng1^p = g2\n".into())).unwrap();
        assert_ne!(a.digest, b.digest);
        assert_eq!(a.entries[0].name, "x");
    }
}
