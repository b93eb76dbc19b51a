use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use super::f_of_signature;
use crate::arith::PrimeSignature;
use crate::error::{Error, Result};
use crate::BigNat;

/// Map from prime signature to `f(n₀)`.
///
/// Only whole-signature values are stored: intermediate states of the divisor
/// recursion depend on a factor bound and are not signature invariant.
///
/// Persisted as one `sig=a1,a2,...,ak f=<decimal>` line per entry, lines
/// ordered by signature.
#[derive(Debug, Clone, Default)]
pub struct SignatureCache {
    map: HashMap<PrimeSignature, BigNat>,
    hits: u64,
    misses: u64,
}

impl SignatureCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, sig: &PrimeSignature) -> Option<&BigNat> {
        self.map.get(sig)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Top-level [`f_of_signature`] requests answered from the cache.
    pub fn hits(&self) -> u64 {
        self.hits
    }

    /// Top-level [`f_of_signature`] requests that had to be computed.
    pub fn misses(&self) -> u64 {
        self.misses
    }

    pub(crate) fn record_hit(&mut self) {
        self.hits += 1;
    }

    pub(crate) fn record_miss(&mut self) {
        self.misses += 1;
    }

    pub(crate) fn insert_trusted(&mut self, sig: PrimeSignature, value: BigNat) {
        self.map.insert(sig, value);
    }

    /// Inserts a value, failing if a different one is already stored.
    pub fn insert(&mut self, sig: PrimeSignature, value: BigNat) -> Result<()> {
        if let Some(old) = self.map.get(&sig) {
            if *old != value {
                return Err(Error::CacheConflict {
                    signature: sig.to_string(),
                    left: old.to_string(),
                    right: value.to_string(),
                });
            }
            return Ok(());
        }
        self.map.insert(sig, value);
        Ok(())
    }

    /// Folds another cache into this one. Entries present in both must agree.
    pub fn merge(&mut self, other: SignatureCache) -> Result<()> {
        self.hits += other.hits;
        self.misses += other.misses;
        for (sig, value) in other.map {
            self.insert(sig, value)?;
        }
        Ok(())
    }

    /// Entries sorted by signature.
    pub fn sorted_entries(&self) -> Vec<(&PrimeSignature, &BigNat)> {
        let mut entries: Vec<_> = self.map.iter().collect();
        entries.sort_by(|a, b| a.0.cmp(b.0));
        entries
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (sig, value) in self.sorted_entries() {
            out.push_str(&format!("sig={sig} f={value}\n"));
        }
        out
    }

    /// Parses the text form. Every line is checked for syntax, signature
    /// validity, ordering, and that its value really is `f` of the signature.
    pub fn from_text(text: &str, path: Option<&Path>) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse { path: path.map(Path::to_path_buf), line, message };
        let mut scratch = SignatureCache::new();
        let mut out = SignatureCache::new();
        let mut prev: Option<PrimeSignature> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            if raw.is_empty() {
                continue;
            }
            let (sig_part, f_part) = raw.split_once(' ').ok_or_else(|| err(line, "expected `sig=... f=...`".into()))?;
            let sig_text = sig_part.strip_prefix("sig=").ok_or_else(|| err(line, "missing `sig=` prefix".into()))?;
            let f_text = f_part.strip_prefix("f=").ok_or_else(|| err(line, "missing `f=` field".into()))?;
            let exps = if sig_text.is_empty() {
                Vec::new()
            } else {
                sig_text
                    .split(',')
                    .map(|t| t.parse::<u32>().map_err(|e| err(line, format!("bad exponent {t:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()?
            };
            let sig = PrimeSignature::new(exps).map_err(|e| err(line, e.to_string()))?;
            if f_text.is_empty() || !f_text.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err(line, format!("bad value {f_text:?}")));
            }
            let value: BigNat = f_text.parse().map_err(|e| err(line, format!("bad value: {e}")))?;
            if let Some(p) = &prev {
                if *p >= sig {
                    return Err(err(line, format!("signature {sig} is out of order or repeated")));
                }
            }
            let expected = f_of_signature(&sig, &mut scratch);
            if expected != value {
                return Err(err(line, format!("f({sig}) is {expected}, file says {value}")));
            }
            prev = Some(sig.clone());
            out.map.insert(sig, value);
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::from_text(&text, Some(path))
    }

    /// Writes to a temporary sibling and renames it over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let mut file = fs::File::create(&tmp)?;
            file.write_all(self.to_text().as_bytes())?;
            file.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}
