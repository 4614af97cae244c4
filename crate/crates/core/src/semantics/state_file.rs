//! Text form of a truncated state:
//!
//! ```text
//! class: FREE
//! alphabet: a,b
//! depth: 2
//! a = T
//! b = F
//! a.b = T
//! ```
//!
//! `#` starts a comment. An optional `probe: <string>|reply` line marks a
//! distinguishing witness.

use std::fmt::Write as _;

use super::{AtomString, SemanticsError, StateClass, TruncatedState};
use crate::term::{Alphabet, Atom};

/// A parsed state file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateFile {
    pub state: TruncatedState,
    /// `None` for plain states, `Some(None)` for a reply witness and
    /// `Some(Some(s))` for a probe string.
    pub probe: Option<Option<AtomString>>,
}

fn format_err(line: usize, message: impl Into<String>) -> SemanticsError {
    SemanticsError::Format { line, message: message.into() }
}

fn parse_bool(text: &str, line: usize) -> Result<bool, SemanticsError> {
    match text {
        "T" => Ok(true),
        "F" => Ok(false),
        other => Err(format_err(line, format!("expected T or F, found `{other}`"))),
    }
}

pub fn parse_state_file(text: &str) -> Result<StateFile, SemanticsError> {
    let mut class = None;
    let mut alphabet = None;
    let mut depth = None;
    let mut probe = None;
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some((key, value)) = content.split_once(':') {
            let value = value.trim();
            match key.trim() {
                "class" => class = Some(value.parse::<StateClass>().map_err(|m| format_err(line, m))?),
                "alphabet" => {
                    let atoms = value
                        .split(',')
                        .map(|a| Atom::new(a.trim()))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| format_err(line, e.to_string()))?;
                    alphabet = Some(Alphabet::new(atoms).map_err(|e| format_err(line, e.to_string()))?);
                }
                "depth" => {
                    depth = Some(value.parse::<usize>().map_err(|_| format_err(line, format!("bad depth `{value}`")))?)
                }
                "probe" => {
                    probe = Some(if value == "reply" {
                        None
                    } else {
                        Some(AtomString::parse(value).map_err(|e| format_err(line, e.to_string()))?)
                    })
                }
                other => return Err(format_err(line, format!("unknown header `{other}`"))),
            }
            continue;
        }
        let (lhs, rhs) = content.split_once('=').ok_or_else(|| format_err(line, "expected `<string> = T|F`"))?;
        let s = AtomString::parse(lhs.trim()).map_err(|e| format_err(line, e.to_string()))?;
        entries.push((s, parse_bool(rhs.trim(), line)?));
    }
    let class = class.ok_or_else(|| format_err(0, "missing `class:` header"))?;
    let alphabet = alphabet.ok_or_else(|| format_err(0, "missing `alphabet:` header"))?;
    let depth = depth.ok_or_else(|| format_err(0, "missing `depth:` header"))?;
    let state = TruncatedState::from_entries(class, &alphabet, depth, &entries)?;
    Ok(StateFile { state, probe })
}

pub fn write_state_file(state: &TruncatedState, probe: Option<Option<&AtomString>>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "class: {}", state.class());
    let _ = writeln!(out, "alphabet: {}", state.alphabet());
    let _ = writeln!(out, "depth: {}", state.depth());
    match probe {
        None => {}
        Some(None) => out.push_str("probe: reply\n"),
        Some(Some(s)) => {
            let _ = writeln!(out, "probe: {s}");
        }
    }
    for (s, v) in state.entries() {
        let _ = writeln!(out, "{s} = {}", if v { 'T' } else { 'F' });
    }
    out
}
