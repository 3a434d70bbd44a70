//! Reading subject strings from FASTA and plain-text files.

use palk_core::symbols::{encode_byte, EncodeMode, SymbolString};
use palk_core::Error;

/// Sequence of one FASTA record, DNA-encoded.
///
/// Without `record` the file must hold exactly one record; with it, the
/// 1-based `record`-th one is taken and the others are ignored.
pub fn parse_fasta(bytes: &[u8], record: Option<usize>) -> Result<SymbolString, Error> {
    let mut seen = 0usize;
    let want = record.unwrap_or(1);
    if want == 0 {
        return Err(Error::Parameter("--record counts from 1".into()));
    }
    let mut seq = Vec::new();
    let mut started = false;
    for (idx, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let line_no = idx + 1;
        let line = trim_end(raw);
        if !started {
            if line.iter().all(u8::is_ascii_whitespace) {
                continue;
            }
            if line[0] != b'>' {
                return Err(Error::Parse { line: line_no, column: 1, reason: "FASTA input must start with `>`".into() });
            }
            started = true;
        }
        if line.first() == Some(&b'>') {
            seen += 1;
            if seen > 1 && record.is_none() {
                return Err(Error::Parse {
                    line: line_no,
                    column: 1,
                    reason: "more than one FASTA record; select one with --record".into(),
                });
            }
            continue;
        }
        if seen != want {
            continue;
        }
        for (col, &b) in line.iter().enumerate() {
            let sym = encode_byte(b, EncodeMode::Dna).ok_or_else(|| Error::Parse {
                line: line_no,
                column: col + 1,
                reason: format!("`{}` is not one of A, C, G, T", b.escape_ascii()),
            })?;
            seq.push(sym);
        }
    }
    if record.is_some() && seen < want {
        return Err(Error::Parameter(format!("FASTA input has {seen} records, --record {want} requested")));
    }
    if seq.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(SymbolString::new(seq))
}

/// Plain text: line breaks are dropped and every remaining byte is encoded.
pub fn parse_text(bytes: &[u8], mode: EncodeMode) -> Result<SymbolString, Error> {
    let mut seq = Vec::new();
    for (idx, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let line = raw.strip_suffix(b"\r").unwrap_or(raw);
        for (col, &b) in line.iter().enumerate() {
            let sym = encode_byte(b, mode).ok_or_else(|| Error::Parse {
                line: idx + 1,
                column: col + 1,
                reason: format!("byte `{}` is outside the alphabet", b.escape_ascii()),
            })?;
            seq.push(sym);
        }
    }
    if seq.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(SymbolString::new(seq))
}

pub fn looks_like_fasta(bytes: &[u8]) -> bool {
    bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'>')
}

fn trim_end(line: &[u8]) -> &[u8] {
    let end = line.iter().rposition(|b| !b.is_ascii_whitespace()).map_or(0, |p| p + 1);
    &line[..end]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fasta_examples() {
        assert_eq!(parse_fasta(b">x\nACGT\n", None).unwrap().as_slice(), &[0, 1, 2, 3]);
        assert_eq!(parse_fasta(b">x\nAC\nGT\n", None).unwrap().as_slice(), &[0, 1, 2, 3]);
        assert_eq!(parse_fasta(b"\n>x desc\r\nac\r\ngt\r\n", None).unwrap().as_slice(), &[0, 1, 2, 3]);
        let err = parse_fasta(b">x\nACGN\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 4, .. }), "{err:?}");
    }

    #[test]
    fn fasta_records() {
        let two = b">a\nAAAA\n>b\nCCGG\n";
        assert!(matches!(parse_fasta(two, None), Err(Error::Parse { line: 3, .. })));
        assert_eq!(parse_fasta(two, Some(2)).unwrap().as_slice(), &[1, 1, 2, 2]);
        assert_eq!(parse_fasta(two, Some(1)).unwrap().as_slice(), &[0, 0, 0, 0]);
        assert!(matches!(parse_fasta(two, Some(3)), Err(Error::Parameter(_))));
    }

    #[test]
    fn fasta_rejects() {
        assert!(matches!(parse_fasta(b"ACGT\n", None), Err(Error::Parse { line: 1, column: 1, .. })));
        assert_eq!(parse_fasta(b">x\n\n", None).unwrap_err(), Error::EmptyInput);
        assert_eq!(parse_fasta(b"", None).unwrap_err(), Error::EmptyInput);
    }

    #[test]
    fn text_lines_concatenate() {
        let s = parse_text(b"bba\r\nabac\n", EncodeMode::Ascii).unwrap();
        assert_eq!(s.len(), 7);
        assert!(matches!(parse_text(b"ab\nc d\n", EncodeMode::Ascii), Err(Error::Parse { line: 2, column: 2, .. })));
        assert!(looks_like_fasta(b"  \n>x\nA"));
        assert!(!looks_like_fasta(b"ACGT"));
    }
}
