//! digraph6: `&`, a size byte `n + 63` (`n ≤ 62`), then the `n × n`
//! adjacency matrix row-major, six bits per byte (MSB first, value + 63),
//! zero padded. An arc `i → j` is read as `i ≺ j`.

use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;

use thiserror::Error;

use crate::poset::{bit, Mask, Poset, PosetError, MAX_ELEMENTS};

pub const DIGRAPH6_HEADER: &str = ">>digraph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Digraph6Error {
    #[error("record does not start with '&'")]
    BadHeader,
    #[error("size byte {0} unsupported (only one-byte sizes for n <= 62)")]
    UnsupportedSize(u8),
    #[error("payload has {found} bytes, expected {expected}")]
    BadLength { expected: usize, found: usize },
    #[error("byte {byte} at offset {offset} outside 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("{n} vertices exceed the supported maximum")]
    TooLarge { n: usize },
    #[error(transparent)]
    Poset(#[from] PosetError),
}

impl Digraph6Error {
    pub fn is_cyclic(&self) -> bool {
        matches!(self, Digraph6Error::Poset(PosetError::CyclicInput(_)))
    }
}

/// A syntactically decoded digraph6 line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph6Record {
    pub line: Vec<u8>,
    pub n: usize,
    /// Row-major `n × n` adjacency bits.
    pub adjacency: Vec<bool>,
}

impl Digraph6Record {
    pub fn parse(line: &[u8]) -> Result<Self, Digraph6Error> {
        let (&amp, rest) = line.split_first().ok_or(Digraph6Error::BadHeader)?;
        if amp != b'&' {
            return Err(Digraph6Error::BadHeader);
        }
        let (&size, payload) = rest.split_first().ok_or(Digraph6Error::BadLength { expected: 1, found: 0 })?;
        if !(63..=126).contains(&size) {
            return Err(Digraph6Error::BadByte { offset: 1, byte: size });
        }
        if size == 126 {
            return Err(Digraph6Error::UnsupportedSize(size));
        }
        let n = (size - 63) as usize;
        let nbits = n * n;
        let expected = nbits.div_ceil(6);
        if payload.len() != expected {
            return Err(Digraph6Error::BadLength { expected, found: payload.len() });
        }
        let mut adjacency = Vec::with_capacity(nbits);
        for (k, &b) in payload.iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(Digraph6Error::BadByte { offset: k + 2, byte: b });
            }
            let v = b - 63;
            for s in (0..6).rev() {
                if adjacency.len() < nbits {
                    adjacency.push(v >> s & 1 == 1);
                }
            }
        }
        Ok(Digraph6Record { line: line.to_vec(), n, adjacency })
    }

    pub fn arc(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.n + j]
    }

    /// The closed, naturally labeled poset of the arcs.
    pub fn to_poset(&self) -> Result<Poset, Digraph6Error> {
        if self.n == 0 {
            return Err(PosetError::Empty.into());
        }
        if self.n > MAX_ELEMENTS {
            return Err(Digraph6Error::TooLarge { n: self.n });
        }
        let mut reach = [0 as Mask; MAX_ELEMENTS];
        for (i, r) in reach.iter_mut().enumerate().take(self.n) {
            for j in 0..self.n {
                if self.arc(i, j) {
                    *r |= bit(j);
                }
            }
        }
        Ok(crate::poset::close_and_normalize(self.n, reach)?)
    }
}

pub fn parse_digraph6(line: &[u8]) -> Result<Poset, Digraph6Error> {
    Digraph6Record::parse(line)?.to_poset()
}

/// Encodes the full (transitively closed) strict relation.
pub fn encode_digraph6(poset: &Poset) -> String {
    let n = poset.len();
    let mut out = String::with_capacity(2 + (n * n).div_ceil(6));
    out.push('&');
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for i in 0..n {
        for j in 0..n {
            acc = acc << 1 | poset.less(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: Digraph6Error,
    },
    #[error("line {line}: {source}")]
    Io {
        line: usize,
        #[source]
        source: io::Error,
    },
}

impl ReadError {
    pub fn line(&self) -> usize {
        match self {
            ReadError::Parse { line, .. } | ReadError::Io { line, .. } => *line,
        }
    }
}

/// Streams posets from newline-separated digraph6 records. An optional
/// `>>digraph6<<` header on the first line is skipped; blank lines are ignored.
pub struct Digraph6Reader<R> {
    lines: io::Split<R>,
    line_no: usize,
}

impl<R: BufRead> Digraph6Reader<R> {
    pub fn new(reader: R) -> Self {
        Digraph6Reader { lines: reader.split(b'\n'), line_no: 0 }
    }
}

pub fn read_digraph6_file(path: impl AsRef<Path>) -> io::Result<Digraph6Reader<BufReader<File>>> {
    Ok(Digraph6Reader::new(BufReader::new(File::open(path)?)))
}

impl<R: BufRead> Iterator for Digraph6Reader<R> {
    type Item = Result<Poset, ReadError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let raw = match self.lines.next()? {
                Ok(raw) => raw,
                Err(source) => return Some(Err(ReadError::Io { line: self.line_no + 1, source })),
            };
            self.line_no += 1;
            let mut line: &[u8] = &raw;
            while let [rest @ .., b'\r' | b' ' | b'\t'] = line {
                line = rest;
            }
            if self.line_no == 1 {
                line = line.strip_prefix(DIGRAPH6_HEADER.as_bytes()).unwrap_or(line);
            }
            if line.is_empty() {
                continue;
            }
            let line_no = self.line_no;
            return Some(parse_digraph6(line).map_err(|source| ReadError::Parse { line: line_no, source }));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    #[test]
    fn two_element_records() {
        let a = parse_digraph6(b"&A?").unwrap();
        assert_eq!(a, Poset::antichain(2).unwrap());
        let c = parse_digraph6(b"&AO").unwrap();
        assert_eq!(c, Poset::chain(2).unwrap());
        assert_eq!(encode_digraph6(&c), "&AO");
        assert_eq!(encode_digraph6(&a), "&A?");
    }

    #[test]
    fn header_and_length_errors() {
        assert_eq!(parse_digraph6(b"A?"), Err(Digraph6Error::BadHeader));
        assert_eq!(parse_digraph6(b""), Err(Digraph6Error::BadHeader));
        assert_eq!(parse_digraph6(b"&A"), Err(Digraph6Error::BadLength { expected: 1, found: 0 }));
        assert_eq!(parse_digraph6(b"&A??"), Err(Digraph6Error::BadLength { expected: 1, found: 2 }));
        assert_eq!(parse_digraph6(b"&A "), Err(Digraph6Error::BadByte { offset: 2, byte: b' ' }));
        assert_eq!(parse_digraph6(b"&~"), Err(Digraph6Error::UnsupportedSize(126)));
        assert_eq!(parse_digraph6(b"&?"), Err(Digraph6Error::Poset(PosetError::Empty)));
        // n = 17, 289 bits = 49 bytes
        let big = format!("&P{}", "?".repeat(49));
        assert_eq!(parse_digraph6(big.as_bytes()), Err(Digraph6Error::TooLarge { n: 17 }));
    }

    #[test]
    fn cycle_and_loop_rejected() {
        // 0->1, 1->0: bits 0110 -> 011000 = 24
        let two_cycle = [b'&', b'A', 24 + 63];
        assert!(parse_digraph6(&two_cycle).unwrap_err().is_cyclic());
        // loop at 0: bits 1000 -> 100000 = 32
        let looped = [b'&', b'A', 32 + 63];
        assert_eq!(parse_digraph6(&looped), Err(Digraph6Error::Poset(PosetError::ReflexiveInput(0))));
    }

    #[test]
    fn covers_and_closures_parse_alike() {
        // 3-chain as covers only: bits 010 001 000 -> 010001 000000
        let covers = [b'&', b'B', 17 + 63, 63];
        let closed = encode_digraph6(&Poset::chain(3).unwrap());
        assert_eq!(parse_digraph6(&covers).unwrap(), parse_digraph6(closed.as_bytes()).unwrap());
    }

    #[test]
    fn reader_skips_header_and_blank_lines() {
        let data = b">>digraph6<<&A?\n&AO\r\n\n";
        let got: Vec<_> = Digraph6Reader::new(Cursor::new(&data[..])).collect::<Result<_, _>>().unwrap();
        assert_eq!(got, vec![Poset::antichain(2).unwrap(), Poset::chain(2).unwrap()]);

        let separate = b">>digraph6<<\n&A?\n";
        assert_eq!(Digraph6Reader::new(Cursor::new(&separate[..])).count(), 1);
        assert_eq!(Digraph6Reader::new(Cursor::new(&b""[..])).count(), 0);
    }

    #[test]
    fn reader_reports_line_numbers() {
        let data = b"&A?\nA?\n";
        let results: Vec<_> = Digraph6Reader::new(Cursor::new(&data[..])).collect();
        assert!(results[0].is_ok());
        let err = results[1].as_ref().unwrap_err();
        assert_eq!(err.line(), 2);
        assert!(err.to_string().starts_with("line 2:"));
    }
}
