//! Partition matroid file format.
//!
//! ```text
//! B N              # block count, element count
//! block_id capacity    (B lines)
//! element_id block_id  (N lines)
//! ```
//!
//! Blank lines and `#` comments are ignored. Block ids run over `0..B`,
//! element ids over `0..N`, and every element must be listed exactly once.

use std::io::BufRead;

use super::PartitionMatroid;
use crate::error::{Error, Result};

fn pair(line: &str, ln: usize) -> Result<(usize, usize)> {
    let mut toks = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        toks.next()
            .ok_or_else(|| Error::input(format!("line {ln}: missing {what}")))?
            .parse()
            .map_err(|_| Error::input(format!("line {ln}: cannot parse {what}")))
    };
    Ok((next("first field")?, next("second field")?))
}

pub fn read_partition_matroid<R: BufRead>(reader: R) -> Result<PartitionMatroid> {
    let mut lines = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim().to_string();
        if !body.is_empty() {
            lines.push((i + 1, body));
        }
    }
    let (hl, header) = lines.first().ok_or_else(|| Error::input("partition file is empty"))?;
    let (blocks, n) = pair(header, *hl)?;
    if lines.len() != 1 + blocks + n {
        return Err(Error::input(format!(
            "expected {} block lines and {} element lines, found {} lines",
            blocks,
            n,
            lines.len() - 1
        )));
    }
    let mut capacities = vec![usize::MAX; blocks];
    for (ln, line) in &lines[1..=blocks] {
        let (b, cap) = pair(line, *ln)?;
        if b >= blocks || capacities[b] != usize::MAX {
            return Err(Error::input(format!("line {ln}: bad or repeated block id {b}")));
        }
        capacities[b] = cap;
    }
    let mut block_of = vec![usize::MAX; n];
    for (ln, line) in &lines[1 + blocks..] {
        let (e, b) = pair(line, *ln)?;
        if e >= n || block_of[e] != usize::MAX {
            return Err(Error::input(format!("line {ln}: bad or repeated element id {e}")));
        }
        block_of[e] = b;
    }
    PartitionMatroid::new(block_of, capacities)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint::Matroid;
    use crate::ElementId;

    #[test]
    fn parses_two_blocks() {
        let text = "2 4\n0 1\n1 1\n0 0\n1 0\n2 1\n3 1\n";
        let p = read_partition_matroid(text.as_bytes()).unwrap();
        assert_eq!(p.rank(), 2);
        assert!(p.is_independent(&[ElementId(0), ElementId(2)]));
        assert!(!p.is_independent(&[ElementId(0), ElementId(1)]));
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(read_partition_matroid("".as_bytes()).is_err());
        assert!(read_partition_matroid("1 2\n0 1\n0 0\n".as_bytes()).is_err());
        assert!(read_partition_matroid("1 1\n0 1\n0 3\n".as_bytes()).is_err());
        assert!(read_partition_matroid("1 2\n0 1\n0 0\n0 0\n".as_bytes()).is_err());
    }
}
