//! Newick trees for dendrograms.
//!
//! Leaves sit at height 0 and every internal node sits at its merge
//! resolution, so a branch length is the difference between the heights of
//! its two ends and every leaf is at distance `height` from the root. Each
//! internal node is also labeled with its resolution, which is what the
//! reader uses; branch lengths are only consulted when that label is
//! missing. The three-leaf tree merging `a, b` at 1 and `c` at 2 is
//! `((a:1,b:1)1:1,c:2)2;`.

use std::collections::{BTreeMap, HashMap};

use crate::dendrogram::{Dendrogram, Merge};
use crate::error::{Error, Result};
use crate::io::csv_matrix::format_number;

/// Writes the dendrogram as a Newick string terminated by `;`.
pub fn dendrogram_to_newick(d: &Dendrogram) -> String {
    let leaves = d.leaves();
    // subtree text and height, keyed by the sorted block
    let mut subtree: BTreeMap<Vec<usize>, (String, f64)> = leaves
        .iter()
        .enumerate()
        .map(|(i, l)| (vec![i], (quote(l), 0.0)))
        .collect();
    for merge in d.merges() {
        let mut children = Vec::with_capacity(merge.blocks.len());
        for block in &merge.blocks {
            let (text, h) = subtree.remove(block).expect("validated merge sequence");
            children.push(format!("{text}:{}", format_number(merge.resolution - h)));
        }
        let text = format!("({}){}", children.join(","), format_number(merge.resolution));
        subtree.insert(merge.merged(), (text, merge.resolution));
    }
    let (root, _) = subtree.into_values().next().expect("at least one leaf");
    format!("{root};")
}

fn quote(label: &str) -> String {
    let plain = !label.is_empty()
        && !label
            .chars()
            .any(|c| c.is_whitespace() || "()[]':;,".contains(c));
    if plain {
        label.to_owned()
    } else {
        format!("'{}'", label.replace('\'', "''"))
    }
}

#[derive(Debug)]
struct Node {
    label: Option<String>,
    length: Option<f64>,
    children: Vec<Node>,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(format!("newick offset {}", self.pos), message)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn node(&mut self) -> Result<Node> {
        let mut children = Vec::new();
        if self.eat('(') {
            loop {
                children.push(self.node()?);
                if self.eat(',') {
                    continue;
                }
                if self.eat(')') {
                    break;
                }
                return Err(self.err("expected `,` or `)`"));
            }
        }
        let label = self.label()?;
        let length = if self.eat(':') {
            Some(self.number()?)
        } else {
            None
        };
        Ok(Node {
            label,
            length,
            children,
        })
    }

    fn label(&mut self) -> Result<Option<String>> {
        self.skip_ws();
        if self.peek() == Some('\'') {
            self.pos += 1;
            let mut out = String::new();
            loop {
                match self.peek() {
                    None => return Err(self.err("unterminated quoted label")),
                    Some('\'') => {
                        self.pos += 1;
                        if self.peek() == Some('\'') {
                            out.push('\'');
                            self.pos += 1;
                        } else {
                            return Ok(Some(out));
                        }
                    }
                    Some(c) => {
                        out.push(c);
                        self.pos += c.len_utf8();
                    }
                }
            }
        }
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_whitespace() || "()[]':;,".contains(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        Ok((self.pos > start).then(|| self.text[start..self.pos].to_owned()))
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || "+-.eE".contains(c) || c.is_ascii_alphabetic() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        let raw = &self.text[start..self.pos];
        raw.parse()
            .map_err(|_| self.err(format!("`{raw}` is not a branch length")))
    }
}

/// Reads a Newick tree written by [`dendrogram_to_newick`] (or any ultrametric
/// tree with leaf labels). Leaves are ordered as in `leaf_order` when given,
/// otherwise in order of appearance. Internal nodes at the same height as
/// their parent are folded into a single multi-way merge.
pub fn dendrogram_from_newick(text: &str, leaf_order: Option<&[String]>) -> Result<Dendrogram> {
    let mut parser = Parser { text, pos: 0 };
    let root = parser.node()?;
    if !parser.eat(';') {
        return Err(parser.err("expected `;` after the tree"));
    }
    parser.skip_ws();
    if parser.pos != text.len() {
        return Err(parser.err("trailing characters after `;`"));
    }

    let mut appearance = Vec::new();
    collect_leaves(&root, &mut appearance)?;
    let leaves: Vec<String> = match leaf_order {
        Some(order) => {
            let mut a = appearance.clone();
            let mut b = order.to_vec();
            a.sort();
            b.sort();
            if a != b {
                return Err(Error::parse("newick", "leaf labels do not match the expected labels"));
            }
            order.to_vec()
        }
        None => appearance,
    };
    let index: HashMap<&str, usize> = leaves.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();

    let mut merges = Vec::new();
    build(&root, &index, &mut merges)?;
    merges.sort_by(|a: &Merge, b: &Merge| {
        a.resolution
            .total_cmp(&b.resolution)
            .then_with(|| a.merged()[0].cmp(&b.merged()[0]))
    });
    for m in &mut merges {
        m.blocks.sort_by_key(|b| b[0]);
    }
    Dendrogram::new(leaves, merges)
}

fn collect_leaves(node: &Node, out: &mut Vec<String>) -> Result<()> {
    if node.children.is_empty() {
        let label = node
            .label
            .clone()
            .ok_or_else(|| Error::parse("newick", "unlabeled leaf"))?;
        out.push(label);
    }
    for c in &node.children {
        collect_leaves(c, out)?;
    }
    Ok(())
}

/// Height of `node` and the sorted leaves below it; pushes one merge per
/// internal node after flattening same-height children.
fn build(node: &Node, index: &HashMap<&str, usize>, merges: &mut Vec<Merge>) -> Result<(f64, Vec<usize>)> {
    if node.children.is_empty() {
        let label = node.label.as_deref().unwrap_or_default();
        return Ok((0.0, vec![index[label]]));
    }
    let mut parts = Vec::with_capacity(node.children.len());
    for child in &node.children {
        let (h, leaves) = build(child, index, merges)?;
        parts.push((h, leaves, child.length));
    }
    let height = match node.label.as_deref() {
        Some(label) => label
            .parse::<f64>()
            .map_err(|_| Error::parse("newick", format!("internal label `{label}` is not a resolution")))?,
        None => {
            let (h, _, len) = &parts[0];
            h + len.ok_or_else(|| Error::parse("newick", "internal node without height or branch length"))?
        }
    };
    let mut blocks = Vec::with_capacity(parts.len());
    for (h, leaves, _) in parts {
        if h == height && leaves.len() > 1 {
            // fold the child's merge into this one
            let pos = merges
                .iter()
                .rposition(|m| m.resolution == height && m.merged() == leaves)
                .expect("child merge was pushed");
            blocks.extend(merges.remove(pos).blocks);
        } else {
            blocks.push(leaves);
        }
    }
    let merge = Merge {
        resolution: height,
        blocks,
    };
    let all = merge.merged();
    merges.push(merge);
    Ok((height, all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Ultrametric;

    fn abc() -> Dendrogram {
        let u = Ultrametric::new(
            ["a", "b", "c"],
            &[vec![0., 1., 2.], vec![1., 0., 2.], vec![2., 2., 0.]],
        )
        .unwrap();
        Dendrogram::from_ultrametric(&u)
    }

    #[test]
    fn writes_documented_example() {
        assert_eq!(dendrogram_to_newick(&abc()), "((a:1,b:1)1:1,c:2)2;");
        let u = Ultrametric::new(["p", "q"], &[vec![0., 3.], vec![3., 0.]]).unwrap();
        assert_eq!(dendrogram_to_newick(&Dendrogram::from_ultrametric(&u)), "(p:3,q:3)3;");
        let single = Ultrametric::new(["solo"], &[vec![0.]]).unwrap();
        assert_eq!(dendrogram_to_newick(&Dendrogram::from_ultrametric(&single)), "solo;");
    }

    #[test]
    fn reads_back() {
        let d = abc();
        let text = dendrogram_to_newick(&d);
        assert_eq!(dendrogram_from_newick(&text, None).unwrap(), d);
        assert_eq!(dendrogram_from_newick(&text, Some(d.leaves())).unwrap(), d);
    }

    #[test]
    fn heights_from_branch_lengths_and_binary_ties() {
        // no internal labels; a binary encoding of a three-way tie
        let d = dendrogram_from_newick("((a:2, b:2):0, c:2);", None).unwrap();
        assert_eq!(d.merges().len(), 1);
        assert_eq!(d.merges()[0].blocks, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(d.merges()[0].resolution, 2.0);
    }

    #[test]
    fn quoting() {
        let u = Ultrametric::new(["it's", "a b"], &[vec![0., 1.], vec![1., 0.]]).unwrap();
        let d = Dendrogram::from_ultrametric(&u);
        let text = dendrogram_to_newick(&d);
        assert_eq!(text, "('it''s':1,'a b':1)1;");
        assert_eq!(dendrogram_from_newick(&text, Some(d.leaves())).unwrap(), d);
    }

    #[test]
    fn malformed_input() {
        for bad in ["((a:1,b:1)1", "(a:1,b:1)1", "(a:1,b:1)x;", "(a:1,:1)1;", "(a:1 b:1)1;", "(a,b);"] {
            assert!(dendrogram_from_newick(bad, None).is_err(), "{bad}");
        }
        assert!(dendrogram_from_newick("(a:1,b:1)1;", Some(&["a".into(), "z".into()])).is_err());
    }
}
