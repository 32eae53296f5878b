//! Reader for the tree text grammar
//! `TREE := LABEL "<-" NODE`, `NODE := LABEL | GEN "(" NODE ("," NODE)* ")"`.

use super::{is_generator_char, GeneratorSet, Label, LabeledTree, Node};
use crate::error::{Error, Result};

struct Cursor<'a> {
    bytes: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{s}`")))
        }
    }

    /// A maximal run of name characters.
    fn token(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest.find(|c: char| !is_generator_char(c)).unwrap_or(rest.len());
        if len == 0 {
            return Err(Error::parse(start, "expected a label or generator name"));
        }
        self.pos += len;
        Ok((start, &rest[..len]))
    }
}

fn label_at(pos: usize, s: &str) -> Result<Label> {
    Label::new(s).map_err(|_| Error::parse(pos, format!("`{s}` is not a valid label")))
}

fn node(gens: &GeneratorSet, cur: &mut Cursor<'_>) -> Result<Node> {
    let (pos, tok) = cur.token()?;
    if cur.peek() == Some('(') {
        let g = gens.get(tok).ok_or_else(|| Error::UnknownGenerator(tok.to_string()))?;
        cur.expect("(")?;
        let mut children = vec![node(gens, cur)?];
        while cur.peek() == Some(',') {
            cur.expect(",")?;
            children.push(node(gens, cur)?);
        }
        cur.expect(")")?;
        if children.len() != g.arity {
            return Err(Error::ArityMismatch { name: tok.to_string(), arity: g.arity, given: children.len() });
        }
        return Ok(Node::Vertex(g.name.clone(), children));
    }
    match Label::new(tok) {
        Ok(l) => Ok(Node::Leaf(l)),
        Err(_) => match gens.get(tok) {
            Some(g) => Err(Error::ArityMismatch { name: tok.to_string(), arity: g.arity, given: 0 }),
            None => Err(Error::parse(pos, format!("`{tok}` is neither a label nor a generator"))),
        },
    }
}

pub(super) fn parse_tree(gens: &GeneratorSet, text: &str) -> Result<LabeledTree> {
    let mut cur = Cursor { bytes: text.as_bytes(), text, pos: 0 };
    cur.skip_ws();
    let start = cur.pos;
    let rest = &text[start..];
    let len = rest.find(|c: char| !super::is_label_char(c)).unwrap_or(rest.len());
    let root = label_at(start, &rest[..len])?;
    cur.pos += len;
    cur.expect("<-")?;
    let body = node(gens, &mut cur)?;
    cur.skip_ws();
    if cur.pos != text.len() {
        return Err(Error::parse(cur.pos, "trailing input"));
    }
    Ok(LabeledTree::new(root, body))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> GeneratorSet {
        GeneratorSet::binary()
    }

    #[test]
    fn simple_tree() {
        let t = LabeledTree::parse(&g(), "x<-*(x,y)").unwrap();
        assert_eq!(t.internal_count(), 1);
        assert_eq!(t.leaves().iter().map(|l| l.as_str()).collect::<Vec<_>>(), ["x", "y"]);
        assert_eq!(t.root().as_str(), "x");
    }

    #[test]
    fn degenerate_tree() {
        let t = LabeledTree::parse(&g(), "z<-z").unwrap();
        assert_eq!(t.internal_count(), 0);
        assert_eq!(t.leaf_count(), 1);
        assert_eq!(t.root().as_str(), "z");
    }

    #[test]
    fn whitespace_is_insignificant() {
        let t = LabeledTree::parse(&g(), "  x <- * ( x , *(y,\n y) ) ").unwrap();
        assert_eq!(t.key(), "x<-*(x,*(y,y))");
    }

    #[test]
    fn errors() {
        assert!(matches!(LabeledTree::parse(&g(), "x<-*(x,*)"), Err(Error::ArityMismatch { given: 0, .. })));
        assert!(matches!(LabeledTree::parse(&g(), "x<-*(x,y,z)"), Err(Error::ArityMismatch { given: 3, .. })));
        assert!(matches!(LabeledTree::parse(&g(), "x<-m(x,y)"), Err(Error::UnknownGenerator(_))));
        assert!(matches!(LabeledTree::parse(&g(), "x<-*(x,y"), Err(Error::Parse { .. })));
        assert!(matches!(LabeledTree::parse(&g(), "x<-*(x,y))"), Err(Error::Parse { .. })));
        assert!(matches!(LabeledTree::parse(&g(), "<-x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn general_arity() {
        let gens = GeneratorSet::parse("*:2,m:3").unwrap();
        let t = LabeledTree::parse(&gens, "a<-m(a,*(b,c),d)").unwrap();
        assert_eq!(t.internal_count(), 2);
        assert_eq!(t.leaf_count(), 4);
    }
}
