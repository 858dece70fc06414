use super::cnf::CnfGrammar;
use crate::oracle::Membership;
use crate::words::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(size: usize) -> Self {
        BitSet(vec![0; size.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }
}

/// Recognition table: `cell(start, len)` holds the nonterminals deriving
/// `w[start..start + len]`.
struct Table {
    n: usize,
    cells: Vec<BitSet>,
}

impl Table {
    fn idx(&self, start: usize, len: usize) -> usize {
        (len - 1) * self.n + start
    }

    fn cell(&self, start: usize, len: usize) -> &BitSet {
        &self.cells[self.idx(start, len)]
    }

    fn build(g: &CnfGrammar, w: &Word) -> Option<Table> {
        let n = w.len();
        let v = g.nonterminal_count();
        let mut table = Table {
            n,
            cells: vec![BitSet::new(v); n * n],
        };
        for (i, letter) in w.iter().enumerate() {
            let idx = table.idx(i, 1);
            for &(a, l) in g.terminal_rules() {
                if l == letter {
                    table.cells[idx].insert(a);
                }
            }
            if table.cells[idx].is_empty() {
                return None;
            }
        }
        for len in 2..=n {
            for start in 0..=n - len {
                let mut acc = BitSet::new(v);
                for split in 1..len {
                    let left = table.cell(start, split);
                    let right = table.cell(start + split, len - split);
                    if left.is_empty() || right.is_empty() {
                        continue;
                    }
                    for &(a, b, c) in g.binary_rules() {
                        if left.contains(b) && right.contains(c) {
                            acc.insert(a);
                        }
                    }
                }
                let idx = table.idx(start, len);
                table.cells[idx] = acc;
            }
        }
        Some(table)
    }
}

/// CYK membership. Words using letters outside the grammar's terminals
/// are rejected, not reported as errors.
pub fn cyk_member(g: &CnfGrammar, w: &Word) -> bool {
    if w.is_empty() {
        return g.accepts_empty();
    }
    if w.iter().any(|l| !g.terminals().contains(&l)) {
        return false;
    }
    match Table::build(g, w) {
        Some(table) => table.cell(0, w.len()).contains(g.start()),
        None => false,
    }
}

impl Membership for CnfGrammar {
    fn contains(&self, w: &Word) -> bool {
        cyk_member(self, w)
    }
}

/// A node of a binary derivation tree; `span` is a half-open letter range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseNode {
    pub label: usize,
    pub span: (usize, usize),
    pub children: Option<(usize, usize)>,
}

/// Derivation tree stored as an arena; node 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseTree {
    pub nodes: Vec<ParseNode>,
}

impl ParseTree {
    pub fn root(&self) -> &ParseNode {
        &self.nodes[0]
    }

    /// Number of nonterminal nodes on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        self.longest_path().len()
    }

    /// Node indices of the leftmost longest root-to-leaf path.
    pub fn longest_path(&self) -> Vec<usize> {
        let mut heights = vec![0usize; self.nodes.len()];
        // Children are always pushed after their parent.
        for idx in (0..self.nodes.len()).rev() {
            heights[idx] = 1 + match self.nodes[idx].children {
                Some((l, r)) => heights[l].max(heights[r]),
                None => 0,
            };
        }
        let mut path = vec![0];
        let mut cur = 0;
        while let Some((l, r)) = self.nodes[cur].children {
            cur = if heights[l] >= heights[r] { l } else { r };
            path.push(cur);
        }
        path
    }
}

/// Builds the leftmost derivation tree of a nonempty member: at each node
/// the smallest split and then the first rule (in rule order) is taken.
pub fn cyk_parse(g: &CnfGrammar, w: &Word) -> Option<ParseTree> {
    if w.is_empty() || !cyk_member(g, w) {
        return None;
    }
    let table = Table::build(g, w)?;
    let mut tree = ParseTree { nodes: Vec::new() };
    tree.nodes.push(ParseNode {
        label: g.start(),
        span: (0, w.len()),
        children: None,
    });
    let mut stack = vec![0usize];
    while let Some(idx) = stack.pop() {
        let ParseNode { label, span: (lo, hi), .. } = tree.nodes[idx];
        let len = hi - lo;
        if len == 1 {
            continue;
        }
        let (split, b, c) = (1..len)
            .find_map(|split| {
                let left = table.cell(lo, split);
                let right = table.cell(lo + split, len - split);
                g.binary_rules()
                    .iter()
                    .find(|&&(a, b, c)| a == label && left.contains(b) && right.contains(c))
                    .map(|&(_, b, c)| (split, b, c))
            })
            .expect("recognised cell has a derivation");
        let l = tree.nodes.len();
        tree.nodes.push(ParseNode {
            label: b,
            span: (lo, lo + split),
            children: None,
        });
        tree.nodes.push(ParseNode {
            label: c,
            span: (lo + split, hi),
            children: None,
        });
        tree.nodes[idx].children = Some((l, l + 1));
        stack.push(l + 1);
        stack.push(l);
    }
    Some(tree)
}
