"""Penn-bracketed constituency trees: parsing, serialization, traversal.

Trees are immutable after construction and safe to share across readers.
Labels are opaque text; no fixed tagset is imposed here (the tag hierarchy
used for relaxed matching lives in :mod:`patternqa.unification`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class TreeFormatError(ValueError):
    """Malformed bracketed-tree input. ``offset`` is the 1-based character
    position at which the problem was detected."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class ParseTree:
    """A constituency tree node.

    A node carries a ``token`` iff it has no children (leaves store their
    surface form verbatim; their ``label`` equals the token). A preterminal
    is a node whose single child is a leaf (e.g. ``(NNP Dante)``).
    """

    label: str
    children: tuple["ParseTree", ...] = ()
    token: str | None = None

    def __post_init__(self):
        if (self.token is None) == (len(self.children) == 0):
            raise ValueError("a node has a token iff it has zero children")

    @property
    def is_leaf(self) -> bool:
        return self.token is not None

    @property
    def is_preterminal(self) -> bool:
        return len(self.children) == 1 and self.children[0].is_leaf


def leaf(token: str) -> ParseTree:
    return ParseTree(label=token, token=token)


def node(label: str, children) -> ParseTree:
    return ParseTree(label=label, children=tuple(children))


# Functional tag suffixes ("-SBJ") and numeric indices ("=2", "-1") are
# parser decoration; patterns must generalize across them. Labels that
# *start* with "-" (-NONE-, -LRB-) are left alone.
def strip_decorations(label: str) -> str:
    if len(label) > 1 and label[0] not in "-=":
        head = re.split(r"[-=]", label, maxsplit=1)[0]
        if head:
            return head
    return label


_ATOM = re.compile(r"[^()\s]+")


def parse_bracketed(text: str) -> ParseTree:
    """Parse one bracketed tree, e.g. ``(NP (NNP Dante))``.

    Raises :class:`TreeFormatError` (with a 1-based character offset) on
    unbalanced parentheses, a missing label after ``(``, or empty input.
    """
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def fail(message):
        raise TreeFormatError(message, pos + 1)

    def read_atom():
        nonlocal pos
        m = _ATOM.match(text, pos)
        if m is None:
            fail("expected a label or token")
        pos = m.end()
        return m.group()

    def read_tree():
        nonlocal pos
        skip_ws()
        if pos >= n:
            fail("unexpected end of input")
        if text[pos] != "(":
            fail("expected '('")
        pos += 1
        skip_ws()
        if pos >= n:
            fail("unexpected end of input")
        if text[pos] in "()":
            fail("empty label")
        label = strip_decorations(read_atom())
        children = []
        while True:
            skip_ws()
            if pos >= n:
                fail("unexpected end of input")
            ch = text[pos]
            if ch == ")":
                pos += 1
                break
            if ch == "(":
                children.append(read_tree())
            else:
                children.append(leaf(read_atom()))
        if not children:
            fail("node without children")
        return node(label, children)

    skip_ws()
    if pos >= n:
        fail("empty input")
    tree = read_tree()
    skip_ws()
    if pos < n:
        fail("trailing characters after tree")
    return tree


def serialize(tree: ParseTree) -> str:
    """Inverse of :func:`parse_bracketed`, modulo whitespace."""
    if tree.is_leaf:
        return tree.token
    inner = " ".join(serialize(c) for c in tree.children)
    return f"({tree.label} {inner})"


def leaves(tree: ParseTree) -> list[str]:
    """Left-to-right token sequence of the sentence under ``tree``."""
    out = []
    stack = [tree]
    while stack:
        cur = stack.pop()
        if cur.is_leaf:
            out.append(cur.token)
        else:
            stack.extend(reversed(cur.children))
    return out


def dfs_nodes(tree: ParseTree) -> list[ParseTree]:
    """Preorder (top-down, left-to-right, depth-first) node sequence.

    Every node is visited exactly once, root first, each node before its
    children, siblings left to right. Leaves are included; their label is
    their token.
    """
    out = []
    stack = [tree]
    while stack:
        cur = stack.pop()
        out.append(cur)
        stack.extend(reversed(cur.children))
    return out


def node_spans(tree: ParseTree) -> list[tuple[ParseTree, int, int]]:
    """Preorder list of ``(node, start, end)`` half-open leaf spans."""
    out = []

    def walk(cur, start):
        if cur.is_leaf:
            out.append((cur, start, start + 1))
            return start + 1
        entry = len(out)
        out.append(None)
        end = start
        for child in cur.children:
            end = walk(child, end)
        out[entry] = (cur, start, end)
        return end

    walk(tree, 0)
    return out


def preterminals(tree: ParseTree) -> list[ParseTree]:
    """Preterminal nodes in leaf order; their tokens concatenate to leaves()."""
    return [nd for nd in dfs_nodes(tree) if nd.is_preterminal]
