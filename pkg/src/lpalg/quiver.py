"""Finite quivers, their double quivers, and words over the double alphabet.

Paths are written right to left: the word ``b * a`` means "apply ``a``, then
``b``".  Internally a :class:`Word` stores its letters in *application order*,
so ``b * a`` is held as ``(a, b)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class QuiverError(ValueError):
    pass


class Letter(NamedTuple):
    """A letter of the double quiver: a real arrow or its ghost."""

    arrow: str
    ghost: bool = False

    def star(self) -> "Letter":
        return Letter(self.arrow, not self.ghost)

    def __str__(self) -> str:
        return self.arrow + "'" if self.ghost else self.arrow


class Word(NamedTuple):
    """A composable word; ``letters`` are in application order."""

    letters: tuple[Letter, ...]
    source: str
    target: str

    def __len__(self) -> int:  # type: ignore[override]
        return len(self.letters)

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    @property
    def is_path(self) -> bool:
        return not any(l.ghost for l in self.letters)

    @property
    def degree(self) -> int:
        return sum(-1 if l.ghost else 1 for l in self.letters)


def word_key(w: Word) -> tuple:
    """Canonical ordering: length, then letters, then vertex for idempotents."""
    return (len(w.letters), w.letters, w.source)


def vertex_word(v: str) -> Word:
    return Word((), v, v)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True, eq=False)
class Quiver:
    """A validated finite quiver with a chosen special arrow at each regular vertex.

    Build instances with :func:`validate`; the constructor does not check
    anything.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    special: Mapping[str, str]
    _src: dict = field(init=False, repr=False)
    _tgt: dict = field(init=False, repr=False)
    _out: dict = field(init=False, repr=False)

    def __post_init__(self):
        src, tgt = {}, {}
        out: dict[str, list[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            src[Letter(a.name, False)] = a.source
            tgt[Letter(a.name, False)] = a.target
            src[Letter(a.name, True)] = a.target
            tgt[Letter(a.name, True)] = a.source
            out[a.source].append(a)
        object.__setattr__(self, "_src", src)
        object.__setattr__(self, "_tgt", tgt)
        object.__setattr__(self, "_out", {v: tuple(x) for v, x in out.items()})

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return (self.vertices, self.arrows, dict(self.special)) == (
            other.vertices, other.arrows, dict(other.special))

    def __hash__(self):
        return hash((self.vertices, self.arrows, tuple(sorted(self.special.items()))))

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def has_arrow(self, name: str) -> bool:
        return Letter(name) in self._src

    def source(self, letter: Letter) -> str:
        return self._src[letter]

    def target(self, letter: Letter) -> str:
        return self._tgt[letter]

    def out_arrows(self, v: str) -> tuple[Arrow, ...]:
        return self._out[v]

    def in_arrows(self, v: str) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.target == v)

    def is_regular(self, v: str) -> bool:
        return bool(self._out[v])

    def vertex_class(self, v: str) -> str:
        return "regular" if self._out[v] else "sink"

    @property
    def regular_vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self._out[v])

    @property
    def sinks(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if not self._out[v])

    def special_letter(self, v: str) -> Letter | None:
        name = self.special.get(v)
        return None if name is None else Letter(name, False)

    def is_special(self, letter: Letter) -> bool:
        return not letter.ghost and self.special.get(self._src[letter]) == letter.arrow

    def letters(self) -> list[Letter]:
        """The double alphabet in canonical order (real before ghost)."""
        return sorted(Letter(a.name, g) for a in self.arrows for g in (False, True))

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        stack = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for a in self._out[v]:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    stack.append(a.target)
        return seen == len(self.vertices)

    def components(self) -> list[set[str]]:
        """Connected components of the underlying undirected graph."""
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a in self.arrows:
            parent[find(a.source)] = find(a.target)
        groups: dict[str, set[str]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), set()).add(v)
        return list(groups.values())

    # words

    def word(self, letters: Iterable[Letter], vertex: str | None = None) -> Word:
        """Build a word from letters in application order, checking composability."""
        letters = tuple(letters)
        if not letters:
            if vertex is None or vertex not in self._out:
                raise QuiverError("a trivial word needs a vertex of the quiver")
            return Word((), vertex, vertex)
        for l in letters:
            if l not in self._src:
                raise QuiverError(f"unknown arrow {l.arrow!r}")
        for x, y in zip(letters, letters[1:]):
            if self._tgt[x] != self._src[y]:
                raise QuiverError(f"letters {x} and {y} are not composable")
        return Word(letters, self._src[letters[0]], self._tgt[letters[-1]])

    def letter_word(self, letter: Letter) -> Word:
        return Word((letter,), self._src[letter], self._tgt[letter])

    def concat(self, later: Word, earlier: Word) -> Word | None:
        """The product ``later * earlier``, or None when not composable."""
        if later.source != earlier.target:
            return None
        return Word(earlier.letters + later.letters, earlier.source, later.target)

    def paths(self, max_len: int) -> list[Word]:
        """All paths (ghost-free words) of length <= max_len, trivial ones included."""
        layer = [vertex_word(v) for v in self.vertices]
        found = list(layer)
        for _ in range(max_len):
            nxt = []
            for p in layer:
                for a in self._out[p.target]:
                    nxt.append(Word(p.letters + (Letter(a.name),), p.source, a.target))
            found.extend(nxt)
            layer = nxt
            if not layer:
                break
        return found


def ghost(w: Word) -> Word:
    """p* for a path p; trivial words are fixed."""
    if not w.is_path:
        raise QuiverError("ghost() takes a path without ghost letters")
    return star(w)


def star(w: Word) -> Word:
    """The involution extending ghost() to all words: reverse and swap real/ghost."""
    return Word(tuple(l.star() for l in reversed(w.letters)), w.target, w.source)


def double_quiver(q: Quiver) -> dict[Letter, tuple[str, str]]:
    """The double alphabet with (source, target) of every letter."""
    return {l: (q.source(l), q.target(l)) for l in q.letters()}


def validate(raw) -> Quiver:
    """Validate a raw description and fill in default special arrows.

    ``raw`` is either a :class:`Quiver` or a mapping with keys ``vertices``
    (names), ``arrows`` (``(name, source, target)`` triples or :class:`Arrow`)
    and optionally ``special`` (vertex -> arrow name).
    """
    if isinstance(raw, Quiver):
        raw = {"vertices": raw.vertices, "arrows": raw.arrows, "special": raw.special}
    vertices = tuple(raw.get("vertices", ()))
    arrows = []
    for a in raw.get("arrows", ()):
        arrows.append(a if isinstance(a, Arrow) else Arrow(*a))
    special = dict(raw.get("special") or {})

    for name in vertices:
        if not isinstance(name, str) or not IDENT.match(name):
            raise QuiverError(f"invalid vertex name {name!r}")
    if len(set(vertices)) != len(vertices):
        dup = next(v for v in vertices if vertices.count(v) > 1)
        raise QuiverError(f"duplicate vertex {dup!r}")
    vset = set(vertices)
    names = set()
    for a in arrows:
        if not isinstance(a.name, str) or not IDENT.match(a.name):
            raise QuiverError(f"invalid arrow name {a.name!r}")
        if a.name in names:
            raise QuiverError(f"duplicate arrow {a.name!r}")
        names.add(a.name)
        for end in (a.source, a.target):
            if end not in vset:
                raise QuiverError(f"arrow {a.name!r} has undeclared endpoint {end!r}")

    out: dict[str, list[str]] = {v: [] for v in vertices}
    for a in arrows:
        out[a.source].append(a.name)
    for v, name in special.items():
        if v not in vset:
            raise QuiverError(f"special arrow declared at unknown vertex {v!r}")
        if not out[v]:
            raise QuiverError(f"special arrow declared at sink {v!r}")
        if name not in out[v]:
            raise QuiverError(f"special arrow {name!r} does not start at {v!r}")
    filled = {}
    for v in vertices:
        if out[v]:
            filled[v] = special.get(v, min(out[v]))
    return Quiver(vertices, tuple(arrows), filled)
