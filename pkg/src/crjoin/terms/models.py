"""
λ-term models for crjoin.

Terms are stored locally nameless: bound variables are de Bruijn indices
(``Bound``), free variables keep their names (``Var``). α-equivalent terms
are therefore structurally equal, and binder names survive only as printing
hints. Each node caches its size, redex count, loose-index depth and a
structural digest when it is built, so none of these ever needs a traversal.
"""

from dataclasses import dataclass, field
from enum import IntEnum
from typing import FrozenSet, Iterable, Iterator, List, Tuple


class Branch(IntEnum):
    """One step of a position path. Order drives lexicographic tie-breaks."""

    FUN = 0
    ARG = 1
    BODY = 2

    @property
    def label(self) -> str:
        return _BRANCH_LABELS[self]

    @property
    def letter(self) -> str:
        return _BRANCH_LABELS[self][0]


_BRANCH_LABELS = {Branch.FUN: "Fun", Branch.ARG: "Arg", Branch.BODY: "Body"}
_LETTER_BRANCHES = {"F": Branch.FUN, "A": Branch.ARG, "B": Branch.BODY}
_LABEL_BRANCHES = {label: branch for branch, label in _BRANCH_LABELS.items()}

Position = Tuple[Branch, ...]
ROOT: Position = ()


def format_position(position: Position) -> str:
    """Render a position as ``Fun.Body`` (``root`` for the empty path)."""
    if not position:
        return "root"
    return ".".join(branch.label for branch in position)


def position_letters(position: Position) -> str:
    """Compact step-letter form, e.g. ``FBA``; empty for the root."""
    return "".join(branch.letter for branch in position)


def parse_position(text: str) -> Position:
    """Parse either the dotted or the step-letter rendering of a position."""
    text = text.strip()
    if text in ("", "root"):
        return ROOT
    if "." in text or text in _LABEL_BRANCHES:
        try:
            return tuple(_LABEL_BRANCHES[part] for part in text.split("."))
        except KeyError as exc:
            raise ValueError(f"Unknown position step {exc.args[0]!r}") from None
    try:
        return tuple(_LETTER_BRANCHES[letter] for letter in text)
    except KeyError as exc:
        raise ValueError(f"Unknown position step {exc.args[0]!r}") from None


class Term:
    """Base class of λ-terms. Instances are immutable and shareable."""

    __slots__ = ()

    def __eq__(self, other):
        if not isinstance(other, Term):
            return NotImplemented
        return structurally_equal(self, other)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return self.digest

    def __repr__(self):
        from ..syntax.printer import print_term

        return f"{type(self).__name__}<{print_term(self)}>"

    def __str__(self):
        from ..syntax.printer import print_term

        return print_term(self)


@dataclass(frozen=True, eq=False, repr=False, slots=True)
class Var(Term):
    """Free variable."""

    name: str
    size: int = field(init=False)
    redex_count: int = field(init=False)
    loose: int = field(init=False)
    digest: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "size", 1)
        object.__setattr__(self, "redex_count", 0)
        object.__setattr__(self, "loose", 0)
        object.__setattr__(self, "digest", hash(("var", self.name)))


@dataclass(frozen=True, eq=False, repr=False, slots=True)
class Bound(Term):
    """Bound variable as a de Bruijn index (0 = nearest binder)."""

    index: int
    size: int = field(init=False)
    redex_count: int = field(init=False)
    loose: int = field(init=False)
    digest: int = field(init=False)

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("de Bruijn index cannot be negative")
        object.__setattr__(self, "size", 1)
        object.__setattr__(self, "redex_count", 0)
        object.__setattr__(self, "loose", self.index + 1)
        object.__setattr__(self, "digest", hash(("bound", self.index)))


@dataclass(frozen=True, eq=False, repr=False, slots=True)
class Lam(Term):
    """Abstraction. ``hint`` is the preferred binder name when printing."""

    body: Term
    hint: str = "x"
    size: int = field(init=False)
    redex_count: int = field(init=False)
    loose: int = field(init=False)
    digest: int = field(init=False)

    def __post_init__(self):
        body = self.body
        object.__setattr__(self, "size", 1 + body.size)
        object.__setattr__(self, "redex_count", body.redex_count)
        object.__setattr__(self, "loose", max(0, body.loose - 1))
        object.__setattr__(self, "digest", hash(("lam", body.digest)))


@dataclass(frozen=True, eq=False, repr=False, slots=True)
class App(Term):
    """Application."""

    fun: Term
    arg: Term
    size: int = field(init=False)
    redex_count: int = field(init=False)
    loose: int = field(init=False)
    digest: int = field(init=False)

    def __post_init__(self):
        fun, arg = self.fun, self.arg
        is_redex = 1 if isinstance(fun, Lam) else 0
        object.__setattr__(self, "size", 1 + fun.size + arg.size)
        object.__setattr__(self, "redex_count", fun.redex_count + arg.redex_count + is_redex)
        object.__setattr__(self, "loose", max(fun.loose, arg.loose))
        object.__setattr__(self, "digest", hash(("app", fun.digest, arg.digest)))

    @property
    def is_redex(self) -> bool:
        return isinstance(self.fun, Lam)


def structurally_equal(a: Term, b: Term) -> bool:
    """Structural equality of nameless terms, i.e. α-equality.

    Iterative so that arbitrarily deep terms compare without recursion.
    """
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if x is y:
            continue
        if type(x) is not type(y) or x.digest != y.digest or x.size != y.size:
            return False
        if isinstance(x, App):
            stack.append((x.arg, y.arg))
            stack.append((x.fun, y.fun))
        elif isinstance(x, Lam):
            stack.append((x.body, y.body))
        elif isinstance(x, Var):
            if x.name != y.name:
                return False
        elif x.index != y.index:
            return False
    return True


@dataclass(frozen=True)
class RedexSet:
    """A set of redex positions, iterated in lexicographic order."""

    positions: FrozenSet[Position] = frozenset()

    @classmethod
    def of(cls, positions: Iterable[Position]) -> "RedexSet":
        return cls(frozenset(tuple(p) for p in positions))

    def ordered(self) -> List[Position]:
        return sorted(self.positions)

    def __iter__(self) -> Iterator[Position]:
        return iter(self.ordered())

    def __len__(self) -> int:
        return len(self.positions)

    def __contains__(self, position) -> bool:
        return tuple(position) in self.positions

    def __bool__(self) -> bool:
        return bool(self.positions)

    def without(self, position: Position) -> "RedexSet":
        return RedexSet(self.positions - {position})


EMPTY_REDEXES = RedexSet()
