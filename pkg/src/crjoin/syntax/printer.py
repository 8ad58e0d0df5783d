"""
Canonical surface rendering of terms.

Binders print as ``\\x. body`` with the body extending to the right, so an
abstraction needs parentheses unless it ends its enclosing context.
Application is left-associative. Binder names come from the stored hint,
primed until they clash neither with a free name nor with a binder in
scope, which makes the output parse back α-equal.
"""

import re
from collections import Counter
from typing import Dict, List, Set, Tuple, Union

from ..terms.core import free_names
from ..terms.models import App, Bound, Lam, Term, Var

IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9_']*\Z")

# Work items: literal text, a binder scope exit, or a term with its tail flag
_Item = Union[str, Tuple[Term, bool], None]


def _binder_name(hint: str, taken: Set[str], in_scope: Dict[str, int]) -> str:
    name = hint if IDENTIFIER.match(hint) else "x"
    while name in taken or in_scope.get(name):
        name += "'"
    return name


def print_term(t: Term) -> str:
    """
    Render ``t`` with minimal parentheses.

    Args:
        t: Term to print

    Returns:
        str: Text that ``parse_term`` maps back to an α-equal term
    """
    taken = free_names(t)
    in_scope: Dict[str, int] = Counter()
    scope: List[str] = []
    out: List[str] = []
    work: List[_Item] = [(t, True)]

    while work:
        item = work.pop()
        if item is None:
            in_scope[scope.pop()] -= 1
            continue
        if isinstance(item, str):
            out.append(item)
            continue

        node, tail = item
        if isinstance(node, Var):
            out.append(node.name)
        elif isinstance(node, Bound):
            out.append(scope[-1 - node.index])
        elif isinstance(node, Lam):
            name = _binder_name(node.hint, taken, in_scope)
            scope.append(name)
            in_scope[name] += 1
            out.append(f"\\{name}. ")
            work.append(None)
            work.append((node.body, True))
        else:
            pieces: List[_Item] = []
            if isinstance(node.fun, Lam):
                pieces += ["(", (node.fun, True), ")"]
            else:
                pieces.append((node.fun, False))
            pieces.append(" ")
            if isinstance(node.arg, App) or (isinstance(node.arg, Lam) and not tail):
                pieces += ["(", (node.arg, True), ")"]
            else:
                pieces.append((node.arg, tail))
            work.extend(reversed(pieces))

    return "".join(out)
