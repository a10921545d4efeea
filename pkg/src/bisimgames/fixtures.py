"""Built-in example systems, usable by name in the CLI and the service."""

from __future__ import annotations

from .lts import Lts, parse_aut

# Classic strong-bisimilarity counterexample: a.b + a.c versus a.(b + c).
# The left process commits to b or c on its first a-step, the right one
# keeps both options open.
CHOICE_AUT = """\
des (0,7,9)
#name 0 x0
#name 1 x1
#name 2 x2
#name 3 x3
#name 4 x4
#name 5 y0
#name 6 y1
#name 7 y2
#name 8 y3
(0,"a",1)
(0,"a",2)
(1,"b",3)
(2,"c",4)
(5,"a",6)
(6,"b",7)
(6,"c",8)
"""

# Branching-bisimilarity counterexample with a silent step: the left
# process can silently drift to a state offering b, the right process
# offers a and b only up front.
SILENT_AUT = """\
des (0,5,7)
#name 0 x0
#name 1 x1
#name 2 x2
#name 3 x3
#name 4 y0
#name 5 y1
#name 6 y2
(0,"a",1)
(0,"tau",2)
(2,"b",3)
(4,"a",5)
(4,"b",6)
"""

BUILTIN = {
    "choice": CHOICE_AUT,
    "silent": SILENT_AUT,
}


def builtin_lts(name: str) -> Lts:
    try:
        return parse_aut(BUILTIN[name])
    except KeyError:
        raise KeyError(f"unknown builtin system {name!r}; available: {sorted(BUILTIN)}") from None
