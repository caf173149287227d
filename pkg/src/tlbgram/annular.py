"""Non-crossing chord diagrams in the annulus.

The annulus carries 2n marked points a_1..a_{2n} on the outer boundary,
numbered counter-clockwise.  A reference segment runs from the gap
between a_{2n} and a_1 to the inner boundary; each chord either avoids
it (flag w=0) or crosses it exactly once (w=1).  Chords wrapping the
core more than once are not diagrams here.

Planarity is decided in the universal cover (an infinite strip with the
points repeated with period 2n).  A chord (i, j, w=0) with i < j lifts
to the segments (i + 2nt, j + 2nt); a chord (i, j, w=1) begins at its
larger endpoint and passes through the gap, so it lifts to
(j + 2nt, i + 2n(t+1)).  Two chords cross iff some pair of lifts
interleaves, and since every lift spans less than one period it is
enough to test translates t in {-2..2} of one chord against the other
fixed at t=0.

The pairing of two diagrams glues them along the outer boundary and
counts the resulting loops: a loop whose total winding around the core
is zero is trivial (variable d), otherwise it wraps the core exactly
once (variable a).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from ._limits import guard
from .polynomials import BivariatePolynomial

_LIFT_RANGE = range(-2, 3)


def _lifted(i: int, j: int, w: int, n: int, t: int) -> tuple[int, int]:
    # lift of chord (i, j, w) shifted t periods; always returned with lo < hi
    per = 2 * n
    if w == 0:
        return (i + per * t, j + per * t)
    return (j + per * t, i + per * (t + 1))


def _chords_cross(c1, c2, n: int) -> bool:
    a, b = _lifted(*c1, n, 0)
    for t in _LIFT_RANGE:
        c, d = _lifted(*c2, n, t)
        inside = (a < c < b) + (a < d < b)
        if inside == 1:
            return True
    return False


def _validate_matching(n: int, chords) -> list[tuple[int, int, int]]:
    if n < 1:
        raise ValueError("need n >= 1")
    norm = []
    seen: set[int] = set()
    for chord in chords:
        i, j, w = chord
        if w not in (0, 1):
            raise ValueError(f"flag must be 0 or 1, got {w!r}")
        if not (1 <= i <= 2 * n and 1 <= j <= 2 * n) or i == j:
            raise ValueError(f"bad chord endpoints ({i}, {j}) for n={n}")
        if i > j:
            i, j = j, i
        if i in seen or j in seen:
            raise ValueError(f"point reused in chord ({i}, {j})")
        seen.update((i, j))
        norm.append((i, j, w))
    if len(seen) != 2 * n:
        raise ValueError("chords must match all 2n points")
    norm.sort()
    return norm


def is_noncrossing(n: int, chords) -> bool:
    """Whether a flagged matching is planar in the annulus.

    ``chords`` is any iterable of (i, j, w) triples forming a perfect
    matching of 1..2n; malformed input raises ValueError.
    """
    norm = _validate_matching(n, chords)
    return not any(
        _chords_cross(c1, c2, n) for c1, c2 in combinations(norm, 2)
    )


@dataclass(frozen=True, order=True)
class AnnularDiagram:
    """A planar flagged matching; chords normalized to i < j, sorted by i."""

    n: int
    chords: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        norm = tuple(_validate_matching(self.n, self.chords))
        object.__setattr__(self, "chords", norm)
        for c1, c2 in combinations(norm, 2):
            if _chords_cross(c1, c2, self.n):
                raise ValueError(f"chords {c1} and {c2} cross")

    def cut_crossings(self) -> int:
        """How many chords cross the reference segment."""
        return sum(w for _, _, w in self.chords)

    def partner_map(self) -> dict[int, tuple[int, int]]:
        """point -> (partner, flag) lookup."""
        out = {}
        for i, j, w in self.chords:
            out[i] = (j, w)
            out[j] = (i, w)
        return out

    def canonical_key(self) -> tuple:
        """Sort key: (partner, flag) read off at successive unmatched points."""
        look = self.partner_map()
        seen: set[int] = set()
        key = []
        for p in range(1, 2 * self.n + 1):
            if p in seen:
                continue
            q, w = look[p]
            key.append((q, w))
            seen.update((p, q))
        return tuple(key)

    def to_text(self) -> str:
        body = ",".join(f"({i},{j},w={w})" for i, j, w in self.chords)
        return f"n={self.n};{body}"

    @classmethod
    def from_text(cls, text: str) -> "AnnularDiagram":
        head, _, body = text.strip().partition(";")
        if not head.startswith("n="):
            raise ValueError(f"bad diagram header: {head!r}")
        n = int(head[2:])
        chords = []
        if body:
            for piece in body.split("),("):
                piece = piece.strip().lstrip("(").rstrip(")")
                i_s, j_s, w_s = piece.split(",")
                if not w_s.startswith("w="):
                    raise ValueError(f"bad chord: {piece!r}")
                chords.append((int(i_s), int(j_s), int(w_s[2:])))
        return cls(n, tuple(chords))

    def to_json_obj(self) -> list[dict]:
        return [{"i": i, "j": j, "w": w} for i, j, w in self.chords]


def diagram_from_marks(n: int, marks, phase2_chords: int = 0) -> AnnularDiagram:
    """Build a diagram from a set of marked points.

    Phase 1 repeatedly draws, in rounds, a w=0 chord from each marked
    surviving point to its unmarked cyclic successor among the survivors
    (a draw that wraps past the gap gets w=1 instead); drawn endpoints
    are removed.  Phase 2 then joins the outermost surviving pair with a
    w=1 chord, ``phase2_chords`` times, consuming everything left.
    """
    marks = set(marks)
    assert all(1 <= p <= 2 * n for p in marks)
    assert len(marks) + phase2_chords == n
    surviving = list(range(1, 2 * n + 1))
    chords: list[tuple[int, int, int]] = []
    while marks:
        m = len(surviving)
        drawn = []
        for idx, p in enumerate(surviving):
            if p in marks:
                q = surviving[(idx + 1) % m]
                if q not in marks:
                    drawn.append((p, q, idx + 1 == m))
        assert drawn, "greedy pairing stalled"
        used = set()
        for p, q, wraps in drawn:
            used.update((p, q))
            if wraps:
                # begins at the larger endpoint and crosses the gap
                chords.append((q, p, 1))
            else:
                chords.append((p, q, 0))
        surviving = [x for x in surviving if x not in used]
        marks -= used
    assert len(surviving) == 2 * phase2_chords
    while surviving:
        chords.append((surviving[0], surviving[-1], 1))
        surviving = surviving[1:-1]
    return AnnularDiagram(n, tuple(chords))


@lru_cache(maxsize=None)
def enumerate_diagrams(n: int) -> tuple[AnnularDiagram, ...]:
    """All diagrams on 2n points, canonically ordered; there are C(2n, n)."""
    guard(1 <= n <= 7, f"enumerate_diagrams tested for 1 <= n <= 7, got n={n}")
    out = [
        diagram_from_marks(n, marks)
        for marks in combinations(range(1, 2 * n + 1), n)
    ]
    out.sort(key=AnnularDiagram.canonical_key)
    assert len(set(out)) == comb(2 * n, n)
    return tuple(out)


@dataclass(frozen=True)
class PairingValue:
    """Evaluation of the bilinear form on two diagrams: a^m * d^t."""

    nontrivial: int
    trivial: int

    def as_polynomial(self) -> BivariatePolynomial:
        return BivariatePolynomial.monomial(self.nontrivial, self.trivial)


def pair(d1: AnnularDiagram, d2: AnnularDiagram) -> PairingValue:
    """Glue two diagrams along the outer boundary and sort the loops.

    Winding is accumulated chord by chord: traversing a w=1 chord from
    its larger endpoint to its smaller one passes the gap forward (+1),
    the reverse passes it backward (-1).  The same rule applies in both
    diagrams because regluing preserves each point's angular position.
    """
    if d1.n != d2.n:
        raise ValueError("diagrams live on different numbers of points")
    look1 = d1.partner_map()
    look2 = d2.partner_map()
    visited: set[int] = set()
    nontrivial = trivial = 0
    for start in range(1, 2 * d1.n + 1):
        if start in visited:
            continue
        winding = 0
        p = start
        look = look1
        while True:
            visited.add(p)
            q, w = look[p]
            visited.add(q)
            if w:
                winding += 1 if p > q else -1
            look = look2 if look is look1 else look1
            p = q
            if p == start and look is look1:
                break
        assert winding in (-1, 0, 1)
        if winding:
            nontrivial += 1
        else:
            trivial += 1
    return PairingValue(nontrivial, trivial)
