"""Degree prescriptions: allowed integer sets and the J-family built from f."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def is_allowed(values: Iterable[int]) -> bool:
    vals = sorted(values)
    if not vals:
        return False
    return all(b - a <= 2 for a, b in zip(vals, vals[1:]))


@dataclass(frozen=True)
class AllowedSet:
    """A finite, nonempty integer set whose sorted gaps are at most 2."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        vals = tuple(sorted(set(self.values)))
        object.__setattr__(self, "values", vals)
        if not vals:
            raise ValueError("an allowed set cannot be empty")
        if not is_allowed(vals):
            raise ValueError(f"{vals} has a gap larger than 2")

    @classmethod
    def of(cls, *values: int) -> "AllowedSet":
        return cls(tuple(values))

    def __contains__(self, x: object) -> bool:
        return x in self.values

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def min(self) -> int:
        return self.values[0]

    @property
    def max(self) -> int:
        return self.values[-1]

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.values)) + "}"


# vertex id -> prescription; always covers every vertex of the graph it is used with
DegreeSpec = dict[int, AllowedSet]


def make_J(n: int) -> AllowedSet:
    """Odd integers 1..n, plus n itself when n is even."""
    if n < 1:
        raise ValueError("J_n needs n >= 1")
    vals = list(range(1, n + 1, 2))
    if n % 2 == 0:
        vals.append(n)
    return AllowedSet(tuple(vals))


def jf_star_floor(degv: int) -> int:
    """Largest odd integer strictly below ``-degv``."""
    low = -degv - 1
    return low if low % 2 else low - 1


def make_Jf_star(fv: int, degv: int) -> AllowedSet:
    """J_f(v) together with the negative odd integers, cut off below ``-degv``.

    Every colored degree at a vertex of degree ``degv`` is at least ``-degv``,
    so stopping at the first odd number under that bound changes no distance.
    """
    if fv < 1:
        raise ValueError("f(v) must be >= 1")
    if degv < 0:
        raise ValueError("degree must be >= 0")
    negatives = range(jf_star_floor(degv), 0, 2)
    return AllowedSet(tuple(negatives) + make_J(fv).values)


def dist(x: int, A: AllowedSet | Sequence[int]) -> int:
    vals = A.values if isinstance(A, AllowedSet) else sorted(A)
    i = bisect_left(vals, x)
    best = None
    if i < len(vals):
        best = vals[i] - x
    if i > 0:
        d = x - vals[i - 1]
        best = d if best is None else min(best, d)
    if best is None:
        raise ValueError("distance to an empty set")
    return best


def shift_set(A: AllowedSet, k: int) -> AllowedSet:
    return AllowedSet(tuple(a - k for a in A.values))


def hull(A: AllowedSet | Iterable[int]) -> tuple[int, int]:
    vals = A.values if isinstance(A, AllowedSet) else sorted(A)
    return vals[0], vals[-1]


def jf_spec(f: Sequence[int]) -> DegreeSpec:
    return {v: make_J(fv) for v, fv in enumerate(f)}


def jf_star_spec(f: Sequence[int], degrees: Sequence[int]) -> DegreeSpec:
    if len(f) != len(degrees):
        raise ValueError("f must give one value per vertex")
    return {v: make_Jf_star(fv, d) for v, (fv, d) in enumerate(zip(f, degrees))}
