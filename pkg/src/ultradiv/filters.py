"""Bounded-universe filter model for divisibility.

A filter over the universe {1..bound} is represented by its core, the
intersection of a finite generating family: membership of a set is then
exactly containment of the core, so every notion here is decidable.
Singleton cores are the principal ultrafilters and serve as ground
truth; for general cores the upward and downward divisibility tests are
exposed separately (they provably agree in the principal case and the
library asserts nothing beyond that).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable

from .arith import NatSet, quotient_set

__all__ = [
    "FinFilter",
    "WindowOverflowError",
    "member",
    "divides_up",
    "divides_down",
    "image_filter",
    "product_member",
    "product_principal",
    "quotient_filter_view",
]


class WindowOverflowError(ValueError):
    """A result escaped the finite universe instead of being truncated."""


@dataclass(frozen=True)
class FinFilter:
    """Filter over {1..bound} given by a nonempty core set."""

    bound: int
    core: frozenset

    def __post_init__(self):
        object.__setattr__(self, "core", frozenset(self.core))
        if self.bound < 1:
            raise ValueError("universe bound must be >= 1")
        if not self.core:
            raise ValueError("filter core must be nonempty")
        for x in self.core:
            if not isinstance(x, int) or not 1 <= x <= self.bound:
                raise ValueError(f"core element {x!r} outside universe 1..{self.bound}")

    @classmethod
    def principal(cls, n: int, bound: int) -> "FinFilter":
        return cls(bound, frozenset((n,)))

    @property
    def is_ultra(self) -> bool:
        return len(self.core) == 1


def _same_universe(x: FinFilter, y: FinFilter) -> None:
    if x.bound != y.bound:
        raise ValueError(f"universe mismatch: {x.bound} vs {y.bound}")


def _check_in_universe(elems, bound: int) -> None:
    # a NatSet windowed inside the universe needs no O(|A|) max scan
    if isinstance(elems, NatSet) and elems.window is not None and elems.window <= bound:
        return
    if elems and max(elems) > bound:
        raise ValueError("set escapes the universe")


def member(f: FinFilter, A: Iterable[int]) -> bool:
    """A belongs to the filter iff A contains the core."""
    elems = A if isinstance(A, (set, frozenset)) else frozenset(A)
    _check_in_universe(elems, f.bound)
    return f.core <= elems


def divides_up(x: FinFilter, y: FinFilter) -> bool:
    """Upward-closure divisibility: core_y inside the multiples of core_x.

    Equivalent to up_closure(core_x, bound) >= core_y without
    materializing the closure: every core_y element has a divisor in
    core_x.
    """
    _same_universe(x, y)
    xc = x.core
    if len(xc) == 1:
        (a,) = xc
        for b in y.core:
            if b % a:
                return False
        return True
    return all(any(b % a == 0 for a in xc) for b in y.core)


def divides_down(x: FinFilter, y: FinFilter) -> bool:
    """Downward-closure divisibility: core_x inside the divisors of core_y."""
    _same_universe(x, y)
    yc = y.core
    if len(yc) == 1:
        (b,) = yc
        for a in x.core:
            if b % a:
                return False
        return True
    return all(any(b % a == 0 for b in yc) for a in x.core)


def image_filter(f: Callable[[int], int], x: FinFilter) -> FinFilter:
    """Push the filter forward along f: the image filter's core is f[core]."""
    img = frozenset(f(a) for a in x.core)
    for v in img:
        if not isinstance(v, int) or not 1 <= v <= x.bound:
            raise WindowOverflowError(f"image value {v!r} escapes universe 1..{x.bound}")
    return FinFilter(x.bound, img)


def product_member(A: Iterable[int], x: FinFilter, y: FinFilter) -> bool:
    """Membership of A in the filter product of x and y.

    A is in the product iff {n : A/n contains core_y} contains core_x;
    evaluated pointwise (b*n in A for all b in core_y, n in core_x)
    rather than by materializing quotient sets.
    """
    _same_universe(x, y)
    elems = A if isinstance(A, (set, frozenset)) else frozenset(A)
    _check_in_universe(elems, x.bound)
    yc = y.core
    for n in x.core:
        for b in yc:
            if b * n not in elems:
                return False
    return True


def product_principal(m: int, n: int, W: int, *, samples: int = 40, seed: int = 0) -> int:
    """Product of two principal ultrafilters inside the window: just m*n.

    Self-checks formula consistency on a battery of sample sets: every
    sampled A containing m*n is a product member, every sampled A
    missing it is not.
    """
    if m < 1 or n < 1:
        raise ValueError("principal indices must be >= 1")
    if m * n > W:
        raise WindowOverflowError(f"{m}*{n} overflows the window {W}")
    mn = m * n
    x = FinFilter.principal(m, W)
    y = FinFilter.principal(n, W)
    universe = frozenset(range(1, W + 1))
    battery: list[frozenset] = [
        frozenset((mn,)),
        universe,
        universe - {mn},
        frozenset(range(2, W + 1, 2)),
    ]
    rng = random.Random(seed)
    for _ in range(samples):
        size = rng.randrange(0, max(2, W // 2))
        A = set(rng.sample(range(1, W + 1), min(size, W)))
        if rng.random() < 0.5:
            A.add(mn)
        else:
            A.discard(mn)
        battery.append(frozenset(A))
    for A in battery:
        got = product_member(A, x, y)
        if got != (mn in A):
            raise AssertionError(
                f"product formula self-check failed for m={m}, n={n}, |A|={len(A)}"
            )
    return mn


def quotient_filter_view(A: Iterable[int], x: FinFilter, y: FinFilter) -> NatSet:
    """The inner set of the product formula: {n in universe : A/n >= core_y}.

    Exposed for inspection; product_member(A, x, y) iff this contains
    core_x.
    """
    _same_universe(x, y)
    elems = frozenset(A)
    hits = {
        n for n in range(1, x.bound + 1)
        if member(y, quotient_set(NatSet(elems, window=x.bound), n))
    }
    return NatSet(hits, window=x.bound)
