"""Exhaustive pattern enumerators shared by the test suite."""

from itertools import product as iproduct

from ultradiv.patterns import Pattern, sigma


def single_label_structs(budget):
    """All nonempty-or-empty single-label structures ((k, n), ...) with
    sum k*n <= budget, exponents strictly increasing inside a structure."""
    out = [()]

    def rec(min_k, left, acc):
        for k in range(min_k, left + 1):
            for n in range(1, left // k + 1):
                cur = acc + ((k, n),)
                out.append(cur)
                rec(k + 1, left - k * n, cur)

    rec(1, budget, ())
    return out


def patterns_two_labels(max_sigma, labels=("p", "q")):
    """Every pattern over exactly the given two labels with sigma <= max_sigma."""
    structs = single_label_structs(max_sigma)
    pats = set()
    for combo in iproduct(structs, repeat=len(labels)):
        total = sum(k * n for part in combo for (k, n) in part)
        if total <= max_sigma:
            pats.add(
                Pattern(
                    [(lab, k, n) for lab, part in zip(labels, combo) for (k, n) in part]
                )
            )
    return sorted(pats, key=lambda p: (sigma(p), p.to_text()))


def iso_patterns(max_sigma, prefix):
    """Patterns with sigma <= max_sigma up to label renaming.

    Each pattern is a multiset of nonempty single-label structures;
    labels are named prefix0, prefix1, ... in canonical order.
    """
    structs = [s for s in single_label_structs(max_sigma) if s]
    weights = [sum(k * n for (k, n) in s) for s in structs]
    found = []

    def rec(start, left, blocks):
        found.append(tuple(blocks))
        for idx in range(start, len(structs)):
            if weights[idx] <= left:
                blocks.append(structs[idx])
                rec(idx, left - weights[idx], blocks)
                blocks.pop()

    rec(0, max_sigma, [])
    out = []
    for blocks in found:
        triples = [
            (f"{prefix}{i}", k, n)
            for i, struct in enumerate(blocks)
            for (k, n) in struct
        ]
        out.append(Pattern(triples))
    return sorted(set(out), key=lambda p: (sigma(p), p.to_text()))
