#!/usr/bin/env python3
"""Independent oracle for interval-relation composition.

Enumerates every weak ordering of the six endpoints of three intervals
(ranks 0..5, ties allowed, start < end) and records which relation between
A and C co-occurs with each (A,B), (B,C) pair. Prints the 13x13 table and the
projected four- and six-label tables as a C++ header for the test suite.
"""
import itertools

ALLEN = ["b", "m", "o", "s", "d", "f", "eq", "fi", "di", "si", "oi", "mi", "bi"]


def rel(a, b):
    (a0, a1), (b0, b1) = a, b
    if a1 < b0: return "b"
    if a1 == b0: return "m"
    if b1 < a0: return "bi"
    if b1 == a0: return "mi"
    if a0 == b0 and a1 == b1: return "eq"
    if a0 == b0: return "s" if a1 < b1 else "si"
    if a1 == b1: return "f" if a0 > b0 else "fi"
    if b0 < a0 and a1 < b1: return "d"
    if a0 < b0 and b1 < a1: return "di"
    if a0 < b0: return "o"
    return "oi"


def allen_table():
    comp = {(r, s): set() for r in ALLEN for s in ALLEN}
    for ranks in itertools.product(range(6), repeat=6):
        a, b, c = (ranks[0], ranks[1]), (ranks[2], ranks[3]), (ranks[4], ranks[5])
        if not (a[0] < a[1] and b[0] < b[1] and c[0] < c[1]):
            continue
        comp[(rel(a, b), rel(b, c))].add(rel(a, c))
    return comp


FOUR = {
    "before": {"b", "m", "o", "di", "fi"},
    "after": {"bi", "mi", "oi", "d", "f"},
    "equal": {"s", "si", "eq"},
}
SIX = {
    "before": {"b", "m"},
    "after": {"bi", "mi"},
    "equal": {"eq"},
    "includes": {"di", "si", "fi"},
    "is_included": {"d", "s", "f"},
}
ORDER = ["before", "after", "equal", "vague", "includes", "is_included"]


def reduced(comp, definite):
    labels = [l for l in ORDER if l in definite or l == "vague"]
    allen_of = dict(definite)
    allen_of["vague"] = set(ALLEN)
    out = {}
    for r in labels:
        for s in labels:
            composite = set()
            for x in allen_of[r]:
                for y in allen_of[s]:
                    composite |= comp[(x, y)]
            result = {t for t, members in definite.items() if members & composite}
            if not any(composite <= members for members in definite.values()):
                result.add("vague")
            out[(r, s)] = result
    return labels, out


def main():
    comp = allen_table()
    print("// Generated by tests/oracles/allen_oracle.py. Do not edit.")
    print("#pragma once")
    print()
    print("// Row = relation(A,B), column = relation(B,C), symbols in canonical order.")
    print("inline constexpr const char* kAllenOracle[13][13] = {")
    for r in ALLEN:
        cells = ", ".join('"' + " ".join(x for x in ALLEN if x in comp[(r, s)]) + '"' for s in ALLEN)
        print(f"    {{{cells}}},  // {r}")
    print("};")
    for name, definite in (("Four", FOUR), ("Six", SIX)):
        labels, table = reduced(comp, definite)
        n = len(labels)
        print()
        print(f"// Labels: {' '.join(labels)}")
        print(f"inline constexpr const char* kOracle{name}[{n}][{n}] = {{")
        for r in labels:
            cells = ", ".join('"' + " ".join(t for t in labels if t in table[(r, s)]) + '"' for s in labels)
            print(f"    {{{cells}}},  // {r}")
        print("};")


if __name__ == "__main__":
    main()
