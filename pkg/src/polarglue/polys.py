"""Exact integer polynomial arithmetic on coefficient lists.

A polynomial is a list of coefficients indexed by power: [c0, c1, c2]
is c0 + c1*t + c2*t^2.  The zero polynomial is [].  Everything here is
exact; no floats anywhere.
"""

from __future__ import annotations


def normalize(f: list[int]) -> list[int]:
    n = len(f)
    while n and f[n - 1] == 0:
        n -= 1
    return f[:n]


def degree(f: list[int]) -> int:
    """Degree of a normalized polynomial; -1 for the zero polynomial."""
    f = normalize(f)
    return len(f) - 1


def add(f: list[int], g: list[int]) -> list[int]:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] += c
    return normalize(out)


def sub(f: list[int], g: list[int]) -> list[int]:
    return add(f, [-c for c in g])


def mul(f: list[int], g: list[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return normalize(out)


def scale(f: list[int], c: int) -> list[int]:
    return normalize([c * a for a in f])


def evaluate(f: list[int], x: int) -> int:
    out = 0
    for c in reversed(f):
        out = out * x + c
    return out


def derivative(f: list[int]) -> list[int]:
    return normalize([i * c for i, c in enumerate(f)][1:])


def divmod_monic(f: list[int], g: list[int]) -> tuple[list[int], list[int]]:
    """Divide f by a monic g over the integers; returns (quotient, remainder)."""
    g = normalize(g)
    if not g or g[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(f)
    dg = len(g) - 1
    quot = [0] * max(len(rem) - dg, 0)
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        quot[i - dg] = c
        for j, b in enumerate(g):
            rem[i - dg + j] -= c * b
    return normalize(quot), normalize(rem)


def reduce_mod(f: list[int], m: int) -> list[int]:
    return normalize([c % m for c in f])


def mul_mod(f: list[int], g: list[int], m: int) -> list[int]:
    return reduce_mod(mul(f, g), m)


def divmod_monic_mod(f: list[int], g: list[int], m: int) -> tuple[list[int], list[int]]:
    """Division by a monic (over Z) divisor g, coefficients taken modulo m."""
    g = normalize(g)
    if not g or g[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = [c % m for c in f]
    dg = len(g) - 1
    quot = [0] * max(len(rem) - dg, 0)
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        quot[i - dg] = c
        for j, b in enumerate(g):
            rem[i - dg + j] = (rem[i - dg + j] - c * b) % m
    return normalize(quot), normalize(rem)


def monic_mod(f: list[int], ell: int) -> list[int]:
    """Rescale f to a monic polynomial modulo the prime ell."""
    f = reduce_mod(f, ell)
    if not f:
        return f
    inv = pow(f[-1], -1, ell)
    return reduce_mod(scale(f, inv), ell)


def eval_mod(f: list[int], x: int, m: int) -> int:
    out = 0
    for c in reversed(f):
        out = (out * x + c) % m
    return out
