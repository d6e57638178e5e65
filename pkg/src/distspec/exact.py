"""Exact characteristic polynomials of integer matrices.

Coefficient lists are constant term first: ``[c0, c1, ..., c_{n-1}, 1]`` for
``det(xI - M) = x^n + c_{n-1} x^{n-1} + ... + c0``.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .graph import Graph, distance_matrix


class ExactArithmeticError(ArithmeticError):
    """An exact division left a remainder; indicates a bug, never a data error."""


def _as_object_matrix(m) -> np.ndarray:
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        iv = int(v)
        if iv != v:
            raise ValueError(f"non-integer entry {v!r} at {idx}")
        out[idx] = iv
    return out


def char_poly(m) -> list[int]:
    """Faddeev-LeVerrier recurrence over Python ints."""
    a = _as_object_matrix(m)
    n = a.shape[0]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    if n == 0:
        return coeffs
    ident = np.eye(n, dtype=np.int64).astype(object)
    mk = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        mk = a.dot(mk) + coeffs[n - k + 1] * ident
        tr = int(np.trace(a.dot(mk)))
        q, r = divmod(-tr, k)
        if r:
            raise ExactArithmeticError(f"trace {tr} not divisible by {k}")
        coeffs[n - k] = q
    return coeffs


def distance_char_poly(g: Graph) -> list[int]:
    return char_poly(distance_matrix(g))


def distance_cospectral(a: Graph, b: Graph) -> bool:
    """Exact coefficientwise comparison of distance characteristic polynomials."""
    if a.n != b.n:
        return False
    return distance_char_poly(a) == distance_char_poly(b)


def poly_eval(coeffs: list[int], x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def root_multiplicity(coeffs: list[int], root: Fraction | int) -> int:
    """Multiplicity of the rational ``root`` via repeated synthetic division."""
    root = Fraction(root)
    p = [Fraction(c) for c in coeffs]
    mult = 0
    while len(p) > 1:
        # divide by (x - root), highest degree first
        quotient = []
        carry = Fraction(0)
        for c in reversed(p):
            carry = carry * root + c
            quotient.append(carry)
        remainder = quotient.pop()
        if remainder != 0:
            break
        mult += 1
        p = list(reversed(quotient))
    return mult
