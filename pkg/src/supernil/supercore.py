"""Shared vocabulary: parities, exact weights, and the super sign rule.

Everything downstream is graded twice over: by Z_2 parity and by the weight
of a fixed diagonal torus.  Both gradings are kept exact -- parities are the
ints 0 (even) and 1 (odd), weight coordinates are `fractions.Fraction`.  No
floating point enters any computation.

The one genuinely super ingredient here is `koszul_sign`: in the
superexterior algebra, transposing homogeneous factors x, y contributes the
sign -(-1)^{|x||y|}, so even factors anticommute with everything while two
odd factors commute.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

EVEN = 0
ODD = 1

Parity = int  # element of Z_2, canonically 0 or 1

#: Exact scalar type used throughout the computational core.
Rational = Fraction


def parity_sum(parities: Iterable[Parity]) -> Parity:
    total = 0
    for p in parities:
        total ^= p & 1
    return total


def swap_sign(p: Parity, q: Parity) -> int:
    """Sign picked up when transposing adjacent homogeneous factors.

    -(-1)^{pq}: -1 unless both factors are odd.
    """
    return 1 if (p & q & 1) else -1


def koszul_sign(parities_left: Sequence[Parity], parities_right: Sequence[Parity]) -> int:
    """Sign accumulated by moving every right factor past every left factor."""
    sign = 1
    for q in parities_right:
        for p in parities_left:
            sign *= swap_sign(p, q)
    return sign


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


@dataclass(frozen=True, order=False)
class Weight:
    """Exact weight vector over a named tuple of formal symbols.

    `basis_tag` pins the symbol system (e.g. "gl(3|2)" with symbols
    e1,e2,e3,d1,d2) so that weights from different algebras never compare
    equal by accident.  Coefficients are exact rationals; F(4) genuinely
    needs denominators.
    """

    basis_tag: str
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def make(basis_tag: str, coeffs: Iterable) -> "Weight":
        return Weight(basis_tag, tuple(_coerce(c) for c in coeffs))

    @staticmethod
    def zero(basis_tag: str, rank: int) -> "Weight":
        return Weight(basis_tag, (Fraction(0),) * rank)

    def _check(self, other: "Weight") -> None:
        if self.basis_tag != other.basis_tag:
            raise ValueError(
                f"weight symbol systems differ: {self.basis_tag!r} vs {other.basis_tag!r}"
            )

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.basis_tag, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.basis_tag, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Weight":
        return Weight(self.basis_tag, tuple(-a for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def sort_key(self) -> tuple:
        return tuple(self.coeffs)

    def describe(self, symbols: Sequence[str]) -> str:
        """Human-readable form like "e2-e1" or "-2d1"."""
        parts: list[str] = []
        for c, s in zip(self.coeffs, symbols):
            if c == 0:
                continue
            if c == 1:
                term = s
            elif c == -1:
                term = f"-{s}"
            else:
                term = f"{c}{s}" if c < 0 else f"{c}{s}"
            if parts and not term.startswith("-"):
                parts.append(f"+{term}")
            else:
                parts.append(term)
        return "".join(parts) if parts else "0"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]
