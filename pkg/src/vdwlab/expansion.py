"""Exact base-r positional expansion of positive integers.

Everything here is integer-only. The exponent of the leading digit is
obtained by repeated division, never by floating-point logarithms, so
values at or near exact powers of the base cannot be misclassified.
The bound-checking layer leans on that exactness.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Expansion:
    """Positional expansion of a positive integer in powers of ``base``.

    ``digits[i]`` is the coefficient of ``base**i`` (least significant
    first); the leading digit ``digits[-1]`` is always nonzero, so the
    exponent of the expansion is ``len(digits) - 1``.
    """

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        _validate(self.base, self.digits)

    @property
    def exponent(self) -> int:
        """Index n of the leading digit: base**n <= value < base**(n+1)."""
        return len(self.digits) - 1

    def digits_most_significant_first(self) -> tuple[int, ...]:
        return tuple(reversed(self.digits))


def _validate(base: int, digits: tuple[int, ...]) -> None:
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if not digits:
        raise ValueError("digits must be non-empty")
    for i, d in enumerate(digits):
        if not 0 <= d < base:
            raise ValueError(f"digit {d} at index {i} outside [0, {base - 1}]")
    if digits[-1] == 0:
        raise ValueError("leading digit must be nonzero")


def expand(value: int, base: int) -> Expansion:
    """Expand ``value`` in powers of ``base`` by repeated integer division."""
    _check_domain(value, base)
    digits = []
    q = value
    while q:
        q, d = divmod(q, base)
        digits.append(d)
    return Expansion(base, tuple(digits))


def exponent_n(value: int, base: int) -> int:
    """Exponent n with base**n <= value < base**(n+1).

    Computed as the length of the repeated-division quotient chain minus
    one; equivalently floor(value / base**n) lands in [1, base-1].
    """
    _check_domain(value, base)
    n = 0
    q = value // base
    while q:
        n += 1
        q //= base
    return n


def reconstruct(e: Expansion) -> int:
    """Sum digits[i] * base**i back into the integer the expansion encodes."""
    _validate(e.base, e.digits)  # re-check: frozen instances can be forged
    total = 0
    power = 1
    for d in e.digits:
        total += d * power
        power *= e.base
    return total


def _check_domain(value: int, base: int) -> None:
    if value < 1:
        raise ValueError(f"value must be >= 1, got {value}")
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
