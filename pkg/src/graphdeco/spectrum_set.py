"""Spectra as finite unions of closed intervals plus point spectrum.

Preimages under the spectral map are computed branch by branch: between
consecutive poles the map is a strictly increasing bijection onto the real
line, so every value has exactly one preimage per branch.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

from .errors import InputError
from .gamma_map import HerglotzRational
from .tolerances import DEFAULT, Tolerances

EXTENSIVE = "extensive"


def _add_multiplicity(a, b):
    if a == EXTENSIVE or b == EXTENSIVE:
        return EXTENSIVE
    return a + b


@dataclass(frozen=True)
class SpectrumSet:
    """Sorted disjoint closed intervals and ``(value, multiplicity)`` points.

    A multiplicity is a positive integer or ``"extensive"`` (degeneracy that
    grows with the size of an infinite base graph).  Points lying inside an
    interval are kept in ``points`` so that flat bands at band edges stay
    visible.  Use :meth:`build` to normalize raw input.
    """

    intervals: tuple = ()
    points: tuple = ()

    @classmethod
    def build(cls, intervals=(), points=(), merge_tol: float = DEFAULT.merge) -> "SpectrumSet":
        ivs = []
        for a, b in sorted((float(a), float(b)) for a, b in intervals):
            if b < a:
                raise InputError(f"interval [{a}, {b}] has b < a")
            if ivs and a - ivs[-1][1] <= merge_tol:
                ivs[-1] = (ivs[-1][0], max(ivs[-1][1], b))
            else:
                ivs.append((a, b))
        pts = []
        for v, m in sorted(((float(v), m) for v, m in points), key=lambda p: p[0]):
            if m != EXTENSIVE and (isinstance(m, bool) or not isinstance(m, int) or m < 1):
                raise InputError(f"multiplicity must be a positive integer or {EXTENSIVE!r}, got {m!r}")
            if pts and v - pts[-1][0] <= merge_tol:
                pts[-1] = (pts[-1][0], _add_multiplicity(pts[-1][1], m))
            else:
                pts.append((v, m))
        return cls(tuple(ivs), tuple(pts))

    @classmethod
    def from_values(cls, values, merge_tol: float = DEFAULT.merge) -> "SpectrumSet":
        """Point spectrum from a list of eigenvalues (repeats become multiplicity)."""
        return cls.build(points=[(v, 1) for v in values], merge_tol=merge_tol)

    def contains(self, E: float, tol: float = 0.0) -> bool:
        return any(a - tol <= E <= b + tol for a, b in self.intervals) or any(
            abs(E - v) <= tol for v, _ in self.points
        )

    def point_count(self) -> int | str:
        total = 0
        for _, m in self.points:
            total = _add_multiplicity(total, m)
        return total

    def to_dict(self) -> dict:
        return {
            "intervals": [[a, b] for a, b in self.intervals],
            "points": [{"value": v, "multiplicity": m} for v, m in self.points],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SpectrumSet":
        try:
            return cls.build(
                [tuple(iv) for iv in d.get("intervals", [])],
                [(p["value"], p["multiplicity"]) for p in d.get("points", [])],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed spectrum: {exc}") from None


def branch_invert(g: HerglotzRational, branch: int, v: float, tol: Tolerances = DEFAULT) -> float:
    """Unique ``E`` in branch ``branch`` with ``g(E) = v``.

    Branch ``k`` is the open interval between poles ``k-1`` and ``k``
    (unbounded at both ends of the pole list).  The bracket is grown toward
    the poles (or outward) geometrically until it straddles ``v``, then
    bisected down to adjacent floats, which keeps ``|g(E) - v|`` below
    ``tol.invert * (1 + |v|)`` except where ``g`` is steeper than that
    resolution allows (right next to a pole).
    """
    n = g.n
    if isinstance(branch, bool) or not isinstance(branch, int) or not 0 <= branch <= n:
        raise InputError(f"branch must be an integer in 0..{n}, got {branch!r}")
    v = float(v)
    if n == 0:
        return v - g.c

    def f(E):
        return g.evaluate(E) - v

    left = g.poles[branch - 1] if branch > 0 else None
    right = g.poles[branch] if branch < n else None

    if left is not None and right is not None:
        delta = (right - left) / 4.0
        lo, hi = left + delta, right - delta
        d_lo = d_hi = delta
        while f(lo) > 0.0:
            d_lo /= 2.0
            lo = left + d_lo
        while f(hi) < 0.0:
            d_hi /= 2.0
            hi = right - d_hi
    elif right is not None:
        step = 1.0
        lo = right - step
        while f(lo) > 0.0:
            step *= 2.0
            lo = right - step
        d = 0.5
        hi = right - d
        while f(hi) < 0.0:
            d /= 2.0
            hi = right - d
    else:
        step = 1.0
        hi = left + step
        while f(hi) < 0.0:
            step *= 2.0
            hi = left + step
        d = 0.5
        lo = left + d
        while f(lo) > 0.0:
            d /= 2.0
            lo = left + d

    # bisect to float resolution; the residual then sits well inside tol.invert
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return lo if abs(f(lo)) <= abs(f(hi)) else hi
        r = f(mid)
        if r == 0.0:
            return mid
        if r < 0.0:
            lo = mid
        else:
            hi = mid


def preimage(g: HerglotzRational, s: SpectrumSet, tol: Tolerances = DEFAULT) -> SpectrumSet:
    """Preimage of a spectrum: one copy of every interval and point per branch."""
    intervals = []
    points = []
    for k in range(g.n + 1):
        for a, b in s.intervals:
            intervals.append((branch_invert(g, k, a, tol), branch_invert(g, k, b, tol)))
        for v, m in s.points:
            points.append((branch_invert(g, k, v, tol), m))
    return SpectrumSet.build(intervals, points, merge_tol=tol.merge)


def preimage_values(g: HerglotzRational, values, tol: Tolerances = DEFAULT) -> list:
    """Preimage of a multiset of reals, as a flat ascending list (no merging)."""
    return sorted(branch_invert(g, k, v, tol) for v in values for k in range(g.n + 1))


def assemble_decorated_spectrum(
    g: HerglotzRational,
    remainder,
    base: SpectrumSet,
    base_size: int | str,
    tol: Tolerances = DEFAULT,
) -> SpectrumSet:
    """Spectrum of the decorated operator: preimage of the base plus flat bands.

    Each remainder eigenvalue of multiplicity ``r`` enters with multiplicity
    ``r * base_size``, or ``"extensive"`` when ``base_size == "infinite"``.
    """
    pre = preimage(g, base, tol)
    counts = Counter()
    for value in sorted(float(x) for x in remainder):
        for key in counts:
            if abs(key - value) <= tol.merge:
                counts[key] += 1
                break
        else:
            counts[value] += 1
    if base_size == "infinite":
        flat = [(v, EXTENSIVE) for v in counts]
    elif isinstance(base_size, int) and not isinstance(base_size, bool) and base_size >= 1:
        flat = [(v, r * base_size) for v, r in counts.items()]
    else:
        raise InputError(f"base_size must be a positive integer or 'infinite', got {base_size!r}")
    return SpectrumSet.build(pre.intervals, list(pre.points) + flat, merge_tol=tol.merge)


_PRESET = re.compile(r"^zd:(\d+)$")


def preset_spectrum(name: str) -> tuple:
    """Known base spectra of infinite graphs.

    ``zd:<d>`` is minus the Laplacian of the d-dimensional integer lattice,
    with spectrum ``[0, 4d]``.  Returns ``(SpectrumSet, "infinite")``.
    """
    m = _PRESET.match(name or "")
    if not m or int(m.group(1)) < 1:
        raise InputError(f"unknown preset {name!r} (expected 'zd:<d>' with d >= 1)")
    d = int(m.group(1))
    return SpectrumSet.build([(0.0, 4.0 * d)]), "infinite"

