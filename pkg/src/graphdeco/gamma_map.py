"""The spectral map of a decoration.

For a decoration ``(A, root)`` the map is ``gamma(z) = -1 / <root|(A - z)^{-1}|root>``,
a Herglotz rational function

    gamma(E) = E + c + sum_j w_j / (eps_j - E),    w_j > 0,

with one simple pole strictly between each pair of consecutive eigenvalues
of ``A`` restricted to the cyclic subspace of ``|root>``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, PoleError
from .operator_core import (
    CyclicDecomposition,
    SymmetricOperator,
    eigendecompose,
    krylov_cyclic_decomposition,
)
from .tolerances import DEFAULT, Tolerances


@dataclass(frozen=True)
class HerglotzRational:
    """``E + c + sum_j weights[j] / (poles[j] - E)`` with positive weights."""

    c: float
    poles: tuple = ()
    weights: tuple = ()
    pole_tol: float = DEFAULT.pole

    def __post_init__(self):
        poles = tuple(float(p) for p in self.poles)
        weights = tuple(float(w) for w in self.weights)
        if len(poles) != len(weights):
            raise InputError(f"{len(poles)} poles but {len(weights)} weights")
        if any(not w > 0 for w in weights):
            raise InputError(f"weights must be positive, got {weights}")
        if any(b <= a for a, b in zip(poles, poles[1:])):
            raise InputError(f"poles must be strictly ascending, got {poles}")
        object.__setattr__(self, "c", float(self.c) + 0.0)
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "weights", weights)

    @property
    def n(self) -> int:
        return len(self.poles)

    def _check_real(self, E: float) -> None:
        for p in self.poles:
            if abs(E - p) <= self.pole_tol * (1.0 + abs(p)):
                raise PoleError(f"E = {E!r} is at the pole {p!r}")

    def evaluate(self, E):
        """Value at a real or complex energy; real energies at a pole raise :class:`PoleError`."""
        if isinstance(E, complex) and E.imag != 0.0:
            return E + self.c + sum(w / (p - E) for p, w in zip(self.poles, self.weights))
        E = float(E.real if isinstance(E, complex) else E)
        self._check_real(E)
        return E + self.c + sum(w / (p - E) for p, w in zip(self.poles, self.weights))

    __call__ = evaluate

    def derivative(self, E: float) -> float:
        E = float(E)
        self._check_real(E)
        return 1.0 + sum(w / (p - E) ** 2 for p, w in zip(self.poles, self.weights))

    def branch_of(self, E: float) -> int:
        """Index ``k`` of the branch ``(eps_k, eps_{k+1})`` containing ``E``."""
        return int(np.searchsorted(self.poles, E))

    def to_dict(self) -> dict:
        return {"c": self.c, "poles": list(self.poles), "weights": list(self.weights)}


@dataclass(frozen=True, eq=False)
class CyclicSpectrum:
    """Eigenvalues of ``A`` on the cyclic subspace and the root's weight on each.

    ``G_V(E) = sum_k weights[k] / (values[k] - E)`` is the diagonal Green
    function of the root.
    """

    values: np.ndarray
    weights: np.ndarray

    def green(self, z):
        return np.sum(self.weights / (self.values - z))

    def green_derivative(self, E: float) -> float:
        return float(np.sum(self.weights / (self.values - E) ** 2))


def cyclic_spectrum(decomp: CyclicDecomposition, tol: Tolerances = DEFAULT) -> CyclicSpectrum:
    t = decomp.tridiagonal()
    eig = eigendecompose(SymmetricOperator((t + t.T) / 2.0), tol)
    # q_0 is the root vector, so the overlap is the first Krylov coordinate
    return CyclicSpectrum(np.array(eig.values), np.array(eig.vectors[0, :] ** 2))


def _bisect_zero(f, lo: float, hi: float, width: float) -> float:
    """Zero of an increasing function that is negative at ``lo`` and positive at ``hi``."""
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def gamma_from_spectrum(spec: CyclicSpectrum, c: float, tol: Tolerances = DEFAULT) -> HerglotzRational:
    lam = spec.values
    if len(lam) < 2:
        return HerglotzRational(c, pole_tol=tol.pole)
    width = tol.bisection * (lam[-1] - lam[0])
    poles = []
    for a, b in zip(lam, lam[1:]):
        # G_V runs from -inf just above a to +inf just below b
        poles.append(_bisect_zero(lambda E: spec.green(E), float(a), float(b), width))
    weights = [1.0 / spec.green_derivative(e) for e in poles]
    return HerglotzRational(c, tuple(poles), tuple(weights), pole_tol=tol.pole)


def gamma_from_decoration(A: SymmetricOperator, root: int, tol: Tolerances = DEFAULT):
    """Spectral map of the decoration ``(A, root)`` and the remainder spectrum.

    Returns
    -------
    gamma : HerglotzRational
        ``c = -<root|A|root>``; poles are the zeros of the root's Green
        function on the cyclic subspace, found by bisection between
        consecutive cyclic eigenvalues; ``w_j = 1 / G_V'(eps_j)``.
    remainder : tuple of float
        Eigenvalues of ``A`` on the orthogonal complement of the cyclic
        subspace (empty when the root is cyclic).
    """
    decomp = krylov_cyclic_decomposition(A, root, tol)
    spec = cyclic_spectrum(decomp, tol)
    gamma = gamma_from_spectrum(spec, -float(A.entries[root, root]), tol)
    return gamma, decomp.remainder_eigenvalues


def poles_via_projection(A: SymmetricOperator, root: int, tol: Tolerances = DEFAULT) -> tuple:
    """Eigenvalues of ``A`` compressed to functions vanishing at ``root``."""
    if A.dim < 2:
        raise InputError("the root-deleted minor of a 1x1 operator is empty")
    if not 0 <= root < A.dim:
        raise InputError(f"root {root} out of range for dimension {A.dim}")
    keep = [k for k in range(A.dim) if k != root]
    minor = SymmetricOperator(A.entries[np.ix_(keep, keep)])
    return tuple(float(x) for x in eigendecompose(minor, tol).values)
