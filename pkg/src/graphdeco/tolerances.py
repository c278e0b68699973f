"""Numerical tolerances shared across the package.

All values are defaults; the CLI exposes ``--tol-eig`` and ``--tol-match``.
"""
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    #: relative residual bound for eigenpairs, scaled by ||A||_F
    eig: float = 1e-11
    #: Jacobi sweep cap
    max_sweeps: int = 100
    #: Lanczos stops once the next residual norm drops below this times ||A||_F
    breakdown: float = 1e-10
    #: bisection width for poles, relative to the spread of the cyclic eigenvalues;
    #: 0 bisects down to adjacent floats
    bisection: float = 0.0
    #: real evaluation is refused within pole * (1 + |pole|) of a pole
    pole: float = 1e-9
    #: branch inversion stops once |gamma(E) - v| <= invert * (1 + |v|)
    invert: float = 1e-12
    #: intervals and points closer than this are merged
    merge: float = 1e-10
    #: eigenvalue multiset matching, scaled by (1 + ||H||_2)
    match: float = 1e-7
    green: float = 1e-9
    measure: float = 1e-8
    identity: float = 1e-10
    pole_minor: float = 1e-8

    def with_overrides(self, **kw):
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


DEFAULT = Tolerances()
