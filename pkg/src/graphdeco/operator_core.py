"""Dense symmetric operators on small vertex spaces.

Everything here works on real symmetric matrices of dimension up to a few
dozen: a cyclic Jacobi eigensolver, diagonal resolvent entries, assembly of
the decorated operator ``P H_o P + 1 (x) A`` and the Lanczos (Krylov)
splitting of a decoration space into the cyclic subspace of the root and
its orthogonal complement.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, InputError, PoleError
from .tolerances import DEFAULT, Tolerances


@dataclass(frozen=True, eq=False)
class SymmetricOperator:
    """Real symmetric matrix acting on functions of a finite vertex set.

    Symmetry is checked exactly at construction; the stored array is a
    read-only copy.
    """

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise InputError(f"operator must be a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise InputError("operator has non-finite entries")
        bad = np.argwhere(a != a.T)
        if len(bad):
            i, j = (int(k) for k in bad[0])
            raise InputError(
                f"operator is not symmetric: entries[{i}][{j}] = {a[i, j]!r} "
                f"but entries[{j}][{i}] = {a[j, i]!r}"
            )
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.entries))

    def __eq__(self, other):
        if not isinstance(other, SymmetricOperator):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(np.all(self.entries == other.entries))

    def __hash__(self):
        return hash(self.entries.tobytes())

    def to_dict(self) -> dict:
        return {"dim": self.dim, "entries": self.entries.tolist()}


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Ascending eigenvalues with orthonormal eigenvectors as columns."""

    values: np.ndarray
    vectors: np.ndarray


def eigendecompose(op: SymmetricOperator, tol: Tolerances = DEFAULT) -> EigenSystem:
    """Diagonalize ``op`` by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius norm is at rounding level.
    The result is then checked against ``tol.eig``: every residual
    ``||A v - lambda v||`` and the deviation of ``V^T V`` from the identity
    must be below ``tol.eig * ||A||_F``.

    Raises
    ------
    ConvergenceError
        If ``tol.max_sweeps`` sweeps do not reach convergence, or the final
        eigenpairs violate the residual bound.
    """
    a0 = op.entries
    n = op.dim
    a = np.array(a0, dtype=float)
    v = np.eye(n)
    norm = float(np.linalg.norm(a))
    target = n * np.finfo(float).eps * norm

    mask = ~np.eye(n, dtype=bool)

    def off(m):
        return float(np.linalg.norm(m[mask]))

    converged = off(a) <= target
    sweep = 0
    while not converged:
        if sweep == tol.max_sweeps:
            raise ConvergenceError(f"Jacobi did not converge in {tol.max_sweeps} sweeps (off = {off(a):.3e})")
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        converged = off(a) <= target

    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    v = v[:, order]

    bound = tol.eig * max(norm, np.finfo(float).tiny)
    residual = np.linalg.norm(a0 @ v - v * values, axis=0).max()
    ortho = np.abs(v.T @ v - np.eye(n)).max()
    if norm > 0 and (residual > bound or ortho > tol.eig):
        raise ConvergenceError(f"eigenpairs fail the residual bound ({residual:.3e} > {bound:.3e})")
    values.setflags(write=False)
    v.setflags(write=False)
    return EigenSystem(values, v)


def _as_vector(v, dim: int) -> np.ndarray:
    if isinstance(v, (int, np.integer)):
        if not 0 <= v < dim:
            raise InputError(f"vertex index {v} out of range for dimension {dim}")
        e = np.zeros(dim)
        e[int(v)] = 1.0
        return e
    vec = np.asarray(v, dtype=float)
    if vec.shape != (dim,):
        raise InputError(f"vector of shape {vec.shape} does not match dimension {dim}")
    return vec


def green_diag(A: SymmetricOperator, v, z: complex, tol: Tolerances = DEFAULT, eig: EigenSystem | None = None) -> complex:
    """Return ``<v|(A - z)^{-1}|v>`` from the spectral decomposition of ``A``.

    ``v`` is either a vertex index (standard basis vector) or a real vector.
    For real ``z`` the call fails when ``z`` is within ``tol.pole`` of an
    eigenvalue.
    """
    eig = eig or eigendecompose(A, tol)
    vec = _as_vector(v, A.dim)
    z = complex(z)
    weights = (eig.vectors.T @ vec) ** 2
    if z.imag == 0.0:
        gap = np.abs(eig.values - z.real)
        k = int(np.argmin(gap))
        if gap[k] <= tol.pole * (1.0 + abs(eig.values[k])):
            raise PoleError(f"z = {z.real!r} is at the eigenvalue {eig.values[k]!r} of the operator")
        return complex(np.sum(weights / (eig.values - z.real)))
    return complex(np.sum(weights / (eig.values - z)))


def build_decorated_operator(H_o: SymmetricOperator, A: SymmetricOperator, root: int, n_base: int) -> SymmetricOperator:
    """Assemble ``H = P H_o P + 1 (x) A`` on the product vertex set.

    Vertex ``(x, u)`` has index ``x * dim(A) + u``, matching
    :func:`graphdeco.graph_model.decorate`.
    """
    if H_o.dim != n_base:
        raise InputError(f"base operator has dimension {H_o.dim}, expected {n_base}")
    if not 0 <= root < A.dim:
        raise InputError(f"root {root} out of range for decoration of dimension {A.dim}")
    m = A.dim
    h = np.kron(np.eye(n_base), A.entries)
    idx = np.arange(n_base) * m + root
    h[np.ix_(idx, idx)] += H_o.entries
    return SymmetricOperator(h)


@dataclass(frozen=True, eq=False)
class CyclicDecomposition:
    """Krylov splitting ``l2(G) = V (+) V_perp`` for the vector ``|root>``.

    ``basis`` holds the Lanczos vectors ``q_0 = |root>, q_1, ...`` as
    columns; ``alpha`` and ``beta`` are the diagonal and off-diagonal of the
    tridiagonal matrix representing ``A`` on ``V``.  ``final_beta`` is the
    residual norm at which the recursion stopped (0 when ``V`` is the whole
    space), reported so near-breakdown cases are visible.
    """

    basis: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    remainder_eigenvalues: tuple
    final_beta: float
    root: int = field(default=0)

    @property
    def size(self) -> int:
        return self.basis.shape[1]

    @property
    def cyclic(self) -> bool:
        return not self.remainder_eigenvalues

    def tridiagonal(self) -> np.ndarray:
        return np.diag(self.alpha) + np.diag(self.beta, 1) + np.diag(self.beta, -1)


def krylov_cyclic_decomposition(A: SymmetricOperator, root: int, tol: Tolerances = DEFAULT) -> CyclicDecomposition:
    """Lanczos recursion from ``|root>`` with full reorthogonalization."""
    n = A.dim
    if not 0 <= root < n:
        raise InputError(f"root {root} out of range for dimension {n}")
    a = A.entries
    threshold = tol.breakdown * A.frobenius_norm
    q = [_as_vector(root, n)]
    alpha, beta = [], []
    final_beta = 0.0
    while True:
        w = a @ q[-1]
        alpha.append(float(q[-1] @ w))
        Q = np.column_stack(q)
        for _ in range(2):
            w = w - Q @ (Q.T @ w)
        b = float(np.linalg.norm(w))
        if len(q) == n or b <= threshold:
            final_beta = b if len(q) < n else 0.0
            break
        beta.append(b)
        q.append(w / b)
    Q = np.column_stack(q)
    m = Q.shape[1]
    remainder: tuple = ()
    if m < n:
        full, _ = np.linalg.qr(np.hstack([Q, np.eye(n)]))
        comp = full[:, m:n]
        proj = comp.T @ a @ comp
        proj = (proj + proj.T) / 2.0
        remainder = tuple(float(x) for x in eigendecompose(SymmetricOperator(proj), tol).values)
    Q.setflags(write=False)
    return CyclicDecomposition(
        basis=Q,
        alpha=np.array(alpha),
        beta=np.array(beta),
        remainder_eigenvalues=remainder,
        final_beta=final_beta,
        root=root,
    )
