"""Brute-force verification of the decoration identities on finite instances.

The checks here diagonalize or invert the full decorated operator with
LAPACK (``numpy.linalg``) and compare against what the spectral map
predicts.  The prediction side goes through the package's own Jacobi and
Lanczos code, so the two routes share no eigensolver.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, PoleError
from .gamma_map import (
    HerglotzRational,
    cyclic_spectrum,
    gamma_from_spectrum,
    poles_via_projection,
)
from .graph_model import (
    Graph,
    RootedGraph,
    complete_graph,
    cycle_graph,
    incompatible_entries,
    laplacian,
    random_compatible_operator,
    random_connected_graph,
)
from .operator_core import (
    SymmetricOperator,
    build_decorated_operator,
    eigendecompose,
    krylov_cyclic_decomposition,
)
from .spectrum_set import branch_invert, preimage_values
from .tolerances import DEFAULT, Tolerances


@dataclass
class Check:
    name: str
    passed: bool
    max_error: float
    tol: float

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "max_error": self.max_error, "tol": self.tol}


@dataclass
class VerificationReport:
    descriptor: dict
    checks: list = field(default_factory=list)
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, error: float, tol: float) -> Check:
        error = float(error)
        c = Check(name, bool(error <= tol), error, float(tol))
        self.checks.append(c)
        return c

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    def to_dict(self) -> dict:
        return {"descriptor": self.descriptor, "checks": [c.to_dict() for c in self.checks]}


@dataclass(frozen=True)
class SpectralMeasure:
    """Atomic measure: ascending ``(eigenvalue, weight)`` pairs."""

    atoms: tuple

    @property
    def total_mass(self) -> float:
        return float(sum(w for _, w in self.atoms))

    def mass_near(self, E: float, window: float) -> float:
        return float(sum(w for x, w in self.atoms if abs(x - E) <= window))


def spectral_measure_at(op: SymmetricOperator, v, tol: Tolerances = DEFAULT) -> SpectralMeasure:
    """Atoms ``(lambda_k, |<v, phi_k>|^2)``; eigenvalues within ``tol.eig * ||op||_F`` are merged."""
    vec = np.asarray(v, dtype=float)
    if vec.shape != (op.dim,):
        raise InputError(f"vector of shape {vec.shape} does not match dimension {op.dim}")
    values, vectors = np.linalg.eigh(op.entries)
    weights = (vectors.T @ vec) ** 2
    merge = tol.eig * max(op.frobenius_norm, 1.0)
    atoms = []
    cluster = [0]
    for k in range(1, len(values) + 1):
        if k < len(values) and values[k] - values[cluster[-1]] <= merge:
            cluster.append(k)
            continue
        atoms.append((float(np.mean(values[cluster])), float(np.sum(weights[cluster]))))
        cluster = [k]
    return SpectralMeasure(tuple(atoms))


def _unit(k: int, n: int) -> np.ndarray:
    e = np.zeros(n)
    e[k] = 1.0
    return e


class Instance:
    """A decorated instance with its spectral map, computed once."""

    def __init__(self, base: Graph, H_o: SymmetricOperator, dec: RootedGraph, A: SymmetricOperator,
                 tol: Tolerances = DEFAULT, label: str = ""):
        self.base, self.H_o, self.dec, self.A, self.tol = base, H_o, dec, A, tol
        self.label = label
        self.problems = []
        if H_o.dim != base.n or A.dim != dec.graph.n:
            raise InputError("operator dimensions do not match the graphs")
        for name, op, g in (("base", H_o, base), ("decoration", A, dec.graph)):
            bad = incompatible_entries(op, g)
            if bad:
                i, j = bad[0]
                self.problems.append(f"{name} operator couples {i} and {j} without an edge")
        self.H = build_decorated_operator(H_o, A, dec.root, base.n)
        self.decomp = krylov_cyclic_decomposition(A, dec.root, tol)
        self.cyc = cyclic_spectrum(self.decomp, tol)
        self.gamma = gamma_from_spectrum(self.cyc, -float(A.entries[dec.root, dec.root]), tol)
        self.remainder = self.decomp.remainder_eigenvalues
        self.base_eig = eigendecompose(H_o, tol)
        self.h_norm = float(np.linalg.norm(self.H.entries, 2))

    def descriptor(self) -> dict:
        return {
            "label": self.label,
            "base_n": self.base.n,
            "base_edges": [list(e) for e in self.base.edges],
            "decoration_n": self.dec.graph.n,
            "decoration_edges": [list(e) for e in self.dec.graph.edges],
            "root": self.dec.root,
            "cyclic": self.decomp.cyclic,
            "final_beta": self.decomp.final_beta,
        }

    def root_index(self, x: int) -> int:
        return x * self.A.dim + self.dec.root

    def predicted_eigenvalues(self) -> list:
        pre = preimage_values(self.gamma, self.base_eig.values, self.tol)
        return sorted(pre + [r for r in self.remainder for _ in range(self.base.n)])

    def new_report(self) -> VerificationReport:
        report = VerificationReport(self.descriptor())
        report.add("compatibility", float(len(self.problems)), 0.0)
        return report


def _as_instance(base, H_o, dec, A, tol) -> Instance:
    return base if isinstance(base, Instance) else Instance(base, H_o, dec, A, tol)


def verify_spectral_map(base, H_o=None, dec=None, A=None, tol: Tolerances = DEFAULT) -> VerificationReport:
    """Compare the decorated eigenvalues with preimages plus flat bands.

    Checks: sorted multiset distance (``spectral_map``), per-value
    multiplicity agreement (``multiplicity_preservation``) and the bare
    inclusion of every preimage point in the spectrum (``spectral_inclusion``).
    """
    inst = _as_instance(base, H_o, dec, A, tol)
    report = inst.new_report()
    observed = np.linalg.eigvalsh(inst.H.entries)
    predicted = np.array(inst.predicted_eigenvalues())
    window = tol.match * (1.0 + inst.h_norm)
    if len(predicted) != len(observed):
        report.add("spectral_map", np.inf, window)
    else:
        report.add("spectral_map", np.max(np.abs(observed - predicted)), window)

    mismatch = 0
    for p in predicted:
        n_obs = int(np.sum(np.abs(observed - p) <= window))
        n_pred = int(np.sum(np.abs(predicted - p) <= window))
        mismatch = max(mismatch, abs(n_obs - n_pred))
    report.add("multiplicity_preservation", mismatch, 0)

    pre = preimage_values(inst.gamma, inst.base_eig.values, tol)
    dist = max((float(np.min(np.abs(observed - e))) for e in pre), default=0.0)
    report.add("spectral_inclusion", dist, tol.match)
    return report


def verify_green_relation(base, H_o=None, dec=None, A=None, z_samples=(), tol: Tolerances = DEFAULT) -> VerificationReport:
    """``<x,root|(H - z)^{-1}|x,root> = <x|(H_o - gamma(z))^{-1}|x>`` by direct solves."""
    inst = _as_instance(base, H_o, dec, A, tol)
    report = inst.new_report()
    nb = inst.base.n
    idx = [inst.root_index(x) for x in range(nb)]
    rhs_h = np.zeros((inst.H.dim, nb))
    rhs_h[idx, range(nb)] = 1.0
    err = 0.0
    conj_err = 0.0
    for z in z_samples:
        z = complex(z)
        if z.imag == 0.0:
            raise InputError("Green relation samples must be off the real axis")
        lhs = np.linalg.solve(inst.H.entries - z * np.eye(inst.H.dim), rhs_h)[idx, range(nb)]
        g = inst.gamma.evaluate(z)
        rhs = np.diag(np.linalg.inv(inst.H_o.entries - g * np.eye(nb)))
        err = max(err, float(np.max(np.abs(lhs - rhs))))
        lhs_c = np.linalg.solve(inst.H.entries - z.conjugate() * np.eye(inst.H.dim), rhs_h)[idx, range(nb)]
        conj_err = max(conj_err, float(np.max(np.abs(lhs_c - np.conj(lhs)))))
    report.add("green_relation", err, tol.green)
    report.add("green_conjugate_symmetry", conj_err, tol.green)
    return report


def verify_measure_relation(base, H_o=None, dec=None, A=None, tol: Tolerances = DEFAULT) -> VerificationReport:
    """Atom-by-atom check of ``w~(E) * gamma'(E) = mu_x({gamma(E)})``.

    ``mu~_x`` is the spectral measure of the decorated operator at
    ``|x, root>`` and ``mu_x`` that of the base operator at ``|x>``.  Each
    atom of ``mu~_x`` is matched to the preimage points of the atoms of
    ``mu_x``; atoms with no preimage partner (flat bands, poles) must carry
    no weight.  The summed form ``sum_{E in gamma^-1(l)} mu~_x({E}) =
    mu_x({l}) sum 1/gamma'(E)`` and the identity ``sum 1/gamma'(E) = 1``
    over each preimage are checked as well.
    """
    inst = _as_instance(base, H_o, dec, A, tol)
    report = inst.new_report()
    g = inst.gamma
    nb = inst.base.n
    window = tol.match * (1.0 + inst.h_norm)
    atom_err = unmatched_err = summed_err = mass_err = 0.0
    for x in range(nb):
        mu_t = spectral_measure_at(inst.H, _unit(inst.root_index(x), inst.H.dim), tol)
        mu = spectral_measure_at(inst.H_o, _unit(x, nb), tol)
        # (E_k, lambda, mu({lambda}), gamma'(E_k)) for each base atom and branch
        pred = []
        for lam, w in mu.atoms:
            pre = [branch_invert(g, k, lam, tol) for k in range(g.n + 1)]
            slopes = [g.derivative(E) for E in pre]
            mass_err = max(mass_err, abs(sum(1.0 / s for s in slopes) - 1.0))
            pred.extend((E, lam, w, s) for E, s in zip(pre, slopes))
            observed = sum(mu_t.mass_near(E, window) for E in pre)
            summed_err = max(summed_err, abs(observed - w * sum(1.0 / s for s in slopes)))
        used = set()
        for E, wt in mu_t.atoms:
            partners = [k for k, p in enumerate(pred) if abs(p[0] - E) <= window]
            if not partners:
                unmatched_err = max(unmatched_err, wt)
                continue
            used.update(partners)
            slope = g.derivative(E)
            expected = sum(pred[k][2] / pred[k][3] for k in partners)
            atom_err = max(atom_err, abs(wt - expected) * slope)
        for k, p in enumerate(pred):
            if k not in used:
                unmatched_err = max(unmatched_err, p[2] / p[3])
    report.add("measure_relation_atoms", atom_err, tol.measure)
    report.add("measure_relation_unmatched_atoms", unmatched_err, tol.measure)
    report.add("measure_relation_summed", summed_err, tol.measure)
    report.add("preimage_mass", mass_err, tol.measure)
    return report


def verify_gamma_identities(base, H_o=None, dec=None, A=None, z_samples=(), tol: Tolerances = DEFAULT) -> VerificationReport:
    """Coefficient identities of the spectral map and the pole/minor correspondence."""
    inst = _as_instance(base, H_o, dec, A, tol)
    report = inst.new_report()
    g, a, r = inst.gamma, inst.A.entries, inst.dec.root
    diag = a[r, r]
    report.add("constant_term", abs(g.c + diag), tol.identity)
    variance = (a @ a)[r, r] - diag ** 2
    report.add("weight_sum", abs(sum(g.weights) - variance), tol.identity)

    # <root|(A - eps)^-2|root> restricted to V, by a direct solve in Lanczos coordinates
    t = inst.decomp.tridiagonal()
    e0 = _unit(0, len(t))
    w_err = 0.0
    for p, w in zip(g.poles, g.weights):
        y = np.linalg.solve(t - p * np.eye(len(t)), e0)
        w_err = max(w_err, abs(w - 1.0 / float(y @ y)) / max(w, 1.0))
    report.add("weight_residue", w_err, tol.green)

    lam = inst.cyc.values
    sep = 1e-12
    gaps = [min(e - lo, hi - e) for e, lo, hi in zip(g.poles, lam, lam[1:])]
    report.add("interlacing", 0.0 if all(d > sep for d in gaps) else 1.0, 0.0)

    recon = herglotz = 0.0
    e_r = _unit(r, inst.A.dim)
    for z in z_samples:
        z = complex(z)
        green = np.linalg.solve(a - z * np.eye(inst.A.dim), e_r)[r]
        gz = g.evaluate(z)
        recon = max(recon, abs(gz * green + 1.0))
        if z.imag > 0 and gz.imag <= 0:
            herglotz = 1.0
    report.add("reconstruction", recon, tol.green)
    report.add("herglotz", herglotz, 0.0)

    # a one-vertex decoration is cyclic with no poles and an empty minor
    minor = np.array(poles_via_projection(inst.A, r, tol)) if inst.A.dim >= 2 else np.empty(0)
    report.add("pole_minor_" + ("equality" if inst.decomp.cyclic else "strict_containment"),
               _pole_minor_error(g.poles, minor, inst.decomp.cyclic, tol.pole_minor), tol.pole_minor)
    return report


def _pole_minor_error(poles, minor, cyclic: bool, window: float) -> float:
    """Largest pole-to-minor distance under a greedy sorted matching.

    Returns ``inf`` when the cardinalities are wrong for the case (equal when
    cyclic, strictly smaller otherwise) or a pole finds no partner.
    """
    if cyclic:
        if len(poles) != len(minor):
            return np.inf
        return float(np.max(np.abs(np.array(poles) - minor), initial=0.0))
    if len(poles) >= len(minor):
        return np.inf
    worst = 0.0
    j = 0
    for p in poles:
        while j < len(minor) and minor[j] < p - window:
            j += 1
        if j == len(minor):
            return np.inf
        worst = max(worst, abs(minor[j] - p))
        j += 1
    return worst


def lift_eigenfunction(psi, E: float, A: SymmetricOperator, root: int, tol: Tolerances = DEFAULT,
                       gamma: HerglotzRational | None = None) -> np.ndarray:
    """Extend a base eigenfunction of ``H_o`` (eigenvalue ``gamma(E)``) to the decorated graph.

    The decoration profile is ``phi(u) = <root|(A-E)^{-1}|u> / <root|(A-E)^{-1}|root>``,
    evaluated on the cyclic subspace in Lanczos coordinates: ``phi(root) = 1``
    and ``(A - E) phi`` vanishes away from the root.  In those coordinates
    the profile stays finite when ``E`` is an eigenvalue of ``A``; it only
    fails at a pole of the spectral map.
    """
    decomp = krylov_cyclic_decomposition(A, root, tol)
    if gamma is None:
        gamma = gamma_from_spectrum(cyclic_spectrum(decomp, tol), -float(A.entries[root, root]), tol)
    E = float(E)
    try:
        gamma.evaluate(E)
    except PoleError:
        raise PoleError(f"E = {E!r} is a pole of the spectral map; no factorized eigenfunction") from None
    m = decomp.size
    y = np.zeros(m)
    y[0] = 1.0
    if m > 1:
        t = decomp.tridiagonal()[1:, 1:] - E * np.eye(m - 1)
        rhs = np.zeros(m - 1)
        rhs[0] = -decomp.beta[0]
        y[1:] = np.linalg.solve(t, rhs)
    phi = decomp.basis @ y
    phi[root] = 1.0
    return np.kron(np.asarray(psi, dtype=float), phi)


def sample_z(rng: np.random.Generator, center: float, half_width: float, count: int = 20) -> list:
    """Complex energies with real part in ``center +- half_width`` and imaginary part in [0.1, 2]."""
    re = rng.uniform(center - half_width, center + half_width, count)
    im = rng.uniform(0.1, 2.0, count)
    return [complex(a, b) for a, b in zip(re, im)]


def random_instance(rng: np.random.Generator, tol: Tolerances = DEFAULT, max_base: int = 8, max_dec: int = 5) -> Instance:
    """Random connected base (n <= 8) and decoration (m <= 5) graphs.

    Each operator is independently the Laplacian or a random compatible
    matrix, so both the graph-Laplacian path and general self-adjoint
    operators are exercised.
    """
    base = random_connected_graph(int(rng.integers(1, max_base + 1)), rng)
    dg = random_connected_graph(int(rng.integers(1, max_dec + 1)), rng)
    dec = RootedGraph(dg, int(rng.integers(0, dg.n)))
    kinds = []
    ops = []
    for g in (base, dg):
        if rng.random() < 0.5:
            ops.append(laplacian(g))
            kinds.append("laplacian")
        else:
            ops.append(random_compatible_operator(g, rng))
            kinds.append("random")
    return Instance(base, ops[0], dec, ops[1], tol, label=f"random base={kinds[0]} decoration={kinds[1]}")


def fixed_instance(tol: Tolerances = DEFAULT) -> Instance:
    """Four-cycle decorated by a single edge, Laplacians on both."""
    base = cycle_graph(4)
    dec = RootedGraph(complete_graph(2), 0)
    return Instance(base, laplacian(base), dec, laplacian(dec.graph), tol, label="C4 decorated by K2")


def verify_instance(inst: Instance, rng: np.random.Generator, tol: Tolerances = DEFAULT) -> VerificationReport:
    """All checks on one instance, merged into a single report."""
    report = verify_spectral_map(inst, tol=tol)
    if inst.problems:
        return report
    spread = inst.h_norm + 1.0
    z = sample_z(rng, 0.0, spread)
    za = sample_z(rng, 0.0, float(np.linalg.norm(inst.A.entries, 2)) + 1.0)
    for sub in (
        verify_green_relation(inst, z_samples=z, tol=tol),
        verify_measure_relation(inst, tol=tol),
        verify_gamma_identities(inst, z_samples=za, tol=tol),
    ):
        report.extend(VerificationReport(sub.descriptor, [c for c in sub.checks if c.name != "compatibility"]))
    return report


def run_campaign(seed: int, cases: int, tol: Tolerances = DEFAULT, instances=None) -> dict:
    """Seeded verification campaign; returns the report as a JSON-ready dict.

    Case ``i`` draws from ``default_rng([seed, i])``, so a case does not
    depend on how many cases precede it.  ``instances`` replaces the random
    draws with fixed instances (one case each).
    """
    out = []
    total = len(instances) if instances is not None else cases
    for i in range(total):
        rng = np.random.default_rng([seed, i])
        inst = instances[i] if instances is not None else random_instance(rng, tol)
        report = verify_instance(inst, rng, tol)
        out.append(report.to_dict())
    passed = sum(all(c["pass"] for c in case["checks"]) for case in out)
    return {"seed": seed, "cases": out, "summary": {"passed": passed, "failed": len(out) - passed}}
