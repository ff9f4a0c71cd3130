"""Multi-interval Nystrom solver for the fractional Dirichlet problem.

On each interval the solution factors as u_j = omega_j^s phi_j; the
single-interval operator K_s is diagonal in the Gegenbauer basis, and
the coupling between intervals is the off-diagonal remainder R_s with
the smooth kernel -C_1(s)|x-y|^{-1-2s} (|x-y| >= gap > 0 across
distinct intervals).  The discrete system is the second-kind equation

    (I + K^-1 R) Y = K^-1 F

over the concatenated node values Y of phi, solved matrix-free by
GMRES; iteration counts stay bounded as the resolution grows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gegenbauer import GegenbauerCoeffs, evaluate_expansion, forward_transform
from .operator_core import NormConstants, solve_diagonal
from .quadrature import QuadratureRule, gauss_jacobi, map_to_interval
from .specfun import DomainError, s_value


@dataclass(frozen=True)
class Domain:
    """Ordered list of open intervals with strictly disjoint closures."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        ivs = tuple((float(a), float(b)) for a, b in self.intervals)
        if not ivs:
            raise DomainError("domain needs at least one interval")
        for a, b in ivs:
            if not a < b:
                raise DomainError(f"interval endpoints must satisfy a < b, got ({a}, {b})")
        for (a0, b0), (a1, b1) in zip(ivs, ivs[1:]):
            if not b0 < a1:
                raise DomainError(
                    f"intervals ({a0}, {b0}) and ({a1}, {b1}) must be ordered with disjoint closures"
                )
        object.__setattr__(self, "intervals", ivs)

    def __len__(self) -> int:
        return len(self.intervals)


@dataclass(frozen=True)
class MultiSolution:
    """Per-interval regular factors phi plus solver diagnostics."""

    s: float
    blocks: tuple[GegenbauerCoeffs, ...]
    gmres_iterations: int
    final_residual: float
    residual_history: np.ndarray

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("solution needs at least one coefficient block")


@dataclass(frozen=True)
class GMRESResult:
    x: np.ndarray
    iterations: int
    history: np.ndarray
    converged: bool


def apply_offdiagonal(phi, rules, s):
    """Values of R_s phi at every node: for x = y_k^(j),

        sum_{l != j} sum_i  -C_1(s) |x - y_i^(l)|^{-1-2s} phi(y_i^(l)) w_i^(l),

    where the mapped Gauss-Jacobi weights w already carry the edge
    weight omega^s.  Returns a list of per-interval value vectors.

    phi entries may be node-value vectors (matching each rule) or
    GegenbauerCoeffs, which are then evaluated at the rule nodes.
    """
    sv = s_value(s)
    if len(phi) != len(rules):
        raise ValueError("need one phi block per quadrature rule")
    values = []
    for block, rule in zip(phi, rules):
        if isinstance(block, GegenbauerCoeffs):
            values.append(np.asarray(evaluate_expansion(block, rule.nodes), dtype=float))
        else:
            block = np.asarray(block, dtype=float)
            if block.size != len(rule):
                raise ValueError("phi node values do not match rule size")
            values.append(block)
    c1 = NormConstants.for_s(sv).c1
    out = []
    for j, rule_j in enumerate(rules):
        acc = np.zeros(len(rule_j))
        x = rule_j.nodes[:, None]
        for ell, rule_l in enumerate(rules):
            if ell == j:
                continue
            gap_kernel = np.abs(x - rule_l.nodes[None, :]) ** (-1.0 - 2.0 * sv)
            acc += gap_kernel @ (values[ell] * rule_l.weights)
        out.append(-c1 * acc)
    return out


def gmres(apply_A, rhs, tol: float = 1e-13, maxit: int | None = None) -> GMRESResult:
    """Matrix-free GMRES: full orthogonalization (no restart), modified
    Gram-Schmidt, Givens-rotation least squares.  The history holds the
    relative residual after each iteration (starting at 1); happy
    breakdown counts as convergence.
    """
    b = np.asarray(rhs, dtype=float)
    n = b.size
    if maxit is None:
        maxit = n
    normb = float(np.linalg.norm(b))
    if normb == 0.0:
        return GMRESResult(np.zeros(n), 0, np.array([0.0]), True)

    basis = [b / normb]
    H = np.zeros((maxit + 1, maxit))
    cs = np.zeros(maxit)
    sn = np.zeros(maxit)
    g = np.zeros(maxit + 1)
    g[0] = normb
    history = [1.0]
    k_done = 0
    for k in range(maxit):
        w = np.asarray(apply_A(basis[k]), dtype=float)
        for i in range(k + 1):
            H[i, k] = np.dot(basis[i], w)
            w = w - H[i, k] * basis[i]
        H[k + 1, k] = np.linalg.norm(w)
        breakdown = H[k + 1, k] <= 1e-15 * normb
        if not breakdown:
            basis.append(w / H[k + 1, k])
        # apply accumulated rotations to the new column, then a fresh one
        for i in range(k):
            hi = cs[i] * H[i, k] + sn[i] * H[i + 1, k]
            H[i + 1, k] = -sn[i] * H[i, k] + cs[i] * H[i + 1, k]
            H[i, k] = hi
        r = np.hypot(H[k, k], H[k + 1, k])
        cs[k] = H[k, k] / r
        sn[k] = H[k + 1, k] / r
        H[k, k] = r
        H[k + 1, k] = 0.0
        g[k + 1] = -sn[k] * g[k]
        g[k] = cs[k] * g[k]
        k_done = k + 1
        history.append(abs(g[k + 1]) / normb)
        if breakdown or history[-1] <= tol:
            break

    y = np.linalg.solve(H[:k_done, :k_done], g[:k_done]) if k_done else np.zeros(0)
    x = np.zeros(n)
    for i in range(k_done):
        x += y[i] * basis[i]
    return GMRESResult(x, k_done, np.array(history), history[-1] <= tol)


class _Discretization:
    """Per-interval rules and the K^-1 / R actions on stacked node values."""

    def __init__(self, domain: Domain, s, n_per_interval):
        self.sv = s_value(s)
        self.domain = domain
        self.ns = tuple(int(n) for n in n_per_interval)
        if len(self.ns) != len(domain):
            raise ValueError("need one resolution per interval")
        if any(n < 1 for n in self.ns):
            raise DomainError("per-interval resolution must be >= 1")
        self.ref_rules = [gauss_jacobi(n, self.sv) for n in self.ns]
        self.rules = [
            map_to_interval(rule, a, b)
            for rule, (a, b) in zip(self.ref_rules, domain.intervals)
        ]
        self.sizes = [len(r) for r in self.rules]
        self.offsets = np.concatenate([[0], np.cumsum(self.sizes)])

    def split(self, Y):
        return [Y[self.offsets[j]: self.offsets[j + 1]] for j in range(len(self.sizes))]

    def kinv_coeffs(self, blocks):
        """Per-interval K^-1 applied to node-value blocks, as coefficients."""
        out = []
        for vals, rule, interval in zip(blocks, self.rules, self.domain.intervals):
            f = forward_transform(vals, rule, self.sv, interval)
            out.append(solve_diagonal(f))
        return out

    def coeffs_to_values(self, coeff_blocks):
        return np.concatenate(
            [evaluate_expansion(c, rule.nodes) for c, rule in zip(coeff_blocks, self.rules)]
        )

    def kinv(self, Y):
        return self.coeffs_to_values(self.kinv_coeffs(self.split(Y)))

    def offdiag(self, Y):
        return np.concatenate(apply_offdiagonal(self.split(Y), self.rules, self.sv))


def solve(spec) -> MultiSolution:
    """Solve the Dirichlet problem of the given ProblemSpec.

    Builds per-interval Gauss-Jacobi rules, samples the right-hand side
    at the nodes, and iterates GMRES on Y -> Y + K^-1 R Y.  With a
    single interval the remainder vanishes and GMRES is skipped.
    """
    disc = _Discretization(spec.domain, spec.s, spec.n_per_interval())
    F = np.concatenate([np.asarray(spec.rhs(rule.nodes), dtype=float) for rule in disc.rules])
    rhs_vec = disc.kinv(F)

    if len(spec.domain) == 1:
        blocks = disc.kinv_coeffs(disc.split(F))
        return MultiSolution(disc.sv, tuple(blocks), 0, 0.0, np.array([0.0]))

    result = gmres(
        lambda Y: Y + disc.kinv(disc.offdiag(Y)),
        rhs_vec,
        tol=spec.gmres_tol,
        maxit=int(disc.offsets[-1]),
    )
    if not result.converged:
        raise RuntimeError(
            "GMRES did not reach the requested tolerance; residual history: "
            f"{result.history.tolist()}"
        )
    # Final coefficients from the residual equation K phi = f - R Y,
    # which keeps the spectral (coefficient-space) representation exact
    # for the converged node values.
    ry_blocks = disc.split(disc.offdiag(result.x))
    f_blocks = disc.split(F)
    blocks = disc.kinv_coeffs([f - r for f, r in zip(f_blocks, ry_blocks)])
    return MultiSolution(
        disc.sv,
        tuple(blocks),
        result.iterations,
        float(result.history[-1]),
        result.history,
    )
