"""Independent numerical oracles used only by the test suite.

These deliberately avoid the library's own code paths: the Jacobi solver
cross-checks the LAPACK-backed eigensolver, and the eigenfunction-sum
Green's function cross-checks the Sturm-Liouville constructor.
"""

import numpy as np


def jacobi_eigh(a, tol=1e-14, max_sweeps=100):
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Returns ascending eigenvalues and the matching eigenvector columns.
    O(n^4)-ish; intended for small oracle matrices only.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(np.max(np.abs(a)), 1.0)

    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(a - np.diag(np.diag(a))) ** 2))
        if off < tol * scale * n:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = np.angle(apq)
                tau = (a[q, q].real - a[p, p].real) / (2.0 * abs(apq))
                sign = 1.0 if tau >= 0 else -1.0
                t = sign / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                u = np.eye(n, dtype=complex)
                u[p, p] = c
                u[q, q] = c
                u[p, q] = s * np.exp(1j * theta)
                u[q, p] = -s * np.exp(-1j * theta)
                a = u.conj().T @ a @ u
                v = v @ u
    values = np.real(np.diag(a))
    order = np.argsort(values)
    return values[order], v[:, order]


def dirichlet_green_series(x, xp, length, p_const, q_const, n_terms=10_000):
    """Green's function of (p u')' + q u = delta on [0, L] with Dirichlet
    ends, via the eigenfunction sum with its slowly-converging part summed
    in closed form:

        sum_n c_n / (q - p k_n^2)
          = -(1/p) * G0(x, x') + sum_n c_n * q / (p k_n^2 (q - p k_n^2))

    where G0 = x_<(L - x_>)/L is the closed form of sum_n c_n / k_n^2 and
    the remaining series converges like 1/n^4.
    """
    lo, hi = min(x, xp), max(x, xp)
    g0 = lo * (length - hi) / length
    total = -g0 / p_const
    ns = np.arange(1, n_terms + 1)
    k2 = (ns * np.pi / length) ** 2
    c = (2.0 / length) * np.sin(ns * np.pi * x / length) \
        * np.sin(ns * np.pi * xp / length)
    total += np.sum(c * q_const / (p_const * k2 * (q_const - p_const * k2)))
    return total
