"""Independent reference computations used by the tests.

Nothing here imports the package's simulation code; each routine rebuilds
its answer from dense matrices or textbook formulas.
"""

import math

import numpy as np


def expm_series(A, terms=30):
    """Matrix exponential by scaling and squaring around a truncated Taylor series."""
    A = np.asarray(A, dtype=complex)
    norm = np.max(np.sum(np.abs(A), axis=1))
    k = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    B = A / 2**k
    out = np.eye(len(A), dtype=complex)
    term = np.eye(len(A), dtype=complex)
    for m in range(1, terms):
        term = term @ B / m
        out = out + term
    for _ in range(k):
        out = out @ out
    return out


def single_qubit_gate(eps):
    a = math.pi / 4 + eps
    return np.array([[math.cos(a), math.sin(a)], [math.sin(a), -math.cos(a)]])


def dense_walsh_hadamard(offsets):
    """Kronecker product with qubit 0 as the least significant index bit."""
    out = np.array([[1.0]])
    for eps in offsets:
        out = np.kron(single_qubit_gate(eps), out)
    return out


def dense_phase(N, index, angle):
    d = np.ones(N, dtype=complex)
    d[index] = np.exp(1j * angle)
    return np.diag(d)


def dense_grover(n, marked, theta, phi, offsets=None):
    """``Q = -I_gamma U^-1 I_tau U`` with ``|gamma> = |0>``, as a dense matrix."""
    N = 2**n
    U = dense_walsh_hadamard(offsets if offsets is not None else [0.0] * n)
    return -dense_phase(N, 0, theta) @ np.linalg.inv(U) @ dense_phase(N, marked, phi) @ U


def projected_operator(n, marked, theta, phi):
    """Column-convention matrix ``<a|Q|b>`` on the basis ``{|1>, |2>}``."""
    N = 2**n
    U = dense_walsh_hadamard([0.0] * n)
    gamma = np.zeros(N)
    gamma[0] = 1.0
    tau = np.zeros(N)
    tau[marked] = 1.0
    u = tau @ U @ gamma
    two = np.linalg.inv(U) @ tau
    one = (gamma - u * two) / math.sqrt(1 - u * u)
    Q = dense_grover(n, marked, theta, phi)
    basis = [one, two]
    return np.array([[basis[a].conj() @ Q @ basis[b] for b in range(2)] for a in range(2)])


def dense_trajectory(n, marked, theta, phi, j_max, offsets=None):
    """``|<tau|U Q^j|gamma>|^2`` for ``j = 0..j_max`` by dense matrix powers."""
    N = 2**n
    U = dense_walsh_hadamard(offsets if offsets is not None else [0.0] * n)
    Q = dense_grover(n, marked, theta, phi, offsets)
    psi = np.zeros(N, dtype=complex)
    psi[0] = 1.0
    out = []
    for _ in range(j_max + 1):
        out.append(abs((U @ psi)[marked]) ** 2)
        psi = Q @ psi
    return np.array(out)


def perfect_grover(j, N):
    return math.sin((2 * j + 1) * math.asin(1 / math.sqrt(N))) ** 2
