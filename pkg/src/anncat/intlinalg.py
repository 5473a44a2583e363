"""Exact integer linear algebra: Smith/Hermite normal forms, kernels and
affine solves of congruence systems, and lexicographic coset reduction.

Everything here runs on Python integers (arbitrary precision, so overflow
cannot occur and is never silently wrapped) except the congruence-system
elimination, which works modulo a small exponent L and stores residues in
int64 numpy arrays; residues and coefficients stay below L**2 * ncols, far
inside int64 range for the moduli this package ever sees (a guard enforces
that bound).
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, u, v) with u*a + v*b == g == gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[int]]:
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in range(len(A))]
    cols = len(B[0])
    return [[sum(a_ik * B[k][j] for k, a_ik in enumerate(row)) for j in range(cols)]
            for row in A]


def det_unimodular(A: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free elimination; intended for small matrices."""
    n = len(A)
    if n == 0:
        return 1
    m = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Diagonalize an integer matrix by unimodular transforms.

    Returns (U, D, V) with U*A*V == D, D diagonal with nonnegative entries
    d1 | d2 | ..., and U, V unimodular.  Rectangular and zero-sized inputs
    are fine.
    """
    U, D, V, _ = _snf_engine(A, want_uinv=False)
    return U, D, V


def smith_normal_form_with_uinv(A):
    """Like smith_normal_form, additionally returning the inverse of U."""
    U, D, V, Uinv = _snf_engine(A, want_uinv=True)
    return U, D, V, Uinv


def _snf_engine(A, want_uinv):
    r = len(A)
    c = len(A[0]) if r else 0
    M = [list(row) for row in A]
    U = identity_matrix(r)
    V = identity_matrix(c)
    Uinv = identity_matrix(r) if want_uinv else None

    def swap_rows(i, j):
        if i == j:
            return
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]
        if Uinv is not None:
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):
        # row_i -= q * row_j
        if q == 0:
            return
        Mi, Mj = M[i], M[j]
        for k in range(c):
            Mi[k] -= q * Mj[k]
        Ui, Uj = U[i], U[j]
        for k in range(r):
            Ui[k] -= q * Uj[k]
        if Uinv is not None:
            for row in Uinv:
                row[j] += q * row[i]

    def negate_row(i):
        M[i] = [-x for x in M[i]]
        U[i] = [-x for x in U[i]]
        if Uinv is not None:
            for row in Uinv:
                row[i] = -row[i]

    def swap_cols(i, j):
        if i == j:
            return
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_col(i, j, q):
        # col_i -= q * col_j
        if q == 0:
            return
        for row in M:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    t = 0
    while t < min(r, c):
        # locate a pivot: nonzero entry of least absolute value in M[t:, t:]
        piv = None
        best = None
        for i in range(t, r):
            for j in range(t, c):
                v = M[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, r):
                if M[i][t]:
                    q = M[i][t] // M[t][t]
                    add_row(i, t, q)
                    if M[i][t]:
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            # clear row t
            for j in range(t + 1, c):
                if M[t][j]:
                    q = M[t][j] // M[t][t]
                    add_col(j, t, q)
                    if M[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide the remaining block for the divisor chain
            stop = True
            for i in range(t + 1, r):
                row = M[i]
                for j in range(t + 1, c):
                    if row[j] % M[t][t]:
                        add_row(t, i, -1)
                        stop = False
                        break
                if not stop:
                    break
            if stop:
                break
        if M[t][t] < 0:
            negate_row(t)
        t += 1
    return U, M, V, Uinv


def diagonal_of(D: Sequence[Sequence[int]]) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def hermite_column_basis(cols: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """Canonical column-echelon basis of the lattice spanned by `cols` in Z^dim.

    Returns a list of basis columns, each with its pivot (first nonzero
    entry) positive, pivots on strictly increasing rows, and entries of
    earlier columns in each pivot row reduced into [0, pivot).
    """
    work = [list(col) for col in cols if any(col)]
    basis: list[list[int]] = []
    for row in range(dim):
        live = [col for col in work if col[row]]
        rest = [col for col in work if not col[row]]
        if not live:
            work = rest
            continue
        pivot = live[0]
        for col in live[1:]:
            a, b = pivot[row], col[row]
            g, u, v = xgcd(a, b)
            pa, pb = a // g, b // g
            new_pivot = [u * x + v * y for x, y in zip(pivot, col)]
            new_col = [pb * x - pa * y for x, y in zip(pivot, col)]
            pivot, col[:] = new_pivot, new_col
            if any(col):
                rest.append(col)
        if pivot[row] < 0:
            pivot = [-x for x in pivot]
        # reduce pivot rows of previously fixed columns
        for col in basis:
            if col[row]:
                q = col[row] // pivot[row]
                for k in range(dim):
                    col[k] -= q * pivot[k]
        basis.append(pivot)
        work = rest
    return basis


def express_in_hermite(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Integer coordinates of v in an echelon basis, or None if v is outside."""
    residual = list(v)
    coeffs = [0] * len(basis)
    pivots = []
    for j, col in enumerate(basis):
        row = next(i for i, x in enumerate(col) if x)
        pivots.append((row, j))
    for row, j in sorted(pivots):
        col = basis[j]
        if residual[row] % col[row]:
            return None
        q = residual[row] // col[row]
        coeffs[j] = q
        for k in range(len(residual)):
            residual[k] -= q * col[k]
    if any(residual):
        return None
    return coeffs


_INT64_GUARD = 2 ** 40


class CongruenceSystem:
    """Incremental solver for A x = b over x in prod Z_{m_j}, rows mod d_r.

    Rows are lifted to a common exponent L = lcm(all moduli); the solution
    subgroup is maintained as a generator matrix over Z_L and finally reduced
    coordinate-wise mod the column moduli.  Valid whenever the row map is a
    genuine homomorphism (m_j * column_j = 0 mod the row moduli), which holds
    for every system this package builds.
    """

    def __init__(self, col_moduli: Sequence[int], exponent: int):
        self.m = np.asarray(col_moduli, dtype=np.int64)
        self.L = int(exponent)
        for mj in col_moduli:
            if self.L % mj:
                raise ValueError("exponent must be a multiple of every column modulus")
        if self.L * self.L * max(1, len(col_moduli)) > _INT64_GUARD:
            raise ValueError("moduli too large for the int64 elimination path")
        n = len(col_moduli)
        self.G = np.eye(n, dtype=np.int64) % self.L
        self.x0 = np.zeros(n, dtype=np.int64)
        self.feasible = True

    def add_row(self, a: np.ndarray, b: int, row_modulus: int) -> None:
        """Impose a . x = b (mod row_modulus)."""
        if not self.feasible:
            return
        L = self.L
        scale = L // row_modulus
        a = (np.asarray(a, dtype=np.int64) * scale) % L
        b = (int(b) * scale) % L
        w = (a @ self.G) % L
        r = (b - int(a @ self.x0)) % L
        nz = np.flatnonzero(w)
        if nz.size == 0:
            if r % L:
                self.feasible = False
            return
        p = int(nz[0])
        for j in map(int, nz[1:]):
            g, u, v = xgcd(int(w[p]), int(w[j]))
            cp = (u * self.G[:, p] + v * self.G[:, j]) % L
            cj = ((int(w[j]) // g) * self.G[:, p] - (int(w[p]) // g) * self.G[:, j]) % L
            self.G[:, p], self.G[:, j] = cp, cj
            w[p], w[j] = g % L, 0
        g = int(w[p])
        dd = math.gcd(g, L)
        if r % dd:
            self.feasible = False
            return
        if r:
            step = L // dd
            t = (r // dd) * pow((g // dd) % step, -1, step) % step
            self.x0 = (self.x0 + t * self.G[:, p]) % L
        self.G[:, p] = (self.G[:, p] * (L // dd)) % L

    def solution(self) -> tuple[np.ndarray | None, np.ndarray]:
        """Return (particular solution mod column moduli or None, kernel generators)."""
        gens = self.G % self.m[:, None] if self.G.size else self.G
        keep = [j for j in range(gens.shape[1]) if gens[:, j].any()]
        gens = gens[:, keep]
        if not self.feasible:
            return None, gens
        return self.x0 % self.m, gens


def kernel_mod(rows: np.ndarray, row_moduli: Sequence[int], col_moduli: Sequence[int]) -> np.ndarray:
    """Generators (columns) of {x in prod Z_{m_j} : rows . x = 0 mod row moduli}."""
    L = 1
    for v in list(col_moduli) + list(row_moduli):
        L = L * v // math.gcd(L, v)
    sys = CongruenceSystem(col_moduli, L)
    for a, d in zip(rows, row_moduli):
        sys.add_row(a, 0, int(d))
    _, gens = sys.solution()
    return gens


def solve_affine_mod(rows: np.ndarray, rhs: Sequence[int], row_moduli: Sequence[int],
                     col_moduli: Sequence[int]) -> tuple[np.ndarray | None, np.ndarray]:
    """Particular solution and kernel generators of rows . x = rhs."""
    L = 1
    for v in list(col_moduli) + list(row_moduli):
        L = L * v // math.gcd(L, v)
    sys = CongruenceSystem(col_moduli, L)
    for a, b, d in zip(rows, rhs, row_moduli):
        sys.add_row(a, int(b), int(d))
        if not sys.feasible:
            break
    return sys.solution()


def lex_least_in_coset(v: Sequence[int], gens: np.ndarray, moduli: Sequence[int]) -> np.ndarray:
    """Lexicographically least element of v + <gens> inside prod Z_{m_j}.

    Coordinates are compared in their normalized range [0, m_j); the subgroup
    is generated by the columns of `gens` (reduced coordinate-wise).
    """
    m = np.asarray(moduli, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64) % m
    if gens.size == 0:
        return v
    G = gens.copy() % m[:, None]
    for j in range(len(m)):
        mj = int(m[j])
        if mj == 1 or G.size == 0:
            continue
        w = G[j, :] % mj
        nz = np.flatnonzero(w)
        if nz.size == 0:
            continue
        p = int(nz[0])
        for k in map(int, nz[1:]):
            g, u, vv = xgcd(int(w[p]), int(w[k]))
            cp = u * G[:, p] + vv * G[:, k]
            ck = (int(w[k]) // g) * G[:, p] - (int(w[p]) // g) * G[:, k]
            G[:, p], G[:, k] = cp % m, ck % m
            w[p], w[k] = g % mj, 0
        d = int(w[p])
        cj = math.gcd(d, mj)
        target = int(v[j]) % cj
        diff = (int(v[j]) - target) % mj
        step = mj // cj
        t = (diff // cj) * pow((d // cj) % step, -1, step) % step
        v = (v - t * G[:, p]) % m
        G[:, p] = (G[:, p] * step) % m
    return v
