"""Reference computations that share no code with the package.

Everything here works on plain ``{(l, i): coeff}`` dicts and sympy matrices.
The systems are built directly from the chart predicates on a single, generous
window, without the package's window schedule or elimination.
"""

from __future__ import annotations

import sympy as sp


def blowup_terms(f_terms: dict) -> dict:
    """``f(u, z*u)`` for ``f`` given as ``{(a, b): c}`` in ``x, y``; keys ``(l, i)``."""
    return {(b, a + b): c for (a, b), c in f_terms.items()}


def split_width_count(j: int, box: int = 50) -> int:
    """Lattice points ``z^l u^i`` of the second summand with a pole along ``u``.

    Holomorphic off the divisor on U (``l >= 0``), and after multiplication by
    ``z^-j`` holomorphic off the divisor on V (``l - j <= i``), with ``i < 0``.
    The first summand contributes nothing: ``l + j <= i < 0`` is impossible.
    """
    second = sum(1 for i in range(-box, 0) for l in range(0, box) if l - j <= i)
    first = sum(1 for i in range(-box, 0) for l in range(0, box) if l + j <= i)
    return first + second


def split_height_count(j: int, box: int = 50) -> int:
    """Cochain monomials of ``O(j)`` and ``O(-j)`` missed by both charts.

    Component 1 is hit by ``z^j * (l >= 0, i >= 0)`` and by ``l <= i``;
    component 2 by ``z^-j * (l >= 0, i >= 0)`` and by ``l <= i``.
    """
    first = sum(1 for i in range(0, box) for l in range(-box, box) if not (l - j >= 0 or l <= i))
    second = sum(1 for i in range(0, box) for l in range(-box, box) if not (l + j >= 0 or l <= i))
    return first + second


def height_reduced(j: int, p: dict) -> int:
    """``dim H^1`` from the finite box ``0 <= i <= j-2, i < l < j``.

    The split part of ``H^1`` is spanned by that box; the extension class only
    adds the relations ``p * z^m u^k`` with ``0 <= m <= k + j``, read modulo
    everything outside the box.
    """
    box = [(l, i) for i in range(0, j - 1) for l in range(i + 1, j)]
    if not box:
        return 0
    index = {m: k for k, m in enumerate(box)}
    rows = []
    for k in range(0, j):
        for m in range(0, k + j + 1):
            row = [0] * len(box)
            hit = False
            for (pl, pi), c in p.items():
                key = (pl + m, pi + k)
                if key in index:
                    row[index[key]] += c
                    hit = True
            if hit:
                rows.append(row)
    r = sp.Matrix(rows).rank() if rows else 0
    return len(box) - r


def width_bruteforce(j: int, p: dict, reach: int | None = None) -> int:
    """Width from one large window, solved with sympy.

    Unknowns: ``s1, s2`` at ``z^l u^i``, ``0 <= l <= L``, ``|i| <= I``.
    Constraints: ``z^-j s2`` and ``z^j s1 + p s2`` holomorphic off the divisor
    on V.  References beyond the window are zero, which is exact once the
    window is large because such coefficients are forced to vanish.
    """
    I = reach or 2 * j + 3
    max_l = max([l for (l, _) in p] + [0])
    L = 4 * j + 6 + max_l
    unknowns = [(c, l, i) for c in (1, 2) for i in range(-I, I + 1) for l in range(0, L + 1)]
    idx = {v: k for k, v in enumerate(unknowns)}
    rows = {}
    n = 0
    for (c, l, i) in unknowns:
        if c == 2 and l - j > i:
            rows[(n, idx[(2, l, i)])] = 1
            n += 1
    for i in range(-I, I + 1):
        for m in range(i + 1, L + j + max_l + 1):
            row = {}
            if 0 <= m - j <= L:
                row[idx[(1, m - j, i)]] = 1
            for (pl, pi), c in p.items():
                key = (2, m - pl, i - pi)
                if key in idx:
                    row[idx[key]] = row.get(idx[key], 0) + c
            row = {k: v for k, v in row.items() if v != 0}
            if row:
                for k, v in row.items():
                    rows[(n, k)] = v
                n += 1
    M = sp.SparseMatrix(n, len(unknowns), rows)
    kernel = M.nullspace()
    poles = [k for k, (c, l, i) in enumerate(unknowns) if i < 0]
    if not kernel:
        return 0
    return sp.Matrix([[v[k] for k in poles] for v in kernel]).rank()


def quasi_homogeneous_milnor(n: int, m: int) -> int:
    """Milnor number of ``y^n - x^m`` from the monomial basis of the Jacobian algebra."""
    # Jacobian ideal is (x^(m-1), y^(n-1)); its standard monomials are a box
    return sum(1 for a in range(m - 1) for b in range(n - 1))
