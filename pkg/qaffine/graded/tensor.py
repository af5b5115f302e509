# qaffine/graded/tensor.py

"""
Graded Tensor Module for qaffine

Sign-carrying operators of Z2-graded tensor calculus, all expressed as plain
matrices so that equation checking elsewhere uses ordinary multiplication:

- theta_matrix: the diagonal ungrading matrix on V (x) V.
- graded_permutation: P(v_a (x) v_b) = (-1)^([a][b]) v_b (x) v_a.
- theta_gauge: diagonal signs trading theta conjugation for a one-leg
  conjugation, used to align L-operator entries with the graded algebra.
- supertranspose / inverse_supertranspose and their one-leg versions.
- graded_kron / embed_leg / embed_pair: placing operators on tensor legs.
- component_form_rll: the sign-decorated component form of the RLL relation,
  kept as an oracle for the theta-conjugated matrix form.
"""

from itertools import product
from typing import Dict, Sequence, Tuple
import logging

from qaffine.graded.matrix import GradedMatrix, Grading
from qaffine.kernel.ratexpr import RatExpr

logger = logging.getLogger(__name__)


def _sign(exponent: int) -> RatExpr:
    return RatExpr.constant(-1 if exponent % 2 else 1)


def theta_matrix(grading: Grading) -> GradedMatrix:
    """Diagonal matrix with entry (-1)^([a][b]) at pair index (a, b)."""
    n = grading.dim
    entries = {}
    for a, b in product(range(n), repeat=2):
        entries[(a * n + b, a * n + b)] = _sign(grading[a] * grading[b])
    return GradedMatrix(n * n, grading.tensor(grading), entries)


def graded_permutation(grading: Grading) -> GradedMatrix:
    """P on V (x) V, mapping v_a (x) v_b to (-1)^([a][b]) v_b (x) v_a."""
    n = grading.dim
    entries = {}
    for a, b in product(range(n), repeat=2):
        entries[(b * n + a, a * n + b)] = _sign(grading[a] * grading[b])
    return GradedMatrix(n * n, grading.tensor(grading), entries)


def eta_matrix(grading: Grading) -> GradedMatrix:
    """diag((-1)^[a])."""
    return GradedMatrix.diagonal([_sign(p) for p in grading.parities], grading)


def theta_gauge(m: GradedMatrix, grading: Grading) -> GradedMatrix:
    """
    Diagonal sign matrix D with (D (x) D) m (D (x) D) = theta m theta.

    D_1 = +1; the remaining signs are the first vector in (+1, -1) order
    meeting d_a d_b d_c d_d = (-1)^([a][b] + [c][d]) on every nonzero entry
    ((a, b), (c, d)). When no such vector exists the identity is returned.
    """
    n = grading.dim
    pairs = [(divmod(row, n), divmod(col, n)) for row, col in m.entries]
    for tail in product((1, -1), repeat=n - 1):
        d = (1,) + tail
        if all(d[a] * d[b] * d[c] * d[e] == (-1) ** ((grading[a] * grading[b] + grading[c] * grading[e]) % 2)
               for (a, b), (c, e) in pairs):
            logger.debug(f"Theta gauge signs {d}.")
            return GradedMatrix.diagonal([RatExpr.constant(s) for s in d], grading)
    logger.warning("No diagonal sign gauge matches theta conjugation; using the identity.")
    return GradedMatrix.identity(n, grading)


def gauge_first_leg(m: GradedMatrix, grading: Grading) -> GradedMatrix:
    """(D (x) 1) m (D (x) 1) with D = theta_gauge(m, grading)."""
    d = theta_gauge(m, grading).kron(GradedMatrix.identity(grading.dim, grading))
    return d * m * d


def supertranspose(m: GradedMatrix) -> GradedMatrix:
    """(A^st)_ab = (-1)^([a]([a]+[b])) A_ba."""
    g = m.grading
    return GradedMatrix(m.dim, g, {(j, i): _sign(g[j] * (g[j] + g[i])) * v
                                   for (i, j), v in m.entries.items()})


def inverse_supertranspose(m: GradedMatrix) -> GradedMatrix:
    """(A^ist)_ab = (-1)^([b]([a]+[b])) A_ba."""
    g = m.grading
    return GradedMatrix(m.dim, g, {(j, i): _sign(g[i] * (g[j] + g[i])) * v
                                   for (i, j), v in m.entries.items()})


def partial_supertranspose(m: GradedMatrix, leg: int, grading: Grading) -> GradedMatrix:
    """
    Supertransposition in one leg of an operator on V (x) V.

    Entry ((a, b), (c, d)) moves to ((c, b), (a, d)) for leg 1 with sign
    (-1)^([c]([c]+[a])), and to ((a, d), (c, b)) for leg 2 with sign
    (-1)^([d]([d]+[b])).

    Raises:
        ValueError: For a leg other than 1 or 2.
    """
    n = grading.dim
    if m.dim != n * n:
        raise ValueError(f"expected a {n * n}x{n * n} matrix, got {m.dim}x{m.dim}")
    entries = {}
    for (row, col), v in m.entries.items():
        a, b = divmod(row, n)
        c, d = divmod(col, n)
        if leg == 1:
            entries[(c * n + b, a * n + d)] = _sign(grading[c] * (grading[c] + grading[a])) * v
        elif leg == 2:
            entries[(a * n + d, c * n + b)] = _sign(grading[d] * (grading[d] + grading[b])) * v
        else:
            logger.error(f"Invalid supertransposition leg {leg}.")
            raise ValueError(f"leg must be 1 or 2, got {leg}")
    return GradedMatrix(m.dim, m.grading, entries)


def graded_kron(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
    """
    Graded tensor product of operators: (A (x) B)(v (x) w) = (-1)^([B][v]) Av (x) Bw.

    Entry ((i, k), (j, l)) is (-1)^(([k]+[l])[j]) A_ij B_kl, where the parity
    of the elementary operator E_kl is [k]+[l].
    """
    ga, gb = a.grading, b.grading
    n = b.dim
    entries = {}
    for (i, j), x in a.entries.items():
        for (k, l), y in b.entries.items():
            entries[(i * n + k, j * n + l)] = _sign((gb[k] + gb[l]) * ga[j]) * (x * y)
    return GradedMatrix(a.dim * n, ga.tensor(gb), entries)


def embed_leg(m: GradedMatrix, leg: int, legs: int) -> GradedMatrix:
    """
    Places a one-leg operator on leg ``leg`` of a ``legs``-fold tensor power.

    The embedding is the graded tensor product with identities.

    Raises:
        ValueError: For a leg outside 1..legs or legs outside {2, 3}.
    """
    if legs not in (2, 3) or not 1 <= leg <= legs:
        logger.error(f"Invalid leg {leg} of {legs}.")
        raise ValueError(f"bad leg {leg} for a {legs}-fold tensor product")
    identity = GradedMatrix.identity(m.dim, m.grading)
    factors = [identity] * legs
    factors[leg - 1] = m
    result = factors[0]
    for factor in factors[1:]:
        result = graded_kron(result, factor)
    return result


def embed_pair(m: GradedMatrix, legs: Tuple[int, int], n_legs: int = 3, dim: int = 3) -> GradedMatrix:
    """
    Places an operator on V (x) V onto two legs of V^(x n_legs), plainly.

    The remaining legs carry the identity and no signs are introduced, which
    is the convention of the theta-conjugated matrix equations.
    """
    first, second = legs
    if first == second or not (1 <= first <= n_legs and 1 <= second <= n_legs):
        raise ValueError(f"bad legs {legs} for a {n_legs}-fold tensor product")
    others = [k for k in range(1, n_legs + 1) if k not in legs]
    entries = {}
    for (row, col), v in m.entries.items():
        a, b = divmod(row, dim)
        c, d = divmod(col, dim)
        for rest in product(range(dim), repeat=len(others)):
            r_idx = [0] * n_legs
            c_idx = [0] * n_legs
            r_idx[first - 1], r_idx[second - 1] = a, b
            c_idx[first - 1], c_idx[second - 1] = c, d
            for leg, value in zip(others, rest):
                r_idx[leg - 1] = value
                c_idx[leg - 1] = value
            entries[(_flat(r_idx, dim), _flat(c_idx, dim))] = v
    return GradedMatrix(dim ** n_legs, None, entries)


def _flat(indices: Sequence[int], dim: int) -> int:
    total = 0
    for i in indices:
        total = total * dim + i
    return total


def leg_permutation(order: Sequence[int], dim: int = 3, grading: Grading = None) -> GradedMatrix:
    """
    Matrix relabelling tensor legs: the basis vector with leg indices
    (i_1, ..., i_n) is sent to the vector whose leg order[k]-1 carries i_k.
    With a grading, the Koszul sign of the permutation is included.
    """
    n_legs = len(order)
    entries = {}
    for idx in product(range(dim), repeat=n_legs):
        target = [0] * n_legs
        for k, leg in enumerate(order):
            target[leg - 1] = idx[k]
        sign = 0
        if grading is not None:
            for x in range(n_legs):
                for y in range(x + 1, n_legs):
                    if order[x] > order[y]:
                        sign += grading[idx[x]] * grading[idx[y]]
        entries[(_flat(target, dim), _flat(idx, dim))] = _sign(sign)
    return GradedMatrix(dim ** n_legs, None, entries)


# ----------------------------------------------------------------------
# Component-form oracle
# ----------------------------------------------------------------------

def component_form_rll(r: GradedMatrix, l_first: GradedMatrix, l_second: GradedMatrix,
                       r_right: GradedMatrix = None) -> Tuple[Dict, Dict]:
    """
    Both sides of the sign-decorated component RLL relation.

    lhs_{ab,a'b'} = sum R_{ab,a''b''} L1_{a''a'} L2_{b''b'} (-1)^([a']([b']+[b'']))
    rhs_{ab,a'b'} = sum L2_{bb''} L1_{aa''} R'_{a''b'',a'b'} (-1)^([a]([b]+[b'']))

    Args:
        r: Scalar 9x9 matrix on the left.
        l_first, l_second: 3x3 matrices whose entries are operators (blocks).
        r_right: Scalar matrix on the right (defaults to r).

    Returns:
        (lhs, rhs): dicts from (row, col) pair indices to operator values.
    """
    g = l_first.grading
    n = g.dim
    r_right = r if r_right is None else r_right
    lhs: Dict = {}
    rhs: Dict = {}
    for a, b, a1, b1 in product(range(n), repeat=4):
        row, col = a * n + b, a1 * n + b1
        for a2, b2 in product(range(n), repeat=2):
            coeff = r.get(row, a2 * n + b2)
            x = l_first.get(a2, a1)
            y = l_second.get(b2, b1)
            if coeff is not None and x is not None and y is not None:
                term = _sign(g[a1] * (g[b1] + g[b2])) * coeff * (x * y)
                lhs[(row, col)] = term if (row, col) not in lhs else lhs[(row, col)] + term
            coeff = r_right.get(a2 * n + b2, col)
            x = l_second.get(b, b2)
            y = l_first.get(a, a2)
            if coeff is not None and x is not None and y is not None:
                term = _sign(g[a] * (g[b] + g[b2])) * coeff * (x * y)
                rhs[(row, col)] = term if (row, col) not in rhs else rhs[(row, col)] + term
    return lhs, rhs


def theta_form_rll(r: GradedMatrix, l_first: GradedMatrix, l_second: GradedMatrix,
                   r_right: GradedMatrix = None) -> Tuple[GradedMatrix, GradedMatrix]:
    """
    Both sides of R L_1 theta L_2 theta = theta L_2 theta L_1 R' with plain products.
    """
    g = l_first.grading
    n = g.dim
    r_right = r if r_right is None else r_right
    identity = GradedMatrix.identity(n, g)
    theta = theta_matrix(g)
    first = l_first.kron(identity)
    second = theta * identity.kron(l_second) * theta
    return r * first * second, second * first * r_right
