r"""
Symbolic sequences and the linear algebra of composite maps.

A symbolic sequence `sigma = sigma_0 sigma_1 ... sigma_{n-1}` over `{L, R}`
names the composite linear map that applies `F_{sigma_0}` first and
`F_{sigma_{n-1}}` last, so that::

    J_sigma = J_{sigma_{n-1}} ... J_{sigma_1} J_{sigma_0}

With this order `J_{LR^{n-1}} = J_R^{n-1} J_L`, and a point of the first
segment of a `sigma`-cycle visits the partitions in the order of the word.

AUTHORS:

- wqa-lib developers (2026-10-18): initial version

"""

# ****************************************************************************
#       Copyright (C) 2026 wqa-lib developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 2 of the License, or
# (at your option) any later version.
#                  https://www.gnu.org/licenses/
# ****************************************************************************

import cmath
import math
import re
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Optional

import numpy as np

from .errors import PreconditionError
from .mat2 import Mat2
from .pwlmap import Partition, branch_matrix

MAX_WORD_LENGTH = 64
DISCRIMINANT_TOLERANCE = 1e-12

_TOKEN = re.compile(r"([LR])(?:\^(\d+))?")

class SymbolicSequence:
    r"""
    A nonempty word over ``{L, R}`` of length at most 64.

    Words can be written letter by letter or with exponents.

    EXAMPLES::

        >>> s = SymbolicSequence("LR^4")
        >>> len(s), s.word, str(s)
        (5, 'LRRRR', 'LR^4')
        >>> SymbolicSequence("LLRRR") == SymbolicSequence.complementary(5)
        True
    """
    def __init__(self, word):
        if isinstance(word, SymbolicSequence):
            word = word.word
        elif not isinstance(word, str):
            word = "".join(Partition(letter).value for letter in word)
        self.word = self._expand(word)
        if len(self.word) == 0:
            raise PreconditionError("a symbolic sequence must not be empty.")
        if len(self.word) > MAX_WORD_LENGTH:
            raise PreconditionError(
                f"symbolic sequence has length {len(self.word)}, the maximum is {MAX_WORD_LENGTH}.")

    @staticmethod
    def _expand(text):
        text = text.replace(" ", "")
        pos, letters = 0, []
        while pos < len(text):
            match = _TOKEN.match(text, pos)
            if match is None:
                raise ValueError(f"cannot read symbolic sequence {text!r} at position {pos}.")
            count = int(match.group(2)) if match.group(2) is not None else 1
            if count > MAX_WORD_LENGTH:
                raise PreconditionError(f"exponent {count} in {text!r} exceeds {MAX_WORD_LENGTH}.")
            letters.append(match.group(1)*count)
            pos = match.end()
        return "".join(letters)

    @classmethod
    def basic(cls, n, first=Partition.L):
        r"""
        Returns `LR^{n-1}`, or `RL^{n-1}` when ``first`` is ``R``.
        """
        first = Partition(first)
        return cls(first.value + first.mirrored().value*(n - 1))

    @classmethod
    def complementary(cls, n, first=Partition.L):
        r"""
        Returns `L^2R^{n-2}`, or `R^2L^{n-2}` when ``first`` is ``R``.
        """
        first = Partition(first)
        return cls(first.value*2 + first.mirrored().value*(n - 2))

    def __len__(self):
        return len(self.word)

    def __iter__(self):
        return (Partition(c) for c in self.word)

    def __getitem__(self, j):
        return Partition(self.word[j])

    def __eq__(self, other):
        return isinstance(other, SymbolicSequence) and self.word == other.word

    def __hash__(self):
        return hash(self.word)

    def __repr__(self):
        return f"SymbolicSequence({str(self)!r})"

    def __str__(self):
        r"""
        Compact form with exponents, e.g. ``L^2R^3``.
        """
        out = []
        for letter, run in _runs(self.word):
            out.append(letter if run == 1 else f"{letter}^{run}")
        return "".join(out)

    def count(self, label):
        '''Number of occurrences of ``label`` in the word.'''
        return self.word.count(Partition(label).value)

    def rotation(self, k):
        '''Returns the cyclic shift starting at letter ``k``.'''
        k %= len(self.word)
        return SymbolicSequence(self.word[k:] + self.word[:k])

    def rotations(self):
        return [self.rotation(k) for k in range(len(self.word))]

    def is_rotation_of(self, other):
        return len(self) == len(other) and self.word in (other.word + other.word)

    def mirrored(self):
        '''Returns the word with ``L`` and ``R`` exchanged.'''
        return SymbolicSequence(self.word.translate(str.maketrans("LR", "RL")))

    def to_dict(self):
        return {"word": self.word}

    @classmethod
    def from_dict(cls, data):
        return cls(data["word"])

def _runs(word):
    runs = []
    for letter in word:
        if runs and runs[-1][0] == letter:
            runs[-1][1] += 1
        else:
            runs.append([letter, 1])
    return [(letter, run) for letter, run in runs]

def all_words(min_length, max_length):
    r"""
    Returns all words over ``{L, R}`` with length in
    ``[min_length, max_length]``, shortest first and in lexicographic order.

    EXAMPLES::

        >>> len(all_words(2, 6))
        124
    """
    words = []
    for n in range(min_length, max_length + 1):
        words.extend(SymbolicSequence("".join(w)) for w in product("LR", repeat=n))
    return words

def _recurrence(tau, delta, k):
    if k < -1:
        raise PreconditionError(f"recurrence index must be at least -1, got {k}.")
    if k > MAX_WORD_LENGTH:
        raise PreconditionError(f"recurrence index {k} exceeds {MAX_WORD_LENGTH}.")
    if k == -1:
        return 0.0
    prev, cur = 0.0, 1.0
    for _ in range(k):
        prev, cur = cur, tau*cur - delta*prev
    return cur

def recurrence_a(params, k):
    r"""
    Returns `a_k`, where ``a_k = tau_R a_{k-1} - delta_R a_{k-2}``,
    ``a_{-1} = 0`` and ``a_0 = 1``.

    The powers of `J_R` are ``[[a_k, a_{k-1}], [-delta_R a_{k-1}, -delta_R a_{k-2}]]``.

    EXAMPLES::

        >>> recurrence_a(MapParams(0.9, 0.7, 1.2, -2.0), 2)
        3.3
    """
    return _recurrence(params.tau_R, params.delta_R, k)

def recurrence_b(params, k):
    r"""
    Returns `b_k`, the mirror of :func:`recurrence_a` built from
    ``tau_L`` and ``delta_L``.
    """
    return _recurrence(params.tau_L, params.delta_L, k)

def composite_matrix(params, sigma):
    r"""
    Returns `J_sigma`, the product of the branch Jacobians along ``sigma``
    with the first letter applied first.

    EXAMPLES::

        >>> p = MapParams(0.9, 0.7, -2.0, 1.16)
        >>> J = composite_matrix(p, SymbolicSequence("LR"))
        >>> J == branch_matrix(p, Partition.R) @ branch_matrix(p, Partition.L)
        True
    """
    return prefix_matrices(params, sigma)[-1]

def prefix_matrices(params, sigma):
    r"""
    Returns the list ``[I, J_{sigma_0}, J_{sigma_1} J_{sigma_0}, ..., J_sigma]``
    of the ``len(sigma) + 1`` partial products.
    """
    sigma = SymbolicSequence(sigma)
    J_L = branch_matrix(params, Partition.L)
    J_R = branch_matrix(params, Partition.R)
    prefixes = [Mat2.identity()]
    for label in sigma:
        prefixes.append((J_L if label is Partition.L else J_R) @ prefixes[-1])
    return prefixes

def basic_closed_form(params, n):
    r"""
    Returns `J_{LR^{n-1}}` assembled from the recurrence `a_k`.
    """
    a = lambda k: recurrence_a(params, k)
    return Mat2(
        params.tau_L*a(n - 1) - params.delta_L*a(n - 2),
        a(n - 1),
        -params.tau_L*params.delta_R*a(n - 2) + params.delta_L*params.delta_R*a(n - 3),
        -params.delta_R*a(n - 2),
    )

def char_poly_at(params, sigma, lam):
    r"""
    Returns ``P_sigma(lam) = lam^2 - tr(J_sigma) lam + det(J_sigma)``.
    """
    J = composite_matrix(params, sigma)
    return lam*lam - J.trace()*lam + J.det()

class EigenKind(Enum):
    REAL_DISTINCT = "real-distinct"
    REAL_DOUBLE = "real-double"
    COMPLEX_CONJUGATE = "complex-conjugate"

@dataclass(frozen=True)
class EigenData:
    r"""
    Eigenvalues of a 2x2 matrix and, when they are real, the slopes of the
    eigenvectors through the origin. A vertical eigenvector has slope
    ``math.inf``.

    ``lambda1`` is the eigenvalue with the larger real part (the larger
    eigenvalue in the real case). A double eigenvalue carries a single slope
    in ``slope1``.
    """
    kind: EigenKind
    lambda1: complex
    lambda2: complex
    slope1: Optional[float] = None
    slope2: Optional[float] = None

    def is_real(self):
        return self.kind is not EigenKind.COMPLEX_CONJUGATE

    def spectral_radius(self):
        return max(abs(self.lambda1), abs(self.lambda2))

def eigenvector_slope(M, lam):
    r"""
    Returns the slope of the eigenvector of ``M`` for the real eigenvalue
    ``lam``, ``math.inf`` if it is vertical.

    The eigenvector is orthogonal to the larger row of ``M - lam I``. If both
    rows vanish every direction is an eigenvector and the slope 0 is returned.
    """
    rows = ((M.m11 - lam, M.m12), (M.m21, M.m22 - lam))
    a, b = max(rows, key=lambda r: math.hypot(*r))
    scale = math.hypot(a, b)
    if scale == 0.0:
        return 0.0
    if abs(b) <= 1e-15*scale:
        return math.inf
    return -a/b

def eigen2(M):
    r"""
    Returns the :class:`EigenData` of the 2x2 matrix ``M``.

    A discriminant within ``1e-12`` of zero is treated as a double eigenvalue.

    EXAMPLES::

        >>> eigen2(Mat2.identity()).kind
        <EigenKind.REAL_DOUBLE: 'real-double'>
        >>> abs(eigen2(Mat2(1.16, 1.0, -0.7, 0.0)).lambda1)**2  # doctest: +ELLIPSIS
        0.7...
    """
    tr, det = M.trace(), M.det()
    disc = tr*tr - 4.0*det
    if abs(disc) <= DISCRIMINANT_TOLERANCE:
        lam = tr/2.0
        return EigenData(EigenKind.REAL_DOUBLE, complex(lam), complex(lam), eigenvector_slope(M, lam), None)
    if disc > 0:
        root = math.sqrt(disc)
        l1, l2 = (tr + root)/2.0, (tr - root)/2.0
        return EigenData(EigenKind.REAL_DISTINCT, complex(l1), complex(l2),
                         eigenvector_slope(M, l1), eigenvector_slope(M, l2))
    root = cmath.sqrt(disc)
    return EigenData(EigenKind.COMPLEX_CONJUGATE, (tr + root)/2.0, (tr - root)/2.0)

def _poly_tolerance(J, tol):
    return tol*max(1.0, abs(J.trace()), abs(J.det()))

def eigen_slope_at_one(params, sigma, tol=1e-8):
    r"""
    Returns the slope `K^sigma` of the line of fixed points of the linear map
    `F_sigma`, i.e. of the eigenvector of `J_sigma` for the eigenvalue 1.

    INPUT:

    - ``params`` -- MapParams
    - ``sigma`` -- SymbolicSequence
    - ``tol`` -- float (default: ``1e-8``); ``|P_sigma(1)|`` must not exceed
      ``tol`` times the size of the coefficients of `P_sigma`.

    OUTPUT: float; ``math.inf`` when the eigenvector is vertical. For
    `LR^{n-1}` this is::

        K = delta_R (delta_L a_{n-3} - tau_L a_{n-2}) / (delta_R a_{n-2} + 1)
    """
    J = composite_matrix(params, sigma)
    residual = 1.0 - J.trace() + J.det()
    if abs(residual) > _poly_tolerance(J, tol):
        raise PreconditionError(
            f"P_sigma(1) = {residual!r} for sigma = {SymbolicSequence(sigma)}; 1 is not an eigenvalue.")
    return eigenvector_slope(J, 1.0)

def closed_form_slope(params, sigma):
    r"""
    Returns `K^sigma` from the closed forms of the basic family `LR^{n-1}`
    and the complementary family `L^2R^{n-2}` (``n >= 3``), or of their
    mirrors, evaluated from the recurrences.

    Used as an independent check of :func:`eigen_slope_at_one`. Returns
    ``math.inf`` where the denominator vanishes.
    """
    sigma = SymbolicSequence(sigma)
    n = len(sigma)
    if n < 3:
        raise ValueError(f"closed form slopes need n >= 3, got {sigma}.")
    if sigma.word[0] == "R":
        # J_{RL^{n-1}} at p is J_{LR^{n-1}} at the mirrored parameters
        return closed_form_slope(params.mirrored(), sigma.mirrored())

    dL, dR, tL = params.delta_L, params.delta_R, params.tau_L
    a = lambda k: recurrence_a(params, k)
    if sigma == SymbolicSequence.basic(n):
        num = dR*(dL*a(n - 3) - tL*a(n - 2))
        den = dR*a(n - 2) + 1.0
    elif sigma == SymbolicSequence.complementary(n):
        num = dR*(dL*a(n - 3) + tL*(dL*a(n - 4) - tL*a(n - 3)))
        den = dR*(tL*a(n - 3) - dL*a(n - 4)) + 1.0
    else:
        raise ValueError(f"no closed form slope for {sigma}.")
    if den == 0.0:
        return math.inf
    return num/den

def fixed_point_of_composite(params, sigma):
    r"""
    Solves ``(J_sigma - I) v = 0`` and returns the unique solution ``(0, 0)``.

    Raises PreconditionError when ``J_sigma - I`` is singular, in which case
    the solutions form the line returned by :func:`eigen_slope_at_one`.
    """
    A = composite_matrix(params, sigma).minus_identity()
    if abs(A.det()) <= 1e-14*max(1.0, abs(A.m11*A.m22), abs(A.m12*A.m21)):
        raise PreconditionError(f"J_sigma - I is singular for sigma = {SymbolicSequence(sigma)}.")
    v = np.linalg.solve(A.as_array(), np.zeros(2))
    return (float(v[0]), float(v[1]))
