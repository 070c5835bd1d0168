r"""
Real 2x2 matrices.

Used for the branch Jacobians `J_L`, `J_R` and for the composite Jacobians
of symbolic sequences.

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

import math
from dataclasses import dataclass

import numpy as np

@dataclass(frozen=True)
class Mat2:
    r"""
    Immutable real 2x2 matrix ``[[m11, m12], [m21, m22]]``.

    EXAMPLES::

        >>> M = Mat2(1.0, 2.0, 3.0, 4.0)
        >>> M.det(), M.trace()
        (-2.0, 5.0)
        >>> (M @ Mat2.identity()) == M
        True
    """
    m11: float
    m12: float
    m21: float
    m22: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.m11, self.m12, self.m21, self.m22)):
            raise ValueError(f"Mat2 entries must be finite, got {self.as_tuple()}.")

    @classmethod
    def identity(cls):
        '''Returns the identity matrix.'''
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_array(cls, arr):
        '''Builds a Mat2 from anything numpy can read as a 2x2 array.'''
        a = np.asarray(arr, dtype=float)
        if a.shape != (2, 2):
            raise ValueError(f"expected a 2x2 array, got shape {a.shape}.")
        return cls(float(a[0, 0]), float(a[0, 1]), float(a[1, 0]), float(a[1, 1]))

    def as_tuple(self):
        return (self.m11, self.m12, self.m21, self.m22)

    def as_array(self):
        '''Returns the matrix as a numpy array of shape (2, 2).'''
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=float)

    def det(self):
        return self.m11*self.m22 - self.m12*self.m21

    def trace(self):
        return self.m11 + self.m22

    def apply(self, x, y):
        r"""
        Returns the image ``M (x, y)^T`` as a tuple.

        INPUT:

        - ``x``, ``y`` -- float; the coordinates of the vector.

        OUTPUT: tuple of two floats
        """
        return (self.m11*x + self.m12*y, self.m21*x + self.m22*y)

    def __matmul__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(
            self.m11*other.m11 + self.m12*other.m21,
            self.m11*other.m12 + self.m12*other.m22,
            self.m21*other.m11 + self.m22*other.m21,
            self.m21*other.m12 + self.m22*other.m22,
        )

    def minus_identity(self):
        '''Returns ``M - I``.'''
        return Mat2(self.m11 - 1.0, self.m12, self.m21, self.m22 - 1.0)

    def is_close(self, other, rel_tol=1e-9, abs_tol=1e-12):
        '''Entrywise comparison with math.isclose semantics.'''
        return all(math.isclose(a, b, rel_tol=rel_tol, abs_tol=abs_tol)
                   for a, b in zip(self.as_tuple(), other.as_tuple()))
