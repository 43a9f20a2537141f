"""Exact polynomials in the two edge weights.

Every count in this library is a polynomial in the rung weight c and the
chord weight d with integer coefficients.  WeightPoly is that polynomial,
stored sparsely as {(c_power, d_power): coefficient} with Python big ints,
so counts never overflow or round.
"""

from __future__ import annotations

from fractions import Fraction


class WeightPoly:
    """Polynomial in (c, d) over the integers, immutable by convention."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        cleaned = {}
        if coeffs:
            for (i, j), v in dict(coeffs).items():
                if v:
                    cleaned[(int(i), int(j))] = int(v)
        self.coeffs = cleaned

    # -- constructors ---------------------------------------------------

    @classmethod
    def const(cls, n):
        return cls({(0, 0): n})

    @classmethod
    def c(cls, power=1):
        return cls({(power, 0): 1})

    @classmethod
    def d(cls, power=1):
        return cls({(0, power): 1})

    @classmethod
    def coerce(cls, other):
        if isinstance(other, WeightPoly):
            return other
        if isinstance(other, int):
            return cls.const(other)
        raise TypeError(f"cannot coerce {type(other).__name__} to WeightPoly")

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        other = WeightPoly.coerce(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return WeightPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return WeightPoly({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-WeightPoly.coerce(other))

    def __rsub__(self, other):
        return WeightPoly.coerce(other) + (-self)

    def __mul__(self, other):
        other = WeightPoly.coerce(other)
        out = {}
        for (i1, j1), v1 in self.coeffs.items():
            for (i2, j2), v2 in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + v1 * v2
        return WeightPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = WeightPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = WeightPoly.const(other)
        if not isinstance(other, WeightPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    # -- queries ----------------------------------------------------------

    def is_constant(self):
        return all(k == (0, 0) for k in self.coeffs)

    def as_int(self):
        """The value of a constant polynomial, as a big int."""
        if not self.coeffs:
            return 0
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.coeffs[(0, 0)]

    def degree(self):
        """Total degree, -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(i + j for i, j in self.coeffs)

    def evaluate(self, c, d=0):
        """Evaluate at numeric (c, d).

        Fractions in, Fraction out (exact); floats in, float out.
        """
        if isinstance(c, (int, Fraction)) and isinstance(d, (int, Fraction)):
            total = Fraction(0)
        else:
            total = 0.0
        for (i, j), v in self.coeffs.items():
            total += v * c ** i * d ** j
        return total

    # -- serialization ----------------------------------------------------

    def to_json_dict(self):
        """{"(i,j)": "coef"} with decimal big-int strings."""
        return {f"({i},{j})": str(v) for (i, j), v in sorted(self.coeffs.items())}

    @classmethod
    def from_json_dict(cls, data):
        out = {}
        for key, v in data.items():
            i, j = key.strip("()").split(",")
            out[(int(i), int(j))] = int(v)
        return cls(out)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), v in sorted(self.coeffs.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0])):
            mono = []
            if i == 1:
                mono.append("c")
            elif i > 1:
                mono.append(f"c^{i}")
            if j == 1:
                mono.append("d")
            elif j > 1:
                mono.append(f"d^{j}")
            body = "*".join(mono)
            if not body:
                parts.append(str(v))
            elif v == 1:
                parts.append(body)
            elif v == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{v}*{body}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


ZERO = WeightPoly()
ONE = WeightPoly.const(1)
C = WeightPoly.c()
D = WeightPoly.d()


def poly_mat_mul(A, B):
    """Product of matrices with WeightPoly entries (lists of lists)."""
    n, k, m = len(A), len(B), len(B[0])
    assert len(A[0]) == k
    return [[sum((A[i][t] * B[t][j] for t in range(k)), ZERO) for j in range(m)]
            for i in range(n)]


def poly_vec_mat(v, A):
    """Row vector times matrix, WeightPoly entries."""
    n, m = len(A), len(A[0])
    assert len(v) == n
    return [sum((v[i] * A[i][j] for i in range(n)), ZERO) for j in range(m)]


def poly_mat_eval(A, c, d=0):
    """Evaluate a WeightPoly matrix entrywise at numeric (c, d)."""
    return [[entry.evaluate(c, d) for entry in row] for row in A]
