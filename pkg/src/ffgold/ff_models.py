"""Function-field models and exact counting data.

A model is a triple (prime power q, genus g, L-polynomial coefficients)
subject to the functional-equation symmetry and the Weil bound on the
inverse roots.  Everything downstream (Goldbach sums, the continuation
engine, the pole atlas) consumes only this data.  Counting operations run
over exact integers; floats appear only in the Weil-root validation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from . import galois
from .errors import (
    BudgetExceeded,
    FunctionalEquationViolation,
    InvalidSpec,
    SingularCurve,
    ValidationError,
    WeilViolation,
)

WEIL_TOL = 1e-9          # relative tolerance on |pi_j| vs sqrt(q)
POLY_BUDGET = 10 ** 7    # monic polynomials an enumeration oracle may touch
FIELD_BUDGET = 10 ** 6   # field elements an enumeration oracle may touch


@dataclass(frozen=True)
class PrimePower:
    p: int
    r: int

    def __post_init__(self):
        if not galois.is_prime(self.p):
            raise ValidationError(f"p = {self.p} is not prime")
        if self.r < 1:
            raise ValidationError(f"exponent r = {self.r} must be positive")

    @property
    def q(self) -> int:
        return self.p ** self.r

    @property
    def log_q(self) -> float:
        import math
        return self.r * math.log(self.p)

    @classmethod
    def from_q(cls, q: int) -> "PrimePower":
        """Factor q = p^r; reject non prime powers."""
        if q < 2:
            raise ValidationError(f"q = {q} is not a prime power")
        for p in range(2, q + 1):
            if q % p == 0:
                if not galois.is_prime(p):
                    break
                r = 0
                m = q
                while m % p == 0:
                    m //= p
                    r += 1
                if m != 1:
                    break
                return cls(p, r)
        raise ValidationError(f"q = {q} is not a prime power")


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, coefficients in the
    prime subfield (given as integers)."""
    a1: int = 0
    a2: int = 0
    a3: int = 0
    a4: int = 0
    a6: int = 0

    def discriminant_mod(self, p: int) -> int:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        return disc % p

    @classmethod
    def parse(cls, text: str) -> "WeierstrassCurve":
        """Parse strings like "y2+y=x3", "y2=x3+2x+1", "y2+xy=x3+x2+x+1"."""
        s = text.replace(" ", "").replace("^", "").lower()
        m = re.fullmatch(r"(.+)=(.+)", s)
        if not m:
            raise ValidationError(f"cannot parse curve {text!r}")
        lhs, rhs = m.group(1), m.group(2)

        def terms(side: str):
            side = side.replace("-", "+-")
            return [t for t in side.split("+") if t]

        coeff = {"a1": 0, "a2": 0, "a3": 0, "a4": 0, "a6": 0}
        seen_y2 = seen_x3 = False
        for t in terms(lhs):
            cm = re.fullmatch(r"(-?\d*)(y2|xy|y)", t)
            if not cm:
                raise ValidationError(f"bad term {t!r} in curve {text!r}")
            c = int(cm.group(1)) if cm.group(1) not in ("", "-") else (-1 if cm.group(1) == "-" else 1)
            key = cm.group(2)
            if key == "y2":
                if c != 1:
                    raise ValidationError("y^2 must be monic")
                seen_y2 = True
            elif key == "xy":
                coeff["a1"] += c
            else:
                coeff["a3"] += c
        for t in terms(rhs):
            cm = re.fullmatch(r"(-?\d*)(x3|x2|x)?", t)
            if not cm:
                raise ValidationError(f"bad term {t!r} in curve {text!r}")
            c = int(cm.group(1)) if cm.group(1) not in ("", "-") else (-1 if cm.group(1) == "-" else 1)
            key = cm.group(2)
            if key == "x3":
                if c != 1:
                    raise ValidationError("x^3 must be monic")
                seen_x3 = True
            elif key == "x2":
                coeff["a2"] += c
            elif key == "x":
                coeff["a4"] += c
            else:
                coeff["a6"] += c
        if not (seen_y2 and seen_x3):
            raise ValidationError(f"curve {text!r} must contain y2 and x3")
        return cls(**coeff)


@dataclass(frozen=True)
class FunctionFieldSpec:
    q: PrimePower
    genus: int
    L_coeffs: tuple
    source: str
    curve: Optional[WeierstrassCurve] = field(default=None, compare=False)

    def __post_init__(self):
        c = self.L_coeffs
        g, q = self.genus, self.q.q
        if len(c) != 2 * g + 1:
            raise FunctionalEquationViolation(
                f"L-coefficients must have length 2g+1 = {2 * g + 1}, got {len(c)}")
        if c[0] != 1:
            raise FunctionalEquationViolation("constant coefficient of L must be 1")
        for j in range(2 * g + 1):
            if c[2 * g - j] != q ** (g - j) * c[j]:
                raise FunctionalEquationViolation(
                    f"functional equation broken at index {j}: "
                    f"c[{2 * g - j}] != q^{g - j} * c[{j}]")
        if g > 0:
            for root in self.inverse_roots():
                if abs(abs(root) - q ** 0.5) > WEIL_TOL * q ** 0.5:
                    raise WeilViolation(
                        f"inverse root {root} has modulus {abs(root):.12g} != sqrt({q})")

    def inverse_roots(self):
        """The pi_j with L(u) = prod (1 - pi_j u), polished once by Newton."""
        if self.genus == 0:
            return np.array([], dtype=complex)
        c = np.array(self.L_coeffs, dtype=float)
        roots = np.roots(c[::-1])  # roots of L(u)
        dc = c[1:] * np.arange(1, len(c))
        for _ in range(1):
            val = np.polyval(c[::-1], roots)
            der = np.polyval(dc[::-1], roots)
            step = np.where(der != 0, val / np.where(der != 0, der, 1), 0)
            roots = roots - step
        return 1.0 / roots

    def to_json(self) -> str:
        obj = {
            "p": self.q.p,
            "r": self.q.r,
            "genus": self.genus,
            "L_coeffs": list(self.L_coeffs),
            "source": self.source,
        }
        if self.curve is not None:
            obj["curve"] = {k: getattr(self.curve, k) for k in ("a1", "a2", "a3", "a4", "a6")}
        return json.dumps(obj)

    @classmethod
    def from_json(cls, text: str) -> "FunctionFieldSpec":
        obj = json.loads(text)
        curve = None
        if "curve" in obj:
            curve = WeierstrassCurve(**obj["curve"])
        return cls(
            q=PrimePower(obj["p"], obj["r"]),
            genus=obj["genus"],
            L_coeffs=tuple(obj["L_coeffs"]),
            source=obj["source"],
            curve=curve,
        )


@dataclass(frozen=True)
class PointCounts:
    field: FunctionFieldSpec
    N: tuple  # N[k-1] = #points over the degree-k extension


@dataclass(frozen=True)
class PlaceCounts:
    field: FunctionFieldSpec
    a: tuple  # a[d-1] = #places of degree d


# -- constructors ------------------------------------------------------------

def make_rational_field(q: PrimePower) -> FunctionFieldSpec:
    return FunctionFieldSpec(q=q, genus=0, L_coeffs=(1,), source="rational")


def make_elliptic_field(q: PrimePower, curve: WeierstrassCurve) -> FunctionFieldSpec:
    if curve.discriminant_mod(q.p) == 0:
        raise SingularCurve(f"curve {curve} is singular over F_{q.q}")
    n1 = enumerate_points(curve, q, 1)
    a = q.q + 1 - n1
    if a * a > 4 * q.q:
        raise WeilViolation(f"trace a = {a} violates |a| <= 2*sqrt({q.q})")
    return FunctionFieldSpec(q=q, genus=1, L_coeffs=(1, -a, q.q),
                             source="elliptic", curve=curve)


def make_custom_field(q: PrimePower, L_coeffs) -> FunctionFieldSpec:
    L_coeffs = tuple(int(c) for c in L_coeffs)
    if len(L_coeffs) % 2 != 1 or not L_coeffs:
        raise FunctionalEquationViolation("L-coefficients must have odd length >= 1")
    g = (len(L_coeffs) - 1) // 2
    return FunctionFieldSpec(q=q, genus=g, L_coeffs=L_coeffs, source="custom")


# -- exact counting ----------------------------------------------------------

def power_sums(L_coeffs, k_max: int):
    """Power sums S_k of the inverse roots via Newton's identities.

    Runs over exact integers: with L(u) = sum c_j u^j = prod (1 - pi_j u)
    the elementary symmetric functions are e_j = (-1)^j c_j.
    """
    deg = len(L_coeffs) - 1
    e = [(-1) ** j * L_coeffs[j] for j in range(deg + 1)]
    s = []
    for k in range(1, k_max + 1):
        total = 0
        for i in range(1, min(k - 1, deg) + 1):
            total += (-1) ** (i - 1) * e[i] * s[k - i - 1]
        if k <= deg:
            total += (-1) ** (k - 1) * k * e[k]
        s.append(total)
    return s


def point_counts(spec: FunctionFieldSpec, k_max: int) -> PointCounts:
    if k_max < 1:
        raise ValidationError("k_max must be >= 1")
    q = spec.q.q
    s = power_sums(spec.L_coeffs, k_max)
    n = tuple(q ** k + 1 - s[k - 1] for k in range(1, k_max + 1))
    if any(v < 0 for v in n):
        raise InvalidSpec(f"negative point count in {n}")
    return PointCounts(field=spec, N=n)


def _mobius(n: int) -> int:
    result, m = 1, n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def place_counts(spec: FunctionFieldSpec, k_max: int) -> PlaceCounts:
    counts = point_counts(spec, k_max)
    a = []
    for d in range(1, k_max + 1):
        total = sum(_mobius(d // e) * counts.N[e - 1] for e in range(1, d + 1) if d % e == 0)
        if total % d != 0 or total < 0:
            raise InvalidSpec(
                f"degree-{d} place count {total}/{d} is not a non-negative integer")
        a.append(total // d)
    return PlaceCounts(field=spec, a=tuple(a))


# -- brute-force oracles -----------------------------------------------------

@lru_cache(maxsize=None)
def _irreducibles_fq(p: int, r: int, max_deg: int):
    """All monic irreducibles over F_q of degree <= max_deg, by trial division."""
    fld = galois.ExtField(p, r, budget=FIELD_BUDGET) if r > 1 else None
    elems = list(fld.elements()) if fld else list(range(p))

    def mul(a, b):  # polynomials over F_q as tuples of field elements
        out = [fld.zero if fld else 0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod = fld.mul(x, y) if fld else (x * y) % p
                out[i + j] = fld.add(out[i + j], prod) if fld else (out[i + j] + prod) % p
        return tuple(out)

    def rem(a, b):  # b monic
        a = list(a)
        db = len(b) - 1
        while len(a) - 1 >= db:
            top = a[-1]
            is_zero = (top == fld.zero) if fld else (top == 0)
            if is_zero:
                a.pop()
                continue
            shift = len(a) - 1 - db
            for j in range(db + 1):
                prod = fld.mul(top, b[j]) if fld else (top * b[j]) % p
                a[shift + j] = fld.sub(a[shift + j], prod) if fld else (a[shift + j] - prod) % p
            a.pop()
        while a and (a[-1] == (fld.zero if fld else 0)) and len(a) > 0:
            a.pop()
        return tuple(a)

    import itertools as it
    one = fld.one if fld else 1
    irred = {d: [] for d in range(1, max_deg + 1)}
    for d in range(1, max_deg + 1):
        for low in it.product(elems, repeat=d):
            f = tuple(low) + (one,)
            if all(rem(f, g) for e in range(1, d // 2 + 1) for g in irred[e]):
                irred[d].append(f)
    return irred


def enumerate_irreducibles(q: PrimePower, d: int) -> int:
    """Count monic irreducible degree-d polynomials over F_q by exhaustion."""
    if d < 1:
        raise ValidationError("degree must be >= 1")
    if q.q ** d > POLY_BUDGET:
        raise BudgetExceeded(f"q^d = {q.q ** d} exceeds polynomial budget")
    return len(_irreducibles_fq(q.p, q.r, d)[d])


def enumerate_points(curve: WeierstrassCurve, q: PrimePower, k: int) -> int:
    """Count projective points of the curve over F_{q^k} by exhaustion over x.

    For each x the quadratic in y is solved by a trace criterion (char 2) or
    a quadratic-residue test (odd characteristic); plus the point at infinity.
    """
    if q.q ** k > FIELD_BUDGET:
        raise BudgetExceeded(f"q^k = {q.q ** k} exceeds field budget")
    fld = galois.ExtField(q.p, q.r * k, budget=FIELD_BUDGET)
    a1, a2, a3, a4, a6 = (fld.embed(c) for c in
                          (curve.a1, curve.a2, curve.a3, curve.a4, curve.a6))
    count = 1  # point at infinity
    if q.p == 2:
        for x in fld.elements():
            x2 = fld.mul(x, x)
            rhs = fld.add(fld.add(fld.mul(x2, x), fld.mul(a2, x2)),
                          fld.add(fld.mul(a4, x), a6))
            b = fld.add(fld.mul(a1, x), a3)
            if b == fld.zero:
                count += 1  # squaring is a bijection: unique y
            else:
                c = fld.mul(rhs, fld.inv(fld.mul(b, b)))
                if fld.trace_to_f2(c) == 0:
                    count += 2
    else:
        inv4 = fld.inv(fld.embed(4)) if q.p != 2 else None
        for x in fld.elements():
            x2 = fld.mul(x, x)
            rhs = fld.add(fld.add(fld.mul(x2, x), fld.mul(a2, x2)),
                          fld.add(fld.mul(a4, x), a6))
            b = fld.add(fld.mul(a1, x), a3)
            # (y + b/2)^2 = rhs + b^2/4
            disc = fld.add(rhs, fld.mul(fld.mul(b, b), inv4))
            if disc == fld.zero:
                count += 1
            elif fld.is_square(disc):
                count += 2
    return count


def effective_divisor_count(spec: FunctionFieldSpec, n: int) -> int:
    """Coefficient of u^n in Z(u) = L(u) / ((1-u)(1-qu)), exactly."""
    if n < 0:
        raise ValidationError("degree must be >= 0")
    q = spec.q.q
    total = 0
    for j, c in enumerate(spec.L_coeffs):
        if j > n:
            break
        # coefficient of u^{n-j} in 1/((1-u)(1-qu)) = sum_{m<=n-j} q^m
        total += c * (q ** (n - j + 1) - 1) // (q - 1)
    return total
