"""Exact angular-momentum algebra.

Clebsch-Gordan coefficients (Condon-Shortley convention), the hyperfine
ladder factors a/b, and the angular factors of the sigma-minus dressing
laser used in the 87Sr cooling model.

Quantum numbers are carried as :class:`HalfInt` (twice-value integers), so
half-integer arithmetic is exact; floating point appears only in returned
coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, total_ordering

import numpy as np

__all__ = [
    "HalfInt",
    "XiFactors",
    "clebsch_gordan",
    "ladder_a",
    "ladder_b",
    "xi_factors",
]


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """An exact integer or half-integer quantum number, stored as twice its value."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int):
            raise TypeError(f"HalfInt stores twice the value as int, got {self.twice!r}")

    @classmethod
    def coerce(cls, x) -> "HalfInt":
        """Accept a HalfInt, an int, or a float that is exactly n/2."""
        if isinstance(x, HalfInt):
            return x
        if isinstance(x, (int, np.integer)):
            return cls(2 * int(x))
        if isinstance(x, float):
            twice = 2 * x
            if twice != int(twice):
                raise ValueError(f"{x} is not an integer or half-integer")
            return cls(int(twice))
        raise TypeError(f"cannot interpret {x!r} as a half-integer")

    @property
    def value(self) -> float:
        return self.twice / 2.0

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.value

    def __add__(self, other) -> "HalfInt":
        return HalfInt(self.twice + HalfInt.coerce(other).twice)

    def __sub__(self, other) -> "HalfInt":
        return HalfInt(self.twice - HalfInt.coerce(other).twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __eq__(self, other) -> bool:
        try:
            return self.twice == HalfInt.coerce(other).twice
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other) -> bool:
        return self.twice < HalfInt.coerce(other).twice

    def __hash__(self) -> int:
        return hash(("HalfInt", self.twice))

    def __repr__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def _check_jm(j: HalfInt, m: HalfInt, what: str = "") -> None:
    if j.twice < 0:
        raise ValueError(f"negative angular momentum {what}j={j}")
    if (j.twice - m.twice) % 2 != 0:
        raise ValueError(f"{what}m={m} is not integer-spaced from j={j}")
    if abs(m.twice) > j.twice:
        raise ValueError(f"|{what}m|={m} exceeds j={j}")


def projections(j: HalfInt) -> list[HalfInt]:
    """All magnetic quantum numbers -j ... +j in ascending order."""
    return [HalfInt(t) for t in range(-j.twice, j.twice + 1, 2)]


@lru_cache(maxsize=None)
def _coupled_basis(tj1: int, tj2: int) -> dict:
    """Every coupled state |J, M> of j1 (x) j2 expanded over the product basis.

    Built by seeding each highest-weight state |J, J> (null space of the
    higher-J states within the M=J subspace, sign fixed by the
    Condon-Shortley convention: positive coefficient on the largest m1) and
    then applying the total lowering operator.  Returns a dict keyed by
    (tJ, tM) whose values map (tm1, tm2) -> coefficient.
    """
    j1 = tj1 / 2.0
    j2 = tj2 / 2.0

    def product_states(tM):
        out = []
        for tm1 in range(-tj1, tj1 + 1, 2):
            tm2 = tM - tm1
            if -tj2 <= tm2 <= tj2:
                out.append((tm1, tm2))
        return out

    table: dict = {}
    for tJ in range(tj1 + tj2, abs(tj1 - tj2) - 2, -2):
        tM = tJ
        basis = product_states(tM)
        if tJ == tj1 + tj2:
            vec = {(tj1, tj2): 1.0}
        else:
            rows = [[table[(tJp, tM)].get(s, 0.0) for s in basis]
                    for tJp in range(tj1 + tj2, tJ, -2)]
            _, _, vh = np.linalg.svd(np.asarray(rows))
            coeffs = vh[-1]
            top = max(range(len(basis)), key=lambda i: basis[i][0])
            if coeffs[top] < 0:
                coeffs = -coeffs
            vec = {basis[i]: float(coeffs[i]) for i in range(len(basis))}
        table[(tJ, tM)] = vec
        J = tJ / 2.0
        while tM > -tJ:
            M = tM / 2.0
            norm = math.sqrt(J * (J + 1) - M * (M - 1))
            lowered: dict = {}
            for (tm1, tm2), c in vec.items():
                m1 = tm1 / 2.0
                m2 = tm2 / 2.0
                f1 = j1 * (j1 + 1) - m1 * (m1 - 1)
                if f1 > 0:
                    key = (tm1 - 2, tm2)
                    lowered[key] = lowered.get(key, 0.0) + c * math.sqrt(f1) / norm
                f2 = j2 * (j2 + 1) - m2 * (m2 - 1)
                if f2 > 0:
                    key = (tm1, tm2 - 2)
                    lowered[key] = lowered.get(key, 0.0) + c * math.sqrt(f2) / norm
            tM -= 2
            vec = lowered
            table[(tJ, tM)] = vec
    return table


def clebsch_gordan(j1, m1, j2, m2, J, M) -> float:
    """<j1 m1; j2 m2 | J M> in the Condon-Shortley convention.

    Returns 0 for M != m1 + m2 or couplings outside the triangle rule.
    Arguments may be HalfInt, int, or exact-half floats.
    """
    j1, m1 = HalfInt.coerce(j1), HalfInt.coerce(m1)
    j2, m2 = HalfInt.coerce(j2), HalfInt.coerce(m2)
    J, M = HalfInt.coerce(J), HalfInt.coerce(M)
    _check_jm(j1, m1, "j1: ")
    _check_jm(j2, m2, "j2: ")
    if J.twice < 0:
        raise ValueError(f"negative total angular momentum J={J}")
    if (J.twice - M.twice) % 2 != 0 or abs(M.twice) > J.twice:
        return 0.0
    if M.twice != m1.twice + m2.twice:
        return 0.0
    if not (abs(j1.twice - j2.twice) <= J.twice <= j1.twice + j2.twice):
        return 0.0
    if (j1.twice + j2.twice - J.twice) % 2 != 0:
        return 0.0
    table = _coupled_basis(j1.twice, j2.twice)
    return table[(J.twice, M.twice)].get((m1.twice, m2.twice), 0.0)


def ladder_a(I, J, mJ, mI) -> float:
    """Raising-nuclear / lowering-electron factor sqrt((I-mI)(I+mI+1)) sqrt((J+mJ)(J-mJ+1)).

    Vanishes at the boundaries mI = I or mJ = -J.
    """
    I, J = HalfInt.coerce(I), HalfInt.coerce(J)
    mJ, mI = HalfInt.coerce(mJ), HalfInt.coerce(mI)
    _check_jm(I, mI, "I: ")
    _check_jm(J, mJ, "J: ")
    iv, jv, mjv, miv = I.value, J.value, mJ.value, mI.value
    return math.sqrt((iv - miv) * (iv + miv + 1)) * math.sqrt((jv + mjv) * (jv - mjv + 1))


def ladder_b(I, J, mJ, mI) -> float:
    """Lowering-nuclear / raising-electron factor sqrt((I+mI)(I-mI+1)) sqrt((J-mJ)(J+mJ+1))."""
    I, J = HalfInt.coerce(I), HalfInt.coerce(J)
    mJ, mI = HalfInt.coerce(mJ), HalfInt.coerce(mI)
    _check_jm(I, mI, "I: ")
    _check_jm(J, mJ, "J: ")
    iv, jv, mjv, miv = I.value, J.value, mJ.value, mI.value
    return math.sqrt((iv + miv) * (iv - miv + 1)) * math.sqrt((jv - mjv) * (jv + mjv + 1))


@dataclass(frozen=True)
class XiFactors:
    """Relative amplitudes of the four weaker sigma-minus dressing couplings.

    Normalized so the stretched transition
    |[1P1] mJ=-1, mI=-9/2>  ->  |[1D2] F=13/2, mF=-13/2>  has amplitude 1.
    """

    xi0: float  # F=13/2, mF=-11/2  <-  mJ=0,  spin down
    xi1: float  # F=13/2, mF=-11/2  <-  mJ=-1, spin up
    xi2: float  # F=11/2, mF=-11/2  <-  mJ=0,  spin down
    xi3: float  # F=11/2, mF=-11/2  <-  mJ=-1, spin up


def dressing_amplitude(F, mF, mJ, mI, *, I=HalfInt(9), J=HalfInt(4)) -> float:
    """Un-normalized sigma-minus dipole amplitude <F mF | d_{-} | mJ mI>.

    Photon removes one unit of z-projection from the J=1 electron state; the
    electron lands in the J'=J manifold which is then coupled to the nuclear
    spin I to form F.
    """
    F, mF = HalfInt.coerce(F), HalfInt.coerce(mF)
    mJ, mI = HalfInt.coerce(mJ), HalfInt.coerce(mI)
    I, J = HalfInt.coerce(I), HalfInt.coerce(J)
    mJp = mJ - HalfInt(2)  # mJ - 1
    if abs(mJp.twice) > J.twice:
        return 0.0
    return clebsch_gordan(1, mJ, 1, -1, J, mJp) * clebsch_gordan(J, mJp, I, mI, F, mF)


def xi_factors() -> XiFactors:
    """Angular factors for the 87Sr dressing laser (I=9/2, J=1 -> J'=2, sigma-minus)."""
    I = HalfInt(9)
    up = HalfInt(-7)    # mI = -7/2
    down = HalfInt(-9)  # mI = -9/2
    ref = dressing_amplitude(HalfInt(13), HalfInt(-13), HalfInt(-2), down)
    return XiFactors(
        xi0=dressing_amplitude(HalfInt(13), HalfInt(-11), HalfInt(0), down) / ref,
        xi1=dressing_amplitude(HalfInt(13), HalfInt(-11), HalfInt(-2), up) / ref,
        xi2=dressing_amplitude(HalfInt(11), HalfInt(-11), HalfInt(0), down) / ref,
        xi3=dressing_amplitude(HalfInt(11), HalfInt(-11), HalfInt(-2), up) / ref,
    )
