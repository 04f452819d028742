"""Torus-invariant divisors: Cartier data, Picard classes, positivity.

A divisor is a plain tuple of integer coefficients, one per fan ray.  The
class map into Z^rho (rho = #rays - dim) is the cokernel projection of the
principal divisor map m |-> (<m, v_j>)_j, fixed once per fan from the Smith
normal form of the ray matrix.  Class vectors are stable within a process
but depend on the ray order; cross-run comparisons should go through
linearly_equivalent.
"""

from dataclasses import dataclass

import numpy as np

from .lattice import as_vector, smith_normal_form, solve_integral


class TorsionDetected(RuntimeError):
    """The divisor class group has torsion: the fan cannot be smooth complete."""


def _coeffs(fan, divisor):
    d = tuple(int(x) for x in divisor)
    if len(d) != len(fan.rays):
        raise ValueError(
            f"divisor has {len(d)} coefficients but the fan has {len(fan.rays)} rays")
    return d


def canonical_divisor(fan):
    """K = -(Z_1 + ... + Z_m): every coefficient is -1."""
    return tuple(-1 for _ in fan.rays)


def principal_divisor(fan, m):
    """div(chi^m) = sum <m, v_j> Z_j for a lattice functional m."""
    mv = as_vector(m)
    return tuple(int(x) for x in fan.ray_matrix @ mv)


def cartier_data(fan, divisor):
    """Per maximal cone, the functional m_sigma with <m_sigma, v_j> = -a_j.

    On a smooth fan every divisor is Cartier and each m_sigma is the unique
    integral solution over the cone's ray basis.
    """
    a = _coeffs(fan, divisor)
    data = []
    for cone, inv in zip(fan.max_cones, fan.cone_inverses):
        rhs = np.array([-a[j] for j in cone], dtype=object)
        data.append(tuple(int(x) for x in inv @ rhs))
    return tuple(data)


def _pic_projection(fan):
    key = "pic_projection"
    if key in fan._cache:
        return fan._cache[key]
    n = fan.dim
    u, s, _ = smith_normal_form(fan.ray_matrix)
    for i in range(n):
        if s[i, i] != 1:
            raise TorsionDetected(
                f"ray matrix has invariant factor {s[i, i]}; "
                "the divisor class group is not free of rank #rays - dim")
    proj = u[n:]
    fan._cache[key] = proj
    return proj


def picard_rank(fan):
    return len(fan.rays) - fan.dim


def divisor_class(fan, divisor):
    """Image of the divisor in Pic, a length-rho integer vector."""
    a = _coeffs(fan, divisor)
    proj = _pic_projection(fan)
    return tuple(int(x) for x in proj @ np.array(a, dtype=object))


def linearly_equivalent(fan, d1, d2):
    """True when d1 - d2 is the divisor of a character."""
    a = np.array(_coeffs(fan, d1), dtype=object) - np.array(_coeffs(fan, d2), dtype=object)
    return solve_integral(fan.ray_matrix, a) is not None


@dataclass(frozen=True)
class PositivityReport:
    ok: bool
    mode: str
    witness: tuple = None  # (cone index, ray index) violating the inequality

    def __bool__(self):
        return self.ok


def positivity(fan, divisor, mode):
    """Nef/ample test by convexity of the Cartier data.

    ample:  <m_sigma, v_j> > -a_j for every maximal cone and every ray not
    in the cone; nef: the same with >=.  Returns the first violating pair.
    """
    if mode not in ("nef", "ample"):
        raise ValueError(f"mode must be 'nef' or 'ample', got {mode!r}")
    a = _coeffs(fan, divisor)
    data = cartier_data(fan, divisor)
    for ci, cone in enumerate(fan.max_cones):
        m = np.array(data[ci], dtype=object)
        inside = set(cone)
        for j, ray in enumerate(fan.rays):
            if j in inside:
                continue
            val = int(np.dot(m, np.array(ray, dtype=object)))
            if val < -a[j] or (mode == "ample" and val == -a[j]):
                return PositivityReport(False, mode, (ci, j))
    return PositivityReport(True, mode)


def is_fano(fan):
    """Fano means the anticanonical divisor -K is ample."""
    minus_k = tuple(1 for _ in fan.rays)
    return positivity(fan, minus_k, "ample").ok
