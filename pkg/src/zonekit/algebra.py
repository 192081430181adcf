"""Exact polynomial algebra on the Gaussian-weighted Hilbert space.

States are finite complex-coefficient expansions over monomials
z_1^p1 zbar_1^v1 ... z_m^pm zbar_m^vm (m = k/2 complex coordinates).  The
Gaussian density e^{-lam |X|^2} lives in the inner product, so operators act
by exact coefficient rewrites and this module serves as the ground-truth
oracle for every closed-form kernel.
"""

from __future__ import annotations

import json
import math
from typing import Callable, Iterable, Mapping

import numpy as np

from .params import PhysParams

# a monomial key is ((p1, v1), ..., (pm, vm))
Key = tuple[tuple[int, int], ...]

class ZonePolynomial:
    """Sparse polynomial in the weighted Hilbert space."""

    __slots__ = ("coefficients", "params")

    def __init__(self, coefficients: Mapping[Key, complex], params: PhysParams):
        params.require_algebra_dim()
        clean = {}
        for key, c in coefficients.items():
            c = complex(c)
            if c == 0:
                continue
            if len(key) != params.m:
                raise ValueError(f"monomial key {key} does not match k={params.k}")
            for p, v in key:
                if p < 0 or v < 0:
                    raise ValueError(f"negative exponent in key {key}")
            clean[tuple(tuple(e) for e in key)] = c
        self.coefficients = clean
        self.params = params

    # ---- constructors -------------------------------------------------

    @classmethod
    def monomial(cls, degrees: Iterable[tuple[int, int]], params: PhysParams,
                 coeff: complex = 1.0) -> "ZonePolynomial":
        return cls({tuple(tuple(d) for d in degrees): coeff}, params)

    @classmethod
    def one(cls, params: PhysParams) -> "ZonePolynomial":
        return cls.monomial([(0, 0)] * params.m, params)

    @classmethod
    def z(cls, params: PhysParams, i: int = 0) -> "ZonePolynomial":
        degs = [(0, 0)] * params.m
        degs[i] = (1, 0)
        return cls.monomial(degs, params)

    @classmethod
    def zbar(cls, params: PhysParams, i: int = 0) -> "ZonePolynomial":
        degs = [(0, 0)] * params.m
        degs[i] = (0, 1)
        return cls.monomial(degs, params)

    # ---- ring structure ------------------------------------------------

    def _check_same_params(self, other: "ZonePolynomial") -> None:
        if self.params != other.params:
            raise ValueError("operands carry different physical parameters")

    def __add__(self, other: "ZonePolynomial") -> "ZonePolynomial":
        self._check_same_params(other)
        out = dict(self.coefficients)
        for key, c in other.coefficients.items():
            out[key] = out.get(key, 0.0) + c
        return ZonePolynomial(out, self.params)

    def __sub__(self, other: "ZonePolynomial") -> "ZonePolynomial":
        return self + (-1.0) * other

    def __rmul__(self, scalar: complex) -> "ZonePolynomial":
        return ZonePolynomial({k: scalar * c for k, c in self.coefficients.items()}, self.params)

    def __mul__(self, other):
        if isinstance(other, ZonePolynomial):
            self._check_same_params(other)
            out: dict[Key, complex] = {}
            for k1, c1 in self.coefficients.items():
                for k2, c2 in other.coefficients.items():
                    key = tuple((p1 + p2, v1 + v2) for (p1, v1), (p2, v2) in zip(k1, k2))
                    out[key] = out.get(key, 0.0) + c1 * c2
            return ZonePolynomial(out, self.params)
        return other * self

    def __neg__(self) -> "ZonePolynomial":
        return (-1.0) * self

    def is_zero(self) -> bool:
        return not self.coefficients

    def prune(self, tol: float = 0.0) -> "ZonePolynomial":
        """Drop coefficients with |c| <= tol (tol=0 keeps the algebra exact)."""
        return ZonePolynomial(
            {k: c for k, c in self.coefficients.items() if abs(c) > tol}, self.params)

    # ---- gradings -------------------------------------------------------

    def zone_index(self):
        """Common antiholomorphic total degree of all monomials, or None if mixed."""
        idx = {sum(v for _, v in key) for key in self.coefficients}
        if len(idx) == 1:
            return idx.pop()
        return None

    def max_degree(self) -> int:
        if not self.coefficients:
            return 0
        return max(sum(p + v for p, v in key) for key in self.coefficients)

    def holomorphic_degree(self) -> int:
        if not self.coefficients:
            return 0
        return max(sum(p for p, _ in key) for key in self.coefficients)

    # ---- evaluation ------------------------------------------------------

    def eval(self, zpts: np.ndarray) -> np.ndarray:
        """Evaluate the weighted-space polynomial at complex points.

        `zpts` has shape (..., m); the trailing axis holds the complex
        coordinates.  Returns an array of shape (...).
        """
        zpts = np.atleast_2d(np.asarray(zpts, dtype=complex))
        out = np.zeros(zpts.shape[:-1], dtype=complex)
        for key, c in self.coefficients.items():
            term = np.full(zpts.shape[:-1], c, dtype=complex)
            for j, (p, v) in enumerate(key):
                if p:
                    term = term * zpts[..., j] ** p
                if v:
                    term = term * np.conj(zpts[..., j]) ** v
            out += term
        return out

    def __repr__(self) -> str:
        parts = []
        for key, c in sorted(self.coefficients.items()):
            mono = "".join(
                f"z{j+1}^{p}" * (p > 0) + f"zb{j+1}^{v}" * (v > 0)
                for j, (p, v) in enumerate(key)) or "1"
            parts.append(f"({c:.6g})*{mono}")
        return "ZonePolynomial[" + " + ".join(parts or ["0"]) + "]"

    # ---- serialization ----------------------------------------------------

    def to_records(self) -> list[dict]:
        return [
            {"degrees": [list(d) for d in key], "re": c.real, "im": c.imag}
            for key, c in sorted(self.coefficients.items())
        ]

    @classmethod
    def from_records(cls, records, params: PhysParams) -> "ZonePolynomial":
        coeffs: dict[Key, complex] = {}
        for rec in records:
            key = tuple(tuple(int(x) for x in d) for d in rec["degrees"])
            coeffs[key] = coeffs.get(key, 0.0) + complex(rec["re"], rec["im"])
        return cls(coeffs, params)

    def to_json(self) -> str:
        return json.dumps(self.to_records())

    @classmethod
    def from_json(cls, text: str, params: PhysParams) -> "ZonePolynomial":
        return cls.from_records(json.loads(text), params)


# ---- inner product ---------------------------------------------------------


def _moment(p: int, v: int, q: int, w: int, lam: float) -> float:
    # single-coordinate Gaussian moment of z^p zbar^v conj(z^q zbar^w);
    # angular selection leaves the radial factorial moment pi (p+w)!/lam^(p+w+1)
    if p - v != q - w:
        return 0.0
    n = p + w
    return math.pi * math.factorial(n) / lam ** (n + 1)


def inner_product(f: ZonePolynomial, g: ZonePolynomial) -> complex:
    """Exact Gaussian-weighted inner product <f, g> = int f conj(g) e^{-lam|X|^2} dX."""
    f._check_same_params(g)
    lam = f.params.lam
    total = 0.0 + 0.0j
    for kf, cf in f.coefficients.items():
        for kg, cg in g.coefficients.items():
            prod = 1.0
            for (p, v), (q, w) in zip(kf, kg):
                prod *= _moment(p, v, q, w, lam)
                if prod == 0.0:
                    break
            if prod:
                total += cf * np.conj(cg) * prod
    return complex(total)


def norm(f: ZonePolynomial) -> float:
    return math.sqrt(max(inner_product(f, f).real, 0.0))


# ---- operators --------------------------------------------------------------


def to_standard(f: ZonePolynomial) -> Callable[[np.ndarray], np.ndarray]:
    """Map the weighted-space state to its standard-space wave function.

    Returns psi(X) = f(X) e^{-(lam/2)|X|^2}, evaluable on arrays of complex
    coordinates with shape (..., m).  Norms agree with the weighted norm.
    """
    lam = f.params.lam

    def wave(zpts: np.ndarray) -> np.ndarray:
        zpts = np.asarray(zpts, dtype=complex)
        r2 = np.sum(np.abs(np.atleast_2d(zpts)) ** 2, axis=-1)
        return f.eval(zpts) * np.exp(-0.5 * lam * r2)

    return wave


def apply_zeeman(f: ZonePolynomial, include_field_term: bool = False) -> ZonePolynomial:
    """Apply the Zeeman operator (optionally with the field-energy constant).

    In the weighted picture the operator is

        H = -2 sum_j d/dz_j d/dzbar_j + 2 lam sum_j z_j d/dz_j + (k/2) lam
            [+ 2 k lam^2 when the field term is included],

    obtained by conjugating the standard-space operator with the half-Gaussian.
    Monomials z^P zbar^V with min(p_j, v_j) = 0 in every coordinate are exact
    eigenvectors with eigenvalue (2|P| + k/2) lam (+ 2 k lam^2); mixed
    monomials additionally shed the -2 p_j v_j cross terms, and the orthogonal
    zone basis diagonalizes the operator exactly.
    """
    par = f.params
    lam, k, m = par.lam, par.k, par.m
    const = (k / 2.0) * lam + (2.0 * k * lam * lam if include_field_term else 0.0)
    out: dict[Key, complex] = {}

    def add(key: Key, c: complex) -> None:
        out[key] = out.get(key, 0.0) + c

    for key, c in f.coefficients.items():
        holo = sum(p for p, _ in key)
        anti = sum(v for _, v in key)
        graded = holo if par.charge_sign == 1 else anti
        add(key, (2.0 * graded * lam + const) * c)
        for j in range(m):
            p, v = key[j]
            if p and v:
                lower = tuple((p - 1, v - 1) if i == j else key[i] for i in range(m))
                add(lower, -2.0 * p * v * c)
    return ZonePolynomial(out, par)


def apply_angular_momentum(f: ZonePolynomial) -> ZonePolynomial:
    """Magnetic-moment term of the Hamiltonian; monomials are eigenvectors.

    The monomial z^P zbar^V is multiplied by charge_sign * lam * (|P| - |V|).
    """
    par = f.params
    out = {}
    for key, c in f.coefficients.items():
        mquant = sum(p - v for p, v in key)
        val = par.charge_sign * par.lam * mquant * c
        if val != 0:
            out[key] = val
    return ZonePolynomial(out, par)


def apply_rep(generator: str, f: ZonePolynomial, i: int = 0) -> ZonePolynomial:
    """Heisenberg-representation generators on the weighted space.

    generator "z":    rho(z_i) f   = (-d/dzbar_i + lam z_i) f
    generator "zbar": rho(zbar_i) f = d/dz_i f

    These satisfy [rho(zbar_i), rho(z_j)] = lam delta_ij on polynomials.
    """
    par = f.params
    m = par.m
    if not 0 <= i < m:
        raise IndexError(f"coordinate index {i} out of range for k={par.k}")
    out: dict[Key, complex] = {}

    def add(key: Key, c: complex) -> None:
        if c != 0:
            out[key] = out.get(key, 0.0) + c

    for key, c in f.coefficients.items():
        p, v = key[i]
        if generator == "zbar":
            if p:
                add(tuple((p - 1, v) if j == i else key[j] for j in range(m)), p * c)
        elif generator == "z":
            if v:
                add(tuple((p, v - 1) if j == i else key[j] for j in range(m)), -v * c)
            add(tuple((p + 1, v) if j == i else key[j] for j in range(m)), par.lam * c)
        else:
            raise ValueError(f"unknown generator {generator!r}; expected 'z' or 'zbar'")
    return ZonePolynomial(out, par)
