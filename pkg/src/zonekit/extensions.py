"""Clifford-module dimensions, two-particle sub-zones, zonal Coulomb Galerkin operator."""

from __future__ import annotations

import math

import numpy as np

from .algebra import ZonePolynomial, inner_product
from .params import PhysParams
from .special import gauss_laguerre
from .zones import zone_basis, zone_pivot_degrees

# minimal module dimensions for r = 8p + s, s = 0..7, relative to the 2^{4p} factor
_CLIFF_TABLE = (1, 2, 4, 4, 8, 8, 8, 8)


def clifford_dimension(r: int) -> tuple[int, int]:
    """Minimal Clifford-module dimension n_r and the count of irreducibles.

    Period-8 table: for r = 8p + s the dimension is 2^{4p} times
    (1, 2, 4, 4, 8, 8, 8, 8)[s]; exactly two inequivalent irreducible modules
    exist iff r = 3 (mod 4), otherwise one.
    """
    if r < 1:
        raise ValueError(f"center dimension must be >= 1, got {r}")
    p, s = divmod(r, 8)
    n_r = (1 << (4 * p)) * _CLIFF_TABLE[s]
    count = 2 if r % 4 == 3 else 1
    return n_r, count


def swap_coordinates(f: ZonePolynomial) -> ZonePolynomial:
    """Exchange the two complex coordinates (k = 4 only)."""
    if f.params.k != 4:
        raise ValueError("coordinate exchange needs exactly two complex coordinates (k = 4)")
    return ZonePolynomial({(key[1], key[0]): c for key, c in f.coefficients.items()}, f.params)


def symmetrize_subzone(f: ZonePolynomial, kind: str) -> ZonePolynomial:
    """Project onto the bosonic (symmetric) or fermionic (antisymmetric) sub-zone."""
    if kind not in ("bosonic", "fermionic"):
        raise ValueError(f"kind must be 'bosonic' or 'fermionic', got {kind!r}")
    sgn = 1.0 if kind == "bosonic" else -1.0
    return 0.5 * (f + sgn * swap_coordinates(f))


# ---- zonal Coulomb operator ---------------------------------------------------


def coulomb_inner_product(f: ZonePolynomial, g: ZonePolynomial,
                          Q: float, order: int = 80) -> complex:
    """<f, (Q/r) g> over the Gaussian density, k = 2.

    The radial integrals use the substitution u = lam r^2 and a generalized
    Gauss-Laguerre rule with exponent -1/2, which integrates the 1/r factor
    against polynomials exactly and never places a node at r = 0.
    """
    par = f.params
    if par.k != 2:
        raise ValueError("the zonal Coulomb operator is built on the plane (k = 2)")
    lam = par.lam
    rule = gauss_laguerre(order, -0.5)
    total = 0.0 + 0.0j
    for kf, cf in f.coefficients.items():
        (p, v), = kf
        for kg, cg in g.coefficients.items():
            (q, w), = kg
            if p - v != q - w:
                continue
            n = (p + v + q + w) // 2
            # int_0^inf r^{2n} (1/r) e^{-lam r^2} * 2 pi r dr
            #   = (pi / lam^{n + 1/2}) int u^{n - 1/2} e^{-u} du
            radial = math.pi / lam ** (n + 0.5) * float(
                np.sum(rule.weights * rule.nodes ** n))
            total += cf * np.conj(cg) * radial
    return complex(Q * total)


def zonal_coulomb_matrix(a: int, Q: float, basis_size: int, params: PhysParams,
                         order: int = 80):
    """Galerkin matrices of the zone-compressed Coulomb interaction.

    Returns a dict with the potential matrix M_ij = <phi_i, (Q/r) phi_j> over
    the orthonormal zone basis, the matrix of H (field term included) plus
    the compressed potential, its eigenvalues, and a multiplicity report
    grouping eigenvalues closer than 1e-8.
    """
    params.require_algebra_dim()
    if params.k != 2:
        raise ValueError("the zonal Coulomb operator is built on the plane (k = 2)")
    max_degree = a + basis_size - 1
    basis = zone_basis(a, max_degree, params)
    if len(basis) < basis_size:
        raise ValueError(f"zone {a} truncation provides only {len(basis)} elements")
    basis = basis[:basis_size]
    degrees = zone_pivot_degrees(a, max_degree, params)[:basis_size]
    lam, k = params.lam, params.k

    M = np.empty((basis_size, basis_size), dtype=complex)
    for i, fi in enumerate(basis):
        for j in range(i, basis_size):
            val = coulomb_inner_product(fi, basis[j], Q, order=order)
            M[i, j] = val
            M[j, i] = np.conj(val)
    diag = np.array([(2 * p + k / 2) * lam + 2 * k * lam * lam for p in degrees])
    H = np.diag(diag) + M
    eigvals = np.linalg.eigvalsh(H)
    return {
        "potential": M,
        "hamiltonian": H,
        "eigenvalues": eigvals,
        "multiplicity_groups": group_multiplicities(eigvals),
    }


def unprojected_coulomb_matrix(Q: float, max_zone: int, basis_size_per_zone: int,
                               params: PhysParams, order: int = 80):
    """Galerkin matrix over a cross-zone truncation (no zone projection).

    Exploratory contrast to the compressed operator: the Coulomb term couples
    different zones, so this spectrum differs from the zone-by-zone one.
    """
    if params.k != 2:
        raise ValueError("k = 2 only")
    lam, k = params.lam, params.k
    basis = []
    degrees = []
    for a in range(max_zone + 1):
        md = a + basis_size_per_zone - 1
        vecs = zone_basis(a, md, params)[:basis_size_per_zone]
        basis.extend(vecs)
        degrees.extend(zone_pivot_degrees(a, md, params)[:basis_size_per_zone])
    n = len(basis)
    M = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            val = coulomb_inner_product(basis[i], basis[j], Q, order=order)
            M[i, j] = val
            M[j, i] = np.conj(val)
    diag = np.array([(2 * p + k / 2) * lam + 2 * k * lam * lam for p in degrees])
    H = np.diag(diag) + M
    eigvals = np.linalg.eigvalsh(H)
    return {"hamiltonian": H, "eigenvalues": eigvals,
            "multiplicity_groups": group_multiplicities(eigvals)}


def group_multiplicities(eigvals: np.ndarray, tol: float = 1e-8):
    """Group sorted eigenvalues within an absolute tolerance; report (value, count)."""
    groups = []
    for ev in np.sort(np.asarray(eigvals).real):
        if groups and abs(ev - groups[-1][0] / groups[-1][1]) <= tol:
            s, c = groups[-1]
            groups[-1] = (s + ev, c + 1)
        else:
            groups.append((ev, 1))
    return [(s / c, c) for s, c in groups]
