"""Certified norm brackets for elements and the associated comparisons.

The norm of a semicrossed element is the larger of two suprema: orbit
representations over all points (estimated from below by sampled truncations,
bounded above by the coefficient l1 sum) and periodic-orbit representations
over all periodic points and unit scalars (sampled on a lambda grid with a
Lipschitz certificate).  The comparison helpers measure, at finite size, the
identities that make those families cofinal: the periodic-vector transfer,
the bilateral-window versus orbit-supremum agreement, and the isometric
embedding into the extension's crossed product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .elements import Element, l1_upper_bound, require_semicrossed
from .errors import BadLambda, NonFinite, NotPeriodic, WindowTooSmall
from .extension import ExtPoint, shift_power
from .functions import NormBracket, evaluate_base, ext_sup_norm
from .reps import (
    _assemble_periodic,
    _check_lambda,
    _cyclic_shift,
    _twisted_shift,
    bilateral_matrix,
    orbit_matrix,
)
from .systems import Point, System, classify, forward_orbit, point_key


def spectral_norm(mat: np.ndarray) -> float:
    """Largest singular value (deterministic SVD path)."""
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0.0
    if not np.all(np.isfinite(mat.view(float) if mat.dtype == complex else mat)):
        raise NonFinite("matrix has non-finite entries")
    return float(np.linalg.norm(mat, 2))


@dataclass(frozen=True)
class NormEstimate:
    """Bracket plus the monotone evidence trail that produced it."""

    bracket: NormBracket
    traces: tuple[tuple[str, float], ...]
    witness: str


def _ladder(n_max: int) -> list[int]:
    out = []
    n = 4
    while n < n_max:
        out.append(n)
        n *= 2
    out.append(n_max)
    return out


def orbit_norm_estimate(
    sys: System,
    el: Element,
    points: Sequence[Point],
    n_max: int = 256,
) -> NormEstimate:
    """Orbit-representation supremum: sampled truncations below, l1 above.

    Truncation norms increase in n (compressions), so the trace of running
    maxima over the size ladder is nondecreasing and its last entry is the
    certified lower bound.
    """
    require_semicrossed(el)
    if not points:
        raise ValueError("need at least one sample point")
    band = el.max_power
    if n_max < band + 1:
        raise WindowTooSmall(f"n_max must be at least the band width {band + 1}")
    sizes = _ladder(n_max)
    best = 0.0
    witness = ""
    by_size = {n: 0.0 for n in sizes}
    for x in points:
        full = orbit_matrix(sys, x, el, n_max)
        for n in sizes:
            val = spectral_norm(full[:n, :n])
            if val > by_size[n]:
                by_size[n] = val
            if val > best:
                best = val
                witness = f"orbit x={_point_label(x)} n={n}"
    running = 0.0
    traces = []
    for n in sizes:
        running = max(running, by_size[n])
        traces.append((f"n={n}", running))
    upper = max(l1_upper_bound(el), best)
    return NormEstimate(
        NormBracket(best, upper, witness, "coefficient l1 sum"),
        tuple(traces),
        witness,
    )


def periodic_norm_estimate(
    sys: System,
    el: Element,
    periodic_points: Sequence[Point],
    grid_size: int = 256,
) -> NormEstimate:
    """Periodic-family supremum over a lambda grid with a Lipschitz certificate.

    For each sampled periodic point the p x p matrices over all grid scalars
    are assembled in one stack and reduced by batched SVD.  The norm as a
    function of the angle is Lipschitz with constant sum |n| * sup|f_n|, so
    the grid maximum plus L*pi/grid_size certifies an upper bound for the
    sampled family, capped by the l1 bound.
    """
    require_semicrossed(el)
    if not periodic_points:
        raise ValueError("need at least one periodic sample")
    if grid_size < 8:
        raise ValueError("grid_size must be >= 8")
    lams = np.exp(2j * np.pi * np.arange(grid_size) / grid_size)
    lip = sum(abs(k) * ext_sup_norm(f).upper for k, f in el.coeffs)
    per_lambda = np.zeros(grid_size)
    best = 0.0
    witness = ""
    for y in periodic_points:
        cls = classify(sys, y)
        if not cls.is_periodic:
            raise NotPeriodic(f"sample {_point_label(y)} is {cls.kind}")
        p = cls.period
        orbit = forward_orbit(sys, y, p)
        cyc = _cyclic_shift(p)
        # stack sum_k lam^k * C^k D_k over the lambda grid in one shot
        bands = []
        for k, f in el.coeffs:
            ck = np.linalg.matrix_power(cyc, k)
            dk = np.diag([evaluate_base(sys, f.base, pt) for pt in orbit])
            bands.append((k, ck @ dk))
        powers = np.stack([lams ** k for k, _ in bands], axis=1)  # (L, nbands)
        mats = np.einsum("lk,kij->lij", powers, np.stack([m for _, m in bands]))
        svals = np.linalg.svd(mats, compute_uv=False)[:, 0]
        per_lambda = np.maximum(per_lambda, svals)
        j = int(np.argmax(svals))
        if svals[j] > best:
            best = float(svals[j])
            witness = f"periodic y={_point_label(y)} angle={j}/{grid_size}"
    certified = best + lip * math.pi / grid_size
    upper = min(certified, l1_upper_bound(el))
    upper = max(upper, best)
    traces = tuple(
        (f"angle={j}/{grid_size}", float(per_lambda[j])) for j in range(grid_size)
    )
    return NormEstimate(
        NormBracket(best, upper, witness, "lambda grid + Lipschitz certificate"),
        traces,
        witness,
    )


def semicrossed_norm(
    sys: System,
    el: Element,
    points: Sequence[Point],
    periodic_points: Sequence[Point],
    n_max: int = 256,
    grid_size: int = 256,
) -> NormEstimate:
    """Combined bracket: max of the family lower bounds, min of their uppers.

    The witness records which family achieved the lower bound.
    """
    a = orbit_norm_estimate(sys, el, points, n_max)
    b = periodic_norm_estimate(sys, el, periodic_points, grid_size)
    if b.bracket.lower >= a.bracket.lower:
        lower, witness = b.bracket.lower, "periodic"
        lower_detail = b.witness
    else:
        lower, witness = a.bracket.lower, "orbit"
        lower_detail = a.witness
    upper = min(a.bracket.upper, b.bracket.upper)
    upper = max(upper, lower)
    upper_method = (
        a.bracket.upper_method
        if a.bracket.upper <= b.bracket.upper
        else b.bracket.upper_method
    )
    traces = tuple((f"orbit {k}", v) for k, v in a.traces) + tuple(
        (f"periodic {k}", v) for k, v in b.traces
    )
    return NormEstimate(
        NormBracket(lower, upper, lower_detail, upper_method), traces, witness
    )


# ---------------------------------------------------------------------------
# periodic test vectors (orbit representations dominate periodic ones)


def embed_periodic_vector(xi: Sequence[complex], lam: complex, blocks: int) -> np.ndarray:
    """Unit vector of length blocks*p with block j carrying lam^(blocks-j) xi."""
    lam = _check_lambda(lam)
    xi = np.asarray(list(xi), dtype=complex)
    p = xi.shape[0]
    if p == 0 or not np.all(np.isfinite(xi.view(float))):
        raise ValueError("xi must be a nonempty finite vector")
    nrm = float(np.linalg.norm(xi))
    if nrm == 0.0:
        raise ValueError("xi must be nonzero")
    if blocks < 1:
        raise ValueError("blocks must be >= 1")
    out = np.zeros(blocks * p, dtype=complex)
    for j in range(blocks):
        out[j * p : (j + 1) * p] = lam ** (blocks - j) * xi
    return out / (math.sqrt(blocks) * nrm)


def twisted_periodic_matrix(sys: System, y: Point, lam: complex, el: Element) -> np.ndarray:
    """Periodic representation with lambda on the wraparound entry.

    Unitarily equivalent to the scalar placement; this is the convention the
    embedded periodic vectors reproduce coordinatewise.
    """
    require_semicrossed(el)
    lam = _check_lambda(lam)
    cls = classify(sys, y)
    if not cls.is_periodic:
        raise NotPeriodic(f"point is {cls.kind}")
    p = cls.period
    orbit = forward_orbit(sys, y, p)
    return _assemble_periodic(
        _twisted_shift(p, lam),
        {k: [evaluate_base(sys, f.base, pt) for pt in orbit] for k, f in el.coeffs},
        p,
    )


def periodic_vector_check(
    sys: System,
    y: Point,
    lam: complex,
    el: Element,
    blocks: int,
    size: int | None = None,
) -> dict:
    """Compare the orbit representation applied to an embedded periodic vector
    against the periodic representation's top singular pair.

    Returns lhs (orbit side), rhs (periodic side) and their deficit; the
    transfer predicts lhs >= rhs - O(band/(blocks*p)).
    """
    require_semicrossed(el)
    mat = twisted_periodic_matrix(sys, y, lam, el)
    p = mat.shape[0]
    band = el.max_power
    n = size if size is not None else blocks * p + band
    if n < blocks * p + band:
        raise ValueError("size must cover the embedded vector plus the band")
    svals = np.linalg.svd(mat)
    xi = svals[2][0].conj()
    rhs = float(svals[1][0])
    eta = embed_periodic_vector(xi, lam, blocks)
    padded = np.zeros(n, dtype=complex)
    padded[: eta.shape[0]] = eta
    lhs = float(np.linalg.norm(orbit_matrix(sys, y, el, n) @ padded))
    return {"lhs": lhs, "rhs": rhs, "deficit": rhs - lhs, "blocks": blocks, "period": p}


# ---------------------------------------------------------------------------
# bilateral window versus orbit supremum


def bilateral_orbit_check(
    sys: System,
    xt: ExtPoint,
    el: Element,
    half_width: int,
    size: int | None = None,
) -> dict:
    """Windowed two-sided norm against the supremum of orbit truncations
    taken over backward shifts of the extended point."""
    require_semicrossed(el)
    n = size if size is not None else 2 * half_width + 1
    bilateral = spectral_norm(bilateral_matrix(sys, xt, el, half_width))
    seen = set()
    orbit_sup = 0.0
    for k in range(2 * half_width + 1):
        y = shift_power(sys, xt, -k).coordinate(1)
        key = point_key(y)
        if key in seen:
            continue
        seen.add(key)
        orbit_sup = max(orbit_sup, spectral_norm(orbit_matrix(sys, y, el, n)))
    return {
        "bilateral": bilateral,
        "orbit_sup": orbit_sup,
        "gap": abs(bilateral - orbit_sup),
    }


# ---------------------------------------------------------------------------
# isometric embedding into the extension's crossed product


def embedding_check(
    sys: System,
    el: Element,
    points: Sequence[Point],
    periodic_points: Sequence[Point],
    ext_points: Sequence[ExtPoint],
    n_max: int = 256,
    grid_size: int = 256,
    half_width: int = 128,
) -> dict:
    """Bracket the element in both algebras and test that they overlap."""
    semi = semicrossed_norm(sys, el, points, periodic_points, n_max, grid_size)
    lower = 0.0
    witness = ""
    for xt in ext_points:
        val = spectral_norm(bilateral_matrix(sys, xt, el, half_width))
        if val > lower:
            lower = val
            witness = "bilateral window"
    upper = max(l1_upper_bound(el), lower)
    crossed = NormBracket(lower, upper, witness, "coefficient l1 sum")
    overlap = (
        semi.bracket.lower <= crossed.upper + 1e-9
        and crossed.lower <= semi.bracket.upper + 1e-9
    )
    return {"semicrossed": semi.bracket, "crossed": crossed, "overlap": overlap}


def _point_label(x: Point) -> str:
    from .systems import ProceduralWordPoint, RationalPoint, StatePoint, WordPoint

    if isinstance(x, RationalPoint):
        return f"{x.value.numerator}/{x.value.denominator}"
    if isinstance(x, WordPoint):
        pre = "".join(map(str, x.preperiod))
        cyc = "".join(map(str, x.cycle))
        return f"{pre}({cyc})"
    if isinstance(x, StatePoint):
        return str(x.state)
    if isinstance(x, ProceduralWordPoint):
        return f"proc:{x.label}"
    return repr(x)
