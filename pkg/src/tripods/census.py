"""High-throughput tripod census: enumerate all tripods with length <= R.

A torus tripod corresponds to exactly one planar endpoint pair (z, w) once a
canonicalization is fixed, so counting tripods reduces to scanning integer
quadruples (a, b, c, d) with |z| <= R, |w| <= R and testing, per tuple:

  orientation      ad - bc > 0
  angle condition  all three triangle angles strictly < 2*pi/3
  length           ell^2 < R^2, compared exactly in Q(sqrt(3))
  canonicalization 'lemma': arg(u) in [0, 2*pi/3) (half-open exact sector)
                   'appendix': largest triangle angle strictly at the origin

Every predicate is an integer sign test (int64-safe for R <= 10^4), so the
scan vectorizes; work is split over fixed-size chunks of z-points and merged
by integer addition, making results independent of the thread count.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import geometry
from .lattice import EISENSTEIN, GAUSSIAN, GENERAL, LatticeSpec

LEMMA = "lemma"
APPENDIX = "appendix"

# Predicate intermediates are bounded by ~16 R^4; int64 holds that up to
# R ~ 2.7e4.  The enforced limit leaves a wide margin.
MAX_EXACT_RADIUS = 10_000
_CHUNK = 64


class OverflowLimitError(OverflowError):
    """Radius exceeds the proven int64-safe range of the exact predicates."""


@dataclass(frozen=True)
class CensusConfig:
    lattice: LatticeSpec
    radius: float
    mode: str = LEMMA
    classify_reduced: bool = False
    threads: int = 1
    emit_samples: int | None = None

    def __post_init__(self):
        if self.mode not in (LEMMA, APPENDIX):
            raise ValueError(f"unknown census mode {self.mode!r}")
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.threads < 1:
            raise ValueError("thread count must be positive")
        if self.lattice.is_exact:
            if self.radius != int(self.radius):
                raise ValueError("preset lattices require an integer radius")
            if self.radius > MAX_EXACT_RADIUS:
                raise OverflowLimitError(
                    f"radius {self.radius} exceeds the int64-safe limit {MAX_EXACT_RADIUS}")
        if self.mode == APPENDIX and self.lattice.mode != GAUSSIAN:
            raise ValueError("appendix mode reproduces the Gaussian reference count "
                             "and requires the Gaussian lattice")


@dataclass
class CensusReport:
    lattice: str
    radius: float
    mode: str
    classify_reduced: bool
    threads: int
    total_tuples_scanned: int
    all_tripods: int
    primitive: int
    reduced: int | None
    nonreduced_primitive: int | None
    index_histogram: dict[int, int]
    angle_tie_count: int
    angle_tie_primitive_count: int
    sector_boundary_count: int
    normalized_constant: float
    reference_constant: float
    heuristic: bool
    elapsed_ms: float
    samples: list[dict] | None = None

    def payload(self) -> dict:
        body = {
            "radius": self.radius,
            "mode": self.mode,
            "classify_reduced": self.classify_reduced,
            "threads": self.threads,
            "counts": {
                "total_tuples_scanned": self.total_tuples_scanned,
                "all_tripods": self.all_tripods,
                "primitive": self.primitive,
                "reduced": self.reduced,
                "nonreduced_primitive": self.nonreduced_primitive,
            },
            "ties": {
                "angle_tie": self.angle_tie_count,
                "angle_tie_primitive": self.angle_tie_primitive_count,
                "sector_boundary": self.sector_boundary_count,
            },
            "index_histogram": {str(k): v for k, v in sorted(self.index_histogram.items())},
            "normalized_constant": self.normalized_constant,
            "reference_constant": self.reference_constant,
            "heuristic": self.heuristic,
            "elapsed_ms": self.elapsed_ms,
        }
        if self.samples is not None:
            body["samples"] = self.samples
        return body


def _sign_root3_vec(alpha, beta):
    """Vectorized sign of alpha + beta*sqrt(3) for int64 arrays."""
    sa = np.sign(alpha)
    sb = np.sign(beta)
    opp = sa * np.sign(alpha * alpha - 3 * beta * beta)
    return np.where(beta == 0, sa, np.where(alpha == 0, sb, np.where(sa == sb, sa, opp)))


def lattice_points_in_disk(lattice: LatticeSpec, radius: float) -> np.ndarray:
    """All nonzero lattice points with |a + b*tau| <= radius, as an (N,2) array.

    Exact norm comparison in the preset modes; floats (with a tiny inflation)
    for general tau.
    """
    if lattice.mode == GAUSSIAN:
        R = int(radius)
        r = np.arange(-R, R + 1, dtype=np.int64)
        A, B = np.meshgrid(r, r, indexing="ij")
        keep = (A * A + B * B <= R * R) & ~((A == 0) & (B == 0))
        return np.stack([A[keep], B[keep]], axis=1)
    if lattice.mode == EISENSTEIN:
        R = int(radius)
        bmax = int(2 * R / math.sqrt(3.0)) + 2
        ra = np.arange(-2 * R - 2, 2 * R + 3, dtype=np.int64)
        rb = np.arange(-bmax, bmax + 1, dtype=np.int64)
        A, B = np.meshgrid(ra, rb, indexing="ij")
        keep = (A * A + A * B + B * B <= R * R) & ~((A == 0) & (B == 0))
        return np.stack([A[keep], B[keep]], axis=1)
    s, t = lattice.tau_s, lattice.tau_t
    bmax = int(radius / t) + 2
    amax = int(radius * (1 + abs(s) / t)) + 2
    ra = np.arange(-amax, amax + 1, dtype=np.int64)
    rb = np.arange(-bmax, bmax + 1, dtype=np.int64)
    A, B = np.meshgrid(ra, rb, indexing="ij")
    X = A + B * s
    Y = B * t
    keep = (X * X + Y * Y <= radius * radius * (1 + 1e-12)) & ~((A == 0) & (B == 0))
    return np.stack([A[keep], B[keep]], axis=1)


@dataclass
class _ChunkResult:
    scanned: int = 0
    all_tripods: int = 0
    primitive: int = 0
    reduced: int = 0
    nonreduced: int = 0
    angle_ties: int = 0
    angle_ties_primitive: int = 0
    sector_boundary: int = 0
    hist: np.ndarray = field(default_factory=lambda: np.zeros(1, dtype=np.int64))
    samples: list[tuple] = field(default_factory=list)

    def merge(self, other: "_ChunkResult") -> None:
        self.scanned += other.scanned
        self.all_tripods += other.all_tripods
        self.primitive += other.primitive
        self.reduced += other.reduced
        self.nonreduced += other.nonreduced
        self.angle_ties += other.angle_ties
        self.angle_ties_primitive += other.angle_ties_primitive
        self.sector_boundary += other.sector_boundary
        if len(other.hist) > len(self.hist):
            self.hist = np.pad(self.hist, (0, len(other.hist) - len(self.hist)))
        self.hist[: len(other.hist)] += other.hist
        self.samples.extend(other.samples)


def _accept_exact(lattice_mode, mode, R, a, b, c, d):
    """Vectorized exact filters for one z-block against all w-points.

    Returns (accept mask, index array, angle-tie mask, sector-boundary mask)
    over the already orientation-filtered arrays.
    """
    n = a * d - b * c
    if lattice_mode == GAUSSIAN:
        nz = a * a + b * b
        nw = c * c + d * d
        q0 = 2 * (a * c + b * d)
        x = nz + nw - q0 // 2
        t = R * R - x
        len_ok = (t > 0) & (t * t > 3 * n * n)
        nzw = (a - c) ** 2 + (b - d) ** 2
    else:
        nz = a * a + a * b + b * b
        nw = c * c + c * d + d * d
        q0 = 2 * a * c + 2 * b * d + a * d + b * c
        l2 = 2 * nz + 2 * nw - q0 + 3 * n
        len_ok = l2 < 2 * R * R
        e1 = a - c
        e2 = b - d
        nzw = e1 * e1 + e1 * e2 + e2 * e2
    ok0 = (q0 >= 0) | (q0 * q0 < nz * nw)
    qz = 2 * nz - q0
    qw = 2 * nw - q0
    okz = (qz >= 0) | (qz * qz < nz * nzw)
    okw = (qw >= 0) | (qw * qw < nw * nzw)
    angles = ok0 & okz & okw

    if mode == APPENDIX:
        canon = np.minimum(nz, nw) > q0
        accept = len_ok & angles & canon
        ties = np.zeros_like(accept)
        boundary = np.zeros_like(accept)
        return accept, n, ties, boundary

    if lattice_mode == GAUSSIAN:
        s_uy = _sign_root3_vec(b + d, a - c)
        s_ray = _sign_root3_vec(2 * d - b, a + 0 * d)
        s_ux = _sign_root3_vec(a + c, d - b)
        sector = ((s_uy > 0) & (s_ray > 0)) | ((s_uy == 0) & (s_ux > 0))
        on_boundary = (s_uy == 0) | (s_ray == 0)
    else:
        um = -b + c + d
        un = a + b - c
        sector = ((un > 0) & (um + un > 0)) | ((un == 0) & (um > 0))
        on_boundary = (un == 0) | (um + un == 0)
    accept = len_ok & angles & sector
    # tie diagnostics: largest angle not unique <=> two side lengths tie for
    # longest (side lengths nw, nz, nzw oppose the angles at z, w, 0)
    longest0 = (nzw >= nz) & (nzw >= nw)
    longestz = (nw >= nzw) & (nw >= nz)
    longestw = (nz >= nzw) & (nz >= nw)
    tie = ((longest0 & longestz) | (longest0 & longestw) | (longestz & longestw))
    return accept, n, tie & accept, on_boundary & accept


def _process_chunk(cfg: CensusConfig, pts: np.ndarray, lo: int, hi: int) -> _ChunkResult:
    res = _ChunkResult()
    R = cfg.radius
    c_all = pts[:, 0]
    d_all = pts[:, 1]
    want_samples = cfg.emit_samples is not None
    for i in range(lo, hi):
        a = int(pts[i, 0])
        b = int(pts[i, 1])
        res.scanned += len(c_all)
        if cfg.lattice.is_exact:
            n_full = a * d_all - b * c_all
            pos = n_full > 0
            c = c_all[pos]
            d = d_all[pos]
            accept, n, ties, boundary = _accept_exact(
                cfg.lattice.mode, cfg.mode, int(R), a, b, c, d)
        else:
            c = c_all
            d = d_all
            accept, n, ties, boundary = _accept_float(cfg.lattice, cfg.mode, R, a, b, c, d)
        tie_acc = ties[accept]
        c = c[accept]
        d = d[accept]
        n = n[accept]
        res.angle_ties += int(np.count_nonzero(ties))
        res.sector_boundary += int(np.count_nonzero(boundary))
        if len(c) == 0:
            continue
        res.all_tripods += len(c)
        hist = np.bincount(n)
        if len(hist) > len(res.hist):
            res.hist = np.pad(res.hist, (0, len(hist) - len(res.hist)))
        res.hist[: len(hist)] += hist
        g = np.gcd(np.gcd(np.int64(abs(a)), np.int64(abs(b))),
                   np.gcd(np.abs(c), np.abs(d)))
        prim = g == 1
        n_prim = int(np.count_nonzero(prim))
        res.primitive += n_prim
        res.angle_ties_primitive += int(np.count_nonzero(tie_acc & prim))
        if cfg.classify_reduced and n_prim:
            nonred = _nonreduced_mask(cfg.lattice, a, b, c, d, n, prim)
            res.nonreduced += int(np.count_nonzero(nonred))
            res.reduced += n_prim - int(np.count_nonzero(nonred))
        if want_samples and len(res.samples) < cfg.emit_samples:
            take = min(cfg.emit_samples - len(res.samples), len(c))
            for k in range(take):
                res.samples.append((a, b, int(c[k]), int(d[k]), int(n[k]), bool(prim[k])))
    return res


def _accept_float(lattice: LatticeSpec, mode: str, R: float, a, b, c, d):
    """Float predicates for general-tau lattices (heuristic census)."""
    s, t = lattice.tau_s, lattice.tau_t
    n = a * d - b * c
    pos = n > 0
    zx, zy = a + b * s, b * t
    wx, wy = c + d * s, d * t
    dot0 = zx * wx + zy * wy
    nz = zx * zx + zy * zy
    nw = wx * wx + wy * wy
    ok0 = (dot0 >= 0) | (4 * dot0 * dot0 < nz * nw)
    ex, ey = wx - zx, wy - zy
    nzw = ex * ex + ey * ey
    dotz = nz - dot0
    dotw = nw - dot0
    okz = (dotz >= 0) | (4 * dotz * dotz < nz * nzw)
    okw = (dotw >= 0) | (4 * dotw * dotw < nw * nzw)
    c60, s60 = 0.5, math.sqrt(3.0) / 2.0
    ux = c60 * zx - s60 * zy + c60 * wx + s60 * wy
    uy = s60 * zx + c60 * zy + c60 * wy - s60 * wx
    len_ok = ux * ux + uy * uy < R * R
    sector = ((uy > 0) & (math.sqrt(3.0) * ux + uy > 0)) | ((uy == 0) & (ux > 0))
    accept = pos & ok0 & okz & okw & len_ok & sector
    zeros = np.zeros_like(accept)
    return accept, n, zeros, zeros


def _nonreduced_mask(lattice: LatticeSpec, a, b, c, d, n, prim):
    """Nonreduced flags among accepted tuples (exact preset lattices).

    Eisenstein: the three leg directions u, zeta*w - z, zeta^{-1}*z - w are
    lattice vectors of squared norm ell^2, so a leg holds an interior lattice
    point iff content(direction) * (leg/ell) > 1; the junction is a lattice
    point iff content(u) * (ell_1/ell) is a positive integer.  All tests are
    pure integer arithmetic.

    Gaussian: a leg's supporting line meets the lattice only in isoceles
    configurations (|z| = |w| for the 0-leg, |w|^2 = 2 Re(z w~) for the
    z-leg, symmetrically for w); candidates are rare and go through the exact
    segment-query classifier.

    General tau: the float classifier decides within epsilon (heuristic).
    """
    if lattice.mode == GENERAL:
        out = np.zeros_like(prim)
        for k in np.nonzero(prim)[0]:
            flags = geometry.classify_heuristic(lattice, a, b, int(c[k]), int(d[k]))
            out[k] = not flags.reduced
        return out
    if lattice.mode == EISENSTEIN:
        nz = a * a + a * b + b * b
        nw = c * c + c * d + d * d
        q0 = 2 * a * c + 2 * b * d + a * d + b * c
        l2 = 2 * nz + 2 * nw - q0 + 3 * n
        um = -b + c + d
        un = a + b - c
        ee = a + d
        g1 = np.gcd(np.abs(um), np.abs(un))
        g2 = np.gcd(np.abs(ee), np.abs(um))
        g3 = np.gcd(np.abs(un), np.abs(ee))
        t1n = q0 + n
        t2n = 2 * nz - q0 + n
        t3n = 2 * nw - q0 + n
        legs = (g1 * t1n > l2) | (g2 * t2n > l2) | (g3 * t3n > l2)
        pk = g1 * t1n
        junction = (pk % l2 == 0) & (pk >= l2)
        return prim & (legs | junction)
    # Gaussian
    nz = a * a + b * b
    nw = c * c + d * d
    q0 = 2 * (a * c + b * d)
    candidate = prim & ((nz == nw) | (nw == q0) | (nz == q0))
    out = np.zeros_like(prim)
    idx = np.nonzero(candidate)[0]
    for k in idx:
        tripod = geometry.Tripod.from_coords(lattice, a, b, int(c[k]), int(d[k]))
        flags = geometry.classify(tripod)
        out[k] = not flags.reduced
    return out


def census(config: CensusConfig) -> CensusReport:
    """Run the census described by `config`; deterministic for any thread count."""
    t0 = time.perf_counter()
    pts = lattice_points_in_disk(config.lattice, config.radius)
    chunks = [(lo, min(lo + _CHUNK, len(pts))) for lo in range(0, len(pts), _CHUNK)]
    if config.threads == 1 or len(chunks) <= 1:
        results = [_process_chunk(config, pts, lo, hi) for lo, hi in chunks]
    else:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(lambda ch: _process_chunk(config, pts, *ch), chunks))
    total = _ChunkResult()
    for r in results:
        total.merge(r)
    elapsed = (time.perf_counter() - t0) * 1000.0
    hist = {int(i): int(v) for i, v in enumerate(total.hist) if v > 0}
    samples = None
    if config.emit_samples is not None:
        samples = [
            {"coords": [a, b, c, d], "index": n, "primitive": prim}
            for (a, b, c, d, n, prim) in total.samples[: config.emit_samples]
        ]
    ref = 15 * math.sqrt(3.0) / (4 * math.pi ** 3)
    return CensusReport(
        lattice=config.lattice.describe(),
        radius=config.radius,
        mode=config.mode,
        classify_reduced=config.classify_reduced,
        threads=config.threads,
        total_tuples_scanned=total.scanned,
        all_tripods=total.all_tripods,
        primitive=total.primitive,
        reduced=total.reduced if config.classify_reduced else None,
        nonreduced_primitive=total.nonreduced if config.classify_reduced else None,
        index_histogram=hist,
        angle_tie_count=total.angle_ties,
        angle_tie_primitive_count=total.angle_ties_primitive,
        sector_boundary_count=total.sector_boundary,
        normalized_constant=total.primitive / config.radius ** 4,
        reference_constant=ref,
        heuristic=not config.lattice.is_exact,
        elapsed_ms=elapsed,
        samples=samples,
    )


def enumerate_tripods(lattice: LatticeSpec, radius: float, mode: str = LEMMA,
                      include_boundary: bool = False) -> np.ndarray:
    """All accepted quadruples (a, b, c, d) as an (N, 4) int64 array.

    `include_boundary` admits tripods with ell^2 exactly R^2 (possible only
    on the Eisenstein lattice, where ell^2 is an integer); the census proper
    uses the strict inequality.
    """
    if not lattice.is_exact:
        raise ValueError("enumerate_tripods requires a preset lattice")
    R = int(radius)
    if R > MAX_EXACT_RADIUS:
        raise OverflowLimitError(f"radius {R} exceeds {MAX_EXACT_RADIUS}")
    pts = lattice_points_in_disk(lattice, R)
    c_all = pts[:, 0]
    d_all = pts[:, 1]
    rows = []
    for i in range(len(pts)):
        a = int(pts[i, 0])
        b = int(pts[i, 1])
        n_full = a * d_all - b * c_all
        pos = n_full > 0
        c = c_all[pos]
        d = d_all[pos]
        accept, _, _, _ = _accept_exact(lattice.mode, mode, R, a, b, c, d)
        if include_boundary and lattice.mode == EISENSTEIN:
            nz = a * a + a * b + b * b
            nw = c * c + c * d + d * d
            q0 = 2 * a * c + 2 * b * d + a * d + b * c
            nn = a * d - b * c
            l2 = 2 * nz + 2 * nw - q0 + 3 * nn
            relaxed, _, _, _ = _accept_exact(lattice.mode, mode, R + 1, a, b, c, d)
            accept = accept | (relaxed & (l2 == 2 * R * R))
        c = c[accept]
        d = d[accept]
        if len(c):
            block = np.empty((len(c), 4), dtype=np.int64)
            block[:, 0] = a
            block[:, 1] = b
            block[:, 2] = c
            block[:, 3] = d
            rows.append(block)
    if not rows:
        return np.empty((0, 4), dtype=np.int64)
    return np.concatenate(rows, axis=0)


def convergence_scan(lattice: LatticeSpec, radii: list[float], mode: str = LEMMA,
                     threads: int = 1) -> list[dict]:
    """One census per radius with the covolume-normalized error column.

    The reference density 15*sqrt(3)/(4*pi^3) applies to unit-covolume
    lattices; raw lengths scale by covolume^(-1/2), so the comparable ratio
    is primitive * covolume^2 / R^4.
    """
    if list(radii) != sorted(radii):
        raise ValueError("radii must be increasing")
    ref = 15 * math.sqrt(3.0) / (4 * math.pi ** 3)
    covol = lattice.covolume
    rows = []
    for r in radii:
        rep = census(CensusConfig(lattice=lattice, radius=r, mode=mode, threads=threads))
        normalized = rep.primitive * covol ** 2 / r ** 4
        rows.append({
            "R": r,
            "total": rep.all_tripods,
            "primitive": rep.primitive,
            "primitive_over_R4": rep.primitive / r ** 4,
            "normalized_ratio": normalized,
            "error": abs(normalized - ref),
        })
    return rows


def nonreduced_census(lattice: LatticeSpec, radius: float, threads: int = 1,
                      mode: str = LEMMA) -> dict:
    """Census with reducedness classification; exact lattices only."""
    if not lattice.is_exact:
        raise ValueError("nonreduced census requires an exact preset lattice")
    rep = census(CensusConfig(lattice=lattice, radius=radius, mode=mode,
                              classify_reduced=True, threads=threads))
    ratio = rep.nonreduced_primitive / radius ** 4
    out = {
        "radius": radius,
        "counts": {
            "all_tripods": rep.all_tripods,
            "primitive": rep.primitive,
            "reduced": rep.reduced,
            "nonreduced_primitive": rep.nonreduced_primitive,
        },
        "nonreduced_over_R4": ratio,
        "all_over_R4": rep.all_tripods / radius ** 4,
        "elapsed_ms": rep.elapsed_ms,
    }
    if lattice.mode == EISENSTEIN:
        out["constants"] = {
            "nonreduced_bound": (1 - 6 / math.pi ** 2) * math.pi / 16,
            "c1": (1 - 6 / math.pi ** 2) * 0.75,
            "c2": 90 / math.pi ** 4,
            "eisenstein_total": math.pi / 12,
        }
    return out


def random_lattice_experiment(sample_count: int, radius: float, seed: int,
                              threads: int = 1) -> dict:
    """Heuristic survey of nonreduced counts over random general-tau lattices.

    tau = s + it is sampled uniformly from s in [0, 1), t in [0.5, 1.5];
    each sample runs a general-mode census with heuristic reducedness.
    Deterministic for a fixed seed (PCG64).
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    taus = rng.random((sample_count, 2))
    counts = []
    for k in range(sample_count):
        s = float(taus[k, 0])
        t = 0.5 + float(taus[k, 1])
        lat = LatticeSpec(GENERAL, s, t)
        rep = census(CensusConfig(lattice=lat, radius=radius,
                                  classify_reduced=True, threads=threads))
        counts.append(int(rep.nonreduced_primitive))
    histogram: dict[int, int] = {}
    for v in counts:
        histogram[v] = histogram.get(v, 0) + 1
    return {
        "samples": sample_count,
        "radius": radius,
        "seed": seed,
        "histogram": {str(k): v for k, v in sorted(histogram.items())},
        "zero_fraction": sum(1 for v in counts if v == 0) / max(1, sample_count),
        "heuristic": True,
    }
