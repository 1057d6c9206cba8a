"""Brute-force verification of containments and structural identities.

Containment I^(m) in I^r is decided by normal forms of the minimal
generators of I^(m) modulo a degree-truncated Groebner basis of I^r.  A
negative answer carries the first failing generator as witness, and the
witness is re-verified without Groebner bases: it satisfies the vanishing
conditions of mZ and lies outside the span (I^r)_d built by linear algebra.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from . import closedform
from .algebra import QQ, Field, matmul_exact
from .divisors import class_of, is_nef
from .fatpoints import (
    FatPointScheme,
    PointConfig,
    conic_form,
    fat_ideal,
    make_config,
    symbolic_power,
)
from .groebner import normal_form
from .ideals import GradedPiece, Ideal, ambient_dim, poly_to_vector
from .poly import GREVLEX, Poly

log = logging.getLogger(__name__)

BUDGET_ENV = "RESURGENCE_BUDGET"
DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    """Estimated work exceeds the configured budget."""


class HypothesisFailed(ValueError):
    """A structural check was asked for outside its hypotheses."""


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass
class OracleReport:
    query: dict
    result: object
    witness: Poly | None = None
    details: dict = field(default_factory=dict)
    field_spec: str = ""
    seed: int | None = None
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "query": self.query,
            "result": self.result,
            "witness": None if self.witness is None else str(self.witness),
            "witness_degree": None if self.witness is None else self.witness.degree,
            "details": self.details,
            "field": self.field_spec,
            "seed": self.seed,
            "seconds": round(self.seconds, 3),
        }


def _report(query, result, Z: FatPointScheme | PointConfig, start, **kw) -> OracleReport:
    cfg = Z.config if isinstance(Z, FatPointScheme) else Z
    return OracleReport(query, result, field_spec=cfg.field.spec(), seed=cfg.seed, seconds=time.perf_counter() - start, **kw)


def products(gens: Sequence[Poly], r: int) -> list[Poly]:
    """All r-fold products of the given generators (with repetition)."""
    return list(Ideal(gens, gens[0].ring).power(r).generators)


def degree_bound(mults: Sequence[int]) -> int:
    """Segre-type estimate of the top generator degree of I(Z): max(m_1 + m_2, ceil(sum m_i / 2)) + 1."""
    top = sorted(mults, reverse=True) + [0, 0]
    return max(top[0] + top[1], (sum(mults) + 1) // 2) + 1


def estimate_work(Z: FatPointScheme, m: int, r: int) -> int:
    """Products in I^r times (monomials in the estimated top degree of I^(m))^2."""
    n_gens = len(fat_ideal(Z).generators)
    n_prod = comb(n_gens + r - 1, r)
    return n_prod * ambient_dim(degree_bound(Z.scaled(m).multiplicities)) ** 2


def check_budget(Z: FatPointScheme, m: int, r: int, budget: int | None = None) -> int:
    work = estimate_work(Z, m, r)
    cap = default_budget() if budget is None else budget
    if work > cap:
        raise BudgetExceeded(f"estimated work {work} exceeds budget {cap}")
    return work


# ---------------------------------------------------------------------------
# independent witness checks


def satisfies_conditions(Z: FatPointScheme, f: Poly) -> bool:
    """f in I(Z), by the vanishing-condition matrix."""
    if f.is_zero():
        return True
    if not f.is_homogeneous():
        return False
    M = Z.conditions(f.degree)
    if M.shape[0] == 0:
        return True
    v = poly_to_vector(f, f.degree)
    return not np.any(matmul_exact(M, v[:, None], Z.field))


def in_span_of_power(gens: Sequence[Poly], f: Poly) -> bool:
    """f in (ideal of gens)_d by graded linear algebra, no Groebner basis."""
    return Ideal(gens, f.ring).piece(f.degree, "span").contains(f)


# ---------------------------------------------------------------------------
# containment


def contains_bruteforce(Z: FatPointScheme, m: int, r: int, budget: int | None = None, verify_witness: bool = True) -> OracleReport:
    """Decide I(Z)^(m) in I(Z)^r."""
    if m < 1 or r < 1:
        raise ValueError("m, r must be >= 1")
    start = time.perf_counter()
    query = {"op": "contains", "scheme": Z.describe(), "m": m, "r": r}
    work = check_budget(Z, m, r, budget)
    S = symbolic_power(Z, m)
    I = fat_ideal(Z)
    sgens = sorted(S.generators, key=lambda g: g.degree)
    top = sgens[-1].degree
    prods = list(I.generators) if r == 1 else products(I.generators, r)
    # generators of I^r of degree above top cannot help in degree <= top
    P = Ideal([g for g in prods if g.degree <= top], Z.ring)
    details = {
        "symbolic_generator_degrees": [g.degree for g in sgens],
        "power_generators": len(prods),
        "truncation": top,
        "work_estimate": work,
    }
    witness = None
    if P.is_zero():
        witness = sgens[0]
    else:
        G = P.groebner(GREVLEX, truncation=top)
        details["basis_size"] = len(G)
        for g in sgens:
            if not normal_form(g, G).is_zero():
                witness = g
                break
    if witness is None:
        return _report(query, True, Z, start, details=details)
    if verify_witness:
        in_sym = satisfies_conditions(Z.scaled(m), witness)
        outside = not in_span_of_power(prods, witness)
        details["witness_checks"] = {"in_symbolic_power": in_sym, "outside_power": outside}
        if not (in_sym and outside):
            raise AssertionError(f"witness failed independent re-verification: {details['witness_checks']}")
    return _report(query, False, Z, start, witness=witness, details=details)


def contains_by_span(Z: FatPointScheme, m: int, r: int) -> bool:
    """Second route: compare graded pieces at every generator degree of I^(m)."""
    S = symbolic_power(Z, m)
    P = fat_ideal(Z).power(r)
    for d in sorted({g.degree for g in S.generators}):
        if not P.piece(d, "span").contains(Z.scaled(m).piece(d)):
            return False
    return True


def alpha_bruteforce(Z: FatPointScheme, m: int) -> int:
    """Least t with I(mZ)_t nonzero.

    The scan starts at max m_i (L - E_i is nef, so every curve in I(mZ)
    has degree at least m m_i); the start is certified by checking that
    the piece just below it is zero.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    W = Z.scaled(m)
    t = max(W.multiplicities)
    if t > 0 and W.piece(t - 1).dim:
        t = 0
    while W.piece(t).dim == 0:
        t += 1
    return t


# ---------------------------------------------------------------------------
# structural checks


def _power_piece(Z: FatPointScheme, m: int, r: int, t: int, cache: dict) -> GradedPiece:
    """Sum over t = t_1 + ... + t_r (t_i >= 2m, i.e. nonzero pieces) of products of I(mZ)_{t_i}."""
    key = (r, t)
    if key in cache:
        return cache[key]
    W = Z.scaled(m)
    if r == 1:
        out = W.piece(t)
    else:
        out = GradedPiece(Z.ring, t)
        for t1 in range(0, t + 1):
            A = W.piece(t1)
            if A.dim == 0:
                continue
            B = _power_piece(Z, m, r - 1, t - t1, cache)
            if B.dim == 0:
                continue
            out = out + A.times(B)
    cache[key] = out
    return out


def check_power_structure(Z: FatPointScheme, m: int, r: int, t: int, cache: dict | None = None) -> OracleReport:
    """(I^r)_t = f^q I((rm - q)Z)_{t - 2q} for I = I(mZ), Z simple points on the conic.

    ``cache`` may be shared between calls with the same Z and m.
    """
    cfg = Z.config
    if cfg.kind != "conic":
        raise HypothesisFailed("points must lie on the conic")
    if any(v != 1 for v in Z.multiplicities):
        raise HypothesisFailed("Z must be reduced (all multiplicities 1)")
    n = Z.n
    if t < 2 * m * r:
        raise HypothesisFailed("t must be >= 2mr")
    start = time.perf_counter()
    q = closedform.q_power(n, r, t, m)
    left = _power_piece(Z, m, r, t, {} if cache is None else cache)
    rest = Z.scaled(r * m - q).piece(t - 2 * q) if r * m - q > 0 else GradedPiece.full(Z.ring, t - 2 * q)
    f = conic_form(Z.ring)
    right = rest.times_poly(f**q) if q else rest
    ok = left == right
    details = {"q": q, "dim_left": left.dim, "dim_right": right.dim, "left_in_right": right.contains(left), "right_in_left": left.contains(right)}
    return _report({"op": "power-structure", "n": n, "m": m, "r": r, "t": t}, ok, Z, start, details=details)


def check_mult_map_surjectivity(Z1: FatPointScheme, a: int, Z2: FatPointScheme, b: int) -> OracleReport:
    """Is I(Z1)_a * I(Z2)_b all of I(Z1 + Z2)_{a+b}?"""
    start = time.perf_counter()
    A, B = Z1.piece(a), Z2.piece(b)
    target = (Z1 + Z2).piece(a + b)
    query = {"op": "mult-surjectivity", "Z1": list(Z1.multiplicities), "a": a, "Z2": list(Z2.multiplicities), "b": b}
    if A.dim == 0 or B.dim == 0:
        return _report(query, target.dim == 0, Z1, start, details={"vacuous": True, "target_dim": target.dim})
    image = A.times(B)
    details = {"vacuous": False, "image_dim": image.dim, "target_dim": target.dim, "image_in_target": target.contains(image)}
    return _report(query, image.dim == target.dim and details["image_in_target"], Z1, start, details=details)


def two_degree_scheme(d: int, *, field: Field | None = None, seed: int = 0) -> FatPointScheme:
    """Z = (d-1)p_1 + p_2 + ... + p_{2d} at general points."""
    if d < 3:
        raise ValueError("d must be >= 3")
    cfg = make_config("generic", 2 * d, field=field, seed=seed)
    return FatPointScheme(cfg, (d - 1,) + (1,) * (2 * d - 1))


def check_two_degree_family(d: int, m: int, *, field: Field | None = None, seed: int = 0, Z: FatPointScheme | None = None) -> OracleReport:
    """alpha(I(Z)) = d, generator degrees d, d, (d+1) x (d-2), I(Z)^m = I(mZ)
    through degree md + d, and dim I(mZ)_{md} = m + 1."""
    start = time.perf_counter()
    Z = Z or two_degree_scheme(d, field=field, seed=seed)
    I = fat_ideal(Z)
    degs = I.generator_degrees()
    expected_degs = [d, d] + [d + 1] * (d - 2)
    top = m * d + d
    Pm = I.power(m) if m > 1 else I
    mismatched = [t for t in range(top + 1) if Pm.piece(t, "span") != Z.scaled(m).piece(t)]
    h = Z.scaled(m).piece(m * d).dim
    details = {
        "alpha": I.alpha(),
        "generator_degrees": degs,
        "expected_generator_degrees": expected_degs,
        "equal_through": top,
        "mismatched_degrees": mismatched,
        "dim_at_md": h,
    }
    ok = details["alpha"] == d and degs == expected_degs and not mismatched and h == m + 1
    return _report({"op": "two-degree-family", "d": d, "m": m}, ok, Z, start, details=details)


def check_truncation_identity(Z: FatPointScheme, r: int) -> OracleReport:
    """I^r = I^(r) meet M^{r alpha} degree by degree through r alpha + reg + 1,
    for I = I(Z) with alpha(I) = reg(I)."""
    start = time.perf_counter()
    I = fat_ideal(Z)
    a, reg = I.alpha(), Z.reg()
    if a != reg:
        raise HypothesisFailed(f"alpha = {a} differs from reg = {reg}")
    top = r * a + reg + 1
    P = I.power(r)
    W = Z.scaled(r)
    bad = []
    for t in range(top + 1):
        right = W.piece(t) if t >= r * a else GradedPiece(Z.ring, t)
        if P.piece(t, "span") != right:
            bad.append(t)
    details = {"alpha": a, "reg": reg, "through": top, "mismatched_degrees": bad}
    return _report({"op": "truncation-identity", "n": Z.n, "r": r}, not bad, Z, start, details=details)


def nef_threshold_vs_omega(Z: FatPointScheme) -> OracleReport:
    """Least t with F_t(Z) nef against omega(I(Z)), points on the conic."""
    from .divisors import nef_threshold

    start = time.perf_counter()
    thr = nef_threshold(Z.multiplicities, "conic")
    om = fat_ideal(Z).omega()
    return _report({"op": "nef-vs-omega", "scheme": Z.describe()}, thr == om, Z, start, details={"nef_threshold": thr, "omega": om})


# ---------------------------------------------------------------------------
# grids


def build_config(kind: str, n: int, field: Field, seed: int | None = None, params=None, check_m: int = 1) -> PointConfig:
    if kind == "conic":
        return make_config("conic", n, field=field, params=params)
    return make_config("generic", n, field=field, seed=seed, check_m=check_m)


def _cell(args):
    kind, n, m, r, field_spec, seed, budget = args
    from .algebra import parse_field

    F = parse_field(field_spec)
    cfg = build_config(kind, n, F, seed, check_m=max(m, r))
    Z = FatPointScheme.uniform(cfg)
    rep = contains_bruteforce(Z, m, r, budget=budget)
    return rep


def crossvalidate(
    kind: str,
    n: int,
    m_max: int,
    r_max: int,
    *,
    field: Field | None = None,
    seed: int = 0,
    budget: int | None = None,
    extra: Sequence[tuple[int, int]] = (),
    jobs: int = 1,
) -> list[dict]:
    """Predictor vs oracle on the grid [1, m_max] x [1, r_max] plus ``extra`` cells.

    A disagreement over F_p is re-run over the rationals before it is
    reported; rows carry the serialized witness when the oracle says no.
    """
    from .algebra import GF

    F = field or GF()
    cells = [(m, r) for m in range(1, m_max + 1) for r in range(1, r_max + 1)]
    cells += [c for c in extra if c not in cells]
    pred_kind = "general" if kind == "generic" else kind
    args = [(kind, n, m, r, F.spec(), seed, budget) for m, r in cells]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            reports = list(pool.map(_cell, args))
    else:
        reports = [_cell(a) for a in args]
    rows = []
    for (m, r), rep in zip(cells, reports):
        pred = closedform.contains(pred_kind, n, m, r)
        row = {
            "m": m,
            "r": r,
            "predicted": pred.contains,
            "method": pred.method,
            "oracle": rep.result,
            "agree": pred.contains == rep.result,
            "witness": None if rep.witness is None else str(rep.witness),
            "seconds": round(rep.seconds, 3),
        }
        if not row["agree"] and F is not QQ:
            log.warning("disagreement at (m, r) = (%d, %d) over %s; re-running over QQ", m, r, F.spec())
            rep_q = _cell((kind, n, m, r, "rational", seed, budget))
            row["oracle_rational"] = rep_q.result
            row["agree"] = pred.contains == rep_q.result
        rows.append(row)
    return rows


def grid_monotone(rows: Sequence[dict], key: str = "oracle") -> bool:
    """true at (m, r) implies true at (m+1, r) and (m, r-1), where present."""
    table = {(row["m"], row["r"]): row[key] for row in rows}
    for (m, r), v in table.items():
        if not v:
            continue
        for nb in ((m + 1, r), (m, r - 1)):
            if nb in table and not table[nb]:
                return False
    return True


def power_in_symbolic(Z: FatPointScheme, r: int) -> bool:
    """Every r-fold product of generators satisfies the conditions of rZ."""
    W = Z.scaled(r)
    return all(satisfies_conditions(W, g) for g in products(fat_ideal(Z).generators, r))


def nef_implies_nonzero(Z: FatPointScheme, t: int, context: str) -> bool | None:
    """None when F_t(Z) is not nef, else whether I(Z)_t is nonzero."""
    if not is_nef(class_of(Z, t), context):
        return None
    return Z.piece(t).dim > 0
