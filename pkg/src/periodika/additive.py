"""Classification of additive rules over Z_m.

Everything here reduces dynamical questions about the global map to exact
integer arithmetic on the coefficient polynomial:

* surjectivity  <=>  gcd(m, c_-r, ..., c_r) = 1;
* sensitivity   <=>  some prime p of m does not divide every off-center
  coefficient (otherwise the rule is equicontinuous);
* the map splits letterwise over the prime-power factors of m, and each
  factor is classified by its boundary indices L, R -- the extreme
  positions carrying a coefficient coprime to p: L = R = 0 gives an
  equicontinuous factor, L < 0 < R a positively expansive one, and every
  other shape a transitive, not positively expansive one;
* strict temporal periodicity (temporally periodic points that are not
  spatially periodic): empty iff no factor is equicontinuous (iff the map
  is transitive), residual iff all factors are, dense otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from itertools import product
from math import gcd

from .configs import Config, join_letterwise, map_letters
from .rules import AdditiveRule, NotSurjectiveError, compose_additive, render_rule_spec


def prime_power_factorization(m: int) -> tuple[tuple[int, int], ...]:
    """Sorted ``(p, k)`` pairs with ``m = prod p**k``."""
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            out.append((p, k))
        p += 1
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def is_surjective_additive(rule: AdditiveRule) -> bool:
    g = rule.modulus
    for c in rule.coeffs.values():
        g = gcd(g, c)
    return g == 1


def off_center_gcd(rule: AdditiveRule) -> int:
    g = 0
    for j, c in rule.coeffs.items():
        if j != 0:
            g = gcd(g, c)
    return g


def is_sensitive_additive(rule: AdditiveRule) -> bool:
    g = off_center_gcd(rule)
    return any(g % p != 0 for p, _ in prime_power_factorization(rule.modulus))


def is_equicontinuous_additive(rule: AdditiveRule) -> bool:
    return not is_sensitive_additive(rule)


@dataclass(frozen=True)
class PrimePowerFactor:
    """The reduction of an additive rule mod one prime power of its modulus."""

    prime: int
    exponent: int
    rule: AdditiveRule

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent


def decompose_crt(rule: AdditiveRule) -> tuple[PrimePowerFactor, ...]:
    factors = []
    for p, k in prime_power_factorization(rule.modulus):
        q = p**k
        reduced = AdditiveRule(q, rule.radius, {j: c % q for j, c in rule.coeffs.items()})
        factors.append(PrimePowerFactor(p, k, reduced))
    return tuple(factors)


def crt_split_letter(c: int, moduli: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(c % q for q in moduli)


def crt_join_letter(residues: tuple[int, ...], moduli: tuple[int, ...]) -> int:
    if len(residues) != len(moduli):
        raise ValueError("residue tuple length does not match moduli")
    total = 1
    for q in moduli:
        total *= q
    x = 0
    for r, q in zip(residues, moduli):
        if not 0 <= r < q:
            raise ValueError(f"residue {r} outside 0..{q - 1}")
        stride = total // q
        x += r * stride * pow(stride, -1, q)
    return x % total


def crt_split(x: Config, factors: tuple[PrimePowerFactor, ...]) -> tuple[Config, ...]:
    """Letterwise residues of a configuration over the factor moduli."""
    return tuple(map_letters(x, lambda a, q=f.modulus: a % q, f.modulus) for f in factors)


def crt_join(components, factors: tuple[PrimePowerFactor, ...]) -> Config:
    """Inverse of ``crt_split``: combine residue configurations."""
    moduli = tuple(f.modulus for f in factors)
    total = 1
    for q in moduli:
        total *= q
    return join_letterwise(
        components, lambda *res: crt_join_letter(res, moduli), total
    )


def boundary_indices(factor: PrimePowerFactor) -> tuple[int, int]:
    """Extreme coefficient indices coprime to the factor prime."""
    p = factor.prime
    coprime = [j for j, c in factor.rule.coeffs.items() if c % p != 0]
    if not coprime:
        raise NotSurjectiveError(
            f"no coefficient of {render_rule_spec(factor.rule)} is coprime to {p}"
        )
    return (min(coprime), max(coprime))


class FactorClass(Enum):
    EQUICONTINUOUS = "Equicontinuous"
    POSITIVELY_EXPANSIVE = "PositivelyExpansive"
    TRANSITIVE_NOT_EXPANSIVE = "TransitiveNotExpansive"


def classify_prime_power(factor: PrimePowerFactor) -> FactorClass:
    L, R = boundary_indices(factor)
    if L == R == 0:
        return FactorClass.EQUICONTINUOUS
    if L < 0 < R:
        return FactorClass.POSITIVELY_EXPANSIVE
    return FactorClass.TRANSITIVE_NOT_EXPANSIVE


@dataclass(frozen=True)
class PermutativePowerCert:
    """``rule`` is the h-th power, supported exactly on ``[h*L, h*R]`` with
    extreme coefficients coprime to the factor prime."""

    h: int
    rule: AdditiveRule


@dataclass(frozen=True)
class NotFoundWithin:
    """Bounded search ended without a hit; not a disproof."""

    bound: int


def permutative_power(
    factor: PrimePowerFactor, h_max: int | None = None
) -> PermutativePowerCert | NotFoundWithin:
    """Least ``h`` whose power is permutative with support ``[h*L, h*R]``."""
    if h_max is None:
        h_max = 4 * factor.modulus
    L, R = boundary_indices(factor)
    p = factor.prime
    cur = factor.rule
    for h in range(1, h_max + 1):
        support = cur.support
        lo_ok = cur.coeffs.get(h * L, 0) % p != 0
        hi_ok = cur.coeffs.get(h * R, 0) % p != 0
        if lo_ok and hi_ok and support[0] >= h * L and support[-1] <= h * R:
            return PermutativePowerCert(h, cur)
        if h < h_max:
            cur = compose_additive(cur, factor.rule)
    return NotFoundWithin(h_max)


class StpVerdict(Enum):
    EMPTY = "Empty"
    DENSE = "Dense"
    RESIDUAL = "Residual"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class FactorReport:
    prime: int
    exponent: int
    factor_class: FactorClass
    L: int
    R: int
    h: int | None


@dataclass(frozen=True)
class ClassificationReport:
    rule: AdditiveRule
    surjective: bool
    sensitive: bool
    equicontinuous: bool
    transitive: bool
    positively_expansive: bool
    stp: StpVerdict
    factors: tuple[FactorReport, ...]
    certificates: dict


def identity_power(rule: AdditiveRule, bound: int) -> int | None:
    """Least ``t <= bound`` with ``rule**t`` the identity rule, if any."""
    cur = rule
    for t in range(1, bound + 1):
        if cur.coeffs == {0: 1}:
            return t
        if t < bound:
            cur = compose_additive(cur, rule)
    return None


def classify_additive(rule: AdditiveRule, h_max: int | None = None) -> ClassificationReport:
    """Full verdict set for an additive rule.

    Non-surjective rules keep their sensitivity verdict (the dichotomy
    does not need surjectivity); transitivity and positive expansivity
    are reported false because both imply surjectivity, and the strict
    temporal periodicity verdict is left unknown.
    """
    g = rule.modulus
    for c in rule.coeffs.values():
        g = gcd(g, c)
    surjective = g == 1
    off_g = off_center_gcd(rule)
    primes = [p for p, _ in prime_power_factorization(rule.modulus)]
    witness = next((p for p in primes if off_g % p != 0), None)
    sensitive = witness is not None
    certificates: dict = {
        "surjectivity": {"criterion": "gcd of modulus and coefficients", "gcd": g},
        "sensitivity": {
            "criterion": "some prime of the modulus misses the off-center gcd",
            "off_center_gcd": off_g,
            "witness_prime": witness,
        },
    }
    if not surjective:
        certificates["note"] = (
            "rule is not surjective; transitivity and positive expansivity "
            "(which require surjectivity) are reported false and the strict "
            "temporal periodicity verdict is left unknown"
        )
        return ClassificationReport(
            rule=rule,
            surjective=False,
            sensitive=sensitive,
            equicontinuous=not sensitive,
            transitive=False,
            positively_expansive=False,
            stp=StpVerdict.UNKNOWN,
            factors=(),
            certificates=certificates,
        )
    factor_reports = []
    classes = []
    for factor in decompose_crt(rule):
        L, R = boundary_indices(factor)
        cls = classify_prime_power(factor)
        cert = permutative_power(factor, h_max)
        h = cert.h if isinstance(cert, PermutativePowerCert) else None
        factor_reports.append(FactorReport(factor.prime, factor.exponent, cls, L, R, h))
        classes.append(cls)
    any_eq = any(c is FactorClass.EQUICONTINUOUS for c in classes)
    all_eq = all(c is FactorClass.EQUICONTINUOUS for c in classes)
    if all_eq != (not sensitive):  # pragma: no cover - criteria provably agree
        raise AssertionError("factor classes disagree with the sensitivity criterion")
    transitive = not any_eq
    positively_expansive = all(c is FactorClass.POSITIVELY_EXPANSIVE for c in classes)
    if not any_eq:
        stp = StpVerdict.EMPTY
    elif all_eq:
        stp = StpVerdict.RESIDUAL
    else:
        stp = StpVerdict.DENSE
    certificates["factor_classes"] = {
        "criterion": (
            "boundary indices of coefficients coprime to p: L=R=0 equicontinuous, "
            "L<0<R positively expansive, otherwise transitive and not expansive"
        )
    }
    certificates["stp"] = {
        "criterion": (
            "empty iff no factor is equicontinuous (iff transitive); residual iff "
            "all factors are equicontinuous; dense otherwise"
        )
    }
    if all_eq:
        certificates["equicontinuity"] = {
            "criterion": "some power of the rule is the identity",
            "identity_power": identity_power(rule, 4 * rule.modulus**2),
        }
    return ClassificationReport(
        rule=rule,
        surjective=True,
        sensitive=sensitive,
        equicontinuous=not sensitive,
        transitive=transitive,
        positively_expansive=positively_expansive,
        stp=stp,
        factors=tuple(factor_reports),
        certificates=certificates,
    )


def report_to_dict(report: ClassificationReport) -> dict:
    """Plain-data view of a report with a fixed key order."""
    return {
        "rule": render_rule_spec(report.rule),
        "surjective": report.surjective,
        "sensitive": report.sensitive,
        "equicontinuous": report.equicontinuous,
        "transitive": report.transitive,
        "positively_expansive": report.positively_expansive,
        "stp": report.stp.value,
        "factors": [
            {
                "p": f.prime,
                "k": f.exponent,
                "class": f.factor_class.value,
                "L": f.L,
                "R": f.R,
                "h": f.h,
            }
            for f in report.factors
        ],
        "certificates": report.certificates,
    }


def report_to_json(report: ClassificationReport) -> str:
    return json.dumps(report_to_dict(report), indent=2)


def enumerate_additive_rules(modulus: int, radius: int = 1):
    """All coefficient assignments over the window ``-radius .. radius``."""
    width = 2 * radius + 1
    for coeffs in product(range(modulus), repeat=width):
        yield AdditiveRule(
            modulus, radius, {j - radius: c for j, c in enumerate(coeffs)}
        )
