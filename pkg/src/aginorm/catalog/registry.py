"""Registry of inequality checkers with their input schema and random samplers.

A trial *instance* is a plain dict holding the inputs a checker consumes:
``A``, ``B``, ``X`` (complex arrays), ``p`` (float), ``quad``
(:class:`ExponentQuad`), ``fpair``/``gpair`` (:class:`FunctionPair`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..calculus import ExponentQuad, FunctionPair
from ..errors import InvalidParam
from ..linalg import sample_ginibre, sample_psd
from ..norms import HS, OP, NormSpec
from . import classic, extensions
from .base import P_MIN, Evaluation, Variant

PC = (Variant.PROOF_CONSISTENT,)
BOTH = (Variant.PROOF_CONSISTENT, Variant.AS_PRINTED)

P_DOMAINS = {
    "closed": (0.0, 1.0),
    "open": (0.0, 1.0),
    "inner": (P_MIN, 1.0 - P_MIN),
}


@dataclass(frozen=True)
class SamplingSettings:
    """Knobs for drawing random instances; ``None`` means the checker default."""

    p_range: tuple[float, float] | None = None
    exponent_range: tuple[float, float] | None = None
    min_eig: float = 0.1
    scale: float | None = None

    def matrix_scale(self, n: int) -> float:
        return 1.0 / np.sqrt(n) if self.scale is None else self.scale


@dataclass(frozen=True)
class InequalityCase:
    id: str
    summary: str
    inputs: tuple[str, ...]
    evaluate: Callable[[dict, NormSpec, Variant], Evaluation] = field(repr=False)
    variants: tuple[Variant, ...] = PC
    psd_inputs: bool = False
    norms: str = "any"
    p_domain: str | None = "closed"
    quad_targets: tuple[float, ...] = ()
    exponent_range: tuple[float, float] = (0.0, 1.0)
    pairs: bool = False
    pair_target: float = 1.0

    @property
    def hs_only(self) -> bool:
        return self.norms == "hs"

    @property
    def op_only(self) -> bool:
        return self.norms == "op"

    def default_norm(self) -> NormSpec:
        return HS if self.hs_only else OP

    def check_norm(self, spec: NormSpec) -> None:
        if self.hs_only and spec != HS:
            raise InvalidParam(f"{self.id} is a Hilbert-Schmidt inequality")
        if self.op_only and spec != OP:
            raise InvalidParam(f"{self.id} is an operator-norm inequality")

    def run(self, instance: dict, spec: NormSpec | None = None,
            variant: Variant = Variant.PROOF_CONSISTENT) -> Evaluation:
        variant = Variant(variant)
        if variant not in self.variants:
            raise InvalidParam(f"{self.id} has no {variant.value} variant")
        spec = self.default_norm() if spec is None else spec
        self.check_norm(spec)
        # Overflowed sides surface as NumericalAnomaly from judge().
        with np.errstate(over="ignore", invalid="ignore"):
            return self.evaluate(instance, spec, variant)

    def p_interval(self, settings: SamplingSettings) -> tuple[float, float]:
        lo, hi = P_DOMAINS[self.p_domain]
        if settings.p_range is None:
            return lo, hi
        a, b = settings.p_range
        if a > b or a < lo or b > hi or (self.p_domain == "open" and (a <= 0 or b >= 1)):
            raise InvalidParam(f"p range {settings.p_range} outside the {self.p_domain} domain of {self.id}")
        return a, b

    def sample(self, rng: np.random.Generator, n: int, settings: SamplingSettings = SamplingSettings(),
               norms: tuple[NormSpec, ...] = ()) -> dict:
        """Draw a random instance of dimension ``n``."""
        scale = settings.matrix_scale(n)
        inst: dict = {}
        for name in ("A", "B"):
            if name in self.inputs:
                if self.psd_inputs:
                    inst[name] = sample_psd(rng, n, settings.min_eig, scale)
                else:
                    inst[name] = sample_ginibre(rng, n, scale)
        if "X" in self.inputs:
            inst["X"] = sample_ginibre(rng, n, scale)
        if self.p_domain is not None:
            lo, hi = self.p_interval(settings)
            p = float(rng.uniform(lo, hi))
            while self.p_domain == "open" and p <= 0.0:
                p = float(rng.uniform(lo, hi))
            inst["p"] = p
        if self.quad_targets:
            target = self.quad_targets[int(rng.integers(len(self.quad_targets)))]
            lo, hi = settings.exponent_range or self.exponent_range
            lo, hi = lo * target, hi * target
            m, s = rng.uniform(lo, hi, size=2)
            inst["quad"] = ExponentQuad.from_free(float(m), float(s), target)
        if self.pairs:
            general_ok = all(spec == OP for spec in norms) if norms else True
            inst.update(self._sample_pairs(rng, general_ok, settings))
        return inst

    def _sample_pairs(self, rng, general_ok: bool, settings: SamplingSettings) -> dict:
        target = self.pair_target
        lo, hi = settings.exponent_range or self.exponent_range

        def one() -> FunctionPair:
            if target == 1.0 and general_ok and rng.uniform() < 0.5:
                return FunctionPair.clip_split(float(np.exp(rng.uniform(np.log(0.1), np.log(10.0)))))
            a = float(rng.uniform(lo * target, hi * target))
            return FunctionPair.powers(a, target - a, target)

        if target == 2.0:
            fg = one()
            bp = fg.swapped() if rng.uniform() < 0.5 else one()
            return {"fpair": fg, "gpair": bp}
        return {"fpair": one(), "gpair": one()}


def _p(inst):
    return inst["p"]


_CASES = [
    InequalityCase(
        "cs-bhatia-davis", "|||AXB*|||^2 <= |||A*AX||| |||XB*B|||", ("A", "B", "X"),
        lambda i, s, v: classic.evaluate_cs_bhatia_davis(i["A"], i["B"], i["X"], s),
        p_domain=None),
    InequalityCase(
        "kittaneh-interp", "|||AXB*|||^2 <= |||(A*A)^p X (B*B)^(1-p)||| |||(A*A)^(1-p) X (B*B)^p|||",
        ("A", "B", "X", "p"),
        lambda i, s, v: classic.evaluate_kittaneh_interp(i["A"], i["B"], i["X"], _p(i), s)),
    InequalityCase(
        "audenaert", "|||AB*|||^2 <= |||pA*A + (1-p)B*B||| |||(1-p)A*A + pB*B|||", ("A", "B", "p"),
        lambda i, s, v: classic.evaluate_audenaert(i["A"], i["B"], _p(i), s)),
    InequalityCase(
        "zou-jiang", "|||AXB*|||^2 <= |||pA*AX + (1-p)XB*B||| |||(1-p)A*AX + pXB*B|||",
        ("A", "B", "X", "p"),
        lambda i, s, v: classic.evaluate_zou_jiang(i["A"], i["B"], i["X"], _p(i), s)),
    InequalityCase(
        "hs-refined", "||AXB*||_2^2 <= sqrt(P1 P2), r = min(p, 1-p) corrections", ("A", "B", "X", "p"),
        lambda i, s, v: classic.evaluate_hs_refined(i["A"], i["B"], i["X"], _p(i), v),
        variants=BOTH, norms="hs"),
    InequalityCase(
        "kosaki", "||A^p X B^(1-p)||_2 <= ||pAX + (1-p)XB||_2 (A, B PSD)", ("A", "B", "X", "p"),
        lambda i, s, v: classic.evaluate_kosaki(i["A"], i["B"], i["X"], _p(i)),
        psd_inputs=True, norms="hs"),
    InequalityCase(
        "refined-young-hs", "||A^p X B^(1-p)||_2^2 + r^2 ||AX - XB||_2^2 <= ||pAX + (1-p)XB||_2^2",
        ("A", "B", "X", "p"),
        lambda i, s, v: classic.evaluate_refined_young_hs(i["A"], i["B"], i["X"], _p(i)),
        psd_inputs=True, norms="hs"),
    InequalityCase(
        "zhao-wu", "refined Young with r0 = min(2r, 1-2r) geometric-mean correction (A, B PSD)",
        ("A", "B", "X", "p"),
        lambda i, s, v: classic.evaluate_zhao_wu(i["A"], i["B"], i["X"], _p(i), v),
        variants=BOTH, psd_inputs=True, norms="hs", p_domain="open"),
    InequalityCase(
        "young-ando", "|||A^p B^(1-p)||| <= |||pA + (1-p)B||| (A, B PSD)", ("A", "B", "p"),
        lambda i, s, v: classic.evaluate_young_ando(i["A"], i["B"], _p(i), s),
        psd_inputs=True),
    InequalityCase(
        "thm21", "||AXB*||^2 <= ||f1(A*A) X g1(B*B)|| ||f2(A*A) X g2(B*B)||, f1 f2 = g1 g2 = t",
        ("A", "B", "X"),
        lambda i, s, v: extensions.evaluate_thm21(i["A"], i["B"], i["X"], i["fpair"], i["gpair"]),
        norms="op", p_domain=None, pairs=True, exponent_range=(-1.0, 2.0)),
    InequalityCase(
        "exp-interp", "|||AXB*|||^2 <= |||(A*A)^m X (B*B)^s||| |||(A*A)^n X (B*B)^t|||, m+n = s+t = 1",
        ("A", "B", "X"),
        lambda i, s, v: extensions.evaluate_exponent_interp(i["A"], i["B"], i["X"], i["quad"], s),
        p_domain=None, quad_targets=(1.0,), exponent_range=(-1.0, 2.0)),
    InequalityCase(
        "cor23", "|||AB*|||^2 <= |||p f1(A*A)^(1/p) + (1-p) g1(B*B)^(1/(1-p))||| x |||...|||",
        ("A", "B", "p"),
        lambda i, s, v: extensions.evaluate_cor23(i["A"], i["B"], i["fpair"], i["gpair"], _p(i), s),
        p_domain="inner", pairs=True),
    InequalityCase(
        "cor24", "|||AB*|||^2 <= product of four arithmetic-mean factors ^(1/2), f g = t^2",
        ("A", "B", "p"),
        lambda i, s, v: extensions.evaluate_cor24(i["A"], i["B"], i["fpair"], _p(i), s, bpair=i["gpair"]),
        pairs=True, pair_target=2.0),
    InequalityCase(
        "remark35", "||AXB*||_2^2 <= ||p(A*A)^(m/p)X + (1-p)X(B*B)^(s/(1-p))||_2 x ||...||_2",
        ("A", "B", "X", "p"),
        lambda i, s, v: extensions.evaluate_remark35(i["A"], i["B"], i["X"], i["quad"], _p(i)),
        norms="hs", p_domain="inner", quad_targets=(1.0, 2.0)),
    InequalityCase(
        "thm36", "||AXB*||_2^2 <= sqrt(Q1 Q2), refined exponent interpolation", ("A", "B", "X", "p"),
        lambda i, s, v: extensions.evaluate_thm36(i["A"], i["B"], i["X"], i["quad"], _p(i), v),
        variants=BOTH, norms="hs", p_domain="inner", quad_targets=(1.0,)),
    InequalityCase(
        "thm38", "||AXB*||_2^2 <= sqrt(F1) sqrt(F2), Zhao-Wu corrections", ("A", "B", "X", "p"),
        lambda i, s, v: extensions.evaluate_thm38(i["A"], i["B"], i["X"], _p(i), v),
        variants=BOTH, norms="hs", p_domain="open"),
    InequalityCase(
        "lemma310", "|||A^p X B^(1-p)|||^2 + r0^2 (|||AX||| - |||XB|||)^2 <= (p|||AX||| + (1-p)|||XB|||)^2",
        ("A", "B", "X", "p"),
        lambda i, s, v: extensions.evaluate_lemma310(i["A"], i["B"], i["X"], _p(i), s, v),
        variants=BOTH, psd_inputs=True),
    InequalityCase(
        "prop311", "|||AXB*|||^2 <= sqrt(F1) sqrt(F2), norm-level Young corrections",
        ("A", "B", "X", "p"),
        lambda i, s, v: extensions.evaluate_prop311(i["A"], i["B"], i["X"], _p(i), s)),
]

REGISTRY: dict[str, InequalityCase] = {c.id: c for c in _CASES}


def registry_list() -> list[InequalityCase]:
    """All checkers in a stable order."""
    return list(_CASES)


def parse_id(text: str) -> tuple[InequalityCase, Variant]:
    """Resolve ``"id"`` or ``"id:as-printed"`` to a case and variant."""
    name, sep, suffix = text.strip().partition(":")
    case = REGISTRY.get(name)
    if case is None:
        raise InvalidParam(f"unknown inequality id {name!r}")
    try:
        variant = Variant(suffix) if sep else Variant.PROOF_CONSISTENT
    except ValueError:
        raise InvalidParam(f"unknown variant {suffix!r}") from None
    if variant not in case.variants:
        raise InvalidParam(f"{name} has no {variant.value} variant")
    return case, variant


def get_case(text: str) -> InequalityCase:
    return parse_id(text)[0]
