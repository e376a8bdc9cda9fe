"""Relative flatness of a right semimodule ``F`` with respect to a left semimodule ``M``.

Verdicts are tri-state: True, False, or None when some tensor monoid on the
way could not be certified.  Every flavour is decided twice, once from its
definition (injectivity / normality of ``F (x) L -> F (x) M``) and once by
tensoring the canonical sequences ``0 -> L -> M -> M/L -> 0``; the two
answers are stored side by side so disagreements are visible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactness import classify_sequence, short_sequence
from .semimodule import (
    DEFAULT_ENUM_CAP,
    LEFT,
    RIGHT,
    SubSemimodule,
    bourne_quotient,
    classify_morphism,
    enumerate_subsemimodules,
    free_semimodule,
    is_subtractive,
    regular_module,
    submonoid_closure,
    _members,
)
from .semiring import FiniteSemiring
from .tensor import DEFAULT_TENSOR_CAP, TensorMonoid, induced_tensor_map, tensor, theta_ideal, with_side
from .errors import CertificationFailure, IllDefined

FLAVOURS = ("m", "i", "e")


def _struct_key(X):
    if X.has_action:
        return (X.base.name, X.side, X.add, X.action)
    return (None, None, X.add, None)


class TensorCache:
    """Tensor monoids keyed by the structure of their factors."""

    def __init__(self, cap: int = DEFAULT_TENSOR_CAP):
        self.cap = cap
        self._store: dict = {}
        self.hits = 0

    def get(self, F, M) -> TensorMonoid:
        key = (_struct_key(with_side(F, RIGHT)), _struct_key(with_side(M, LEFT)))
        T = self._store.get(key)
        if T is None:
            T = tensor(F, M, self.cap)
            self._store[key] = T
        else:
            self.hits += 1
        return T

    def __len__(self):
        return len(self._store)


_DEFAULT_CACHES: dict[int, TensorCache] = {}


def default_cache(cap: int = DEFAULT_TENSOR_CAP) -> TensorCache:
    if cap not in _DEFAULT_CACHES:
        _DEFAULT_CACHES[cap] = TensorCache(cap)
    return _DEFAULT_CACHES[cap]


def _and(values) -> bool | None:
    """Three-valued conjunction: any False wins, otherwise any None."""
    out = True
    for v in values:
        if v is False:
            return False
        if v is None:
            out = None
    return out


@dataclass
class FlatnessVerdict:
    subject: str
    target: str
    m_flat: bool | None
    i_flat: bool | None
    e_flat: bool | None
    # failing subsemimodule per flavour (lowest in enumeration order)
    witnesses: dict[str, SubSemimodule] = field(default_factory=dict)
    # flavour -> {route name: verdict}
    routes: dict[str, dict[str, bool | None]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.m_flat is not None and self.i_flat is not None and self.e_flat is not None:
            assert not self.e_flat or self.i_flat, "e-flat without i-flat"
            assert not self.m_flat or self.i_flat, "m-flat without i-flat"

    def flag(self, flavour: str) -> bool | None:
        return getattr(self, f"{flavour}_flat")

    @property
    def disagreements(self) -> list[str]:
        """Flavours whose decided routes give different answers."""
        out = []
        for flavour, routes in self.routes.items():
            decided = {v for v in routes.values() if v is not None}
            if len(decided) > 1:
                out.append(flavour)
        return out

    @property
    def consistent(self) -> bool:
        return not self.disagreements


@dataclass(frozen=True)
class SubResult:
    """What happens to one ``L <= M`` after tensoring with ``F``."""

    L: SubSemimodule
    subtractive: bool
    certified: bool
    injective: bool | None = None
    normal_mono: bool | None = None
    ses_exact: bool | None = None  # tensored canonical sequence exact
    ses_i: bool | None = None  # semi-exact, F(x)iota k-normal, F(x)pi normal


def _sub_result(F, M, L: SubSemimodule, cache: TensorCache, want_ses: bool) -> SubResult:
    sub = is_subtractive(M, L.members)
    iota = L.inclusion()
    TL, TM = cache.get(F, iota.dom), cache.get(F, M)
    if not (TL.certified and TM.certified):
        return SubResult(L, sub, False)
    try:
        h = induced_tensor_map(F, iota, TL, TM)
    except IllDefined:
        return SubResult(L, sub, False)
    cls = classify_morphism(h)
    normal_mono = cls.injective and cls.i_normal
    if not want_ses:
        return SubResult(L, sub, True, cls.injective, normal_mono)
    Q, pi = bourne_quotient(M, L.members)
    TQ = cache.get(F, Q)
    if not TQ.certified:
        return SubResult(L, sub, False, cls.injective, normal_mono)
    try:
        hp = induced_tensor_map(F, pi, TM, TQ)
    except IllDefined:
        return SubResult(L, sub, False, cls.injective, normal_mono)
    seq = short_sequence(h, hp)
    verdict = classify_sequence(seq)
    pc = classify_morphism(hp)
    ses_i = verdict.semi_exact and cls.k_normal and pc.normal
    return SubResult(L, sub, True, cls.injective, normal_mono, verdict.exact, ses_i)


def flatness_wrt(F, M, route: str = "both", cache: TensorCache | None = None,
                 enum_cap: int = DEFAULT_ENUM_CAP) -> FlatnessVerdict:
    """Decide M-m-, M-i- and M-e-flatness of the right module ``F``.

    ``route`` is ``def`` (subsemimodule definitions), ``ses`` (tensored
    canonical short exact sequences) or ``both``.
    """
    if route not in ("def", "ses", "both"):
        raise ValueError(f"unknown route {route!r}")
    cache = default_cache() if cache is None else cache
    F = with_side(F, RIGHT)
    M = with_side(M, LEFT)
    want_ses = route in ("ses", "both")
    results = [_sub_result(F, M, L, cache, want_ses) for L in enumerate_subsemimodules(M, enum_cap)]

    def decide(attr, only_subtractive):
        vals, witness = [], None
        for r in results:
            if only_subtractive and not r.subtractive:
                continue
            v = getattr(r, attr) if r.certified or getattr(r, attr) is False else None
            vals.append(v)
            if v is False and witness is None:
                witness = r.L
        return _and(vals), witness

    routes: dict[str, dict[str, bool | None]] = {"m": {}, "i": {}, "e": {}}
    witnesses: dict[str, SubSemimodule] = {}
    if route in ("def", "both"):
        for flavour, attr, only_sub in (("m", "injective", False), ("i", "injective", True),
                                         ("e", "normal_mono", True)):
            v, w = decide(attr, only_sub)
            routes[flavour]["def"] = v
            if w is not None:
                witnesses.setdefault(flavour, w)
    if want_ses:
        for flavour, attr, only_sub in (("m", "ses_i", False), ("i", "ses_i", True),
                                         ("e", "ses_exact", True)):
            v, w = decide(attr, only_sub)
            routes[flavour]["ses"] = v
            if w is not None:
                witnesses.setdefault(flavour, w)

    notes = []
    flags = {}
    for flavour in FLAVOURS:
        decided = [v for v in routes[flavour].values() if v is not None]
        if not decided:
            flags[flavour] = None
            notes.append(f"{flavour}-flatness inconclusive: uncertified tensor monoid")
        elif len(set(decided)) > 1:
            flags[flavour] = None
            notes.append(f"{flavour}-flatness routes disagree: {routes[flavour]}")
        else:
            flags[flavour] = decided[0]
    return FlatnessVerdict(
        subject=F.name,
        target=M.name,
        m_flat=flags["m"],
        i_flat=flags["i"],
        e_flat=flags["e"],
        witnesses=witnesses,
        routes=routes,
        notes=notes,
    )


# -- flatness relative to S itself -------------------------------------------------------------------------


def left_ideals(S: FiniteSemiring, enum_cap: int = 64) -> list[SubSemimodule]:
    return enumerate_subsemimodules(regular_module(S, LEFT), cap=enum_cap)


def s_flatness(A, cache: TensorCache | None = None, crosscheck: bool = True,
               enum_cap: int = 64) -> FlatnessVerdict:
    """S-m/i/e-flatness via the maps ``A (x) I -> AI`` over all left ideals ``I``."""
    cache = default_cache() if cache is None else cache
    A = with_side(A, RIGHT)
    S = A.base
    SL = regular_module(S, LEFT)
    m_vals, i_vals, e_vals = [], [], []
    witnesses: dict[str, SubSemimodule] = {}
    notes = []
    for I in left_ideals(S, enum_cap):
        sub = is_subtractive(SL, I.members)
        T = cache.get(A, I.module())
        if not T.certified:
            iso = None
            ai_sub = None
            notes.append(f"uncertified A(x)I for I={I!r}")
        else:
            try:
                th = theta_ideal(A, I, T, cap=cache.cap)
                iso, ai_sub = th.iso, th.AI_subtractive_in_A
            except CertificationFailure as exc:
                iso = ai_sub = None
                notes.append(str(exc))
        m_vals.append(iso)
        if iso is False:
            witnesses.setdefault("m", I)
        if sub:
            i_vals.append(iso)
            e = _and([iso, ai_sub])
            e_vals.append(e)
            if iso is False:
                witnesses.setdefault("i", I)
            if e is False:
                witnesses.setdefault("e", I)
    flags = {"m": _and(m_vals), "i": _and(i_vals), "e": _and(e_vals)}
    routes = {k: {"theta": v} for k, v in flags.items()}
    if crosscheck:
        other = flatness_wrt(A, SL, route="def", cache=cache, enum_cap=enum_cap)
        for k in FLAVOURS:
            routes[k]["def"] = other.flag(k)
        if not other.consistent:
            notes.extend(other.notes)
    for k in FLAVOURS:
        decided = {v for v in routes[k].values() if v is not None}
        if len(decided) > 1:
            notes.append(f"S-{k}-flatness: theta and subsemimodule routes disagree")
            flags[k] = None
    return FlatnessVerdict(A.name, "S", flags["m"], flags["i"], flags["e"], witnesses, routes, notes)


@dataclass(frozen=True)
class Lemma360:
    KI: frozenset[int]
    FI: frozenset[int]
    meet: frozenset[int]

    @property
    def equal(self) -> bool:
        return self.meet == self.KI


def _product(F, subset, ideal) -> frozenset[int]:
    return submonoid_closure(F, {F.action[i][k] for k in subset for i in ideal})


def lemma360_check(F, K, I) -> Lemma360:
    """Compare ``K (intersect) FI`` with ``KI`` for ``K <= F`` and a left ideal ``I``."""
    F = with_side(F, RIGHT)
    k, ideal = _members(K), _members(I)
    KI = _product(F, k, ideal)
    FI = _product(F, F.elements, ideal)
    return Lemma360(KI, FI, k & FI)


# -- survey over all small modules -------------------------------------------------------------------------


@dataclass
class SurveyEntry:
    module: object
    per_target: list[FlatnessVerdict]

    def member(self, flavour: str) -> bool | None:
        """Membership in the bounded class: flat for every surveyed target."""
        return _and(v.flag(flavour) for v in self.per_target)


@dataclass
class SurveyReport:
    semiring: str
    size_bound: int
    entries: list[SurveyEntry]
    violations: list[str]
    strictness: dict[str, list[str]]
    free_modules: dict[str, dict[str, bool | None]]
    inconclusive: int

    def members(self, flavour: str) -> list[str]:
        return [e.module.name for e in self.entries if e.member(flavour)]


def flatness_survey(S: FiniteSemiring, size_bound: int = 4, cache: TensorCache | None = None,
                    target_bound: int | None = None) -> SurveyReport:
    """Classify every right ``S``-module of size <= ``size_bound`` against every left module of size <= ``target_bound``."""
    from .zoo import semimodules_up_to

    target_bound = size_bound if target_bound is None else target_bound
    cache = TensorCache(cap=max(size_bound * target_bound, DEFAULT_TENSOR_CAP)) if cache is None else cache
    subjects = semimodules_up_to(S, size_bound, RIGHT)
    targets = semimodules_up_to(S, target_bound, LEFT)
    entries, violations = [], []
    strictness = {"i_not_e": [], "i_not_m": [], "e_not_m": [], "m_not_e": []}
    inconclusive = 0
    for F in subjects:
        verdicts = []
        for M in targets:
            v = flatness_wrt(F, M, route="both", cache=cache)
            verdicts.append(v)
            if not v.consistent:
                violations.append(f"{F.name} vs {M.name}: routes disagree on {v.disagreements}")
            if v.e_flat and v.i_flat is False:
                violations.append(f"{F.name} is {M.name}-e-flat but not {M.name}-i-flat")
            if v.m_flat and v.i_flat is False:
                violations.append(f"{F.name} is {M.name}-m-flat but not {M.name}-i-flat")
            if None in (v.m_flat, v.i_flat, v.e_flat):
                inconclusive += 1
        entry = SurveyEntry(F, verdicts)
        entries.append(entry)
        mem = {k: entry.member(k) for k in FLAVOURS}
        pairs = (("i_not_e", "i", "e"), ("i_not_m", "i", "m"), ("e_not_m", "e", "m"), ("m_not_e", "m", "e"))
        for key, yes, no in pairs:
            if mem[yes] and mem[no] is False:
                strictness[key].append(F.name)
    free = {}
    n = 1
    while S.size ** n <= size_bound:
        Fn = free_semimodule(S, n, RIGHT)
        row = {}
        for k in FLAVOURS:
            row[k] = _and(flatness_wrt(Fn, M, cache=cache).flag(k) for M in targets)
        free[Fn.name] = row
        if row["e"] is False or row["m"] is False:
            violations.append(f"free module {Fn.name} is not in F^e and F^m")
        n += 1
    return SurveyReport(S.name, size_bound, entries, violations, strictness, free, inconclusive)
