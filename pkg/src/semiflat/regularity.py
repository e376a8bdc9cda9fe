"""Regularity properties of finite semirings.

All checks are brute force over the carrier; witnesses are lowest-index.
Bezout is decided as "every one-sided ideal is principal", which is the same
thing on a finite carrier since every ideal is finitely generated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NonUnique, NotAdditivelyRegular, SizeCapExceeded
from .flatness import TensorCache, s_flatness
from .semimodule import LEFT, RIGHT, SubSemimodule, enumerate_subsemimodules, is_normally_generated, is_subtractive, regular_module
from .semiring import FiniteSemiring, all_matrices, identity_matrix, matmul, opposite_semiring

MATRIX_SCAN_CAP = 1_000_000  # number of (A, B) pairs examined without an explicit list


def ideals(S: FiniteSemiring, side: str) -> list[SubSemimodule]:
    return enumerate_subsemimodules(regular_module(S, side), cap=max(S.size, 1))


def principal_ideal(S: FiniteSemiring, c: int, side: str) -> frozenset[int]:
    """``Sc`` (left) or ``cS`` (right); already closed under addition."""
    if side == LEFT:
        return frozenset(S.mul[s][c] for s in S.elements)
    return frozenset(S.mul[c][s] for s in S.elements)


def vn_witnesses(S: FiniteSemiring) -> dict[int, int | None]:
    """``a -> least s`` with ``a s a = a`` (None if there is none)."""
    out = {}
    for a in S.elements:
        out[a] = next((s for s in S.elements if S.mul[S.mul[a][s]][a] == a), None)
    return out


def additive_witnesses(S: FiniteSemiring) -> dict[int, int | None]:
    """``a -> least b`` with ``a + b + a = a``."""
    out = {}
    for a in S.elements:
        out[a] = next((b for b in S.elements if S.add[S.add[a][b]][a] == a), None)
    return out


def _non_principal(S: FiniteSemiring, side: str) -> SubSemimodule | None:
    principals = {principal_ideal(S, c, side) for c in S.elements}
    for I in ideals(S, side):
        if I.members not in principals:
            return I
    return None


def _non_subtractive(S: FiniteSemiring, side: str) -> SubSemimodule | None:
    R = regular_module(S, side)
    for I in ideals(S, side):
        if not is_subtractive(R, I.members):
            return I
    return None


def idempotent_generated(S: FiniteSemiring, side: str) -> tuple[bool, int | None]:
    """Is every principal ``side`` ideal generated by an idempotent?  Returns a failing generator."""
    idem_ideals = {principal_ideal(S, e, side) for e in S.idempotents()}
    for c in S.elements:
        if principal_ideal(S, c, side) not in idem_ideals:
            return False, c
    return True, None


@dataclass
class RegularityProfile:
    semiring: str
    vn_regular: bool
    vn_witness: dict[int, int | None]
    additively_regular: bool
    additive_witness: dict[int, int | None]
    left_subtractive: bool
    right_subtractive: bool
    left_bezout: bool
    right_bezout: bool
    idempotent_principal_ok: bool
    abc: tuple[bool, bool, bool] | None = None
    offending: dict[str, SubSemimodule | int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def subtractive(self) -> bool:
        return self.left_subtractive and self.right_subtractive

    @property
    def bezout(self) -> bool:
        return self.left_bezout and self.right_bezout


def regularity_profile(S: FiniteSemiring) -> RegularityProfile:
    vn = vn_witnesses(S)
    ar = additive_witnesses(S)
    offending: dict = {}
    flags = {}
    for side in (LEFT, RIGHT):
        bad = _non_subtractive(S, side)
        flags[f"{side}_subtractive"] = bad is None
        if bad is not None:
            offending[f"{side}_subtractive"] = bad
        bad = _non_principal(S, side)
        flags[f"{side}_bezout"] = bad is None
        if bad is not None:
            offending[f"{side}_bezout"] = bad
    vn_regular = all(v is not None for v in vn.values())
    idem_ok = True
    for side in (LEFT, RIGHT):
        ok, c = idempotent_generated(S, side)
        if not ok:
            idem_ok = False
            offending.setdefault(f"{side}_idempotent", c)
    # regular iff principal one-sided ideals have idempotent generators
    assert vn_regular == idem_ok, f"{S.name}: regularity and idempotent generation disagree"
    abc = None
    notes = ["Bezout checked as: every one-sided ideal is principal (finite carrier)"]
    if all(v is not None for v in ar.values()):
        try:
            abc = check_abc(S)
        except (NonUnique, NotAdditivelyRegular) as exc:
            notes.append(f"ABC skipped: {exc}")
    profile = RegularityProfile(
        semiring=S.name,
        vn_regular=vn_regular,
        vn_witness=vn,
        additively_regular=all(v is not None for v in ar.values()),
        additive_witness=ar,
        left_subtractive=flags["left_subtractive"],
        right_subtractive=flags["right_subtractive"],
        left_bezout=flags["left_bezout"],
        right_bezout=flags["right_bezout"],
        idempotent_principal_ok=idem_ok,
        abc=abc,
        offending=offending,
        notes=notes,
    )
    if abc is not None and all(abc) and vn_regular:
        assert profile.bezout, f"{S.name}: (A),(B),(C) hold but S is not Bezout"
    return profile


def star_inverse(S: FiniteSemiring, a: int) -> int:
    """The unique ``b`` with ``a + b + a = a`` and ``b + a + b = b``."""
    add = S.add
    found = [b for b in S.elements if add[add[a][b]][a] == a and add[add[b][a]][b] == b]
    if not found:
        raise NotAdditivelyRegular(f"{S.label(a)} has no star inverse in {S.name}")
    if len(found) > 1:
        raise NonUnique(a, found)
    return found[0]


def check_abc(S: FiniteSemiring) -> tuple[bool, bool, bool]:
    add, mul = S.add, S.mul
    star = [star_inverse(S, a) for a in S.elements]
    e = [add[b][star[b]] for b in S.elements]  # b + b'
    A = all(mul[a][e[a]] == e[a] for a in S.elements)
    B = all(mul[a][e[b]] == mul[e[b]][a] for a in S.elements for b in S.elements)
    C = all(add[a][mul[a][e[b]]] == a for a in S.elements for b in S.elements)
    return A, B, C


@dataclass(frozen=True)
class SummandVerdict:
    summand: bool
    complement: SubSemimodule | None = None


def is_direct_summand(S: FiniteSemiring, I, side: str = LEFT) -> SummandVerdict:
    """Is ``I (+) J -> S, (i, j) |-> i + j`` bijective for some ideal ``J`` on the same side?"""
    members = I.members if hasattr(I, "members") else frozenset(I)
    left = sorted(members)
    for J in ideals(S, side):
        if len(members) * len(J) != S.size:
            continue
        sums = {S.add[i][j] for i in left for j in J.members}
        if len(sums) == S.size:
            return SummandVerdict(True, J)
    return SummandVerdict(False)


# -- matrices ------------------------------------------------------------------------------------------


@dataclass
class MatrixScan:
    semiring: str
    n: int
    examined: int
    non_regular: list
    witnesses: dict  # A -> some B with ABA = A

    @property
    def all_regular(self) -> bool:
        return not self.non_regular


def _parse_matrix(S: FiniteSemiring, A):
    return tuple(tuple(S.index_of(x) if isinstance(x, str) else int(x) for x in row) for row in A)


def matrix_regularity_scan(S: FiniteSemiring, n: int, matrices=None, cap: int = MATRIX_SCAN_CAP) -> MatrixScan:
    """Find the ``A`` in ``M_n(S)`` with no ``B`` such that ``ABA = A``.

    Entries of supplied matrices may be element indices or labels.
    """
    count = S.size ** (n * n)
    if matrices is None:
        if count * count > cap:
            raise SizeCapExceeded(f"scanning all of M_{n}({S.name}) needs {count * count} products > {cap}")
        matrices = list(all_matrices(S, n))
    else:
        matrices = [_parse_matrix(S, A) for A in matrices]
    ident = identity_matrix(n)
    non_regular, witnesses = [], {}
    for A in matrices:
        if A == ident:
            witnesses[A] = ident
            continue
        for B in all_matrices(S, n):
            if matmul(S, matmul(S, A, B), A) == A:
                witnesses[A] = B
                break
        else:
            non_regular.append(A)
    scan = MatrixScan(S.name, n, len(matrices), non_regular, witnesses)
    if scan.all_regular and len(matrices) == count:
        # scalar matrices sit inside M_n(S), so S has to be regular too
        assert all(v is not None for v in vn_witnesses(S).values())
    return scan


# -- bounded harnesses -----------------------------------------------------------------------------------

WITNESS_FOUND = "witness-found"
NO_WITNESS = "no-witness-within-bound"
PREMISE_FAILS = "premise-fails"
CONFIRMED = "confirmed-within-bound"
REFUTED = "refuted"


@dataclass
class HarnessReport:
    semiring: str
    status: str
    bound: int
    witness: object = None
    checked: int = 0
    notes: list[str] = field(default_factory=list)
    refutations: list[str] = field(default_factory=list)


def _right_modules(S: FiniteSemiring, bound: int):
    from .zoo import semimodules_up_to

    return semimodules_up_to(S, bound, RIGHT, min_size=2)


def _sides(S: FiniteSemiring):
    """Right modules over S, and left modules as right modules over the opposite."""
    yield "right", S
    if not S.is_commutative():
        yield "left", opposite_semiring(S)


def sflatvon_harness(S: FiniteSemiring, size_bound: int = 4) -> HarnessReport:
    """Search the contrapositive: subtractive, not regular => some module fails S-e-flatness."""
    profile = regularity_profile(S)
    if not profile.subtractive:
        bad = profile.offending.get("left_subtractive") or profile.offending.get("right_subtractive")
        return HarnessReport(S.name, PREMISE_FAILS, size_bound, notes=[f"not subtractive: ideal {bad!r}"])
    if profile.vn_regular:
        return HarnessReport(S.name, PREMISE_FAILS, size_bound,
                             notes=["S is von Neumann regular; the contrapositive has nothing to find"])
    cache = TensorCache(cap=max(20, size_bound * S.size))
    checked = 0
    for side, R in _sides(S):
        for A in _right_modules(R, size_bound):
            checked += 1
            v = s_flatness(A, cache=cache)
            if v.e_flat is False:
                return HarnessReport(S.name, WITNESS_FOUND, size_bound, (side, A, v.witnesses.get("e")), checked,
                                     notes=[f"{side} module {A.name} of size {A.size} is not S-e-flat"])
    return HarnessReport(S.name, NO_WITNESS, size_bound, checked=checked,
                         notes=["every module within the bound is S-e-flat; nothing is claimed beyond it"])


def bez_neumann_check(S: FiniteSemiring, size_bound: int = 4, gen_bound: int | None = None) -> HarnessReport:
    """Normally generated modules over a Bezout regular semiring should be S-m-flat."""
    profile = regularity_profile(S)
    if not profile.vn_regular:
        return HarnessReport(S.name, PREMISE_FAILS, size_bound, notes=["S is not von Neumann regular"])
    # left Bezout speaks about right modules, right Bezout about left modules
    plan = []
    if profile.left_bezout:
        plan.append(("right", S))
    if profile.right_bezout and not S.is_commutative():
        plan.append(("left", opposite_semiring(S)))
    if not plan:
        return HarnessReport(S.name, PREMISE_FAILS, size_bound, notes=["S is neither left nor right Bezout"])
    cache = TensorCache(cap=max(20, size_bound * S.size))
    checked, refutations, skipped = 0, [], 0
    for side, R in plan:
        for A in _right_modules(R, size_bound):
            try:
                gen = is_normally_generated(A, gen_bound)
            except SizeCapExceeded:
                skipped += 1
                continue
            if not gen.found:
                continue
            checked += 1
            v = s_flatness(A, cache=cache)
            if v.m_flat is not True:
                refutations.append(f"{side} module {A.name}: S-m-flat = {v.m_flat}")
    notes = [f"{checked} normally generated modules checked"]
    if skipped:
        notes.append(f"{skipped} modules skipped: free cover beyond cap")
    status = REFUTED if refutations else CONFIRMED
    return HarnessReport(S.name, status, size_bound, checked=checked, notes=notes, refutations=refutations)
