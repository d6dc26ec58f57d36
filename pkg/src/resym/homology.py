"""Chain-level homological algebra over the windowed operator algebra.

Implements the Hochschild and Chevalley-Eilenberg differentials, the
antisymmetrization comparison maps, the graded module tower N^p indexed by
component labels in {+,-,0}^n with its differential and contracting
homotopy, and the three residue functionals built from them: the closed
product formula, the staircase evaluation through the homotopy, and the
excision-style iterated connecting map.  All three must agree (up to the
documented sign) and the test suite pins that down exactly.

Chains are formal sums with exact scalar coefficients; tensor slots are
canonical WindowedOperators, so like terms merge structurally.  Zero
testing is genuinely semantic: slots are expanded over a computed linear
basis of the operators involved, which resolves cancellations that are
invisible term-by-term (Jacobi identities, resolutions of the identity).
"""

from __future__ import annotations

from itertools import permutations, product

from .errors import (DecompositionError, DimensionMismatch, FieldMismatch,
                     MembershipError, NotACycle)
from .laurent import DifferentialForm
from .operators import (MINUS, PLUS, CubicalStructure, GoodIdempotents,
                        WindowedOperator, ideal_member, mul_op, projector)
from .scalars import render_scalar

ZERO = "0"


def sign_of(symbol: str) -> int:
    """(-1)^s for s in {+,-}: +1 for '+', -1 for '-'."""
    if symbol == PLUS:
        return 1
    if symbol == MINUS:
        return -1
    raise ValueError(f"not a sign symbol: {symbol}")


def _opposite(symbol: str) -> str:
    return MINUS if symbol == PLUS else PLUS


def label_degree(label) -> int:
    """deg(s_1..s_n) = 1 + #{i : s_i = 0}; the empty label (level 0) gives 0."""
    if label is None:
        return 0
    return 1 + sum(1 for s in label if s == ZERO)


def labels_of_degree(dim: int, degree: int):
    return [lab for lab in product((PLUS, MINUS, ZERO), repeat=dim)
            if label_degree(lab) == degree]


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _merge_term(terms: dict, key, coeff):
    prev = terms.get(key)
    val = coeff if prev is None else prev + coeff
    if val:
        terms[key] = val
    elif key in terms:
        del terms[key]


class _ChainBase:
    """Shared formal-sum plumbing for the chain classes."""

    __slots__ = ()

    def _like(self, terms):
        raise NotImplementedError

    def is_empty(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if type(other) is not type(self) or other.dim != self.dim or other.field != self.field:
            raise DimensionMismatch("incompatible chains")
        merged = dict(self.terms)
        for key, c in other.terms.items():
            _merge_term(merged, key, c)
        return self._like(merged)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, scalar):
        scalar = self.field.coerce(scalar)
        out = {}
        for key, c in self.terms.items():
            v = scalar * c
            if v:
                out[key] = v
        return self._like(out)


class HochschildChain(_ChainBase):
    """Degree-r chain: formal sum of tensors (a_0, a_1, .., a_r) of operators."""

    __slots__ = ("dim", "field", "degree", "terms")

    def __init__(self, dim: int, field, degree: int, terms=()):
        self.dim = dim
        self.field = field
        self.degree = degree
        cleaned: dict = {}
        for tensor, coeff in (terms.items() if isinstance(terms, dict) else terms):
            tensor = tuple(tensor)
            if len(tensor) != degree + 1:
                raise DimensionMismatch("tensor length does not match the degree")
            coeff = field.coerce(coeff)
            if not coeff or any(slot.is_zero() for slot in tensor):
                continue
            for slot in tensor:
                if slot.dim != dim or slot.field != field:
                    raise FieldMismatch("slot operator over a different algebra")
            _merge_term(cleaned, tensor, coeff)
        self.terms = cleaned

    def _like(self, terms):
        return HochschildChain(self.dim, self.field, self.degree, terms)

    @classmethod
    def from_tensor(cls, slots, coeff=1):
        slots = tuple(slots)
        return cls(slots[0].dim, slots[0].field, len(slots) - 1, [(slots, coeff)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, HochschildChain) and self.degree == other.degree
                and self.dim == other.dim and self.terms == other.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for tensor, coeff in sorted(self.terms.items(),
                                    key=lambda kv: tuple(s.sort_key() for s in kv[0])):
            body = " (x) ".join(f"[{s.render()}]" for s in tensor)
            bits.append(f"({render_scalar(coeff)}) {body}")
        return " + ".join(bits)


class LieChain(_ChainBase):
    """Formal sum m (x) f_1 ^ .. ^ f_r, wedge slots kept sorted with sign.

    `m` is None for trivial coefficients; duplicate wedge slots cancel to
    zero on construction.
    """

    __slots__ = ("dim", "field", "degree", "terms")

    def __init__(self, dim: int, field, degree: int, terms=()):
        self.dim = dim
        self.field = field
        self.degree = degree
        cleaned: dict = {}
        for (m, slots), coeff in (terms.items() if isinstance(terms, dict) else terms):
            slots = tuple(slots)
            if len(slots) != degree:
                raise DimensionMismatch("wedge arity does not match the degree")
            coeff = field.coerce(coeff)
            if not coeff or any(s.is_zero() for s in slots):
                continue
            if m is not None and m.is_zero():
                continue
            normal = _wedge_sort(slots)
            if normal is None:
                continue
            sign, sorted_slots = normal
            _merge_term(cleaned, (m, sorted_slots), coeff * sign)
        self.terms = cleaned

    def _like(self, terms):
        return LieChain(self.dim, self.field, self.degree, terms)

    @classmethod
    def from_parts(cls, m, slots, coeff=1):
        slots = tuple(slots)
        probe = m if m is not None else slots[0]
        return cls(probe.dim, probe.field, len(slots), [((m, slots), coeff)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, LieChain) and self.degree == other.degree
                and self.dim == other.dim and self.terms == other.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (m, slots), coeff in sorted(
                self.terms.items(),
                key=lambda kv: tuple(s.sort_key() for s in kv[0][1])):
            head = f"[{m.render()}] (x) " if m is not None else ""
            body = " ^ ".join(f"[{s.render()}]" for s in slots)
            bits.append(f"({render_scalar(coeff)}) {head}{body}")
        return " + ".join(bits)


def _wedge_sort(slots):
    """Sort wedge slots canonically; None on a repeated slot."""
    arr = list(slots)
    sign = 1
    for i in range(1, len(arr)):
        j = i
        while j > 0 and arr[j - 1].sort_key() > arr[j].sort_key():
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(arr, arr[1:]):
        if a == b:
            return None
    return sign, tuple(arr)


class LabeledChain(_ChainBase):
    """Chain in C_r(A, N^p): tensors carrying a component label in {+,-,0}^n.

    The module slot of every term must lie in the ideal intersection its
    label prescribes (a 0 meaning both the + and the - ideal on that axis);
    construction enforces this, which is what catches sign-convention bugs
    early.  Level 0 terms carry the label None and are unconstrained.
    """

    __slots__ = ("dim", "field", "level", "degree", "terms")

    def __init__(self, dim: int, field, level: int, degree: int, terms=()):
        self.dim = dim
        self.field = field
        self.level = level
        self.degree = degree
        cleaned: dict = {}
        for (label, tensor), coeff in (terms.items() if isinstance(terms, dict) else terms):
            tensor = tuple(tensor)
            if len(tensor) != degree + 1:
                raise DimensionMismatch("tensor length does not match the degree")
            if label_degree(label) != level:
                raise DimensionMismatch(f"label {label} is not at level {level}")
            coeff = field.coerce(coeff)
            if not coeff or any(s.is_zero() for s in tensor):
                continue
            _validate_label(tensor[0], label)
            _merge_term(cleaned, (label, tensor), coeff)
        self.terms = cleaned

    def _like(self, terms):
        return LabeledChain(self.dim, self.field, self.level, self.degree, terms)

    @classmethod
    def from_hochschild(cls, chain: HochschildChain) -> "LabeledChain":
        return cls(chain.dim, chain.field, 0, chain.degree,
                   [((None, tensor), c) for tensor, c in chain.terms.items()])

    def by_label(self):
        out: dict = {}
        for (label, tensor), coeff in self.terms.items():
            out.setdefault(label, []).append((tensor, coeff))
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, LabeledChain) and self.level == other.level
                and self.degree == other.degree and self.terms == other.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (label, tensor), coeff in sorted(
                self.terms.items(),
                key=lambda kv: (kv[0][0] or (), tuple(s.sort_key() for s in kv[0][1]))):
            labeltxt = "".join(label) if label is not None else "()"
            body = " (x) ".join(f"[{s.render()}]" for s in tensor)
            bits.append(f"({render_scalar(coeff)})<{labeltxt}> {body}")
        return " + ".join(bits)


def _validate_label(m: WindowedOperator, label):
    if label is None:
        return
    for axis0, s in enumerate(label):
        axis = axis0 + 1
        if s in (PLUS, ZERO) and not ideal_member(m, axis, PLUS):
            raise MembershipError(f"module slot fails I_{axis}^+ required by label {label}")
        if s in (MINUS, ZERO) and not ideal_member(m, axis, MINUS):
            raise MembershipError(f"module slot fails I_{axis}^- required by label {label}")


# -- semantic zero test ------------------------------------------------------


class _Span:
    """Incremental row echelon over the coefficient field."""

    def __init__(self, field):
        self.field = field
        self.rows: list = []

    def express(self, vec: dict) -> dict:
        combo: dict = {}
        v = dict(vec)
        for k, (pivot, row) in enumerate(self.rows):
            c = v.get(pivot)
            if not c:
                continue
            combo[k] = c
            for idx, rv in row.items():
                nv = v.get(idx, self.field.zero) - c * rv
                if nv:
                    v[idx] = nv
                elif idx in v:
                    del v[idx]
        if v:
            pivot = min(v)
            val = v[pivot]
            row = {idx: x / val for idx, x in v.items()}
            self.rows.append((pivot, row))
            combo[len(self.rows) - 1] = val
        return combo


def _vectorize_ops(ops, field):
    """Coordinates of each operator over a common (shift, cell) grid."""
    shifts = sorted({shift for op in ops for _, shift, _ in op.terms})
    vectors = [dict() for _ in ops]
    index = 0
    for shift in shifts:
        dim = ops[0].dim
        breaks = [sorted({b for op in ops for _, s, win in op.terms if s == shift
                          for b in win[axis] if b is not None})
                  for axis in range(dim)]

        def intervals(bs):
            if not bs:
                return [(None, None)]
            out = [(None, bs[0])]
            out.extend((bs[i], bs[i + 1]) for i in range(len(bs) - 1))
            out.append((bs[-1], None))
            return out

        for cell in product(*[intervals(b) for b in breaks]):
            rep = tuple(lo if lo is not None else (hi - 1 if hi is not None else 0)
                        for lo, hi in cell)
            used = False
            for i, op in enumerate(ops):
                val = op.evaluate(shift, rep)
                if val:
                    vectors[i][index] = val
                    used = True
            if used:
                index += 1
    return vectors


def _zero_test_entries(chain):
    if isinstance(chain, HochschildChain):
        return [(None, tensor, coeff) for tensor, coeff in chain.terms.items()]
    if isinstance(chain, LabeledChain):
        return [(label, tensor, coeff) for (label, tensor), coeff in chain.terms.items()]
    if isinstance(chain, LieChain):
        entries = []
        for (m, slots), coeff in chain.terms.items():
            for perm in permutations(range(len(slots))):
                tensor = tuple(slots[p] for p in perm)
                if m is not None:
                    tensor = (m,) + tensor
                entries.append((None, tensor, coeff * _perm_sign(perm)))
        return entries
    raise TypeError(f"not a chain: {chain!r}")


def chain_is_zero(chain) -> bool:
    """Exact semantic zero test.

    Expands every tensor slot over a computed linear basis of all operators
    occurring in the chain, so linear relations between differently
    presented slots (e.g. P^+x + P^-x = x) cancel correctly.  Wedge chains
    are compared through their antisymmetrization, which is faithful in
    characteristic zero.
    """
    entries = _zero_test_entries(chain)
    if not entries:
        return True
    field = chain.field
    ops = []
    op_index: dict = {}
    for _, tensor, _ in entries:
        for slot in tensor:
            if slot not in op_index:
                op_index[slot] = len(ops)
                ops.append(slot)
    vectors = _vectorize_ops(ops, field)
    span = _Span(field)
    combos = [span.express(v) for v in vectors]
    total: dict = {}
    for label, tensor, coeff in entries:
        partial = {(): coeff}
        for slot in tensor:
            combo = combos[op_index[slot]]
            nxt: dict = {}
            for key, c in partial.items():
                for b, cb in combo.items():
                    _merge_term(nxt, key + (b,), c * cb)
            partial = nxt
            if not partial:
                break
        for key, c in partial.items():
            _merge_term(total, (label, key), c)
    return not total


def chains_equal(a, b) -> bool:
    return chain_is_zero(a - b)


# -- differentials and comparison maps ---------------------------------------


def hochschild_b(chain):
    """The Hochschild differential b.

    b(m (x) a_1 (x) .. (x) a_r) = m a_1 (x) a_2 .. + sum_j (-1)^j m (x) .. a_j a_{j+1} ..
    + (-1)^r a_r m (x) a_1 .. a_{r-1}; module products are operator
    compositions.  Labels, when present, ride along unchanged.
    """
    labeled = isinstance(chain, LabeledChain)
    if chain.degree < 1:
        raise ValueError("hochschild_b needs degree >= 1")
    out: dict = {}

    def emit(label, tensor, coeff):
        if any(s.is_zero() for s in tensor):
            return
        key = (label, tensor) if labeled else tensor
        _merge_term(out, key, coeff)

    items = (((label, tensor), coeff) for (label, tensor), coeff in chain.terms.items()) \
        if labeled else (((None, tensor), coeff) for tensor, coeff in chain.terms.items())
    for (label, tensor), coeff in items:
        m, rest = tensor[0], tensor[1:]
        r = len(rest)
        emit(label, (m @ rest[0],) + rest[1:], coeff)
        for j in range(1, r):
            merged = rest[:j - 1] + (rest[j - 1] @ rest[j],) + rest[j + 1:]
            emit(label, (m,) + merged, coeff * (-1) ** j)
        emit(label, (rest[-1] @ m,) + rest[:-1], coeff * (-1) ** r)
    if labeled:
        return LabeledChain(chain.dim, chain.field, chain.level, chain.degree - 1, out)
    return HochschildChain(chain.dim, chain.field, chain.degree - 1, out)


def cyclic_t(chain: HochschildChain) -> HochschildChain:
    """Connes' cyclic permutation: a_0 (x) .. (x) a_r -> (-1)^r a_r (x) a_0 (x) .."""
    out: dict = {}
    for tensor, coeff in chain.terms.items():
        r = len(tensor) - 1
        rotated = (tensor[-1],) + tensor[:-1]
        _merge_term(out, rotated, coeff * (-1) ** r)
    return HochschildChain(chain.dim, chain.field, chain.degree, out)


def epsilon(chain: LieChain) -> HochschildChain:
    """Antisymmetrization m (x) a_1 ^..^ a_r -> m (x) sum_pi sgn(pi) a_{pi^-1(1)} .."""
    out: dict = {}
    for (m, slots), coeff in chain.terms.items():
        if m is None:
            raise ValueError("epsilon expects coefficient-bearing Lie chains")
        for perm in permutations(range(len(slots))):
            tensor = (m,) + tuple(slots[p] for p in perm)
            _merge_term(out, tensor, coeff * _perm_sign(perm))
    return HochschildChain(chain.dim, chain.field, chain.degree, out)


def i_prime(chain: LieChain) -> LieChain:
    """f_0 (x) f_1 ^..^ f_n -> (-1)^n f_0 ^ f_1 ^..^ f_n with trivial coefficients."""
    out = []
    for (m, slots), coeff in chain.terms.items():
        if m is None:
            raise ValueError("i_prime expects coefficient-bearing Lie chains")
        out.append(((None, (m,) + slots), coeff * (-1) ** len(slots)))
    return LieChain(chain.dim, chain.field, chain.degree + 1, out)


def ce_delta(chain: LieChain) -> LieChain:
    """Chevalley-Eilenberg differential on trivial-coefficient wedges.

    delta(f_0 ^ .. ^ f_r) = sum_{i<j} (-1)^{i+j} [f_i,f_j] ^ f_0 ^ .. (hats
    at i and j) .. ^ f_r, indices starting at 0.
    """
    if chain.degree < 2:
        raise ValueError("ce_delta needs wedge degree >= 2")
    out = []
    for (m, slots), coeff in chain.terms.items():
        if m is not None:
            raise ValueError("ce_delta expects trivial coefficients")
        r = len(slots)
        for i in range(r):
            for j in range(i + 1, r):
                bracket = slots[i].commutator(slots[j])
                if bracket.is_zero():
                    continue
                rest = tuple(slots[k] for k in range(r) if k != i and k != j)
                out.append(((None, (bracket,) + rest), coeff * (-1) ** (i + j)))
    return LieChain(chain.dim, chain.field, chain.degree - 1, out)


def ce_delta_coefficients(chain: LieChain) -> LieChain:
    """CE differential with coefficients in the adjoint module.

    delta(m (x) x_1 ^..^ x_r) = sum_i (-1)^i [x_i, m] (x) .. hat x_i ..
    + sum_{i<j} (-1)^{i+j} m (x) [x_i,x_j] ^ .. ; the signs are the ones
    that make the antisymmetrization a chain map onto the Hochschild side.
    """
    if chain.degree < 1:
        raise ValueError("differential needs degree >= 1")
    out = []
    for (m, slots), coeff in chain.terms.items():
        if m is None:
            raise ValueError("expected coefficient-bearing Lie chains")
        r = len(slots)
        for i in range(1, r + 1):
            acted = slots[i - 1].commutator(m)
            rest = slots[:i - 1] + slots[i:]
            if not acted.is_zero():
                out.append(((acted, rest), coeff * (-1) ** i))
        for i in range(1, r + 1):
            for j in range(i + 1, r + 1):
                bracket = slots[i - 1].commutator(slots[j - 1])
                if bracket.is_zero():
                    continue
                rest = tuple(slots[k] for k in range(r) if k != i - 1 and k != j - 1)
                out.append(((m, (bracket,) + rest), coeff * (-1) ** (i + j)))
    return LieChain(chain.dim, chain.field, chain.degree - 1, out)


def hkr_antisymmetrize(form: DifferentialForm) -> HochschildChain:
    """f_0 df_1 ^..^ df_n -> sum_pi sgn(pi) f_0 (x) f_{pi^-1(1)} (x) .. over
    multiplication operators."""
    m = mul_op(form.f0)
    ops = [mul_op(g) for g in form.args]
    terms = []
    for perm in permutations(range(len(ops))):
        tensor = (m,) + tuple(ops[p] for p in perm)
        terms.append((tensor, _perm_sign(perm)))
    return HochschildChain(form.dim, form.field, form.degree, terms)


# -- the labeled tower: differential and contracting homotopy ----------------


def n_partial(chain: LabeledChain) -> LabeledChain:
    """Differential of the labeled tower, one level down.

    For p >= 2 the component at (s_1..s_n) collects, over the axes i with
    s_i in {+,-}, the source component with a 0 at i, signed by the parity
    of the number of zeros strictly to the right of i.  For p = 1 it is the
    signed sum over all {+,-}^n components into level 0.
    """
    p = chain.level
    if not 1 <= p <= chain.dim + 1:
        raise ValueError("n_partial needs level between 1 and n+1")
    out = []
    if p == 1:
        for (label, tensor), coeff in chain.terms.items():
            sgn = 1
            for s in label:
                sgn *= sign_of(s)
            out.append(((None, tensor), coeff * sgn))
        return LabeledChain(chain.dim, chain.field, 0, chain.degree, out)
    for (label, tensor), coeff in chain.terms.items():
        for i, s in enumerate(label):
            if s != ZERO:
                continue
            zeros_right = sum(1 for t in label[i + 1:] if t == ZERO)
            for repl in (PLUS, MINUS):
                target = label[:i] + (repl,) + label[i + 1:]
                out.append(((target, tensor), coeff * (-1) ** zeros_right))
    return LabeledChain(chain.dim, chain.field, p - 1, chain.degree, out)


def homotopy_H(chain: LabeledChain, idempotents: GoodIdempotents = None) -> LabeledChain:
    """Contracting homotopy of the labeled tower, one level up.

    Level 0 -> 1: (Hf)_{s_1..s_n} = (-1)^{s_1+..+s_n} P_1^{s_1}..P_n^{s_n} f.
    Level p -> p+1 (p >= 1), with b the longest {+,-} prefix of the target
    label (whose next entry is then a 0):

        (Hf)_{s_1..s_n} = (-1)^{deg} (-1)^{s_1+..+s_b} P_1^{s_1}..P_b^{s_b}
            sum_{g_1..g_{b+1}} (-1)^{g_1+..+g_b} P_{b+1}^{-g_{b+1}}
            f_{g_1..g_{b+1} s_{b+2}..s_n}.

    Together with n_partial it satisfies dH + Hd = id and H^2 = 0.
    """
    n = chain.dim
    if idempotents is None:
        idempotents = GoodIdempotents(n, chain.field)
    p = chain.level
    if not 0 <= p <= n:
        raise ValueError("homotopy_H needs level between 0 and n")
    out = []
    if p == 0:
        for (_, tensor), coeff in chain.terms.items():
            m, rest = tensor[0], tensor[1:]
            for label in product((PLUS, MINUS), repeat=n):
                sgn = 1
                op = m
                for axis0 in range(n - 1, -1, -1):
                    sgn *= sign_of(label[axis0])
                    op = idempotents.P(axis0 + 1, label[axis0]) @ op
                out.append(((label, (op,) + rest), coeff * sgn))
        return LabeledChain(n, chain.field, 1, chain.degree, out)

    by_label = chain.by_label()
    for target in labels_of_degree(n, p + 1):
        b = 0
        while b < n and target[b] != ZERO:
            b += 1
        # target[b] == ZERO by construction of the degree
        deg_sign = (-1) ** (p + 1)
        prefix_sign = 1
        prefix = None
        for i in range(b - 1, -1, -1):
            prefix_sign *= sign_of(target[i])
            step = idempotents.P(i + 1, target[i])
            prefix = step if prefix is None else step @ prefix
        # note: projectors commute, composition order is immaterial
        for gammas in product((PLUS, MINUS), repeat=b + 1):
            source = gammas + target[b + 1:]
            matches = by_label.get(source)
            if not matches:
                continue
            gsign = 1
            for g in gammas[:b]:
                gsign *= sign_of(g)
            head = idempotents.P(b + 1, _opposite(gammas[b]))
            op_front = head if prefix is None else prefix @ head
            total_sign = deg_sign * prefix_sign * gsign
            for tensor, coeff in matches:
                new_m = op_front @ tensor[0]
                if new_m.is_zero():
                    continue
                out.append(((target, (new_m,) + tensor[1:]), coeff * total_sign))
    return LabeledChain(n, chain.field, p + 1, chain.degree, out)


# -- residue functionals -----------------------------------------------------


def _bracket_factor(axis: int, op: WindowedOperator, idempotents: GoodIdempotents):
    """sum_g (-1)^g P_axis^{-g} op P_axis^{g}; finite window on the axis."""
    plus = idempotents.P(axis, PLUS)
    minus = idempotents.P(axis, MINUS)
    return (minus @ op @ plus) - (plus @ op @ minus)


def _defaults(chain, structure, idempotents):
    if structure is None:
        structure = CubicalStructure(chain.dim, chain.field)
    if idempotents is None:
        idempotents = GoodIdempotents(chain.dim, chain.field)
    return structure, idempotents


def phi_hh_closed(chain: HochschildChain, structure: CubicalStructure = None,
                  idempotents: GoodIdempotents = None):
    """Closed product formula for the degree-n residue functional.

    phi(f_0 (x) .. (x) f_n) = (-1)^n tau(B_1 B_2 .. B_n f_0) where
    B_k = sum_g (-1)^g P_k^{-g} f_k P_k^{g}.  The operand is finite rank for
    windowed slots, so the trace always applies; trace refusals propagate.
    """
    structure, idempotents = _defaults(chain, structure, idempotents)
    n = structure.dim
    if chain.degree != n:
        raise DimensionMismatch(f"need a degree-{n} chain")
    total = chain.field.zero
    outer = -1 if n % 2 else 1
    for tensor, coeff in chain.terms.items():
        op = tensor[0]
        for k in range(n, 0, -1):
            op = _bracket_factor(k, tensor[k], idempotents) @ op
        total = total + coeff * outer * structure.trace(op)
    return total


def phi_hh_zigzag(chain: HochschildChain, structure: CubicalStructure = None,
                  idempotents: GoodIdempotents = None):
    """Staircase evaluation of the same functional through the homotopy.

    The cycle is embedded at level 0, lifted with H, and pushed along
    alternating Hochschild differentials and homotopies until it reaches
    the trace ideal at level n+1 in degree 0, where the finite-potent trace
    reads off the value.  Requires an honest cycle; agrees with
    phi_hh_closed there.
    """
    structure, idempotents = _defaults(chain, structure, idempotents)
    n = structure.dim
    if chain.degree != n:
        raise DimensionMismatch(f"need a degree-{n} chain")
    if not chain_is_zero(hochschild_b(chain)):
        raise NotACycle("phi_hh_zigzag needs b(chain) = 0")
    lifted = homotopy_H(LabeledChain.from_hochschild(chain), idempotents)
    for _ in range(n):
        lifted = homotopy_H(hochschild_b(lifted), idempotents)
    total = chain.field.zero
    for (_, tensor), coeff in lifted.terms.items():
        total = total + coeff * structure.trace(tensor[0])
    return total


def lambda_toeplitz(op: WindowedOperator, structure: CubicalStructure = None) -> WindowedOperator:
    """The Toeplitz-style splitting representative x -> x^+ = P_n^+ x.

    The complement P_n^- x is checked against the discrete ideal on the
    last axis, certifying x = x^+ + x^- with the parts in I_n^{+/-}; for
    windowed operators this cannot fail and the guard is an assertion.
    """
    if structure is None:
        structure = CubicalStructure(op.dim, op.field)
    n = structure.dim
    plus_part = projector(n, n, PLUS, op.field) @ op
    minus_part = projector(n, n, MINUS, op.field) @ op
    if not ideal_member(minus_part, n, MINUS):
        raise DecompositionError("complementary part escapes I_n^-")
    if not ideal_member(plus_part, n, PLUS):
        raise DecompositionError("positive part escapes I_n^+")
    return plus_part


def psi(chain: HochschildChain, level: int, idempotents: GoodIdempotents = None) -> HochschildChain:
    """One excision-style connecting step.

    Psi(a_0 (x) .. (x) a_s) = (-1)^s (sum_g (-1)^g P_s^{-g} a_s P_s^{g}) a_0
    (x) a_1 (x) .. (x) a_{s-1} at level s.  The module slot must lie in the
    deep ideal A^s (all axes beyond s, both signs) and the output is
    checked to land in A^{s-1}; a violation signals a convention bug.
    """
    n = chain.dim
    s = level
    if not 1 <= s <= n:
        raise ValueError("level out of range")
    if chain.degree != s:
        raise DimensionMismatch("chain degree must equal the level")
    if idempotents is None:
        idempotents = GoodIdempotents(n, chain.field)

    def check_deep(op, start_axis, what):
        for axis in range(start_axis, n + 1):
            for sign in (PLUS, MINUS):
                if not ideal_member(op, axis, sign):
                    raise MembershipError(
                        f"{what} slot fails I_{axis}^{sign} membership")

    out = []
    sgn = -1 if s % 2 else 1
    for tensor, coeff in chain.terms.items():
        check_deep(tensor[0], s + 1, "input module")
        new_m = _bracket_factor(s, tensor[s], idempotents) @ tensor[0]
        if new_m.is_zero():
            continue
        check_deep(new_m, s, "output module")
        out.append(((new_m,) + tensor[1:s], coeff * sgn))
    return HochschildChain(n, chain.field, s - 1, out)


def phi_c(chain: HochschildChain, structure: CubicalStructure = None,
          idempotents: GoodIdempotents = None):
    """Iterated connecting-map functional: tau after n applications of Psi.

    Satisfies phi_c = (-1)^{n(n-1)/2} phi_hh_closed at chain level.
    """
    structure, idempotents = _defaults(chain, structure, idempotents)
    n = structure.dim
    if chain.degree != n:
        raise DimensionMismatch(f"need a degree-{n} chain")
    current = chain
    for s in range(n, 0, -1):
        current = psi(current, s, idempotents)
    total = chain.field.zero
    for tensor, coeff in current.terms.items():
        total = total + coeff * structure.trace(tensor[0])
    return total


def commutator_formula(chain: LieChain, structure: CubicalStructure = None,
                       idempotents: GoodIdempotents = None):
    """Cascading-commutator functional on coefficient-bearing Lie chains.

    f_0 (x) f_1 ^..^ f_n -> (-1)^n tau sum_sigma sgn(sigma) sum_g
    (-1)^{g_1+..+g_n} (P_1^{-g_1} ad(f_{sigma^-1(1)}) P_1^{g_1}) ..
    (P_n^{-g_n} ad(f_{sigma^-1(n)}) P_n^{g_n}) f_0, with ad(f) = [f, -].
    Agrees with phi_hh_closed after antisymmetrization.
    """
    structure, idempotents = _defaults(chain, structure, idempotents)
    n = structure.dim
    if chain.degree != n:
        raise DimensionMismatch(f"need wedge degree {n}")
    total = chain.field.zero
    outer = -1 if n % 2 else 1
    for (m, slots), coeff in chain.terms.items():
        if m is None:
            raise ValueError("commutator_formula expects coefficient-bearing chains")
        for perm in permutations(range(n)):
            psign = _perm_sign(perm)
            for gammas in product((PLUS, MINUS), repeat=n):
                gsign = 1
                op = m
                for k in range(n, 0, -1):
                    g = gammas[k - 1]
                    gsign *= sign_of(g)
                    inner = idempotents.P(k, g) @ op
                    f = slots[perm[k - 1]]
                    op = idempotents.P(k, _opposite(g)) @ f.commutator(inner)
                    if op.is_zero():
                        break
                if op.is_zero():
                    continue
                total = total + coeff * (outer * psign * gsign) * structure.trace(op)
    return total
