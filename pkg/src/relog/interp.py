"""Free algebras over a finite generator and Maehara interpolant synthesis.

The finite free algebra on k generators lives inside the direct power A^(n^k):
an element is the vector of its values under every valuation of the generators.
Closure runs in uniform-cost order on representative size, so the first formula
discovered for a vector is a minimal-size representative and interpolant
search in discovery order returns minimal-size interpolants.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import product

from .errors import CapExceeded, InterpolantNotFound, NoSharedVariables, NotEntailed
from .logic import And, EntailmentVerdict, Fuse, Not, Or, Var, entails, evaluate

DEFAULT_COORDINATE_CAP = 216     # valuation-grid width: 6**3
DEFAULT_FREE_ELEMENT_CAP = 10**6

_GENERATOR = "gen"
_UNARY = "neg"
_BINARY_OPS = ("and", "or", "fuse")
_CTOR = {"and": And, "or": Or, "fuse": Fuse}


class FreeAlgebra:
    """Closure of the k projection vectors under the four operations.

    Elements are discovered lazily; `freeze()` drains the queue and fixes the
    exact element count.  Discovery order is deterministic: by representative
    size, ties by insertion.
    """

    def __init__(self, base, k, coordinate_cap=DEFAULT_COORDINATE_CAP,
                 element_cap=DEFAULT_FREE_ELEMENT_CAP):
        if k < 1:
            raise NoSharedVariables("free algebra needs at least one generator")
        width = base.size ** k
        if width > coordinate_cap:
            raise CapExceeded(
                f"free algebra over {base.name} on {k} generators needs "
                f"{width} coordinates (cap {coordinate_cap})"
            )
        self.base = base
        self.k = k
        self.width = width
        self.element_cap = element_cap
        self.vectors = []        # element id -> value vector
        self.sizes = []          # element id -> minimal representative size
        self.parents = []        # element id -> (op, left, right)
        self.index = {}          # vector -> element id
        self.closed = False
        self._counter = 0
        self._heap = []
        self._best = {}
        grid = list(product(range(base.size), repeat=k))
        for d in range(k):
            vector = tuple(val[d] for val in grid)
            self._push(vector, 1, (_GENERATOR, d, None))

    def _push(self, vector, size, parent):
        if vector in self.index:
            return
        best = self._best.get(vector)
        if best is not None and best <= size:
            return
        self._best[vector] = size
        self._counter += 1
        heapq.heappush(self._heap, (size, self._counter, vector, parent))

    def _pop_next(self):
        """Admit the next new element; returns its id or None when closed."""
        neg = self.base.neg
        tables = {
            "and": self.base.meet,
            "or": self.base.join,
            "fuse": self.base.fusion,
        }
        while self._heap:
            size, _, vector, parent = heapq.heappop(self._heap)
            if vector in self.index:
                continue
            if len(self.vectors) >= self.element_cap:
                raise CapExceeded(
                    f"free algebra over {self.base.name} on {self.k} generators "
                    f"exceeded {self.element_cap} elements"
                )
            new_id = len(self.vectors)
            self.index[vector] = new_id
            self.vectors.append(vector)
            self.sizes.append(size)
            self.parents.append(parent)
            self._push(tuple(neg[v] for v in vector), size + 1, (_UNARY, new_id, None))
            for other_id in range(new_id + 1):
                ovec = self.vectors[other_id]
                osize = self.sizes[other_id]
                for op in _BINARY_OPS:
                    table = tables[op]
                    if other_id != new_id:
                        self._push(
                            tuple(table[u][v] for u, v in zip(ovec, vector)),
                            osize + size + 1, (op, other_id, new_id),
                        )
                    self._push(
                        tuple(table[u][v] for u, v in zip(vector, ovec)),
                        size + osize + 1, (op, new_id, other_id),
                    )
            return new_id
        self.closed = True
        return None

    def ensure(self, element_id):
        """Grow until `element_id` exists; False once the closure is complete."""
        while len(self.vectors) <= element_id:
            if self._pop_next() is None:
                return False
        return True

    def freeze(self):
        """Drain the closure completely and return self."""
        while not self.closed:
            self._pop_next()
        return self

    @property
    def element_count(self):
        if not self.closed:
            raise ValueError("element count is exact only after freeze()")
        return len(self.vectors)

    def contains_vector(self, vector):
        return vector in self.index

    def representative(self, element_id, names=None):
        """Minimal-size formula evaluating to the element's value vector."""
        names = names or tuple(f"g{d}" for d in range(self.k))
        memo = {}

        def build(i):
            if i in memo:
                return memo[i]
            op, left, right = self.parents[i]
            if op == _GENERATOR:
                node = Var(names[left])
            elif op == _UNARY:
                node = Not(build(left))
            else:
                node = _CTOR[op](build(left), build(right))
            memo[i] = node
            return node

        return build(element_id)

    def iter_discovery(self):
        """Yield element ids in discovery order, growing the closure on demand."""
        i = 0
        while True:
            if not self.ensure(i):
                return
            yield i
            i += 1


def free_algebra(base, k, coordinate_cap=DEFAULT_COORDINATE_CAP,
                 element_cap=DEFAULT_FREE_ELEMENT_CAP):
    """Fully closed free algebra of the variety of `base` on k generators."""
    return FreeAlgebra(base, k, coordinate_cap, element_cap).freeze()


_FREE_CACHE = {}


def _shared_free_algebra(base, k, coordinate_cap, element_cap):
    key = (base, k)
    cached = _FREE_CACHE.get(key)
    if cached is None or cached.element_cap < element_cap:
        cached = FreeAlgebra(base, k, coordinate_cap, element_cap)
        _FREE_CACHE[key] = cached
    return cached


# ---------------------------------------------------------------------------
# Interpolation
# ---------------------------------------------------------------------------

@dataclass
class InterpolationResult:
    sigma: list
    gamma: list
    alpha: object
    shared: tuple                 # sorted shared variable names
    delta: object                 # the interpolant formula
    scanned: int                  # candidates examined, successful one included
    gamma_verdict: EntailmentVerdict   # gamma |- delta
    alpha_verdict: EntailmentVerdict   # sigma, delta |- alpha

    @property
    def delta_size(self):
        return self.delta.size()


@dataclass
class VerificationTranscript:
    variable_condition: bool
    gamma_verdict: EntailmentVerdict | None
    alpha_verdict: EntailmentVerdict | None

    @property
    def ok(self):
        return (
            self.variable_condition
            and self.gamma_verdict is not None and self.gamma_verdict.holds
            and self.alpha_verdict is not None and self.alpha_verdict.holds
        )


def _variables(formulas):
    out = set()
    for f in formulas:
        out |= f.variables()
    return out


def _shared_valuation_indices(algebra, scope_vars, shared, base_size):
    """Map each valuation over `scope_vars` to the index of its restriction to
    `shared` in the free algebra's valuation grid (lexicographic, sorted names)."""
    positions = [scope_vars.index(v) for v in shared]
    indices = []
    for assignment in product(range(base_size), repeat=len(scope_vars)):
        idx = 0
        for p in positions:
            idx = idx * base_size + assignment[p]
        indices.append((assignment, idx))
    return indices


def maehara_interpolant(sigma, gamma, alpha, algebras, generator=None,
                        coordinate_cap=DEFAULT_COORDINATE_CAP,
                        element_cap=DEFAULT_FREE_ELEMENT_CAP):
    """Find a formula delta over the shared variables with gamma |- delta and
    sigma, delta |- alpha.

    The shared set is var(sigma + [alpha]) & var(gamma) — the asymmetric reading:
    delta must be provable from gamma and usable alongside sigma.  Candidates
    are the free-algebra elements over the shared variables in discovery order,
    so the returned interpolant has minimal size.
    """
    sigma, gamma = list(sigma), list(gamma)
    shared = tuple(sorted(_variables(sigma + [alpha]) & _variables(gamma)))
    if not shared:
        raise NoSharedVariables(
            "no variable is shared between the gamma side and the sigma/alpha side"
        )
    precheck = entails(algebras, sigma + gamma, alpha)
    if not precheck.holds:
        raise NotEntailed(
            "the premises do not entail the conclusion",
            countermodel=precheck.countermodel,
        )
    if generator is None:
        generator = algebras[0]
    fa = _shared_free_algebra(generator, len(shared), coordinate_cap, element_cap)
    n = generator.size
    is_designated = generator.is_designated

    # Precompute, once per problem, which shared-valuation grid points the
    # candidate must designate (for gamma |- delta) and which it must not
    # (for sigma, delta |- alpha).  A vector is an interpolant iff it is
    # designated on all of `required` and undesignated on all of `forbidden`.
    gamma_scope = sorted(_variables(gamma) | set(shared))
    required = set()
    for assignment, idx in _shared_valuation_indices(generator, gamma_scope, shared, n):
        valuation = dict(zip(gamma_scope, assignment))
        if all(is_designated(evaluate(generator, valuation, g)) for g in gamma):
            required.add(idx)
    alpha_scope = sorted(_variables(sigma) | alpha.variables() | set(shared))
    forbidden = set()
    for assignment, idx in _shared_valuation_indices(generator, alpha_scope, shared, n):
        valuation = dict(zip(alpha_scope, assignment))
        if all(is_designated(evaluate(generator, valuation, s)) for s in sigma) \
                and not is_designated(evaluate(generator, valuation, alpha)):
            forbidden.add(idx)

    scanned = 0
    for element_id in fa.iter_discovery():
        scanned += 1
        vector = fa.vectors[element_id]
        if all(is_designated(vector[i]) for i in required) and \
                not any(is_designated(vector[i]) for i in forbidden):
            delta = fa.representative(element_id, names=shared)
            gamma_verdict = entails(algebras, gamma, delta)
            alpha_verdict = entails(algebras, sigma + [delta], alpha)
            if not (gamma_verdict.holds and alpha_verdict.holds):
                # The mask is exact for consequence over `generator` alone; a
                # disagreement can only come from extra algebras in K.
                continue
            return InterpolationResult(
                sigma, gamma, alpha, shared, delta, scanned,
                gamma_verdict, alpha_verdict,
            )
    raise InterpolantNotFound(
        f"no interpolant among all {scanned} formulas over {shared} "
        f"up to logical equivalence",
        scanned=scanned,
    )


def deductive_interpolant(gamma, alpha, algebras, **kwargs):
    """Interpolation for plain deducibility: the sigma-free special case."""
    return maehara_interpolant([], gamma, alpha, algebras, **kwargs)


def verify_interpolant(sigma, gamma, alpha, delta, algebras):
    """Re-check the three interpolant conditions independently of synthesis."""
    sigma, gamma = list(sigma), list(gamma)
    shared = _variables(sigma + [alpha]) & _variables(gamma)
    variable_condition = delta.variables() <= shared
    if not variable_condition:
        return VerificationTranscript(False, None, None)
    gamma_verdict = entails(algebras, gamma, delta)
    alpha_verdict = entails(algebras, sigma + [delta], alpha)
    return VerificationTranscript(True, gamma_verdict, alpha_verdict)
