"""Subuniverses, congruences, simplicity and the congruence extension property.

Congruences are generated by closing pairs under one-step translations of the
basic operations (unary polynomial closure) and the congruence lattice is the
join-closure of the principal congruences.  Everything here is exhaustive by
design: correctness over speed at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .algebra import FiniteAlgebra, subalgebra
from .errors import NotACongruence, SizeCapExceeded

DEFAULT_SUBUNIVERSE_CAP = 24
DEFAULT_CONGRUENCE_CAP = 100


class Congruence:
    """An operation-compatible partition, held as canonical blocks."""

    def __init__(self, algebra, blocks, check=True):
        self.algebra = algebra
        norm = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0])
        self.blocks = tuple(norm)
        block_of = [None] * algebra.size
        for bi, block in enumerate(self.blocks):
            for x in block:
                if x < 0 or x >= algebra.size or block_of[x] is not None:
                    raise NotACongruence("blocks do not partition the element set")
                block_of[x] = bi
        if any(b is None for b in block_of):
            raise NotACongruence("blocks do not cover the element set")
        self.block_of = tuple(block_of)
        if check and not self._compatible():
            raise NotACongruence(f"partition not compatible with {algebra.name}")

    def _compatible(self):
        a = self.algebra
        bo = self.block_of
        n = a.size
        for x in range(n):
            for y in range(n):
                if bo[x] != bo[y]:
                    continue
                if bo[a.neg[x]] != bo[a.neg[y]]:
                    return False
                for w in range(n):
                    for table in (a.meet, a.join, a.fusion):
                        if bo[table[x][w]] != bo[table[y][w]]:
                            return False
                        if bo[table[w][x]] != bo[table[w][y]]:
                            return False
        return True

    def related(self, x, y):
        return self.block_of[x] == self.block_of[y]

    @property
    def is_identity(self):
        return len(self.blocks) == self.algebra.size

    @property
    def is_full(self):
        return len(self.blocks) == 1

    def restrict(self, members):
        """Partition induced on a subset, as blocks of positions into `members`."""
        members = tuple(sorted(members))
        groups = {}
        for pos, x in enumerate(members):
            groups.setdefault(self.block_of[x], []).append(pos)
        return tuple(sorted((tuple(g) for g in groups.values()), key=lambda b: b[0]))

    def block_names(self):
        return [list(self.algebra.names(block)) for block in self.blocks]

    def __eq__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.algebra == other.algebra and self.block_of == other.block_of

    def __hash__(self):
        return hash((self.algebra, self.block_of))

    def __repr__(self):
        if self.is_identity:
            return f"Congruence({self.algebra.name}, identity)"
        if self.is_full:
            return f"Congruence({self.algebra.name}, full)"
        return f"Congruence({self.algebra.name}, {self.block_names()})"


def identity_congruence(algebra):
    return Congruence(algebra, [[x] for x in range(algebra.size)], check=False)


def full_congruence(algebra):
    return Congruence(algebra, [list(range(algebra.size))], check=False)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx > ry:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


def _uf_to_congruence(algebra, uf):
    groups = {}
    for x in range(algebra.size):
        groups.setdefault(uf.find(x), []).append(x)
    return Congruence(algebra, groups.values(), check=False)


def congruence_from_pairs(algebra, pairs):
    """Least congruence containing the given pairs (unary polynomial closure).

    Every merged pair is pushed through all one-step translations of the basic
    operations until nothing new merges; pairs already related when popped can
    be skipped because their translations followed the chain that merged them.
    """
    a = algebra
    n = a.size
    uf = _UnionFind(n)
    queue = []
    for x, y in pairs:
        if uf.union(x, y):
            queue.append((x, y))
    while queue:
        x, y = queue.pop()
        for w in range(n):
            for table in (a.meet, a.join, a.fusion):
                u, v = table[x][w], table[y][w]
                if uf.union(u, v):
                    queue.append((u, v))
                u, v = table[w][x], table[w][y]
                if uf.union(u, v):
                    queue.append((u, v))
        if uf.union(a.neg[x], a.neg[y]):
            queue.append((a.neg[x], a.neg[y]))
    return _uf_to_congruence(a, uf)


def principal_congruence(algebra, x, y):
    """Least congruence identifying x and y."""
    return congruence_from_pairs(algebra, [(x, y)])


def congruence_join(theta, phi):
    """Join in the congruence lattice: transitive closure of the union."""
    algebra = theta.algebra
    uf = _UnionFind(algebra.size)
    for cong in (theta, phi):
        for block in cong.blocks:
            for x in block[1:]:
                uf.union(block[0], x)
    return _uf_to_congruence(algebra, uf)


def congruence_meet(theta, phi):
    """Meet in the congruence lattice: intersection of the relations."""
    algebra = theta.algebra
    groups = {}
    for x in range(algebra.size):
        groups.setdefault((theta.block_of[x], phi.block_of[x]), []).append(x)
    return Congruence(algebra, groups.values(), check=False)


def congruence_lattice(algebra, cap=DEFAULT_CONGRUENCE_CAP):
    """All congruences, as joins of principal congruences; includes identity and full."""
    if algebra.size > cap:
        raise SizeCapExceeded(
            f"congruence lattice of {algebra.name} ({algebra.size} elements) exceeds cap {cap}"
        )
    found = {identity_congruence(algebra)}
    for x, y in combinations(range(algebra.size), 2):
        found.add(principal_congruence(algebra, x, y))
    frontier = list(found)
    while frontier:
        new = []
        for theta in frontier:
            for phi in list(found):
                joined = congruence_join(theta, phi)
                if joined not in found:
                    found.add(joined)
                    new.append(joined)
        frontier = new
    # finest first: identity congruence leads, full congruence closes the list
    return sorted(found, key=lambda c: (-len(c.blocks), c.block_of))


def is_simple(algebra, cap=DEFAULT_CONGRUENCE_CAP):
    """Simple: more than one element and no congruence besides identity and full."""
    if algebra.size <= 1:
        return False
    return len(congruence_lattice(algebra, cap=cap)) == 2


def is_fsi(algebra, cap=DEFAULT_CONGRUENCE_CAP):
    """Finitely subdirectly irreducible: the identity congruence is meet-irreducible."""
    lattice = congruence_lattice(algebra, cap=cap)
    delta = identity_congruence(algebra)
    for theta, phi in combinations(lattice, 2):
        if theta == delta or phi == delta:
            continue
        if congruence_meet(theta, phi) == delta:
            return False
    return True


# ---------------------------------------------------------------------------
# Subuniverses
# ---------------------------------------------------------------------------

def generated_subuniverse(algebra, seed):
    """Least subuniverse containing `seed`: fixed point under the four operations.

    The signature has no constants, so the empty seed closes to the empty set.
    """
    a = algebra
    members = set(seed)
    frontier = list(members)
    while frontier:
        x = frontier.pop()
        candidates = [a.neg[x]]
        for y in members:
            for table in (a.meet, a.join, a.fusion):
                candidates.append(table[x][y])
                candidates.append(table[y][x])
        for c in candidates:
            if c not in members:
                members.add(c)
                frontier.append(c)
    return tuple(sorted(members))


def all_subuniverses(algebra, proper_nonempty_only=False, cap=DEFAULT_SUBUNIVERSE_CAP):
    """Every subuniverse, found by closure growth rather than powerset filtering.

    Starts from the closure of each singleton and repeatedly extends each found
    subuniverse by one outside generator; this reaches every subuniverse because
    closures are monotone in their seeds.  Results are canonically sorted by
    (size, members).
    """
    if algebra.size > cap:
        raise SizeCapExceeded(
            f"subuniverse enumeration of {algebra.name} ({algebra.size} elements) "
            f"exceeds cap {cap}"
        )
    found = {()}
    frontier = [()]
    while frontier:
        base = frontier.pop()
        base_set = set(base)
        for x in range(algebra.size):
            if x in base_set:
                continue
            grown = generated_subuniverse(algebra, base_set | {x})
            if grown not in found:
                found.add(grown)
                frontier.append(grown)
    result = sorted(found, key=lambda s: (len(s), s))
    if proper_nonempty_only:
        full = tuple(range(algebra.size))
        result = [s for s in result if s and s != full]
    return result


# ---------------------------------------------------------------------------
# Congruence extension property
# ---------------------------------------------------------------------------

@dataclass
class CepWitness:
    """One congruence of a subalgebra and whether some congruence of the big
    algebra restricts to it exactly."""
    algebra: FiniteAlgebra        # the ambient algebra B
    members: tuple                # subuniverse of B carrying the inner algebra
    theta: Congruence             # congruence of the inner algebra
    extendable: bool
    extension: Congruence | None  # a congruence of B with restriction theta

    def describe(self):
        inner = "+".join(self.algebra.names(self.members))
        verdict = "extends" if self.extendable else "NOT extendable"
        return f"{self.algebra.name} >= {inner}: {self.theta.blocks} {verdict}"


def check_cep_pair(algebra, members, big_lattice=None):
    """One CepWitness per congruence of the subalgebra on `members`.

    Exhaustive: a congruence extends iff some member of Con(B) restricts to it.
    """
    members = tuple(sorted(members))
    inner = subalgebra(algebra, members)
    inner_lattice = congruence_lattice(inner)
    if big_lattice is None:
        big_lattice = congruence_lattice(algebra)
    witnesses = []
    for theta in inner_lattice:
        target = theta.blocks  # blocks over positions in `members`
        extension = None
        for phi in big_lattice:
            if phi.restrict(members) == target:
                extension = phi
                break
        witnesses.append(
            CepWitness(algebra, members, theta, extension is not None, extension)
        )
    return witnesses


def hs_class(algebra, include_trivial=False, cap=DEFAULT_SUBUNIVERSE_CAP):
    """All quotients of all subalgebras, deduplicated up to isomorphism."""
    from .morph import isomorphisms  # deferred: morph builds on this module

    from .algebra import quotient

    representatives = []
    for members in all_subuniverses(algebra, cap=cap):
        if not members:
            continue
        sub = subalgebra(algebra, members)
        for theta in congruence_lattice(sub):
            q = quotient(sub, theta)
            if q.size == 1 and not include_trivial:
                continue
            if not any(
                q.size == r.size and isomorphisms(q, r) for r in representatives
            ):
                representatives.append(q)
    return sorted(representatives, key=lambda a: (a.size, a.name))


def check_cep_class(algebras):
    """Class CEP: every congruence of every subalgebra of every member extends.

    Returns (verdict, non_extendable, checked) where `non_extendable` lists the
    failing witnesses and `checked` counts all examined witnesses.
    """
    failures = []
    checked = 0
    for big in algebras:
        big_lattice = congruence_lattice(big)
        for members in all_subuniverses(big):
            if not members:
                continue
            for witness in check_cep_pair(big, members, big_lattice=big_lattice):
                checked += 1
                if not witness.extendable:
                    failures.append(witness)
    return (not failures), failures, checked
