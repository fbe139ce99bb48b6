"""Finite groups as multiplication tables: subgroup enumeration up to
conjugacy, families of subgroups closed under conjugation and taking
subgroups, Sylow subgroups, and semidirect products.

Groups are index-based: elements are 0..order-1 and the table gives
products of indices.  All groups in the intended workload have order at
most 120 (A5 and small products), so everything here is happily quadratic
or cubic in the order.
"""

from __future__ import annotations

import itertools
import json

DEFAULT_ORDER_BOUND = 120


class FiniteGroup:
    """Group given by its multiplication table.

    table[i][j] is the index of the product (element i) * (element j).
    The identity, inverses and associativity are verified on construction
    unless the table comes from one of the trusted builtin constructors.
    """

    def __init__(self, table, labels=None, name=None, _trusted=False):
        self.table = [list(map(int, row)) for row in table]
        self.order = len(self.table)
        if any(len(row) != self.order for row in self.table):
            raise ValueError("multiplication table is not square")
        self.labels = list(labels) if labels is not None else [
            f"g{i}" for i in range(self.order)
        ]
        if len(self.labels) != self.order:
            raise ValueError("wrong number of labels")
        self.name = name or f"group{self.order}"
        self.identity = self._find_identity()
        self._inv = self._find_inverses()
        self._gens = None
        self._words = None
        self._subgroup_classes = None
        if not _trusted:
            self._check_associativity()

    # -- construction checks ------------------------------------------------

    def _find_identity(self) -> int:
        for e in range(self.order):
            row = self.table[e]
            if all(row[j] == j for j in range(self.order)) and all(
                self.table[j][e] == j for j in range(self.order)
            ):
                return e
        raise ValueError("table has no identity element")

    def _find_inverses(self):
        inv = [None] * self.order
        e = self.identity
        for i in range(self.order):
            for j in range(self.order):
                if self.table[i][j] == e and self.table[j][i] == e:
                    inv[i] = j
                    break
            if inv[i] is None:
                raise ValueError(f"element {i} has no inverse")
        return inv

    def _check_associativity(self):
        # Light's test: full associativity follows from checking it against
        # a generating set.
        gens = self.generators()
        n = self.order
        for g in gens:
            for x in range(n):
                xg = self.table[x][g]
                row_g = self.table[g]
                row_xg = self.table[xg]
                tx = self.table[x]
                for y in range(n):
                    if row_xg[y] != tx[row_g[y]]:
                        raise ValueError("table is not associative")

    # -- basic structure -----------------------------------------------------

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        return self._inv[i]

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.table[self.table[g][x]][self._inv[g]]

    def element_order(self, i: int) -> int:
        n, x = 1, i
        while x != self.identity:
            x = self.table[x][i]
            n += 1
        return n

    def power(self, i: int, k: int) -> int:
        if k < 0:
            return self.power(self._inv[i], -k)
        out = self.identity
        for _ in range(k):
            out = self.table[out][i]
        return out

    def is_abelian(self) -> bool:
        return all(
            self.table[i][j] == self.table[j][i]
            for i in range(self.order) for j in range(i)
        )

    def mulclose(self, seed) -> frozenset:
        """Subgroup generated by the given element indices."""
        els = {self.identity}
        boundary = [self.identity]
        gens = [g for g in seed]
        for g in gens:
            if g not in els:
                els.add(g)
                boundary.append(g)
        while boundary:
            new = []
            for a in gens:
                for b in boundary:
                    c = self.table[b][a]
                    if c not in els:
                        els.add(c)
                        new.append(c)
                    c = self.table[a][b]
                    if c not in els:
                        els.add(c)
                        new.append(c)
            boundary = new
        return frozenset(els)

    def generators(self):
        """A small deterministic generating set (greedy by element order)."""
        if self._gens is not None:
            return self._gens
        cands = sorted(range(self.order),
                       key=lambda i: (-self.element_order(i), i))
        gens = []
        closure = frozenset({self.identity})
        for g in cands:
            if g not in closure:
                gens.append(g)
                closure = self.mulclose(gens)
                if len(closure) == self.order:
                    break
        self._gens = gens
        return gens

    def words(self):
        """Shortest word in the generators for every element (BFS)."""
        if self._words is not None:
            return self._words
        gens = self.generators()
        words = {self.identity: ()}
        frontier = [self.identity]
        while frontier:
            new = []
            for x in frontier:
                for k, g in enumerate(gens):
                    y = self.table[x][g]
                    if y not in words:
                        words[y] = words[x] + (k,)
                        new.append(y)
            frontier = new
        if len(words) != self.order:
            raise RuntimeError("generators do not generate")
        self._words = words
        return words

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- serialization -------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({
            "order": self.order,
            "table": self.table,
            "labels": self.labels,
        })

    @classmethod
    def from_json(cls, text: str, name=None) -> "FiniteGroup":
        obj = json.loads(text)
        table = obj["table"]
        if len(table) != obj.get("order", len(table)):
            raise ValueError("order field disagrees with table size")
        return cls(table, labels=obj.get("labels"), name=name)


class Subgroup:
    """Subgroup of a table group, stored as a sorted tuple of indices."""

    def __init__(self, parent: FiniteGroup, elements, check: bool = True):
        self.parent = parent
        self.elements = tuple(sorted(set(int(x) for x in elements)))
        if check:
            self._check()

    def _check(self):
        G = self.parent
        els = set(self.elements)
        if G.identity not in els:
            raise ValueError("subgroup must contain the identity")
        for a in self.elements:
            if G.inverse(a) not in els:
                raise ValueError("subgroup not closed under inverses")
            for b in self.elements:
                if G.table[a][b] not in els:
                    raise ValueError("subgroup not closed under products")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, i: int) -> bool:
        return i in set(self.elements)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.elements == other.elements

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    def __le__(self, other: "Subgroup") -> bool:
        return set(self.elements) <= set(other.elements)

    def __repr__(self):
        names = ",".join(self.parent.labels[i] for i in self.elements[:6])
        suffix = ",..." if self.order > 6 else ""
        return f"Subgroup({{{names}{suffix}}} of {self.parent.name})"

    def conjugate_by(self, g: int) -> "Subgroup":
        G = self.parent
        return Subgroup(G, (G.conjugate(g, x) for x in self.elements), check=False)

    def is_normal(self) -> bool:
        mine = set(self.elements)
        return all(
            set(self.conjugate_by(g).elements) == mine
            for g in range(self.parent.order)
        )

    def generators(self):
        G = self.parent
        cands = sorted(self.elements, key=lambda i: (-G.element_order(i), i))
        gens = []
        closure = frozenset({G.identity})
        for g in cands:
            if g not in closure:
                gens.append(g)
                closure = G.mulclose(gens)
                if len(closure) == self.order:
                    break
        return gens

    def left_cosets(self):
        """Left cosets gH, each a sorted tuple, ordered by minimal element."""
        G = self.parent
        seen = set()
        cosets = []
        for g in range(G.order):
            if g in seen:
                continue
            coset = tuple(sorted(G.table[g][h] for h in self.elements))
            seen.update(coset)
            cosets.append(coset)
        return sorted(cosets)

    def is_p_group(self):
        """The prime p with |H| = p^k, or None."""
        n = self.order
        if n == 1:
            return None
        p = 2
        while n % p:
            p += 1
        while n % p == 0:
            n //= p
        return p if n == 1 else None


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,), check=False)


def full_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, range(G.order), check=False)


def all_subgroups(G: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND):
    """All subgroups, grouped by conjugacy class.

    Returns a list of classes; each class is a list of Subgroups whose
    first entry is the canonical representative (lexicographically least
    element tuple in the class).  Classes are sorted by (order, canonical
    representative).

    Enumeration is breadth-first closure: every subgroup arises from a
    cyclic one by repeatedly adjoining one more generator, which reaches
    |A5| = 60 quickly.
    """
    if G.order > bound:
        raise ValueError(f"group order {G.order} exceeds bound {bound}")
    if G._subgroup_classes is not None:
        return G._subgroup_classes

    found = {frozenset({G.identity})}
    frontier = list(found)
    for g in range(G.order):
        h = G.mulclose([g])
        if h not in found:
            found.add(h)
            frontier.append(h)
    while frontier:
        new = []
        for h in frontier:
            if len(h) == G.order:
                continue
            for g in range(G.order):
                if g in h:
                    continue
                bigger = G.mulclose(list(h) + [g])
                if bigger not in found:
                    found.add(bigger)
                    new.append(bigger)
        frontier = new

    # group into conjugacy classes with canonical (lex-least) representatives
    remaining = {tuple(sorted(h)) for h in found}
    classes = []
    while remaining:
        rep = min(remaining)
        orbit = set()
        for g in range(G.order):
            conj = tuple(sorted(G.conjugate(g, x) for x in rep))
            orbit.add(conj)
        remaining -= orbit
        members = sorted(orbit)
        classes.append([Subgroup(G, t, check=False) for t in members])
    classes.sort(key=lambda cls: (cls[0].order, cls[0].elements))
    G._subgroup_classes = classes
    return classes


def subgroup_class_representatives(G: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND):
    return [cls[0] for cls in all_subgroups(G, bound)]


class SubgroupFamily:
    """Nonempty collection of subgroups closed under conjugation and
    under passing to subgroups."""

    def __init__(self, parent: FiniteGroup, members, name=None, check=True):
        self.parent = parent
        self.members = frozenset(
            m if isinstance(m, Subgroup) else Subgroup(parent, m, check=False)
            for m in members
        )
        self.name = name or "family"
        if check:
            self._check()

    def _check(self):
        if not self.members:
            raise ValueError("a family must be nonempty")
        sets = {m.elements for m in self.members}
        G = self.parent
        for m in self.members:
            for g in range(G.order):
                if m.conjugate_by(g).elements not in sets:
                    raise ValueError("family is not closed under conjugation")
        for m in self.members:
            for sub in _subgroups_of(m):
                if sub not in sets:
                    raise ValueError("family is not closed under subgroups")

    def __contains__(self, H) -> bool:
        if isinstance(H, Subgroup):
            H = H.elements
        return tuple(sorted(H)) in {m.elements for m in self.members}

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        if not isinstance(other, SubgroupFamily):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __repr__(self):
        return f"SubgroupFamily({self.name}, {len(self.members)} subgroups of {self.parent.name})"

    def maximal_members(self):
        """One representative per conjugacy class of the maximal members;
        these generate the family."""
        members = sorted(self.members, key=lambda m: (-m.order, m.elements))
        maximal = [
            m for m in members
            if not any(set(m.elements) < set(b.elements) for b in self.members)
        ]
        reps = []
        seen = set()
        for m in maximal:
            canon = min(
                tuple(sorted(self.parent.conjugate(g, x) for x in m.elements))
                for g in range(self.parent.order)
            )
            if canon not in seen:
                seen.add(canon)
                reps.append(Subgroup(self.parent, canon, check=False))
        return reps

    def restrict_to(self, P: Subgroup) -> "SubgroupFamily":
        """The family F ∩ P of members contained in P, as subgroups of P
        (a table group on P's elements)."""
        sub, embed = subgroup_as_group(P)
        back = {g: i for i, g in enumerate(embed)}
        members = []
        for m in self.members:
            if set(m.elements) <= set(P.elements):
                members.append(Subgroup(sub, tuple(back[x] for x in m.elements),
                                        check=False))
        return SubgroupFamily(sub, members, name=f"{self.name}&{P!r}", check=False)


def _subgroups_of(H: Subgroup):
    """All subgroups of H, as element tuples of the ambient group."""
    G = H.parent
    els = list(H.elements)
    found = {frozenset({G.identity})}
    frontier = list(found)
    for g in els:
        c = G.mulclose([g])
        if c not in found:
            found.add(c)
            frontier.append(c)
    while frontier:
        new = []
        for h in frontier:
            for g in els:
                if g in h:
                    continue
                bigger = G.mulclose(list(h) + [g])
                if len(bigger) <= len(els) and bigger not in found:
                    found.add(bigger)
                    new.append(bigger)
        frontier = new
    return {tuple(sorted(h)) for h in found if set(h) <= set(els)}


def family_generated_by(G: FiniteGroup, L: Subgroup, name=None) -> SubgroupFamily:
    """Smallest family containing L: all H with H <= kLk^-1 for some k."""
    members = set()
    for g in range(G.order):
        conj = L.conjugate_by(g)
        members.update(_subgroups_of(conj))
    fam = SubgroupFamily(G, members, name=name or "<L>", check=False)
    return fam


def all_subgroups_family(G: FiniteGroup) -> SubgroupFamily:
    members = [s for cls in all_subgroups(G) for s in cls]
    return SubgroupFamily(G, members, name="all", check=False)


def proper_subgroups_family(G: FiniteGroup) -> SubgroupFamily:
    members = [s for cls in all_subgroups(G) for s in cls if s.order < G.order]
    return SubgroupFamily(G, members, name="proper", check=False)


def trivial_family(G: FiniteGroup) -> SubgroupFamily:
    return SubgroupFamily(G, [trivial_subgroup(G)], name="1", check=False)


def p_subgroups(G: FiniteGroup, p: int):
    """All subgroups of p-power order (including the trivial one)."""
    if G.order % p != 0:
        raise ValueError(f"{p} does not divide the group order {G.order}")
    out = []
    for cls in all_subgroups(G):
        for s in cls:
            if s.order == 1 or s.is_p_group() == p:
                out.append(s)
    return out


def sylow(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup (the canonical class representative)."""
    if G.order % p != 0:
        raise ValueError(f"{p} does not divide the group order {G.order}")
    target = 1
    n = G.order
    while n % p == 0:
        n //= p
        target *= p
    for cls in all_subgroups(G):
        if cls[0].order == target and cls[0].is_p_group() == p:
            return cls[0]
    raise RuntimeError("no Sylow subgroup found; enumeration is broken")


def primes_dividing(n: int):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def subgroup_as_group(H: Subgroup):
    """H as a table group of its own, plus the embedding list.

    Returns (group, embed) where embed[i] is the ambient index of element i.
    """
    G = H.parent
    embed = list(H.elements)
    back = {g: i for i, g in enumerate(embed)}
    table = [[back[G.table[a][b]] for b in embed] for a in embed]
    labels = [G.labels[g] for g in embed]
    sub = FiniteGroup(table, labels=labels,
                      name=f"{G.name}_sub{H.order}", _trusted=True)
    return sub, embed


def quotient_group(G: FiniteGroup, N: Subgroup):
    """G/N for normal N, plus the projection list: index of gN per g in G."""
    if not N.is_normal():
        raise ValueError("can only quotient by a normal subgroup")
    cosets = N.left_cosets()
    which = {}
    for ci, coset in enumerate(cosets):
        for g in coset:
            which[g] = ci
    reps = [min(c) for c in cosets]
    table = [
        [which[G.table[reps[a]][reps[b]]] for b in range(len(cosets))]
        for a in range(len(cosets))
    ]
    labels = [f"[{G.labels[r]}]" for r in reps]
    Q = FiniteGroup(table, labels=labels, name=f"{G.name}/N{N.order}",
                    _trusted=True)
    projection = [which[g] for g in range(G.order)]
    return Q, projection


# -- builtin constructors ----------------------------------------------------


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], labels=["e"], name="1", _trusted=True)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["e"] + [f"s{('^' + str(i)) if i > 1 else ''}" for i in range(1, n)]
    return FiniteGroup(table, labels=labels, name=f"C{n}", _trusted=True)


def _group_from_perms(perms, name, degree):
    perms = sorted(perms)
    index = {p: i for i, p in enumerate(perms)}
    table = []
    for p in perms:
        row = []
        for q in perms:
            comp = tuple(p[q[x]] for x in range(degree))  # (p*q)(x) = p(q(x))
            row.append(index[comp])
        table.append(row)
    labels = [_cycle_label(p) for p in perms]
    return FiniteGroup(table, labels=labels, name=name, _trusted=True)


def _cycle_label(p) -> str:
    n = len(p)
    seen = [False] * n
    cycles = []
    for i in range(n):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) if cycles else "e"


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise ValueError("symmetric groups supported for n <= 5 only")
    return _group_from_perms(list(itertools.permutations(range(n))), f"S{n}", n)


def alternating(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise ValueError("alternating groups supported for n <= 5 only")
    evens = [p for p in itertools.permutations(range(n)) if _sign(p) == 1]
    return _group_from_perms(evens, f"A{n}", n)


def _sign(p) -> int:
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n (symmetries of the n-gon)."""
    if n < 1:
        raise ValueError("need n >= 1")
    els = [(i, f) for f in (0, 1) for i in range(n)]
    index = {e: k for k, e in enumerate(els)}
    table = []
    for (i, f) in els:
        row = []
        for (j, g) in els:
            # r^i f^f * r^j f^g with f r f = r^-1
            jj = j if f == 0 else -j
            row.append(index[((i + jj) % n, (f + g) % 2)])
        table.append(row)
    labels = [("e" if i == 0 and f == 0 else
               (f"r{i if i > 1 else ''}" if f == 0 else
                (f"fr{i if i > 0 else ''}" if i else "f")))
              for (i, f) in els]
    return FiniteGroup(table, labels=labels, name=f"D{n}", _trusted=True)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    els = [(a, b) for a in range(G.order) for b in range(H.order)]
    index = {e: k for k, e in enumerate(els)}
    table = [
        [index[(G.table[a][c], H.table[b][d])] for (c, d) in els]
        for (a, b) in els
    ]
    labels = [f"({G.labels[a]},{H.labels[b]})" for (a, b) in els]
    return FiniteGroup(table, labels=labels, name=f"{G.name}x{H.name}",
                       _trusted=True)


class SemidirectProduct(FiniteGroup):
    """G ⋊ Γ with the distinguished normal copy of G and retract copy of Γ.

    Elements are pairs (g, γ) indexed as g * |Γ| + γ; multiplication is
    (g, γ)(h, δ) = (g · γh, γδ).
    """

    def __init__(self, G: FiniteGroup, Gamma: FiniteGroup, action):
        self.factor_g = G
        self.factor_gamma = Gamma
        self.action = _check_action(G, Gamma, action)
        nG, nT = G.order, Gamma.order
        table = []
        for g in range(nG):
            for c in range(nT):
                row = []
                act = self.action[c]
                for h in range(nG):
                    gh = G.table[g][act[h]]
                    base = gh * nT
                    tc = Gamma.table[c]
                    row.extend(base + tc[d] for d in range(nT))
                table.append(row)
        labels = [
            f"({G.labels[g]},{Gamma.labels[c]})"
            for g in range(nG) for c in range(nT)
        ]
        super().__init__(table, labels=labels,
                         name=f"{G.name}:{Gamma.name}", _trusted=True)
        self.normal_part = Subgroup(
            self, tuple(g * nT + Gamma.identity for g in range(nG)), check=False)
        self.retract_part = Subgroup(
            self, tuple(G.identity * nT + c for c in range(nT)), check=False)

    def pair(self, idx: int):
        return divmod(idx, self.factor_gamma.order)

    def element(self, g: int, gamma: int) -> int:
        return g * self.factor_gamma.order + gamma

    def project_gamma(self, idx: int) -> int:
        return idx % self.factor_gamma.order

    def project_g(self, idx: int) -> int:
        return idx // self.factor_gamma.order


def _check_action(G: FiniteGroup, Gamma: FiniteGroup, action):
    """Normalize and verify an action Γ -> Aut(G).

    ``action`` maps each index of Γ to a permutation (list) of G's indices;
    a callable, a dict, or a list are accepted.
    """
    maps = {}
    for c in range(Gamma.order):
        if callable(action):
            perm = [action(c, g) for g in range(G.order)]
        elif isinstance(action, dict):
            perm = list(action[c])
        else:
            perm = list(action[c])
        if sorted(perm) != list(range(G.order)):
            raise ValueError(f"action of element {c} is not a bijection")
        for a in range(G.order):
            for b in range(G.order):
                if perm[G.table[a][b]] != G.table[perm[a]][perm[b]]:
                    raise ValueError(
                        f"action of element {c} is not an automorphism")
        maps[c] = perm
    for c in range(Gamma.order):
        for d in range(Gamma.order):
            cd = Gamma.table[c][d]
            comp = [maps[c][maps[d][g]] for g in range(G.order)]
            if comp != maps[cd]:
                raise ValueError("action is not a homomorphism into Aut(G)")
    return maps


def semidirect_product(G: FiniteGroup, Gamma: FiniteGroup, action) -> SemidirectProduct:
    return SemidirectProduct(G, Gamma, action)


def trivial_action(G: FiniteGroup, Gamma: FiniteGroup):
    return {c: list(range(G.order)) for c in range(Gamma.order)}


def inversion_action(G: FiniteGroup, Gamma: FiniteGroup):
    """Order-2 generatorwise inversion action on an abelian G."""
    if not G.is_abelian():
        raise ValueError("inversion is only an automorphism of abelian groups")
    inv = [G.inverse(g) for g in range(G.order)]
    maps = {}
    for c in range(Gamma.order):
        if Gamma.element_order(c) in (1,):
            maps[c] = list(range(G.order))
        elif Gamma.element_order(c) == 2:
            maps[c] = inv
        else:
            raise ValueError("inversion action needs Γ of exponent 2")
    return maps


def builtin_group(name: str) -> FiniteGroup:
    """Named constructors used by the command line and test fixtures."""
    key = name.strip()
    if key in ("1", "C1", "triv", "trivial"):
        return trivial_group()
    if key.startswith("C") and key[1:].isdigit():
        return cyclic(int(key[1:]))
    if key.startswith("S") and key[1:].isdigit():
        return symmetric(int(key[1:]))
    if key.startswith("A") and key[1:].isdigit():
        return alternating(int(key[1:]))
    if key.startswith("D") and key[1:].isdigit():
        return dihedral(int(key[1:]))
    if key in ("K4", "V4", "C2xC2"):
        return direct_product(cyclic(2), cyclic(2))
    if "x" in key:
        parts = key.split("x")
        G = builtin_group(parts[0])
        for part in parts[1:]:
            G = direct_product(G, builtin_group(part))
        return G
    raise ValueError(f"unknown builtin group {name!r}")
