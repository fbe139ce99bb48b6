"""Formal group-ring arithmetic over finite table groups and over the
handful of presented groups the toolkit ships (Z, Z^2, the Klein bottle
group, finite cyclic presentations, and products of these).

A *word* is a tuple of (generator name, +-1) letters.  Ring elements are
plain dicts mapping canonical element keys to integer coefficients; a
*calculus* knows how to multiply and invert keys and how to expand a key
back into a word so that modules can evaluate it through their generator
action matrices.

Serialized word format: space-separated letters, a trailing ``-`` marking
an inverse, e.g. ``"a b-"`` for a·b^-1 and ``""`` for the identity.
"""

from __future__ import annotations

from .finite_groups import FiniteGroup


def parse_word(text: str):
    word = []
    for tok in text.split():
        if tok in ("e", "1"):
            continue
        if tok.endswith("-"):
            word.append((tok[:-1], -1))
        else:
            word.append((tok, 1))
    return tuple(word)


def word_to_text(word) -> str:
    return " ".join(name + ("-" if e < 0 else "") for name, e in word)


def invert_word(word):
    return tuple((name, -e) for name, e in reversed(word))


class FiniteCalculus:
    """Keys are element indices of a multiplication-table group."""

    def __init__(self, G: FiniteGroup):
        self.group = G
        gens = G.generators()
        self.gen_names = [G.labels[g] for g in gens]
        self._gen_index = dict(zip(self.gen_names, gens))
        self.finite = True

    def identity(self):
        return self.group.identity

    def gen(self, name):
        return self._gen_index[name]

    def mul(self, k1, k2):
        return self.group.table[k1][k2]

    def inv(self, k):
        return self.group.inverse(k)

    def eval_word(self, word):
        k = self.group.identity
        for name, e in word:
            g = self._gen_index[name]
            k = self.group.table[k][g if e > 0 else self.group.inverse(g)]
        return k

    def key_word(self, key):
        gens = self.group.generators()
        word = self.group.words()[key]
        return tuple((self.group.labels[gens[i]], 1) for i in word)

    def relator_words(self):
        return []

    def label(self, key) -> str:
        return self.group.labels[key]

    def all_keys(self):
        return list(range(self.group.order))

    def ball(self, radius):
        return self.all_keys()


class FixtureCalculus:
    """Normal-form arithmetic for the shipped presented groups.

    kinds: ``Z`` (infinite cyclic, generator t), ``Z2`` (rank-two free
    abelian, generators x and y), ``K`` (the one-relator group
    <a, b | a^2 = b^2>, handled in the normal form x^m y^n of its
    index-two-abelian presentation with x = a, y = a^-1 b), and ``Cm``
    (finite cyclic of order m, generator t).
    """

    def __init__(self, kind: str, m: int | None = None):
        if kind not in ("Z", "Z2", "K", "Cm"):
            raise ValueError(f"unknown fixture kind {kind!r}")
        self.kind = kind
        self.m = m
        self.finite = kind == "Cm"
        if kind == "Z":
            self.gen_names = ["t"]
        elif kind == "Z2":
            self.gen_names = ["x", "y"]
        elif kind == "K":
            self.gen_names = ["a", "b"]
        else:
            if not m or m < 1:
                raise ValueError("Cm needs a positive order")
            self.gen_names = ["t"]

    def identity(self):
        if self.kind in ("Z", "Cm"):
            return 0
        return (0, 0)

    def gen(self, name):
        if name not in self.gen_names:
            raise KeyError(name)
        if self.kind in ("Z", "Cm"):
            return 1 % self.m if self.kind == "Cm" else 1
        if self.kind == "Z2":
            return (1, 0) if name == "x" else (0, 1)
        return (1, 0) if name == "a" else (1, 1)  # b = x y

    def mul(self, k1, k2):
        if self.kind == "Z":
            return k1 + k2
        if self.kind == "Cm":
            return (k1 + k2) % self.m
        if self.kind == "Z2":
            return (k1[0] + k2[0], k1[1] + k2[1])
        m, n = k1
        p, q = k2
        return (m + p, (n if p % 2 == 0 else -n) + q)

    def inv(self, k):
        if self.kind == "Z":
            return -k
        if self.kind == "Cm":
            return (-k) % self.m
        if self.kind == "Z2":
            return (-k[0], -k[1])
        m, n = k
        return (-m, -n if m % 2 == 0 else n)

    def eval_word(self, word):
        k = self.identity()
        for name, e in word:
            g = self.gen(name)
            k = self.mul(k, g if e > 0 else self.inv(g))
        return k

    def key_word(self, key):
        if self.kind in ("Z", "Cm"):
            e = 1 if key >= 0 else -1
            return tuple(("t", e) for _ in range(abs(key)))
        if self.kind == "Z2":
            a, b = key
            return tuple([("x", 1 if a > 0 else -1)] * abs(a)
                         + [("y", 1 if b > 0 else -1)] * abs(b))
        m, n = key
        word = [("a", 1 if m > 0 else -1)] * abs(m)
        y_word = (("a", -1), ("b", 1))
        y_inv = (("b", -1), ("a", 1))
        word.extend((y_word if n > 0 else y_inv) * abs(n))
        return tuple(word)

    def relator_words(self):
        if self.kind == "Z":
            return []
        if self.kind == "Z2":
            return [parse_word("x y x- y-")]
        if self.kind == "K":
            return [parse_word("a a b- b-")]
        return [tuple(("t", 1) for _ in range(self.m))]

    def label(self, key) -> str:
        if self.kind in ("Z", "Cm"):
            return f"t^{key}" if key not in (0, 1) else ("e" if key == 0 else "t")
        names = self.gen_names if self.kind == "Z2" else ("x", "y")
        a, b = key
        if a == 0 and b == 0:
            return "e"
        parts = []
        if a:
            parts.append(f"{names[0]}^{a}" if a != 1 else names[0])
        if b:
            parts.append(f"{names[1]}^{b}" if b != 1 else names[1])
        return " ".join(parts)

    def all_keys(self):
        if self.kind != "Cm":
            raise ValueError("infinite group has no key enumeration")
        return list(range(self.m))

    def ball(self, radius):
        if self.kind == "Cm":
            return self.all_keys()
        if self.kind == "Z":
            return list(range(-radius, radius + 1))
        out = []
        for a in range(-radius, radius + 1):
            for b in range(-radius, radius + 1):
                out.append((a, b))
        return out


class ProductCalculus:
    """Direct product of two calculi; generator names get factor suffixes."""

    def __init__(self, left, right, suffixes=("1", "2")):
        self.left = left
        self.right = right
        self.suffixes = suffixes
        self.finite = getattr(left, "finite", False) and getattr(right, "finite", False)
        self.gen_names = [n + suffixes[0] for n in left.gen_names] + \
                         [n + suffixes[1] for n in right.gen_names]

    def _split(self, name):
        for base in self.left.gen_names:
            if name == base + self.suffixes[0]:
                return 0, base
        for base in self.right.gen_names:
            if name == base + self.suffixes[1]:
                return 1, base
        raise KeyError(name)

    def identity(self):
        return (self.left.identity(), self.right.identity())

    def gen(self, name):
        side, base = self._split(name)
        if side == 0:
            return (self.left.gen(base), self.right.identity())
        return (self.left.identity(), self.right.gen(base))

    def mul(self, k1, k2):
        return (self.left.mul(k1[0], k2[0]), self.right.mul(k1[1], k2[1]))

    def inv(self, k):
        return (self.left.inv(k[0]), self.right.inv(k[1]))

    def eval_word(self, word):
        k = self.identity()
        for name, e in word:
            g = self.gen(name)
            k = self.mul(k, g if e > 0 else self.inv(g))
        return k

    def rename_left(self, word):
        return tuple((n + self.suffixes[0], e) for n, e in word)

    def rename_right(self, word):
        return tuple((n + self.suffixes[1], e) for n, e in word)

    def key_word(self, key):
        return self.rename_left(self.left.key_word(key[0])) + \
            self.rename_right(self.right.key_word(key[1]))

    def relator_words(self):
        rels = [self.rename_left(w) for w in self.left.relator_words()]
        rels += [self.rename_right(w) for w in self.right.relator_words()]
        for ln in self.left.gen_names:
            for rn in self.right.gen_names:
                a = ln + self.suffixes[0]
                b = rn + self.suffixes[1]
                rels.append(((a, 1), (b, 1), (a, -1), (b, -1)))
        return rels

    def label(self, key) -> str:
        return f"({self.left.label(key[0])},{self.right.label(key[1])})"

    def all_keys(self):
        return [(a, b) for a in self.left.all_keys() for b in self.right.all_keys()]

    def ball(self, radius):
        return [(a, b) for a in self.left.ball(radius)
                for b in self.right.ball(radius)]


# -- ring elements as plain dicts key -> coefficient -------------------------


def ring_zero():
    return {}

def ring_one(cal):
    return {cal.identity(): 1}


def ring_from_word(cal, word, coeff=1):
    return {cal.eval_word(word): coeff}


def ring_add(a, b):
    out = dict(a)
    for k, c in b.items():
        c2 = out.get(k, 0) + c
        if c2:
            out[k] = c2
        else:
            out.pop(k, None)
    return out


def ring_neg(a):
    return {k: -c for k, c in a.items()}


def ring_scale(a, n):
    if n == 0:
        return {}
    return {k: n * c for k, c in a.items()}


def ring_mul(cal, a, b):
    out = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = cal.mul(k1, k2)
            c = out.get(k, 0) + c1 * c2
            if c:
                out[k] = c
            else:
                out.pop(k, None)
    return out


def ring_augment(a) -> int:
    """Sum of coefficients (image under the augmentation)."""
    return sum(a.values())


def ring_embed(cal_from, cal_to, a, key_map):
    """Push a ring element along an injective key map."""
    out = {}
    for k, c in a.items():
        out[key_map(k)] = c
    return out


class GroupRingMatrix:
    """Sparse matrix with group-ring entries; represents a map of free
    modules F_cols -> F_rows by e_k -> sum_j entry[j,k] e_j."""

    def __init__(self, cal, rows: int, cols: int, entries=None):
        self.cal = cal
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), elt in entries.items():
                if elt:
                    self.entries[(i, j)] = dict(elt)

    def entry(self, i, j):
        return self.entries.get((i, j), {})

    def set_entry(self, i, j, elt):
        if elt:
            self.entries[(i, j)] = dict(elt)
        else:
            self.entries.pop((i, j), None)

    def compose(self, inner: "GroupRingMatrix") -> "GroupRingMatrix":
        """self o inner; inner's coefficients multiply from the left,
        matching the left-module convention."""
        if self.cols != inner.rows:
            raise ValueError("composition shape mismatch")
        out = GroupRingMatrix(self.cal, self.rows, inner.cols)
        for (v, k), b in inner.entries.items():
            for u in range(self.rows):
                a = self.entries.get((u, v))
                if a:
                    prod = ring_mul(self.cal, b, a)
                    out.set_entry(u, k, ring_add(out.entry(u, k), prod))
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def map(self, fn) -> "GroupRingMatrix":
        out = GroupRingMatrix(self.cal, self.rows, self.cols)
        for (i, j), elt in self.entries.items():
            out.set_entry(i, j, fn(elt))
        return out

    def to_jsonable(self):
        ent = {}
        for (i, j), elt in sorted(self.entries.items()):
            ent[f"{i},{j}"] = sorted(
                (word_to_text(self.cal.key_word(k)), c) for k, c in elt.items()
            )
        return {"rows": self.rows, "cols": self.cols, "entries": ent}

    @classmethod
    def from_jsonable(cls, cal, obj) -> "GroupRingMatrix":
        out = cls(cal, obj["rows"], obj["cols"])
        for key, pairs in obj["entries"].items():
            i, j = map(int, key.split(","))
            elt = {}
            for text, c in pairs:
                elt = ring_add(elt, ring_from_word(cal, parse_word(text), c))
            out.set_entry(i, j, elt)
        return out
