"""Free graded Lie algebras on generators of one fixed degree.

Generators all sit in degree gen_degree >= 1 (the geometric d-1), of either
parity.  Basis in word length k: standard bracketings b(w) of Lyndon words
w, plus, when the generators are odd, squares [b(u), b(u)] of odd-degree
Lyndon words u (the graded-Lyndon extension).  Normal forms come from a
rewriting system built on graded antisymmetry and Jacobi; sizes are checked
against an independent PBW generating-function oracle.

Every computation is blocked by the letter-count multidegree, which the
bracket preserves; this keeps exact elimination cheap at word length 6 on
six generators.

All values are immutable after construction; operations are pure.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb

from .exactla import Echelon, SparseMatrix, rank_kernel


class GradedLieError(Exception):
    pass


def koszul(p, q):
    """Sign (-1)^{pq} as an int."""
    return -1 if (p % 2) and (q % 2) else 1


class GeneratorSet:
    """Ordered generators of one degree; owns normal-form caches.

    The ordering of `names` is the Lyndon order.  Basis keys are
    ('w', word) for the standard bracketing of a Lyndon word (a tuple of
    generator indices) and ('q', word) for the square [b(w), b(w)] of an
    odd-degree Lyndon word.
    """

    def __init__(self, names, gen_degree):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise GradedLieError("generator names must be distinct")
        if gen_degree < 1:
            raise GradedLieError("gen_degree must be >= 1")
        self.names = names
        self.gen_degree = gen_degree
        self.parity = gen_degree % 2
        self.n = len(names)
        self._lyndon = {}
        self._stdfact = {}
        self._bk_memo = {}
        self._tensor_memo = {}
        self._dynkin_memo = {}

    def __repr__(self):
        return f"GeneratorSet({list(self.names)}, deg={self.gen_degree})"

    def __eq__(self, other):
        return (isinstance(other, GeneratorSet) and self.names == other.names
                and self.gen_degree == other.gen_degree)

    def __hash__(self):
        return hash((self.names, self.gen_degree))

    def index(self, name):
        return self.names.index(name)

    # -- word combinatorics ------------------------------------------------

    def lyndon_words(self, k):
        """All Lyndon words of length k over the generator alphabet, lex order."""
        if k not in self._lyndon:
            self._lyndon[k] = tuple(_duval(self.n, k)) if self.n and k >= 1 else ()
        return self._lyndon[k]

    def std_factorization(self, w):
        """Standard factorization (u, v): v is the longest proper Lyndon suffix."""
        if w in self._stdfact:
            return self._stdfact[w]
        if len(w) < 2:
            raise GradedLieError("letters have no factorization")
        for i in range(1, len(w)):
            if _is_lyndon(w[i:]):
                res = (w[:i], w[i:])
                break
        else:  # pragma: no cover - every Lyndon word has one
            raise GradedLieError(f"no standard factorization for {w}")
        self._stdfact[w] = res
        return res

    # -- degrees -----------------------------------------------------------

    def key_length(self, key):
        tag, w = key
        return len(w) * (2 if tag == "q" else 1)

    def key_degree(self, key):
        return self.key_length(key) * self.gen_degree

    def key_multidegree(self, key):
        tag, w = key
        counts = [0] * self.n
        for a in w:
            counts[a] += 1
        if tag == "q":
            counts = [2 * c for c in counts]
        return tuple(counts)

    def basis_keys(self, k):
        """Ordered basis of the word-length-k component."""
        if k < 1:
            return ()
        keys = [("w", w) for w in self.lyndon_words(k)]
        if self.parity == 1 and k % 2 == 0:
            half = k // 2
            if half % 2 == 1:  # square [u,u] exists iff |u| odd
                keys += [("q", u) for u in self.lyndon_words(half)]
        return tuple(keys)

    def block_keys(self, k):
        """Basis keys of length k grouped by multidegree, deterministic order."""
        blocks = {}
        for key in self.basis_keys(k):
            blocks.setdefault(self.key_multidegree(key), []).append(key)
        return blocks

    # -- bracket normal form -----------------------------------------------

    def bracket_keys(self, k1, k2):
        """Normal form of [b(k1), b(k2)] as a dict key -> Fraction."""
        memo = self._bk_memo
        pair = (k1, k2)
        if pair in memo:
            return memo[pair]
        d1 = self.key_degree(k1)
        d2 = self.key_degree(k2)
        if k1 == k2:
            if d1 % 2 == 0:
                res = {}
            elif k1[0] == "w":
                res = {("q", k1[1]): Fraction(1)}
            else:  # squares have even degree, handled above
                res = {}
        elif k1[0] == "q" or k2[0] == "q":
            # Rewriting with squares can loop; compute in tensor coordinates.
            t1, t2 = self.expand_key(k1), self.expand_key(k2)
            s = koszul(d1, d2)
            acc = {}
            for wa, ca in t1.items():
                for wb, cb in t2.items():
                    _acc(acc, wa + wb, ca * cb)
                    _acc(acc, wb + wa, -s * ca * cb)
            res = self.lie_from_tensor(acc)
        else:
            u, v = k1[1], k2[1]
            if u > v:
                c = -koszul(d1, d2)
                res = _scale(self.bracket_keys(k2, k1), Fraction(c))
            elif len(u) == 1 or self.std_factorization(u)[1] >= v:
                res = {("w", u + v): Fraction(1)}
            else:
                # [[u1,u2],v] = [u1,[u2,v]] - (-1)^{|u1||u2|} [u2,[u1,v]]
                u1, u2 = self.std_factorization(u)
                ku1, ku2 = ("w", u1), ("w", u2)
                t1 = self.bracket_key_elem(ku1, self.bracket_keys(ku2, k2))
                t2 = self.bracket_key_elem(ku2, self.bracket_keys(ku1, k2))
                s = koszul(self.key_degree(ku1), self.key_degree(ku2))
                res = _sub(t1, _scale(t2, Fraction(s)))
        memo[pair] = res
        return res

    def bracket_key_elem(self, key, terms):
        out = {}
        for k2, c in terms.items():
            for k3, c3 in self.bracket_keys(key, k2).items():
                _acc(out, k3, c * c3)
        return out

    def bracket_terms(self, t1, t2):
        out = {}
        for k1, c1 in t1.items():
            for k2, c2 in t2.items():
                for k3, c3 in self.bracket_keys(k1, k2).items():
                    _acc(out, k3, c1 * c2 * c3)
        return out

    # -- tensor expansion and the Dynkin map --------------------------------

    def expand_key(self, key):
        """Expansion of a basis element in tensor coordinates (dict word -> Fraction)."""
        memo = self._tensor_memo
        if key in memo:
            return memo[key]
        tag, w = key
        if tag == "w" and len(w) == 1:
            res = {w: Fraction(1)}
        else:
            if tag == "q":
                a = b = self.expand_key(("w", w))
                da = db = len(w) * self.gen_degree
            else:
                u, v = self.std_factorization(w)
                a = self.expand_key(("w", u))
                b = self.expand_key(("w", v))
                da = len(u) * self.gen_degree
                db = len(v) * self.gen_degree
            s = koszul(da, db)
            res = {}
            for wa, ca in a.items():
                for wb, cb in b.items():
                    _acc(res, wa + wb, ca * cb)
                    _acc(res, wb + wa, -s * ca * cb)
        memo[key] = res
        return res

    def expand_terms(self, terms):
        out = {}
        for key, c in terms.items():
            for w, cw in self.expand_key(key).items():
                _acc(out, w, c * cw)
        return out

    def lie_from_tensor(self, tdict):
        """Re-express a tensor-coordinate Lie element in the graded-Lyndon basis."""
        if not tdict:
            return {}
        out = {}
        by_block = {}
        for w, c in tdict.items():
            counts = [0] * self.n
            for a in w:
                counts[a] += 1
            by_block.setdefault((len(w), tuple(counts)), {})[w] = c
        for (k, md), part in by_block.items():
            ech, keys, index = self._expansion_block(k, md)
            vec = {}
            for w, c in part.items():
                vec[index.setdefault(w, len(index))] = c
            coords = ech.coords(vec)
            if coords is None:
                raise GradedLieError("tensor element is not in the Lie subspace")
            for i, c in coords.items():
                _acc(out, keys[i], c)
        return out

    def _expansion_block(self, k, md):
        cache = getattr(self, "_expblock", None)
        if cache is None:
            cache = self._expblock = {}
        if (k, md) in cache:
            return cache[(k, md)]
        keys = self.block_keys(k).get(md, [])
        ech = Echelon()
        index = {}
        for key in keys:
            vec = {}
            for w, c in self.expand_key(key).items():
                vec[index.setdefault(w, len(index))] = c
            if not ech.insert(vec):  # pragma: no cover - basis is independent
                raise GradedLieError("dependent basis expansion")
        cache[(k, md)] = (ech, list(keys), index)
        return cache[(k, md)]

    def dynkin(self, letters):
        """Left-normed bracketing [x_{l1},[x_{l2},[...,x_{lk}]]] in normal form."""
        letters = tuple(letters)
        memo = self._dynkin_memo
        if letters in memo:
            return memo[letters]
        if not letters:
            raise GradedLieError("empty Dynkin word")
        if len(letters) == 1:
            res = {("w", letters): Fraction(1)}
        else:
            res = self.bracket_key_elem(("w", letters[:1]), self.dynkin(letters[1:]))
        memo[letters] = res
        return res


def _is_lyndon(w):
    w = tuple(w)
    if not w:
        return False
    return all(w < w[i:] for i in range(1, len(w)))


def _duval(n, k):
    """Lyndon words of length exactly k over 0..n-1, lex order (Duval)."""
    w = [0]
    while w:
        if len(w) == k:
            yield tuple(w)
        m = len(w)
        while len(w) < k:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
        if w:
            w[-1] += 1


def _acc(d, k, v):
    nv = d.get(k, Fraction(0)) + v
    if nv:
        d[k] = nv
    else:
        d.pop(k, None)


def _scale(d, c):
    if not c:
        return {}
    return {k: c * v for k, v in d.items()}


def _sub(a, b):
    out = dict(a)
    for k, v in b.items():
        _acc(out, k, -v)
    return out


class LieElement:
    """Exact-rational combination of graded-Lyndon basis elements."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms=None):
        self.alg = alg
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @staticmethod
    def generator(alg, i):
        return LieElement(alg, {("w", (i,)): Fraction(1)})

    @staticmethod
    def zero(alg):
        return LieElement(alg, {})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, LieElement) and self.alg == other.alg
                and self.terms == other.terms)

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return LieElement(self.alg, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, -v)
        return LieElement(self.alg, out)

    def __rmul__(self, c):
        return LieElement(self.alg, _scale(self.terms, Fraction(c)))

    def __neg__(self):
        return LieElement(self.alg, _scale(self.terms, Fraction(-1)))

    def _check(self, other):
        if self.alg != other.alg:
            raise GradedLieError("elements live over different generator sets")

    def word_lengths(self):
        return sorted({self.alg.key_length(k) for k in self.terms})

    def degree(self):
        """Internal degree when homogeneous, else raises."""
        degs = {self.alg.key_degree(k) for k in self.terms}
        if len(degs) > 1:
            raise GradedLieError("inhomogeneous element")
        return degs.pop() if degs else None

    def multidegree(self):
        mds = {self.alg.key_multidegree(k) for k in self.terms}
        if len(mds) > 1:
            raise GradedLieError("mixed multidegree")
        return mds.pop() if mds else None

    def __repr__(self):
        return f"LieElement({format_element(self)})"


def bracket(x, y):
    """Graded Lie bracket of two elements over the same generator set."""
    x._check(y)
    return LieElement(x.alg, x.alg.bracket_terms(x.terms, y.terms))


def lyndon_basis(alg, k):
    """Basis keys of the word-length-k component, deterministic order."""
    if k < 1:
        raise GradedLieError("word length must be >= 1")
    return list(alg.basis_keys(k))


def basis_element(alg, key):
    return LieElement(alg, {key: Fraction(1)})


def pbw_dim_oracle(alg, k):
    """Word-length dimensions from the PBW generating-function identity.

    Solves prod_{j: j*deg even} (1-t^j)^{-a_j} prod_{j: j*deg odd}
    (1+t^j)^{a_j} = 1/(1-n t) degree by degree and returns a_k.
    """
    if k < 1:
        raise GradedLieError("word length must be >= 1")
    n = alg.n
    maxk = k
    prod = [0] * (maxk + 1)
    prod[0] = 1
    a = {}
    for j in range(1, maxk + 1):
        target = n ** j
        a_j = target - prod[j]
        a[j] = a_j
        if a_j < 0:
            raise GradedLieError(f"PBW series produced negative dimension at length {j}")
        odd = (j * alg.gen_degree) % 2 == 1
        factor = [0] * (maxk + 1)
        factor[0] = 1
        for m in range(1, maxk // j + 1):
            factor[m * j] = comb(a_j, m) if odd else comb(a_j + m - 1, m)
        prod = _poly_mul(prod, factor, maxk)
    return a[k]


def _poly_mul(p, q, order):
    out = [0] * (order + 1)
    for i, pi in enumerate(p):
        if not pi:
            continue
        for j, qj in enumerate(q):
            if i + j > order:
                break
            if qj:
                out[i + j] += pi * qj
    return out


# -- presentations, ideals, quotients, centers ------------------------------


class Presentation:
    """Free algebra together with homogeneous relations (quotient target)."""

    def __init__(self, alg, relations):
        self.alg = alg
        self.relations = list(relations)
        for r in self.relations:
            r.degree()  # raises if inhomogeneous

    def __repr__(self):
        rels = ", ".join(format_element(r) for r in self.relations)
        return f"Presentation({self.alg!r}; {rels})"


class QuotientCache:
    """Ideal echelons blocked by the coarsest grading making all relations homogeneous.

    The letter-count multidegree is reduced modulo the span of the
    multidegree differences occurring inside each relation (so the hyperbolic
    relation omega, say, becomes homogeneous of weight zero).  Block labels
    are the echelon residues of multidegrees, which is a linear projection,
    so brackets still add labels and every block computation is exact.
    """

    def __init__(self, pres):
        self.pres = pres
        self.alg = pres.alg
        self._ideal = {}     # k -> dict label -> Echelon
        self._gens = {}      # k -> dict label -> list of term-dicts spanning I_k
        self._blocks = {}    # k -> dict label -> ordered keys
        diffs = Echelon()
        for r in pres.relations:
            mds = [self.alg.key_multidegree(key) for key in r.terms]
            for other in mds[1:]:
                diffs.insert({i: Fraction(other[i] - mds[0][i])
                              for i in range(self.alg.n) if other[i] != mds[0][i]})
        self._diffs = diffs

    def label(self, md):
        res = self._diffs.residue({i: Fraction(v) for i, v in enumerate(md) if v})
        return tuple(res.get(i, Fraction(0)) for i in range(self.alg.n))

    def blocks(self, k):
        if k not in self._blocks:
            blocks = {}
            for key in self.alg.basis_keys(k):
                blocks.setdefault(self.label(self.alg.key_multidegree(key)), []).append(key)
            self._blocks[k] = blocks
        return self._blocks[k]

    def _index(self, k):
        if not hasattr(self, "_idx"):
            self._idx = {}
        if k not in self._idx:
            self._idx[k] = {lb: {key: i for i, key in enumerate(keys)}
                            for lb, keys in self.blocks(k).items()}
        return self._idx[k]

    def _key_label(self, key):
        if not hasattr(self, "_klabel"):
            self._klabel = {}
        if key not in self._klabel:
            self._klabel[key] = self.label(self.alg.key_multidegree(key))
        return self._klabel[key]

    def ideal_blocks(self, k):
        if k in self._ideal:
            return self._ideal[k]
        alg = self.alg
        idx = self._index(k)
        ech = {lb: Echelon() for lb in idx}
        gens = {lb: [] for lb in idx}
        spans = []
        for r in self.pres.relations:
            if r.is_zero():
                continue
            if alg.key_length(next(iter(r.terms))) == k:
                spans.append(r.terms)
        if k >= 2:
            prev = self.ideal_gens(k - 1)
            for terms_list in prev.values():
                for terms in terms_list:
                    for i in range(alg.n):
                        br = alg.bracket_key_elem(("w", (i,)), terms)
                        if br:
                            spans.append(br)
        for terms in spans:
            lb = self._key_label(next(iter(terms)))
            vec = {idx[lb][key]: c for key, c in terms.items()}
            if ech[lb].insert(vec):
                gens[lb].append(terms)
        self._ideal[k] = ech
        self._gens[k] = gens
        return ech

    def ideal_gens(self, k):
        self.ideal_blocks(k)
        return self._gens[k]

    def ideal_dim(self, k):
        return sum(e.dim for e in self.ideal_blocks(k).values())

    def reduce(self, terms):
        """Residue of an element modulo the ideal (same word length)."""
        if not terms:
            return {}
        alg = self.alg
        k = alg.key_length(next(iter(terms)))
        blocks = self.blocks(k)
        idx = self._index(k)
        ech = self.ideal_blocks(k)
        out = {}
        by_lb = {}
        for key, c in terms.items():
            by_lb.setdefault(self._key_label(key), {})[key] = c
        for lb, part in by_lb.items():
            keys = blocks[lb]
            vec = {idx[lb][key]: c for key, c in part.items()}
            res = ech[lb].residue(vec)
            for i, c in res.items():
                out[keys[i]] = c
        return out


def ideal_basis(pres, m):
    """Basis of the word-length-m component of the ideal generated by the relations."""
    cache = pres._cache if hasattr(pres, "_cache") else QuotientCache(pres)
    pres._cache = cache
    alg = pres.alg
    out = []
    blocks = cache.blocks(m)
    echs = cache.ideal_blocks(m)
    for lb in sorted(blocks):
        keys = blocks[lb]
        ech = echs.get(lb)
        if ech is None:
            continue
        for _, row, _ in ech.rows:
            out.append(LieElement(alg, {keys[i]: c for i, c in row.items()}))
    return out


def quotient_dims(pres, maxlen):
    """Dimensions of (free algebra)/(ideal) per word length 1..maxlen."""
    cache = pres._cache if hasattr(pres, "_cache") else QuotientCache(pres)
    pres._cache = cache
    dims = []
    for k in range(1, maxlen + 1):
        total = len(pres.alg.basis_keys(k))
        dims.append(total - cache.ideal_dim(k))
    return dims


def center_up_to(pres, maxlen):
    """Representatives of central elements of the quotient, per word length <= maxlen."""
    cache = pres._cache if hasattr(pres, "_cache") else QuotientCache(pres)
    pres._cache = cache
    alg = pres.alg
    out = {}
    for k in range(1, maxlen + 1):
        found = []
        blocks = cache.blocks(k)
        cache.ideal_blocks(k + 1)
        for lb in sorted(blocks):
            keys = blocks[lb]
            nloc = len(keys)
            rows = {}
            row_index = {}
            for j, key in enumerate(keys):
                for i in range(alg.n):
                    br = alg.bracket_key_elem(key, {("w", (i,)): Fraction(1)})
                    res = cache.reduce(br)
                    for rkey, c in res.items():
                        rid = row_index.setdefault((i, rkey), len(row_index))
                        rows[(rid, j)] = c
            m = SparseMatrix(len(row_index), nloc, rows)
            _, ker = rank_kernel(m)
            # quotient by the ideal's own block
            iech = cache.ideal_blocks(k).get(lb, Echelon())
            seen = Echelon()
            for _, row, _ in iech.rows:
                seen.insert(dict(row))
            for v in ker:
                if seen.insert(dict(v)):
                    found.append(LieElement(alg, {keys[i]: c for i, c in v.items()}))
        out[k] = found
    return out


# -- textual element syntax --------------------------------------------------

_TOKEN = re.compile(r"\s*(\[|\]|,|\+|-|\*|[0-9]+(?:/[0-9]+)?|[A-Za-z_][A-Za-z_0-9]*)")


def parse_element(alg, text):
    """Parse `3/2*[[e1,f1],e2] - [e2,f2]` style element syntax."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise GradedLieError(f"cannot tokenize {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    it = iter(tokens)
    tok = [next(it, None)]

    def advance():
        tok[0] = next(it, None)

    def parse_factor():
        t = tok[0]
        if t == "[":
            advance()
            a = parse_sum()
            if tok[0] != ",":
                raise GradedLieError("expected ',' in bracket")
            advance()
            b = parse_sum()
            if tok[0] != "]":
                raise GradedLieError("expected ']'")
            advance()
            return bracket(a, b)
        if t is None or not re.match(r"[A-Za-z_]", t):
            raise GradedLieError(f"expected generator or '[', got {t!r}")
        if t not in alg.names:
            raise GradedLieError(f"unknown generator {t!r}")
        advance()
        return LieElement.generator(alg, alg.index(t))

    def parse_term():
        t = tok[0]
        coeff = Fraction(1)
        if t is not None and re.match(r"[0-9]", t):
            coeff = Fraction(t)
            advance()
            if tok[0] == "*":
                advance()
        return coeff * parse_factor()

    def parse_sum():
        sign = Fraction(1)
        if tok[0] == "-":
            sign = Fraction(-1)
            advance()
        elif tok[0] == "+":
            advance()
        acc = sign * parse_term()
        while tok[0] in ("+", "-"):
            sgn = Fraction(1) if tok[0] == "+" else Fraction(-1)
            advance()
            acc = acc + sgn * parse_term()
        return acc

    result = parse_sum()
    if tok[0] is not None:
        raise GradedLieError(f"trailing input at {tok[0]!r}")
    return result


def format_key(alg, key):
    tag, w = key

    def btext(word):
        if len(word) == 1:
            return alg.names[word[0]]
        u, v = alg.std_factorization(word)
        return f"[{btext(u)},{btext(v)}]"

    if tag == "w":
        return btext(w)
    return f"[{btext(w)},{btext(w)}]"


def format_element(e):
    if not e.terms:
        return "0"
    parts = []
    for key in sorted(e.terms, key=lambda k: (e.alg.key_length(k), k)):
        c = e.terms[key]
        txt = format_key(e.alg, key)
        if c == 1:
            parts.append(txt)
        elif c == -1:
            parts.append(f"-{txt}")
        else:
            parts.append(f"{c}*{txt}")
    out = parts[0]
    for p in parts[1:]:
        out += f" + {p}" if not p.startswith("-") else f" - {p[1:]}"
    return out
