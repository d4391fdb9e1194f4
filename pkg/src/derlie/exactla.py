"""Exact sparse linear algebra over arbitrary-precision rationals.

Ranks, kernels and homology of finite complexes, used as the computational
substrate by every other module.  All values are immutable after
construction and all operations are pure, so independent matrices may be
processed in parallel.

Elimination is fraction-free (Bareiss-style): rows are scaled to integers
on entry and row combinations keep integer entries, normalized by content
gcd.  Pivoting scans columns in their natural order and breaks ties by
largest absolute pivot value, so results do not depend on entry insertion
order.  When fill-in of the active submatrix exceeds 50% the elimination
switches to a dense integer representation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Rational = Fraction

DENSE_FILL_THRESHOLD = 0.5
_DENSE_MIN_CELLS = 64


class ExactlaError(Exception):
    pass


class SparseMatrix:
    """Sparse matrix over Q; zero entries are never stored."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ExactlaError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        clean = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ExactlaError(f"index ({r},{c}) out of range for {rows}x{cols}")
                v = Fraction(v)
                if v != 0:
                    clean[(r, c)] = v
        self.entries = clean

    def __getitem__(self, rc):
        return self.entries.get(rc, Fraction(0))

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"

    def is_zero(self):
        return not self.entries

    def transpose(self):
        return SparseMatrix(self.cols, self.rows,
                            {(c, r): v for (r, c), v in self.entries.items()})

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def col_dicts(self):
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def mul_vec(self, vec):
        """Matrix times sparse vector (dict col -> value)."""
        out = {}
        for (r, c), v in self.entries.items():
            x = vec.get(c)
            if x:
                out[r] = out.get(r, Fraction(0)) + v * x
        return {r: v for r, v in out.items() if v != 0}

    def __mul__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ExactlaError("inner dimensions do not match")
        rows_self = self.row_dicts()
        rows_other = other.row_dicts()
        out = {}
        for r in range(self.rows):
            acc = {}
            for k, a in rows_self[r].items():
                for c, b in rows_other[k].items():
                    acc[c] = acc.get(c, Fraction(0)) + a * b
            for c, v in acc.items():
                if v != 0:
                    out[(r, c)] = v
        return SparseMatrix(self.rows, other.cols, out)

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ExactlaError("shapes do not match")
        out = dict(self.entries)
        for rc, v in other.entries.items():
            s = out.get(rc, Fraction(0)) + v
            if s == 0:
                out.pop(rc, None)
            else:
                out[rc] = s
        return SparseMatrix(self.rows, self.cols, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, a):
        a = Fraction(a)
        if a == 0:
            return SparseMatrix(self.rows, self.cols, {})
        return SparseMatrix(self.rows, self.cols,
                            {rc: a * v for rc, v in self.entries.items()})

    @staticmethod
    def identity(n):
        return SparseMatrix(n, n, {(i, i): Fraction(1) for i in range(n)})

    @staticmethod
    def from_dense(rows_list):
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        ent = {}
        for r, row in enumerate(rows_list):
            for c, v in enumerate(row):
                if v:
                    ent[(r, c)] = Fraction(v)
        return SparseMatrix(rows, cols, ent)

    @staticmethod
    def from_columns(cols_list, rows):
        ent = {}
        for c, col in enumerate(cols_list):
            for r, v in col.items():
                if v:
                    ent[(r, c)] = Fraction(v)
        return SparseMatrix(rows, len(cols_list), ent)

    def to_dense(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def to_text(self):
        """Line-based fixture format `rows cols` header then `row col num/den` lines."""
        lines = [f"{self.rows} {self.cols}"]
        for (r, c) in sorted(self.entries):
            v = self.entries[(r, c)]
            lines.append(f"{r} {c} {v.numerator}/{v.denominator}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text):
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        rows, cols = map(int, lines[0].split())
        ent = {}
        for ln in lines[1:]:
            r, c, frac = ln.split()
            ent[(int(r), int(c))] = Fraction(frac)
        return SparseMatrix(rows, cols, ent)


def _int_rows(m):
    """Row dicts with integer entries; row scaling preserves rank and kernel."""
    rows = [dict() for _ in range(m.rows)]
    for (r, c), v in m.entries.items():
        rows[r][c] = v
    out = []
    for row in rows:
        if not row:
            out.append({})
            continue
        den = 1
        for v in row.values():
            den = den * v.denominator // gcd(den, v.denominator)
        ints = {c: int(v * den) for c, v in row.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if g > 1:
            ints = {c: v // g for c, v in ints.items()}
        out.append(ints)
    return out


_BIG = 1 << 64


def _normalize_row(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _maybe_normalize(row):
    # gcd extraction is only worth its cost once entries grow large
    for v in row.values():
        if v > _BIG or v < -_BIG:
            return _normalize_row(row)
    return row


def _dense_echelon(rows, c0, cols):
    """Dense fraction-free echelon on integer rows over columns c0..cols-1.

    rows: list of (tag, row_dict).  Same pivot policy as the sparse path.
    Returns list of (pivot_col, row_dict).
    """
    width = cols - c0
    dense = []
    for tag, row in rows:
        lst = [0] * width
        for c, v in row.items():
            lst[c - c0] = v
        dense.append((tag, lst))
    pivots = []
    for j in range(width):
        best = None
        for idx, (tag, lst) in enumerate(dense):
            v = lst[j]
            if v and (best is None or abs(v) > abs(dense[best][1][j])
                      or (abs(v) == abs(dense[best][1][j]) and tag < dense[best][0])):
                best = idx
        if best is None:
            continue
        tag, piv = dense.pop(best)
        pv = piv[j]
        for _, lst in dense:
            a = lst[j]
            if not a:
                continue
            g = gcd(a, pv)
            ma, mb = pv // g, a // g
            for k in range(j, width):
                lst[k] = lst[k] * ma - piv[k] * mb
            gg = 0
            for k in range(j, width):
                gg = gcd(gg, lst[k])
                if gg == 1:
                    break
            if gg > 1:
                for k in range(j, width):
                    lst[k] //= gg
        pivots.append((j + c0, {k + c0: v for k, v in enumerate(piv) if v}))
    return pivots


def _echelon(rows, cols):
    """Row echelon with deterministic column-order pivoting.

    Scans columns left to right; among rows whose current leading column is
    the scanned one, the largest |leading value| wins (then lowest original
    row index).  Falls back to a dense representation when fill-in of the
    pending rows exceeds DENSE_FILL_THRESHOLD.  Returns (pivot_col, row)s.
    """
    buckets = {}
    for i, row in enumerate(rows):
        if row:
            buckets.setdefault(min(row), []).append((i, row))
    next_tag = len(rows)
    pivots = []
    c = 0
    while c < cols:
        bucket = buckets.pop(c, None)
        if not bucket:
            c += 1
            continue
        pending = len(bucket) + sum(len(b) for b in buckets.values())
        cells = (cols - c) * pending
        if cells >= _DENSE_MIN_CELLS:
            nnz = sum(len(r) for _, r in bucket)
            nnz += sum(len(r) for b in buckets.values() for _, r in b)
            if nnz > DENSE_FILL_THRESHOLD * cells:
                rest = bucket + [ir for b in buckets.values() for ir in b]
                rest.sort(key=lambda ir: ir[0])
                return pivots + _dense_echelon(rest, c, cols)
        bucket.sort(key=lambda ir: (-abs(ir[1][c]), ir[0]))
        _, piv = bucket[0]
        pivots.append((c, piv))
        pv = piv[c]
        for tag, row in bucket[1:]:
            a = row[c]
            g = gcd(a, pv)
            ma, mb = pv // g, a // g
            if ma != 1:
                for col in row:
                    row[col] *= ma
            for col, v in piv.items():
                nv = row.get(col, 0) - v * mb
                if nv:
                    row[col] = nv
                else:
                    row.pop(col, None)
            row.pop(c, None)
            row = _normalize_row(row)
            if row:
                buckets.setdefault(min(row), []).append((next_tag, row))
                next_tag += 1
        c += 1
    return pivots


def rank_kernel(m):
    """Rank and a deterministic kernel basis of a sparse matrix.

    Returns (rank, basis) where basis is a list of sparse vectors
    (dict col -> Fraction), primitive integer vectors with positive leading
    entry.  rank + len(basis) == m.cols always.
    """
    pivots = _echelon(_int_rows(m), m.cols)
    rank = len(pivots)
    pivot_cols = {c for c, _ in pivots}
    free_cols = [c for c in range(m.cols) if c not in pivot_cols]
    # Back-substitution per free column, in reverse pivot order.
    pivots_sorted = sorted(pivots, key=lambda pr: -pr[0])
    basis = []
    for fc in free_cols:
        x = {fc: Fraction(1)}
        for pc, prow in pivots_sorted:
            s = Fraction(0)
            for c, v in prow.items():
                if c == pc:
                    continue
                xv = x.get(c)
                if xv:
                    s += v * xv
            if s:
                x[pc] = -s / prow[pc]
        den = 1
        for v in x.values():
            den = den * v.denominator // gcd(den, v.denominator)
        ints = {c: int(v * den) for c, v in x.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if g > 1:
            ints = {c: v // g for c, v in ints.items()}
        lead = min(ints)
        if ints[lead] < 0:
            ints = {c: -v for c, v in ints.items()}
        basis.append({c: Fraction(v) for c, v in ints.items()})
    return rank, basis


def rank(m):
    return len(_echelon(_int_rows(m), m.cols))


def solve(m, b):
    """One solution x of m x = b (dict col -> Fraction), or None if inconsistent."""
    aug_cols = m.cols + 1
    rows = [dict() for _ in range(m.rows)]
    for (r, c), v in m.entries.items():
        rows[r][c] = v
    for r, v in b.items():
        if v:
            rows[r][m.cols] = rows[r].get(m.cols, Fraction(0)) + v
    aug = SparseMatrix(m.rows, aug_cols,
                       {(r, c): v for r, row in enumerate(rows) for c, v in row.items()})
    pivots = _echelon(_int_rows(aug), aug_cols)
    for pc, _ in pivots:
        if pc == m.cols:
            return None
    # each echelon row encodes sum(prow[c] x[c]) = prow[bcol]
    x = {}
    for pc, prow in sorted(pivots, key=lambda pr: -pr[0]):
        s = Fraction(prow.get(m.cols, 0))
        for c, v in prow.items():
            if c in (pc, m.cols):
                continue
            xv = x.get(c)
            if xv:
                s -= v * xv
        if s:
            x[pc] = s / prow[pc]
        # free columns stay 0 (deterministic particular solution)
    return x


class Echelon:
    """Incremental echelon span with coordinate tracking.

    Rows are kept as primitive integer vectors and reduced fraction-free;
    rational bookkeeping happens only at the boundary.  insert(v) reduces v
    against the current span; a nonzero residue becomes a new basis row.
    coords(v) expresses v in the inserted generators when v lies in the span
    (else None).
    """

    def __init__(self):
        self.rows = []        # (pivot col, primitive int row dict, combo dict)
        self.ngens = 0

    @staticmethod
    def _to_int(v):
        den = 1
        for x in v.values():
            x = Fraction(x)
            den = den * x.denominator // gcd(den, x.denominator)
        out = {}
        for c, x in v.items():
            x = Fraction(x)
            iv = int(x * den)
            if iv:
                out[c] = iv
        return out, Fraction(1, den)

    def _reduce_int(self, v, factor, combo):
        """Reduce int row v in place; keeps v_true = factor * v and combo in sync."""
        for pc, prow, pcombo in self.rows:
            a = v.get(pc)
            if not a:
                continue
            b = prow[pc]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            if ma != 1:
                for c in v:
                    v[c] *= ma
                factor = factor / ma
                if combo is not None:
                    for k in combo:
                        combo[k] *= ma
            for c, x in prow.items():
                nv = v.get(c, 0) - mb * x
                if nv:
                    v[c] = nv
                else:
                    v.pop(c, None)
            if combo is not None:
                for k, x in pcombo.items():
                    nv = combo.get(k, Fraction(0)) - mb * x
                    if nv:
                        combo[k] = nv
                    else:
                        combo.pop(k, None)
            gg = 0
            for x in v.values():
                gg = gcd(gg, x)
                if gg == 1:
                    break
            if gg > 1:
                for c in v:
                    v[c] //= gg
                factor = factor * gg
                if combo is not None:
                    for k in combo:
                        combo[k] = Fraction(combo[k], gg)
        return v, factor, combo

    def insert(self, v):
        """Returns True if v enlarged the span."""
        iv, f0 = self._to_int(v)
        combo = {self.ngens: Fraction(1) / f0}
        self.ngens += 1
        iv, factor, combo = self._reduce_int(iv, f0, combo)
        if not iv:
            return False
        if iv[min(iv)] < 0:
            iv = {c: -x for c, x in iv.items()}
            combo = {k: -x for k, x in combo.items()}
        pc = min(iv)
        self.rows.append((pc, iv, combo))
        self.rows.sort(key=lambda t: t[0])
        return True

    def contains(self, v):
        iv, f0 = self._to_int(v)
        res, _, _ = self._reduce_int(iv, f0, None)
        return not res

    def residue(self, v):
        iv, f0 = self._to_int(v)
        res, factor, _ = self._reduce_int(iv, f0, None)
        return {c: factor * x for c, x in res.items()}

    def coords(self, v):
        """Coefficients over the *inserted generators* reproducing v, or None."""
        iv, f0 = self._to_int(v)
        out = {}
        factor = f0
        for pc, prow, pcombo in self.rows:
            a = iv.get(pc)
            if not a:
                continue
            f = Fraction(a, prow[pc]) * factor
            b = prow[pc]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            if ma != 1:
                for c in iv:
                    iv[c] *= ma
                factor = factor / ma
            for c, x in prow.items():
                nv = iv.get(c, 0) - mb * x
                if nv:
                    iv[c] = nv
                else:
                    iv.pop(c, None)
            for k, x in pcombo.items():
                nv = out.get(k, Fraction(0)) + f * x
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        if iv:
            return None
        return out

    @property
    def dim(self):
        return len(self.rows)


class ComplexSlice:
    """Two composable differentials C_{n+1} -> C_n -> C_{n-1}."""

    def __init__(self, d_in, d_out):
        if d_in.rows != d_out.cols:
            raise ExactlaError("inner dimensions incompatible")
        self.d_in = d_in
        self.d_out = d_out

    def check(self):
        if not (self.d_out * self.d_in).is_zero():
            raise ExactlaError("d_out o d_in != 0")


def homology_dims(s):
    """dim ker(d_out) - rank(d_in) for a well-formed slice."""
    s.check()
    ker_dim = s.d_out.cols - rank(s.d_out)
    return ker_dim - rank(s.d_in)
