"""Symbolic-language bookkeeping: complexity tables, bispecial extension
counts, the second-difference identity, and the complexity-vs-diagonal
formula audits.

A `Language` is a prefix/suffix-closed collection of words over a finite
alphabet together with per-word one-letter extension data.  Counting
identities are only meaningful for exactly enumerated languages; sampled
languages are lower bounds and are refused by the audits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

EXACT = "exact"
SAMPLED = "sampled-lower-bound"


class LanguageError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """BFS word budget exhausted; carries the partial result."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class Language:
    """Words by length with extension-count queries.

    `words` maps n -> set of letter tuples.  `counts` may extend past the
    stored lengths for enumerations that only retain cardinalities.
    """

    def __init__(self, alphabet_size: int, provenance: str = EXACT):
        self.alphabet_size = alphabet_size
        self.provenance = provenance
        self.words: dict[int, set] = {}
        self.counts: dict[int, int] = {}

    def add(self, w: tuple):
        self.words.setdefault(len(w), set()).add(tuple(w))

    def seal_counts(self):
        for n, ws in self.words.items():
            self.counts[n] = len(ws)

    def set_count(self, n: int, c: int):
        self.counts[n] = c

    @property
    def max_len(self) -> int:
        return max(self.counts) if self.counts else 0

    @property
    def max_stored_len(self) -> int:
        return max(self.words) if self.words else 0

    def count(self, n: int) -> int:
        return self.counts.get(n, 0)

    def at(self, n: int):
        return self.words.get(n, set())

    def __contains__(self, w):
        return tuple(w) in self.words.get(len(w), ())

    def _require_word(self, w):
        w = tuple(w)
        if w not in self:
            raise LanguageError("unknown word %r" % (w,))
        return w

    def m_l(self, w) -> int:
        w = self._require_word(w)
        nxt = self.words.get(len(w) + 1, ())
        return sum(1 for a in range(self.alphabet_size) if (a,) + w in nxt)

    def m_r(self, w) -> int:
        w = self._require_word(w)
        nxt = self.words.get(len(w) + 1, ())
        return sum(1 for b in range(self.alphabet_size) if w + (b,) in nxt)

    def m_b(self, w) -> int:
        w = self._require_word(w)
        nxt2 = self.words.get(len(w) + 2, ())
        return sum(1 for a in range(self.alphabet_size)
                   for b in range(self.alphabet_size) if (a,) + w + (b,) in nxt2)

    def is_bispecial(self, w) -> bool:
        return self.m_l(w) > 1 and self.m_r(w) > 1

    def bispecial(self, n: int):
        return [w for w in sorted(self.at(n)) if self.is_bispecial(w)]


def cassaigne_index(lang: Language, w) -> int:
    """m_b(w) - m_l(w) - m_r(w) + 1; vanishes for non-bispecial words."""
    return lang.m_b(w) - lang.m_l(w) - lang.m_r(w) + 1


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

@dataclass
class ComplexityTable:
    """f(n) with its first/second differences and cumulative index data."""

    ns: list
    f: list
    mu: dict = field(default_factory=dict)  # n -> sum of indices over Sigma(n)

    def phi(self, n):
        i = self.ns.index(n)
        if i + 1 >= len(self.ns):
            return None
        return self.f[i + 1] - self.f[i]

    def psi(self, n):
        a = self.phi(n)
        b = self.phi(n + 1) if (n + 1) in self.ns else None
        if a is None or b is None:
            return None
        return b - a

    def M(self, n):
        return sum(self.mu.get(k, 0) for k in range(1, n + 1))

    @classmethod
    def from_language(cls, lang: Language, max_n=None):
        top = lang.max_len if max_n is None else min(max_n, lang.max_len)
        ns = list(range(1, top + 1))
        f = [lang.count(n) for n in ns]
        mu = {}
        for n in range(1, min(top, lang.max_stored_len - 2) + 1):
            mu[n] = sum(cassaigne_index(lang, w) for w in lang.at(n))
        return cls(ns=ns, f=f, mu=mu)


@dataclass
class CassaigneReport:
    ok: bool
    audited: list
    first_fail: int | None
    detail: str


def cassaigne_audit(lang: Language, max_n: int) -> CassaigneReport:
    """Exact integer checks: (i) psi(n) equals the summed index over Sigma(n);
    (ii) f rebuilds from f(1), f(2) and the cumulative index.

    Requires extension counts one letter past the audited range, hence words
    stored up to max_n + 2.
    """
    if lang.provenance != EXACT:
        raise LanguageError("identities require an exactly enumerated language")
    if lang.max_stored_len < max_n + 2:
        raise LanguageError("need words up to length %d for audits to n=%d"
                            % (max_n + 2, max_n))
    table = ComplexityTable.from_language(lang)
    audited = []
    for n in range(1, max_n + 1):
        psi = lang.count(n + 2) - 2 * lang.count(n + 1) + lang.count(n)
        mu_sum = sum(cassaigne_index(lang, w) for w in lang.at(n))
        bis_sum = sum(cassaigne_index(lang, w) for w in lang.bispecial(n))
        if psi != mu_sum or mu_sum != bis_sum:
            return CassaigneReport(False, audited, n,
                                   "psi(%d)=%d but index sum=%d (bispecial %d)"
                                   % (n, psi, mu_sum, bis_sum))
        audited.append(n)
    f1, f2 = lang.count(1), lang.count(2)
    for n in range(1, max_n + 3):
        if n > lang.max_len:
            break
        rebuilt = f1 + (n - 1) * (f2 - f1) + sum(table.M(k) for k in range(1, n - 1))
        if n - 2 > max_n:
            continue  # M(k) beyond audited index data
        if rebuilt != lang.count(n):
            return CassaigneReport(False, audited, n,
                                   "cumulative rebuild %d != f(%d)=%d"
                                   % (rebuilt, n, lang.count(n)))
    return CassaigneReport(True, audited, None, "all identities exact")


# ---------------------------------------------------------------------------
# complexity vs generalized-diagonal formula
# ---------------------------------------------------------------------------

@dataclass
class FormulaCandidate:
    boundary: int      # 0 or 1 copies of GD(n + shift)
    boundary_shift: int
    weight: int        # 1 or 2 on the cumulative sum
    sum_shift: int
    subtract_families: bool

    def describe(self) -> str:
        parts = ["F(n) = c1 + c2*n"]
        gd = "(GD-FGD)" if self.subtract_families else "GD"
        if self.boundary:
            parts.append("+ %s(n%+d)" % (gd, self.boundary_shift)
                         if self.boundary_shift else "+ %s(n)" % gd)
        w = "" if self.weight == 1 else "2*"
        parts.append("+ %ssum_{3<=k<=n%+d} %s(k)" % (w, self.sum_shift, gd)
                      if self.sum_shift else "+ %ssum_{3<=k<=n} %s(k)" % (w, gd))
        return " ".join(parts)

    def value(self, n, GD, FGD):
        g = (lambda k: GD(k) - FGD(k)) if self.subtract_families else GD
        v = 0
        if self.boundary:
            v += g(n + self.boundary_shift)
        v += self.weight * sum(g(k) for k in range(3, n + self.sum_shift + 1))
        return v


@dataclass
class FormulaAuditReport:
    winners: list
    canonical: FormulaCandidate | None
    c1: int | None
    c2: int | None
    remark_constants: tuple
    detail: str

    @property
    def ok(self):
        return bool(self.winners)


def gd_formula_audit(F_values: dict, gd: dict, fgd: dict, chi: int,
                     max_n: int) -> FormulaAuditReport:
    """Search the finite family of index-shift conventions relating side
    complexity to cumulative diagonal counts; report every candidate that
    holds exactly on 3 <= n <= max_n with constants fitted from n = 1, 2.

    `F_values[n]` is the side complexity of n-segment orbits, `gd[k]` /
    `fgd[k]` the per-length counts of isolated / family diagonals.
    """
    def GD(k):
        return sum(gd.get(j, 0) for j in range(3, k + 1))

    def FGD(k):
        return sum(fgd.get(j, 0) for j in range(3, k + 1))

    fam_options = (False, True) if chi == 1 else (False,)
    candidates = [FormulaCandidate(b, bs, w, ss, fam)
                  for b in (0, 1)
                  for bs in ((0, 1) if b else (0,))
                  for w in (1, 2)
                  for ss in (-1, 0, 1)
                  for fam in fam_options]
    winners = []
    fitted = {}
    value_classes = {}  # value vector -> first winning candidate
    for cand in candidates:
        vec = tuple(cand.value(n, GD, FGD) for n in range(1, max_n + 1))
        x1, x2 = vec[0], vec[1]
        c2 = (F_values[2] - x2) - (F_values[1] - x1)
        c1 = F_values[1] - x1 - c2
        good = all(F_values[n] == c1 + c2 * n + vec[n - 1]
                   for n in range(3, max_n + 1))
        if good and vec not in value_classes:
            value_classes[vec] = cand
            winners.append(cand)
            fitted[id(cand)] = (c1, c2)
        elif good and cand.subtract_families and \
                not value_classes[vec].subtract_families:
            # prefer the family-aware wording of an identical formula
            idx = winners.index(value_classes[vec])
            fitted[id(cand)] = fitted.pop(id(winners[idx]))
            winners[idx] = cand
            value_classes[vec] = cand
    canonical = None
    for cand in winners:
        if cand.subtract_families == (chi == 1):
            canonical = cand
            break
    if canonical is None and winners:
        canonical = winners[0]
    c1c2 = fitted.get(id(canonical), (None, None))
    remark = (2 * F_values[1] - F_values[2], F_values[2])
    detail = ("%d candidate class(es) hold exactly" % len(winners)) if winners \
        else "no candidate matches; counts disagree with every indexing convention"
    return FormulaAuditReport(winners=winners, canonical=canonical,
                              c1=c1c2[0], c2=c1c2[1],
                              remark_constants=remark, detail=detail)


# ---------------------------------------------------------------------------
# growth fits
# ---------------------------------------------------------------------------

@dataclass
class GrowthFit:
    model: str
    exponent: float
    rate: float
    r2_poly: float
    r2_exp: float

    @property
    def r2(self):
        return self.r2_poly if self.model == "polynomial" else self.r2_exp


def _lsq(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    A = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    pred = A @ coef
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return float(coef[0]), float(coef[1]), r2


def growth_fit(ns, fs, window=None) -> GrowthFit:
    """Least-squares growth classification on a window of a positive table.

    Fits log f against log n (polynomial) and against n (exponential) and
    returns the better model by r-squared, both reported.
    """
    pairs = [(n, f) for n, f in zip(ns, fs)
             if (window is None or window[0] <= n <= window[1])]
    if len(pairs) < 2:
        raise LanguageError("fit window too small")
    if window is not None and window[1] - window[0] < 8:
        raise LanguageError("fit window must span at least 8 values of n")
    if any(f <= 0 for _, f in pairs):
        raise LanguageError("growth fits need strictly positive counts")
    xs = [n for n, _ in pairs]
    ys = [math.log(f) for _, f in pairs]
    expo, _, r2p = _lsq([math.log(n) for n in xs], ys)
    rate, _, r2e = _lsq(xs, ys)
    model = "polynomial" if r2p >= r2e else "exponential"
    return GrowthFit(model=model, exponent=expo, rate=rate,
                     r2_poly=r2p, r2_exp=r2e)


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------

def format_float(x) -> str:
    return "%.12g" % float(x)


def table_csv(lang_or_table, extra_cols=None) -> str:
    """CSV with header n,f,phi,psi,mu,M plus any extra integer columns."""
    table = (lang_or_table if isinstance(lang_or_table, ComplexityTable)
             else ComplexityTable.from_language(lang_or_table))
    extra_cols = extra_cols or {}
    header = ["n", "f", "phi", "psi", "mu", "M"] + list(extra_cols)
    lines = [",".join(header)]
    for i, n in enumerate(table.ns):
        phi = table.f[i + 1] - table.f[i] if i + 1 < len(table.ns) else ""
        psi = (table.f[i + 2] - 2 * table.f[i + 1] + table.f[i]
               if i + 2 < len(table.ns) else "")
        mu = table.mu.get(n, "")
        M = table.M(n) if n in table.mu else ""
        row = [str(n), str(table.f[i]), str(phi), str(psi), str(mu), str(M)]
        for col in extra_cols.values():
            row.append(str(col.get(n, "")))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
