"""Buchberger's algorithm for homogeneous submodules of graded free modules.

Vectors are dicts from *module codes* to coefficients.  A module code packs
(position, monomial) so that int comparison is the term-over-position order
over the ring order, ties in the monomial broken in favour of the lower
position.  When syzygies are requested every input vector carries a tracking
component in extra positions; a flag bit above the monomial field makes any
term in the original positions larger than any tracking term, so reduction
of the original part never touches the trace.  S-vectors whose original part
reduces to zero leave their trace behind as a syzygy (Schreyer's
construction read off the Buchberger run).

The computation is degree by degree (normal strategy).  Within a degree all
S-pairs are reduced before the input generators of that degree, so an input
that survives reduction is a minimal generator of the submodule.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .ring import Polynomial, PolyRing


class Frame:
    """Encoding of terms of ``S(d_0) + ... + S(d_{r-1})`` (plus tracking positions)."""

    def __init__(self, ring: PolyRing, twists: Sequence[int], track_twists: Sequence[int] = ()):
        self.ring = ring
        self.twists = tuple(twists) + tuple(track_twists)
        self.rank = len(twists)
        self.ntrack = len(track_twists)
        npos = max(1, self.rank + self.ntrack)
        self.pbits = max(1, npos.bit_length())
        self.pmax = (1 << self.pbits) - 1
        self.cbits = ring._bits + 16
        self.cmask = (1 << self.cbits) - 1
        self.fshift = self.pbits + self.cbits
        self.flag = 1 << self.fshift

    def encode(self, pos: int, code: int) -> int:
        mc = (code << self.pbits) | (self.pmax - pos)
        if pos < self.rank:
            mc |= self.flag
        return mc

    def pos(self, mc: int) -> int:
        return self.pmax - (mc & self.pmax)

    def mono(self, mc: int) -> int:
        return (mc >> self.pbits) & self.cmask

    def degree(self, mc: int) -> int:
        return self.ring.deg(self.mono(mc)) - self.twists[self.pos(mc)]

    def shift(self, code: int) -> int:
        """Amount to add to a module code to multiply it by monomial ``code``."""
        return (code - self.ring.one) << self.pbits

    # -- conversions ----------------------------------------------------------
    def vector(self, column: Sequence[Polynomial], offset: int = 0) -> dict:
        out = {}
        for i, f in enumerate(column):
            pos = i + offset
            base = (self.pmax - pos) | (self.flag if pos < self.rank else 0)
            pb = self.pbits
            for c, v in f.terms.items():
                out[(c << pb) | base] = v
        return out

    def column(self, vec: dict, offset: int = 0, length: int | None = None) -> list[Polynomial]:
        length = self.rank if length is None else length
        R = self.ring
        parts: list[dict] = [{} for _ in range(length)]
        for mc, v in vec.items():
            pos = self.pos(mc) - offset
            if 0 <= pos < length:
                parts[pos][self.mono(mc)] = v
        return [Polynomial(R, t) for t in parts]

    def vector_degree(self, vec: dict) -> int | None:
        if not vec:
            return None
        return self.degree(max(vec))

    def is_homogeneous(self, vec: dict) -> bool:
        return len({self.degree(mc) for mc in vec}) <= 1


@dataclass
class GroebnerResult:
    frame: Frame
    basis: list[dict]
    syzygies: list[dict] = field(default_factory=list)
    minimal_inputs: list[int] = field(default_factory=list)
    complete: bool = True
    max_degree: int | None = None


class Buchberger:
    """One Gröbner basis computation; see :func:`groebner`."""

    def __init__(self, frame: Frame, *, track: bool = False, ideal_criteria: bool = False):
        self.frame = frame
        self.ring = frame.ring
        self.p = self.ring.field.p
        self.track = track
        self.ideal_criteria = ideal_criteria and frame.rank == 1 and not track
        self.basis: list[dict] = []
        self.leads: list[int] = []  # module code of lead term
        self.lead_pos: list[int] = []
        self.lead_low: list[int] = []
        self.by_pos: dict[int, list[tuple[int, int, dict]]] = {}
        self.pairs: dict[tuple[int, int], int] = {}
        self.heap: list[tuple[int, int, int, int]] = []
        self.syzygies: list[dict] = []
        R = self.ring
        self._grevlex = R.order == "grevlex"
        self._full = R._full
        self._guard = R._guard

    # -- reduction ------------------------------------------------------------
    def _low(self, mono: int) -> int:
        if self._grevlex:
            return (mono & self._full) ^ self._full
        return self.ring.low(mono)

    def reduce(self, f: dict, full: bool = True) -> dict:
        """Reduce ``f`` (consumed) by the current basis; returns the remainder.

        With ``full=False`` only the leading term is reduced until it is
        irreducible.  Tracking terms are never reduced.
        """
        fr = self.frame
        p = self.p
        pb, pmax, cmask, flag = fr.pbits, fr.pmax, fr.cmask, fr.flag
        guard = self._guard
        by_pos = self.by_pos
        grevlex = self._grevlex
        full_mask = self._full
        low_of = self.ring.low
        rem: dict = {}
        while f:
            mc = max(f)
            if mc < flag:
                # only tracking terms remain
                rem.update(f)
                break
            cands = by_pos.get(pmax - (mc & pmax))
            g = None
            if cands:
                mono = (mc >> pb) & cmask
                la = ((mono & full_mask) ^ full_mask if grevlex else low_of(mono)) | guard
                for lb, lmc, cand in cands:
                    if (la - lb) & guard == guard:
                        g = cand
                        delta = mc - lmc
                        break
            c = f[mc]
            if g is None:
                if not full:
                    rem.update(f)
                    break
                rem[mc] = c
                del f[mc]
                continue
            get = f.get
            if p:
                for k, v in g.items():
                    kk = k + delta
                    nv = (get(kk, 0) - c * v) % p
                    if nv:
                        f[kk] = nv
                    else:
                        del f[kk]
            else:
                for k, v in g.items():
                    kk = k + delta
                    nv = get(kk, 0) - c * v
                    if nv:
                        f[kk] = nv
                    else:
                        del f[kk]
        return rem

    def _monic(self, f: dict) -> dict:
        lc = f[max(f)]
        if lc == 1:
            return f
        F = self.ring.field
        inv = F.inv(lc)
        p = self.p
        if p:
            return {k: (v * inv) % p for k, v in f.items()}
        return {k: v * inv for k, v in f.items()}

    # -- basis maintenance ---------------------------------------------------
    def _lcm_mc(self, i: int, j: int) -> int:
        fr = self.frame
        R = self.ring
        lm = R.lcm(fr.mono(self.leads[i]), fr.mono(self.leads[j]))
        return fr.encode(self.lead_pos[i], lm)

    def add(self, g: dict) -> int:
        """Insert a reduced nonzero vector whose lead lies in the original positions."""
        g = self._monic(g)
        fr = self.frame
        t = len(self.basis)
        lead = max(g)
        pos = fr.pos(lead)
        mono = fr.mono(lead)
        low = self._low(mono)
        self.basis.append(g)
        self.leads.append(lead)
        self.lead_pos.append(pos)
        self.lead_low.append(low)
        self._update_pairs(t)
        self.by_pos.setdefault(pos, []).append((low, lead, g))
        return t

    def _update_pairs(self, t: int) -> None:
        fr = self.frame
        R = self.ring
        guard = self._guard
        pos = self.lead_pos[t]
        lt_low = self.lead_low[t]
        same = [i for i in range(t) if self.lead_pos[i] == pos]
        # chain criterion on existing pairs
        if self.pairs:
            dead = []
            for (i, j), lmc in self.pairs.items():
                if self.lead_pos[i] != pos:
                    continue
                lcm_low = self._low(fr.mono(lmc))
                if ((lcm_low | guard) - lt_low) & guard != guard:
                    continue
                if self._lcm_mc(i, t) != lmc and self._lcm_mc(j, t) != lmc:
                    dead.append((i, j))
            for key in dead:
                del self.pairs[key]
        if not same:
            return
        cand = [(self._lcm_mc(i, t), i) for i in same]
        lows = [self._low(fr.mono(l)) for l, _ in cand]
        keep = []
        for a, (lmc, i) in enumerate(cand):
            la = lows[a] | guard
            redundant = False
            for b, (lmc2, _) in enumerate(cand):
                if b == a:
                    continue
                if (la - lows[b]) & guard == guard:
                    if lmc2 != lmc:
                        redundant = True  # a strict divisor exists
                        break
                    if b < a:
                        redundant = True  # same lcm seen earlier
                        break
            if not redundant:
                keep.append((lmc, i))
        if self.ideal_criteria:
            # product criterion, applied after M/F so equal-lcm groups are judged as one
            ones = self.ring.one
            groups: dict[int, bool] = {}
            for lmc, i in cand:
                coprime = R.gcd(fr.mono(self.leads[i]), fr.mono(self.leads[t])) == ones
                groups[lmc] = groups.get(lmc, False) or coprime
            keep = [(lmc, i) for lmc, i in keep if not groups[lmc]]
        for lmc, i in keep:
            self.pairs[(i, t)] = lmc
            deg = fr.degree(lmc)
            heapq.heappush(self.heap, (deg, lmc, t, i))

    def s_vector(self, i: int, j: int, lmc: int) -> dict:
        gi, gj = self.basis[i], self.basis[j]
        di = lmc - self.leads[i]
        dj = lmc - self.leads[j]
        p = self.p
        out = {k + di: v for k, v in gi.items()}
        get = out.get
        for k, v in gj.items():
            kk = k + dj
            nv = get(kk, 0) - v
            if p:
                nv %= p
            if nv:
                out[kk] = nv
            else:
                del out[kk]
        return out

    def next_pair_degree(self) -> int | None:
        heap = self.heap
        while heap:
            deg, lmc, j, i = heap[0]
            if self.pairs.get((i, j)) == lmc:
                return deg
            heapq.heappop(heap)
        return None

    def pop_pair(self) -> tuple[int, int, int]:
        deg, lmc, j, i = heapq.heappop(self.heap)
        del self.pairs[(i, j)]
        return i, j, lmc

    def process(self, f: dict) -> int | None:
        """Reduce ``f``; add it to the basis or record its trace as a syzygy."""
        r = self.reduce(f)
        if not r:
            return None
        if max(r) < self.frame.flag:
            if self.track:
                self.syzygies.append(r)
            return None
        return self.add(r)

    def interreduce(self) -> list[dict]:
        out = []
        for g, lead in zip(self.basis, self.leads):
            c = g[lead]
            tail = {k: v for k, v in g.items() if k != lead}
            tail = self.reduce(tail)
            tail[lead] = c
            out.append(tail)
        return out


def groebner(
    frame: Frame,
    inputs: Sequence[dict],
    *,
    track: bool = False,
    degree_bound: int | None = None,
    on_degree: Callable[[int, Buchberger], bool] | None = None,
    interreduce: bool = True,
) -> GroebnerResult:
    """Gröbner basis of the submodule generated by homogeneous ``inputs``.

    ``track`` requires ``frame.ntrack == len(inputs)``; the syzygies among the
    inputs are then returned as vectors in the tracking positions.
    ``on_degree(d, state)`` is called after each completed degree and may
    return True to stop early (the result is then flagged incomplete).
    """
    if track and frame.ntrack != len(inputs):
        raise ValueError("tracking frame must have one extra position per input")
    bb = Buchberger(frame, track=track, ideal_criteria=True)
    queue = []
    for idx, vec in enumerate(inputs):
        if not vec and not track:
            continue
        v = dict(vec)
        if track:
            v[frame.encode(frame.rank + idx, frame.ring.one)] = frame.ring.field.one
        deg = frame.degree(max(v))
        queue.append((deg, idx, v))
    queue.sort(key=lambda t: (t[0], t[1]))
    minimal = []
    q = 0
    complete = True
    last = None
    while True:
        pd = bb.next_pair_degree()
        idg = queue[q][0] if q < len(queue) else None
        if pd is None and idg is None:
            break
        d = min(x for x in (pd, idg) if x is not None)
        if degree_bound is not None and d > degree_bound:
            complete = False
            break
        while bb.next_pair_degree() == d:
            i, j, lmc = bb.pop_pair()
            bb.process(bb.s_vector(i, j, lmc))
        while q < len(queue) and queue[q][0] == d:
            _, idx, v = queue[q]
            q += 1
            if bb.process(v) is not None:
                minimal.append(idx)
        last = d
        if on_degree is not None and on_degree(d, bb):
            complete = bb.next_pair_degree() is None and q >= len(queue)
            break
    basis = bb.interreduce() if interreduce else bb.basis
    if track:
        basis = [{k: v for k, v in g.items() if k >= frame.flag} for g in basis]
    return GroebnerResult(frame, basis, bb.syzygies, minimal, complete, last)


class GroebnerBasis:
    """Reduced Gröbner basis of a submodule of ``S(d_0) + ... + S(d_{r-1})``."""

    def __init__(self, ring: PolyRing, twists: Sequence[int], vectors: Sequence[dict], complete: bool = True):
        self.ring = ring
        self.twists = tuple(twists)
        self.frame = Frame(ring, twists)
        self.complete = complete
        self._bb = Buchberger(self.frame)
        for v in vectors:
            self._bb.add(dict(v))
        self._bb.pairs.clear()
        self._bb.heap.clear()
        self.vectors = self._bb.basis

    @classmethod
    def of_columns(cls, ring: PolyRing, twists: Sequence[int], columns: Iterable[Sequence[Polynomial]], **kw) -> "GroebnerBasis":
        frame = Frame(ring, twists)
        vecs = [frame.vector(c) for c in columns]
        res = groebner(frame, vecs, **kw)
        return cls(ring, twists, res.basis, res.complete)

    def __len__(self) -> int:
        return len(self.vectors)

    def reduce_vector(self, vec: dict) -> dict:
        return self._bb.reduce(dict(vec))

    def normal_form(self, column: Sequence[Polynomial]) -> list[Polynomial]:
        if len(column) != len(self.twists):
            raise ValueError(f"vector of length {len(column)} in a rank {len(self.twists)} module")
        fr = self.frame
        return fr.column(self.reduce_vector(fr.vector(column)))

    def contains(self, column: Sequence[Polynomial]) -> bool:
        fr = self.frame
        return not self.reduce_vector(fr.vector(column))

    def lead_terms(self) -> list[tuple[int, tuple[int, ...]]]:
        fr = self.frame
        R = self.ring
        return [(fr.pos(mc), R.exponents(fr.mono(mc))) for mc in self._bb.leads]

    def lead_monomials_by_position(self) -> list[list[int]]:
        """Lead monomial codes grouped by position."""
        fr = self.frame
        out: list[list[int]] = [[] for _ in self.twists]
        for mc in self._bb.leads:
            out[fr.pos(mc)].append(fr.mono(mc))
        return out

    def columns(self) -> list[list[Polynomial]]:
        return [self.frame.column(v) for v in self.vectors]
