"""The reachability decoder: answers reach_{G-f}(s,t) from three bundles.

All helpers work on one direction section of a bundle ('f' or 'r').  LAST
values come from the reverse section, whose positions were flipped at build
time; a comparison first <=_P last of the forward path becomes
first_fwd + first_rev <= len(P) - 1.

Every route is individually sound (each positive comparison certifies a real
replacement path); the union of routes is complete.
"""

from __future__ import annotations

from .canonical import ContinuationRecord, FaultSideLabel, SourceSideLabel, \
    decode_canonical
from .ptopf import PathFaultLabel, decode_path_fault
from .twointervals import EntryFaultLabel, EntrySideLabel, decode_entry


def _leafmost_common(sa: dict, sb: dict) -> list[str]:
    common = set(sa["pieces"]) & set(sb["pieces"])
    out = []
    for pid in common:
        kids = sa["pieces"][pid][4]
        if not any(str(k) in common for k in kids):
            out.append(pid)
    return sorted(out)


def _shares_leaf(sa: dict, sb: dict) -> bool:
    for pid in set(sa["pieces"]) & set(sb["pieces"]):
        if sa["pieces"][pid][2] == 1:
            return True
    return False


def _first_via_42(ss: dict, sf: dict, bid: int) -> int | None:
    cands: list[int] = []
    for hh in _leafmost_common(ss, sf):
        if ss["pieces"][hh][2] == 1:
            continue  # atomic leafmost common piece: shared-leaf records apply
        hprime = None
        for k in ss["pieces"][hh][4]:
            if str(k) in ss["pieces"] and str(k) not in sf["pieces"]:
                hprime = str(k)
                break
        if hprime is None:
            continue
        for (ppid, apos, a44_obj) in ss["l42"].get(str(bid), {}).get(hprime, []):
            if ppid == bid:
                cands.append(apos)
                continue
            if str(ppid) in sf["paths"]:
                cont = sf["cont"].get(f"{ppid}:{bid}")
                if cont is None:
                    continue
                rec = ContinuationRecord.from_obj(cont)
                if apos == rec.f_pos:
                    continue
                got = rec.lookup(apos)
                if got is not None:
                    cands.append(got)
                continue
            if a44_obj is None:
                continue
            flab_obj = sf["l42f"].get(f"{ppid}:{bid}")
            got = decode_canonical(
                SourceSideLabel.from_obj(a44_obj),
                FaultSideLabel.from_obj(flab_obj) if flab_obj else None)
            if got is not None:
                cands.append(got)
    return min(cands) if cands else None


def first_exact(ss: dict, sf: dict, bid: int, svert: int, fvert: int
                ) -> tuple[int | None, bool]:
    """(first_{G-f}(s,B) as a position or None, route-available?).

    Exact whenever available.  f must not lie on B.
    """
    self_pos = ss["paths"].get(str(bid), [None])[0]

    def combine(val):
        if self_pos is None:
            return val
        return self_pos if val is None else min(val, self_pos)

    rec = ss["coleaf"].get(f"{fvert}:{bid}")
    if rec is not None:
        return combine(rec[0]), True
    if fvert in ss["apexanc"]:
        rec = ss["aprec"].get(f"{fvert}:{bid}")
        if rec is None:
            return None, False
        return combine(rec[0]), True
    if svert in sf["apexanc"]:
        rec = sf["aprecR"].get(f"{svert}:{bid}")
        if rec is None:
            return None, False
        return combine(rec[0]), True
    return combine(_first_via_42(ss, sf, bid)), True


def first_sided_exact(ss: dict, sf: dict, hpid: int, bid: int,
                      svert: int, fvert: int
                      ) -> tuple[int | None, int | None, bool]:
    """(first before f, first after f) on path B with f on B."""
    fpos = sf["paths"][str(bid)][0]

    def sided(g, aft):
        return (g if (g is not None and g < fpos) else None), aft

    rec = ss["coleaf"].get(f"{fvert}:{bid}")
    if rec is not None:
        b1, b2 = sided(*rec)
        return b1, b2, True
    if fvert in ss["apexanc"]:
        rec = ss["aprec"].get(f"{fvert}:{bid}")
        if rec is None:
            return None, None, False
        b1, b2 = sided(*rec)
        return b1, b2, True
    if svert in sf["apexanc"]:
        rec = sf["aprecR"].get(f"{svert}:{bid}")
        if rec is None:
            return None, None, False
        b1, b2 = sided(*rec)
        return b1, b2, True

    key = f"{hpid}:{bid}"
    before: list[int] = []
    after: list[int] = []
    f43 = sf.get("l43f", {}).get(key, {})
    f47 = PathFaultLabel.from_obj(f43["f47"]) if "f47" in f43 else None

    def refine_from(pos: int | None, lab47_obj) -> None:
        if pos is None:
            return
        if pos < fpos:
            before.append(pos)
        elif pos > fpos:
            after.append(pos)
        if lab47_obj is not None and f47 is not None and pos != fpos:
            b, a = decode_path_fault(PathFaultLabel.from_obj(lab47_obj), f47)
            if b is not None:
                before.append(b)
            if a is not None:
                after.append(a)

    if str(bid) in ss["paths"]:
        spos = ss["paths"][str(bid)][0]
        own = ss.get("l43f", {}).get(key, {})
        refine_from(spos, own.get("f47"))

    f46map = f43.get("f46", {})
    for _hh, ents in ss.get("l43", {}).get(key, {}).items():
        for (pkey, _s, apos, payload) in ents:
            if pkey == "P":
                refine_from(apos, payload)
                continue
            fobj = f46map.get(pkey)
            if fobj is None or payload is None:
                continue
            alab = EntrySideLabel.from_obj(payload[0])
            flab = EntryFaultLabel.from_obj(fobj[0])
            b1, b2 = decode_entry(alab, flab)
            if b1 is not None:
                refine_from(b1, payload[1])
            if b2 is not None:
                if flab.successor == b2:
                    refine_from(b2, fobj[1])
                else:
                    refine_from(b2, _start_lab(payload, alab, b2))
    return (min(before) if before else None,
            min(after) if after else None, True)


def _start_lab(payload, alab: EntrySideLabel, pos: int):
    for (lo, _hi), lab in zip(alab.intervals, payload[2]):
        if lo == pos:
            return lab
    return None


def _thorup_route(ss: dict, st: dict, sf: dict) -> bool:
    for pid in set(ss["thorup"]) & set(st["thorup"]):
        finfo = sf["pieces"].get(pid)
        if finfo is not None and finfo[1] == 1:
            continue  # f interior to this piece
        ts, tt = ss["thorup"][pid], st["thorup"][pid]
        for path_id in set(ts) & set(tt):
            fs = ts[path_id][0]
            lt = tt[path_id][1]
            if fs is not None and lt is not None and fs <= lt:
                return True
    return False


def ft_reach_query(bundle_s: dict, bundle_t: dict, bundle_f: dict) -> bool:
    s, t, f = bundle_s["v"], bundle_t["v"], bundle_f["v"]
    assert s != f and t != f
    if s == t:
        return True
    ss, st, sf = bundle_s["f"], bundle_t["f"], bundle_f["f"]
    rs, rt, rf = bundle_s["r"], bundle_t["r"], bundle_f["r"]

    if _thorup_route(ss, st, sf):
        return True

    common = set(ss["pieces"]) & set(st["pieces"])
    for pid in sorted(common):
        for bid, plen in ss["sp"].get(pid, []):
            f_on = str(bid) in sf["paths"]
            if not f_on:
                a, ok = first_exact(ss, sf, bid, s, f)
                if not ok or a is None:
                    continue
                lr, ok2 = first_exact(rt, rf, bid, t, f)
                if not ok2 or lr is None:
                    continue
                if a + lr <= plen - 1:
                    return True
            else:
                if plen < 2:
                    continue
                b1, b2, ok = first_sided_exact(ss, sf, pid, bid, s, f)
                if not ok:
                    continue
                r1, r2, ok2 = first_sided_exact(rt, rf, pid, bid, t, f)
                if not ok2:
                    continue
                # rev 'after' side is the forward 'before' side
                if b1 is not None and r2 is not None and b1 + r2 <= plen - 1:
                    return True
                if b2 is not None and r1 is not None and b2 + r1 <= plen - 1:
                    return True
    return False
