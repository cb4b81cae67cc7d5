"""Bulk multiplication kernels for y-monomial maps.

A "map" here is dict {exps tuple: coeff} with coeff in [1, p-1], i.e. the
y-part of an element grouped by exterior part.  Three strategies, all exact:

* plain dict loops for small products;
* vectorised numpy outer-add with exact integer accumulation for the mid
  range;
* for very large homogeneous products in <= 3 variables, Kronecker
  substitution into one big integer and a single GMP multiply (a 2-D integer
  convolution done exactly, no floating point anywhere).

The paths are cross-checked against each other in the test suite.
"""

from __future__ import annotations

import numpy as np

from .context import EXP_LIMIT, ExponentOverflowError

try:
    from gmpy2 import mpz

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    mpz = int
    HAVE_GMPY2 = False

DICT_PAIRS_MAX = 1 << 15      # below this, plain dict loops win
KRON_PAIRS_MIN = 1 << 21      # above this, try the big-int convolution
KRON_SLOTS_MAX = 4 * 10**7    # cap on the dense slot space (uint32 each)
CHUNK_PAIRS = 1 << 21         # numpy outer-add block size


def _component_maxima(m: dict) -> list[int]:
    it = iter(m)
    first = next(it)
    mx = list(first)
    for k in m:
        for i, v in enumerate(k):
            if v > mx[i]:
                mx[i] = v
    return mx


def mul_maps(p: int, nvars: int, ma: dict, mb: dict) -> dict:
    """Convolution of two y-monomial maps over F_p."""
    if not ma or not mb:
        return {}
    if len(ma) > len(mb):
        ma, mb = mb, ma

    mxa = _component_maxima(ma)
    mxb = _component_maxima(mb)
    if any(x + y >= EXP_LIMIT for x, y in zip(mxa, mxb)):
        raise ExponentOverflowError("product exponent would exceed the 64-bit range")

    pairs = len(ma) * len(mb)

    # scalar shortcut
    if len(ma) == 1:
        (ka, ca), = ma.items()
        if not any(ka):
            if ca == 1:
                return dict(mb)
            return {k: (ca * c) % p for k, c in mb.items()}

    if pairs < DICT_PAIRS_MAX:
        return _mul_dict(p, ma, mb)

    ydeg = None
    da = {sum(k) for k in ma}
    db = {sum(k) for k in mb}
    if len(da) == 1 and len(db) == 1:
        ydeg = da.pop() + db.pop()

    if pairs >= KRON_PAIRS_MIN and nvars <= 3 and HAVE_GMPY2 and ydeg is not None:
        slots = _kron_slot_count(nvars, mxa, mxb)
        if slots <= KRON_SLOTS_MAX:
            return _mul_kron(p, nvars, ma, mb, mxa, mxb, ydeg)

    return _mul_numpy(p, nvars, ma, mb, mxa, mxb, ydeg)


def mul_grouped(p: int, nvars: int, mas: list, mb: dict):
    """Convolve several y-maps against one shared map in a single pass.

    Returns a list of product maps aligned with mas, or None when the packed
    integer route is not available (the caller then multiplies per group).
    Group labels ride in the high bits of the packed keys, so one unique pass
    aggregates every group at once without mixing them."""
    mxa = [0] * nvars
    for m in mas:
        for i, v in enumerate(_component_maxima(m)):
            if v > mxa[i]:
                mxa[i] = v
    mxb = _component_maxima(mb)
    if any(x + y >= EXP_LIMIT for x, y in zip(mxa, mxb)):
        raise ExponentOverflowError("product exponent would exceed the 64-bit range")

    lbits = max(1, (len(mas) - 1).bit_length())
    widths = [max(1, (x + y).bit_length()) for x, y in zip(mxa, mxb)]
    keep_idx = list(range(nvars))
    drop = -1
    ydegs = None
    if sum(widths) + lbits > 62:
        if nvars < 2:
            return None
        db = {sum(k) for k in mb}
        if len(db) == 1:
            dbv = db.pop()
            ydegs = []
            for m in mas:
                da = {sum(k) for k in m}
                if len(da) != 1:
                    ydegs = None
                    break
                ydegs.append(da.pop() + dbv)
        if ydegs is None:
            return None
        drop = max(range(nvars), key=lambda i: widths[i])
        keep_idx = [i for i in range(nvars) if i != drop]
        widths = [widths[i] for i in keep_idx]
        if sum(widths) + lbits > 62:
            return None

    shifts = []
    acc_bits = 0
    for b in reversed(widths):  # last kept component in the low bits
        shifts.append(acc_bits)
        acc_bits += b
    shifts.reverse()
    mults = np.array([1 << s for s in shifts], dtype=np.int64)

    rows, labels, cvals = [], [], []
    for i, m in enumerate(mas):
        for k, c in m.items():
            rows.append(k)
            labels.append(i)
            cvals.append(c)
    ea = np.array(rows, dtype=np.int64).reshape(len(rows), nvars)[:, keep_idx]
    pa = ea @ mults + (np.array(labels, dtype=np.int64) << acc_bits)
    ca = np.array(cvals, dtype=np.int64)
    eb = np.array(list(mb.keys()), dtype=np.int64).reshape(len(mb), nvars)[:, keep_idx]
    pb = eb @ mults
    cb = np.fromiter(mb.values(), dtype=np.int64, count=len(mb))

    outs: list[dict] = [{} for _ in mas]
    rows_per_chunk = max(1, CHUNK_PAIRS // len(mb))
    mask_all = (1 << acc_bits) - 1
    for lo in range(0, len(pa), rows_per_chunk):
        hi = min(lo + rows_per_chunk, len(pa))
        packed = (pa[lo:hi, None] + pb[None, :]).ravel()
        coeffs = (ca[lo:hi, None] * cb[None, :]).ravel()
        uniq, inv = np.unique(packed, return_inverse=True)
        sums = np.bincount(inv.ravel(), weights=coeffs.astype(np.float64))
        sums = sums.astype(np.int64) % p
        keep = sums.nonzero()[0]
        if not keep.size:
            continue
        kk = uniq[keep]
        labs = (kk >> acc_bits).tolist()
        body = kk & mask_all
        comps = []
        shift = 0
        for b in reversed(widths):
            comps.append((body >> shift) & ((1 << b) - 1))
            shift += b
        comps.reverse()
        if drop >= 0:
            rest = np.zeros(len(kk), dtype=np.int64)
            for c in comps:
                rest += c
            fills = np.array([ydegs[l] for l in labs], dtype=np.int64) - rest
            comps.insert(drop, fills)
        mat = np.stack(comps, axis=1)
        svals = sums[keep].tolist()
        for lab, row, v in zip(labs, map(tuple, mat.tolist()), svals):
            d = outs[lab]
            d[row] = d.get(row, 0) + v
    for i, d in enumerate(outs):
        outs[i] = {k: v % p for k, v in d.items() if v % p}
    return outs


class PackUnavailable(Exception):
    """Raised when a packed-key kernel cannot fit its key space in 62 bits."""


def lincomb_witness(p: int, nvars: int, jobs: list):
    """Decide whether a signed sum of map products vanishes mod p.

    jobs: list of (coef, tag, ma, mb).  Each product term lands in the key
    space (tag, exps); tags keep unrelated graded pieces apart.  Every map
    must be homogeneous and all jobs sharing a tag must produce the same
    total exponent sum, so dropping the widest component cannot alias keys.

    Returns None when the combination is zero, else (tag, exps, coeff) for
    one surviving monomial.  Raises PackUnavailable when the key space does
    not fit; callers then fall back to element arithmetic."""
    live = []
    tag_ydeg: dict[int, int] = {}
    mxa = [0] * nvars
    mxb = [0] * nvars
    tmax = 0
    for coef, tag, ma, mb in jobs:
        coef %= p
        if coef == 0 or not ma or not mb:
            continue
        da = {sum(k) for k in ma}
        db = {sum(k) for k in mb}
        if len(da) != 1 or len(db) != 1:
            raise PackUnavailable("inhomogeneous map")
        ydeg = da.pop() + db.pop()
        if tag_ydeg.setdefault(tag, ydeg) != ydeg:
            raise PackUnavailable("tag mixes exponent degrees")
        for i, v in enumerate(_component_maxima(ma)):
            if v > mxa[i]:
                mxa[i] = v
        for i, v in enumerate(_component_maxima(mb)):
            if v > mxb[i]:
                mxb[i] = v
        if tag > tmax:
            tmax = tag
        live.append((coef, tag, ma, mb))
    if not live:
        return None
    if any(x + y >= EXP_LIMIT for x, y in zip(mxa, mxb)):
        raise ExponentOverflowError("product exponent would exceed the 64-bit range")

    tbits = max(1, tmax.bit_length())
    widths = [max(1, (x + y).bit_length()) for x, y in zip(mxa, mxb)]
    keep_idx = list(range(nvars))
    drop = -1
    if sum(widths) + tbits > 62:
        if nvars < 2:
            raise PackUnavailable("key space too wide")
        drop = max(range(nvars), key=lambda i: widths[i])
        keep_idx = [i for i in range(nvars) if i != drop]
        widths = [widths[i] for i in keep_idx]
        if sum(widths) + tbits > 62:
            raise PackUnavailable("key space too wide")

    shifts = []
    acc_bits = 0
    for b in reversed(widths):
        shifts.append(acc_bits)
        acc_bits += b
    shifts.reverse()
    mults = np.array([1 << s for s in shifts], dtype=np.int64)

    chunk_keys = []
    chunk_sums = []
    for coef, tag, ma, mb in live:
        ea = np.array(list(ma.keys()), dtype=np.int64).reshape(len(ma), nvars)[:, keep_idx]
        pa = ea @ mults + (tag << acc_bits)
        ca = (np.fromiter(ma.values(), dtype=np.int64, count=len(ma)) * coef) % p
        eb = np.array(list(mb.keys()), dtype=np.int64).reshape(len(mb), nvars)[:, keep_idx]
        pb = eb @ mults
        cb = np.fromiter(mb.values(), dtype=np.int64, count=len(mb))
        rows_per_chunk = max(1, CHUNK_PAIRS // len(mb))
        for lo in range(0, len(pa), rows_per_chunk):
            hi = min(lo + rows_per_chunk, len(pa))
            packed = (pa[lo:hi, None] + pb[None, :]).ravel()
            coeffs = (ca[lo:hi, None] * cb[None, :]).ravel()
            uniq, inv = np.unique(packed, return_inverse=True)
            sums = np.bincount(inv.ravel(), weights=coeffs.astype(np.float64))
            chunk_keys.append(uniq)
            chunk_sums.append(sums.astype(np.int64))

    keys = np.concatenate(chunk_keys)
    sums = np.concatenate(chunk_sums)
    uniq, inv = np.unique(keys, return_inverse=True)
    total = np.bincount(inv.ravel(), weights=sums.astype(np.float64))
    total = total.astype(np.int64) % p
    bad = total.nonzero()[0]
    if not bad.size:
        return None

    kk = int(uniq[bad[0]])
    coeff = int(total[bad[0]])
    tag = kk >> acc_bits
    body = kk & ((1 << acc_bits) - 1)
    comps = []
    shift = 0
    for b in reversed(widths):
        comps.append((body >> shift) & ((1 << b) - 1))
        shift += b
    comps.reverse()
    if drop >= 0:
        comps.insert(drop, tag_ydeg[tag] - sum(comps))
    return tag, tuple(comps), coeff


def _mul_dict(p: int, ma: dict, mb: dict) -> dict:
    out: dict = {}
    get = out.get
    items_b = list(mb.items())
    for ka, ca in ma.items():
        for kb, cb in items_b:
            k = tuple(map(sum, zip(ka, kb)))
            out[k] = get(k, 0) + ca * cb
    return {k: v % p for k, v in out.items() if v % p}


def _pack_info(nvars: int, mxa: list[int], mxb: list[int]):
    """Bit widths for packing product exponent vectors into one int64."""
    bits = [max(1, (x + y).bit_length()) for x, y in zip(mxa, mxb)]
    if sum(bits) > 62:
        return None
    shifts = []
    acc = 0
    for b in reversed(bits):  # last component in the low bits
        shifts.append(acc)
        acc += b
    shifts.reverse()
    return np.array([1 << s for s in shifts], dtype=np.int64), bits


def _mul_numpy(p: int, nvars: int, ma: dict, mb: dict, mxa, mxb, ydeg=None) -> dict:
    ea = np.array(list(ma.keys()), dtype=np.int64).reshape(len(ma), nvars)
    ca = np.fromiter(ma.values(), dtype=np.int64, count=len(ma))
    eb = np.array(list(mb.keys()), dtype=np.int64).reshape(len(mb), nvars)
    cb = np.fromiter(mb.values(), dtype=np.int64, count=len(mb))

    pack = _pack_info(nvars, mxa, mxb)
    drop = -1
    if pack is None and ydeg is not None and nvars >= 2:
        # homogeneous product: drop the widest component, recover it from ydeg
        widths = [(x + y).bit_length() for x, y in zip(mxa, mxb)]
        drop = max(range(nvars), key=lambda i: widths[i])
        keep_idx = [i for i in range(nvars) if i != drop]
        pack = _pack_info(
            nvars - 1, [mxa[i] for i in keep_idx], [mxb[i] for i in keep_idx]
        )
        if pack is None:
            drop = -1
        else:
            ea = ea[:, keep_idx]
            eb = eb[:, keep_idx]

    kvars = nvars if drop < 0 else nvars - 1
    rows_per_chunk = max(1, CHUNK_PAIRS // len(mb))
    acc: dict = {}

    for lo in range(0, len(ma), rows_per_chunk):
        hi = min(lo + rows_per_chunk, len(ma))
        keys = (ea[lo:hi, None, :] + eb[None, :, :]).reshape(-1, kvars)
        coeffs = (ca[lo:hi, None] * cb[None, :]).ravel()
        if pack is not None:
            mults, bits = pack
            packed = keys @ mults
            uniq, inv = np.unique(packed, return_inverse=True)
            sums = np.bincount(inv.ravel(), weights=coeffs.astype(np.float64))
            sums = sums.astype(np.int64) % p
            keep = sums.nonzero()[0]
            if keep.size:
                kk = uniq[keep]
                comps = []
                shift = 0
                for b in reversed(bits):
                    comps.append((kk >> shift) & ((1 << b) - 1))
                    shift += b
                comps.reverse()
                if drop >= 0:
                    rest = np.zeros(len(kk), dtype=np.int64)
                    for c in comps:
                        rest += c
                    comps.insert(drop, ydeg - rest)
                mat = np.stack(comps, axis=1)
                svals = sums[keep].tolist()
                for row, v in zip(map(tuple, mat.tolist()), svals):
                    acc[row] = acc.get(row, 0) + v
        else:
            uniq, inv = np.unique(keys, axis=0, return_inverse=True)
            sums = np.bincount(inv.ravel(), weights=coeffs.astype(np.float64))
            sums = sums.astype(np.int64) % p
            keep = sums.nonzero()[0]
            svals = sums[keep].tolist()
            for row, v in zip(map(tuple, uniq[keep].tolist()), svals):
                acc[row] = acc.get(row, 0) + v

    return {k: v % p for k, v in acc.items() if v % p}


def _kron_slot_count(nvars: int, mxa, mxb) -> int:
    if nvars == 1:
        return mxa[0] + mxb[0] + 1
    # homogeneous: the last exponent is implied, pack the first nvars-1
    if nvars == 2:
        return mxa[0] + mxb[0] + 1
    k2 = mxa[1] + mxb[1] + 1
    return (mxa[0] + mxb[0]) * k2 + k2


def _pack_poly(ids: np.ndarray, coeffs: np.ndarray, slots: int) -> int:
    buf = np.zeros(slots, dtype="<u4")
    buf[ids] = coeffs
    return int.from_bytes(buf.tobytes(), "little")


def _mul_kron(p: int, nvars: int, ma: dict, mb: dict, mxa, mxb, ydeg: int) -> dict:
    """Exact convolution via Kronecker substitution and one GMP multiply.

    Requires both maps homogeneous (constant sum of exponents) so the last
    component can be dropped before packing and recovered afterwards."""
    bound = (p - 1) * (p - 1) * min(len(ma), len(mb))
    if bound >= 1 << 32:  # coefficient slots are uint32
        return _mul_numpy(p, nvars, ma, mb, mxa, mxb)

    if nvars == 3:
        k2 = mxa[1] + mxb[1] + 1

        def pack_ids(m):
            arr = np.array(list(m.keys()), dtype=np.int64)
            return arr[:, 0] * k2 + arr[:, 1]

    else:  # nvars <= 2: key is just the first exponent
        def pack_ids(m):
            arr = np.array(list(m.keys()), dtype=np.int64)
            return arr[:, 0]

        k2 = 1

    ids_a = pack_ids(ma)
    ids_b = pack_ids(mb)
    slots_a = int(ids_a.max()) + 1
    slots_b = int(ids_b.max()) + 1
    ca = np.fromiter(ma.values(), dtype="<u4", count=len(ma))
    cb = np.fromiter(mb.values(), dtype="<u4", count=len(mb))

    prod = mpz(_pack_poly(ids_a, ca, slots_a)) * mpz(_pack_poly(ids_b, cb, slots_b))
    out_slots = slots_a + slots_b
    raw = int(prod).to_bytes(out_slots * 4, "little")
    vals = np.frombuffer(raw, dtype="<u4").astype(np.int64) % p
    nz = vals.nonzero()[0]

    out: dict = {}
    if nvars == 3:
        e1 = nz // k2
        e2 = nz % k2
        e3 = ydeg - e1 - e2
        cols = np.stack([e1, e2, e3], axis=1)
    elif nvars == 2:
        e1 = nz
        cols = np.stack([e1, ydeg - e1], axis=1)
    else:
        cols = nz.reshape(-1, 1)
    if (cols < 0).any():
        raise AssertionError("kron unpack produced a negative exponent")
    for row, v in zip(map(tuple, cols.tolist()), vals[nz].tolist()):
        out[row] = v
    return out
