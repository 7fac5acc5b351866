# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled truncated product kernel.

Same contract as crjets._kernel_py.mul_terms. Monomial codes ride in C
int64 when the alphabet packing fits (fits64), which removes interpreter
dispatch and PyLong arithmetic from the code bookkeeping; coefficient
arithmetic stays on exact Python integers either way.
"""

from math import gcd

from crjets.rationals import GaussianRational


def mul_terms(dict A, dict B, int deg_shift, long long cap, bint fits64=False):
    cdef dict acc = {}
    cdef dict out = {}
    cdef list bcodes, ba_l, bb_l, bd_l, cur
    cdef Py_ssize_t i, nb
    cdef long long ca_ll, cb_ll, c_ll, budget_ll
    if not A or not B:
        return out
    if len(A) > len(B):
        A, B = B, A
    bitems = sorted(B.items())
    bcodes = [c for c, _ in bitems]
    ba_l = [v.a for _, v in bitems]
    bb_l = [v.b for _, v in bitems]
    bd_l = [v.d for _, v in bitems]
    nb = len(bcodes)

    if fits64:
        for ca, va in A.items():
            ca_ll = ca
            budget_ll = cap - (ca_ll >> deg_shift)
            aa = va.a
            ab = va.b
            ad = va.d
            for i in range(nb):
                cb_ll = bcodes[i]
                if (cb_ll >> deg_shift) > budget_ll:
                    break
                ba = ba_l[i]
                bb = bb_l[i]
                bd = bd_l[i]
                pa = aa * ba - ab * bb
                pb = aa * bb + ab * ba
                pd = ad * bd
                c_ll = ca_ll + cb_ll
                c = c_ll
                cur = <list> acc.get(c)
                if cur is None:
                    acc[c] = [pa, pb, pd]
                elif cur[2] == pd:
                    cur[0] = cur[0] + pa
                    cur[1] = cur[1] + pb
                else:
                    qd = cur[2]
                    g = gcd(qd, pd)
                    m_cur = pd // g
                    m_new = qd // g
                    cur[0] = cur[0] * m_cur + pa * m_new
                    cur[1] = cur[1] * m_cur + pb * m_new
                    cur[2] = qd * m_cur
    else:
        for ca, va in A.items():
            budget = cap - (ca >> deg_shift)
            aa = va.a
            ab = va.b
            ad = va.d
            for i in range(nb):
                cb = bcodes[i]
                if (cb >> deg_shift) > budget:
                    break
                ba = ba_l[i]
                bb = bb_l[i]
                bd = bd_l[i]
                pa = aa * ba - ab * bb
                pb = aa * bb + ab * ba
                pd = ad * bd
                c = ca + cb
                cur = <list> acc.get(c)
                if cur is None:
                    acc[c] = [pa, pb, pd]
                elif cur[2] == pd:
                    cur[0] = cur[0] + pa
                    cur[1] = cur[1] + pb
                else:
                    qd = cur[2]
                    g = gcd(qd, pd)
                    m_cur = pd // g
                    m_new = qd // g
                    cur[0] = cur[0] * m_cur + pa * m_new
                    cur[1] = cur[1] * m_cur + pb * m_new
                    cur[2] = qd * m_cur

    normalize = GaussianRational.normalize
    for c, triple in acc.items():
        x = (<list> triple)[0]
        y = (<list> triple)[1]
        if x or y:
            out[c] = normalize(x, y, (<list> triple)[2])
    return out
