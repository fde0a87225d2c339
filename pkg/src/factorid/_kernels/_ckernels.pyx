# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of factorid._kernels.pure.

Same algorithms, same iteration order, same outputs. Any change here must be
mirrored in pure.py (and vice versa); tests/test_kernels.py enforces equality.
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define FID_POPCOUNT(x) __builtin_popcountll(x)
    #else
    static int FID_POPCOUNT(unsigned long long x)
    { int c = 0; while (x) { x &= x - 1; ++c; } return c; }
    #endif
    """
    int FID_POPCOUNT(unsigned long long x) nogil

cdef int _INF = 1 << 30


cdef void *_alloc(size_t n) except NULL:
    cdef void *p = malloc(n if n > 0 else 1)
    if p == NULL:
        raise MemoryError()
    return p


def hopcroft_karp(int n_left, int n_right, indptr, indices):
    """See factorid._kernels.pure.hopcroft_karp."""
    cdef int n_edges = len(indices)
    cdef int *iptr = <int *>_alloc((n_left + 1) * sizeof(int))
    cdef int *idx = <int *>_alloc(n_edges * sizeof(int))
    cdef int *match_l = <int *>_alloc(n_left * sizeof(int))
    cdef int *match_r = <int *>_alloc(n_right * sizeof(int))
    cdef int *dist = <int *>_alloc(n_left * sizeof(int))
    cdef int *queue = <int *>_alloc(n_left * sizeof(int))
    cdef int *su = <int *>_alloc((n_left + 1) * sizeof(int))
    cdef int *sk = <int *>_alloc((n_left + 1) * sizeof(int))
    cdef int *sv = <int *>_alloc((n_left + 1) * sizeof(int))
    cdef int i, u, v, w, k, du, qn, qi, found, size, u0, d
    try:
        for i in range(n_left + 1):
            iptr[i] = indptr[i]
        for i in range(n_edges):
            idx[i] = indices[i]
        for i in range(n_left):
            match_l[i] = -1
        for i in range(n_right):
            match_r[i] = -1
        size = 0
        while True:
            qn = 0
            for u in range(n_left):
                if match_l[u] == -1:
                    dist[u] = 0
                    queue[qn] = u
                    qn += 1
                else:
                    dist[u] = _INF
            found = _INF
            qi = 0
            while qi < qn:
                u = queue[qi]
                qi += 1
                du = dist[u]
                if du >= found:
                    continue
                for k in range(iptr[u], iptr[u + 1]):
                    w = match_r[idx[k]]
                    if w == -1:
                        if found == _INF:
                            found = du + 1
                    elif dist[w] == _INF:
                        dist[w] = du + 1
                        queue[qn] = w
                        qn += 1
            if found == _INF:
                return size, [match_l[i] for i in range(n_left)], \
                    [match_r[i] for i in range(n_right)]
            for u0 in range(n_left):
                if match_l[u0] != -1:
                    continue
                d = 0
                su[0] = u0
                sk[0] = iptr[u0]
                sv[0] = -1
                while d >= 0:
                    u = su[d]
                    k = sk[d]
                    if k == iptr[u + 1]:
                        dist[u] = _INF
                        d -= 1
                        continue
                    sk[d] = k + 1
                    v = idx[k]
                    w = match_r[v]
                    if w == -1:
                        if dist[u] + 1 == found:
                            sv[d] = v
                            for i in range(d + 1):
                                match_l[su[i]] = sv[i]
                                match_r[sv[i]] = su[i]
                            size += 1
                            break
                    elif dist[w] == dist[u] + 1:
                        sv[d] = v
                        d += 1
                        su[d] = w
                        sk[d] = iptr[w]
                        sv[d] = -1
    finally:
        free(iptr); free(idx); free(match_l); free(match_r)
        free(dist); free(queue); free(su); free(sk); free(sv)


def dinic_min_cut(int n_nodes, int source, int sink, tails, heads, caps):
    """See factorid._kernels.pure.dinic_min_cut."""
    cdef int n_arcs = len(tails)
    cdef int *to = <int *>_alloc(2 * n_arcs * sizeof(int))
    cdef long long *cap = <long long *>_alloc(2 * n_arcs * sizeof(long long))
    cdef long long *cap0 = <long long *>_alloc(n_arcs * sizeof(long long))
    cdef int *deg = <int *>_alloc(n_nodes * sizeof(int))
    cdef int *adj_ptr = <int *>_alloc((n_nodes + 1) * sizeof(int))
    cdef int *adj = <int *>_alloc(2 * n_arcs * sizeof(int))
    cdef int *fill = <int *>_alloc(n_nodes * sizeof(int))
    cdef int *level = <int *>_alloc(n_nodes * sizeof(int))
    cdef int *queue = <int *>_alloc(n_nodes * sizeof(int))
    cdef int *ptr = <int *>_alloc(n_nodes * sizeof(int))
    cdef int *path = <int *>_alloc((n_nodes + 1) * sizeof(int))
    cdef int i, t, h, u, v, a, lv, qn, qi, pu, k, path_len
    cdef long long total, pushed
    try:
        for i in range(n_nodes):
            deg[i] = 0
        for i in range(n_arcs):
            t = tails[i]
            h = heads[i]
            to[2 * i] = h
            cap[2 * i] = caps[i]
            cap0[i] = cap[2 * i]
            to[2 * i + 1] = t
            cap[2 * i + 1] = 0
            deg[t] += 1
            deg[h] += 1
        adj_ptr[0] = 0
        for i in range(n_nodes):
            adj_ptr[i + 1] = adj_ptr[i] + deg[i]
            fill[i] = adj_ptr[i]
        for i in range(n_arcs):
            t = to[2 * i + 1]
            h = to[2 * i]
            adj[fill[t]] = 2 * i
            fill[t] += 1
            adj[fill[h]] = 2 * i + 1
            fill[h] += 1
        total = 0
        while True:
            for i in range(n_nodes):
                level[i] = -1
            level[source] = 0
            queue[0] = source
            qn = 1
            qi = 0
            while qi < qn:
                u = queue[qi]
                qi += 1
                lv = level[u] + 1
                for k in range(adj_ptr[u], adj_ptr[u + 1]):
                    a = adj[k]
                    if cap[a] > 0:
                        v = to[a]
                        if level[v] == -1:
                            level[v] = lv
                            queue[qn] = v
                            qn += 1
            if level[sink] == -1:
                break
            for i in range(n_nodes):
                ptr[i] = adj_ptr[i]
            path_len = 0
            u = source
            while True:
                if u == sink:
                    pushed = cap[path[0]]
                    for i in range(1, path_len):
                        if cap[path[i]] < pushed:
                            pushed = cap[path[i]]
                    for i in range(path_len):
                        a = path[i]
                        cap[a] -= pushed
                        cap[a ^ 1] += pushed
                    total += pushed
                    k = 0
                    while cap[path[k]] > 0:
                        k += 1
                    path_len = k
                    u = source if k == 0 else to[path[k - 1]]
                    continue
                pu = ptr[u]
                lv = level[u] + 1
                a = -1
                while pu < adj_ptr[u + 1]:
                    a = adj[pu]
                    if cap[a] > 0 and level[to[a]] == lv:
                        break
                    pu += 1
                ptr[u] = pu
                if pu < adj_ptr[u + 1]:
                    path[path_len] = a
                    path_len += 1
                    u = to[a]
                elif u == source:
                    break
                else:
                    path_len -= 1
                    a = path[path_len]
                    u = to[a ^ 1]
                    ptr[u] += 1
        side = [level[i] != -1 for i in range(n_nodes)]
        flows = [cap0[i] - cap[2 * i] for i in range(n_arcs)]
        return total, side, flows
    finally:
        free(to); free(cap); free(cap0); free(deg); free(adj_ptr)
        free(adj); free(fill); free(level); free(queue); free(ptr); free(path)


def counting_sweep(int r, int s, col_masks):
    """See factorid._kernels.pure.counting_sweep."""
    cdef int max_bits = 0
    cdef int j, w, q, t, need, count, nwords
    for j in range(r):
        if col_masks[j].bit_length() > max_bits:
            max_bits = col_masks[j].bit_length()
    nwords = (max_bits + 63) // 64
    if nwords == 0:
        nwords = 1
    cdef unsigned long long *words = \
        <unsigned long long *>_alloc(r * nwords * sizeof(unsigned long long))
    cdef unsigned long long *acc = \
        <unsigned long long *>_alloc(nwords * sizeof(unsigned long long))
    cdef int *idx = <int *>_alloc((r + 1) * sizeof(int))
    cdef object mask
    try:
        for j in range(r):
            mask = col_masks[j]
            for w in range(nwords):
                words[j * nwords + w] = (mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
        for q in range(1, r + 1):
            need = 2 * q + s
            for t in range(q):
                idx[t] = t
            while True:
                for w in range(nwords):
                    acc[w] = 0
                for t in range(q):
                    j = idx[t] * nwords
                    for w in range(nwords):
                        acc[w] |= words[j + w]
                count = 0
                for w in range(nwords):
                    count += FID_POPCOUNT(acc[w])
                if count < need:
                    return False, tuple(idx[t] for t in range(q)), count
                t = q - 1
                while t >= 0 and idx[t] == r - q + t:
                    t -= 1
                if t < 0:
                    break
                idx[t] += 1
                for w in range(t + 1, q):
                    idx[w] = idx[w - 1] + 1
        return True, None, -1
    finally:
        free(words); free(acc); free(idx)
