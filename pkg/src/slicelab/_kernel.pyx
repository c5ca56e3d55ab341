# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tick loop of the slice manager simulation.

Mirrors slicelab.simulator tick-for-tick and draw-for-draw: same PCG64
stream order (arrival count, then per request core class, access class,
lifetime), same stable queue ordering, same lowest-id pool binding.
Traces are bit-identical to the pure-Python reference engine.
"""

import numpy as np

from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport ceil
from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy
from numpy.random cimport bitgen_t
from numpy.random.c_distributions cimport (
    random_exponential, random_poisson, random_standard_uniform)

ctypedef long long i64


# --- min-heap of component ids (lowest free id first) ---

cdef struct Heap:
    int* data
    int size

cdef inline void heap_init_range(Heap* h, int lo, int hi, int* storage) noexcept nogil:
    # ids lo..hi ascending; a sorted array is already a valid min-heap
    cdef int i
    h.data = storage
    h.size = hi - lo + 1
    for i in range(h.size):
        h.data[i] = lo + i

cdef inline void heap_push(Heap* h, int v) noexcept nogil:
    cdef int i = h.size
    cdef int parent
    h.data[i] = v
    h.size += 1
    while i > 0:
        parent = (i - 1) >> 1
        if h.data[parent] <= h.data[i]:
            break
        h.data[parent], h.data[i] = h.data[i], h.data[parent]
        i = parent

cdef inline int heap_pop(Heap* h) noexcept nogil:
    cdef int top = h.data[0]
    cdef int i = 0, child
    h.size -= 1
    h.data[0] = h.data[h.size]
    while True:
        child = 2 * i + 1
        if child >= h.size:
            break
        if child + 1 < h.size and h.data[child + 1] < h.data[child]:
            child += 1
        if h.data[i] <= h.data[child]:
            break
        h.data[i], h.data[child] = h.data[child], h.data[i]
        i = child
    return top


# --- growable request queue, struct-of-arrays ---

cdef struct Queue:
    unsigned char* ch      # core demand is hard
    unsigned char* ah      # access demand is hard
    i64* ts                # remaining lifetime
    i64* tw                # waiting time so far
    Py_ssize_t n
    Py_ssize_t cap

cdef int queue_init(Queue* q, Py_ssize_t cap) except -1:
    q.n = 0
    q.cap = cap
    q.ch = <unsigned char*> malloc(cap)
    q.ah = <unsigned char*> malloc(cap)
    q.ts = <i64*> malloc(cap * sizeof(i64))
    q.tw = <i64*> malloc(cap * sizeof(i64))
    if q.ch == NULL or q.ah == NULL or q.ts == NULL or q.tw == NULL:
        raise MemoryError()
    return 0

cdef void queue_free(Queue* q) noexcept:
    free(q.ch); free(q.ah); free(q.ts); free(q.tw)

cdef int queue_reserve(Queue* q, Py_ssize_t need) except -1:
    cdef Py_ssize_t cap = q.cap
    if need <= cap:
        return 0
    while cap < need:
        cap *= 2
    q.ch = <unsigned char*> realloc(q.ch, cap)
    q.ah = <unsigned char*> realloc(q.ah, cap)
    q.ts = <i64*> realloc(q.ts, cap * sizeof(i64))
    q.tw = <i64*> realloc(q.tw, cap * sizeof(i64))
    if q.ch == NULL or q.ah == NULL or q.ts == NULL or q.tw == NULL:
        raise MemoryError()
    q.cap = cap
    return 0

cdef inline void queue_append(Queue* q, unsigned char ch, unsigned char ah,
                              i64 ts, i64 tw) noexcept nogil:
    q.ch[q.n] = ch
    q.ah[q.n] = ah
    q.ts[q.n] = ts
    q.tw[q.n] = tw
    q.n += 1

cdef inline int rank_of(unsigned char ch, unsigned char ah) noexcept nogil:
    # (hard,hard)=0 < (hard,soft)=1 < (soft,hard)=2 < (soft,soft)=3
    return ((1 - ch) << 1) | (1 - ah)

cdef inline bint key_less(int rank_a, i64 ts_a, int rank_b, i64 ts_b) noexcept nogil:
    return rank_a < rank_b or (rank_a == rank_b and ts_a < ts_b)


cdef void sort_new_tail(Queue* q, Py_ssize_t start) noexcept nogil:
    # stable insertion sort of q[start:] by (class rank, lifetime)
    cdef Py_ssize_t i, j
    cdef unsigned char ch, ah
    cdef i64 ts, tw
    cdef int rank
    for i in range(start + 1, q.n):
        ch = q.ch[i]; ah = q.ah[i]; ts = q.ts[i]; tw = q.tw[i]
        rank = rank_of(ch, ah)
        j = i
        while j > start and key_less(rank, ts, rank_of(q.ch[j - 1], q.ah[j - 1]), q.ts[j - 1]):
            q.ch[j] = q.ch[j - 1]; q.ah[j] = q.ah[j - 1]
            q.ts[j] = q.ts[j - 1]; q.tw[j] = q.tw[j - 1]
            j -= 1
        q.ch[j] = ch; q.ah[j] = ah; q.ts[j] = ts; q.tw[j] = tw


cdef void merge_runs(Queue* q, Py_ssize_t split, Queue* out) noexcept nogil:
    # stable merge of the two sorted runs q[:split] and q[split:];
    # ties prefer the first run (earlier queue positions)
    cdef Py_ssize_t i = 0, j = split
    out.n = 0
    while i < split and j < q.n:
        if key_less(rank_of(q.ch[j], q.ah[j]), q.ts[j], rank_of(q.ch[i], q.ah[i]), q.ts[i]):
            queue_append(out, q.ch[j], q.ah[j], q.ts[j], q.tw[j])
            j += 1
        else:
            queue_append(out, q.ch[i], q.ah[i], q.ts[i], q.tw[i])
            i += 1
    while i < split:
        queue_append(out, q.ch[i], q.ah[i], q.ts[i], q.tw[i])
        i += 1
    while j < q.n:
        queue_append(out, q.ch[j], q.ah[j], q.ts[j], q.tw[j])
        j += 1


# --- expiry calendar: per-tick linked lists of (core, access) to release ---

cdef struct Calendar:
    i64* head          # head[t] = first node index, -1 if none
    int* core
    int* acc
    i64* nxt
    Py_ssize_t n
    Py_ssize_t cap

cdef int calendar_init(Calendar* cal, Py_ssize_t ticks, Py_ssize_t cap) except -1:
    cdef Py_ssize_t i
    cal.n = 0
    cal.cap = cap
    cal.head = <i64*> malloc((ticks + 2) * sizeof(i64))
    cal.core = <int*> malloc(cap * sizeof(int))
    cal.acc = <int*> malloc(cap * sizeof(int))
    cal.nxt = <i64*> malloc(cap * sizeof(i64))
    if cal.head == NULL or cal.core == NULL or cal.acc == NULL or cal.nxt == NULL:
        raise MemoryError()
    for i in range(ticks + 2):
        cal.head[i] = -1
    return 0

cdef void calendar_free(Calendar* cal) noexcept:
    free(cal.head); free(cal.core); free(cal.acc); free(cal.nxt)

cdef int calendar_add(Calendar* cal, Py_ssize_t when, int core_id, int access_id) except -1:
    cdef Py_ssize_t cap = cal.cap
    if cal.n >= cap:
        cap *= 2
        cal.core = <int*> realloc(cal.core, cap * sizeof(int))
        cal.acc = <int*> realloc(cal.acc, cap * sizeof(int))
        cal.nxt = <i64*> realloc(cal.nxt, cap * sizeof(i64))
        if cal.core == NULL or cal.acc == NULL or cal.nxt == NULL:
            raise MemoryError()
        cal.cap = cap
    cal.core[cal.n] = core_id
    cal.acc[cal.n] = access_id
    cal.nxt[cal.n] = cal.head[when]
    cal.head[when] = cal.n
    cal.n += 1
    return 0


def run_trace(int n1, int nc, int n2, int na,
              double p_c, double p_a, double lam, double mu,
              Py_ssize_t ticks, bint heuristic, object bit_generator):
    """Run one seeded simulation; returns the trace as a dict of arrays."""
    cdef bitgen_t* rng = <bitgen_t*> PyCapsule_GetPointer(
        bit_generator.capsule, "BitGenerator")

    out_arrivals = np.zeros(ticks, dtype=np.int64)
    out_activated = np.zeros(ticks, dtype=np.int64)
    out_rejected = np.zeros(ticks, dtype=np.int64)
    out_u = np.zeros(ticks, dtype=np.int64)
    out_qlen = np.zeros(ticks, dtype=np.int64)
    out_delta = np.zeros(ticks, dtype=np.float64)
    out_w = np.zeros(ticks, dtype=np.float64)
    out_fch = np.zeros(ticks, dtype=np.int64)
    out_fcs = np.zeros(ticks, dtype=np.int64)
    out_fah = np.zeros(ticks, dtype=np.int64)
    out_fas = np.zeros(ticks, dtype=np.int64)
    cdef i64[::1] v_arrivals = out_arrivals
    cdef i64[::1] v_activated = out_activated
    cdef i64[::1] v_rejected = out_rejected
    cdef i64[::1] v_u = out_u
    cdef i64[::1] v_qlen = out_qlen
    cdef double[::1] v_delta = out_delta
    cdef double[::1] v_w = out_w
    cdef i64[::1] v_fch = out_fch
    cdef i64[::1] v_fcs = out_fcs
    cdef i64[::1] v_fah = out_fah
    cdef i64[::1] v_fas = out_fas

    cdef int* heap_storage = <int*> malloc((nc + na) * sizeof(int))
    if heap_storage == NULL:
        raise MemoryError()
    cdef Heap pool_ch, pool_cs, pool_ah, pool_as
    heap_init_range(&pool_ch, 1, n1, heap_storage)
    heap_init_range(&pool_cs, n1 + 1, nc, heap_storage + n1)
    heap_init_range(&pool_ah, 1, n2, heap_storage + nc)
    heap_init_range(&pool_as, n2 + 1, na, heap_storage + nc + n2)

    cdef Queue cur, nxt, scratch
    cdef Calendar cal
    queue_init(&cur, 256)
    queue_init(&nxt, 256)
    queue_init(&scratch, 256)
    calendar_init(&cal, ticks, 1024)

    cdef Py_ssize_t t, i, split
    cdef i64 n_req, sum_tw, node, active = 0
    cdef int activated_n
    cdef int core_id, access_id
    cdef double x, last_delta = 1.0
    cdef i64 life, expiry
    cdef unsigned char is_ch, is_ah
    cdef Queue tmp
    cdef Heap* pc
    cdef Heap* pa

    try:
        with bit_generator.lock:
            for t in range(1, ticks + 1):
                # phase 1: arrivals join the re-queued rejects
                n_req = random_poisson(rng, lam)
                queue_reserve(&cur, cur.n + n_req)
                for i in range(n_req):
                    is_ch = random_standard_uniform(rng) < p_c
                    is_ah = random_standard_uniform(rng) < p_a
                    x = random_exponential(rng, mu)
                    life = <i64> ceil(x)
                    if life < 1:
                        life = 1
                    queue_append(&cur, is_ch, is_ah, life, 1)

                # phase 2: strategy ordering; rejects stayed sorted, so
                # sorting the fresh tail and merging equals a full stable sort
                if heuristic and cur.n > 1:
                    split = cur.n - n_req
                    sort_new_tail(&cur, split)
                    if split > 0:
                        queue_reserve(&scratch, cur.n)
                        merge_runs(&cur, split, &scratch)
                        tmp = cur; cur = scratch; scratch = tmp

                # phase 3: dispatch in queue order, all-or-nothing binding
                queue_reserve(&nxt, cur.n)
                nxt.n = 0
                activated_n = 0
                sum_tw = 0
                for i in range(cur.n):
                    if cur.ch[i]:
                        pc = &pool_ch
                    else:
                        pc = &pool_cs
                    if cur.ah[i]:
                        pa = &pool_ah
                    else:
                        pa = &pool_as
                    if pc.size > 0 and pa.size > 0:
                        core_id = heap_pop(pc)
                        access_id = heap_pop(pa)
                        activated_n += 1
                        sum_tw += cur.tw[i]
                        active += 1
                        expiry = t + cur.ts[i] - 1   # lifetime counts this tick
                        if expiry <= ticks:
                            calendar_add(&cal, expiry, core_id, access_id)
                    else:
                        cur.tw[i] += 1
                        queue_append(&nxt, cur.ch[i], cur.ah[i], cur.ts[i], cur.tw[i])

                # phase 4: lifetime expiries release both components
                node = cal.head[t]
                while node != -1:
                    core_id = cal.core[node]
                    access_id = cal.acc[node]
                    if core_id <= n1:
                        heap_push(&pool_ch, core_id)
                    else:
                        heap_push(&pool_cs, core_id)
                    if access_id <= n2:
                        heap_push(&pool_ah, access_id)
                    else:
                        heap_push(&pool_as, access_id)
                    active -= 1
                    node = cal.nxt[node]

                # phase 5: snapshot
                if activated_n > 0:
                    last_delta = (<double> sum_tw) / activated_n
                v_arrivals[t - 1] = n_req
                v_activated[t - 1] = activated_n
                v_rejected[t - 1] = nxt.n
                v_u[t - 1] = active
                v_qlen[t - 1] = nxt.n
                v_delta[t - 1] = last_delta
                v_w[t - 1] = (<double> active) / last_delta
                v_fch[t - 1] = pool_ch.size
                v_fcs[t - 1] = pool_cs.size
                v_fah[t - 1] = pool_ah.size
                v_fas[t - 1] = pool_as.size

                tmp = cur; cur = nxt; nxt = tmp
                nxt.n = 0
    finally:
        queue_free(&cur)
        queue_free(&nxt)
        queue_free(&scratch)
        calendar_free(&cal)
        free(heap_storage)

    return {
        "t": np.arange(1, ticks + 1, dtype=np.int64),
        "arrivals": out_arrivals,
        "activated": out_activated,
        "rejected": out_rejected,
        "u": out_u,
        "queue_len": out_qlen,
        "delta": out_delta,
        "w": out_w,
        "free_core_hard": out_fch,
        "free_core_soft": out_fcs,
        "free_access_hard": out_fah,
        "free_access_soft": out_fas,
    }
