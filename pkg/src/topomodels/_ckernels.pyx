# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contract as ``_pykernels``."""
from libc.stdlib cimport malloc, free

DEF OP_VAR = 0
DEF OP_BOT = 1
DEF OP_AND = 2
DEF OP_OR = 3
DEF OP_IMP = 4


cdef inline long long _run(const long long[:] prog, Py_ssize_t plen,
                           long long *regs, const long long[:] interior,
                           long long full, long long *stack) noexcept nogil:
    cdef Py_ssize_t i = 0, top = 0
    cdef long long op, a, b
    while i < plen:
        op = prog[i]
        if op == OP_VAR:
            stack[top] = regs[prog[i + 1]]
            top += 1
        elif op == OP_BOT:
            stack[top] = 0
            top += 1
        else:
            top -= 1
            b = stack[top]
            a = stack[top - 1]
            if op == OP_AND:
                stack[top - 1] = a & b
            elif op == OP_OR:
                stack[top - 1] = a | b
            else:
                stack[top - 1] = interior[(full & ~a) | b]
        i += 2
    return stack[top - 1]


def eval_program(const long long[:] prog, const long long[:] regs,
                 const long long[:] interior, long long full):
    cdef Py_ssize_t plen = prog.shape[0]
    cdef Py_ssize_t nregs = regs.shape[0]
    cdef long long *stack = <long long *>malloc((plen // 2 + 1) * sizeof(long long))
    cdef long long *r = <long long *>malloc((nregs + 1) * sizeof(long long))
    cdef Py_ssize_t j
    cdef long long result
    if stack == NULL or r == NULL:
        free(stack)
        free(r)
        raise MemoryError()
    for j in range(nregs):
        r[j] = regs[j]
    result = _run(prog, plen, r, interior, full, stack)
    free(stack)
    free(r)
    return result


def scan_schema(const long long[:] prog, const long long[:] opens,
                const long long[:] interior, long long full, int arity, int mode):
    cdef Py_ssize_t plen = prog.shape[0]
    cdef Py_ssize_t k = opens.shape[0]
    cdef long long total = 1
    cdef long long number, value
    cdef int j
    cdef long long found = -1
    cdef long long *stack = <long long *>malloc((plen // 2 + 1) * sizeof(long long))
    cdef long long *regs = <long long *>malloc((arity + 1) * sizeof(long long))
    cdef Py_ssize_t *idx = <Py_ssize_t *>malloc((arity + 1) * sizeof(Py_ssize_t))
    if stack == NULL or regs == NULL or idx == NULL:
        free(stack)
        free(regs)
        free(idx)
        raise MemoryError()
    for j in range(arity):
        total *= k
        regs[j] = opens[0]
        idx[j] = 0
    with nogil:
        for number in range(total):
            value = _run(prog, plen, regs, interior, full, stack)
            if (mode == 0 and value != full) or (mode == 1 and value == 0):
                found = number
                break
            j = arity - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < k:
                    regs[j] = opens[idx[j]]
                    break
                idx[j] = 0
                regs[j] = opens[0]
                j -= 1
    free(stack)
    free(regs)
    free(idx)
    return found


def canonical(const long long[:] rows, int n, const long long[:] perms):
    cdef long long best = -1
    cdef Py_ssize_t best_index = -1
    cdef Py_ssize_t count = perms.shape[0] // n if n > 0 else 1
    cdef Py_ssize_t pi, a, b, base
    cdef long long value, row
    cdef int bit
    cdef bint worse
    with nogil:
        for pi in range(count):
            base = pi * n
            value = 0
            bit = n * n
            worse = False
            for a in range(n):
                row = rows[perms[base + a]]
                for b in range(n):
                    bit -= 1
                    if (row >> perms[base + b]) & 1:
                        value |= (<long long>1) << bit
                        if best >= 0 and value > best:
                            worse = True
                            break
                if worse:
                    break
            if not worse and (best < 0 or value < best):
                best = value
                best_index = pi
    if best < 0:
        best = 0
    if best_index < 0:
        best_index = 0
    return best, best_index
