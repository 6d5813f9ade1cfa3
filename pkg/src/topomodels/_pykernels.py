"""Pure-Python kernels; the reference twin of ``_ckernels.pyx``.

Both modules export the same three functions with identical semantics.
Programs are flat ``(opcode, argument)`` pairs in postfix order, see
``kernels.compile_formula``.
"""

OP_VAR, OP_BOT, OP_AND, OP_OR, OP_IMP = range(5)


def eval_program(prog, regs, interior, full):
    stack = []
    push = stack.append
    pop = stack.pop
    for i in range(0, len(prog), 2):
        op = prog[i]
        if op == OP_VAR:
            push(regs[prog[i + 1]])
        elif op == OP_BOT:
            push(0)
        else:
            b = pop()
            a = pop()
            if op == OP_AND:
                push(a & b)
            elif op == OP_OR:
                push(a | b)
            else:
                push(interior[(full & ~a) | b])
    return stack[-1]


def scan_schema(prog, opens, interior, full, arity, mode):
    """Index of the first assignment whose value is ``!= full`` (mode 0) or
    ``== 0`` (mode 1), or -1.

    Assignments are numbered in mixed radix ``len(opens)`` with the first
    metavariable most significant.
    """
    k = len(opens)
    total = k ** arity
    regs = [opens[0]] * arity
    idx = [0] * arity
    for number in range(total):
        value = eval_program(prog, regs, interior, full)
        if (value != full) if mode == 0 else (value == 0):
            return number
        j = arity - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < k:
                regs[j] = opens[idx[j]]
                break
            idx[j] = 0
            regs[j] = opens[0]
            j -= 1
    return -1


def canonical(rows, n, perms):
    """Lexicographically least row-major encoding of a relation over ``perms``.

    ``rows[i]`` has bit ``j`` set iff ``i`` is related to ``j``; ``perms`` is
    a flat sequence of permutations of ``range(n)`` (new position -> old
    point).  Returns ``(code, index of the first minimising permutation)``.
    """
    best = -1
    best_index = -1
    nbits = n * n
    count = len(perms) // n if n else 1
    for pi in range(count):
        p = perms[pi * n:(pi + 1) * n]
        value = 0
        bit = nbits
        worse = False
        for a in range(n):
            row = rows[p[a]]
            for b in range(n):
                bit -= 1
                if (row >> p[b]) & 1:
                    value |= 1 << bit
                    # prefix already exceeds the best code
                    if best >= 0 and value > best:
                        worse = True
                        break
            if worse:
                break
        if not worse and (best < 0 or value < best):
            best = value
            best_index = pi
    return max(best, 0), max(best_index, 0)
