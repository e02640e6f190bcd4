"""Exhaustive search over F_2, used to cross-check the linear solvers.

Nothing here calls ``LinearSystem``: candidates are enumerated and every
condition is re-evaluated element by element. Centrality is tested against
every target basis element with unit exponents -1, 0, 1 rather than the
solver's generator list.
"""

from itertools import product

from dgsep.algebra import sample_keys
from dgsep.constructions import tensor_over_source
from dgsep.modules import ModuleMap, restrict_ses

LIMIT = 2 ** 12


class SearchTooLarge(Exception):
    pass


def _vectors(keys, F):
    for bits in product(range(2), repeat=len(keys)):
        yield {k: F.one for k, b in zip(keys, bits) if b}


def casimir_space_size(ext):
    return 2 ** len(tensor_over_source(ext).component(0))


def casimir_solutions(ext, limit=LIMIT):
    """All degree-0 Casimir elements of ``ext`` (over F_2)."""
    F = ext.field
    assert F.characteristic == 2
    T = tensor_over_source(ext)
    keys = T.component(0)
    if 2 ** len(keys) > limit:
        raise SearchTooLarge(len(keys))
    B = ext.target.algebra
    exps = (-1, 0, 1) if B.period is not None else (0,)
    tests = [{(lab, e): F.one} for lab in B.labels for e in exps]
    found = []
    for omega in _vectors(keys, F):
        if T.mu(omega) != B.unit or T.d(omega):
            continue
        if all(T.left(b, omega) == T.right(omega, b) for b in tests):
            found.append(omega)
    return found


def splitting_space_size(s):
    return 2 ** sum(len(s.M.component(s.N.basis.degree(n))) for n in s.N.labels)


def splittings(s, limit=LIMIT):
    """All degree-0 dg-splittings of ``s`` (over F_2), as ``ModuleMap``s."""
    F = s.field
    assert F.characteristic == 2
    N, M = s.N, s.M
    slots = [(n, M.component(N.basis.degree(n))) for n in N.labels]
    if 2 ** sum(len(k) for _, k in slots) > limit:
        raise SearchTooLarge(sum(len(k) for _, k in slots))
    A = s.algebra
    acts = [{k: F.one} for k in sample_keys(A.basis)]
    if A.period is not None:
        acts += [{(lab, -1): F.one} for lab in A.labels]
    nkeys = sample_keys(N.basis)
    found = []
    for choice in product(*(list(_vectors(keys, F)) for _, keys in slots)):
        sigma = ModuleMap(N, M, {n: v for (n, _), v in zip(slots, choice)})
        if any(s.g(sigma({k: F.one})) != {k: F.one} for k in nkeys):
            continue
        if any(M.d(sigma({k: F.one})) != sigma(N.d({k: F.one})) for k in nkeys):
            continue
        if all(sigma(N.act(a, {k: F.one})) == M.act(a, sigma({k: F.one})) for a in acts for k in nkeys):
            found.append(sigma)
    return found


def source_splittings(ext, s, limit=LIMIT):
    return splittings(restrict_ses(ext, s).sequence, limit)


# -- the F_2 test family ------------------------------------------------------------------

def f2_extensions():
    """``(name, extension)`` pairs over F_2, small enough to enumerate."""
    from dgsep.constructions import (base_extension, dual_numbers, finite_field, identity_extension,
                                     laurent_pair, scalar_extension, tensor_product, truncated_polynomial)
    from dgsep.demos import catalog, resolve
    from dgsep.fields import GF
    F = GF(2)
    out = [(d.name, d.build()) for d in catalog()
           if d.kind == "extension" and d.build is not None and d.build().field == F]
    out += [(f"laurent F2 {n}", resolve(f"laurent F2 {n}").build()) for n in range(1, 7)]
    out += [(f"laurent-acyclic F2 {n}", resolve(f"laurent-acyclic F2 {n}").build()) for n in range(1, 5)]
    out += [(f"laurent F2 {n} degree 1", laurent_pair(F, n, 1)) for n in (2, 3)]
    out += [("laurent-to-acyclic F2", resolve("laurent-to-acyclic F2").build()),
            ("laurent-to-acyclic-winv F2", resolve("laurent-to-acyclic-winv F2").build()),
            ("F2 -> F8", base_extension(finite_field(2, 3))),
            ("F2 -> F2[X]/X^2", base_extension(truncated_polynomial(F))),
            ("F2 -> F2[X]/X^2, |X|=2", base_extension(truncated_polynomial(F, 2))),
            ("dual F2 -> F4 (x) dual", scalar_extension(dual_numbers(F))),
            ("trunc F2 -> F4 (x) trunc", scalar_extension(truncated_polynomial(F))),
            ("identity F4", identity_extension(finite_field(2, 2))),
            ("identity dual F2", identity_extension(dual_numbers(F))),
            ("F2 -> dual (x) dual", base_extension(tensor_product(dual_numbers(F), dual_numbers(F)))),
            ("F2 -> F4 (x) trunc", base_extension(tensor_product(finite_field(2, 2), truncated_polynomial(F))))]
    seen, unique = set(), []
    for name, e in out:
        if name not in seen:
            seen.add(name)
            unique.append((name, e))
    return unique


def f2_sequences(count=24, seed=2024):
    """``(name, extension or None, sequence)`` over F_2: the named ones plus seeded random quotients."""
    import random

    from dgsep.constructions import (base_extension, dual_numbers, finite_field, laurent_pair, scalar_extension,
                                     truncated_polynomial)
    from dgsep.demos import catalog
    from dgsep.fields import GF
    from dgsep.modules import free_module, split_sequence, submodule_sequence
    F = GF(2)
    out = []
    for d in catalog():
        if d.kind == "sequence":
            ext, s = d.build()
            if s.field == F:
                out.append((d.name, ext, s))
    rng = random.Random(seed)
    makers = [lambda: base_extension(dual_numbers(F)), lambda: base_extension(truncated_polynomial(F)),
              lambda: base_extension(finite_field(2, 2)), lambda: laurent_pair(F, 3),
              lambda: laurent_pair(F, 2), lambda: scalar_extension(truncated_polynomial(F)),
              lambda: laurent_pair(F, 3, acyclic=True)]
    i = 0
    while i < count:
        ext = rng.choice(makers)()
        B = ext.target
        M = free_module(B, [rng.choice([0, 1, 2]) for _ in range(rng.randint(1, 2))])
        if rng.random() < 0.3:
            s = split_sequence(free_module(B, [rng.choice([0, 1])]), M)
        else:
            keys = [k for n in M.window() for k in M.component(n)]
            n0 = M.deg(rng.choice(keys))
            gen = {k: 1 for k in M.component(n0) if rng.random() < 0.6}
            if not gen:
                continue
            s = submodule_sequence(M, [gen])
        out.append((f"random {i} over {ext.name}", ext, s))
        i += 1
    return out
