import itertools

import pytest
from hypothesis import strategies as st

from icpkit import RestrictedPcpInstance, SignedLetter, word
from icpkit.freegroup import GroupWord


def naive_reduce(raw):
    """Scan for an adjacent x x^-1 pair, delete it, repeat until none is left."""
    letters = list(raw)
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            x, y = letters[i], letters[i + 1]
            if x.base == y.base and x.inverted != y.inverted:
                del letters[i:i + 2]
                changed = True
                break
    return tuple(letters)


SIGNED_AB = [SignedLetter(b, inv) for b in "ab" for inv in (False, True)]


def all_raw(max_len, letters=SIGNED_AB):
    for n in range(max_len + 1):
        yield from itertools.product(letters, repeat=n)


def reduced_words(max_len, bases=("a", "b")):
    """Every reduced word of length <= max_len, built letter by letter."""
    letters = [SignedLetter(b, inv) for b in bases for inv in (False, True)]
    layer = [()]
    out = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for x in letters:
                if w and w[-1].base == x.base and w[-1].inverted != x.inverted:
                    continue
                nxt.append(w + (x,))
        out.extend(nxt)
        layer = nxt
    return [GroupWord(w) for w in out]


def signed_letters(bases=("a", "b")):
    return st.builds(SignedLetter, st.sampled_from(bases), st.booleans())


def raw_words(max_size=10, bases=("a", "b")):
    return st.lists(signed_letters(bases), max_size=max_size)


def group_words(max_size=10, bases=("a", "b")):
    return raw_words(max_size, bases).map(GroupWord)


def rpcp(pairs):
    return RestrictedPcpInstance.from_pairs([(word(u), word(v)) for u, v in pairs])


# Restricted PCP instances with at least one solution of inner length <= 3.
# Found by random sampling, then frozen; each comment names a solution.
SOLVABLE = {
    # a.ba.b == ab.a.b
    "toy": rpcp([("a", "a b"), ("b a", "a"), ("b", "b")]),
    # only (2, 2, 2) up to length 3
    "triple": rpcp([("a b", "a"), ("b", "b b"), ("b b", "a a"), ("b a a", "a b a"), ("b b a", "a")]),
    # (4, 4)
    "double": rpcp([("b a a", "b"), ("a", "b a"), ("b a b", "b"), ("a", "a a"), ("b", "b")]),
    # () and (3, 2)
    "mixed": rpcp([("a b b", "a b"), ("a b", "a"), ("a", "b a"), ("a a", "b a a")]),
    # (2,), (2, 4), (2, 4, 4)
    "chain": rpcp([("b b", "b"), ("a b", "b a b"), ("a a b", "b a b"), ("a", "a"), ("a", "a")]),
    # (2, 3)
    "pair": rpcp([("a", "a a a"), ("a a b", "b b"), ("b", "a b"), ("a b a", "a")]),
}

# Every v_k strictly longer than u_k, so |u_1 .. u_n| < |v_1 .. v_n| for every
# choice of inner tiles: no solution exists.
UNSOLVABLE = {
    "grow1": rpcp([("a", "a a"), ("b", "b b"), ("a", "a b")]),
    "grow2": rpcp([("a b", "a b a"), ("a", "a a"), ("b", "b a b")]),
    "grow3": rpcp([("a", "b a"), ("b", "a b"), ("a b", "b b a"), ("b", "a b")]),
}


@pytest.fixture(params=sorted(SOLVABLE))
def solvable(request):
    return SOLVABLE[request.param]


@pytest.fixture(params=sorted(UNSOLVABLE))
def unsolvable(request):
    return UNSOLVABLE[request.param]


def cycle_sequence(W, start, runs):
    """Index sequence of the cycle w_start .. w_(start+15) on tagged instance W.

    `runs` maps an odd set index to the tile indices used there (default: none).
    """
    seq = []
    for p in range(16):
        s = (start + p) % 16
        if s % 2 == 0:
            seq.append(W.index_of(s))
        else:
            seq.extend(W.index_of(s, j) for j in runs.get(s, ()))
    return tuple(seq)


def random_cycle(W, rng, n, start=None, max_run=2):
    start = rng.randrange(16) if start is None else start
    runs = {s: [rng.randint(2, n - 1) for _ in range(rng.randint(0, max_run))] for s in range(1, 16, 2)}
    return cycle_sequence(W, start, runs)


def all_restricted_solutions(P, max_len=3):
    """Every inner sequence of length <= max_len solving P, by enumeration."""
    from icpkit import verify_restricted

    out = []
    for k in range(max_len + 1):
        for seq in itertools.product(P.inner_indices, repeat=k):
            if verify_restricted(P, seq):
                out.append(seq)
    return out


# -- acceptance reporting ----------------------------------------------------

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
