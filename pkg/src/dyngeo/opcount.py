"""Global abstract-operation counter.

Benchmarks report "structure ops" = exact predicate evaluations plus
structure node visits.  Wall time is noisy at desk scale; this count is
deterministic for a fixed seed, which is what the scaling harness fits
slopes against.
"""


class OpCounter:
    __slots__ = ("n",)

    def __init__(self):
        self.n = 0

    def add(self, k=1):
        self.n += k

    def reset(self):
        self.n = 0


COUNTER = OpCounter()


def ops_add(k=1):
    COUNTER.n += k


def ops_total():
    return COUNTER.n
