import itertools

from delsub.sequences import Sequence


def all_sequences(q: int, n: int):
    """Every length-n word over [0, q-1], lexicographic order."""
    for syms in itertools.product(range(q), repeat=n):
        yield Sequence(bytes(syms), q)


def seq(text: str, q: int = 2) -> Sequence:
    return Sequence.parse(text, q)
