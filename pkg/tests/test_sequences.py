import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delsub.sequences import (
    Sequence,
    accumulative,
    accumulative_differential,
    differential,
    differential_inverse,
    format_int_sequence,
    parse_int_sequence,
    sign_preserving_number,
    vt_syndrome,
)

from conftest import all_sequences, seq


def sigma_by_splits(z: tuple[int, ...]) -> int:
    """Independent oracle: minimize the part count over all split-point sets."""
    n = len(z)
    if n == 0:
        return 0

    def homogeneous(lo: int, hi: int) -> bool:
        signs = {1 if e > 0 else -1 for e in z[lo:hi] if e != 0}
        return len(signs) <= 1

    best = [0] + [n + 1] * n
    for j in range(1, n + 1):
        for i in range(j):
            if best[i] + 1 < best[j] and homogeneous(i, j):
                best[j] = best[i] + 1
    return best[n]


class TestSequenceType:
    def test_parse_and_str_roundtrip(self):
        assert str(seq("1101")) == "1101"
        assert str(Sequence.parse("20a", 16)) == "20a"
        assert Sequence.parse("", 2).symbols == b""

    def test_alphabet_bounds(self):
        with pytest.raises(ValueError):
            Sequence.parse("012", 2)
        with pytest.raises(ValueError):
            Sequence(b"\x00", 17)
        with pytest.raises(ValueError):
            Sequence(b"\x00", 1)

    def test_one_based_access_pads_with_zero(self):
        x = seq("101")
        assert [x.sym(i) for i in (0, 1, 2, 3, 4)] == [0, 1, 0, 1, 0]

    def test_window_and_edits(self):
        x = seq("10110")
        assert str(x.window(2, 4)) == "011"
        assert str(x.window(3, 2)) == ""
        assert str(x.delete_window(2, 2)) == "110"
        assert str(x.delete_positions((1, 5))) == "011"
        assert str(x.insert(6, 1)) == "101101"
        assert str(x.substitute(1, 0)) == "00110"
        assert str(x.transpose(4)) == "10101"

    def test_int_sequence_text_form(self):
        assert parse_int_sequence("1,0,-1,2") == (1, 0, -1, 2)
        assert parse_int_sequence("") == ()
        assert format_int_sequence((1, 0, -1, 2)) == "1,0,-1,2"


class TestTransforms:
    def test_accumulative_examples(self):
        assert accumulative(seq("101")) == (1, 1, 2)
        assert accumulative(seq("000")) == (0, 0, 0)
        assert accumulative(Sequence.of((2, 1), 3)) == (2, 3)

    def test_differential_examples(self):
        assert str(differential(seq("1101"))) == "1011"
        assert str(differential(seq("0000"))) == "0000"
        assert str(differential(Sequence.of((1, 2, 0, 2), 3))) == "1112"

    def test_accumulative_differential_examples(self):
        assert accumulative_differential(seq("1101")) == (1, 1, 2, 3)
        assert accumulative_differential(Sequence.of((1, 2, 0, 2), 3)) == (1, 2, 3, 5)
        assert accumulative_differential(seq("0000")) == (0, 0, 0, 0)

    @pytest.mark.parametrize("q", [2, 3])
    def test_prefix_shift_identity_accumulative(self, q):
        # f(x)_j = f(x)_i + f(x_[i+1,n])_{j-i} for all 1 <= i < j <= n
        for n in range(2, 9):
            for x in all_sequences(q, n):
                f = accumulative(x)
                for i in range(1, n):
                    tail = accumulative(x.window(i + 1, n))
                    for j in range(i + 1, n + 1):
                        assert f[j - 1] == f[i - 1] + tail[j - i - 1]

    @pytest.mark.parametrize("q", [2, 3])
    def test_prefix_shift_identity_accumulative_differential(self, q):
        # g(x)_j = g(x)_i + g(x_[i,n])_{j-i+1} - x_i
        for n in range(2, 9):
            for x in all_sequences(q, n):
                g = accumulative_differential(x)
                for i in range(1, n):
                    tail = accumulative_differential(x.window(i, n))
                    for j in range(i + 1, n + 1):
                        assert g[j - 1] == g[i - 1] + tail[j - i] - x.sym(i)

    def test_entrywise_congruence_of_g(self):
        for q in (2, 3, 5):
            for n in range(0, 6):
                for x in all_sequences(q, n):
                    g = accumulative_differential(x)
                    assert all(g[i] % q == x.symbols[i] for i in range(n))
                    assert all(g[i] <= g[i + 1] for i in range(n - 1))

    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_differential_is_bijection(self, q):
        for n in range(0, 9):
            seen = set()
            for x in all_sequences(q, n):
                d = differential(x)
                assert differential_inverse(d) == x
                seen.add(d.symbols)
            assert len(seen) == q**n

    @given(
        st.integers(min_value=2, max_value=16).flatmap(
            lambda q: st.tuples(
                st.just(q),
                st.lists(st.integers(min_value=0, max_value=q - 1), max_size=40),
            )
        )
    )
    def test_differential_roundtrip_property(self, qx):
        q, syms = qx
        x = Sequence.of(syms, q)
        assert differential_inverse(differential(x)) == x


class TestSignPreservingNumber:
    def test_examples(self):
        assert sign_preserving_number((1, 0, -1, 2)) == 3
        assert sign_preserving_number((0, 0, 0, 0)) == 1
        assert sign_preserving_number((3, 0, 7)) == 1
        assert sign_preserving_number(()) == 0

    def test_greedy_matches_split_minimization_exhaustive(self):
        for n in range(0, 7):
            for z in itertools.product(range(-2, 3), repeat=n):
                assert sign_preserving_number(z) == sigma_by_splits(z), z

    @settings(max_examples=500, deadline=None)
    @given(st.lists(st.integers(min_value=-2, max_value=2), max_size=10))
    def test_greedy_matches_split_minimization_sampled(self, z):
        assert sign_preserving_number(tuple(z)) == sigma_by_splits(tuple(z))

    def test_subadditivity_exhaustive(self):
        for n in range(1, 9):
            for z in itertools.product(range(-1, 2), repeat=n):
                s = sign_preserving_number(z)
                for i in range(1, n):
                    assert s <= sign_preserving_number(z[:i]) + sign_preserving_number(
                        z[i:]
                    )

    def test_subsequence_monotonicity_exhaustive(self):
        for n in range(1, 7):
            for z in itertools.product(range(-1, 2), repeat=n):
                s = sign_preserving_number(z)
                for mask in range(2**n):
                    sub = tuple(z[i] for i in range(n) if (mask >> i) & 1)
                    assert sign_preserving_number(sub) <= s

    def test_zero_syndromes_force_zero_sequence_small(self):
        # Acceptance runs the full n <= 7 range; this is the quick version.
        for n in range(1, 6):
            for z in itertools.product(range(-2, 3), repeat=n):
                sigma = sign_preserving_number(z)
                if all(vt_syndrome(z, k) == 0 for k in range(sigma)):
                    assert all(e == 0 for e in z), z


class TestVtSyndrome:
    def test_examples(self):
        assert vt_syndrome((1, 1, 2), 1) == 9
        assert vt_syndrome((0, 0, 0, 0), 3) == 0
        assert vt_syndrome((2, -1), 0) == 1

    def test_rejects_negative_order(self):
        with pytest.raises(ValueError):
            vt_syndrome((1,), -1)

    @settings(max_examples=300, deadline=None)
    @given(
        st.lists(st.integers(min_value=-50, max_value=50), max_size=30),
        st.integers(min_value=0, max_value=4),
        st.integers(min_value=1, max_value=10_000),
    )
    def test_modular_matches_exact(self, z, k, modulus):
        assert vt_syndrome(z, k, modulus) == vt_syndrome(z, k) % modulus


class TestInsertionMonotonicity:
    @pytest.mark.parametrize("q", [2, 3])
    def test_sigma_of_g_difference_never_shrinks_under_insertion(self, q):
        # Insert the pair (x_{p+1}, y_p) after position p in both words: the
        # original g-difference is a subsequence of the longer one, so its
        # sign-preserving number cannot exceed the longer one's.
        for n in range(1, 7):
            words = list(all_sequences(q, n))
            g = {x: accumulative_differential(x) for x in words}
            # The pair inserted after position p is (x_{p+1}, y_p) in BOTH
            # words, so one free symbol per side: for the left word the
            # second inserted symbol is free, for the right word the first.
            primed_left = {}
            primed_right = {}
            for w in words:
                for p in range(1, n + 1):
                    for c in range(q):
                        left = Sequence.of(
                            w.symbols[:p] + bytes((w.sym(p + 1), c)) + w.symbols[p:], q
                        )
                        right = Sequence.of(
                            w.symbols[:p] + bytes((c, w.sym(p))) + w.symbols[p:], q
                        )
                        primed_left[(w, p, c)] = accumulative_differential(left)
                        primed_right[(w, p, c)] = accumulative_differential(right)
            for x in words:
                gx = g[x]
                for y in words:
                    gy = g[y]
                    base = sign_preserving_number(
                        tuple(a - b for a, b in zip(gx, gy))
                    )
                    for p in range(1, n + 1):
                        gxp = primed_left[(x, p, y.sym(p))]
                        gyp = primed_right[(y, p, x.sym(p + 1))]
                        grown = sign_preserving_number(
                            tuple(a - b for a, b in zip(gxp, gyp))
                        )
                        assert base <= grown, (x, y, p)
