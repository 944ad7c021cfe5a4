"""Even splice reducibility, the <i> link, and the resumable search."""

from __future__ import annotations

import pytest

from quiddity import (
    EnumSpec,
    EvenSearchState,
    GeneratorSpec,
    MODE_EQUIV,
    MODE_STRICT,
    OddSizeError,
    Quiddity,
    WorkLimitExceeded,
    enumerate_quiddities,
    is_evenly_reducible,
    phi1_link_check,
    search_evenly_irreducible,
)

Z = GeneratorSpec.from_string("z")


def _q(coeffs):
    q = Quiddity.verified(Z, coeffs)
    assert q is not None
    return q


class TestEvenReducibility:
    def test_worked_examples(self):
        assert is_evenly_reducible(_q((2, 2, 1, 4, 1, 2)), MODE_STRICT) is True
        assert is_evenly_reducible(_q((2, 2, 1, 4, 1, 2)), MODE_EQUIV) is True
        assert is_evenly_reducible(_q((1, 2, 1, 2, 1, 2, 1, 2)), MODE_STRICT) is True
        assert is_evenly_reducible(_q((1, 2, 1, 2, 1, 2, 1, 2)), MODE_EQUIV) is True
        assert is_evenly_reducible(_q((1, 1, 1, 1, 1, 1)), MODE_STRICT) is False
        assert is_evenly_reducible(_q((1, 1, 1, 1, 1, 1)), MODE_EQUIV) is False

    def test_size_four_always_irreducible(self):
        for q in enumerate_quiddities(EnumSpec(Z, 4, 4, canonical_only=True)):
            assert is_evenly_reducible(q, MODE_EQUIV) is False
            assert is_evenly_reducible(q, MODE_STRICT) is False

    def test_strict_implies_equivalent(self):
        for n in (6, 8):
            for q in enumerate_quiddities(EnumSpec(Z, n, 2, canonical_only=True)):
                if is_evenly_reducible(q, MODE_STRICT):
                    assert is_evenly_reducible(q, MODE_EQUIV)

    def test_equiv_mode_is_orbit_invariant(self):
        for q in enumerate_quiddities(EnumSpec(Z, 6, 2, canonical_only=True)):
            base = is_evenly_reducible(q, MODE_EQUIV)
            for reflected in (False, True):
                t = q.coeffs[::-1] if reflected else q.coeffs
                for r in range(q.size):
                    rep = Quiddity(Z, t[r:] + t[:r], q.sign)
                    assert is_evenly_reducible(rep, MODE_EQUIV) == base

    def test_strict_witness_splits_into_even_sizes(self):
        from quiddity.solve import _scan_representative

        for n in (6, 8):
            for q in enumerate_quiddities(EnumSpec(Z, n, 2, canonical_only=True)):
                hit = _scan_representative(q.coeffs, Z, 4, 4, "even")
                if hit is None:
                    continue
                left, right, _ = hit
                assert len(left) % 2 == 0 and len(left) >= 4
                assert len(right) % 2 == 0 and len(right) >= 4
                assert len(left) + len(right) - 2 == n

    def test_preconditions(self):
        with pytest.raises(OddSizeError):
            is_evenly_reducible(_q((1, 1, 1)))
        with pytest.raises(ValueError):
            is_evenly_reducible(_q((0, 0)))


class TestLinkToGaussianUnits:
    def test_small_scan_is_clean(self):
        report = phi1_link_check(6, 2)
        assert report.status == "ok"
        assert report.checked > 0

    def test_zero_interleaved_tuples_line_up(self):
        from quiddity import is_irreducible, phi

        gauss = GeneratorSpec("isqrt", 1)
        for m in (0, 2, 3):
            q = Quiddity.verified(gauss, (0, m, 0, -m))
            assert is_irreducible(q) is True
            assert is_evenly_reducible(phi(q), MODE_EQUIV) is False

    def test_all_ones_image_case(self):
        from quiddity import is_irreducible, phi

        gauss = GeneratorSpec("isqrt", 1)
        q = Quiddity.verified(gauss, (1, -1, 1, -1, 1, -1))
        assert q is not None
        img = phi(q)
        assert img.coeffs == (1, 1, 1, 1, 1, 1)
        assert is_irreducible(q) is True
        assert is_evenly_reducible(img, MODE_EQUIV) is False


class TestSearch:
    def test_contains_all_ones_at_size_six(self):
        results, state = search_evenly_irreducible(6, 1)
        coeffs = {q.canonical_coeffs() for q, _ in results}
        assert Quiddity(Z, (1, 1, 1, 1, 1, 1)).canonical_coeffs() in coeffs
        assert state.complete

    def test_size_four_returns_every_class(self):
        results, _ = search_evenly_irreducible(4, 2)
        got = {q.coeffs for q, _ in results}
        want = {
            q.coeffs for q in enumerate_quiddities(EnumSpec(Z, 4, 2, canonical_only=True))
        }
        assert got == want

    def test_excludes_strictly_reducible_pattern(self):
        results, _ = search_evenly_irreducible(8, 2)
        target = Quiddity(Z, (1, 2, 1, 2, 1, 2, 1, 2)).canonical_coeffs()
        assert target not in {q.canonical_coeffs() for q, _ in results}

    def test_results_match_direct_filter(self):
        results, _ = search_evenly_irreducible(6, 2)
        direct = {
            q.coeffs
            for q in enumerate_quiddities(EnumSpec(Z, 6, 2, canonical_only=True))
            if not is_evenly_reducible(q, MODE_EQUIV)
        }
        assert {q.coeffs for q, red in results if not red} == direct

    def test_checkpoint_resume_equals_single_shot(self):
        full, state_full = search_evenly_irreducible(6, 2)
        # per-shard cost is 1+5+25+125 = 156 nodes; afford exactly two shards
        with pytest.raises(WorkLimitExceeded) as exc:
            search_evenly_irreducible(6, 2, work_limit=2 * 156)
        partial = exc.value.state
        assert partial is not None and not partial.complete
        assert 0 < len(partial.done) < 5
        resumed, state_resumed = search_evenly_irreducible(6, 2, state=partial)
        assert [q.coeffs for q, _ in resumed] == [q.coeffs for q, _ in full]
        assert state_resumed.to_json() == state_full.to_json()

    def test_state_serialization_is_byte_stable(self):
        _, state = search_evenly_irreducible(6, 1)
        text = state.to_json()
        assert EvenSearchState.from_json(text).to_json() == text

    def test_checkpoint_mismatch_rejected(self):
        _, state = search_evenly_irreducible(6, 1)
        with pytest.raises(ValueError):
            search_evenly_irreducible(6, 2, state=state)

    def test_preconditions(self):
        with pytest.raises(ValueError):
            search_evenly_irreducible(5, 2)
        with pytest.raises(ValueError):
            search_evenly_irreducible(6, 2, mode="bogus")
