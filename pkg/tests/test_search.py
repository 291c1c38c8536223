"""Search oracles: longest chains, tight-chain search, monotonicity
sweeps, and the spectrum of maximal chain lengths."""

import pytest

from bruhatchains import (
    BinaryMatrix,
    MarginMismatch,
    MarginPair,
    build_extremes,
    build_poset,
    certificate,
    delta,
    inversion_count,
    longest_chain,
    longest_chain_between,
    maximal_chain_spectrum,
    monotonicity_check,
    tight_chain_search,
    verify_chain,
)

A221_A1 = BinaryMatrix.from_rows(["110", "110", "001"])
A221_A4 = BinaryMatrix.from_rows(["101", "110", "010"])
A221_A5 = BinaryMatrix.from_rows(["011", "110", "100"])


class TestLongestChain:
    def test_singleton(self):
        poset = build_poset(MarginPair((2, 2), (2, 2)))
        length, witness = longest_chain(poset)
        assert length == 0 and witness.length == 0

    def test_42(self, poset_42):
        length, witness = longest_chain(poset_42)
        assert length == 16 == delta(4)
        rep = verify_chain(witness)
        assert rep.valid and rep.length == 16

    def test_52(self, poset_52):
        length, witness = longest_chain(poset_52)
        assert length == 29 == delta(5)
        assert verify_chain(witness).valid

    def test_between_221(self, poset_221):
        a1 = poset_221.index_of(A221_A1)
        a5 = poset_221.index_of(A221_A5)
        assert longest_chain_between(poset_221, a1, a5) == 3
        # the gap in inversion counts is larger than the chain
        assert inversion_count(A221_A5) - inversion_count(A221_A1) == 5

    def test_witness_respects_nu_gap(self, poset_42):
        length, witness = longest_chain(poset_42)
        mats = witness.matrices()
        assert length <= inversion_count(mats[-1]) - inversion_count(mats[0])

    def test_at_least_construction(self, poset_42, poset_52):
        from bruhatchains import build_chain

        assert longest_chain(poset_42)[0] >= build_chain(4).length
        assert longest_chain(poset_52)[0] >= build_chain(5).length


class TestTightChainSearch:
    def test_p4_q4(self):
        p4, q4 = build_extremes(4)
        out = tight_chain_search(p4, q4)
        assert out.found and not out.budget_hit
        rep = verify_chain(out.witness, p4, q4)
        assert rep.length == 16 and rep.tight and rep.endpoints_ok

    def test_trivial_pair(self):
        p4, _ = build_extremes(4)
        out = tight_chain_search(p4, p4)
        assert out.found and out.witness.length == 0

    def test_cover_with_wide_gap_has_no_tight_chain(self):
        out = tight_chain_search(A221_A4, A221_A5)
        assert not out.found and not out.budget_hit
        assert inversion_count(A221_A5) - inversion_count(A221_A4) == 3

    def test_margin_mismatch(self):
        with pytest.raises(MarginMismatch):
            tight_chain_search(A221_A1, build_extremes(4)[0])

    def test_budget(self):
        p6, q6 = build_extremes(6)
        out = tight_chain_search(p6, q6, budget=3)
        assert out.budget_hit and not out.found

    def test_witness_is_tight_everywhere(self, poset_42):
        import random

        rng = random.Random(8)
        for _ in range(30):
            a = rng.choice(poset_42.members)
            c = rng.choice(poset_42.members)
            if inversion_count(a) > inversion_count(c):
                a, c = c, a
            out = tight_chain_search(a, c)
            if out.found:
                rep = verify_chain(out.witness, a, c)
                assert rep.tight and rep.endpoints_ok
                assert rep.length \
                    == inversion_count(c) - inversion_count(a)


class TestMonotonicity:
    def test_zero_violations_on_small_classes(self, poset_221, poset_42):
        for poset in (poset_221, poset_42):
            report = monotonicity_check(poset)
            assert report.pairs_checked > 0
            assert report.violations == []

    def test_certificate_shape(self):
        cert = certificate(A221_A1, A221_A5)
        assert cert["nu_first"] == 1 and cert["nu_second"] == 6
        assert cert["first"]["rows"] == ["110", "110", "001"]
        assert len(cert["sigma_first"]) == 3


class TestSpectrum:
    def test_42(self, poset_42):
        assert maximal_chain_spectrum(poset_42) == {16}

    def test_52(self, poset_52):
        assert maximal_chain_spectrum(poset_52) == {29}

    def test_221(self, poset_221):
        assert maximal_chain_spectrum(poset_221) == {3}
