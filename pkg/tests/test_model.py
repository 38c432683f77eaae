import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from scorepower import (
    ParseError,
    Profile,
    Ranking,
    ScoringCommittee,
    ScoringVector,
    ShapeError,
    SizeLimitError,
    enumerate_rankings,
    normalize_scoring_vector,
    parse_profile,
    parse_ranking,
    parse_rational,
    parse_weights,
    profile_from_index,
    profile_index,
)
from scorepower.model import check_table_size, format_decimal


class TestRanking:
    def test_rank_of_and_alternative_at_are_inverse(self):
        r = Ranking((2, 0, 1))
        assert [r.rank_of(a) for a in range(3)] == [1, 2, 0]
        assert [r.alternative_at(p) for p in range(3)] == [2, 0, 1]

    def test_rejects_non_permutation(self):
        with pytest.raises(ShapeError):
            Ranking((0, 0, 1))
        with pytest.raises(ShapeError):
            Ranking((0, 1, 3))


class TestEnumerateRankings:
    def test_counts_and_order(self):
        rankings = enumerate_rankings(3)
        assert len(rankings) == 6
        assert rankings[0].order == (0, 1, 2)
        assert rankings[-1].order == (2, 1, 0)
        assert len({r.order for r in rankings}) == 6

    @pytest.mark.parametrize("m", [1, 2, 4, 5])
    def test_factorial_count(self, m):
        assert len(enumerate_rankings(m)) == math.factorial(m)

    def test_cap(self):
        with pytest.raises(SizeLimitError):
            enumerate_rankings(7)
        with pytest.raises(ShapeError):
            enumerate_rankings(0)


class TestProfileIndex:
    def test_round_trip_exhaustive_n3_m3(self):
        for k in range(216):
            assert profile_index(profile_from_index(k, 3, 3)) == k

    def test_endpoints(self):
        p = profile_from_index(0, 3, 3)
        assert all(r.order == (0, 1, 2) for r in p.rankings)
        p = profile_from_index(215, 3, 3)
        assert all(r.order == (2, 1, 0) for r in p.rankings)

    def test_player_zero_most_significant(self):
        p = profile_from_index(36, 3, 3)  # one step of player 0's digit
        assert p.rankings[0].order == (0, 2, 1)
        assert p.rankings[1].order == (0, 1, 2)
        assert p.rankings[2].order == (0, 1, 2)

    @given(st.integers(min_value=0, max_value=6**4 - 1))
    def test_round_trip_n4(self, k):
        assert profile_index(profile_from_index(k, 4, 3)) == k

    def test_out_of_range(self):
        from scorepower import ContractViolationError

        with pytest.raises(ContractViolationError):
            profile_from_index(216, 3, 3)

    def test_table_cap(self):
        with pytest.raises(SizeLimitError):
            check_table_size(40, 3)


class TestScoringVector:
    def test_one_s_zero(self):
        v = ScoringVector.one_s_zero(Fraction(1, 2))
        assert v.scores == (Fraction(1), Fraction(1, 2), Fraction(0))
        assert v.mid_score == Fraction(1, 2)

    def test_s_out_of_range(self):
        with pytest.raises(ShapeError):
            ScoringVector.one_s_zero(Fraction(3, 2))

    def test_rejects_increasing_or_constant(self):
        with pytest.raises(ShapeError):
            ScoringVector((Fraction(0), Fraction(1), Fraction(0)))
        with pytest.raises(ShapeError):
            ScoringVector((Fraction(1), Fraction(1), Fraction(1)))
        with pytest.raises(ShapeError):
            ScoringVector((Fraction(1),))

    def test_normalize(self):
        borda = ScoringVector((Fraction(2), Fraction(1), Fraction(0)))
        assert normalize_scoring_vector(borda).scores == (
            Fraction(1),
            Fraction(1, 2),
            Fraction(0),
        )
        shifted = ScoringVector((Fraction(7), Fraction(5), Fraction(3)))
        assert normalize_scoring_vector(shifted).scores == (
            Fraction(1),
            Fraction(1, 2),
            Fraction(0),
        )

    def test_normalize_is_idempotent(self):
        v = ScoringVector((Fraction(3), Fraction(1), Fraction(1), Fraction(0)))
        norm = normalize_scoring_vector(v)
        assert normalize_scoring_vector(norm) == norm
        assert norm.scores[0] == 1 and norm.scores[-1] == 0


class TestScoringCommittee:
    def test_shape_checks(self):
        v = ScoringVector.one_s_zero(0)
        with pytest.raises(ShapeError):
            ScoringCommittee((Fraction(1),), v)
        with pytest.raises(ShapeError):
            ScoringCommittee((Fraction(1), Fraction(-1)), v)
        with pytest.raises(ShapeError):
            ScoringCommittee((Fraction(0), Fraction(0)), v)

    def test_weights_coerced_to_fractions(self):
        c = ScoringCommittee((5, 4, 3), ScoringVector.one_s_zero(0))
        assert c.weights == (Fraction(5), Fraction(4), Fraction(3))
        assert (c.n, c.m) == (3, 3)


class TestParsing:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("1/2", Fraction(1, 2)),
            ("0.05", Fraction(1, 20)),
            ("3", Fraction(3)),
            ("-1/4", Fraction(-1, 4)),
            (" 2/3 ", Fraction(2, 3)),
        ],
    )
    def test_parse_rational(self, text, expected):
        assert parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["", "a", "1/0", "1.2.3", "1e-3"])
    def test_parse_rational_rejects(self, text):
        with pytest.raises(ParseError):
            parse_rational(text)

    def test_parse_rational_decimal_limit(self):
        assert parse_rational("0.333333", max_decimals=6) == Fraction(333333, 10**6)
        with pytest.raises(ParseError):
            parse_rational("0.3333333", max_decimals=6)

    def test_parse_weights(self):
        assert parse_weights("5,4,3,1") == (
            Fraction(5),
            Fraction(4),
            Fraction(3),
            Fraction(1),
        )
        assert parse_weights("1/2,1/3,1/6") == (
            Fraction(1, 2),
            Fraction(1, 3),
            Fraction(1, 6),
        )
        with pytest.raises(ParseError):
            parse_weights("")

    def test_parse_ranking_letters_and_digits(self):
        assert parse_ranking("B>C>A", 3).order == (1, 2, 0)
        assert parse_ranking("b > c > a", 3).order == (1, 2, 0)
        assert parse_ranking("1>2>0", 3).order == (1, 2, 0)

    def test_parse_ranking_errors_carry_position(self):
        with pytest.raises(ParseError) as exc:
            parse_ranking("B>?>A", 3)
        assert exc.value.position is not None
        with pytest.raises(ParseError):
            parse_ranking("B>B>A", 3)
        with pytest.raises(ParseError):
            parse_ranking("D>B>A", 3)

    def test_parse_profile(self):
        p = parse_profile("B>C>A;A>C>B;A>B>C;B>C>A", 4, 3)
        assert p.n == 4
        assert p.rankings[0].order == (1, 2, 0)
        with pytest.raises(ParseError):
            parse_profile("A>B>C;A>B>C", 3, 3)


class TestFormatDecimal:
    @pytest.mark.parametrize(
        "value,places,expected",
        [
            (Fraction(588, 864), 4, "0.6806"),
            (Fraction(1, 2), 0, "1"),  # 0 places renders the rounded integer
            (Fraction(5, 100000), 4, "0.0001"),  # half rounds away from zero
            (Fraction(-5, 100000), 4, "-0.0001"),
            (Fraction(1), 4, "1.0000"),
        ],
    )
    def test_rounding(self, value, places, expected):
        assert format_decimal(value, places) == expected

    def test_half_away_from_zero_not_bankers(self):
        assert format_decimal(Fraction(25, 1000), 2) == "0.03"
        assert format_decimal(Fraction(35, 1000), 2) == "0.04"


class TestProfile:
    def test_replace(self):
        p = profile_from_index(0, 3, 3)
        q = p.replace(1, Ranking((2, 1, 0)))
        assert q.rankings[1].order == (2, 1, 0)
        assert p.rankings[1].order == (0, 1, 2)  # original untouched
        assert isinstance(q, Profile)
