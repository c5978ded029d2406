"""
Tests for JSON and shorthand input specifications
"""

import numpy as np
import pytest

from citer.core.errors import InvalidRational, SpecError
from citer.core.paths import Path
from citer.core.specs import parse_complex, parse_s_tuple, path_from_spec, series_from_spec


class TestParseComplex:

    @pytest.mark.parametrize(
        "raw, expected",
        [
            ([1, 2], 1 + 2j),
            ((0.5, -1), 0.5 - 1j),
            (3, 3 + 0j),
            ("0.4+0.2j", 0.4 + 0.2j),
            ("0.4 + 0.2i", 0.4 + 0.2j),
            ("-2", -2 + 0j),
        ],
    )
    def test_accepted_forms(self, raw, expected):
        assert parse_complex(raw) == expected

    @pytest.mark.parametrize("raw", [True, "abc", [1], [1, 2, 3], None, {"re": 1}])
    def test_rejected_forms(self, raw):
        with pytest.raises(SpecError):
            parse_complex(raw)


class TestSeriesSpec:

    def test_rational_json(self):
        model = series_from_spec('{"type": "rational", "num": [0, 1], "den": [1, -1]}')
        assert np.allclose(model.coefficients(4), [0, 1, 1, 1, 1])

    def test_character_json(self):
        model = series_from_spec({"type": "character", "modulus": 4, "values": [1, 0, -1, 0]})
        assert model.metadata["modulus"] == 4

    def test_katz_shorthand(self):
        assert series_from_spec("katz a=2").metadata == {"type": "katz", "a": 2}

    def test_character_shorthand(self):
        model = series_from_spec("character mod 4")
        assert np.allclose(model.coefficients(4).real, [0, 1, 0, -1, 0])

    def test_character_shorthand_mod_3(self):
        model = series_from_spec("character mod 3")
        assert np.allclose(model.coefficients(3).real, [0, 1, -1, 0])

    def test_no_real_character(self):
        with pytest.raises(SpecError):
            series_from_spec("character mod 6")

    def test_prime_character(self):
        model = series_from_spec('{"type": "character-prime", "modulus": 5, "order": 4}')
        assert not model.metadata["character"].is_real

    def test_ideal_count_uses_sieve_cap(self):
        model = series_from_spec("ideal-count discriminant=-4", sieve_cap=500)
        assert model.cap == 500

    def test_coefficient_list(self):
        model = series_from_spec({"type": "coeffs", "values": [1, [0, 1]]})
        assert model.coefficient(2) == 1j

    @pytest.mark.parametrize(
        "spec",
        [
            '{"type": "nope"}',
            '{"type": "rational", "num": [0, 1]}',
            '{"type": "character", "modulus": 5, "values": [1, 0, -1, 0]}',
            '{"type": "katz", "a": 1.5}',
            '{"type": "katz", "a": 1}',
            "katz a",
            "[1, 2]",
            "{not json",
        ],
    )
    def test_malformed(self, spec):
        with pytest.raises(SpecError):
            series_from_spec(spec)

    def test_domain_errors_pass_through(self):
        with pytest.raises(InvalidRational):
            series_from_spec('{"type": "rational", "num": [0, 1], "den": [1, -3]}')


class TestOtherSpecs:

    def test_path_spec(self):
        path = path_from_spec('{"segments": [{"line": [[0.5, 0], [0.5, 0.5]]}]}')
        assert path == Path.straight(0.5, 0.5 + 0.5j)

    def test_path_spec_requires_segments(self):
        with pytest.raises(SpecError):
            path_from_spec("{}")

    def test_exponent_tuples(self):
        assert parse_s_tuple("2,1") == (2, 1)
        assert parse_s_tuple("[2.5, [1, 0.5]]") == (2.5, 1 + 0.5j)
        assert parse_s_tuple("3+2j") == (3 + 2j,)

    @pytest.mark.parametrize("text", ["", "[]", "[1,", "2,x"])
    def test_bad_exponent_tuples(self, text):
        with pytest.raises(SpecError):
            parse_s_tuple(text)
