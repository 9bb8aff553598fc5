import pytest
from hypothesis import given, strategies as st

from flint.core.tokens import (
    NO_SPACE_AFTER,
    NO_SPACE_BEFORE,
    STRIP_CHARS,
    TextField,
    Token,
    detokenize,
    tokenize,
)


def texts(raw):
    return [t.text for t in tokenize(raw)]


def test_basic_sentence():
    assert texts("I love NLP.") == ["I", "love", "NLP", "."]


def test_apostrophe_stays_internal():
    assert texts("don't stop") == ["don't", "stop"]


def test_leading_at_sign_not_stripped():
    # derived by hand: '@' is not in the strip-punctuation set
    assert texts("@Smith hi!") == ["@Smith", "hi", "!"]


def test_empty_input():
    assert tokenize("") == ()


def test_nested_punctuation():
    assert texts('(he said "stop!")') == ["(", "he", "said", '"', "stop", "!", '"', ")"]


def test_all_punctuation_chunk():
    assert texts("wait ...") == ["wait", ".", ".", "."]


def test_offsets_exact():
    raw = "  He said:  don't!  "
    for tok in tokenize(raw):
        assert raw[tok.char_start : tok.char_end] == tok.text


def test_detokenize_spacing_rule():
    assert detokenize(["I", "love", "NLP", "."]) == "I love NLP."
    assert detokenize(["(", "a", ")", ",", "b"]) == "(a), b"
    # the no-space-after set holds only "(" , so a split apostrophe glues
    # left but not right
    assert detokenize(["she", "'", "s"]) == "she' s"


def test_token_invariants():
    with pytest.raises(ValueError):
        Token("", 0, 1, 0)
    with pytest.raises(ValueError):
        Token("a b", 0, 3, 0)
    with pytest.raises(ValueError):
        Token("a", 2, 2, 0)


def test_field_frozen_bounds():
    with pytest.raises(ValueError):
        TextField.from_raw("one two", frozen=[5])


def normalize_ws(raw: str) -> str:
    """Independent reimplementation of the whitespace rule: split chunks,
    peel edge punctuation, join with the documented spacing."""
    units: list[str] = []
    for chunk in raw.split():
        left, right = 0, len(chunk)
        lead, trail = [], []
        while left < right and chunk[left] in STRIP_CHARS:
            lead.append(chunk[left])
            left += 1
        while right > left and chunk[right - 1] in STRIP_CHARS:
            trail.append(chunk[right - 1])
            right -= 1
        units.extend(lead)
        if left < right:
            units.append(chunk[left:right])
        units.extend(reversed(trail))
    out = []
    prev = None
    for u in units:
        if prev is not None and u not in NO_SPACE_BEFORE and prev not in NO_SPACE_AFTER:
            out.append(" ")
        out.append(u)
        prev = u
    return "".join(out)


@given(
    st.text(
        alphabet=st.sampled_from(list("abcXY12 .,!?()'@-\t\n")),
        max_size=40,
    )
)
def test_roundtrip_matches_normalize_ws(raw):
    assert detokenize(texts(raw)) == normalize_ws(raw)


@given(st.text(alphabet=st.sampled_from(list("ab c.")), max_size=30))
def test_tokenize_offsets_property(raw):
    toks = tokenize(raw)
    last = 0
    for t in toks:
        assert raw[t.char_start : t.char_end] == t.text
        assert t.char_start >= last
        last = t.char_end
