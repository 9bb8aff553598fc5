import pytest

from flint.errors import InvariantError, LexiconFormatError
from flint.resources import bundled_dir, load_lexicon


def test_bundled_lexicons_all_load(resources):
    assert resources.keyboard and resources.ocr and resources.synonyms
    assert resources.gazetteer.categories == ("PER", "LOC", "ORG")


def test_adjacency_symmetric(resources):
    for key, neighbors in resources.keyboard.items():
        for n in neighbors:
            assert key in resources.keyboard[n], f"{key}->{n} not symmetric"


def test_adjacency_qwerty_row():
    table = load_lexicon(bundled_dir() / "keyboard.tsv", "adjacency")
    assert table["a"] == frozenset("qwsz")


def test_confusion_replacement_never_key(resources):
    for key, repls in resources.ocr.items():
        assert key not in repls


def test_canonical_pairs_present(resources):
    assert "difinately" in resources.spelling["definitely"]
    assert resources.acronyms["NLP"] == ("Natural", "Language", "Processing")
    assert resources.acronyms["USTC"][:2] == ("University", "of")
    assert "likes" in resources.synonyms["loves"]
    assert resources.sentiment["tasty"].reversal == "terrible"
    assert resources.sentiment["terrible"].reversal == "tasty"
    assert resources.sentiment["crispy"].reversal == "soggy"
    assert resources.sentiment["soggy"].reversal == "crispy"
    assert "fine" in resources.synonyms["good"]


def test_contraction_bijection_roundtrip(resources):
    table = resources.contractions
    for phrase, short in table.contract.items():
        assert table.expand[short.lower()] == phrase
    for short, phrase in table.expand.items():
        assert table.contract[phrase].lower() == short


def test_excluded_prefixes(resources):
    assert resources.prefixes.excluded == frozenset({"en", "de", "be", "a", "out"})
    assert not set(resources.prefixes.prefixes) & resources.prefixes.excluded


def test_self_antonym_rejected(tmp_path):
    path = tmp_path / "ant.tsv"
    path.write_text("dark\tdark\n", encoding="utf-8")
    with pytest.raises(InvariantError):
        load_lexicon(path, "antonyms")


def test_asymmetric_adjacency_rejected(tmp_path):
    path = tmp_path / "kb.tsv"
    path.write_text("a\tb\nb\tc\nc\tb\n", encoding="utf-8")
    with pytest.raises(InvariantError):
        load_lexicon(path, "adjacency")


def test_sentiment_reversal_polarity_enforced(tmp_path):
    path = tmp_path / "sent.tsv"
    path.write_text("tasty\tpos nice\nnice\tpos tasty\n", encoding="utf-8")
    with pytest.raises(InvariantError):
        load_lexicon(path, "sentiment")


def test_format_error_reports_line(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("ok\tvalue\nno-tab-here\n", encoding="utf-8")
    with pytest.raises(LexiconFormatError) as err:
        load_lexicon(path, "synonyms")
    assert err.value.line == 2


def test_gazetteer_categories_disjoint_enforced(tmp_path):
    path = tmp_path / "gaz.json"
    path.write_text(
        '{"PER": {"main": {"Springfield": "man"}}, "LOC": {"main": {"Springfield": "america"}}}',
        encoding="utf-8",
    )
    with pytest.raises(InvariantError):
        load_lexicon(path, "gazetteer")


def test_gazetteer_oov_disjoint_from_main(resources):
    gaz = resources.gazetteer
    for cat in gaz.categories:
        assert not set(gaz.surfaces(cat)) & set(gaz.surfaces(cat, "oov"))


def test_gazetteer_longest_match(resources):
    gaz = resources.gazetteer
    assert gaz.longest_match(("I", "saw", "New", "Zealand")) == [(2, 4, "LOC")]
    assert gaz.longest_match(("Fudan", "University", "rocks")) == [(0, 2, "ORG")]


def test_unknown_kind_rejected(tmp_path):
    with pytest.raises(LexiconFormatError):
        load_lexicon(tmp_path / "x.tsv", "nope")


def test_multi_pos_needs_two_classes(tmp_path):
    path = tmp_path / "mp.tsv"
    path.write_text("soup\tnoun\n", encoding="utf-8")
    with pytest.raises(InvariantError):
        load_lexicon(path, "multi_pos")
