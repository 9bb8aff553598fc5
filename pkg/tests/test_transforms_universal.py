import math

import pytest

from flint import Sample, Task, TextField, create_transform
from flint.core.edits import ReplaceSpan
from flint.errors import AdapterUnavailable, ConfigError, NotApplicable, TaskError
from flint.transforms import PerturbParams
from flint.transforms.base import eligible_indices


def clf(text, label="positive", sid="s"):
    return Sample(sid, Task.CLASSIFICATION, {"text": TextField.from_raw(text)}, label)


def seq(tokens, tags, sid="n"):
    return Sample(sid, Task.SEQUENCE, {"text": TextField.from_texts(tokens)}, tuple(tags))


def apply_one(name, sample, seed, resources, **kwargs):
    return create_transform(name, resources, **kwargs).apply(sample, seed)[0]


# -- char perturbations -------------------------------------------------


def test_typos_ireland_fixture(resources):
    out = apply_one("Typos", clf("He visits Ireland"), 24, resources)
    assert out.transformed.text.raw == "He visits Irland"


def test_keyboard_word_fixture(resources):
    out = apply_one("Keyboard", clf("the word here"), 63, resources)
    assert out.transformed.text.raw == "the worf here"


def test_ocr_like_fixture(resources):
    out = apply_one("Ocr", clf("they like tea"), 0, resources)
    assert out.transformed.text.raw == "they l1ke tea"


def test_spelling_error_fixture(resources):
    out = apply_one("SpellingError", clf("it is definitely true"), 1, resources)
    assert out.transformed.text.raw == "it is difinately true"
    # whole-word substitution comes from the attested error table
    assert "difinately" in resources.spelling["definitely"]


def osa_distance(a: str, b: str) -> int:
    """Optimal string alignment distance; adjacent transposition costs 1."""
    d = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(len(a) + 1):
        d[i][0] = i
    for j in range(len(b) + 1):
        d[0][j] = j
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            cost = a[i - 1] != b[j - 1]
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
            if i > 1 and j > 1 and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]:
                d[i][j] = min(d[i][j], d[i - 2][j - 2] + 1)
    return d[len(a)][len(b)]


@pytest.mark.parametrize("seed", range(25))
def test_typos_edit_bound_and_first_char(resources, seed):
    sample = clf("wonderful breakfast yesterday morning")
    out = apply_one("Typos", sample, seed, resources)
    for name, edits in out.trace.field_edits.items():
        for edit in edits:
            old = sample.fields[name].texts[edit.start]
            new = edit.tokens[0]
            assert osa_distance(old, new) <= 1
            assert new[0] == old[0]


@pytest.mark.parametrize("seed", range(25))
def test_keyboard_adjacency_postcondition(resources, seed):
    sample = clf("strange melody drifted slowly")
    out = apply_one("Keyboard", sample, seed, resources)
    for name, edits in out.trace.field_edits.items():
        for edit in edits:
            old, new = sample.fields[name].texts[edit.start], edit.tokens[0]
            assert len(old) == len(new)
            diffs = [(a, b) for a, b in zip(old, new) if a != b]
            assert len(diffs) == 1
            a, b = diffs[0]
            assert b.lower() in resources.keyboard[a.lower()]


@pytest.mark.parametrize("seed", range(25))
def test_ocr_confusion_postcondition(resources, seed):
    sample = clf("little olive boats floated east")
    out = apply_one("Ocr", sample, seed, resources)
    for name, edits in out.trace.field_edits.items():
        for edit in edits:
            old, new = sample.fields[name].texts[edit.start], edit.tokens[0]
            options = []
            for i, ch in enumerate(old):
                for repl in resources.ocr.get(ch, resources.ocr.get(ch.lower(), ())):
                    options.append(old[:i] + repl + old[i + 1 :])
            assert new in options


def test_word_ratio_bound(resources):
    text = " ".join(["apple"] * 30)
    sample = clf(text)
    params = PerturbParams(word_ratio=0.1)
    out = create_transform("Typos", resources, params).apply(sample, 3)[0]
    changed = sum(len(e) for e in out.trace.field_edits.values())
    eligible = len(eligible_indices(sample.text))
    assert changed <= math.ceil(0.1 * eligible)
    assert changed >= 1


def test_char_perturb_no_eligible_site(resources):
    with pytest.raises(NotApplicable):
        apply_one("Typos", clf("a an of 12"), 0, resources)


def test_frozen_tokens_untouched(resources):
    field = TextField.from_raw("wonderful breakfast", frozen=[0])
    sample = Sample("f", Task.CLASSIFICATION, {"text": field}, "positive")
    for seed in range(10):
        out = apply_one("Typos", sample, seed, resources)
        assert out.transformed.text.texts[0] == "wonderful"


# -- case, contraction, lexical ------------------------------------------


def test_wordcase_modes(resources):
    assert apply_one("WordCase:upper", clf("I love NLP"), 0, resources).transformed.text.raw == "I LOVE NLP"
    assert apply_one("WordCase:lower", clf("I LOVE NLP"), 0, resources).transformed.text.raw == "i love nlp"
    assert apply_one("WordCase:title", clf("he loves nlp"), 0, resources).transformed.text.raw == "He Loves Nlp"


def test_wordcase_not_applicable_when_identical(resources):
    with pytest.raises(NotApplicable):
        apply_one("WordCase:upper", clf("ALREADY UPPER 123"), 0, resources)


def test_wordcase_preserves_labels_and_counts(resources):
    s = seq(["John", "lives", "here"], ["B-PER", "O", "O"])
    out = apply_one("WordCase:upper", s, 0, resources)
    assert out.transformed.label == s.label
    assert len(out.transformed.text) == len(s.text)


def test_contraction_fixture(resources):
    out = apply_one("Contraction:contract", clf("He will not stop"), 0, resources)
    assert out.transformed.text.raw == "He won't stop"


def test_contraction_expand_inverse(resources):
    out = apply_one("Contraction:expand", clf("He won't stop"), 0, resources)
    assert out.transformed.text.raw == "He will not stop"


def test_contraction_no_match(resources):
    with pytest.raises(NotApplicable):
        apply_one("Contraction:contract", clf("green tea please"), 0, resources)


def test_contraction_merge_carries_first_tag(resources):
    s = seq(["He", "will", "not", "stop"], ["PRP", "MD", "RB", "VB"])
    out = apply_one("Contraction:contract", s, 0, resources)
    assert out.transformed.text.texts == ("He", "won't", "stop")
    assert out.transformed.label == ("PRP", "MD", "VB")


def test_swapsyn_fixture(resources):
    out = apply_one("SwapSyn", clf("He loves NLP"), 1, resources)
    assert out.transformed.text.raw == "He likes NLP"


def test_swapant_tags_unchanged(resources):
    s = seq(["the", "dark", "room"], ["DT", "JJ", "NN"])
    out = apply_one("SwapAnt", s, 0, resources)
    assert out.transformed.text.texts == ("the", "light", "room")
    assert out.transformed.label == s.label


def test_swapant_rejected_for_classification(resources):
    with pytest.raises(TaskError):
        apply_one("SwapAnt", clf("the dark room"), 0, resources)


def test_swap_lexical_no_hit(resources):
    with pytest.raises(NotApplicable):
        apply_one("SwapSyn", clf("zzz qqq xxx"), 0, resources)


# -- numbers, adverbs, append, twitter ------------------------------------


def test_swapnum_fixture(resources):
    out = apply_one("SwapNum", clf("Tom has 3 sisters"), 1, resources)
    assert out.transformed.text.raw == "Tom has 2 sisters"


@pytest.mark.parametrize("seed", range(15))
def test_swapnum_digit_count_preserved(resources, seed):
    sample = clf("drove 120 km in 3 hours")
    out = apply_one("SwapNum", sample, seed, resources)
    for name, edits in out.trace.field_edits.items():
        for edit in edits:
            old, new = sample.fields[name].texts[edit.start], edit.tokens[0]
            assert len(old) == len(new) and new.isdigit() and new != old


def test_swapnum_no_numeral(resources):
    with pytest.raises(NotApplicable):
        apply_one("SwapNum", clf("no numbers here"), 0, resources)


def test_insert_adverb(resources):
    out = apply_one("InsertAdv", clf("He loves NLP"), 0, resources)
    texts = out.transformed.text.texts
    assert len(texts) == 4 and texts[0] == "He" and texts[2] == "loves"
    assert texts[1] in resources.adverbs


def test_insert_adverb_pos_tag(resources):
    s = seq(["He", "loves", "NLP"], ["PRP", "VBZ", "NNP"])
    out = apply_one("InsertAdv", s, 0, resources)
    assert out.transformed.label == ("PRP", "RB", "VBZ", "NNP")


def test_insert_adverb_no_verb(resources):
    with pytest.raises(NotApplicable):
        apply_one("InsertAdv", clf("the quiet street"), 0, resources)


def test_append_irrelevant_empty_corpus_is_config_error(resources):
    import dataclasses

    bare = dataclasses.replace(resources, irrelevant=())
    with pytest.raises(ConfigError):
        create_transform("AppendIrr", bare).apply(clf("I love NLP"), 0)


def test_append_irrelevant(resources):
    out = apply_one("AppendIrr", clf("I love NLP"), 4, resources)
    raw = out.transformed.text.raw
    assert raw.startswith("I love NLP ")
    assert raw[len("I love NLP "):] in [s for s in resources.irrelevant]
    assert out.transformed.label == "positive"


def test_append_irrelevant_ner_tags_outside(resources):
    s = seq(["John", "slept"], ["B-PER", "O"])
    out = apply_one("AppendIrr", s, 4, resources)
    n_new = len(out.transformed.text) - 2
    assert out.transformed.label == ("B-PER", "O") + ("O",) * n_new


def test_twitterify(resources):
    s = seq(["John", "slept"], ["B-PER", "O"])
    for seed in range(6):
        out = apply_one("TwitterType", s, seed, resources)
        texts = out.transformed.text.texts
        tags = out.transformed.label
        has_handle = texts[0].startswith("@")
        has_url = any(t.startswith("http") for t in texts)
        assert has_handle or has_url
        if has_handle:
            assert texts[0] in resources.handles and tags[0] == "O"
        if has_url:
            assert texts[-1] in resources.urls and tags[-1] == "O"


# -- punctuation -----------------------------------------------------------


def test_rmv_punc(resources):
    s = seq(["I", "love", "NLP", "."], ["O", "O", "B-ORG", "O"])
    out = apply_one("RmvPunc", s, 0, resources)
    assert out.transformed.text.texts == ("I", "love", "NLP")
    assert out.transformed.label == ("O", "O", "B-ORG")


def test_rmv_punc_nothing_to_remove(resources):
    with pytest.raises(NotApplicable):
        apply_one("RmvPunc", clf("no punctuation"), 0, resources)


def test_add_punc_tags_extended(resources):
    s = seq(["I", "love", "NLP"], ["O", "O", "B-ORG"])
    for seed in range(6):
        out = apply_one("AddPunc", s, seed, resources)
        new_texts = set(out.transformed.text.texts) - set(s.text.texts)
        assert new_texts <= {",", "(", ")"}
        for tok, tag in zip(out.transformed.text.texts, out.transformed.label):
            if tok in (",", "(", ")"):
                assert tag == "O"


# -- tense -------------------------------------------------------------------


def test_tense_fixture_progressive_to_perfect(resources):
    out = apply_one("Tense", clf("He is studying NLP"), 5, resources)
    assert out.transformed.text.raw == "He has studied NLP"


def test_tense_past_to_present(resources):
    # inflection table row for "love": third-person present is "loves"
    outs = set()
    for seed in range(12):
        outs.add(apply_one("Tense", clf("She loved NLP"), seed, resources).transformed.text.raw)
    assert "She loves NLP" in outs


def test_tense_unknown_verb_skipped(resources):
    with pytest.raises(NotApplicable):
        apply_one("Tense", clf("The librarian sneezed"), 0, resources)


def test_tense_updates_pos_tags(resources):
    s = seq(["She", "loved", "NLP"], ["PRP", "VBD", "NNP"])
    for seed in range(10):
        out = apply_one("Tense", s, seed, resources)
        texts, tags = out.transformed.text.texts, out.transformed.label
        if texts == ("She", "loves", "NLP"):
            assert tags == ("PRP", "VBZ", "NNP")
        if texts == ("She", "will", "love", "NLP"):
            assert tags == ("PRP", "MD", "VB", "NNP")


# -- entities ------------------------------------------------------------------


def test_swap_named_entity_same_category(resources):
    s = seq(["John", "lives", "in", "Ireland"], ["B-PER", "O", "O", "B-LOC"])
    for seed in range(8):
        out = apply_one("SwapNamedEnt", s, seed, resources)
        edits = out.trace.field_edits["text"]
        assert len(edits) == 1
        edit = edits[0]
        old_cat = s.label[edit.start][2:]
        assert " ".join(edit.tokens) in resources.gazetteer.surfaces(old_cat)


def test_swap_named_entity_span_widening(resources):
    s = seq(["Ann", "visited", "Ireland"], ["B-PER", "O", "B-LOC"])
    for seed in range(40):
        out = apply_one("SwapNamedEnt", s, seed, resources)
        if "New" in out.transformed.text.texts:
            assert out.transformed.label[-2:] == ("B-LOC", "I-LOC")
            return
    pytest.skip("multiword replacement never drawn in 40 seeds")


def test_swap_named_entity_gazetteer_match_for_classification(resources):
    out = apply_one("SwapNamedEnt", clf("I love NLP"), 2, resources)
    replacement = out.transformed.text.raw[len("I love "):]
    assert replacement in resources.gazetteer.surfaces("ORG")
    assert replacement != "NLP"


def test_swap_named_entity_none(resources):
    with pytest.raises(NotApplicable):
        apply_one("SwapNamedEnt", clf("nothing to see"), 0, resources)


def test_prejudice_fixture(resources):
    out = apply_one("Prejudice:man", clf("Marry loves NLP and so does Ann"), 0, resources)
    first, rest = out.transformed.text.texts[0], out.transformed.text.texts[-1]
    assert resources.gazetteer.attribute("PER", first) == "man"
    assert resources.gazetteer.attribute("PER", rest) == "man"


def test_prejudice_consistent_mapping(resources):
    out = apply_one("Prejudice:man", clf("Marry met Tom and Marry smiled"), 0, resources)
    texts = out.transformed.text.texts
    assert texts[0] == texts[4]
    assert texts[2] == "Tom"  # already target gender, untouched


def test_prejudice_region(resources):
    out = apply_one("Prejudice:region:asia", clf("He moved from Ireland to France"), 0, resources)
    texts = out.transformed.text.texts
    for tok in texts:
        if resources.gazetteer.category_of(tok) == "LOC":
            assert resources.gazetteer.attribute("LOC", tok) == "asia"


def test_prejudice_no_mention(resources):
    with pytest.raises(NotApplicable):
        apply_one("Prejudice:man", clf("nothing here"), 0, resources)


# -- negation --------------------------------------------------------------------


def test_add_negation_fixture(resources):
    s = seq(["John", "lives", "in", "Ireland"], ["B-PER", "O", "O", "B-LOC"])
    out = apply_one("AddNeg", s, 0, resources)
    assert out.transformed.text.raw == "John doesn't live in Ireland"
    assert out.transformed.label == ("B-PER", "O", "O", "O", "B-LOC")


def test_remove_negation_inverse(resources):
    s = seq(["John", "doesn't", "live", "in", "Ireland"], ["B-PER", "O", "O", "O", "B-LOC"])
    out = apply_one("RmvNeg", s, 0, resources)
    assert out.transformed.text.raw == "John lives in Ireland"
    assert out.transformed.label == ("B-PER", "O", "O", "B-LOC")


def test_remove_negation_copula(resources):
    s = seq(["He", "is", "not", "here"], ["O", "O", "O", "O"])
    out = apply_one("RmvNeg", s, 0, resources)
    assert out.transformed.text.raw == "He is here"


def test_remove_negation_nothing(resources):
    s = seq(["John", "lives", "here"], ["B-PER", "O", "O"])
    with pytest.raises(NotApplicable):
        apply_one("RmvNeg", s, 0, resources)


def test_negation_classification_rejected(resources):
    with pytest.raises(TaskError):
        apply_one("AddNeg", clf("John lives here"), 0, resources)


# -- plugin slot --------------------------------------------------------------------


def test_plugin_unconfigured(resources):
    with pytest.raises(AdapterUnavailable):
        apply_one("BackTrans", clf("I love NLP"), 0, resources)


def test_plugin_echo_is_not_applicable(resources):
    class Echo:
        def rewrite(self, texts):
            return list(texts)

    t = create_transform("BackTrans", resources, options={"adapter": Echo()})
    with pytest.raises(NotApplicable):
        t.apply(clf("I love NLP"), 0)


def test_plugin_paraphrase_applied(resources):
    class Paraphrase:
        def rewrite(self, texts):
            return ["I adore NLP" for _ in texts]

    t = create_transform("BackTrans", resources, options={"adapter": Paraphrase()})
    out = t.apply(clf("I love NLP"), 0)[0]
    assert out.transformed.text.raw == "I adore NLP"
    assert out.transformed.label == "positive"


# -- shared properties ----------------------------------------------------------------


@pytest.mark.parametrize(
    "name", ["Typos", "Keyboard", "Ocr", "SwapSyn", "SwapNum", "InsertAdv", "TwitterType", "Tense"]
)
def test_determinism_fixed_seed(resources, name):
    sample = clf("Tom loves 12 good movies about Ireland")
    t = create_transform(name, resources)
    first = t.apply(sample, 77)
    second = t.apply(sample, 77)
    assert [o.transformed for o in first] == [o.transformed for o in second]


def test_unknown_transform_name(resources):
    with pytest.raises(ConfigError):
        create_transform("Gibberish", resources)


def test_max_outputs_distinct_variants(resources):
    sample = clf("Tom visited wonderful restaurants yesterday evening")
    outs = create_transform("Typos", resources).apply(sample, 9, max_outputs=3)
    raws = [o.transformed.text.raw for o in outs]
    assert 1 <= len(raws) <= 3
    assert len(set(raws)) == len(raws)
    assert all(r != sample.text.raw for r in raws)
