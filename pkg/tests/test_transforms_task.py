import pytest

from flint import Sample, Task, TextField, create_transform
from flint.core.labels import SpanLabel, bio_decode
from flint.errors import NotApplicable, TaskError
from corpora import absa_toy


def seq(tokens, tags, sid="n"):
    return Sample(sid, Task.SEQUENCE, {"text": TextField.from_texts(tokens)}, tuple(tags))


def clf(text, label="positive", sid="s"):
    return Sample(sid, Task.CLASSIFICATION, {"text": TextField.from_raw(text)}, label)


def pair(premise, hypothesis, label, sid="p"):
    return Sample(
        sid,
        Task.PAIR,
        {"premise": TextField.from_raw(premise), "hypothesis": TextField.from_raw(hypothesis)},
        label,
    )


def apply_one(name, sample, seed, resources):
    return create_transform(name, resources).apply(sample, seed)[0]


# -- NER ----------------------------------------------------------------


def test_ent_typos_shanghai_fixture(resources):
    s = seq(["She", "visited", "Shanghai"], ["O", "O", "B-LOC"])
    out = apply_one("EntTypos", s, 96, resources)
    assert out.transformed.text.raw == "She visited Shenghai"
    assert out.transformed.label == s.label


def test_ent_typos_touches_only_entities(resources):
    s = seq(["John", "visited", "Shanghai", "yesterday"], ["B-PER", "O", "B-LOC", "O"])
    for seed in range(20):
        out = apply_one("EntTypos", s, seed, resources)
        for edit in out.trace.field_edits["text"]:
            assert s.label[edit.start] != "O"


def test_ent_typos_short_entity_skipped(resources):
    s = seq(["go", "to", "LA"], ["O", "O", "B-LOC"])
    with pytest.raises(NotApplicable):
        apply_one("EntTypos", s, 0, resources)


def test_swap_longer_fixtures(resources):
    s = seq(["I", "love", "NLP"], ["O", "O", "B-ORG"])
    out = apply_one("SwapLonger", s, 0, resources)
    assert out.transformed.text.raw == "I love Natural Language Processing"
    assert out.transformed.label == ("O", "O", "B-ORG", "I-ORG", "I-ORG")

    s2 = seq(["USTC", "wins"], ["B-ORG", "O"])
    out2 = apply_one("SwapLonger", s2, 0, resources)
    assert out2.transformed.text.raw == "University of Science and Technology of China wins"
    assert out2.transformed.label[0] == "B-ORG"
    assert set(out2.transformed.label[1:7]) == {"I-ORG"}


def test_swap_longer_no_acronym(resources):
    s = seq(["John", "slept"], ["B-PER", "O"])
    with pytest.raises(NotApplicable):
        apply_one("SwapLonger", s, 0, resources)


def test_oov_case_flip_or_pool(resources):
    s = seq(["I", "love", "NLP"], ["O", "O", "B-ORG"])
    gaz = resources.gazetteer
    for seed in range(12):
        out = apply_one("OOV", s, seed, resources)
        edit = out.trace.field_edits["text"][0]
        surface = " ".join(edit.tokens)
        assert gaz.category_of(surface) is None  # not in the main gazetteer
        if len(edit.tokens) == 1 and edit.tokens[0].lower() == "nlp":
            assert edit.tokens[0] != "NLP"  # case flip differs from original
        else:
            assert surface in gaz.surfaces("ORG", "oov")


def test_cross_category_keeps_gold_tag(resources):
    s = seq(["I", "love", "NLP"], ["O", "O", "B-ORG"])
    gaz = resources.gazetteer
    for seed in range(12):
        out = apply_one("CrossCategory", s, seed, resources)
        edit = out.trace.field_edits["text"][0]
        surface = " ".join(edit.tokens)
        assert gaz.category_of(surface) not in (None, "ORG")
        spans = bio_decode(out.transformed.label)
        assert all(kind == "ORG" for _, _, kind in spans)
        assert out.trace.label_edit.kind == "relabeled"
        # all other tokens byte-identical
        kept = [t for i, t in enumerate(s.text.texts) if i != edit.start]
        new = list(out.transformed.text.texts)
        del new[edit.start : edit.start + len(edit.tokens)]
        assert kept == new


def test_concat_sent(resources):
    a = seq(["John", "lives", "in", "Ireland", "."], ["B-PER", "O", "O", "B-LOC", "O"], "a")
    b = seq(["I", "love", "NLP", "."], ["O", "O", "B-ORG", "O"], "b")
    t = create_transform("ConcatSent", resources)
    out = t.apply_window([a, b], 0)
    assert out.transformed.id == "a+b"
    assert len(out.transformed.text) == 9
    assert out.transformed.label == a.label + b.label
    spans = bio_decode(out.transformed.label)
    assert (7, 8, "ORG") in spans  # second-sentence entity shifted by 5


def test_concat_sent_window_bounds(resources):
    import flint.errors as errors

    with pytest.raises(errors.ConfigError):
        create_transform("ConcatSent:5", resources)
    t4 = create_transform("ConcatSent:4", resources)
    assert t4.window == 4


# -- POS -----------------------------------------------------------------


def test_swap_prefix_fixture_words(resources):
    s = seq(["This", "is", "a", "prefixed", "string"], ["DT", "VBZ", "DT", "VBN", "NN"])
    seen = set()
    for seed in range(30):
        out = apply_one("SwapPrefix", s, seed, resources)
        seen.add(out.transformed.text.texts[3])
        assert out.transformed.label == s.label
    assert "transfixed" in seen and "affixed" in seen
    excluded = resources.prefixes.excluded
    for word in seen:
        assert not any(
            word == p + "fixed" for p in excluded
        ), f"excluded prefix used: {word}"


def test_swap_prefix_no_candidate(resources):
    s = seq(["green", "tea"], ["JJ", "NN"])
    with pytest.raises(NotApplicable):
        apply_one("SwapPrefix", s, 0, resources)


def test_swap_multi_pos(resources):
    s = seq(
        ["There", "is", "an", "apple", "on", "the", "desk"],
        ["EX", "VBZ", "DT", "NN", "IN", "DT", "NN"],
    )
    for seed in range(10):
        out = apply_one("SwapMultiPOS", s, seed, resources)
        assert out.transformed.label == s.label
        edit = out.trace.field_edits["text"][0]
        replacement = edit.tokens[0].lower()
        pos_set = resources.multi_pos[replacement]
        assert "noun" in pos_set  # replaced token was a noun


def test_swap_multi_pos_needs_plain_tags(resources):
    s = seq(["John", "slept"], ["B-PER", "O"])
    with pytest.raises(NotApplicable):
        apply_one("SwapMultiPOS", s, 0, resources)


# -- SA -------------------------------------------------------------------


def test_double_denial_fixture(resources):
    out = apply_one("DoubleDenial", clf("I love NLP"), 0, resources)
    assert out.transformed.text.raw == "I don't hate NLP"
    assert out.transformed.label == "positive"


def test_double_denial_polarity_reversed(resources):
    out = apply_one("DoubleDenial", clf("I love NLP"), 0, resources)
    assert resources.sentiment["love"].polarity != resources.sentiment["hate"].polarity


def test_double_denial_third_person(resources):
    out = apply_one("DoubleDenial", clf("He loves NLP"), 0, resources)
    assert out.transformed.text.raw == "He doesn't hate NLP"


def test_double_denial_no_sentiment_verb(resources):
    with pytest.raises(NotApplicable):
        apply_one("DoubleDenial", clf("the chair stood there"), 0, resources)


def test_add_sum_movie(resources):
    out = apply_one("AddSum:movie", clf("I watched Casablanca yesterday"), 0, resources)
    raw = out.transformed.text.raw
    assert raw.startswith("I watched Casablanca yesterday.")
    assert resources.special["movie"]["Casablanca"] in raw
    assert out.transformed.label == "positive"


def test_add_sum_no_mention(resources):
    with pytest.raises(NotApplicable):
        apply_one("AddSum:movie", clf("I watched something"), 0, resources)


def test_add_sum_sequence_task_rejected(resources):
    s = seq(["I", "watched", "Casablanca"], ["O", "O", "O"])
    with pytest.raises(TaskError):
        apply_one("AddSum:movie", s, 0, resources)


def test_swap_special_entity(resources):
    sample = clf("I watched Casablanca yesterday")
    for seed in range(5):
        out = apply_one("SwapSpecialEnt:movie", sample, seed, resources)
        title = out.transformed.text.texts[2]
        assert title in resources.special["movie"] and title != "Casablanca"


def test_swap_special_entity_multiword_span(resources):
    sample = clf("Charlie Chaplin was funny")
    out = apply_one("SwapSpecialEnt:person", sample, 1, resources)
    assert "Charlie" not in out.transformed.text.texts
    assert out.transformed.label == "positive"


# -- ABSA ------------------------------------------------------------------


def burger_sample():
    field = TextField.from_raw("Tasty burgers, and crispy fries")
    return Sample(
        "b",
        Task.ABSA,
        {"text": field},
        (SpanLabel("text", 1, 2, "positive"), SpanLabel("text", 5, 6, "positive")),
    )


def test_rev_tgt_burger_fixture(resources):
    out = apply_one("RevTgt", burger_sample(), 0, resources)
    assert out.transformed.text.raw == "Terrible burgers, but crispy fries"
    assert out.transformed.label[0].tag == "negative"
    assert out.transformed.label[1].tag == "positive"
    assert out.trace.label_edit.kind == "relabeled"


def test_rev_tgt_only_target_changes(resources):
    sample = burger_sample()
    out = apply_one("RevTgt", sample, 0, resources)
    flips = [
        (old.tag != new.tag) for old, new in zip(sample.label, out.transformed.label)
    ]
    assert flips == [True, False]


def test_rev_tgt_neutral_not_applicable(resources):
    field = TextField.from_raw("Tasty burgers here")
    sample = Sample("n", Task.ABSA, {"text": field}, (SpanLabel("text", 1, 2, "neutral"),))
    with pytest.raises(NotApplicable):
        apply_one("RevTgt", sample, 0, resources)


def test_rev_tgt_no_opinion_token(resources):
    field = TextField.from_raw("The burgers arrived")
    sample = Sample("n", Task.ABSA, {"text": field}, (SpanLabel("text", 1, 2, "positive"),))
    with pytest.raises(NotApplicable):
        apply_one("RevTgt", sample, 0, resources)


def test_rev_tgt_negated_opinion_skipped(resources):
    field = TextField.from_raw("not tasty burgers")
    sample = Sample("n", Task.ABSA, {"text": field}, (SpanLabel("text", 2, 3, "positive"),))
    with pytest.raises(NotApplicable):
        apply_one("RevTgt", sample, 0, resources)


def test_rev_non_burger_fixture(resources):
    out = apply_one("RevNon", burger_sample(), 0, resources)
    assert out.transformed.text.raw == "Tasty burgers, but soggy fries"
    assert [l.tag for l in out.transformed.label] == ["positive", "positive"]
    assert out.trace.label_edit.preserving


def test_rev_non_labels_identical(resources):
    sample = burger_sample()
    out = apply_one("RevNon", sample, 0, resources)
    assert out.transformed.label == sample.label


def test_rev_non_single_clause_not_applicable(resources):
    field = TextField.from_raw("Tasty burgers")
    sample = Sample("n", Task.ABSA, {"text": field}, (SpanLabel("text", 1, 2, "positive"),))
    with pytest.raises(NotApplicable):
        apply_one("RevNon", sample, 0, resources)


def test_add_diff(resources):
    field = TextField.from_raw("Tasty burgers.")
    sample = Sample("a", Task.ABSA, {"text": field}, (SpanLabel("text", 1, 2, "positive"),))
    existing = {"burgers"}
    for seed in range(6):
        out = apply_one("AddDiff", sample, seed, resources)
        raw = out.transformed.text.raw
        assert raw.startswith("Tasty burgers, but ") and raw.endswith(".")
        assert out.transformed.label == sample.label
        snippet_aspects = {s.aspect for s in resources.aspect_opinions}
        mentioned = [a for a in snippet_aspects if a in raw]
        assert mentioned and not set(mentioned) & existing
        # polarity of the appended clause differs from the target's
        clause = raw[len("Tasty burgers, but ") : -1]
        negatives = {s.negative for s in resources.aspect_opinions}
        assert clause in negatives


# -- NLI --------------------------------------------------------------------


def test_nli_swap_ant_fixture(resources):
    sample = pair("The room is dark", "The room is dark", "entailment")
    out = apply_one("SwapAnt-NLI", sample, 0, resources)
    assert out.transformed.fields["hypothesis"].raw == "The room is light"
    assert out.transformed.fields["premise"].raw == "The room is dark"
    assert out.transformed.label == "contradiction"


def test_nli_swap_ant_entailment_only(resources):
    sample = pair("The room is dark", "The room is dark", "neutral")
    with pytest.raises(NotApplicable):
        apply_one("SwapAnt-NLI", sample, 0, resources)


def test_nli_swap_ant_no_shared_word(resources):
    sample = pair("The box is red", "Something happened", "entailment")
    with pytest.raises(NotApplicable):
        apply_one("SwapAnt-NLI", sample, 0, resources)


def test_overlap_generation(resources):
    t = create_transform("Overlap", resources)
    outs = t.generate(20, 35)
    assert len(outs) == 20
    found = False
    for out in outs:
        p = out.transformed.fields["premise"].texts
        h = out.transformed.fields["hypothesis"].texts
        assert out.transformed.label == "neutral"
        # hypothesis must be a contiguous subsequence of the premise
        assert any(p[i : i + len(h)] == h for i in range(len(p) - len(h) + 1))
        if (
            " ".join(p) == "The judges heard the actors resigned"
            and " ".join(h) == "The judges heard the actors"
        ):
            found = True
    assert found, "expected judges/actors pair not generated under the documented seed"


def test_overlap_count_exact(resources):
    t = create_transform("Overlap", resources)
    assert len(t.generate(7, 0)) == 7


def test_nli_add_sent(resources):
    sample = pair("The room is dark", "The room is dark", "entailment")
    out = apply_one("AddSent", sample, 3, resources)
    assert out.transformed.fields["hypothesis"].raw == "The room is dark"
    premise = out.transformed.fields["premise"].raw
    assert premise.startswith("The room is dark ")
    appended = premise[len("The room is dark ") :]
    assert appended in resources.irrelevant
    assert sample.fields["hypothesis"].raw.lower() not in appended.lower()
    assert out.transformed.label == "entailment"


def test_nli_num_word_fixture(resources):
    sample = pair("Tom has 3 sisters", "Tom has 3 sisters", "entailment")
    out = apply_one("NumWord", sample, 1, resources)
    hyp = out.transformed.fields["hypothesis"].texts
    assert hyp[2] != "3" and hyp[2].isdigit() and len(hyp[2]) == 1
    assert out.transformed.fields["premise"].raw == "Tom has 3 sisters"
    assert out.transformed.label == "contradiction"


def test_nli_num_word_requires_shared_numeral(resources):
    sample = pair("Tom has 3 sisters", "Tom has sisters", "entailment")
    with pytest.raises(NotApplicable):
        apply_one("NumWord", sample, 0, resources)


def test_absa_corpus_transforms_run(resources, absa_data):
    for name in ("RevTgt", "RevNon", "AddDiff"):
        t = create_transform(name, resources)
        produced = 0
        for sample in absa_data:
            try:
                produced += len(t.apply(sample, 11))
            except NotApplicable:
                continue
        assert produced > 0, name
