from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from geckit.apply import apply_tags, detokenize
from geckit.errors import ContractViolation
from geckit.tags import (
    Append,
    Case,
    CaseKind,
    DELETE,
    KEEP,
    Merge,
    MergeKind,
    NounNumber,
    NumberKind,
    PtbPos,
    Replace,
    SPELL,
    SPLIT_HYPHEN,
    START_TOKEN,
    VerbForm,
)
from oracles import splice_reference

TOKENS = st.lists(
    st.text(alphabet="abcxyz-", min_size=1, max_size=6).filter(
        lambda t: t != START_TOKEN
    ),
    min_size=0,
    max_size=8,
)


class TestBasicEdits:
    def test_append(self):
        assert apply_tags(["I", "happy"], [Append("am"), KEEP]) == ["I", "am", "happy"]

    def test_capitalise(self):
        assert apply_tags(["london"], [Case(CaseKind.CAPITAL)]) == ["London"]

    def test_naive_plural(self):
        assert apply_tags(["cat"], [NounNumber(NumberKind.PLURAL)]) == ["cats"]

    def test_replace_and_delete(self):
        got = apply_tags(["a", "b", "c"], [Replace("x"), DELETE, KEEP])
        assert got == ["x", "c"]

    def test_length_mismatch_is_contract_violation(self):
        with pytest.raises(ContractViolation):
            apply_tags(["a", "b"], [KEEP])

    @given(TOKENS)
    def test_all_keep_is_identity(self, tokens):
        assert apply_tags(tokens, [KEEP] * len(tokens)) == tokens

    @given(TOKENS)
    def test_delete_all_is_empty(self, tokens):
        assert apply_tags(tokens, [DELETE] * len(tokens)) == []

    @given(
        TOKENS.flatmap(
            lambda toks: st.tuples(
                st.just(toks),
                st.lists(
                    st.one_of(
                        st.just(KEEP),
                        st.just(DELETE),
                        st.text("xyz", min_size=1, max_size=3).map(Append),
                        st.text("xyz", min_size=1, max_size=3).map(Replace),
                    ),
                    min_size=len(toks),
                    max_size=len(toks),
                ),
            )
        )
    )
    def test_splice_semantics_match_reference(self, case):
        tokens, tags = case
        assert apply_tags(tokens, tags) == splice_reference(tokens, tags)

    def test_pure_function(self):
        args = (["a", "b"], [Append("x"), Replace("y")])
        assert apply_tags(*args) == apply_tags(*args) == ["a", "x", "y"]


class TestCase:
    @pytest.mark.parametrize(
        "kind,word,expected",
        [
            (CaseKind.CAPITAL, "lONDON", "London"),
            (CaseKind.CAPITAL_FIRST, "lONDON", "LONDON"),
            (CaseKind.CAPITAL_FIRST, "london", "London"),
            (CaseKind.UPPER, "london", "LONDON"),
            (CaseKind.LOWER, "LoNdOn", "london"),
        ],
    )
    def test_kinds(self, kind, word, expected):
        assert apply_tags([word], [Case(kind)]) == [expected]


class TestMergeSplit:
    def test_merge_space(self):
        got = apply_tags(["foot", "ball"], [Merge(MergeKind.SPACE), KEEP])
        assert got == ["football"]

    def test_merge_hyphen(self):
        got = apply_tags(["well", "known"], [Merge(MergeKind.HYPHEN), KEEP])
        assert got == ["well-known"]

    def test_merge_on_last_token_is_identity(self):
        assert apply_tags(["a"], [Merge(MergeKind.SPACE)]) == ["a"]

    def test_merge_chain(self):
        tags = [Merge(MergeKind.SPACE), Merge(MergeKind.SPACE), KEEP]
        assert apply_tags(["a", "b", "c"], tags) == ["abc"]

    def test_merge_skips_deleted_neighbour(self):
        tags = [Merge(MergeKind.SPACE), DELETE, KEEP]
        assert apply_tags(["a", "b", "c"], tags) == ["ac"]

    def test_split_hyphen(self):
        assert apply_tags(["e-mail"], [SPLIT_HYPHEN]) == ["e", "mail"]
        assert apply_tags(["state-of-the-art"], [SPLIT_HYPHEN]) == [
            "state",
            "of",
            "the",
            "art",
        ]

    def test_split_without_hyphen_is_identity(self):
        assert apply_tags(["plain"], [SPLIT_HYPHEN]) == ["plain"]

    def test_split_all_hyphens_is_identity(self):
        assert apply_tags(["-"], [SPLIT_HYPHEN]) == ["-"]


class TestDegradation:
    def test_spell_without_speller_is_identity(self):
        assert apply_tags(["beleive"], [SPELL]) == ["beleive"]

    def test_inflect_without_engine_is_identity(self):
        from geckit.tags import Inflect

        assert apply_tags(["activity"], [Inflect(PtbPos.NNS)]) == ["activity"]

    def test_verb_form_without_table_is_identity(self):
        tag = VerbForm(PtbPos.VB, PtbPos.VBD)
        assert apply_tags(["go"], [tag]) == ["go"]

    def test_singular_strips_only_trailing_s(self):
        sing = NounNumber(NumberKind.SINGULAR)
        assert apply_tags(["cats"], [sing]) == ["cat"]
        assert apply_tags(["cat"], [sing]) == ["cat"]
        assert apply_tags(["s"], [sing]) == ["s"]


class TestStartToken:
    def test_append_on_start_emits_word_only(self):
        got = apply_tags([START_TOKEN, "happy"], [Append("am"), KEEP])
        assert got == ["am", "happy"]

    def test_keep_on_start_emits_nothing(self):
        assert apply_tags([START_TOKEN, "a"], [KEEP, KEEP]) == ["a"]

    def test_other_tags_on_start_are_identity(self):
        assert apply_tags([START_TOKEN], [DELETE]) == []
        assert apply_tags([START_TOKEN], [Replace("x")]) == []


class TestSpellInflectApplication:
    def test_spell_uses_dictionary(self, small_dict):
        assert apply_tags(["beleive"], [SPELL], speller=small_dict) == ["believe"]

    def test_spell_no_candidate_is_identity(self, small_dict):
        assert apply_tags(["qqqq"], [SPELL], speller=small_dict) == ["qqqq"]

    def test_inflect_uses_engine(self, engine):
        from geckit.tags import Inflect

        got = apply_tags(["activity"], [Inflect(PtbPos.NNS)], inflector=engine)
        assert got == ["activities"]

    def test_verb_form_uses_table(self, verb_forms):
        tag = VerbForm(PtbPos.VB, PtbPos.VBD)
        assert apply_tags(["go"], [tag], verb_forms=verb_forms) == ["went"]
        assert apply_tags(["blork"], [tag], verb_forms=verb_forms) == ["blork"]


class TestDetokenize:
    def test_examples(self):
        assert detokenize(["a", "b"]) == "a b"
        assert detokenize([]) == ""
        assert detokenize(["I", "am", "happy"]) == "I am happy"
