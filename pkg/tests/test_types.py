import pytest

from hifactmix.errors import UnknownLabelError, ValidationError
from hifactmix.types import Claim, EvidenceDoc, FactCheckResult, VeracityLabel


class TestVeracityLabel:
    def test_exactly_four_members_with_codes_0_to_3(self):
        assert [int(l) for l in VeracityLabel] == [0, 1, 2, 3]
        assert len(VeracityLabel) == 4

    def test_canonical_forms(self):
        assert [l.canonical for l in VeracityLabel] == [
            "true", "false", "partially_true", "unverified",
        ]

    @pytest.mark.parametrize("label", list(VeracityLabel))
    def test_round_trip(self, label):
        assert VeracityLabel.parse(label.canonical) == label

    def test_parse_is_case_insensitive(self):
        assert VeracityLabel.parse("True") == VeracityLabel.TRUE
        assert VeracityLabel.parse("PARTIALLY_TRUE") == VeracityLabel.PARTIALLY_TRUE

    def test_parse_aliases(self):
        assert VeracityLabel.parse("partially true") == VeracityLabel.PARTIALLY_TRUE
        assert VeracityLabel.parse("Partly True") == VeracityLabel.PARTIALLY_TRUE

    def test_partially_false_is_rejected(self):
        # not in the label vocabulary; exhaustive check of the 4-member set
        assert "partially false" not in {l.canonical for l in VeracityLabel}
        with pytest.raises(UnknownLabelError) as exc:
            VeracityLabel.parse("partially false")
        assert "partially false" in str(exc.value)

    def test_unknown_string_names_the_offender(self):
        with pytest.raises(UnknownLabelError, match="banana"):
            VeracityLabel.parse("banana")


class TestDomainTypes:
    def test_claim_requires_nonempty_text(self):
        with pytest.raises(ValidationError):
            Claim(id="c1", text="   ")

    def test_evidence_requires_nonempty_text(self):
        with pytest.raises(ValidationError):
            EvidenceDoc(id="e1", text="")

    def test_fact_check_result_validates_probabilities(self):
        with pytest.raises(ValidationError):
            FactCheckResult(
                label=VeracityLabel.TRUE,
                confidence=0.5,
                class_probabilities=(0.5, 0.5, 0.5, 0.5),
                evidence_id="e1",
                evidence_text="x",
                evidence_url="",
                retrieval_distance=0.0,
                explanation="y",
                rouge_l=0.0,
            )

    def test_fact_check_result_confidence_must_be_max(self):
        with pytest.raises(ValidationError):
            FactCheckResult(
                label=VeracityLabel.TRUE,
                confidence=0.2,
                class_probabilities=(0.7, 0.1, 0.1, 0.1),
                evidence_id="e1",
                evidence_text="x",
                evidence_url="",
                retrieval_distance=0.0,
                explanation="y",
                rouge_l=0.0,
            )

    def test_fact_check_result_serializes_canonical_label(self):
        r = FactCheckResult(
            label=VeracityLabel.PARTIALLY_TRUE,
            confidence=0.4,
            class_probabilities=(0.3, 0.2, 0.4, 0.1),
            evidence_id="e1",
            evidence_text="x",
            evidence_url="",
            retrieval_distance=1.5,
            explanation="y",
            rouge_l=0.25,
        )
        assert r.to_dict()["label"] == "partially_true"
