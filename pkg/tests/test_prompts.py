from __future__ import annotations

import json

import pytest

from pricetree.errors import InvalidConfigError
from pricetree.harness.prompts import (
    SYSTEM_MESSAGE,
    ModelProfile,
    build_few_shot_prompt,
    build_zero_shot_prompt,
    load_profile,
)
from pricetree.rng import PcgStream, substream

from factories import make_corpus, make_profile


class TestProfiles:
    def test_defaults_match_the_protocol(self):
        profile = make_profile()
        assert profile.max_tokens == 4000
        assert profile.temperature == 0.0
        assert profile.max_completion_tokens == 32000
        assert profile.reasoning_effort == "high"
        assert profile.concurrency == 8

    def test_load_profile_rejects_unknown_keys(self, tmp_path):
        path = tmp_path / "profile.json"
        path.write_text(json.dumps({"endpoint": "x", "model": "m", "maxtokens": 3}))
        with pytest.raises(InvalidConfigError, match="maxtokens"):
            load_profile(path)

    def test_load_profile(self, tmp_path):
        path = tmp_path / "profile.json"
        path.write_text(
            json.dumps(
                {
                    "endpoint": "https://api.example.com/v1/chat/completions",
                    "model": "big-model",
                    "isReasoning": True,
                    "apiKeyEnv": "EXAMPLE_KEY",
                }
            )
        )
        profile = load_profile(path)
        assert profile.is_reasoning and profile.api_key_env == "EXAMPLE_KEY"
        assert isinstance(profile, ModelProfile)


class TestZeroShot:
    def test_non_reasoning_gets_system_plus_user(self):
        corpus = make_corpus(count=1)
        unanswerable = corpus.instances[1]
        messages = build_zero_shot_prompt(unanswerable, make_profile())
        assert [m.role for m in messages] == ["system", "user"]
        assert messages[0].content == SYSTEM_MESSAGE
        assert "please answer in the form 'Answer: unknown.'" in messages[1].content

    def test_reasoning_gets_user_only(self):
        corpus = make_corpus(count=1)
        messages = build_zero_shot_prompt(corpus.instances[1], make_profile(is_reasoning=True))
        assert [m.role for m in messages] == ["user"]

    def test_question_substituted_verbatim(self):
        corpus = make_corpus(count=1)
        instance = corpus.instances[0]
        messages = build_zero_shot_prompt(instance, make_profile())
        assert instance.full_text in messages[-1].content


class TestFewShot:
    def pool(self):
        return make_corpus(count=5, corpus_seed=777)

    def target(self):
        return make_corpus(count=1, corpus_seed=888).instances[1]

    def test_deterministic_given_stream(self):
        pool, target, profile = self.pool(), self.target(), make_profile()
        first = build_few_shot_prompt(target, pool, PcgStream.from_seed(5), profile)
        second = build_few_shot_prompt(target, pool, PcgStream.from_seed(5), profile)
        assert first == second

    def test_three_of_each_variant(self):
        pool, target = self.pool(), self.target()
        prompt = build_few_shot_prompt(target, pool, PcgStream.from_seed(1), make_profile())
        assert len(prompt.exemplar_ids) == 6
        variants = [pool.by_id(i).variant for i in prompt.exemplar_ids]
        assert variants.count("answerable") == 3
        assert variants.count("unanswerable") == 3

    def test_exemplars_carry_solution_and_answer(self):
        pool, target = self.pool(), self.target()
        prompt = build_few_shot_prompt(target, pool, PcgStream.from_seed(1), make_profile())
        body = prompt.messages[-1].content
        for exemplar_id in prompt.exemplar_ids:
            exemplar = pool.by_id(exemplar_id)
            assert exemplar.full_text in body
            assert exemplar.gold_solution_text in body
            if exemplar.variant == "answerable":
                assert f"Answer: {exemplar.gold_answer}" in body
        assert "Answer: unknown." in body
        assert body.rstrip().endswith("Your solution:")
        assert body.index(target.full_text) > body.index(pool.by_id(prompt.exemplar_ids[-1]).full_text)

    def test_pool_containing_target_pair_rejected(self):
        pool = self.pool()
        target = pool.instances[0]
        with pytest.raises(InvalidConfigError, match="pool contains the target's pair"):
            build_few_shot_prompt(target, pool, PcgStream.from_seed(0), make_profile())

    def test_pool_too_small_rejected(self):
        pool = make_corpus(count=2, corpus_seed=777)
        with pytest.raises(InvalidConfigError, match="at least 3"):
            build_few_shot_prompt(self.target(), pool, PcgStream.from_seed(0), make_profile())

    def test_target_never_sampled_across_seeds(self):
        pool, target, profile = self.pool(), self.target(), make_profile()
        for seed in range(1000):
            prompt = build_few_shot_prompt(target, pool, substream(seed, 0), profile)
            assert target.id not in prompt.exemplar_ids
            assert all(pool.by_id(i).pair_id != target.pair_id for i in prompt.exemplar_ids)
