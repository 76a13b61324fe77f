#include <random>

#include "doctest.h"

#include "fixtures.hpp"

#include "raguard/errors.hpp"
#include "raguard/jsonl.hpp"
#include "raguard/prompt.hpp"

using namespace raguard;

namespace {

ScoredPassage passage(const std::string& id, const std::string& text, Origin origin) {
  ScoredPassage p;
  p.chunk.chunk_id = id;
  p.chunk.doc_id = id;
  p.chunk.text = text;
  p.chunk.span = {0, text.size()};
  p.chunk.corpus_tag = origin == Origin::safety ? CorpusTag::safety : CorpusTag::knowledge;
  p.origin = origin;
  return p;
}

}  // namespace

TEST_CASE("estimate_tokens is ceil(chars / 4)") {
  CHECK(estimate_tokens("") == 0);
  CHECK(estimate_tokens("12345678") == 2);
  CHECK(estimate_tokens("123456789") == 3);
  CHECK(estimate_tokens(std::string(4096 * 4, 'x')) == 4096);
}

TEST_CASE("estimate_tokens split additivity stays within one token") {
  std::mt19937 rng(7);
  for (int round = 0; round < 200; ++round) {
    const std::string text(1 + rng() % 200, 'x');
    const std::size_t cut = rng() % (text.size() + 1);
    const std::size_t whole = estimate_tokens(text);
    const std::size_t split =
        estimate_tokens(text.substr(0, cut)) + estimate_tokens(text.substr(cut));
    CHECK(split >= whole);
    CHECK(split - whole <= 1);
  }
}

TEST_CASE("context_utilization sums passage estimates against the window") {
  SlottedContext empty;
  empty.config.policy = Policy::base;
  CHECK(context_utilization(empty).fraction == 0.0);

  SlottedContext ctx;
  ctx.config.policy = Policy::base;
  ctx.config.top_k = 2;
  ctx.wildcard_slots.push_back(passage("a", std::string(2048, 'x'), Origin::merged));
  ctx.wildcard_slots.push_back(passage("b", std::string(2048, 'y'), Origin::merged));
  const auto util = context_utilization(ctx, 4096);
  CHECK(util.fraction == doctest::Approx(0.25));
  CHECK_FALSE(util.over_budget);

  SlottedContext heavy;
  heavy.config.policy = Policy::base;
  heavy.config.top_k = 10;
  for (int i = 0; i < 10; ++i)
    heavy.wildcard_slots.push_back(passage("p" + std::to_string(i), std::string(2000, 'x'), Origin::merged));
  const auto over = context_utilization(heavy, 4096);
  CHECK(over.fraction == doctest::Approx(5000.0 / 4096.0));  // 1.2207...
  CHECK(over.over_budget);

  CHECK_THROWS_AS(context_utilization(ctx, 0), ValidationError);
}

TEST_CASE("base policy renders the same passages in both sections") {
  SlottedContext ctx;
  ctx.config.policy = Policy::base;
  ctx.config.top_k = 2;
  ctx.wildcard_slots.push_back(passage("a", "first passage", Origin::merged));
  ctx.wildcard_slots.push_back(passage("b", "second passage", Origin::merged));

  const auto prompt = render_prompt(ctx, "How do I replace the seal?");
  CHECK(prompt.maintenance_section == prompt.safety_section);
  REQUIRE(prompt.maintenance_section.size() == 2);

  const auto pos = [&](const std::string& needle) { return prompt.text.find(needle); };
  REQUIRE(pos("Maintenance Context:") != std::string::npos);
  REQUIRE(pos("Safety Context:") != std::string::npos);
  REQUIRE(pos("<<QUESTION>>") != std::string::npos);
  CHECK(pos("Maintenance Context:") < pos("Safety Context:"));
  CHECK(pos("Safety Context:") < pos("<<QUESTION>>"));
  CHECK(pos("<<QUESTION>>") < pos("1) Procedure:"));
  CHECK(pos("1) Procedure:") < pos("2) Safety Considerations:"));
  CHECK(pos("How do I replace the seal?") != std::string::npos);
  CHECK(prompt.token_estimate == estimate_tokens(prompt.text));
}

TEST_CASE("quota policies route wildcards by origin") {
  SlottedContext ctx;
  ctx.config.policy = Policy::safety_clamp;
  ctx.config.top_k = 5;
  ctx.config.k_know = 2;
  ctx.config.k_safe = 1;
  ctx.config.k_fetch = 6;
  ctx.knowledge_slots.push_back(passage("k1", "knowledge one", Origin::knowledge));
  ctx.knowledge_slots.push_back(passage("k2", "knowledge two", Origin::knowledge));
  ctx.safety_slots.push_back(passage("s1", "safety one", Origin::safety));
  ctx.wildcard_slots.push_back(passage("k3", "wild knowledge", Origin::knowledge));
  ctx.wildcard_slots.push_back(passage("s2", "wild safety", Origin::safety));

  const auto prompt = render_prompt(ctx, "question?");
  CHECK(prompt.maintenance_section ==
        std::vector<std::string>{"knowledge one", "knowledge two", "wild knowledge"});
  CHECK(prompt.safety_section == std::vector<std::string>{"safety one", "wild safety"});
}

TEST_CASE("raguard sections carry the quota sizes") {
  SlottedContext ctx;
  ctx.config.policy = Policy::raguard;
  ctx.config.top_k = 5;
  ctx.config.k_know = 2;
  ctx.config.k_safe = 3;
  for (int i = 0; i < 2; ++i)
    ctx.knowledge_slots.push_back(passage("k" + std::to_string(i), "know " + std::to_string(i), Origin::knowledge));
  for (int i = 0; i < 3; ++i)
    ctx.safety_slots.push_back(passage("s" + std::to_string(i), "safe " + std::to_string(i), Origin::safety));

  const auto prompt = render_prompt(ctx, "q?");
  CHECK(prompt.maintenance_section.size() == 2);
  CHECK(prompt.safety_section.size() == 3);
}

TEST_CASE("empty context renders the sentinel but stays complete") {
  SlottedContext ctx;
  ctx.config.policy = Policy::raguard;
  ctx.config.top_k = 2;
  ctx.config.k_know = 1;
  ctx.config.k_safe = 1;

  const auto prompt = render_prompt(ctx, "anything?");
  CHECK(prompt.maintenance_section.empty());
  CHECK(prompt.safety_section.empty());
  CHECK(prompt.text.find(std::string(kNoContextSentinel)) != std::string::npos);
  CHECK(prompt.text.find("<<QUESTION>>") != std::string::npos);

  CHECK_THROWS_AS(render_prompt(ctx, ""), ValidationError);
}

TEST_CASE("rendering is deterministic") {
  SlottedContext ctx;
  ctx.config.policy = Policy::base;
  ctx.config.top_k = 1;
  ctx.wildcard_slots.push_back(passage("a", "text body", Origin::merged));
  CHECK(render_prompt(ctx, "q?").text == render_prompt(ctx, "q?").text);
}

#ifdef RAGUARD_DATA_DIR
TEST_CASE("shipped template file matches the compiled-in template") {
  const auto path = std::filesystem::path(RAGUARD_DATA_DIR) / "prompt_template.txt";
  CHECK(read_text_file(path) == default_prompt_template());
}
#endif

#ifdef RAGUARD_GOLDEN_DIR
TEST_CASE("golden prompt fixtures") {
  SlottedContext base_ctx;
  base_ctx.config.policy = Policy::base;
  base_ctx.config.top_k = 2;
  base_ctx.wildcard_slots.push_back(passage("a", "Inspect the seal housing.", Origin::merged));
  base_ctx.wildcard_slots.push_back(passage("b", "Torque bolts to spec.", Origin::merged));
  const auto base_prompt = render_prompt(base_ctx, "How do I replace the pump seal?");

  SlottedContext rg_ctx;
  rg_ctx.config.policy = Policy::raguard;
  rg_ctx.config.top_k = 3;
  rg_ctx.config.k_know = 1;
  rg_ctx.config.k_safe = 2;
  rg_ctx.knowledge_slots.push_back(passage("k", "Drain the oil first.", Origin::knowledge));
  rg_ctx.safety_slots.push_back(passage("s1", "Isolate the equipment before work.", Origin::safety));
  rg_ctx.safety_slots.push_back(passage("s2", "Wear cut-resistant gloves.", Origin::safety));
  const auto rg_prompt = render_prompt(rg_ctx, "How do I drain the gearbox?");

  const auto golden = std::filesystem::path(RAGUARD_GOLDEN_DIR);
  CHECK(base_prompt.text == read_text_file(golden / "prompt_base.txt"));
  CHECK(rg_prompt.text == read_text_file(golden / "prompt_raguard.txt"));
}
#endif
