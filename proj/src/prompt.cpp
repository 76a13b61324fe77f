#include "raguard/prompt.hpp"

#include "raguard/errors.hpp"

namespace raguard {

std::size_t estimate_tokens(std::string_view text) {
  return (text.size() + 3) / 4;
}

Utilization context_utilization(const SlottedContext& ctx, std::size_t window_tokens) {
  if (window_tokens == 0) throw ValidationError("context window must be at least 1 token");
  std::size_t tokens = 0;
  for (const ScoredPassage& passage : ctx.assembled()) tokens += estimate_tokens(passage.chunk.text);
  Utilization util;
  util.fraction = static_cast<double>(tokens) / static_cast<double>(window_tokens);
  util.over_budget = util.fraction > 1.0;
  return util;
}

const std::string& default_prompt_template() {
  static const std::string tmpl =
      "You are an assistant for industrial maintenance work. Answer the question\n"
      "using only the passages provided below. If the context does not contain the\n"
      "information needed, say that you do not know instead of guessing.\n"
      "\n"
      "Maintenance Context:\n"
      "{maintenance_context}\n"
      "\n"
      "Safety Context:\n"
      "{safety_context}\n"
      "\n"
      "<<QUESTION>>\n"
      "{question}\n"
      "\n"
      "ANSWER\n"
      "1) Procedure:\n"
      "\n"
      "2) Safety Considerations:\n";
  return tmpl;
}

namespace {

std::string join_section(const std::vector<std::string>& passages) {
  if (passages.empty()) return std::string(kNoContextSentinel);
  std::string joined;
  for (std::size_t i = 0; i < passages.size(); ++i) {
    if (i) joined += "\n\n";
    joined += passages[i];
  }
  return joined;
}

void replace_all(std::string& text, std::string_view placeholder, const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(placeholder, pos)) != std::string::npos) {
    text.replace(pos, placeholder.size(), value);
    pos += value.size();
  }
}

}  // namespace

RenderedPrompt render_prompt(const SlottedContext& ctx, const std::string& question) {
  return render_prompt(ctx, question, default_prompt_template());
}

RenderedPrompt render_prompt(const SlottedContext& ctx, const std::string& question,
                             const std::string& template_text) {
  if (question.empty()) throw ValidationError("question must be non-empty");

  RenderedPrompt prompt;
  prompt.question = question;

  if (ctx.config.policy == Policy::base) {
    // The single ranked list feeds both sections.
    for (const ScoredPassage& p : ctx.assembled()) {
      prompt.maintenance_section.push_back(p.chunk.text);
      prompt.safety_section.push_back(p.chunk.text);
    }
  } else {
    for (const ScoredPassage& p : ctx.knowledge_slots) prompt.maintenance_section.push_back(p.chunk.text);
    for (const ScoredPassage& p : ctx.safety_slots) prompt.safety_section.push_back(p.chunk.text);
    for (const ScoredPassage& p : ctx.wildcard_slots) {
      if (p.origin == Origin::safety)
        prompt.safety_section.push_back(p.chunk.text);
      else
        prompt.maintenance_section.push_back(p.chunk.text);
    }
  }

  prompt.text = template_text;
  replace_all(prompt.text, "{maintenance_context}", join_section(prompt.maintenance_section));
  replace_all(prompt.text, "{safety_context}", join_section(prompt.safety_section));
  replace_all(prompt.text, "{question}", question);
  prompt.token_estimate = estimate_tokens(prompt.text);
  return prompt;
}

}  // namespace raguard
