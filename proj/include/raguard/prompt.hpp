#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "raguard/policy.hpp"

namespace raguard {

inline constexpr std::size_t kDefaultContextWindow = 4096;
inline constexpr std::string_view kNoContextSentinel = "[no context retrieved]";

struct RenderedPrompt {
  std::string text;
  std::vector<std::string> maintenance_section;  // passage texts, in slot order
  std::vector<std::string> safety_section;
  std::string question;
  std::size_t token_estimate = 0;
};

// ceil(chars / 4); a deterministic stand-in for a real tokenizer.
std::size_t estimate_tokens(std::string_view text);

struct Utilization {
  double fraction = 0.0;    // unclamped; may exceed 1
  bool over_budget = false;
};

// Estimated tokens of every context passage divided by the window size.
Utilization context_utilization(const SlottedContext& ctx, std::size_t window_tokens = kDefaultContextWindow);

// Template version 1; the same text ships at data/prompt_template.txt.
// Placeholders: {maintenance_context}, {safety_context}, {question}.
const std::string& default_prompt_template();

// Fills the template from the context. Quota policies route knowledge slots
// (plus knowledge-origin wildcards) into the maintenance section and safety
// slots (plus safety-origin wildcards) into the safety section; the base
// policy repeats its single top-K list in both sections.
RenderedPrompt render_prompt(const SlottedContext& ctx, const std::string& question);
RenderedPrompt render_prompt(const SlottedContext& ctx, const std::string& question,
                             const std::string& template_text);

}  // namespace raguard
