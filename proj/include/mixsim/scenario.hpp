#pragma once

#include <optional>
#include <string_view>

namespace mixsim {

enum class ScenarioKind {
  kMixNoAttack,          // MIX, every sensor honest
  kMixUnderAttack,       // MIX, sinkholes active
  kTrustMixUnderAttack,  // trustMIX, sinkholes active
};

inline constexpr ScenarioKind kAllScenarios[] = {
    ScenarioKind::kMixNoAttack, ScenarioKind::kMixUnderAttack, ScenarioKind::kTrustMixUnderAttack};

/// Short name used on the command line and as the output directory.
constexpr std::string_view scenario_name(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::kMixNoAttack:
      return "mix";
    case ScenarioKind::kMixUnderAttack:
      return "mix-attack";
    case ScenarioKind::kTrustMixUnderAttack:
      return "trustmix";
  }
  return "unknown";
}

constexpr std::optional<ScenarioKind> parse_scenario(std::string_view name) noexcept {
  for (ScenarioKind kind : kAllScenarios) {
    if (scenario_name(kind) == name) return kind;
  }
  return std::nullopt;
}

constexpr bool attackers_active(ScenarioKind kind) noexcept {
  return kind != ScenarioKind::kMixNoAttack;
}

}  // namespace mixsim
