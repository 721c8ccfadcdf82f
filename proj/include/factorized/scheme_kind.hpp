#pragma once

#include <string>
#include <string_view>

namespace factorized {

enum class SchemeKind {
  backward_euler,
  crank_nicolson,
  sm2_direct,
  three_level_factorized,
  predictor_corrector_factorized,
};

/// How the three-level scheme obtains y^1.
enum class Bootstrap {
  exact_first_level,
  crank_nicolson_first_level,
};

/// Right-hand side of the second-order family (sm2, three-level, corrector):
/// f(t^{n+1/2}) or (E + tau A / 2) f(t^{n+1/2}).
enum class RhsTreatment {
  midpoint,
  lifted_midpoint,
};

/// Short command-line names: be, cn, sm2, three-level, pc-fact.
std::string_view short_name(SchemeKind kind);
SchemeKind parse_scheme(std::string_view name);

std::string_view short_name(Bootstrap bootstrap);
Bootstrap parse_bootstrap(std::string_view name);

std::string_view short_name(RhsTreatment treatment);

/// Schemes that take a weight sigma.
constexpr bool uses_sigma(SchemeKind kind) {
  return kind == SchemeKind::three_level_factorized || kind == SchemeKind::predictor_corrector_factorized;
}

}  // namespace factorized
