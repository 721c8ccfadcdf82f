#include "factorized/scheme_kind.hpp"

#include "factorized/errors.hpp"

namespace factorized {

std::string_view short_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::backward_euler: return "be";
    case SchemeKind::crank_nicolson: return "cn";
    case SchemeKind::sm2_direct: return "sm2";
    case SchemeKind::three_level_factorized: return "three-level";
    case SchemeKind::predictor_corrector_factorized: return "pc-fact";
  }
  return "?";
}

SchemeKind parse_scheme(std::string_view name) {
  for (auto kind : {SchemeKind::backward_euler, SchemeKind::crank_nicolson, SchemeKind::sm2_direct,
                    SchemeKind::three_level_factorized, SchemeKind::predictor_corrector_factorized}) {
    if (short_name(kind) == name) return kind;
  }
  throw ConfigError("unknown scheme '" + std::string(name) + "' (expected be|cn|sm2|three-level|pc-fact)");
}

std::string_view short_name(Bootstrap bootstrap) {
  return bootstrap == Bootstrap::exact_first_level ? "exact" : "cn";
}

Bootstrap parse_bootstrap(std::string_view name) {
  if (name == "exact") return Bootstrap::exact_first_level;
  if (name == "cn") return Bootstrap::crank_nicolson_first_level;
  throw ConfigError("unknown bootstrap '" + std::string(name) + "' (expected exact|cn)");
}

std::string_view short_name(RhsTreatment treatment) {
  return treatment == RhsTreatment::midpoint ? "midpoint" : "lifted_midpoint";
}

}  // namespace factorized
