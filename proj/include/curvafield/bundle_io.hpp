#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "curvafield/field_eval.hpp"

namespace curvafield {

std::string sha256_hex(std::string_view data);

nlohmann::json complex_to_json(const SimplicialComplex& c);
nlohmann::json plan_to_json(const DiscretePlan& plan);

/// Digest of the serialized complex and plan. Two bundles built on the same
/// discrete plan share this value regardless of method.
std::string plan_digest(const SimplicialComplex& c, const DiscretePlan& plan);

/// Structured document with complex, plan, assignment and (when present)
/// funnel sections plus a content digest over all of them.
nlohmann::json bundle_to_json(const PlanBundle& b);
std::string write_bundle(const PlanBundle& b);
void write_bundle_file(const PlanBundle& b, const std::string& path);

/// Throws ParseError on malformed documents or a digest mismatch.
PlanBundle read_bundle(std::string_view document);
PlanBundle read_bundle_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace curvafield
