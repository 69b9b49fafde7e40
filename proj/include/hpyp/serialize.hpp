#pragma once

#include <string>

#include <json.hpp>

#include "hpyp/asymptotics.hpp"
#include "hpyp/harness.hpp"
#include "hpyp/moments.hpp"

namespace hpyp {

inline constexpr int kSchemaVersion = 1;

// Wall-clock provenance wrapper; the `report` payload it wraps is the
// byte-reproducible part, the manifest is not (timestamps).
struct RunManifest {
  std::string tool_version;
  std::string started_at;
  std::string finished_at;
  std::uint64_t master_seed = 0;
  std::string command;
  std::string output_path;
};

std::string iso8601_utc_now();

void to_json(nlohmann::json& j, const TruncationPolicy& p);
void from_json(const nlohmann::json& j, TruncationPolicy& p);
void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);
void to_json(nlohmann::json& j, const ExperimentReport& r);
void from_json(const nlohmann::json& j, ExperimentReport& r);
void to_json(nlohmann::json& j, const VarianceBreakdown& v);
void from_json(const nlohmann::json& j, VarianceBreakdown& v);
void to_json(nlohmann::json& j, const Composition& c);
void from_json(const nlohmann::json& j, Composition& c);
void to_json(nlohmann::json& j, const CoefficientTable& t);
void to_json(nlohmann::json& j, const MomentResult& m);
void to_json(nlohmann::json& j, const RunManifest& m);

// CSV projections; numeric fields with 17 significant digits. Column orders
// are documented in the README.
std::string coeffs_csv(const CoefficientTable& t);
std::string variance_csv(const VarianceBreakdown& v);
std::string mean_csv(const MomentResult& m);
std::string format_g17(double x);

}  // namespace hpyp
