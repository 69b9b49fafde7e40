#include "hpyp/serialize.hpp"

#include <cstdio>
#include <ctime>
#include <sstream>

namespace hpyp {

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void to_json(nlohmann::json& j, const TruncationPolicy& p) {
  j = nlohmann::json{{"epsilon", p.epsilon}, {"k_max", p.k_max}};
}

void from_json(const nlohmann::json& j, TruncationPolicy& p) {
  j.at("epsilon").get_to(p.epsilon);
  j.at("k_max").get_to(p.k_max);
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = nlohmann::json{{"schema_version", kSchemaVersion},
                     {"kind", to_string(c.kind)},
                     {"m", c.m},
                     {"L", c.L},
                     {"alpha", c.alpha},
                     {"beta", c.beta},
                     {"theta", c.theta},
                     {"c", c.c},
                     {"replicates", c.replicates},
                     {"truncation", c.truncation},
                     {"master_seed", c.master_seed}};
  if (c.scale_mass) j["scale_mass"] = *c.scale_mass;
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  if (j.contains("schema_version") &&
      j.at("schema_version").get<int>() != kSchemaVersion) {
    throw std::invalid_argument("unsupported schema_version");
  }
  c.kind = experiment_kind_from_string(j.at("kind").get<std::string>());
  j.at("m").get_to(c.m);
  c.L = j.value("L", 1);
  j.at("alpha").get_to(c.alpha);
  j.at("beta").get_to(c.beta);
  c.theta = j.value("theta", 1.0);
  c.c = j.value("c", 1.0);
  j.at("replicates").get_to(c.replicates);
  if (j.contains("truncation")) j.at("truncation").get_to(c.truncation);
  j.at("master_seed").get_to(c.master_seed);
  if (j.contains("scale_mass"))
    c.scale_mass = j.at("scale_mass").get<double>();
  else
    c.scale_mass.reset();
}

void to_json(nlohmann::json& j, const ExperimentReport& r) {
  j = nlohmann::json{{"config", r.config},
                     {"estimate", r.estimate},
                     {"exact_target", r.exact_target},
                     {"std_error", r.std_error},
                     {"z_score", r.z_score},
                     {"capped_draws", r.capped_draws},
                     {"pass", r.pass}};
  if (r.empirical_variance) j["empirical_variance"] = *r.empirical_variance;
  if (r.predicted_variance) j["predicted_variance"] = *r.predicted_variance;
  if (r.ks_statistic) j["ks_statistic"] = *r.ks_statistic;
  if (r.ks_p) j["ks_p"] = *r.ks_p;
  if (r.acceptance_rate) j["acceptance_rate"] = *r.acceptance_rate;
}

namespace {
template <typename T>
std::optional<T> opt_field(const nlohmann::json& j, const char* key) {
  if (j.contains(key)) return j.at(key).get<T>();
  return std::nullopt;
}
}  // namespace

void from_json(const nlohmann::json& j, ExperimentReport& r) {
  j.at("config").get_to(r.config);
  j.at("estimate").get_to(r.estimate);
  j.at("exact_target").get_to(r.exact_target);
  j.at("std_error").get_to(r.std_error);
  j.at("z_score").get_to(r.z_score);
  j.at("capped_draws").get_to(r.capped_draws);
  j.at("pass").get_to(r.pass);
  r.empirical_variance = opt_field<double>(j, "empirical_variance");
  r.predicted_variance = opt_field<double>(j, "predicted_variance");
  r.ks_statistic = opt_field<double>(j, "ks_statistic");
  r.ks_p = opt_field<double>(j, "ks_p");
  r.acceptance_rate = opt_field<double>(j, "acceptance_rate");
}

void to_json(nlohmann::json& j, const VarianceBreakdown& v) {
  j = nlohmann::json{{"sigma2_X", v.sigma2_X},   {"sigma2_T", v.sigma2_T},
                     {"sigma2_1", v.sigma2_1},   {"delta_term", v.delta_term},
                     {"cross_term", v.cross_term}, {"total", v.total}};
}

void from_json(const nlohmann::json& j, VarianceBreakdown& v) {
  j.at("sigma2_X").get_to(v.sigma2_X);
  j.at("sigma2_T").get_to(v.sigma2_T);
  j.at("sigma2_1").get_to(v.sigma2_1);
  j.at("delta_term").get_to(v.delta_term);
  j.at("cross_term").get_to(v.cross_term);
  j.at("total").get_to(v.total);
}

void to_json(nlohmann::json& j, const Composition& c) {
  j = nlohmann::json{{"parts", c.parts}, {"total", c.total}};
}

void from_json(const nlohmann::json& j, Composition& c) {
  j.at("parts").get_to(c.parts);
  j.at("total").get_to(c.total);
}

void to_json(nlohmann::json& j, const CoefficientTable& t) {
  j = nlohmann::json{{"m", t.m},
                     {"L", t.L},
                     {"alpha", t.alpha},
                     {"beta", t.beta},
                     {"c", t.c},
                     {"A", t.A},
                     {"A_tilde", t.A_tilde},
                     {"compositions", t.comps},
                     {"C", t.C},
                     {"B", t.B},
                     {"f_tilde", t.f_tilde}};
}

void to_json(nlohmann::json& j, const MomentResult& m) {
  j = nlohmann::json{
      {"value", m.value}, {"log_value", m.log_value}, {"terms", m.terms}};
}

void to_json(nlohmann::json& j, const RunManifest& m) {
  j = nlohmann::json{{"tool_version", m.tool_version},
                     {"started_at", m.started_at},
                     {"finished_at", m.finished_at},
                     {"master_seed", m.master_seed},
                     {"command", m.command},
                     {"output_path", m.output_path}};
}

std::string coeffs_csv(const CoefficientTable& t) {
  std::ostringstream os;
  os << "j,A_j\n";
  for (size_t j = 0; j < t.A.size(); ++j)
    os << (j + 1) << ',' << format_g17(t.A[j]) << '\n';
  os << "\nj,A_tilde_j\n";
  for (size_t j = 0; j < t.A_tilde.size(); ++j)
    os << (j + 1) << ',' << format_g17(t.A_tilde[j]) << '\n';
  os << "\ncomposition,C_m\n";
  for (size_t i = 0; i < t.comps.size(); ++i) {
    for (size_t l = 0; l < t.comps[i].parts.size(); ++l) {
      os << (l ? "|" : "") << t.comps[i].parts[l];
    }
    os << ',' << format_g17(t.C[i]) << '\n';
  }
  os << "\nk,B_k\n";
  for (size_t k = 0; k < t.B.size(); ++k)
    os << (k + 1) << ',' << format_g17(t.B[k]) << '\n';
  return os.str();
}

std::string variance_csv(const VarianceBreakdown& v) {
  std::ostringstream os;
  os << "sigma2_X,sigma2_T,sigma2_1,delta_term,cross_term,total\n"
     << format_g17(v.sigma2_X) << ',' << format_g17(v.sigma2_T) << ','
     << format_g17(v.sigma2_1) << ',' << format_g17(v.delta_term) << ','
     << format_g17(v.cross_term) << ',' << format_g17(v.total) << '\n';
  return os.str();
}

std::string mean_csv(const MomentResult& m) {
  std::ostringstream os;
  os << "j,term_j\n";
  for (size_t j = 0; j < m.terms.size(); ++j)
    os << (j + 1) << ',' << format_g17(m.terms[j]) << '\n';
  os << "\nvalue,log_value\n"
     << format_g17(m.value) << ',' << format_g17(m.log_value) << '\n';
  return os.str();
}

}  // namespace hpyp
