#include "hardy/serialize.hpp"

#include <fstream>

#include "hardy/error.hpp"

namespace hardy {

using nlohmann::json;

namespace {

std::vector<double> number_array(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("chain file lacks \"") + key + "\"");
  const json& arr = j.at(key);
  if (!arr.is_array()) throw InputError(std::string("\"") + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw InputError(std::string("\"") + key + "\" entry " + std::to_string(i) + " is not a number");
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

json pair_json(BoundaryCase c, ScanPair pr) {
  if (c == BoundaryCase::ND) return {{"ell", pr.ell}, {"m", pr.m}};
  return {{"m", pr.m}};
}

}  // namespace

Chain chain_from_json(const json& j, std::optional<BoundaryCase> override_case) {
  if (!j.is_object()) throw InputError("chain JSON must be an object");
  BoundaryCase c;
  if (override_case) {
    c = *override_case;
  } else if (j.contains("case") && j.at("case").is_string()) {
    c = parse_boundary_case(j.at("case").get<std::string>());
  } else {
    throw InputError("chain JSON needs a string field \"case\" (or pass --case)");
  }
  const std::vector<double> mu = number_array(j, "mu");
  const std::vector<double> nu = number_array(j, "nu");
  return Chain::make(c, mu, nu);
}

Chain load_chain_file(const std::string& path, std::optional<BoundaryCase> override_case) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open chain file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw InputError("chain file " + path + " is not valid JSON: " + err.what());
  }
  return chain_from_json(j, override_case);
}

json chain_to_json(const Chain& chain) {
  return {{"case", std::string(to_string(chain.boundary()))},
          {"mu", std::vector<double>(chain.mu().begin(), chain.mu().end())},
          {"nu", std::vector<double>(chain.nu().begin(), chain.nu().end())}};
}

json to_json(const BoundsReport& r) {
  json certs = {
      {"sigma_p", {{"n", r.sigma.argmax}}},
      {"delta1", {{"f1", r.boundary == BoundaryCase::ND ? "nu_hat[., N]^(1/p*)" : "nu_hat[1, .]^(1/p*)"}}},
      {"delta1_prime", {{r.boundary == BoundaryCase::ND ? "ell" : "m", r.improved.delta1_prime_at}}},
      {"delta_bar1", {{"m", r.improved.delta_bar1_at}}},
  };
  json dp = json::array(), db = json::array();
  for (ScanPair pr : r.family.delta_prime_at) dp.push_back(pair_json(r.boundary, pr));
  for (ScanPair pr : r.family.delta_bar_at) db.push_back(pair_json(r.boundary, pr));
  certs["delta_prime"] = dp;
  certs["delta_bar"] = db;
  return {
      {"case", std::string(to_string(r.boundary))},
      {"p", r.p},
      {"k_p", r.k_p},
      {"sigma_p", r.sigma.value},
      {"argmax_n", r.sigma.argmax},
      {"lower", r.lower},
      {"upper", r.upper},
      {"best_lower", r.best_lower},
      {"best_upper", r.best_upper},
      {"improved",
       {{"delta1", r.improved.delta1},
        {"delta1_prime", r.improved.delta1_prime},
        {"delta_bar1", r.improved.delta_bar1},
        {"ordering_consistent", r.improved.ordering_consistent}}},
      {"iterations", r.iterations},
      {"delta", r.delta},
      {"delta_prime", r.family.delta_prime},
      {"delta_bar", r.family.delta_bar},
      {"exhaustive", r.family.exhaustive},
      {"certificates", certs},
  };
}

json to_json(const VerificationReport& r) {
  json out = json::object();
  for (const Check& c : r.checks) {
    json entry = {{"pass", c.pass}, {"value", c.value}, {"tolerance", c.tolerance}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    out[c.name] = entry;
  }
  return out;
}

json to_json(const EigenSolution& sol, const VerificationReport& checks) {
  return {
      {"case", std::string(to_string(sol.boundary))},
      {"p", sol.p},
      {"lambda", sol.lambda},
      {"g", sol.g},
      {"log_g", sol.log_g},
      {"residual", sol.residual},
      {"terminal", sol.terminal},
      {"iterations", sol.iterations},
      {"polish_iterations", sol.polish_iterations},
      {"bracket", {sol.bracket_lo, sol.bracket_hi}},
      {"used_scan_fallback", sol.used_scan_fallback},
      {"shot_monotone", sol.shot_monotone},
      {"checks", to_json(checks)},
  };
}

json to_json(const DualityReport& r) {
  return {{"lambda", r.lambda}, {"dual_lambda", r.dual_lambda}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"gap", r.gap}};
}

}  // namespace hardy
