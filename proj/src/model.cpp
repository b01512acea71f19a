#include "model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace burnstab {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

bool is_valid(const Params& p) noexcept {
  return positive_finite(p.alpha) && positive_finite(p.beta) &&
         positive_finite(p.gamma) && positive_finite(p.zeta) &&
         positive_finite(p.eta) && positive_finite(p.f0) &&
         std::isfinite(p.theta) && p.theta != 0.0;
}

void validate(const Params& p) {
  auto reject = [](const char* field, const char* why) {
    throw error(errc::invalid_params,
                std::string("parameter ") + field + " " + why);
  };
  if (!positive_finite(p.alpha)) reject("alpha", "must be finite and > 0");
  if (!positive_finite(p.beta)) reject("beta", "must be finite and > 0");
  if (!positive_finite(p.gamma)) reject("gamma", "must be finite and > 0");
  if (!positive_finite(p.zeta)) reject("zeta", "must be finite and > 0");
  if (!positive_finite(p.eta)) reject("eta", "must be finite and > 0");
  if (!positive_finite(p.f0)) reject("f0", "must be finite and > 0");
  if (!std::isfinite(p.theta) || p.theta == 0.0)
    reject("theta", "must be finite and nonzero");
}

State vector_field(const Params& p, const State& s) noexcept {
  const auto d = vector_field_eval<double>(p, {s.a, s.f, s.b});
  return {d[0], d[1], d[2]};
}

Equilibrium equilibrium(const Params& p) {
  validate(p);
  const double a_star = p.eta * p.f0 / p.zeta;
  const double b_star =
      (p.gamma * p.zeta - p.eta * p.f0 * (p.gamma + p.alpha * p.f0)) /
      (p.beta * p.zeta);
  return {a_star, p.f0, b_star};
}

FeasibilityReport feasibility(const Params& p) {
  validate(p);
  FeasibilityReport r;
  const double load = p.eta * p.f0;
  r.margins[0] = p.zeta - load;
  r.margins[1] = p.gamma * p.zeta - (p.gamma + p.alpha * p.f0) * load;
  r.margins[2] = (p.beta + p.gamma + p.alpha * p.f0) * load - p.gamma * p.zeta;
  r.area_bounded = r.margins[0] >= 0.0;
  r.burn_nonnegative = r.margins[1] >= 0.0;
  r.burn_within_land = r.margins[2] >= 0.0;
  return r;
}

std::string to_json(const Params& p) {
  nlohmann::json j;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["gamma"] = p.gamma;
  j["zeta"] = p.zeta;
  j["eta"] = p.eta;
  j["theta"] = p.theta;
  j["f0"] = p.f0;
  return j.dump();
}

Params params_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, std::string("bad params JSON: ") + e.what());
  }
  Params p;
  try {
    p.alpha = j.at("alpha").get<double>();
    p.beta = j.at("beta").get<double>();
    p.gamma = j.at("gamma").get<double>();
    p.zeta = j.at("zeta").get<double>();
    p.eta = j.at("eta").get<double>();
    p.theta = j.at("theta").get<double>();
    p.f0 = j.at("f0").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error,
                std::string("params JSON missing or non-numeric key: ") +
                    e.what());
  }
  validate(p);
  return p;
}

Params params_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::io_error, "cannot open params file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return params_from_json(buf.str());
}

}  // namespace burnstab
