#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace burnstab {

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string to_csv(const Trajectory& traj) {
  std::string out = "t,a,f,b\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const State& s = traj.states[i];
    out += format17(traj.times[i]) + ',' + format17(s.a) + ',' +
           format17(s.f) + ',' + format17(s.b) + '\n';
  }
  for (const Event& ev : traj.events)
    out += std::string("# event,") + event_kind_name(ev.kind) + ',' +
           format17(ev.time) + '\n';
  if (traj.status != RunStatus::completed)
    out += std::string("# status,") + run_status_name(traj.status) + '\n';
  return out;
}

std::string to_csv(const AugmentedTrajectory& traj) {
  std::string out = "t,x1,re_x2,im_x2,re_x3,im_x3,omega\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const AugmentedState& x = traj.states[i];
    out += format17(traj.times[i]) + ',' + format17(x.x1) + ',' +
           format17(x.x2.real()) + ',' + format17(x.x2.imag()) + ',' +
           format17(x.x3.real()) + ',' + format17(x.x3.imag()) + ',' +
           format17(x.omega) + '\n';
  }
  if (traj.status != RunStatus::completed)
    out += std::string("# status,") + run_status_name(traj.status) + '\n';
  return out;
}

std::string sweep_csv_header() {
  return "alpha,beta,gamma,zeta,eta,theta,f0,"
         "area_bounded,burn_nonnegative,burn_within_land,regime,"
         "eig1_re,eig1_im,eig2_re,eig2_im,eig3_re,eig3_im\n";
}

std::string sweep_csv_row(const SweepRow& row) {
  const Params& p = row.params;
  std::string out;
  for (double v : {p.alpha, p.beta, p.gamma, p.zeta, p.eta, p.theta, p.f0})
    out += format17(v) + ',';
  out += std::to_string(row.feasibility.area_bounded ? 1 : 0) + ',';
  out += std::to_string(row.feasibility.burn_nonnegative ? 1 : 0) + ',';
  out += std::to_string(row.feasibility.burn_within_land ? 1 : 0) + ',';
  out += regime_name(row.verdict.regime);
  for (const auto& z : row.verdict.eigenvalues.all())
    out += ',' + format17(z.real()) + ',' + format17(z.imag());
  out += '\n';
  return out;
}

namespace {

nlohmann::json feasibility_to_json_obj(const FeasibilityReport& r) {
  nlohmann::json j;
  j["area_bounded"] = r.area_bounded;
  j["burn_nonnegative"] = r.burn_nonnegative;
  j["burn_within_land"] = r.burn_within_land;
  j["all"] = r.all();
  j["margins"] = {r.margins[0], r.margins[1], r.margins[2]};
  return j;
}

nlohmann::json verdict_to_json_obj(const StabilityVerdict& v) {
  nlohmann::json j;
  j["regime"] = regime_name(v.regime);
  j["condition_lhs"] = v.condition_lhs;
  j["condition_rhs"] = v.condition_rhs;
  nlohmann::json eigs = nlohmann::json::array();
  for (const auto& z : v.eigenvalues.all())
    eigs.push_back({z.real(), z.imag()});
  j["eigenvalues"] = eigs;
  return j;
}

}  // namespace

std::string to_json(const FeasibilityReport& r) {
  return feasibility_to_json_obj(r).dump();
}

std::string to_json(const StabilityVerdict& v) {
  return verdict_to_json_obj(v).dump();
}

std::string equilibrium_json(const Params& p) {
  const Equilibrium e = equilibrium(p);
  nlohmann::json j;
  j["a_star"] = e.a_star;
  j["f_star"] = e.f_star;
  j["b_star"] = e.b_star;
  j["feasibility"] = feasibility_to_json_obj(feasibility(p));
  return j.dump();
}

std::string classify_json(const Params& p) {
  nlohmann::json j = verdict_to_json_obj(classify(p));
  const CubicPoly q = characteristic(p);
  j["characteristic"] = {{"c2", q.c2}, {"c1", q.c1}, {"c0", q.c0}};
  j["critical_vartheta"] = critical_vartheta(p);
  return j.dump();
}

std::string feedback_design_json(double lambda1, const FeedbackGains& g,
                                 const std::array<complexd, 4>& spectrum) {
  nlohmann::json j;
  j["lambda1"] = lambda1;
  j["sigma"] = g.sigma;
  j["tau"] = g.tau;
  nlohmann::json eigs = nlohmann::json::array();
  for (const auto& z : spectrum) eigs.push_back({z.real(), z.imag()});
  j["closed_loop_eigenvalues"] = eigs;
  return j.dump();
}

std::string ensemble_summary_json(const EnsembleSummary& s, RunStatus worst,
                                  const std::vector<std::string>& files) {
  nlohmann::json j;
  j["n"] = s.n;
  j["amplitude"] = s.amplitude;
  j["seed"] = s.seed;
  j["initial_deviation"] = {{"max", s.max_initial}, {"mean", s.mean_initial}};
  j["terminal_deviation"] = {{"max", s.max_terminal},
                             {"mean", s.mean_terminal}};
  j["contracted"] = s.max_terminal < s.max_initial;
  j["status"] = run_status_name(worst);
  j["trajectories"] = files;
  return j.dump();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error(errc::io_error, "cannot open for writing: " + path);
  out << contents;
  if (!out) throw error(errc::io_error, "write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::io_error, "cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace burnstab
