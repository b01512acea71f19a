#include "atlas.hpp"

#include <cmath>
#include <string>

namespace burnstab {

namespace {

double range_value(const ParamRange& r, int i) {
  if (r.count <= 1) return r.lo;
  return r.lo + (r.hi - r.lo) * i / (r.count - 1);
}

void check_range(const ParamRange& r, const char* name) {
  if (r.count < 1)
    throw error(errc::invalid_argument,
                std::string("range count for ") + name + " must be >= 1");
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi))
    throw error(errc::invalid_argument,
                std::string("range for ") + name + " must be finite");
}

double boundary_gap(const Params& p) {
  const CubicPoly q = characteristic(p);
  return q.c2 * q.c1 - p.beta * p.eta * std::abs(p.theta) * p.f0;
}

Params with_free(const Params& base, FreeParam fp, double v) {
  Params p = base;
  switch (fp) {
    case FreeParam::alpha: p.alpha = v; break;
    case FreeParam::beta: p.beta = v; break;
    case FreeParam::gamma: p.gamma = v; break;
    case FreeParam::zeta: p.zeta = v; break;
    case FreeParam::eta: p.eta = v; break;
    case FreeParam::vartheta: p.theta = -v; break;
    case FreeParam::f0: p.f0 = v; break;
  }
  return p;
}

}  // namespace

std::size_t sweep_size(const SweepSpec& spec) {
  std::size_t n = 1;
  for (const ParamRange* r : {&spec.alpha, &spec.beta, &spec.gamma, &spec.zeta,
                              &spec.eta, &spec.theta, &spec.f0})
    n *= static_cast<std::size_t>(r->count);
  return n;
}

void sweep(const SweepSpec& spec,
           const std::function<void(const SweepRow&)>& emit) {
  check_range(spec.alpha, "alpha");
  check_range(spec.beta, "beta");
  check_range(spec.gamma, "gamma");
  check_range(spec.zeta, "zeta");
  check_range(spec.eta, "eta");
  check_range(spec.theta, "theta");
  check_range(spec.f0, "f0");

  const std::size_t total = sweep_size(spec);
  if (total > spec.max_points)
    throw error(errc::grid_too_large,
                "sweep grid has " + std::to_string(total) +
                    " points, cap is " + std::to_string(spec.max_points));

  SweepRow row;
  row.index = 0;
  for (int ia = 0; ia < spec.alpha.count; ++ia)
    for (int ib = 0; ib < spec.beta.count; ++ib)
      for (int ig = 0; ig < spec.gamma.count; ++ig)
        for (int iz = 0; iz < spec.zeta.count; ++iz)
          for (int ie = 0; ie < spec.eta.count; ++ie)
            for (int it = 0; it < spec.theta.count; ++it)
              for (int i0 = 0; i0 < spec.f0.count; ++i0) {
                row.params = {range_value(spec.alpha, ia),
                              range_value(spec.beta, ib),
                              range_value(spec.gamma, ig),
                              range_value(spec.zeta, iz),
                              range_value(spec.eta, ie),
                              range_value(spec.theta, it),
                              range_value(spec.f0, i0)};
                validate(row.params);
                row.feasibility = feasibility(row.params);
                row.verdict = classify(row.params);
                emit(row);
                ++row.index;
              }
}

std::vector<SweepRow> sweep_collect(const SweepSpec& spec) {
  std::vector<SweepRow> rows;
  rows.reserve(sweep_size(spec));
  sweep(spec, [&rows](const SweepRow& r) { rows.push_back(r); });
  return rows;
}

std::optional<FreeParam> free_param_from_name(std::string_view name) {
  if (name == "alpha") return FreeParam::alpha;
  if (name == "beta") return FreeParam::beta;
  if (name == "gamma") return FreeParam::gamma;
  if (name == "zeta") return FreeParam::zeta;
  if (name == "eta") return FreeParam::eta;
  if (name == "vartheta") return FreeParam::vartheta;
  if (name == "f0") return FreeParam::f0;
  return std::nullopt;
}

double hopf_boundary(const Params& base, FreeParam fp, double lo, double hi) {
  if (!(lo < hi) || !(lo > 0.0) || !std::isfinite(hi))
    throw error(errc::invalid_argument,
                "search interval must satisfy 0 < lo < hi < inf");
  if (fp != FreeParam::vartheta && !(base.theta < 0.0))
    throw error(errc::invalid_argument,
                "the boundary equality needs theta < 0 unless vartheta is free");

  const auto gap = [&](double v) { return boundary_gap(with_free(base, fp, v)); };
  double g_lo = gap(lo);
  double g_hi = gap(hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if ((g_lo > 0.0) == (g_hi > 0.0))
    throw error(errc::no_root_in_interval,
                "boundary equality does not change sign over the interval");

  double a = lo, b = hi;
  while (b - a > 1e-12 * std::max(1.0, std::abs(a))) {
    const double mid = 0.5 * (a + b);
    const double g_mid = gap(mid);
    if (g_mid == 0.0) return mid;
    if ((g_mid > 0.0) == (g_lo > 0.0))
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

FamilyPoint discriminant_witness(WitnessBranch branch, double knob,
                                 double theta) {
  FamilyPoint fp;
  fp.source = branch;

  Params p;
  p.f0 = 1.0;
  double c = 0.0;
  switch (branch) {
    case WitnessBranch::large_alpha_positive_disc: {
      if (knob <= 0.0) knob = 100.0;
      if (theta == 0.0) theta = -1.0;
      c = 0.1;
      p.alpha = knob;
      p.beta = 1.0;
      p.theta = theta;
      fp.branch = DiscSign::positive;
      break;
    }
    case WitnessBranch::small_c_negative_disc_theta_neg: {
      if (knob <= 0.0) knob = 0.01;
      if (theta == 0.0) theta = -1.0;
      if (!(theta < 0.0))
        throw error(errc::invalid_argument, "this branch requires theta < 0");
      c = knob;
      p.alpha = 1.0;
      p.beta = 1.0 / std::abs(theta);
      p.theta = theta;
      fp.branch = DiscSign::negative;
      break;
    }
    case WitnessBranch::small_alpha_negative_disc_theta_pos: {
      if (knob <= 0.0) knob = 1e-3;
      if (theta == 0.0) theta = 1.0;
      if (!(theta > 0.0))
        throw error(errc::invalid_argument, "this branch requires theta > 0");
      c = 1.0;
      p.alpha = knob;
      p.beta = 1.0;
      p.theta = theta;
      fp.branch = DiscSign::negative;
      break;
    }
  }
  p.gamma = c * p.alpha;
  p.eta = c * p.alpha;
  p.zeta = (1.0 + c) * p.alpha;
  validate(p);

  fp.params = p;
  fp.discriminant = discriminant(characteristic(p));

  const bool sign_ok = fp.branch == DiscSign::positive
                           ? fp.discriminant > 0.0
                           : fp.discriminant < 0.0;
  bool condition_ok = true;
  if (branch == WitnessBranch::small_c_negative_disc_theta_neg)
    condition_ok = boundary_gap(p) > 0.0;  // the stable-side inequality
  if (!sign_ok || !condition_ok)
    throw error(errc::branch_condition_unmet,
                "witness point misses its branch condition (discriminant = " +
                    std::to_string(fp.discriminant) + ")");
  return fp;
}

}  // namespace burnstab
