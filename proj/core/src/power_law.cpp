#include <algorithm>
#include <cmath>
#include <sstream>

#include "envelope_kernels.hpp"
#include "supcon/envelope.hpp"
#include "supcon/error.hpp"

namespace supcon {

std::string_view to_string(PowerLawMode mode) {
  return mode == PowerLawMode::convex_lower ? "convex-lower" : "lamination-upper";
}

PowerLawMode parse_power_law_mode(std::string_view text) {
  if (text == "convex-lower") return PowerLawMode::convex_lower;
  if (text == "lamination-upper") return PowerLawMode::lamination_upper;
  throw Error(ErrorCode::unknown_name, "unknown power-law mode '" + std::string(text) + "'");
}

const std::vector<double>& default_p_schedule() {
  static const std::vector<double> s{2, 4, 8, 16, 32, 64, 128};
  return s;
}

PowerLawReport power_law_envelope(const SampledFunction& f, const std::vector<double>& p_schedule,
                                  PowerLawMode mode, const LaminationOptions& lamination) {
  if (p_schedule.empty()) throw Error(ErrorCode::invalid_argument, "empty p schedule");
  for (std::size_t i = 0; i < p_schedule.size(); ++i) {
    if (!(p_schedule[i] > 1.0) || !std::isfinite(p_schedule[i]))
      throw Error(ErrorCode::invalid_argument, "p values must be finite and > 1");
    if (i && !(p_schedule[i] > p_schedule[i - 1]))
      throw Error(ErrorCode::invalid_argument, "p schedule must be increasing");
  }
  PowerLawReport rep;
  rep.mode = mode;
  rep.p_schedule = p_schedule;
  const auto& v = f.values();
  const double fmin = *std::min_element(v.begin(), v.end());
  rep.shift = fmin < 0.0 ? fmin : 0.0;

  {
    std::ostringstream os;
    os << "envelopes computed on the box [-" << f.grid().radius << ", " << f.grid().radius << "]^" << f.grid().d()
       << " only";
    rep.caveats.push_back(os.str());
  }
  if (f.outside() == OutsideMode::clamp)
    rep.caveats.push_back(
        "clamp-to-boundary extension: the function is bounded on the whole space, so every convex or rank-one "
        "convex minorant of f^p is the constant (min f)^p");
  else
    rep.caveats.push_back("plus-infinity extension: result over-estimates the envelope of the unrestricted function");
  if (rep.shift != 0.0) rep.caveats.push_back("values shifted by -min f before taking powers; shift added back");

  std::vector<long double> u(v.size());
  long double c = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    u[k] = static_cast<long double>(v[k]) - static_cast<long double>(rep.shift);
    c = std::max(c, u[k]);
  }
  if (c == 0) {
    for (std::size_t i = 0; i < p_schedule.size(); ++i) rep.per_p.push_back(f);
    rep.limit_estimate = f;
    rep.interior_gap = 0.0;
    return rep;
  }
  long double umin_pos = 1;
  for (auto& x : u) {
    x /= c;
    if (x > 0) umin_pos = std::min(umin_pos, x);
  }

  for (double p : p_schedule) {
    const long double decades = -std::log10(umin_pos);
    if (decades > 12 && decades * p > 4900)
      throw Error(ErrorCode::overflow, "values span too many decades for p = " + std::to_string(p));
    std::vector<long double> w(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) w[k] = std::pow(u[k], static_cast<long double>(p));
    std::vector<long double> e;
    if (f.outside() == OutsideMode::clamp) {
      e.assign(w.size(), *std::min_element(w.begin(), w.end()));
    } else if (mode == PowerLawMode::convex_lower) {
      e = detail::convex_envelope_grid<long double>(f.grid(), w);
    } else {
      LaminationOptions opts = lamination;
      if (!opts.measure) {
        const double inv = 1.0 / p, cc = static_cast<double>(c);
        opts.measure = [inv, cc](double x) { return cc * std::pow(std::max(x, 0.0), inv); };
      }
      e = w;
      const auto out = detail::lamination_grid(f.grid(), e, opts);
      rep.lamination_converged = rep.lamination_converged && out.converged;
    }
    std::vector<double> vals(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
      const long double r = std::pow(std::max(e[k], 0.0L), 1.0L / static_cast<long double>(p));
      vals[k] = static_cast<double>(c * r + static_cast<long double>(rep.shift));
    }
    rep.per_p.push_back(f.with_values(std::move(vals)));
  }
  if (!rep.lamination_converged) rep.caveats.push_back("lamination sweeps stopped before reaching the fixpoint");

  for (std::size_t i = 1; i < rep.per_p.size() && !rep.monotone_violation; ++i) {
    const auto& a = rep.per_p[i - 1].values();
    const auto& b = rep.per_p[i].values();
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k] - b[k] > 1e-7) {
        rep.monotone_violation = MonotoneViolation{p_schedule[i], k, a[k] - b[k]};
        break;
      }
  }
  rep.limit_estimate = rep.per_p.back();
  double excess = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < v.size(); ++k) excess = std::max(excess, rep.limit_estimate->value(k) - v[k]);
  rep.max_excess_over_f = excess;

  const GridSpec& g = f.grid();
  double fmax = 0.0;
  rep.interior_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto idx = g.multi_index(k);
    bool inside = true;
    for (int i : idx) inside = inside && std::abs(g.coordinate(i)) <= 0.5 * g.radius + 1e-12;
    if (!inside) continue;
    fmax = std::max(fmax, std::abs(v[k]));
    const double gap = v[k] - rep.limit_estimate->value(k);
    if (gap > rep.interior_gap) rep.interior_gap = gap, rep.interior_gap_node = k;
  }
  rep.gap_detected = rep.interior_gap > 0.05 * std::max(1.0, fmax);
  return rep;
}

nlohmann::json PowerLawReport::to_json(const std::vector<std::string>& per_p_files,
                                       const std::string& limit_file) const {
  nlohmann::json j;
  j["mode"] = std::string(to_string(mode));
  j["p_schedule"] = p_schedule;
  j["shift"] = shift;
  j["caveats"] = caveats;
  j["per_p"] = per_p_files;
  j["limit"] = limit_file;
  if (monotone_violation)
    j["monotone_violation"] = {{"p", monotone_violation->p},
                               {"node", monotone_violation->node},
                               {"gap", monotone_violation->gap}};
  else
    j["monotone_violation"] = nullptr;
  j["max_excess_over_f"] = max_excess_over_f;
  j["lamination_converged"] = lamination_converged;
  j["interior_gap"] = interior_gap;
  j["interior_gap_node"] = interior_gap_node;
  j["classification"] = gap_detected ? "gap-detected" : "consistent-with-curl-infty";
  j["statement"] = std::string(notion_statement(Notion::curl_infinity));
  return j;
}

}  // namespace supcon
