#include <cmath>

#include "supcon/error.hpp"
#include "supcon/funcspace.hpp"

namespace supcon {

namespace {

using N = Notion;

DocumentedProperty holds(Notion n, std::string basis) { return {n, true, std::move(basis)}; }
DocumentedProperty fails(Notion n, std::string basis) { return {n, false, std::move(basis)}; }

std::vector<DocumentedProperty> all_hold(const std::string& basis, bool curl_infinity) {
  std::vector<DocumentedProperty> p;
  for (Notion n : {N::level_convex, N::rank_one, N::polyquasiconvex, N::weak_morrey, N::periodic_weak_morrey,
                   N::strong_morrey, N::curl_young})
    p.push_back(holds(n, basis));
  if (curl_infinity) p.push_back(holds(N::curl_infinity, "coercive, level convex and lower semicontinuous"));
  return p;
}

double det2(const MatrixPoint& xi) { return xi[0] * xi[3] - xi[1] * xi[2]; }

void require_dims(const MatrixPoint& xi, Dims d, const char* name) {
  if (!(xi.dims() == d)) throw Error(ErrorCode::dimension_mismatch, std::string(name) + " needs " + d.str());
}

double clamp01(double t) { return t <= 0.0 ? 0.0 : (t >= 1.0 ? 1.0 : t); }

double example_d_profile(double r) {
  if (r <= 1.0) return r;
  if (r <= 2.0) return 1.0;
  return 0.5 * r;
}

double ramp_h(double t) {
  if (t <= 1.0) return 0.0;
  if (t <= 2.0) return t - 1.0;
  return 1.0;
}

MatrixPoint m22(double a, double b, double c, double d) { return MatrixPoint(2, 2, {a, b, c, d}); }

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> c;
  const Dims d11{1, 1}, d22{2, 2};

  {
    CorpusEntry e;
    e.name = "chi_det";
    e.dims = d22;
    e.bounded = true;
    e.continuous = false;
    e.lower_semicontinuous = false;
    e.description = "indicator of {det xi >= 1} on 2x2 matrices";
    e.eval = [](const MatrixPoint& xi) {
      require_dims(xi, {2, 2}, "chi_det");
      return det2(xi) >= 1.0 ? 1.0 : 0.0;
    };
    e.properties = {
        fails(N::level_convex, "value 1 at I, the midpoint of diag(2,0) and diag(0,2) where it is 0"),
        holds(N::polyquasiconvex, "g(det) with g the indicator of [1,inf), which is level convex"),
        holds(N::rank_one, "polyquasiconvex"),
        holds(N::weak_morrey, "g(det) with g level convex and Borel"),
        holds(N::periodic_weak_morrey, "g(det) with g level convex and Borel"),
        fails(N::strong_morrey, "not lower semicontinuous on {det = 1}"),
        fails(N::curl_infinity, "not lower semicontinuous"),
    };
    e.anchors = {MatrixPoint::identity(2), m22(2, 0, 0, 0), m22(0, 0, 0, 2)};
    c.push_back(e);
  }
  {
    CorpusEntry e;
    e.name = "chi_det_open";
    e.dims = d22;
    e.bounded = true;
    e.continuous = false;
    e.description = "indicator of {det xi > 1} on 2x2 matrices (lower semicontinuous)";
    e.eval = [](const MatrixPoint& xi) {
      require_dims(xi, {2, 2}, "chi_det_open");
      return det2(xi) > 1.0 ? 1.0 : 0.0;
    };
    e.properties = {
        fails(N::level_convex, "value 1 at 1.5 I, the midpoint of diag(3,0) and diag(0,3) where it is 0"),
        holds(N::polyquasiconvex, "g(det) with g the indicator of (1,inf), level convex and lsc"),
        holds(N::rank_one, "polyquasiconvex"),
        holds(N::weak_morrey, "polyquasiconvex with lsc level convex g"),
        holds(N::periodic_weak_morrey, "polyquasiconvex with lsc level convex g"),
        holds(N::strong_morrey, "polyquasiconvex with lsc level convex g"),
    };
    e.anchors = {MatrixPoint::identity(2), m22(3, 0, 0, 0), m22(0, 0, 0, 3)};
    c.push_back(e);
  }
  c.push_back(one_minus_chi_pair(m22(1, 0, 0, 0), m22(-1, 0, 0, 0)));
  c.back().name = "one_minus_chi_pair";
  {
    CorpusEntry e;
    e.name = "arctan_det";
    e.dims = d22;
    e.bounded = true;
    e.description = "arctan(det xi) on 2x2 matrices";
    e.eval = [](const MatrixPoint& xi) {
      require_dims(xi, {2, 2}, "arctan_det");
      return std::atan(det2(xi));
    };
    e.properties = {
        fails(N::level_convex, "arctan det I > 0 = arctan det of diag(2,0) and diag(0,2)"),
        holds(N::polyquasiconvex, "arctan composed with det, arctan increasing"),
        holds(N::rank_one, "polyquasiconvex"),
        holds(N::weak_morrey, "polyquasiconvex with continuous level convex g"),
        holds(N::periodic_weak_morrey, "polyquasiconvex with continuous level convex g"),
        holds(N::strong_morrey, "polyquasiconvex with continuous level convex g"),
        holds(N::curl_young, "polyquasiconvex"),
    };
    e.anchors = {m22(2, 0, 0, 0), m22(0, 0, 0, 2), MatrixPoint::identity(2)};
    c.push_back(e);
  }
  {
    CorpusEntry e;
    e.name = "W_sup";
    e.dims = d22;
    e.bounded = true;
    e.description = "max{h(|xi|), arctan det xi} with the ramp h = 0, t-1, 1 on [0,1], [1,2], [2,inf)";
    e.eval = [](const MatrixPoint& xi) {
      require_dims(xi, {2, 2}, "W_sup");
      return std::max(ramp_h(xi.norm()), std::atan(det2(xi)));
    };
    e.properties = {
        fails(N::level_convex, "the arctan det part dominates near I and is not level convex"),
        holds(N::curl_young, "curl-Young quasiconvex"),
        holds(N::strong_morrey, "curl-Young quasiconvex"),
        holds(N::rank_one, "curl-Young quasiconvex"),
        holds(N::weak_morrey, "curl-Young quasiconvex"),
        holds(N::periodic_weak_morrey, "curl-Young quasiconvex"),
        fails(N::curl_infinity, "bounded; the power-law limit lies strictly below W"),
    };
    e.anchors = {MatrixPoint::identity(2), m22(1, 0, 0, 0), m22(0, 0, 0, 1)};
    c.push_back(e);
  }
  {
    CorpusEntry e;
    e.name = "clamp1d";
    e.dims = d11;
    e.bounded = true;
    e.description = "0 for t <= 0, t on [0,1], 1 for t >= 1";
    e.eval = [](const MatrixPoint& xi) {
      require_dims(xi, {1, 1}, "clamp1d");
      return clamp01(xi[0]);
    };
    e.properties = all_hold("nondecreasing and continuous", false);
    e.properties.push_back(fails(N::curl_infinity, "bounded and non-constant; (f^p)** vanishes on the line"));
    e.anchors = {MatrixPoint::scalar(0.0), MatrixPoint::scalar(1.0)};
    c.push_back(e);
  }
  {
    CorpusEntry e;
    e.name = "exampleD_scalar";
    e.dims = d11;
    e.coercive = true;
    e.description = "|t| on [-1,1], 1 for 1 <= |t| <= 2, |t|/2 beyond";
    e.eval = [](const MatrixPoint& xi) {
      require_dims(xi, {1, 1}, "exampleD_scalar");
      return example_d_profile(std::abs(xi[0]));
    };
    e.properties = all_hold("even, nondecreasing in |t| and continuous", true);
    e.anchors = {MatrixPoint::scalar(1.0), MatrixPoint::scalar(2.0), MatrixPoint::scalar(-1.0),
                 MatrixPoint::scalar(-2.0)};
    c.push_back(e);
  }
  {
    CorpusEntry e;
    e.name = "exampleD";
    e.dims = d22;
    e.any_dims = true;
    e.coercive = true;
    e.description = "|xi| for |xi| <= 1, 1 for 1 <= |xi| <= 2, |xi|/2 beyond (Frobenius norm)";
    e.eval = [](const MatrixPoint& xi) { return example_d_profile(xi.norm()); };
    e.properties = all_hold("radial and nondecreasing in |xi|, continuous", true);
    c.push_back(e);
  }
  {
    CorpusEntry e;
    e.name = "double_well_1d";
    e.dims = d11;
    e.coercive = true;
    e.description = "min((t-1)^2, (t+1)^2)";
    e.eval = [](const MatrixPoint& xi) {
      require_dims(xi, {1, 1}, "double_well_1d");
      const double t = xi[0];
      return std::min((t - 1.0) * (t - 1.0), (t + 1.0) * (t + 1.0));
    };
    const std::string why = "continuous scalar function that is not level convex";
    for (Notion n : {N::level_convex, N::rank_one, N::polyquasiconvex, N::weak_morrey, N::periodic_weak_morrey,
                     N::strong_morrey, N::curl_young, N::curl_infinity})
      e.properties.push_back(fails(n, why));
    e.anchors = {MatrixPoint::scalar(-1.0), MatrixPoint::scalar(1.0)};
    c.push_back(e);
  }
  {
    CorpusEntry e;
    e.name = "abs";
    e.dims = d11;
    e.any_dims = true;
    e.coercive = true;
    e.description = "Frobenius norm |xi|";
    e.eval = [](const MatrixPoint& xi) { return xi.norm(); };
    e.properties = all_hold("convex", true);
    c.push_back(e);
  }
  {
    CorpusEntry e;
    e.name = "half_space_chi";
    e.dims = d22;
    e.any_dims = true;
    e.bounded = true;
    e.continuous = false;
    e.lower_semicontinuous = false;
    e.description = "indicator of {xi_11 >= 1}";
    e.eval = [](const MatrixPoint& xi) { return xi[0] >= 1.0 ? 1.0 : 0.0; };
    e.properties = {
        holds(N::level_convex, "sublevel sets are half-spaces"),
        holds(N::polyquasiconvex, "level convex"),
        holds(N::weak_morrey, "level convex"),
        holds(N::periodic_weak_morrey, "level convex"),
        holds(N::rank_one, "level convex"),
        fails(N::strong_morrey, "not lower semicontinuous on {xi_11 = 1}"),
    };
    c.push_back(e);
  }
  return c;
}

}  // namespace

CorpusEntry one_minus_chi_pair(const MatrixPoint& xi0, const MatrixPoint& eta0) {
  if (!(xi0.dims() == eta0.dims())) throw Error(ErrorCode::dimension_mismatch, "pair points differ in shape");
  CorpusEntry e;
  e.name = "one_minus_chi_pair(" + xi0.str() + "," + eta0.str() + ")";
  e.dims = xi0.dims();
  e.bounded = true;
  e.continuous = false;
  e.description = "1 - indicator of the two-point set {xi0, eta0}";
  e.eval = [xi0, eta0](const MatrixPoint& xi) {
    require_dims(xi, xi0.dims(), "one_minus_chi_pair");
    return (xi == xi0 || xi == eta0) ? 0.0 : 1.0;
  };
  e.anchors = {xi0, eta0};
  const std::string mid = "value 1 on the open segment between the two zeros";
  e.properties.push_back(fails(N::level_convex, mid));
  if (is_rank_one_connected(xi0, eta0)) {
    e.properties.push_back(fails(N::rank_one, "the two zeros are rank-one connected; " + mid));
    e.properties.push_back(fails(N::polyquasiconvex, "not rank-one quasiconvex"));
    e.properties.push_back(fails(N::strong_morrey, "not rank-one quasiconvex"));
    e.properties.push_back(fails(N::curl_young, "the simple laminate on the two zeros violates it"));
    const auto nu = RankOneDirection::factor(xi0 - eta0).nu();
    if (e.dims.cols == 1) {
      e.properties.push_back(fails(N::weak_morrey, "n = 1: weak Morrey is level convexity"));
      e.properties.push_back(fails(N::periodic_weak_morrey, "n = 1: periodic-weak Morrey is level convexity"));
    } else {
      e.properties.push_back(holds(N::weak_morrey, "no zero-boundary field has gradients in a rank-one pair"));
      bool axis = false;
      for (double v : nu) axis = axis || std::abs(std::abs(v) - 1.0) < 1e-12;
      if (axis)
        e.properties.push_back(
            fails(N::periodic_weak_morrey, "the difference is a (x) e_k, so the sawtooth is Q-periodic"));
    }
  }
  return e;
}

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> registry = build_corpus();
  return registry;
}

const CorpusEntry& corpus_entry(std::string_view name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  throw Error(ErrorCode::unknown_name, "no corpus entry named " + std::string(name));
}

double eval_corpus(std::string_view name, const MatrixPoint& xi) {
  const auto& e = corpus_entry(name);
  if (!e.any_dims && !(e.dims == xi.dims()))
    throw Error(ErrorCode::dimension_mismatch, e.name + " needs " + e.dims.str() + ", got " + xi.dims().str());
  return e.eval(xi);
}

Supremand CorpusEntry::supremand(std::optional<Dims> d) const {
  Dims use = d.value_or(dims);
  if (!any_dims && !(use == dims))
    throw Error(ErrorCode::dimension_mismatch, name + " needs " + dims.str() + ", got " + use.str());
  Supremand s{name, use, eval, {}};
  for (const auto& a : anchors)
    if (a.dims() == use) s.anchors.push_back(a);
  return s;
}

}  // namespace supcon
