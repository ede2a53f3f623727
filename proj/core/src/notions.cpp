#include "supcon/notions.hpp"

#include "supcon/error.hpp"

namespace supcon {

const std::vector<Notion>& hierarchy_notions() {
  static const std::vector<Notion> order{Notion::level_convex,  Notion::rank_one,
                                         Notion::polyquasiconvex, Notion::weak_morrey,
                                         Notion::periodic_weak_morrey, Notion::strong_morrey};
  return order;
}

std::string_view notion_id(Notion n) {
  switch (n) {
    case Notion::level_convex: return "level-convex";
    case Notion::rank_one: return "rank-one";
    case Notion::polyquasiconvex: return "polyqcx-necessary";
    case Notion::weak_morrey: return "weak-Morrey";
    case Notion::periodic_weak_morrey: return "periodic-weak";
    case Notion::strong_morrey: return "strong-Morrey";
    case Notion::curl_young: return "curl-Young-laminates";
    case Notion::curl_infinity: return "curl-infinity";
  }
  return "?";
}

Notion parse_notion(std::string_view id) {
  for (Notion n : {Notion::level_convex, Notion::rank_one, Notion::polyquasiconvex, Notion::weak_morrey,
                   Notion::periodic_weak_morrey, Notion::strong_morrey, Notion::curl_young,
                   Notion::curl_infinity})
    if (notion_id(n) == id) return n;
  if (id == "weak") return Notion::weak_morrey;
  if (id == "periodic") return Notion::periodic_weak_morrey;
  if (id == "strong") return Notion::strong_morrey;
  if (id == "curl-young") return Notion::curl_young;
  throw Error(ErrorCode::unknown_name, "unknown notion " + std::string(id));
}

std::string_view notion_statement(Notion n) {
  switch (n) {
    case Notion::level_convex:
      return "level convexity: f(l*xi + (1-l)*eta) <= max{f(xi), f(eta)} for all xi, eta and l in (0,1)";
    case Notion::rank_one:
      return "rank-one quasiconvexity: f(l*xi + (1-l)*eta) <= max{f(xi), f(eta)} whenever rank(xi - eta) = 1";
    case Notion::polyquasiconvex:
      return "polyquasiconvexity (necessary test): f(xi) <= max_i f(xi_i) whenever T(xi) = sum_i l_i T(xi_i), "
             "T the vector of all minors";
    case Notion::weak_morrey:
      return "weak Morrey quasiconvexity: f(xi) <= ess sup_Q f(xi + Dphi) for every phi in W0^{1,inf}(Q;R^N)";
    case Notion::periodic_weak_morrey:
      return "periodic-weak Morrey quasiconvexity: f(xi) <= ess sup_Q f(xi + Dphi) for every Q-periodic "
             "Lipschitz phi";
    case Notion::strong_morrey:
      return "strong Morrey quasiconvexity: for all eps, K there is delta such that |Dphi| <= K and "
             "max_{dQ}|phi| <= delta imply f(xi) <= ess sup_Q f(xi + Dphi) + eps";
    case Notion::curl_young:
      return "curl-Young quasiconvexity (laminate subclass): f(barycenter of nu) <= nu-ess sup f for "
             "finite-order laminates nu";
    case Notion::curl_infinity:
      return "curl-infinity quasiconvexity: f = lim_{p->inf} (Q(f^p))^{1/p}";
  }
  return "";
}

const std::vector<Implication>& implications() {
  using N = Notion;
  static const std::vector<Implication> table{
      {N::level_convex, N::rank_one},
      {N::level_convex, N::polyquasiconvex},
      {N::level_convex, N::weak_morrey},
      {N::level_convex, N::periodic_weak_morrey},
      {N::level_convex, N::strong_morrey, true},
      {N::level_convex, N::curl_young},
      {N::polyquasiconvex, N::rank_one},
      {N::strong_morrey, N::periodic_weak_morrey},
      {N::strong_morrey, N::weak_morrey},
      {N::strong_morrey, N::rank_one},
      {N::periodic_weak_morrey, N::weak_morrey},
      {N::periodic_weak_morrey, N::rank_one},
      {N::curl_young, N::strong_morrey, true},
      {N::curl_young, N::rank_one},
      {N::curl_young, N::weak_morrey},
      {N::curl_young, N::periodic_weak_morrey, true},
  };
  return table;
}

std::optional<bool> documented_flag(const std::vector<DocumentedProperty>& props, Notion n) {
  for (const auto& p : props)
    if (p.notion == n) return p.holds;
  return std::nullopt;
}

std::vector<std::string> hierarchy_conflicts(const std::vector<DocumentedProperty>& props, Dims dims,
                                             bool lower_semicontinuous) {
  std::vector<std::string> out;
  for (const auto& imp : implications()) {
    if (imp.needs_lsc && !lower_semicontinuous) continue;
    auto a = documented_flag(props, imp.from);
    auto b = documented_flag(props, imp.to);
    if (a && b && *a && !*b)
      out.push_back(std::string(notion_id(imp.from)) + " holds but " + std::string(notion_id(imp.to)) + " fails");
  }
  if (dims.scalar_case()) {
    // In the scalar case level convexity, polyquasiconvexity and rank-one
    // quasiconvexity coincide.
    const Notion eq[] = {Notion::level_convex, Notion::polyquasiconvex, Notion::rank_one};
    for (Notion x : eq)
      for (Notion y : eq) {
        auto a = documented_flag(props, x);
        auto b = documented_flag(props, y);
        if (x < y && a && b && *a != *b)
          out.push_back("scalar case: " + std::string(notion_id(x)) + " and " + std::string(notion_id(y)) +
                        " must agree");
      }
    if (dims.cols == 1) {
      auto a = documented_flag(props, Notion::level_convex);
      for (Notion y : {Notion::weak_morrey, Notion::periodic_weak_morrey}) {
        auto b = documented_flag(props, y);
        if (a && b && *a != *b)
          out.push_back("n = 1: level-convex and " + std::string(notion_id(y)) + " must agree");
      }
    }
  }
  return out;
}

}  // namespace supcon
