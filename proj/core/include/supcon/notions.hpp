#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "supcon/matspace.hpp"

namespace supcon {

enum class Notion {
  level_convex,
  rank_one,
  polyquasiconvex,
  weak_morrey,
  periodic_weak_morrey,
  strong_morrey,
  curl_young,
  curl_infinity,
};

/// The six notions compared across the hierarchy, in report order.
const std::vector<Notion>& hierarchy_notions();

std::string_view notion_id(Notion n);
Notion parse_notion(std::string_view id);

/// The defining inequality of a notion, embedded in every verdict.
std::string_view notion_statement(Notion n);

/// A implies B. `needs_lsc` marks implications valid only for lower
/// semicontinuous functions.
struct Implication {
  Notion from;
  Notion to;
  bool needs_lsc = false;
};

const std::vector<Implication>& implications();

/// Known flag (holds or fails) for one notion, with the reason it is known.
struct DocumentedProperty {
  Notion notion;
  bool holds;
  std::string basis;
};

/// Violations of the implication table (and of the scalar-case
/// equivalences) among a set of flags; empty when consistent.
std::vector<std::string> hierarchy_conflicts(const std::vector<DocumentedProperty>& props, Dims dims,
                                             bool lower_semicontinuous);

std::optional<bool> documented_flag(const std::vector<DocumentedProperty>& props, Notion n);

}  // namespace supcon
