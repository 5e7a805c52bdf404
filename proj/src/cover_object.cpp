#include "coverfollow/cover_object.hpp"

#include <cctype>
#include <string>

namespace coverfollow {

std::string_view to_string(CoverClass c) {
  switch (c) {
    case CoverClass::Tree: return "Tree";
    case CoverClass::Bush: return "Bush";
    case CoverClass::Rock: return "Rock";
    case CoverClass::Cottage: return "Cottage";
    case CoverClass::Building: return "Building";
    case CoverClass::House: return "House";
    case CoverClass::DisabledVehicle: return "DisabledVehicle";
    case CoverClass::Other: return "Other";
  }
  return "Other";
}

std::optional<CoverClass> parse_cover_class(std::string_view name) {
  std::string key;
  for (char ch : name) {
    if (ch == ' ' || ch == '_' || ch == '-' || ch == '\'' || ch == '"') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  for (CoverClass c : kAllCoverClasses) {
    std::string canon;
    for (char ch : to_string(c)) canon.push_back(static_cast<char>(std::tolower(ch)));
    if (key == canon) return c;
    // Plurals: trees, rocks, houses, bushes, vehicles.
    if (key == canon + "s" || key == canon + "es") return c;
  }
  return std::nullopt;
}

}  // namespace coverfollow
