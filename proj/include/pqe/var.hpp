#pragma once

#include <compare>
#include <string>

namespace pqe {

/// Universal: bound by the forall prefix (the program variables).
/// Template: existential unknowns the user asks a valuation for.
/// Auxiliary: fresh unknowns introduced by a translation.
enum class VarKind { Universal, Template, Auxiliary };

enum class VarSort { Real, Int };

/// A named variable. Identity is the name; names are unique within a
/// system, and kind/sort are fixed at creation.
struct VarId {
  std::string name;
  VarKind kind = VarKind::Universal;
  VarSort sort = VarSort::Real;

  friend bool operator==(const VarId& a, const VarId& b) { return a.name == b.name; }
  friend std::strong_ordering operator<=>(const VarId& a, const VarId& b) {
    return a.name <=> b.name;
  }
};

inline VarId universal_var(std::string name, VarSort sort = VarSort::Real) {
  return VarId{std::move(name), VarKind::Universal, sort};
}
inline VarId template_var(std::string name, VarSort sort = VarSort::Real) {
  return VarId{std::move(name), VarKind::Template, sort};
}
inline VarId aux_var(std::string name, VarSort sort = VarSort::Real) {
  return VarId{std::move(name), VarKind::Auxiliary, sort};
}

}  // namespace pqe
