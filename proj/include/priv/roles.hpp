#pragma once

#include <string>
#include <string_view>

#include "priv/errors.hpp"

namespace priv {

enum class Role { admin, analyst, guest };

inline std::string_view role_name(Role r) {
  switch (r) {
    case Role::admin: return "admin";
    case Role::analyst: return "analyst";
    case Role::guest: return "guest";
  }
  return "guest";
}

inline Role parse_role(std::string_view s) {
  if (s == "admin") return Role::admin;
  if (s == "analyst") return Role::analyst;
  if (s == "guest") return Role::guest;
  throw FormatError("unknown role: " + std::string(s));
}

}  // namespace priv
