#pragma once

#include <string>

#include "priv/errors.hpp"

namespace priv::pii {

enum class Kind { name, email, ssn, credit_card, phone };

inline constexpr Kind kAllKinds[] = {Kind::name, Kind::email, Kind::ssn, Kind::credit_card,
                                     Kind::phone};

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::name: return "PERSON_NAME";
    case Kind::email: return "EMAIL";
    case Kind::ssn: return "SSN";
    case Kind::credit_card: return "CREDIT_CARD";
    case Kind::phone: return "PHONE";
  }
  return "UNKNOWN";
}

inline Kind parse_kind(const std::string& s) {
  if (s == "PERSON_NAME") return Kind::name;
  if (s == "EMAIL") return Kind::email;
  if (s == "SSN") return Kind::ssn;
  if (s == "CREDIT_CARD") return Kind::credit_card;
  if (s == "PHONE") return Kind::phone;
  throw FormatError("unknown pii kind: " + s);
}

}  // namespace priv::pii
