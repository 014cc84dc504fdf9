#include "ltridp/sample.hpp"

#include <string>

#include "ltridp/errors.hpp"

namespace ltridp {

std::string_view label_name(Label label) { return label == Label::Bag ? "bag" : "nobag"; }

Label label_from_name(std::string_view name) {
  if (name == "bag" || name == "+1" || name == "1") return Label::Bag;
  if (name == "nobag" || name == "-1") return Label::NoBag;
  throw DomainError("unknown label '" + std::string(name) + "' (expected bag or nobag)");
}

}  // namespace ltridp
