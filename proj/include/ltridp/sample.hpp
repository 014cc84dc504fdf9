#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ltridp/descriptor.hpp"

namespace ltridp {

/// Two-class label: carrying baggage (+1) or not (-1).
enum class Label : int { Bag = 1, NoBag = -1 };

inline int label_sign(Label label) { return static_cast<int>(label); }
inline Label label_from_sign(int sign) { return sign >= 0 ? Label::Bag : Label::NoBag; }

std::string_view label_name(Label label);
/// Accepts "bag"/"nobag" as well as "+1"/"1"/"-1".
Label label_from_name(std::string_view name);

struct LabeledSample {
  FeatureVector features;
  Label label = Label::NoBag;
  std::string source;
};

using SampleSet = std::vector<LabeledSample>;

}  // namespace ltridp
