#include "training_data.hpp"

#include "ltridp/errors.hpp"

namespace ltridp::detail {

StandardizedSet standardize_for_training(const SampleSet& samples) {
  bool has_pos = false;
  bool has_neg = false;
  for (const auto& s : samples) (s.label == Label::Bag ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg) {
    throw DataError("training needs both bag and nobag samples");
  }
  std::vector<FeatureVector> raw;
  raw.reserve(samples.size());
  for (const auto& s : samples) raw.push_back(s.features);

  StandardizedSet out;
  out.scaler = fit_scaler(raw);
  out.x.reserve(samples.size());
  out.y.reserve(samples.size());
  for (const auto& s : samples) {
    out.x.push_back(out.scaler.apply(s.features));
    out.y.push_back(label_sign(s.label));
  }
  return out;
}

}  // namespace ltridp::detail
