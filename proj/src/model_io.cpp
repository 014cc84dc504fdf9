#include <string>

#include "ltridp/errors.hpp"
#include "ltridp/svm.hpp"

namespace ltridp {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw FormatError(std::string("model is missing '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("model field '") + key + "': " + e.what());
  }
}

}  // namespace

json model_to_json(const SvmModel& model) {
  json doc;
  doc["solver"] = solver_name(model.solver);
  doc["kernel"] = {{"kind", kernel_name(model.kernel.kind)},
                   {"gamma", model.kernel.gamma},
                   {"coef0", model.kernel.coef0}};
  doc["hyperparameters"] = {{"c", model.hyper.c},
                            {"tol", model.hyper.tol},
                            {"max_passes", model.hyper.max_passes},
                            {"epochs", model.hyper.epochs},
                            {"seed", model.hyper.seed}};
  doc["feature_dim"] = model.feature_dim();
  doc["scaler"] = {{"mean", model.scaler.mean}, {"stddev", model.scaler.stddev}};
  doc["bias"] = model.bias;
  if (model.solver == SolverKind::Primal) {
    doc["weights"] = model.weights;
  } else {
    json svs = json::array();
    for (const auto& sv : model.support) {
      svs.push_back({{"label", sv.label}, {"alpha", sv.alpha}, {"vector", sv.vector}});
    }
    doc["support_vectors"] = std::move(svs);
  }
  return doc;
}

SvmModel model_from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("model document must be a JSON object");
  SvmModel model;
  const auto solver = field<std::string>(doc, "solver");
  if (solver == "primal") {
    model.solver = SolverKind::Primal;
  } else if (solver == "smo") {
    model.solver = SolverKind::Smo;
  } else {
    throw FormatError("unknown solver '" + solver + "'");
  }

  const json& kernel = doc.contains("kernel") ? doc.at("kernel") : json{};
  try {
    model.kernel.kind = kernel_from_name(field<std::string>(kernel, "kind"));
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
  model.kernel.gamma = field<double>(kernel, "gamma");
  model.kernel.coef0 = field<double>(kernel, "coef0");

  const json& hyper = doc.contains("hyperparameters") ? doc.at("hyperparameters") : json{};
  model.hyper.c = field<double>(hyper, "c");
  model.hyper.tol = field<double>(hyper, "tol");
  model.hyper.max_passes = field<int>(hyper, "max_passes");
  model.hyper.epochs = field<std::uint64_t>(hyper, "epochs");
  model.hyper.seed = field<std::uint64_t>(hyper, "seed");

  const json& scaler = doc.contains("scaler") ? doc.at("scaler") : json{};
  model.scaler.mean = field<std::vector<double>>(scaler, "mean");
  model.scaler.stddev = field<std::vector<double>>(scaler, "stddev");
  const auto dim = field<std::size_t>(doc, "feature_dim");
  if (model.scaler.mean.size() != dim || model.scaler.stddev.size() != dim) {
    throw FormatError("scaler length does not match feature_dim " + std::to_string(dim));
  }
  model.bias = field<double>(doc, "bias");

  if (model.solver == SolverKind::Primal) {
    model.weights = field<std::vector<double>>(doc, "weights");
    if (model.weights.size() != dim) throw FormatError("weights length does not match feature_dim");
  } else {
    const auto svs = field<json>(doc, "support_vectors");
    if (!svs.is_array()) throw FormatError("support_vectors must be an array");
    for (const auto& entry : svs) {
      SupportVector sv;
      sv.label = field<int>(entry, "label");
      sv.alpha = field<double>(entry, "alpha");
      sv.vector = field<std::vector<double>>(entry, "vector");
      if (sv.vector.size() != dim) throw FormatError("support vector length does not match feature_dim");
      model.support.push_back(std::move(sv));
    }
  }
  return model;
}

}  // namespace ltridp
