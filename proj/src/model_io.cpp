#include "model_io.hpp"

#include "dataset.hpp"
#include "error.hpp"

namespace entropic {

KernelSpec kernel_from_json(const nlohmann::json& j) {
  KernelSpec k;
  k.family = kernel_family_from_string(j.at("family").get<std::string>());
  if (k.family == KernelFamily::Polynomial) {
    k.degree = j.at("degree").get<int>();
    k.offset = j.at("offset").get<double>();
  }
  if (k.family == KernelFamily::Gaussian) k.sigma = j.at("sigma").get<double>();
  k.scale = j.value("scale", 1.0);
  k.validate();
  return k;
}

nlohmann::json binary_model_to_json(const SvmModel& m) {
  return {{"kernel", to_json(m.kernel)},
          {"class_pair", {m.class_pair.first, m.class_pair.second}},
          {"dimension", m.dimension},
          {"bias", m.bias},
          {"support_vectors", m.support_vectors},
          {"coefficients", m.coefficients},
          {"converged", m.converged}};
}

SvmModel binary_model_from_json(const nlohmann::json& j) {
  SvmModel m;
  m.kernel = kernel_from_json(j.at("kernel"));
  const auto pair = j.at("class_pair").get<std::vector<int>>();
  if (pair.size() != 2) throw Error(ErrorKind::Format, "class_pair must hold two labels");
  m.class_pair = {pair[0], pair[1]};
  m.dimension = j.at("dimension").get<std::size_t>();
  m.bias = j.at("bias").get<double>();
  m.support_vectors = j.at("support_vectors").get<std::vector<std::vector<double>>>();
  m.coefficients = j.at("coefficients").get<std::vector<double>>();
  m.converged = j.value("converged", true);
  if (m.support_vectors.size() != m.coefficients.size()) {
    throw Error(ErrorKind::Format, "support vector and coefficient counts differ");
  }
  for (const auto& sv : m.support_vectors) {
    if (sv.size() != m.dimension) throw Error(ErrorKind::Format, "support vector dimension mismatch");
  }
  return m;
}

nlohmann::json model_to_json(const MulticlassModel& m) {
  nlohmann::json models = nlohmann::json::array();
  for (const SvmModel& b : m.models) models.push_back(binary_model_to_json(b));
  return {{"format", "entropic-svm"}, {"version", kModelFormatVersion}, {"classes", m.classes}, {"models", models}};
}

MulticlassModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "entropic-svm") throw Error(ErrorKind::Format, "not an entropic-svm document");
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw Error(ErrorKind::Format, "unsupported model version " + std::to_string(version));
    }
    MulticlassModel m;
    m.classes = j.at("classes").get<std::vector<int>>();
    for (const auto& b : j.at("models")) m.models.push_back(binary_model_from_json(b));
    const std::size_t k = m.classes.size();
    if (k == 0 || m.models.size() != k * (k - 1) / 2) {
      throw Error(ErrorKind::Format, "model count does not match the class count");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, std::string("model document: ") + e.what());
  }
}

}  // namespace entropic
