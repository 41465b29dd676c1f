#include "json_codec.hpp"

#include <algorithm>
#include <cstring>

#include "sigverify/error.hpp"

namespace sigverify::detail {

void throw_type_error(const std::string& where, const char* key) {
  throw Error(ErrorCode::parse, where + "." + key + " has the wrong type");
}

void require_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorCode::parse, where + " must be an object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) throw Error(ErrorCode::parse, "unknown key " + where + "." + item.key());
  }
}

std::string to_string(KernelKind k) {
  switch (k) {
    case KernelKind::rbf: return "rbf";
    case KernelKind::linear: return "linear";
    case KernelKind::polynomial: return "polynomial";
    case KernelKind::sigmoid_kernel: return "sigmoid";
  }
  return "rbf";
}

std::string to_string(BorderPolicy p) { return p == BorderPolicy::replicate ? "replicate" : "skip_border"; }
std::string to_string(WaveletFamily w) { return w == WaveletFamily::daubechies4 ? "db4" : "haar"; }
std::string to_string(ThresholdStats t) { return t == ThresholdStats::in_sample ? "in_sample" : "leave_one_out"; }

KernelKind parse_kernel_kind(const std::string& s) {
  if (s == "rbf") return KernelKind::rbf;
  if (s == "linear") return KernelKind::linear;
  if (s == "polynomial") return KernelKind::polynomial;
  if (s == "sigmoid") return KernelKind::sigmoid_kernel;
  throw Error(ErrorCode::parse, "unknown kernel '" + s + "'");
}

BorderPolicy parse_border_policy(const std::string& s) {
  if (s == "skip_border") return BorderPolicy::skip_border;
  if (s == "replicate") return BorderPolicy::replicate;
  throw Error(ErrorCode::parse, "unknown border policy '" + s + "'");
}

WaveletFamily parse_wavelet(const std::string& s) {
  if (s == "haar") return WaveletFamily::haar;
  if (s == "db4") return WaveletFamily::daubechies4;
  throw Error(ErrorCode::parse, "unknown wavelet '" + s + "'");
}

ThresholdStats parse_threshold_stats(const std::string& s) {
  if (s == "leave_one_out") return ThresholdStats::leave_one_out;
  if (s == "in_sample") return ThresholdStats::in_sample;
  throw Error(ErrorCode::parse, "unknown threshold_stats '" + s + "'");
}

json kernel_to_json(const KernelParams& k) {
  return {{"kind", to_string(k.kind)}, {"sigma", k.sigma}, {"degree", k.degree}, {"coef", k.coef}, {"scale", k.scale}};
}

KernelParams kernel_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::parse, where + " must be an object");
  KernelParams k;
  k.kind = parse_kernel_kind(get_or<std::string>(j, "kind", to_string(k.kind), where));
  k.sigma = get_or(j, "sigma", k.sigma, where);
  k.degree = get_or(j, "degree", k.degree, where);
  k.coef = get_or(j, "coef", k.coef, where);
  k.scale = get_or(j, "scale", k.scale, where);
  return k;
}

json solver_to_json(const SolverConfig& s) {
  return {{"nu", s.nu}, {"tolerance", s.tolerance}, {"max_iterations", s.max_iterations}};
}

SolverConfig solver_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::parse, where + " must be an object");
  SolverConfig s;
  s.nu = get_or(j, "nu", s.nu, where);
  s.tolerance = get_or(j, "tolerance", s.tolerance, where);
  s.max_iterations = get_or(j, "max_iterations", s.max_iterations, where);
  return s;
}

json pipeline_to_json(const PipelineConfig& cfg) {
  json j;
  j["preprocess"] = {{"sigma", cfg.preprocess.gaussian_sigma},
                     {"radius", cfg.preprocess.gaussian_radius},
                     {"margin", cfg.preprocess.crop_margin}};
  j["lpq"] = {{"window_size", cfg.lpq.window_size},
              {"freq_a", cfg.lpq.freq_a},
              {"border_policy", to_string(cfg.lpq.border_policy)}};
  j["dwt"] = {{"levels", cfg.dwt.levels},
              {"canonical_size", {cfg.dwt.canonical_width, cfg.dwt.canonical_height}},
              {"bins", cfg.dwt.histogram_bins},
              {"wavelet", to_string(cfg.wavelet)}};
  j["lpq_svm"] = {{"kernel", kernel_to_json(cfg.lpq_svm.kernel)}, {"solver", solver_to_json(cfg.lpq_svm.solver)}};
  j["dwt_svm"] = {{"kernel", kernel_to_json(cfg.dwt_svm.kernel)}, {"solver", solver_to_json(cfg.dwt_svm.solver)}};
  j["threshold_stats"] = to_string(cfg.threshold_stats);
  return j;
}

PipelineConfig pipeline_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::parse, where + " must be an object");
  PipelineConfig cfg;
  try {
    const auto& pre = j.at("preprocess");
    cfg.preprocess.gaussian_sigma = pre.at("sigma").get<double>();
    cfg.preprocess.gaussian_radius = pre.at("radius").get<int>();
    cfg.preprocess.crop_margin = pre.at("margin").get<int>();
    const auto& lpq = j.at("lpq");
    cfg.lpq.window_size = lpq.at("window_size").get<int>();
    cfg.lpq.freq_a = lpq.at("freq_a").get<double>();
    cfg.lpq.border_policy = parse_border_policy(lpq.at("border_policy").get<std::string>());
    const auto& dwt = j.at("dwt");
    cfg.dwt.levels = dwt.at("levels").get<int>();
    cfg.dwt.canonical_width = dwt.at("canonical_size").at(0).get<std::size_t>();
    cfg.dwt.canonical_height = dwt.at("canonical_size").at(1).get<std::size_t>();
    cfg.dwt.histogram_bins = dwt.at("bins").get<int>();
    cfg.wavelet = parse_wavelet(dwt.at("wavelet").get<std::string>());
    cfg.lpq_svm.kernel = kernel_from_json(j.at("lpq_svm").at("kernel"), where + ".lpq_svm.kernel");
    cfg.lpq_svm.solver = solver_from_json(j.at("lpq_svm").at("solver"), where + ".lpq_svm.solver");
    cfg.dwt_svm.kernel = kernel_from_json(j.at("dwt_svm").at("kernel"), where + ".dwt_svm.kernel");
    cfg.dwt_svm.solver = solver_from_json(j.at("dwt_svm").at("solver"), where + ".dwt_svm.solver");
    cfg.threshold_stats = parse_threshold_stats(j.at("threshold_stats").get<std::string>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, where + ": " + e.what());
  }
  return cfg;
}

}  // namespace sigverify::detail
