#include "sigverify/archive.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json_codec.hpp"
#include "sigverify/error.hpp"

namespace sigverify {

using detail::json;

namespace {

json model_to_json(const OcsvmModel& m) {
  json points = json::array();
  for (const auto& p : m.support_points) points.push_back(p.values());
  return {{"kernel", detail::kernel_to_json(m.kernel)},
          {"nu", m.nu},
          {"train_count", m.train_count},
          {"offset_b", m.offset_b},
          {"alphas", m.alphas},
          {"support_points", std::move(points)}};
}

OcsvmModel model_from_json(const json& j, const std::string& where) {
  OcsvmModel m;
  m.kernel = detail::kernel_from_json(j.at("kernel"), where + ".kernel");
  m.nu = j.at("nu").get<double>();
  m.train_count = j.at("train_count").get<std::size_t>();
  m.offset_b = j.at("offset_b").get<double>();
  m.alphas = j.at("alphas").get<std::vector<double>>();
  for (const auto& p : j.at("support_points")) m.support_points.emplace_back(p.get<std::vector<double>>());
  if (m.alphas.size() != m.support_points.size() || m.train_count != m.alphas.size()) {
    throw Error(ErrorCode::parse, where + ": alphas, support_points and train_count disagree");
  }
  for (const auto& p : m.support_points) {
    if (p.dim() != m.dim()) throw Error(ErrorCode::parse, where + ": support points differ in dimension");
  }
  return m;
}

json scores_to_json(const std::vector<ScorePair>& scores) {
  json arr = json::array();
  for (const auto& s : scores) arr.push_back({s.lpq_score, s.dwt_score, s.fused});
  return arr;
}

std::vector<ScorePair> scores_from_json(const json& j) {
  std::vector<ScorePair> out;
  for (const auto& s : j) out.push_back({s.at(0).get<double>(), s.at(1).get<double>(), s.at(2).get<double>()});
  return out;
}

json profile_to_json(const WriterProfile& p) {
  return {{"writer_id", p.writer_id},
          {"mean_m", p.mean_m},
          {"std_sigma", p.std_sigma},
          {"k_factor", p.k_factor},
          {"threshold_T", p.threshold_T},
          {"config", detail::pipeline_to_json(p.config)},
          {"lpq_model", model_to_json(p.lpq_model)},
          {"dwt_model", model_to_json(p.dwt_model)},
          {"enrollment_scores", scores_to_json(p.enrollment_scores)},
          {"holdout_scores", scores_to_json(p.holdout_scores)}};
}

WriterProfile profile_from_json(const json& j) {
  WriterProfile p;
  p.writer_id = j.at("writer_id").get<std::string>();
  const std::string where = "profile " + p.writer_id;
  p.mean_m = j.at("mean_m").get<double>();
  p.std_sigma = j.at("std_sigma").get<double>();
  p.k_factor = j.at("k_factor").get<double>();
  p.threshold_T = j.at("threshold_T").get<double>();
  p.config = detail::pipeline_from_json(j.at("config"), where + ".config");
  p.lpq_model = model_from_json(j.at("lpq_model"), where + ".lpq_model");
  p.dwt_model = model_from_json(j.at("dwt_model"), where + ".dwt_model");
  p.enrollment_scores = scores_from_json(j.at("enrollment_scores"));
  if (j.contains("holdout_scores")) p.holdout_scores = scores_from_json(j["holdout_scores"]);
  return p;
}

}  // namespace

const WriterProfile& ProfileArchive::find(const std::string& writer_id) const {
  for (const auto& p : profiles) {
    if (p.writer_id == writer_id) return p;
  }
  throw Error(ErrorCode::invalid_argument, "no profile for writer " + writer_id);
}

std::optional<std::string> archive_timestamp_from_env() {
  const char* env = std::getenv("SOURCE_DATE_EPOCH");
  if (env == nullptr || *env == '\0') return std::nullopt;
  char* end = nullptr;
  const long long secs = std::strtoll(env, &end, 10);
  if (*end != '\0' || secs < 0) return std::nullopt;
  const std::time_t t = static_cast<std::time_t>(secs);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf);
}

std::string dump_archive(const ProfileArchive& archive) {
  json doc;
  doc["format_version"] = archive.format_version;
  doc["created"] = {{"timestamp", archive.timestamp ? json(*archive.timestamp) : json(nullptr)},
                    {"corpus_id", archive.corpus_id},
                    {"k", archive.k}};
  doc["profiles"] = json::array();
  for (const auto& p : archive.profiles) doc["profiles"].push_back(profile_to_json(p));
  return doc.dump(1) + "\n";
}

ProfileArchive parse_archive(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, "archive: byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("format_version") || !doc["format_version"].is_number_integer()) {
    throw Error(ErrorCode::parse, "archive: missing integer format_version");
  }
  ProfileArchive a;
  a.format_version = doc["format_version"].get<int>();
  if (a.format_version > kArchiveFormatVersion || a.format_version < 1) {
    throw Error(ErrorCode::unsupported_version, "unsupported version " + std::to_string(a.format_version) +
                                                    " (this build reads up to " +
                                                    std::to_string(kArchiveFormatVersion) + ")");
  }
  try {
    if (doc.contains("created")) {
      const auto& c = doc["created"];
      if (c.contains("timestamp") && c["timestamp"].is_string()) a.timestamp = c["timestamp"].get<std::string>();
      a.corpus_id = c.value("corpus_id", std::string{});
      a.k = c.value("k", kDefaultK);
    }
    for (const auto& p : doc.at("profiles")) a.profiles.push_back(profile_from_json(p));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("archive: ") + e.what());
  }
  return a;
}

void save_profiles(const ProfileArchive& archive, const std::filesystem::path& path) {
  const std::string text = dump_archive(archive);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
}

ProfileArchive load_profiles(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_archive(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace sigverify
