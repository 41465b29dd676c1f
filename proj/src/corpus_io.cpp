#include "sigverify/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "sigverify/error.hpp"
#include "sigverify/image_io.hpp"
#include "sigverify/parallel.hpp"

namespace sigverify {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::vector<fs::path> list_images(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_supported_image_extension(entry.path())) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GrayImage> decode_all(const std::vector<fs::path>& paths) {
  std::vector<GrayImage> out;
  out.reserve(paths.size());
  for (const auto& p : paths) {
    if (!fs::exists(p)) throw Error(ErrorCode::io, "missing image " + p.string());
    out.push_back(read_image(p));
  }
  return out;
}

std::vector<fs::path> paths_from_json(const ordered_json& arr, const fs::path& base, const std::string& where) {
  if (!arr.is_array()) throw Error(ErrorCode::parse, where + " must be an array of paths");
  std::vector<fs::path> out;
  for (const auto& item : arr) {
    if (!item.is_string()) throw Error(ErrorCode::parse, where + " must be an array of paths");
    const fs::path p = item.get<std::string>();
    out.push_back(p.is_absolute() ? p : base / p);
  }
  return out;
}

std::string relative_to(const fs::path& p, const fs::path& base) {
  const fs::path rel = fs::absolute(p).lexically_normal().lexically_relative(base);
  return (rel.empty() ? fs::absolute(p) : rel).generic_string();
}

}  // namespace

void CorpusManifest::validate() const {
  std::set<std::string> seen;
  for (const auto& w : writers) {
    if (w.writer_id.empty()) throw Error(ErrorCode::invalid_argument, "empty writer id in corpus " + corpus_id);
    if (!seen.insert(w.writer_id).second) throw Error(ErrorCode::invalid_argument, "duplicate writer id " + w.writer_id);
    if (w.genuine.empty()) throw Error(ErrorCode::insufficient_samples, "writer " + w.writer_id + " has no genuine images");
  }
  if (writers.empty()) throw Error(ErrorCode::empty_data, "corpus " + corpus_id + " has no writers");
}

CorpusManifest scan_corpus_tree(const fs::path& root) {
  if (!fs::is_directory(root)) throw Error(ErrorCode::io, "no such directory " + root.string());
  CorpusManifest m;
  m.corpus_id = fs::absolute(root).lexically_normal().filename().string();
  if (m.corpus_id.empty()) m.corpus_id = fs::absolute(root).lexically_normal().parent_path().filename().string();

  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    ManifestWriter w{dir.filename().string(), list_images(dir / "genuine"), list_images(dir / "forgery")};
    if (w.genuine.empty()) {
      throw Error(ErrorCode::insufficient_samples, "no genuine images in " + (dir / "genuine").string());
    }
    m.writers.push_back(std::move(w));
  }
  if (m.writers.empty()) throw Error(ErrorCode::empty_data, "no writer directories under " + root.string());
  return m;
}

CorpusManifest read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::parse, path.string() + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
  const fs::path base = path.parent_path();
  CorpusManifest m;
  try {
    m.corpus_id = doc.value("corpus_id", path.stem().string());
    if (doc.contains("dpi") && !doc["dpi"].is_null()) m.dpi = doc["dpi"].get<int>();
    m.notes = doc.value("notes", std::string{});
    for (const auto& w : doc.at("writers")) {
      ManifestWriter mw;
      mw.writer_id = w.at("writer_id").get<std::string>();
      mw.genuine = paths_from_json(w.at("genuine"), base, "writer " + mw.writer_id + " genuine");
      if (w.contains("forgery")) mw.forgery = paths_from_json(w["forgery"], base, "writer " + mw.writer_id + " forgery");
      m.writers.push_back(std::move(mw));
    }
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.what());
  }
  m.validate();
  for (const auto& w : m.writers) {
    for (const auto* list : {&w.genuine, &w.forgery}) {
      for (const auto& p : *list) {
        if (!fs::is_regular_file(p)) throw Error(ErrorCode::io, "missing image " + p.string());
      }
    }
  }
  return m;
}

void write_manifest(const CorpusManifest& manifest, const fs::path& path) {
  manifest.validate();
  const fs::path base = fs::absolute(path).lexically_normal().parent_path();
  ordered_json doc;
  doc["corpus_id"] = manifest.corpus_id;
  doc["dpi"] = manifest.dpi ? ordered_json(*manifest.dpi) : ordered_json(nullptr);
  doc["notes"] = manifest.notes;
  doc["writers"] = ordered_json::array();
  for (const auto& w : manifest.writers) {
    ordered_json jw;
    jw["writer_id"] = w.writer_id;
    jw["genuine"] = ordered_json::array();
    for (const auto& p : w.genuine) jw["genuine"].push_back(relative_to(p, base));
    jw["forgery"] = ordered_json::array();
    for (const auto& p : w.forgery) jw["forgery"].push_back(relative_to(p, base));
    doc["writers"].push_back(std::move(jw));
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
}

Corpus load_manifest_images(const CorpusManifest& manifest) {
  manifest.validate();
  Corpus corpus;
  corpus.corpus_id = manifest.corpus_id;
  corpus.writers.resize(manifest.writers.size());
  parallel_for(manifest.writers.size(), [&](std::size_t i) {
    const auto& w = manifest.writers[i];
    corpus.writers[i] = {w.writer_id, decode_all(w.genuine), decode_all(w.forgery)};
  });
  return corpus;
}

Corpus load_corpus(const fs::path& path) {
  if (fs::is_directory(path)) return load_manifest_images(scan_corpus_tree(path));
  if (fs::is_regular_file(path)) return load_manifest_images(read_manifest(path));
  throw Error(ErrorCode::io, "no such file or directory " + path.string());
}

}  // namespace sigverify
