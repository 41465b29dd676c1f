#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sigverify/corpus.hpp"

namespace sigverify {

struct ManifestWriter {
  std::string writer_id;
  std::vector<std::filesystem::path> genuine;
  std::vector<std::filesystem::path> forgery;
};

/// In memory, paths are absolute or relative to the working directory. On
/// disk they are stored relative to the manifest file.
struct CorpusManifest {
  std::string corpus_id;
  std::optional<int> dpi;
  std::string notes;
  std::vector<ManifestWriter> writers;

  /// Throws ErrorCode::invalid_argument on duplicate or empty writer ids and
  /// ErrorCode::insufficient_samples for a writer without genuine images.
  void validate() const;
};

/// Enumerates root/<writer_id>/{genuine,forgery}/*.{png,pgm,tif,tiff}.
/// Writers and files are sorted by name. The corpus id is the directory name.
CorpusManifest scan_corpus_tree(const std::filesystem::path& root);

CorpusManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const CorpusManifest& manifest, const std::filesystem::path& path);

/// Decodes every referenced image, writers in parallel.
Corpus load_manifest_images(const CorpusManifest& manifest);

/// A directory is read as a convention tree, a file as a manifest.
Corpus load_corpus(const std::filesystem::path& path);

}  // namespace sigverify
