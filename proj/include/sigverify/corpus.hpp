#pragma once

#include <string>
#include <vector>

#include "sigverify/image.hpp"
#include "sigverify/pipeline.hpp"

namespace sigverify {

/// Images of one writer, split by label.
struct WriterImages {
  std::string writer_id;
  std::vector<GrayImage> genuine;
  std::vector<GrayImage> forgery;
};

struct Corpus {
  std::string corpus_id;
  std::vector<WriterImages> writers;
};

struct WriterFeatures {
  std::string writer_id;
  std::vector<SignatureFeatures> genuine;
  std::vector<SignatureFeatures> forgery;
};

/// Extracts descriptors for every image, writers in parallel. Failures name
/// the writer, class and sample index.
WriterFeatures extract_writer_features(const WriterImages& writer, const PipelineConfig& cfg);
std::vector<WriterFeatures> extract_corpus_features(const Corpus& corpus, const PipelineConfig& cfg);

}  // namespace sigverify
