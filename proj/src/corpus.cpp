#include "sigverify/corpus.hpp"

#include <string>

#include "sigverify/error.hpp"
#include "sigverify/parallel.hpp"

namespace sigverify {

namespace {

std::vector<SignatureFeatures> extract_all(const std::vector<GrayImage>& images, const PipelineConfig& cfg,
                                           const std::string& writer_id, const char* label) {
  std::vector<SignatureFeatures> out;
  out.reserve(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    try {
      out.push_back(extract_features(images[i], cfg));
    } catch (const Error& e) {
      throw Error(e.code(), "writer " + writer_id + ", " + label + " sample " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

WriterFeatures extract_writer_features(const WriterImages& writer, const PipelineConfig& cfg) {
  return {writer.writer_id, extract_all(writer.genuine, cfg, writer.writer_id, "genuine"),
          extract_all(writer.forgery, cfg, writer.writer_id, "forgery")};
}

std::vector<WriterFeatures> extract_corpus_features(const Corpus& corpus, const PipelineConfig& cfg) {
  cfg.validate();
  std::vector<WriterFeatures> out(corpus.writers.size());
  parallel_for(corpus.writers.size(),
               [&](std::size_t i) { out[i] = extract_writer_features(corpus.writers[i], cfg); });
  return out;
}

}  // namespace sigverify
