#include "sigverify/pipeline.hpp"

namespace sigverify {

WaveletFilterPair make_filter(WaveletFamily family) {
  switch (family) {
    case WaveletFamily::haar: return WaveletFilterPair::haar();
    case WaveletFamily::daubechies4: return WaveletFilterPair::daubechies4();
  }
  return WaveletFilterPair::haar();
}

void PipelineConfig::validate() const {
  preprocess.validate();
  lpq.validate();
  dwt.validate();
  lpq_svm.kernel.validate();
  lpq_svm.solver.validate();
  dwt_svm.kernel.validate();
  dwt_svm.solver.validate();
}

SignatureFeatures extract_features(const GrayImage& img, const PipelineConfig& cfg) {
  const GrayImage clean = preprocess(img, cfg.preprocess);
  return {lpq_descriptor(clean, cfg.lpq), wavelet_descriptor(clean, cfg.dwt, make_filter(cfg.wavelet))};
}

}  // namespace sigverify
