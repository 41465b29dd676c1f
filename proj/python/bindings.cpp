#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "sigverify/archive.hpp"
#include "sigverify/cli.hpp"
#include "sigverify/corpus_io.hpp"
#include "sigverify/error.hpp"
#include "sigverify/evaluation.hpp"
#include "sigverify/image_io.hpp"
#include "sigverify/run_config.hpp"
#include "sigverify/synth.hpp"

namespace py = pybind11;
using namespace sigverify;

namespace {

GrayImage to_image(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 2) throw py::value_error("image must be a 2-D array (rows, cols)");
  const auto h = static_cast<std::size_t>(a.shape(0));
  const auto w = static_cast<std::size_t>(a.shape(1));
  return GrayImage(w, h, std::vector<double>(a.data(), a.data() + a.size()));
}

py::array_t<double> to_array(const GrayImage& img) {
  py::array_t<double> out({img.height(), img.width()});
  std::copy(img.pixels().begin(), img.pixels().end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(const FeatureVector& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.dim()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

PipelineConfig config_from(const py::object& cfg) {
  if (cfg.is_none()) return RunConfig{}.pipeline;
  return parse_run_config(py::str(cfg)).pipeline;
}

}  // namespace

PYBIND11_MODULE(_sigverify, m) {
  m.doc() = "Offline signature verification: LPQ + wavelet features, one-class SVMs, score fusion";

  static py::exception<Error> error_type(m, "SigverifyError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.attr("DEFAULT_K") = kDefaultK;

  m.def("read_image", [](const std::filesystem::path& p) { return to_array(read_image(p)); }, py::arg("path"));
  m.def("write_pgm", [](const std::filesystem::path& p, py::array_t<double> a) { write_pgm(p, to_image(a)); },
        py::arg("path"), py::arg("image"));

  m.def(
      "otsu_threshold",
      [](py::array_t<double> a) {
        const OtsuResult r = otsu_threshold(to_image(a));
        return py::make_tuple(r.threshold, r.degenerate);
      },
      py::arg("image"), "Returns (threshold, degenerate). Ink is intensity <= threshold.");
  m.def(
      "preprocess", [](py::array_t<double> a) { return to_array(preprocess(to_image(a), PreprocessConfig{})); },
      py::arg("image"));
  m.def(
      "lpq_descriptor",
      [](py::array_t<double> a, int window_size) {
        LpqParams p;
        p.window_size = window_size;
        p.freq_a = 1.0 / window_size;
        return to_array(lpq_descriptor(to_image(a), p));
      },
      py::arg("image"), py::arg("window_size") = 7);
  m.def(
      "wavelet_descriptor",
      [](py::array_t<double> a, int levels, int bins) {
        DwtParams p;
        p.levels = levels;
        p.histogram_bins = bins;
        return to_array(wavelet_descriptor(to_image(a), p, WaveletFilterPair::haar()));
      },
      py::arg("image"), py::arg("levels") = 3, py::arg("bins") = 12);

  m.def(
      "extract_features",
      [](py::array_t<double> a, const py::object& config_json) {
        const SignatureFeatures f = extract_features(to_image(a), config_from(config_json));
        return py::make_tuple(to_array(f.lpq), to_array(f.dwt));
      },
      py::arg("image"), py::arg("config_json") = py::none(), "Returns (lpq, dwt) descriptors.");

  m.def(
      "train_ocsvm",
      [](const std::vector<std::vector<double>>& data, double nu, double sigma) {
        std::vector<FeatureVector> x;
        for (const auto& row : data) x.emplace_back(row);
        SolverConfig s;
        s.nu = nu;
        KernelParams k;
        k.sigma = sigma;
        const OcsvmModel model = train_ocsvm(x, k, s);
        return py::make_tuple(model.alphas, model.offset_b);
      },
      py::arg("data"), py::arg("nu") = 0.01, py::arg("sigma") = 0.01, "Returns (alphas, offset_b).");

  py::class_<WriterProfile>(m, "WriterProfile")
      .def_readonly("writer_id", &WriterProfile::writer_id)
      .def_readonly("mean", &WriterProfile::mean_m)
      .def_readonly("std", &WriterProfile::std_sigma)
      .def_readonly("k", &WriterProfile::k_factor)
      .def_readonly("threshold", &WriterProfile::threshold_T)
      .def("with_k", [](const WriterProfile& p, double k) { return with_k(p, k); }, py::arg("k"))
      .def(
          "score",
          [](const WriterProfile& p, py::array_t<double> a) {
            const ScorePair s = score(p, to_image(a));
            return py::make_tuple(s.lpq_score, s.dwt_score, s.fused);
          },
          py::arg("image"), "Returns (lpq, dwt, fused) probability scores.")
      .def(
          "verify",
          [](const WriterProfile& p, py::array_t<double> a) {
            return verify(p, to_image(a)).decision == Decision::genuine;
          },
          py::arg("image"), "True for genuine.");

  m.def(
      "enroll",
      [](const std::string& writer_id, const std::vector<py::array_t<double>>& images, double k,
         const py::object& config_json) {
        std::vector<GrayImage> imgs;
        for (const auto& a : images) imgs.push_back(to_image(a));
        const PipelineConfig cfg = config_from(config_json);
        py::gil_scoped_release release;
        return enroll(writer_id, imgs, cfg, k);
      },
      py::arg("writer_id"), py::arg("images"), py::arg("k") = kDefaultK, py::arg("config_json") = py::none());

  m.def(
      "save_profiles",
      [](const std::vector<WriterProfile>& profiles, const std::filesystem::path& path, double k) {
        ProfileArchive a;
        a.k = k;
        a.profiles = profiles;
        save_profiles(a, path);
      },
      py::arg("profiles"), py::arg("path"), py::arg("k") = kDefaultK);
  m.def(
      "load_profiles", [](const std::filesystem::path& path) { return load_profiles(path).profiles; },
      py::arg("path"));

  m.def(
      "synth_corpus",
      [](const std::filesystem::path& out, int writers, std::uint64_t seed, int genuine, int forgery) {
        std::ostringstream o;
        std::ostringstream e;
        const int code = cli_dispatch({"synth", "--out", out.string(), "--writers", std::to_string(writers), "--seed",
                                       std::to_string(seed), "--genuine", std::to_string(genuine), "--forgery",
                                       std::to_string(forgery)},
                                      o, e);
        if (code != 0) throw py::value_error(e.str());
      },
      py::arg("out"), py::arg("writers") = 10, py::arg("seed") = 1, py::arg("genuine") = 24, py::arg("forgery") = 30,
      "Writes a synthetic corpus tree <out>/<writer>/{genuine,forgery}/*.pgm.");

  m.def(
      "evaluate",
      [](const std::filesystem::path& corpus, const std::string& mode, const py::object& config_json,
         std::optional<std::uint64_t> seed) {
        RunConfig cfg = config_json.is_none() ? RunConfig{} : parse_run_config(py::str(config_json));
        if (seed) cfg.protocol.rng_seed = *seed;
        ScoreMode sm = ScoreMode::fused;
        if (mode == "lpq") sm = ScoreMode::lpq_only;
        else if (mode == "dwt") sm = ScoreMode::dwt_only;
        else if (mode == "max") sm = ScoreMode::max_rule;
        else if (mode != "fused") throw py::value_error("mode must be fused, lpq, dwt or max");
        EvalReport r;
        {
          py::gil_scoped_release release;
          r = run_protocol(load_corpus(corpus), cfg.protocol, cfg.pipeline, sm, cfg.k, cfg.sweep);
        }
        py::dict d;
        d["far"] = r.far;
        d["frr"] = r.frr;
        d["aer"] = r.aer;
        d["k"] = r.k_used;
        d["eer"] = r.eer ? py::object(py::float_(*r.eer)) : py::object(py::none());
        return d;
      },
      py::arg("corpus"), py::arg("mode") = "fused", py::arg("config_json") = py::none(), py::arg("seed") = py::none());

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream o;
        std::ostringstream e;
        const int code = cli_dispatch(args, o, e);
        return py::make_tuple(code, o.str(), e.str());
      },
      py::arg("args"), "Runs a CLI subcommand; returns (exit_code, stdout, stderr).");
}
