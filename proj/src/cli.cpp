#include "sigverify/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "sigverify/archive.hpp"
#include "sigverify/corpus_io.hpp"
#include "sigverify/error.hpp"
#include "sigverify/evaluation.hpp"
#include "sigverify/image_io.hpp"
#include "sigverify/parallel.hpp"
#include "sigverify/run_config.hpp"
#include "sigverify/synth.hpp"

namespace sigverify {

namespace fs = std::filesystem;

namespace {

/// Shortest text that parses back to the same double.
std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string pct(double v) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(2);
  ss << 100.0 * v << "%";
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
}

fs::path sibling(const fs::path& report, const std::string& suffix) {
  fs::path p = report;
  p.replace_filename(report.stem().string() + suffix);
  return p;
}

ScoreMode parse_mode(const std::string& s) {
  if (s == "fused") return ScoreMode::fused;
  if (s == "lpq") return ScoreMode::lpq_only;
  if (s == "dwt") return ScoreMode::dwt_only;
  if (s == "max") return ScoreMode::max_rule;
  throw Error(ErrorCode::invalid_argument, "unknown mode '" + s + "'");
}

std::string mode_name(ScoreMode m) {
  switch (m) {
    case ScoreMode::fused: return "fused";
    case ScoreMode::lpq_only: return "lpq";
    case ScoreMode::dwt_only: return "dwt";
    case ScoreMode::max_rule: return "max";
  }
  return "fused";
}

RunConfig config_or_default(const std::string& path) {
  return path.empty() ? RunConfig{} : read_run_config(path);
}

std::string curve_csv(const std::vector<DetPoint>& curve) {
  std::string s = "k,far,frr\n";
  for (const auto& p : curve) s += num(p.k) + "," + num(p.far) + "," + num(p.frr) + "\n";
  return s;
}

struct Options {
  std::string corpus;
  std::string manifest_out;
  std::string config;
  std::string out;
  std::string profiles;
  std::string profiles_out;
  std::string curve_out;
  std::string image;
  std::string writer;
  std::string mode = "fused";
  std::string report_out;
  std::string k_text;
  std::optional<std::uint64_t> seed;
  double k_min = KSweep{}.k_min;
  double k_max = KSweep{}.k_max;
  int steps = KSweep{}.steps;
  int synth_writers = 10;
  int synth_genuine = 24;
  int synth_forgery = 30;
  double jitter_genuine = SynthWriterSpec{}.jitter_genuine;
  double jitter_forgery = SynthWriterSpec{}.jitter_forgery;
  std::uint64_t synth_seed = 1;
};

int cmd_ingest(const Options& o, std::ostream& out) {
  CorpusManifest m = scan_corpus_tree(o.corpus);
  const Corpus c = load_manifest_images(m);  // decodes everything once to validate
  write_manifest(m, o.manifest_out);
  std::size_t g = 0;
  std::size_t f = 0;
  for (const auto& w : c.writers) {
    g += w.genuine.size();
    f += w.forgery.size();
  }
  out << "corpus_id=" << m.corpus_id << "\nwriters=" << c.writers.size() << "\ngenuine=" << g << "\nforgery=" << f
      << "\n";
  return 0;
}

int cmd_enroll(const Options& o, std::ostream& out) {
  RunConfig cfg = config_or_default(o.config);
  const double k = cfg.k.value_or(kDefaultK);
  const Corpus corpus = load_corpus(o.corpus);
  const auto n = static_cast<std::size_t>(cfg.protocol.n_genuine_train);
  for (const auto& w : corpus.writers) {
    if (w.genuine.size() < n) {
      throw Error(ErrorCode::insufficient_samples, "writer " + w.writer_id + " has " +
                                                       std::to_string(w.genuine.size()) + " genuine images, " +
                                                       std::to_string(n) + " needed for enrollment");
    }
  }
  ProfileArchive archive;
  archive.timestamp = archive_timestamp_from_env();
  archive.corpus_id = corpus.corpus_id;
  archive.k = k;
  archive.profiles.resize(corpus.writers.size());
  parallel_for(corpus.writers.size(), [&](std::size_t i) {
    const auto& w = corpus.writers[i];
    archive.profiles[i] = enroll(w.writer_id, std::span(w.genuine).first(n), cfg.pipeline, k);
  });
  std::sort(archive.profiles.begin(), archive.profiles.end(),
            [](const auto& a, const auto& b) { return a.writer_id < b.writer_id; });
  save_profiles(archive, o.out);
  out << "writers=" << archive.profiles.size() << "\nenrolled_per_writer=" << n << "\nk=" << num(k) << "\n";
  return 0;
}

int cmd_calibrate(const Options& o, std::ostream& out) {
  ProfileArchive archive = load_profiles(o.profiles);
  const Corpus corpus = load_corpus(o.corpus);
  const KSweep sweep{o.k_min, o.k_max, o.steps};
  sweep.validate();

  // Tuning set: genuine images past the enrollment prefix, all forgeries.
  std::vector<WriterFeatures> tuning(corpus.writers.size());
  parallel_for(corpus.writers.size(), [&](std::size_t i) {
    const auto& w = corpus.writers[i];
    const WriterProfile& p = archive.find(w.writer_id);
    const std::size_t skip = std::min(p.enrollment_scores.size(), w.genuine.size());
    WriterImages rest{w.writer_id, {w.genuine.begin() + static_cast<std::ptrdiff_t>(skip), w.genuine.end()}, w.forgery};
    tuning[i] = extract_writer_features(rest, p.config);
  });
  const auto scores = collect_scores(archive.profiles, tuning, ScoreMode::fused);
  const auto curve = det_curve(scores, sweep);
  const Calibration cal = calibrate_k(scores, sweep);
  if (!o.curve_out.empty()) write_text(o.curve_out, curve_csv(curve));
  if (!o.profiles_out.empty()) {
    for (auto& p : archive.profiles) p = with_k(std::move(p), cal.k);
    archive.k = cal.k;
    save_profiles(archive, o.profiles_out);
  }
  out << "k=" << num(cal.k) << "\nfar=" << num(cal.far) << "\nfrr=" << num(cal.frr) << "\n";
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const ProfileArchive archive = load_profiles(o.profiles);
  const WriterProfile& p = archive.find(o.writer);
  const Verdict v = verify(p, read_image(o.image));
  const bool genuine = v.decision == Decision::genuine;
  out << "writer=" << p.writer_id << "\ndecision=" << (genuine ? "genuine" : "forgery")
      << "\nlpq_score=" << num(v.scores.lpq_score) << "\ndwt_score=" << num(v.scores.dwt_score)
      << "\nfused=" << num(v.scores.fused) << "\nthreshold=" << num(v.threshold_used) << "\n";
  return genuine ? kExitGenuine : kExitForgery;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  RunConfig cfg = config_or_default(o.config);
  if (o.seed) cfg.protocol.rng_seed = *o.seed;
  if (!o.k_text.empty()) {
    if (o.k_text == "calibrate") {
      cfg.k.reset();
    } else {
      double k = 0.0;
      const auto res = std::from_chars(o.k_text.data(), o.k_text.data() + o.k_text.size(), k);
      if (res.ec != std::errc{} || res.ptr != o.k_text.data() + o.k_text.size()) {
        throw Error(ErrorCode::invalid_argument, "--k must be a number or 'calibrate'");
      }
      cfg.k = k;
    }
  }
  const ScoreMode mode = parse_mode(o.mode);
  const Corpus corpus = load_corpus(o.corpus);
  const EvalReport r = run_protocol(corpus, cfg.protocol, cfg.pipeline, mode, cfg.k, cfg.sweep);

  std::string report = "mode,k,far,frr,aer,eer,repeats,n_genuine_train,seed\n";
  report += mode_name(mode) + "," + num(r.k_used) + "," + num(r.far) + "," + num(r.frr) + "," + num(r.aer) + "," +
            (r.eer ? num(*r.eer) : std::string{}) + "," + std::to_string(cfg.protocol.repeats) + "," +
            std::to_string(cfg.protocol.n_genuine_train) + "," + std::to_string(cfg.protocol.rng_seed) + "\n";
  std::string repeats = "repeat,k,far,frr,aer\n";
  for (const auto& rr : r.per_repeat) {
    repeats += std::to_string(rr.repeat) + "," + num(rr.k) + "," + num(rr.far) + "," + num(rr.frr) + "," +
               num(rr.aer) + "\n";
  }
  std::string writers = "writer_id,genuine_total,genuine_rejected,forgery_total,forgery_accepted\n";
  for (const auto& w : r.per_writer) {
    writers += w.writer_id + "," + std::to_string(w.genuine_total) + "," + std::to_string(w.genuine_rejected) + "," +
               std::to_string(w.forgery_total) + "," + std::to_string(w.forgery_accepted) + "\n";
  }
  const fs::path report_path = o.report_out;
  write_text(report_path, report);
  write_text(sibling(report_path, "_repeats.csv"), repeats);
  write_text(sibling(report_path, "_writers.csv"), writers);

  out << "mode=" << mode_name(mode) << "\nk=" << num(r.k_used) << "\nfar=" << num(r.far) << "\nfrr=" << num(r.frr)
      << "\naer=" << num(r.aer) << "\n";
  if (r.eer) out << "eer=" << num(*r.eer) << "\n";
  out << "summary=FAR " << pct(r.far) << " FRR " << pct(r.frr) << " AER " << pct(r.aer) << "\n";
  return 0;
}

int cmd_synth(const Options& o, std::ostream& out) {
  auto specs = default_synth_specs(o.synth_writers, o.synth_seed);
  for (auto& s : specs) {
    s.jitter_genuine = o.jitter_genuine;
    s.jitter_forgery = o.jitter_forgery;
  }
  const Corpus c = generate_synth_corpus(specs, o.synth_genuine, o.synth_forgery);
  const fs::path root = o.out;
  for (const auto& w : c.writers) {
    for (const auto& [label, images] : {std::pair{"genuine", &w.genuine}, std::pair{"forgery", &w.forgery}}) {
      const fs::path dir = root / w.writer_id / label;
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) throw Error(ErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
      for (std::size_t i = 0; i < images->size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "%c%03zu.pgm", label[0], i);
        write_pgm(dir / name, (*images)[i]);
      }
    }
  }
  out << "writers=" << c.writers.size() << "\ngenuine_per_writer=" << o.synth_genuine
      << "\nforgery_per_writer=" << o.synth_forgery << "\nout=" << root.string() << "\n";
  return 0;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Offline signature verification with LPQ and wavelet features", "sigverify"};
  app.require_subcommand(1);
  Options o;

  auto* ingest = app.add_subcommand("ingest", "Validate a corpus directory tree and write its manifest");
  ingest->add_option("root", o.corpus, "Corpus root: <root>/<writer>/{genuine,forgery}/*")->required();
  ingest->add_option("--manifest-out", o.manifest_out, "Manifest file to write")->required();

  auto* enroll_cmd = app.add_subcommand("enroll", "Train profiles for every writer");
  enroll_cmd->add_option("corpus", o.corpus, "Corpus directory or manifest")->required();
  enroll_cmd->add_option("--config", o.config, "Run configuration (JSON)");
  enroll_cmd->add_option("--out", o.out, "Profile archive to write")->required();

  auto* calibrate = app.add_subcommand("calibrate", "Pick k at the FAR = FRR crossing");
  calibrate->add_option("corpus", o.corpus, "Corpus directory or manifest")->required();
  calibrate->add_option("--profiles", o.profiles, "Profile archive from enroll")->required();
  calibrate->add_option("--k-min", o.k_min, "Lower end of the k grid");
  calibrate->add_option("--k-max", o.k_max, "Upper end of the k grid");
  calibrate->add_option("--steps", o.steps, "Grid points");
  calibrate->add_option("--curve-out", o.curve_out, "CSV of k,far,frr");
  calibrate->add_option("--profiles-out", o.profiles_out, "Archive with the calibrated k applied");

  auto* verify_cmd = app.add_subcommand("verify", "Verify one image against a writer profile");
  verify_cmd->add_option("profiles", o.profiles, "Profile archive")->required();
  verify_cmd->add_option("image", o.image, "Questioned signature image")->required();
  verify_cmd->add_option("--writer", o.writer, "Claimed writer id")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Run the repeated random-split protocol");
  evaluate->add_option("corpus", o.corpus, "Corpus directory or manifest")->required();
  evaluate->add_option("--config", o.config, "Run configuration (JSON)");
  evaluate->add_option("--mode", o.mode, "fused, lpq, dwt or max")
      ->check(CLI::IsMember({"fused", "lpq", "dwt", "max"}));
  evaluate->add_option("--report-out", o.report_out, "Summary CSV; _repeats.csv and _writers.csv go beside it")
      ->required();
  evaluate->add_option("--seed", o.seed, "Overrides protocol.seed");
  evaluate->add_option("--k", o.k_text, "Overrides verifier.k (number or 'calibrate')");

  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus tree");
  synth->add_option("--writers", o.synth_writers, "Number of writers")->check(CLI::PositiveNumber);
  synth->add_option("--out", o.out, "Output directory")->required();
  synth->add_option("--seed", o.synth_seed, "Generator seed");
  synth->add_option("--genuine", o.synth_genuine, "Genuine samples per writer")->check(CLI::PositiveNumber);
  synth->add_option("--forgery", o.synth_forgery, "Forgeries per writer")->check(CLI::PositiveNumber);
  synth->add_option("--jitter-genuine", o.jitter_genuine, "Genuine perturbation scale (px)");
  synth->add_option("--jitter-forgery", o.jitter_forgery, "Forgery perturbation scale (px)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    err << "error: usage: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(o, out);
    if (enroll_cmd->parsed()) return cmd_enroll(o, out);
    if (calibrate->parsed()) return cmd_calibrate(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (evaluate->parsed()) return cmd_evaluate(o, out);
    if (synth->parsed()) return cmd_synth(o, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace sigverify
