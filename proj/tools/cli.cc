// tools/cli.cc

// Copyright 2026  The diarkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "diarkit/errors.h"
#include "diarkit/fusion.h"
#include "diarkit/pipeline.h"
#include "diarkit/postprocess.h"
#include "diarkit/rttm_io.h"
#include "diarkit/scoring.h"
#include "diarkit/simulate.h"
#include "diarkit/timeline.h"

namespace diarkit::cli {

namespace {

namespace fs = std::filesystem;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << content;
}

Millis SecondsFlag(double seconds, const char* name) {
  if (!std::isfinite(seconds)) throw UsageError(std::string("--") + name + " must be finite");
  return SecondsToMillis(seconds);
}

struct Globals {
  std::uint64_t seed = 42;
  bool quiet = false;
  std::string output;
  int threads = 1;
};

// Collects report text and emits it to --output or the stream.
class Sink {
 public:
  Sink(const Globals& g, std::ostream& out) : globals_(g), out_(out) {}
  void Line(const std::string& line) { buffer_ += line + "\n"; }
  void Text(const std::string& text) { buffer_ += text; }
  void Flush() {
    if (globals_.output.empty()) {
      out_ << buffer_;
    } else {
      WriteFile(globals_.output, buffer_);
    }
  }

 private:
  const Globals& globals_;
  std::ostream& out_;
  std::string buffer_;
};

void AddSimFlags(CLI::App* app, SimConfig* cfg) {
  app->add_option("--recordings", cfg->n_recordings, "Recordings in the corpus")
      ->capture_default_str();
  app->add_option("--speakers", cfg->n_speakers, "Speakers per recording")->capture_default_str();
  app->add_option("--dim", cfg->embedding_dim, "Embedding dimension")->capture_default_str();
  app->add_option("--mean-utterance", cfg->mean_utterance, "Mean utterance length (s)")
      ->capture_default_str();
  app->add_option("--mean-pause", cfg->mean_pause, "Mean inter-turn pause (s)")
      ->capture_default_str();
  app->add_option("--overlap-prob", cfg->overlap_probability, "Probability of overlapped turn")
      ->capture_default_str();
  app->add_option("--length", cfg->recording_length, "Recording length (s)")
      ->capture_default_str();
  app->add_option("--noise", cfg->noise_sigma, "Embedding noise sigma")->capture_default_str();
  app->add_option("--duration-noise", cfg->duration_noise,
                  "Extra embedding noise at 1 s, scaled by 1/sqrt(duration)")
      ->capture_default_str();
  app->add_option("--vad-min-silence", cfg->vad_min_silence,
                  "Simulated VAD bridges pauses shorter than this (s)")
      ->capture_default_str();
}

void AddSpectralFlags(CLI::App* app, SpectralOptions* spectral, int* max_speakers,
                      int* oracle_k) {
  app->add_option("--alpha", spectral->alpha, "Eigenvalue threshold for the speaker count")
      ->capture_default_str();
  app->add_option("--max-speakers", *max_speakers, "Upper bound on speakers (0 = none)")
      ->capture_default_str();
  app->add_option("--oracle-k", *oracle_k, "Use this many clusters instead of estimating");
}

void FinishSpectral(SpectralOptions* spectral, int max_speakers, int oracle_k,
                    std::uint64_t seed) {
  spectral->max_speakers = max_speakers > 0 ? std::optional<int>(max_speakers) : std::nullopt;
  spectral->oracle_k = oracle_k > 0 ? std::optional<int>(oracle_k) : std::nullopt;
  spectral->seed = seed;
}

std::map<std::string, Timeline> SpeechByRecording(const RttmDocument& doc) {
  std::map<std::string, Timeline> out;
  for (const auto& [rec, turns] : doc.ByRecording()) out.emplace(rec, ToTimeline(turns));
  return out;
}

std::set<std::string> AllRecordings(const std::map<std::string, std::vector<Turn>>& ref,
                                    const std::map<std::string, std::vector<Turn>>& hyp,
                                    bool quiet, std::ostream& err) {
  std::set<std::string> recs;
  for (const auto& [rec, t] : ref) recs.insert(rec);
  for (const auto& [rec, t] : hyp) {
    if (!ref.count(rec) && !quiet)
      err << "warning: recording '" << rec << "' is in the hypothesis but not the reference\n";
    recs.insert(rec);
  }
  return recs;
}

const std::vector<Turn>& TurnsOf(const std::map<std::string, std::vector<Turn>>& m,
                                 const std::string& rec) {
  static const std::vector<Turn> kNone;
  auto it = m.find(rec);
  return it == m.end() ? kNone : it->second;
}

int Dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"diarkit: speaker diarization clustering and evaluation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed (only entropy source)")->capture_default_str();
  app.add_flag("--quiet", g.quiet, "Suppress warnings");
  app.add_option("--output", g.output, "Write the report to this path instead of stdout");
  app.add_option("--threads", g.threads, "Worker threads for per-recording work")
      ->capture_default_str()
      ->check(CLI::Range(1, 256));

  // cluster
  auto* cluster = app.add_subcommand("cluster", "Spectral clustering of sub-segment embeddings");
  std::string emb_path, vad_path;
  SpectralOptions cluster_spectral;
  int cluster_max = 2, cluster_oracle = 0;
  double cluster_window = 0, cluster_shift = 0;
  cluster->add_option("--embeddings", emb_path, "EMB file")->required();
  AddSpectralFlags(cluster, &cluster_spectral, &cluster_max, &cluster_oracle);
  cluster->add_option("--window", cluster_window, "Re-pool embeddings onto windows (s)");
  cluster->add_option("--shift", cluster_shift, "Shift of the re-pooled windows (s)");
  cluster->add_option("--vad", vad_path, "RTTM whose turns give the speech regions");

  // score
  auto* score = app.add_subcommand("score", "Evaluate hypotheses");
  score->require_subcommand(1);
  std::string ref_path, hyp_path, trials_path;
  double collar = 0.25, rho = 0.5;
  bool score_overlap = true;
  DetOptions det;
  auto* score_der = score->add_subcommand("der", "Diarization error rate");
  auto* score_cder = score->add_subcommand("cder", "Conversational DER");
  auto* score_vad = score->add_subcommand("vad", "VAD false alarm / miss / accuracy");
  auto* score_trials = score->add_subcommand("trials", "EER and minDCF of trial scores");
  for (CLI::App* sub : {score_der, score_cder, score_vad}) {
    sub->add_option("--ref", ref_path, "Reference RTTM")->required();
    sub->add_option("--hyp", hyp_path, "Hypothesis RTTM")->required();
  }
  score_der->add_option("--collar", collar, "No-score collar (s)")->capture_default_str();
  score_der->add_flag("--score-overlap,!--no-score-overlap", score_overlap,
                      "Score regions of overlapped reference speech");
  score_cder->add_option("--rho", rho, "Coverage ratio for a correct utterance")
      ->capture_default_str();
  score_trials->add_option("--trials", trials_path, "Trial score file")->required();
  score_trials->add_option("--p-target", det.p_target)->capture_default_str();
  score_trials->add_option("--c-fa", det.c_fa)->capture_default_str();
  score_trials->add_option("--c-miss", det.c_miss)->capture_default_str();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "DER/CDER versus sub-segment duration");
  SweepOptions sweep_opts;
  sweep_opts.sim.duration_noise = 0.45;
  sweep_opts.sim.vad_min_silence = 0.3;
  std::vector<double> durations;
  int sweep_max = 2, sweep_oracle = 0;
  double sweep_collar = 0.25;
  sweep->add_option("--durations", durations, "Sub-segment durations (s)")
      ->required()
      ->delimiter(',');
  AddSimFlags(sweep, &sweep_opts.sim);
  AddSpectralFlags(sweep, &sweep_opts.spectral, &sweep_max, &sweep_oracle);
  sweep->add_option("--collar", sweep_collar, "DER collar (s)")->capture_default_str();
  sweep->add_option("--rho", sweep_opts.rho, "CDER coverage ratio")->capture_default_str();

  // fuse
  auto* fuse = app.add_subcommand("fuse", "Rank-weighted fusion of RTTM hypotheses");
  std::vector<std::string> fuse_paths;
  fuse->add_option("rttm", fuse_paths, "Hypotheses, most trusted first")->required();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Write a synthetic corpus to --output");
  SimConfig sim;
  double sim_window = 16, sim_shift = 4, prob_noise = 0.0, frame_shift = 0.01;
  bool with_probs = false;
  AddSimFlags(simulate, &sim);
  simulate->add_option("--window", sim_window, "Embedding window (s)")->capture_default_str();
  simulate->add_option("--shift", sim_shift, "Embedding shift (s)")->capture_default_str();
  simulate->add_flag("--probs", with_probs, "Also write rasterized PROB tracks");
  simulate->add_option("--prob-noise", prob_noise, "Noise added to PROB tracks")
      ->capture_default_str();
  simulate->add_option("--frame-shift", frame_shift, "PROB frame shift (s)")
      ->capture_default_str();

  // postprocess
  auto* post = app.add_subcommand("postprocess", "Probability tracks to RTTM");
  std::string probs_path;
  PostprocessOptions post_opts;
  double min_dur = 0.1;
  post->add_option("--probs", probs_path, "PROB file")->required();
  post->add_option("--median", post_opts.median_window, "Median filter window (frames)")
      ->capture_default_str();
  post->add_option("--threshold", post_opts.threshold, "Binarization threshold")
      ->capture_default_str();
  post->add_option("--min-dur", min_dur, "Drop segments shorter than this (s)")
      ->capture_default_str();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Sink sink(g, out);
  int code = kExitOk;

  if (cluster->parsed()) {
    FinishSpectral(&cluster_spectral, cluster_max, cluster_oracle, g.seed);
    ClusterOptions opts;
    opts.spectral = cluster_spectral;
    if (cluster->count("--window") || cluster->count("--shift")) {
      opts.window = SecondsFlag(cluster_window, "window");
      opts.shift = SecondsFlag(cluster_shift, "shift");
    }
    const EmbeddingSet set = ParseEmbeddings(ReadFile(emb_path), emb_path);
    std::map<std::string, Timeline> vad;
    if (!vad_path.empty()) vad = SpeechByRecording(ParseRttm(ReadFile(vad_path), vad_path));
    sink.Text(WriteRttm(
        ClusterEmbeddings(set, vad_path.empty() ? nullptr : &vad, opts, g.threads)));
  } else if (score_der->parsed() || score_cder->parsed() || score_vad->parsed()) {
    const auto ref = ParseRttm(ReadFile(ref_path), ref_path).ByRecording();
    const auto hyp = ParseRttm(ReadFile(hyp_path), hyp_path).ByRecording();
    const auto recs = AllRecordings(ref, hyp, g.quiet, err);
    if (score_der->parsed()) {
      const DerOptions opts{SecondsFlag(collar, "collar"), score_overlap};
      DerReport total;
      for (const std::string& rec : recs) {
        const DerReport r = ComputeDer(TurnsOf(ref, rec), TurnsOf(hyp, rec), opts);
        sink.Line(FormatDerLine(rec, r));
        total += r;
      }
      sink.Line(FormatDerLine("ALL", total));
      if (!total.der()) code = kExitMetricUndefined;
    } else if (score_cder->parsed()) {
      CderReport total;
      double mean = 0;
      int defined = 0;
      for (const std::string& rec : recs) {
        const CderReport r = ComputeCder(TurnsOf(ref, rec), TurnsOf(hyp, rec), rho);
        sink.Line(FormatCderLine(rec, r));
        total += r;
        if (r.cder()) {
          mean += *r.cder();
          ++defined;
        }
      }
      sink.Line(FormatCderLine("ALL", total));
      sink.Line("MEAN CDER " +
                (defined > 0 ? FormatFixed(mean / defined, 4) : std::string("undefined")));
      if (!total.cder()) code = kExitMetricUndefined;
    } else {
      VadReport total;
      for (const std::string& rec : recs) {
        const auto& r_turns = TurnsOf(ref, rec);
        const auto& h_turns = TurnsOf(hyp, rec);
        const Timeline r_tl = r_turns.empty() ? Timeline() : ToTimeline(r_turns);
        const Timeline h_tl = h_turns.empty() ? Timeline() : ToTimeline(h_turns);
        Millis end = 0;
        if (!r_tl.empty()) end = std::max(end, r_tl.intervals().back().end);
        if (!h_tl.empty()) end = std::max(end, h_tl.intervals().back().end);
        const VadReport r = ComputeVad(r_tl, h_tl, {0, end});
        sink.Line(FormatVadLine(rec, r));
        total += r;
      }
      sink.Line(FormatVadLine("ALL", total));
      if (!total.fa() || !total.miss()) code = kExitMetricUndefined;
    }
  } else if (score_trials->parsed()) {
    const auto trials = ParseTrials(ReadFile(trials_path), trials_path);
    sink.Line(FormatDetLine(ComputeDetMetrics(trials, det)));
  } else if (sweep->parsed()) {
    FinishSpectral(&sweep_opts.spectral, sweep_max, sweep_oracle, g.seed);
    sweep_opts.sim.seed = g.seed;
    sweep_opts.threads = g.threads;
    sweep_opts.der.collar = SecondsFlag(sweep_collar, "collar");
    for (double d : durations) sweep_opts.durations.push_back(SecondsFlag(d, "durations"));
    sink.Text(FormatSweepTable(RunSweep(sweep_opts)));
  } else if (fuse->parsed()) {
    std::vector<std::map<std::string, std::vector<Turn>>> inputs;
    std::set<std::string> recs;
    for (const std::string& p : fuse_paths) {
      inputs.push_back(ParseRttm(ReadFile(p), p).ByRecording());
      for (const auto& [rec, t] : inputs.back()) recs.insert(rec);
    }
    std::vector<std::string> rec_list(recs.begin(), recs.end());
    std::vector<std::vector<Turn>> fused(rec_list.size());
    ParallelFor(rec_list.size(), g.threads, [&](std::size_t i) {
      std::vector<RankedHypothesis> hyps;
      for (std::size_t r = 0; r < inputs.size(); ++r)
        hyps.push_back({static_cast<int>(r) + 1, TurnsOf(inputs[r], rec_list[i])});
      fused[i] = Fuse(std::move(hyps));
    });
    std::vector<Turn> all;
    for (auto& f : fused) all.insert(all.end(), f.begin(), f.end());
    sink.Text(WriteRttm(std::move(all)));
  } else if (simulate->parsed()) {
    if (g.output.empty()) throw UsageError("simulate needs --output <directory>");
    sim.seed = g.seed;
    ValidateSimConfig(sim);
    const Millis window = SecondsFlag(sim_window, "window");
    const Millis shift = SecondsFlag(sim_shift, "shift");
    const Millis fshift = SecondsFlag(frame_shift, "frame-shift");
    const int n = sim.n_recordings;
    std::vector<std::string> ref(n), vad(n), emb(n), probs(n);
    ParallelFor(n, g.threads, [&](std::size_t i) {
      const Conversation conv = GenerateConversation(sim, static_cast<int>(i));
      const Timeline regions = SimulatedVad(conv, sim);
      ref[i] = WriteRttm(conv.turns);
      std::vector<Turn> vad_turns;
      for (const Interval& iv : regions)
        vad_turns.push_back({conv.recording_id, "1", "speech", iv.start, iv.duration()});
      vad[i] = WriteRttm(std::move(vad_turns));
      EmbeddingSet set = GenerateEmbeddings(conv, regions, sim, window, shift);
      set.dim = 0;  // header written once below
      emb[i] = WriteEmbeddings(set).substr(std::string("EMB 0\n").size());
      if (with_probs) probs[i] = WriteProbabilityTrack(GenerateProbabilityTrack(conv, sim, fshift, prob_noise));
    });
    const fs::path dir(g.output);
    fs::create_directories(dir);
    auto join = [](const std::vector<std::string>& parts, std::string head) {
      for (const auto& p : parts) head += p;
      return head;
    };
    WriteFile(dir / "ref.rttm", join(ref, ""));
    WriteFile(dir / "vad.rttm", join(vad, ""));
    WriteFile(dir / "embeddings.emb", join(emb, "EMB " + std::to_string(sim.embedding_dim) + "\n"));
    if (with_probs) WriteFile(dir / "probs.txt", join(probs, ""));
    if (!g.quiet)
      err << "wrote " << n << " recordings to " << dir.string() << "\n";
    return kExitOk;
  } else if (post->parsed()) {
    post_opts.min_duration = SecondsFlag(min_dur, "min-dur");
    std::vector<Turn> all;
    for (const ProbabilityTrack& t : ParseProbabilityTracks(ReadFile(probs_path), probs_path)) {
      auto turns = Postprocess(t, post_opts);
      all.insert(all.end(), turns.begin(), turns.end());
    }
    sink.Text(WriteRttm(std::move(all)));
  }
  sink.Flush();
  return code;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return Dispatch(args, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ComputationError& e) {
    err << "computation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace diarkit::cli
