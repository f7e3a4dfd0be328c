// tests/cli_test.cc

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
#include <sstream>

#include "doctest.h"

namespace diarkit::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Run(std::vector<std::string> args) {
  args.insert(args.begin(), "diarkit");
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path Scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("diarkit_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string Write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p.string();
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char kRef[] = "SPEAKER r 1 0 10 <NA> <NA> A <NA> <NA>\n";
const char kHyp[] = "SPEAKER r 1 0 8 <NA> <NA> h <NA> <NA>\n";

TEST_CASE("score der with and without collar") {
  const auto dir = Scratch("der");
  const auto ref = Write(dir / "ref.rttm", kRef), hyp = Write(dir / "hyp.rttm", kHyp);
  const auto r0 = Run({"score", "der", "--ref", ref, "--hyp", hyp, "--collar", "0"});
  CHECK(r0.code == 0);
  CHECK(r0.out == "r DER 2.000 0.000 0.000 10.000 0.2000\nALL DER 2.000 0.000 0.000 10.000 0.2000\n");
  const auto r25 = Run({"score", "der", "--ref", ref, "--hyp", hyp});
  CHECK(r25.out.find("ALL DER 1.750 0.000 0.000 9.500 0.1842") != std::string::npos);
  const auto same = Run({"score", "der", "--ref", ref, "--hyp", ref});
  CHECK(same.out.find("ALL DER 0.000 0.000 0.000") != std::string::npos);
}

TEST_CASE("score cder worked example") {
  const auto dir = Scratch("cder");
  const auto ref = Write(dir / "ref.rttm",
                         "SPEAKER r 1 0 2 <NA> <NA> A <NA> <NA>\n"
                         "SPEAKER r 1 5 2 <NA> <NA> A <NA> <NA>\n");
  const auto hyp = Write(dir / "hyp.rttm", "SPEAKER r 1 0 2 <NA> <NA> h <NA> <NA>\n");
  const auto r = Run({"score", "cder", "--ref", ref, "--hyp", hyp});
  CHECK(r.code == 0);
  CHECK(r.out.find("ALL CDER 1 0 0 2 0.5000") != std::string::npos);
  CHECK(Run({"score", "cder", "--ref", ref, "--hyp", ref}).out.find("ALL CDER 0 0 0 2 0.0000") !=
        std::string::npos);
}

TEST_CASE("hypothesis-only recordings warn but still count") {
  const auto dir = Scratch("extra");
  const auto ref = Write(dir / "ref.rttm", kRef);
  const auto hyp = Write(dir / "hyp.rttm",
                         std::string(kRef) + "SPEAKER q 1 0 1 <NA> <NA> h <NA> <NA>\n");
  const auto r = Run({"score", "der", "--ref", ref, "--hyp", hyp});
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK(r.out.find("q DER 0.000 1.000 0.000 0.000 undefined") != std::string::npos);
  CHECK(Run({"--quiet", "score", "der", "--ref", ref, "--hyp", hyp}).err.empty());
}

TEST_CASE("undefined headline metric") {
  const auto dir = Scratch("undef");
  const auto empty = Write(dir / "empty.rttm", "");
  const auto hyp = Write(dir / "hyp.rttm", kHyp);
  CHECK(Run({"score", "der", "--ref", empty, "--hyp", hyp}).code == kExitMetricUndefined);
}

TEST_CASE("exit codes") {
  const auto dir = Scratch("codes");
  CHECK(Run({"score", "der", "--ref", (dir / "nope").string(), "--hyp", "x"}).code == kExitParse);
  const auto bad = Write(dir / "bad.rttm", "SPEAKER r 1 0 <NA> <NA>\n");
  const auto parse = Run({"score", "der", "--ref", bad, "--hyp", bad});
  CHECK(parse.code == kExitParse);
  CHECK(parse.err.find(":1:") != std::string::npos);
  const auto neg = Write(dir / "neg.rttm", "SPEAKER r 1 0 -1 <NA> <NA> A <NA> <NA>\n");
  CHECK(Run({"score", "der", "--ref", neg, "--hyp", neg}).code == kExitValidation);
  CHECK(Run({"frobnicate"}).code == kExitUsage);
  CHECK(Run({"score", "der"}).code == kExitUsage);
  CHECK(Run({"sweep", "--durations", "1"}).code == kExitUsage);
  const auto one = Write(dir / "one.rttm", kRef);
  CHECK(Run({"fuse", one}).code == kExitUsage);
  CHECK(Run({"--output", (dir / "sim").string(), "simulate", "--speakers", "0"}).code ==
        kExitUsage);
  CHECK(Run({"--help"}).code == kExitOk);
}

TEST_CASE("trials") {
  const auto dir = Scratch("trials");
  const auto t = Write(dir / "t.txt", "target 0.9\ntarget 0.8\nnontarget 0.1\nnontarget 0.2\n");
  const auto r = Run({"score", "trials", "--trials", t});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("ALL EER 0.000000 MINDCF 0.000000", 0) == 0);
  CHECK(Run({"score", "trials", "--trials", Write(dir / "e.txt", "")}).code == kExitUsage);
}

TEST_CASE("vad scoring") {
  const auto dir = Scratch("vad");
  const auto ref = Write(dir / "ref.rttm", "SPEAKER r 1 0 5 <NA> <NA> A <NA> <NA>\n"
                                           "SPEAKER r 1 9 1 <NA> <NA> A <NA> <NA>\n");
  const auto hyp = Write(dir / "hyp.rttm", "SPEAKER r 1 0 4 <NA> <NA> S <NA> <NA>\n"
                                           "SPEAKER r 1 9 1 <NA> <NA> S <NA> <NA>\n");
  const auto r = Run({"score", "vad", "--ref", ref, "--hyp", hyp});
  CHECK(r.code == 0);
  CHECK(r.out.find("ALL VAD 0.0000 0.1667 0.9000") != std::string::npos);
}

TEST_CASE("simulate, cluster, score end to end") {
  const auto dir = Scratch("e2e");
  const auto corpus = dir / "corpus";
  REQUIRE(Run({"--quiet", "--output", corpus.string(), "simulate", "--recordings", "4",
               "--window", "1.5", "--shift", "0.375", "--probs"})
              .code == 0);
  const auto hyp = Run({"cluster", "--embeddings", (corpus / "embeddings.emb").string(), "--vad",
                        (corpus / "vad.rttm").string()});
  REQUIRE(hyp.code == 0);
  const auto hyp_path = Write(dir / "hyp.rttm", hyp.out);
  const auto der = Run({"score", "der", "--ref", (corpus / "ref.rttm").string(), "--hyp",
                        hyp_path});
  CHECK(der.code == 0);
  const auto all = der.out.substr(der.out.rfind("ALL"));
  CHECK(std::stod(all.substr(all.rfind(' '))) < 0.05);
  const auto post = Run({"postprocess", "--probs", (corpus / "probs.txt").string()});
  CHECK(post.code == 0);
  const auto post_path = Write(dir / "post.rttm", post.out);
  const auto post_der = Run({"score", "der", "--ref", (corpus / "ref.rttm").string(), "--hyp",
                             post_path});
  const auto line = post_der.out.substr(post_der.out.rfind("ALL"));
  CHECK(std::stod(line.substr(line.rfind(' '))) < 0.01);
}

TEST_CASE("fuse of identical inputs") {
  const auto dir = Scratch("fuse");
  const std::string text =
      "SPEAKER r 1 0.000 2.000 <NA> <NA> A <NA> <NA>\n"
      "SPEAKER r 1 2.500 1.000 <NA> <NA> B <NA> <NA>\n";
  const auto x = Write(dir / "x.rttm", text);
  CHECK(Run({"fuse", x, x}).out == text);
  CHECK(Run({"fuse", x, x, x}).out == text);
}

TEST_CASE("--output writes the report to a file") {
  const auto dir = Scratch("output");
  const auto ref = Write(dir / "ref.rttm", kRef);
  const auto r = Run({"--output", (dir / "report.txt").string(), "score", "der", "--ref", ref,
                      "--hyp", ref});
  CHECK(r.out.empty());
  CHECK(Slurp(dir / "report.txt").find("ALL DER") != std::string::npos);
}

}  // namespace
}  // namespace diarkit::cli
