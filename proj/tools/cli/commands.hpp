#pragma once

// Subcommands of the gdaha tool. Each command writes its artifacts to a sink as
// soon as a stage finishes, so a failure later on leaves the earlier stages on disk.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gdaha::cli {

using json = nlohmann::json;

struct Tolerances {
  double solver = 1e-13;
  double transport = 1e-11;
  double rank = 1e-7;
  /// Threshold for certified properties (spectra, relations, diagram).
  double cert = 1e-6;
};

struct RunConfig {
  std::string command;
  std::string params_path;
  /// DS solution, representation or other upstream artifact.
  std::string input_path;
  std::string out_dir = ".";
  std::uint64_t seed = 20240601;
  Tolerances tol;
  std::vector<double> alpha;
  std::vector<double> base;
  double delta = 0.0;
  int n = 1;
  std::string kind = "additive";
  // algebra / cherednik
  std::vector<std::string> lambda;
  std::string nu = "0";
  bool cherednik = false;
  // diagram
  int modules = 3;
  // flow
  std::string kappa_path = "arc:0.5,0,0.1,180,0,20";
  double surrogate = 10.0;
  int word_length = 2;
  int check_word_length = 4;
  // continue-rep
  std::string nu_target = "1/20";
};

class Sink {
 public:
  virtual ~Sink() = default;
  virtual void put(const std::string& name, const json& doc) = 0;
  virtual void put_text(const std::string& name, const std::string& text) = 0;
};

/// Writes <out_dir>/<name>.
class DirectorySink : public Sink {
 public:
  explicit DirectorySink(std::string dir);
  void put(const std::string& name, const json& doc) override;
  void put_text(const std::string& name, const std::string& text) override;

 private:
  std::string dir_;
};

class MemorySink : public Sink {
 public:
  void put(const std::string& name, const json& doc) override { docs[name] = doc; }
  void put_text(const std::string& name, const std::string& text) override { texts[name] = text; }

  std::map<std::string, json> docs;
  std::map<std::string, std::string> texts;
};

/// Runs config.command. Returns the process exit code: 0 success, 2 validation,
/// 3 convergence, 4 certification, 1 anything else. A short summary goes to `summary`.
int run(const RunConfig& config, Sink& sink, std::string* summary = nullptr);

/// Known subcommands, "pipeline" included as an alias of "diagram".
const std::vector<std::string>& commands();

/// Parses "0,1,2.5" into doubles; throws ParseError.
std::vector<double> parse_reals(const std::string& text);
/// "arc:cre,cim,r,deg0,deg1,steps", "line:re0,im0,re1,im1,steps" or "const:re,im,steps".
/// The first point is kappa_0, the rest is the path.
std::vector<std::complex<double>> parse_kappa_path(const std::string& spec);

}  // namespace gdaha::cli
