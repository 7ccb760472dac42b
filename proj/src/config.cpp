#include "lounge/config.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <string>

namespace lounge {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ParamInputs parse_config(std::istream& is) {
  ParamInputs in;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto sep = line.find('=');
    if (sep == std::string::npos) sep = line.find(':');
    if (sep == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, sep));
    const std::string text = trim(line.substr(sep + 1));
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw ConfigError("line " + std::to_string(line_no) + ": not a number: '" + text + "'");
    }
    if (key == "lambda") in.lambda = value;
    else if (key == "mu") in.mu = value;
    else if (key == "nu") in.nu = value;
    else if (key == "alpha") in.alpha = value;
    else if (key == "beta") in.beta = value;
    else if (key == "eta") in.eta = value;
    else throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  return in;
}

ParamInputs read_config_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file " + path.string());
  return parse_config(is);
}

ParamInputs merge(const ParamInputs& file, const ParamInputs& flags) {
  ParamInputs out = file;
  if (flags.lambda) out.lambda = flags.lambda;
  if (flags.mu) out.mu = flags.mu;
  if (flags.nu) out.nu = flags.nu;
  if (flags.alpha) out.alpha = flags.alpha;
  if (flags.beta || flags.eta) {
    out.beta = flags.beta;
    out.eta = flags.eta;
  }
  return out;
}

RawParams resolve(const ParamInputs& in) {
  std::string missing;
  auto need = [&](const std::optional<double>& v, const char* name) {
    if (!v) missing += missing.empty() ? name : std::string(", ") + name;
  };
  need(in.lambda, "lambda");
  need(in.mu, "mu");
  need(in.nu, "nu");
  need(in.alpha, "alpha");
  if (!in.beta && !in.eta) need(in.beta, "beta (or eta)");
  if (!missing.empty()) throw ConfigError("missing parameters: " + missing);

  RawParams raw{*in.lambda, *in.mu, *in.nu, *in.alpha, 0.0};
  if (in.beta) {
    raw.beta = *in.beta;
    if (in.eta && std::abs(*in.eta * raw.nu - raw.beta) > 1e-12 * std::max(1.0, std::abs(raw.beta))) {
      throw ConfigError("beta and eta * nu disagree");
    }
  } else {
    raw.beta = *in.eta * raw.nu;
  }
  return raw;
}

}  // namespace lounge
