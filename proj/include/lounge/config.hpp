#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>

#include "lounge/params.hpp"

namespace lounge {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter values collected from one source (file or flags). eta, when
/// given without beta, stands for beta = eta * nu.
struct ParamInputs {
  std::optional<double> lambda, mu, nu, alpha, beta, eta;
};

/// Flat "key = value" text; '#' starts a comment, ':' is accepted in place
/// of '='. Keys: lambda, mu, nu, alpha, beta, eta.
ParamInputs parse_config(std::istream& is);
ParamInputs read_config_file(const std::filesystem::path& path);

/// Values in `flags` win. Setting beta (or eta) in flags discards the other
/// one from the file, since they describe the same quantity.
ParamInputs merge(const ParamInputs& file, const ParamInputs& flags);

/// Fills RawParams; beta takes precedence over eta when both are present
/// and they must then agree. Throws ConfigError on missing keys.
RawParams resolve(const ParamInputs& in);

}  // namespace lounge
