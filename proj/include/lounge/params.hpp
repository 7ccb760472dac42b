#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lounge {

/// Primitive rates and cost rates as read from a config file or flags.
/// Nothing is checked here; see validate() and SystemParams::from().
struct RawParams {
  double lambda = 0.0;  ///< arrival rate
  double mu = 0.0;      ///< service rate
  double nu = 0.0;      ///< lounge-exit rate
  double alpha = 0.0;   ///< queue waiting cost per unit time
  double beta = 0.0;    ///< lounge waiting cost per unit time
};

struct Violation {
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate(const RawParams& raw);

class InvalidParams : public std::invalid_argument {
 public:
  explicit InvalidParams(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Validated parameter set. The only way to obtain one is through from(),
/// so every consumer can rely on lambda, mu, nu > 0, alpha > beta > 0 and
/// lambda < mu.
class SystemParams {
 public:
  /// Throws InvalidParams carrying the full report.
  static SystemParams from(const RawParams& raw);

  double lambda() const { return raw_.lambda; }
  double mu() const { return raw_.mu; }
  double nu() const { return raw_.nu; }
  double alpha() const { return raw_.alpha; }
  double beta() const { return raw_.beta; }
  const RawParams& raw() const { return raw_; }

  double rho() const { return raw_.lambda / raw_.mu; }

 private:
  explicit SystemParams(const RawParams& raw) : raw_(raw) {}
  RawParams raw_;
};

/// Customer-response thresholds of the queue/lounge decision rule.
struct DerivedThresholds {
  double rho = 0.0;    ///< lambda / mu
  double delta = 0.0;  ///< 1 - beta / alpha; lounge is never used once rho >= delta
  double eta = 0.0;    ///< comfort factor beta / nu
  double a_real = 0.0; ///< mu beta / (alpha nu)
  double b_real = 0.0; ///< (mu - lambda) / nu - a_real
  int a_int = 0;       ///< floor(a_real)
  int b_int = 0;       ///< ceil(b_real), clamped at 0
  bool lounge_active = false;  ///< false iff the unclamped ceil(b_real) <= 0
};

DerivedThresholds derive_thresholds(const SystemParams& params);

}  // namespace lounge
