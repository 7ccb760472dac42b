#include "lounge/params.hpp"

#include <cmath>
#include <sstream>

namespace lounge {

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].field << ": " << violations[i].message;
  }
  return os.str();
}

ValidationReport validate(const RawParams& raw) {
  ValidationReport report;
  auto require_positive = [&](const char* field, double v) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      report.violations.push_back({field, std::string(field) + " must be a finite value > 0"});
    }
  };
  require_positive("lambda", raw.lambda);
  require_positive("mu", raw.mu);
  require_positive("nu", raw.nu);
  require_positive("beta", raw.beta);
  if (!std::isfinite(raw.alpha) || !(raw.alpha > raw.beta)) {
    report.violations.push_back({"alpha", "alpha must exceed beta"});
  }
  if (raw.lambda > 0.0 && raw.mu > 0.0 && !(raw.lambda / raw.mu < 1.0)) {
    report.violations.push_back({"lambda", "rho >= 1 (lambda / mu must be < 1)"});
  }
  return report;
}

InvalidParams::InvalidParams(ValidationReport report)
    : std::invalid_argument("invalid parameters: " + report.summary()), report_(std::move(report)) {}

SystemParams SystemParams::from(const RawParams& raw) {
  auto report = validate(raw);
  if (!report.ok()) throw InvalidParams(std::move(report));
  return SystemParams(raw);
}

DerivedThresholds derive_thresholds(const SystemParams& p) {
  DerivedThresholds t;
  t.rho = p.rho();
  t.delta = 1.0 - p.beta() / p.alpha();
  t.eta = p.beta() / p.nu();
  t.a_real = p.mu() * p.beta() / (p.alpha() * p.nu());
  t.b_real = (p.mu() - p.lambda()) / p.nu() - t.a_real;
  t.a_int = static_cast<int>(std::floor(t.a_real));
  // Integer form of "L < b_real": the ceiling is taken of b_real itself so
  // the threshold rule agrees with the cost comparison on every state.
  const double b_ceil = std::ceil(t.b_real);
  t.lounge_active = b_ceil > 0.0;
  t.b_int = t.lounge_active ? static_cast<int>(b_ceil) : 0;
  return t;
}

}  // namespace lounge
