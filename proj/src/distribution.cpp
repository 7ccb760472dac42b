#include "lounge/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "json.hpp"

namespace lounge {

const char* to_string(SourceTag tag) {
  switch (tag) {
    case SourceTag::b1_closed_form: return "b1-closed-form";
    case SourceTag::approx_closed_form: return "approx-closed-form";
    case SourceTag::oracle: return "oracle";
    case SourceTag::simulation: return "simulation";
  }
  return "unknown";
}

double StationaryDistribution::at(int q, int l) const {
  auto it = entries.find({q, l});
  return it == entries.end() ? 0.0 : it->second;
}

double StationaryDistribution::total() const {
  double s = 0.0;
  for (const auto& [state, p] : entries) s += p;
  return s;
}

double marginal_total(const StationaryDistribution& d, int n) {
  double s = 0.0;
  for (int l = 0; l <= n; ++l) s += d.at(n - l, l);
  return s;
}

double sup_distance(const StationaryDistribution& a, const StationaryDistribution& b) {
  double worst = 0.0;
  for (const auto& [s, p] : a.entries) worst = std::max(worst, std::abs(p - b.at(s.q, s.l)));
  for (const auto& [s, p] : b.entries) {
    if (!a.entries.contains(s)) worst = std::max(worst, std::abs(p));
  }
  return worst;
}

void write_csv(const StationaryDistribution& d, std::ostream& os) {
  const auto old_precision = os.precision(17);
  os << "q,l,probability,source_tag\n";
  for (const auto& [s, p] : d.entries) {
    os << s.q << ',' << s.l << ',' << p << ',' << to_string(d.source) << '\n';
  }
  os.precision(old_precision);
}

void write_json(const StationaryDistribution& d, std::ostream& os) {
  nlohmann::json j;
  j["source_tag"] = to_string(d.source);
  j["q_max"] = d.q_max;
  j["l_max"] = d.l_max;
  j["tail_mass_bound"] = d.tail_mass_bound;
  j["tail_moment_bound"] = d.tail_moment_bound;
  j["total"] = d.total();
  if (!d.note.empty()) j["note"] = d.note;
  auto& entries = j["entries"] = nlohmann::json::array();
  for (const auto& [s, p] : d.entries) entries.push_back({{"q", s.q}, {"l", s.l}, {"probability", p}});
  os << j.dump(2) << '\n';
}

}  // namespace lounge
