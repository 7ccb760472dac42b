#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <string>

namespace lounge {

struct State {
  int q = 0;
  int l = 0;
  auto operator<=>(const State&) const = default;
};

enum class SourceTag { b1_closed_form, approx_closed_form, oracle, simulation };

const char* to_string(SourceTag tag);

/// Sparse stationary law over (queue, lounge) states.
///
/// Entries outside the truncation box are omitted. tail_mass_bound bounds the
/// omitted probability and tail_moment_bound bounds the omitted contribution
/// to E[(q + l)^2]; both are zero for distributions with no omitted mass.
struct StationaryDistribution {
  std::map<State, double> entries;
  int q_max = 0;
  int l_max = 0;
  double tail_mass_bound = 0.0;
  double tail_moment_bound = 0.0;
  SourceTag source = SourceTag::oracle;
  std::string note;

  double at(int q, int l) const;
  double total() const;
};

/// Sum of the stored probabilities over states with q + l == n.
double marginal_total(const StationaryDistribution& d, int n);

/// Largest pointwise difference over the union of both supports.
double sup_distance(const StationaryDistribution& a, const StationaryDistribution& b);

/// Columns q,l,probability,source_tag with a header row.
void write_csv(const StationaryDistribution& d, std::ostream& os);

/// Entries plus truncation metadata.
void write_json(const StationaryDistribution& d, std::ostream& os);

}  // namespace lounge
