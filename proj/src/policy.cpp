#include "lounge/policy.hpp"

#include <algorithm>

namespace lounge {

const char* to_string(Action a) {
  return a == Action::JoinLounge ? "join_lounge" : "join_queue";
}

double cost_join_queue(ObservedState s, const SystemParams& p) {
  return p.alpha() * s.q / p.mu();
}

double cost_join_lounge(ObservedState s, const SystemParams& p) {
  const double drain = (p.mu() - p.lambda()) / p.nu();
  const double residual = std::max(0.0, s.q + s.l - drain);
  return p.beta() / p.nu() + p.alpha() / p.mu() * residual;
}

Action decide(ObservedState s, const SystemParams& p) {
  return cost_join_queue(s, p) > cost_join_lounge(s, p) ? Action::JoinLounge : Action::JoinQueue;
}

Action decide_threshold(ObservedState s, const DerivedThresholds& t) {
  return (s.q > t.a_int && s.l < t.b_int) ? Action::JoinLounge : Action::JoinQueue;
}

Action decide_approximating(ObservedState s, int a_int) {
  return s.q > a_int ? Action::JoinLounge : Action::JoinQueue;
}

}  // namespace lounge
