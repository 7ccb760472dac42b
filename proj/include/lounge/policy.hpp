#pragma once

#include "lounge/params.hpp"

namespace lounge {

/// Queue length and lounge occupancy seen by an arriving customer.
struct ObservedState {
  int q = 0;
  int l = 0;
};

enum class Action { JoinQueue = 1, JoinLounge = 2 };

const char* to_string(Action a);

/// alpha * q / mu
double cost_join_queue(ObservedState s, const SystemParams& p);

/// beta / nu + (alpha / mu) * max(0, q + l - (mu - lambda) / nu)
double cost_join_lounge(ObservedState s, const SystemParams& p);

/// Lounge iff the queue cost strictly exceeds the lounge cost.
Action decide(ObservedState s, const SystemParams& p);

/// Lounge iff q > a_int and l < b_int.
Action decide_threshold(ObservedState s, const DerivedThresholds& t);

/// Limit rule when lounge discomfort vanishes: lounge iff q > a_int.
Action decide_approximating(ObservedState s, int a_int);

}  // namespace lounge
